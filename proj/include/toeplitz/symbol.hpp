#pragma once

#include <string_view>
#include <vector>

#include "toeplitz/core.hpp"

namespace toeplitz {

enum class Case { I, II };

/// Coefficients of the bidiagonal model. Case I: a on the super-diagonal,
/// b on the sub-diagonal. Case II: a on the first and b on the second
/// super-diagonal.
class SymbolParams {
 public:
  SymbolParams(Complex a, Complex b, Case case_tag = Case::I);

  Complex a() const { return a_; }
  Complex b() const { return b_; }
  Case case_tag() const { return case_; }

  double alpha() const { return std::arg(a_); }
  double beta() const { return std::arg(b_); }

  /// Throws GateError unless |b| < |a|, the non-degenerate ellipse regime.
  void require_strict_ellipse() const;

 private:
  Complex a_;
  Complex b_;
  Case case_;
};

/// Roots of the characteristic equation, ordered so that
/// |zeta_plus| <= |zeta_minus|.
struct CharRoots {
  Complex zeta_plus;
  Complex zeta_minus;
  bool is_double = false;

  /// zeta_plus / zeta_minus, the ratio that feeds every geometric sum.
  Complex ratio() const { return zeta_plus / zeta_minus; }
};

/// Relative band used for "on the curve" and "double root" decisions.
inline constexpr double kClassifyTol = 1e-9;
inline constexpr double kDoubleRootTol = 1e-8;

enum class RegionClassI { Interior, OnCurve, Exterior, FocalSegment };

/// Position of z relative to f(S^1) in Case II, by the moduli of the two
/// roots of b*zeta^2 + a*zeta = z.
enum class RegionClassII {
  IntInt,            ///< both roots in D(0,1)
  OnGammaInt,        ///< one root on S^1, the other in D(0,1)
  SelfIntersection,  ///< two distinct roots on S^1
  Annulus,           ///< one root in D(0,1), the other outside the closed disc
  OnGammaExt,        ///< one root on S^1, the other outside the closed disc
  Exterior,          ///< both roots outside the closed disc
  Cusp,              ///< double root on S^1
};

/// |b| compared to |a|/2; decides the topology of the Case II curve.
enum class Case2Regime { Simple, Cusp, SelfIntersecting };

std::string_view to_string(RegionClassI tag);
std::string_view to_string(RegionClassII tag);
std::string_view to_string(Case2Regime regime);

Complex symbol_I(double xi, const SymbolParams& p);
Complex symbol_II(double xi, const SymbolParams& p);

CharRoots char_roots_I(Complex z, const SymbolParams& p);
CharRoots char_roots_II(Complex z, const SymbolParams& p);

/// Interior / Exterior are decided by |zeta_minus| against 1. Points with
/// |zeta_minus| = 1 are FocalSegment when the roots also have equal moduli
/// (only possible when |a| = |b|, where E_1 collapses onto the segment) and
/// OnCurve otherwise. Use on_focal_segment() to detect the segment inside a
/// genuine ellipse.
RegionClassI classify_I(Complex z, const SymbolParams& p);

/// True when |zeta_plus| = |zeta_minus| within the classification band, i.e.
/// z lies on the segment joining the focal points.
bool on_focal_segment(Complex z, const SymbolParams& p);

Case2Regime case2_regime(const SymbolParams& p);
RegionClassII classify_II(Complex z, const SymbolParams& p);

/// Point of E_1 in its axis-aligned parametrisation:
/// e^{i(alpha+beta)/2} ((|a|+|b|) cos eta + i (|a|-|b|) sin eta).
Complex ellipse_point(double eta, const SymbolParams& p);

/// The focal points +-2 sqrt(ab) = +-e^{i(alpha+beta)/2} 2 sqrt(|a||b|).
std::pair<Complex, Complex> focal_points(const SymbolParams& p);

/// Principal branch of sqrt(ab).
Complex sqrt_ab(const SymbolParams& p);

/// The confocal family E_r = f(|zeta| = r): focal point c = 2 sqrt(ab) and
/// major semi-axis g(r) = |a| r + |b| / r, minimal at r_min.
struct EllipseFamily {
  Complex c;
  double abs_a;
  double abs_b;
  double r_min;

  explicit EllipseFamily(const SymbolParams& p);
  double g(double rho) const { return abs_a * rho + abs_b / rho; }
  /// (|z - c| + |z + c|) / 2, the major semi-axis of the E_r through z.
  double semi_axis_through(Complex z) const;
};

struct ConfocalRadii {
  double rho_plus;   ///< <= r_min, carries zeta_plus
  double rho_minus;  ///< >= r_min, carries zeta_minus
};

/// Solves g(rho) = (|z-c| + |z+c|)/2 on both sides of r_min. Requires |b| < |a|.
ConfocalRadii confocal_radii(Complex z, const SymbolParams& p);

struct CurveDistance {
  double distance;
  double xi_star;  ///< in [0, 2 pi)
};

/// Distance from z to E_1 = symbol_I(S^1) and the minimising angle. Coarse
/// grid of 1024 angles followed by Newton on |z - P(xi)|^2.
CurveDistance dist_to_E1(Complex z, const SymbolParams& p);

/// Distance from z to the arc symbol_I([xi_lo, xi_hi]) of E_1.
double dist_to_E1_arc(Complex z, const SymbolParams& p, double xi_lo, double xi_hi);

/// Distance from z to the focal segment [-2 sqrt(ab), 2 sqrt(ab)].
double dist_to_focal_segment(Complex z, const SymbolParams& p);

/// True when z lies strictly inside the closed curve E_1.
bool inside_E1(Complex z, const SymbolParams& p);

struct Case2Curve {
  Case2Regime regime;
  /// Critical point -a/(2b) and critical value -a^2/(4b) in original coordinates.
  Complex zeta_c;
  Complex f_zeta_c;
  /// Same quantities for the normalised symbol f(zeta) = |a| zeta + |b| zeta^2.
  double zeta_c_normalized;
  double f_zeta_c_normalized;
  /// Preimages of the self-intersection (SelfIntersecting regime only),
  /// normalised coordinates: alpha_c = zeta_c + i sqrt(1 - zeta_c^2).
  Complex alpha_c_normalized{};
  /// Self-intersection point in the z plane (SelfIntersecting only).
  Complex self_intersection{};
  /// Rotation e^{i(2 alpha - beta)} mapping normalised values to the z plane.
  Complex rotation;
  /// SelfIntersecting: images of the short and long arcs. Otherwise gamma_ext
  /// holds the whole (simple or cusped) closed curve and gamma_int is empty.
  std::vector<Complex> gamma_int;
  std::vector<Complex> gamma_ext;
};

/// Decomposes f(S^1) for Case II. `samples` points are spread over S^1.
Case2Curve case2_curve_decomposition(const SymbolParams& p, int samples);

/// Normalised Case II symbol f(zeta) = |a| zeta + |b| zeta^2.
Complex case2_normalized_symbol(Complex zeta, const SymbolParams& p);

/// samples points of symbol_I or symbol_II over [0, 2 pi).
std::vector<Complex> symbol_curve(const SymbolParams& p, int samples);

}  // namespace toeplitz
