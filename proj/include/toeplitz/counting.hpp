#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "toeplitz/constants.hpp"
#include "toeplitz/perturbation.hpp"
#include "toeplitz/symbol.hpp"

namespace toeplitz {

enum class MembershipMode { PiProjection, DistanceEquality };

std::string_view to_string(MembershipMode mode);
MembershipMode membership_mode_from_string(std::string_view text);

/// Gamma(r, gamma): points within r of E_1 whose nearest point on E_1 lies on
/// the arc gamma = symbol_I([xi_lo, xi_hi]).
struct ArcRegion {
  double xi_lo = 0.0;
  double xi_hi = 2.0 * M_PI;
  double r = 0.3;
  MembershipMode mode = MembershipMode::PiProjection;

  /// xi_lo <= xi_hi <= xi_lo + 2 pi, r > 0.
  void validate() const;
  double length() const { return xi_hi - xi_lo; }
  bool full_circle() const { return length() >= 2.0 * M_PI; }
  /// True when xi (mod 2 pi) falls in [xi_lo, xi_hi].
  bool contains_angle(double xi) const;
};

/// Violated theorem-grade inequalities for a region at size N; empty when
/// 4 ln N / N <= r <= 0.3.
std::vector<std::string> region_gate_violations(const ArcRegion& region, int n);

bool gamma_membership(Complex z, const ArcRegion& region, const SymbolParams& p);

/// N (xi_hi - xi_lo) / (2 pi).
double weyl_count(const ArcRegion& region, int n);

/// Integral of Delta phi over the region, in zeta_- coordinates, computed as
/// the boundary flux of grad phi (Green). phi is evaluated through the
/// characteristic roots of z = a zeta + b / zeta; `mesh` nodes per side.
double delta_phi_arc_identity(const ArcRegion& region, const SymbolParams& p, int mesh);

int empirical_count(const std::vector<Complex>& eigenvalues, const ArcRegion& region, const SymbolParams& p);

struct StrayCount {
  int interior = 0;  ///< inside E_1 at distance > r
  int exterior = 0;  ///< outside E_1 at distance > r
  int total() const { return interior + exterior; }
};

/// Eigenvalues farther than r from E_1.
StrayCount stray_count(const std::vector<Complex>& eigenvalues, double r, const SymbolParams& p);

struct CountReport {
  int n = 0;
  Complex a;
  Complex b;
  double delta = 0.0;
  double kappa = 0.0;
  std::uint64_t seed = 0;
  int trials = 0;
  ArcRegion region;
  double theoretical = 0.0;
  std::vector<int> per_trial;
  double mean = 0.0;
  double stddev = 0.0;
  double bound_rhs = 0.0;
  double pass_fraction = 0.0;
  double probability_floor = 0.95;
  /// Exterior statistic: eigenvalues farther than r from E_1, per trial.
  std::vector<int> stray_per_trial;
  double stray_bound = 0.0;
  double stray_pass_fraction = 0.0;
  /// False when a theorem hypothesis was waived; violations lists which.
  bool theorem_regime = true;
  std::vector<std::string> violations;
};

/// Hypothesis violations for a counting run: kappa > 5/2,
/// delta = N^{-kappa}, |b| < |a|, and the region gates.
std::vector<std::string> count_gate_violations(const PerturbationConfig& config, const ArcRegion& region);

/// Runs config.trials perturbed spectra and counts each in the region. With
/// enforce_gates, any violation throws GateError before the first trial;
/// otherwise the report is flagged as outside the theorem regime.
CountReport count_experiment_mc(const PerturbationConfig& config, const ArcRegion& region, bool enforce_gates = true,
                            double C_acc = constants::kCAcc);

}  // namespace toeplitz
