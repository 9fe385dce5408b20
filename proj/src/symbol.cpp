#include "toeplitz/symbol.hpp"

#include <algorithm>
#include <cmath>

namespace toeplitz {

namespace {

constexpr double kTwoPi = 2.0 * M_PI;

double wrap_angle(double xi) {
  double w = std::fmod(xi, kTwoPi);
  if (w < 0) w += kTwoPi;
  if (w >= kTwoPi) w = 0.0;
  return w;
}

// Orders two roots by modulus and sets the double-root flag.
CharRoots make_roots(Complex r1, Complex r2) {
  CharRoots out;
  if (std::abs(r1) <= std::abs(r2)) {
    out.zeta_plus = r1;
    out.zeta_minus = r2;
  } else {
    out.zeta_plus = r2;
    out.zeta_minus = r1;
  }
  out.is_double = std::abs(out.zeta_plus - out.zeta_minus) <= kDoubleRootTol * std::abs(out.zeta_minus);
  return out;
}

}  // namespace

SymbolParams::SymbolParams(Complex a, Complex b, Case case_tag) : a_(a), b_(b), case_(case_tag) {
  require_finite(a, "a");
  require_finite(b, "b");
  if (a == Complex(0.0)) throw std::invalid_argument("a must be nonzero");
  if (b == Complex(0.0)) throw std::invalid_argument("b must be nonzero");
}

void SymbolParams::require_strict_ellipse() const {
  if (!(std::abs(b_) < std::abs(a_))) {
    throw GateError("requires 0 < |b| < |a| (got |a| = " + std::to_string(std::abs(a_)) +
                    ", |b| = " + std::to_string(std::abs(b_)) + ")");
  }
}

std::string_view to_string(RegionClassI tag) {
  switch (tag) {
    case RegionClassI::Interior: return "interior";
    case RegionClassI::OnCurve: return "on_curve";
    case RegionClassI::Exterior: return "exterior";
    case RegionClassI::FocalSegment: return "focal_segment";
  }
  return "?";
}

std::string_view to_string(RegionClassII tag) {
  switch (tag) {
    case RegionClassII::IntInt: return "int_int";
    case RegionClassII::OnGammaInt: return "on_gamma_int";
    case RegionClassII::SelfIntersection: return "self_intersection";
    case RegionClassII::Annulus: return "annulus";
    case RegionClassII::OnGammaExt: return "on_gamma_ext";
    case RegionClassII::Exterior: return "exterior";
    case RegionClassII::Cusp: return "cusp";
  }
  return "?";
}

std::string_view to_string(Case2Regime regime) {
  switch (regime) {
    case Case2Regime::Simple: return "simple";
    case Case2Regime::Cusp: return "cusp";
    case Case2Regime::SelfIntersecting: return "self_intersecting";
  }
  return "?";
}

Complex symbol_I(double xi, const SymbolParams& p) {
  return p.a() * std::polar(1.0, xi) + p.b() * std::polar(1.0, -xi);
}

Complex symbol_II(double xi, const SymbolParams& p) {
  return p.a() * std::polar(1.0, xi) + p.b() * std::polar(1.0, 2.0 * xi);
}

CharRoots char_roots_I(Complex z, const SymbolParams& p) {
  require_finite(z, "z");
  // a zeta^2 - z zeta + b = 0; take the larger-magnitude combination first and
  // recover the other root from the product b/a.
  const Complex a = p.a();
  const Complex b = p.b();
  // z^2 - 4ab in factored form, exact at the computed focal points
  const Complex c = 2.0 * std::sqrt(a * b);
  const Complex disc = std::sqrt((z - c) * (z + c));
  const Complex q = std::abs(z + disc) >= std::abs(z - disc) ? 0.5 * (z + disc) : 0.5 * (z - disc);
  return make_roots(q / a, b / q);
}

CharRoots char_roots_II(Complex z, const SymbolParams& p) {
  require_finite(z, "z");
  // b zeta^2 + a zeta - z = 0; product of the roots is -z/b.
  const Complex a = p.a();
  const Complex b = p.b();
  // a^2 + 4bz = 4b (z - f(zeta_c)), exact at the computed critical value
  const Complex disc = std::sqrt(4.0 * b * (z + a * a / (4.0 * b)));
  const Complex q = std::abs(a + disc) >= std::abs(a - disc) ? -0.5 * (a + disc) : -0.5 * (a - disc);
  return make_roots(q / b, -z / q);
}

bool on_focal_segment(Complex z, const SymbolParams& p) {
  const CharRoots r = char_roots_I(z, p);
  const double mp = std::abs(r.zeta_plus);
  const double mm = std::abs(r.zeta_minus);
  return std::abs(mm - mp) <= kClassifyTol * mm;
}

RegionClassI classify_I(Complex z, const SymbolParams& p) {
  const CharRoots r = char_roots_I(z, p);
  const double mm = std::abs(r.zeta_minus);
  if (mm < 1.0 - kClassifyTol) return RegionClassI::Interior;
  if (mm > 1.0 + kClassifyTol) return RegionClassI::Exterior;
  const double mp = std::abs(r.zeta_plus);
  if (std::abs(mm - mp) <= kClassifyTol * mm) return RegionClassI::FocalSegment;
  return RegionClassI::OnCurve;
}

Case2Regime case2_regime(const SymbolParams& p) {
  const double half_a = 0.5 * std::abs(p.a());
  const double abs_b = std::abs(p.b());
  if (std::abs(abs_b - half_a) <= kClassifyTol * half_a) return Case2Regime::Cusp;
  return abs_b < half_a ? Case2Regime::Simple : Case2Regime::SelfIntersecting;
}

RegionClassII classify_II(Complex z, const SymbolParams& p) {
  const CharRoots r = char_roots_II(z, p);
  enum Where { In, On, Out };
  auto where = [](double m) {
    if (m < 1.0 - kClassifyTol) return In;
    if (m > 1.0 + kClassifyTol) return Out;
    return On;
  };
  const Where w_small = where(std::abs(r.zeta_plus));
  const Where w_big = where(std::abs(r.zeta_minus));
  if (r.is_double && w_big == On) return RegionClassII::Cusp;
  if (w_small == In && w_big == In) return RegionClassII::IntInt;
  if (w_small == In && w_big == On) return RegionClassII::OnGammaInt;
  if (w_small == On && w_big == On) return RegionClassII::SelfIntersection;
  if (w_small == In && w_big == Out) return RegionClassII::Annulus;
  if (w_small == On && w_big == Out) return RegionClassII::OnGammaExt;
  return RegionClassII::Exterior;
}

Complex sqrt_ab(const SymbolParams& p) { return std::sqrt(p.a() * p.b()); }

Complex ellipse_point(double eta, const SymbolParams& p) {
  const double abs_a = std::abs(p.a());
  const double abs_b = std::abs(p.b());
  if (abs_b > abs_a) throw std::invalid_argument("ellipse_point requires |b| <= |a|");
  const Complex axis = std::polar(1.0, 0.5 * (p.alpha() + p.beta()));
  return axis * Complex((abs_a + abs_b) * std::cos(eta), (abs_a - abs_b) * std::sin(eta));
}

std::pair<Complex, Complex> focal_points(const SymbolParams& p) {
  const Complex c = std::polar(2.0 * std::sqrt(std::abs(p.a()) * std::abs(p.b())), 0.5 * (p.alpha() + p.beta()));
  return {c, -c};
}

EllipseFamily::EllipseFamily(const SymbolParams& p)
    : c(2.0 * sqrt_ab(p)),
      abs_a(std::abs(p.a())),
      abs_b(std::abs(p.b())),
      r_min(std::sqrt(std::abs(p.b()) / std::abs(p.a()))) {}

double EllipseFamily::semi_axis_through(Complex z) const { return 0.5 * (std::abs(z - c) + std::abs(z + c)); }

ConfocalRadii confocal_radii(Complex z, const SymbolParams& p) {
  p.require_strict_ellipse();
  require_finite(z, "z");
  const EllipseFamily fam(p);
  const double target = fam.semi_axis_through(z);
  const double disc = target * target - 4.0 * fam.abs_a * fam.abs_b;
  if (disc <= 0.0) return {fam.r_min, fam.r_min};
  const double rho_minus = (target + std::sqrt(disc)) / (2.0 * fam.abs_a);
  const double rho_plus = fam.abs_b / (fam.abs_a * rho_minus);
  return {rho_plus, rho_minus};
}

bool inside_E1(Complex z, const SymbolParams& p) {
  const EllipseFamily fam(p);
  return fam.semi_axis_through(z) < fam.g(1.0);
}

double dist_to_focal_segment(Complex z, const SymbolParams& p) {
  const Complex c = 2.0 * sqrt_ab(p);
  const double len2 = std::norm(2.0 * c);
  if (len2 == 0.0) return std::abs(z);
  // parameter of the projection onto the segment from -c to c
  const double t = std::clamp(std::real((z + c) * std::conj(2.0 * c)) / len2, 0.0, 1.0);
  return std::abs(z - (-c + t * 2.0 * c));
}

namespace {

struct NewtonResult {
  double xi;
  double value;
};

// Safeguarded Newton on h(xi) = |z - P(xi)|^2 inside [lo, hi], which brackets
// a sign change of h'.
NewtonResult refine_min(Complex z, const SymbolParams& p, double lo, double hi, double start, double tol) {
  const Complex a = p.a();
  const Complex b = p.b();
  auto derivs = [&](double xi, double& h, double& dh, double& d2h) {
    const Complex ea = a * std::polar(1.0, xi);
    const Complex eb = b * std::polar(1.0, -xi);
    const Complex sym = ea + eb;
    const Complex dsym = Complex(0, 1) * (ea - eb);
    const Complex diff = z - sym;
    h = std::norm(diff);
    dh = -2.0 * std::real(std::conj(diff) * dsym);
    d2h = 2.0 * std::norm(dsym) + 2.0 * std::real(std::conj(diff) * sym);
  };
  double xi = start;
  double h = 0, dh = 0, d2h = 0;
  derivs(lo, h, dh, d2h);
  double dh_lo = dh;
  for (int iter = 0; iter < 100; ++iter) {
    derivs(xi, h, dh, d2h);
    if (std::abs(dh) <= tol) break;
    if ((dh < 0) == (dh_lo < 0)) {
      lo = xi;
      dh_lo = dh;
    } else {
      hi = xi;
    }
    double next = d2h > 0 ? xi - dh / d2h : 0.5 * (lo + hi);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (hi - lo < 1e-15) {
      xi = next;
      break;
    }
    xi = next;
  }
  derivs(xi, h, dh, d2h);
  return {xi, h};
}

}  // namespace

CurveDistance dist_to_E1(Complex z, const SymbolParams& p) {
  p.require_strict_ellipse();
  require_finite(z, "z");
  constexpr int kGrid = 1024;
  const double step = kTwoPi / kGrid;
  std::vector<double> h(kGrid);
  for (int i = 0; i < kGrid; ++i) h[i] = std::norm(z - symbol_I(i * step, p));

  const double scale = std::abs(p.a()) + std::abs(p.b());
  const double tol = 1e-12 * std::max(1.0, scale * scale);
  NewtonResult best{0.0, std::numeric_limits<double>::infinity()};
  for (int i = 0; i < kGrid; ++i) {
    const double prev = h[(i + kGrid - 1) % kGrid];
    const double next = h[(i + 1) % kGrid];
    if (h[i] <= prev && h[i] <= next) {
      const double xi0 = i * step;
      const NewtonResult r = refine_min(z, p, xi0 - step, xi0 + step, xi0, tol);
      if (r.value < best.value) best = r;
    }
  }
  return {std::sqrt(std::max(best.value, 0.0)), wrap_angle(best.xi)};
}

double dist_to_E1_arc(Complex z, const SymbolParams& p, double xi_lo, double xi_hi) {
  p.require_strict_ellipse();
  require_finite(z, "z");
  if (!(xi_hi >= xi_lo)) throw std::invalid_argument("dist_to_E1_arc: xi_hi < xi_lo");
  if (xi_hi - xi_lo >= kTwoPi) return dist_to_E1(z, p).distance;
  const int grid = std::max(65, static_cast<int>(std::ceil((xi_hi - xi_lo) / (kTwoPi / 1024))) + 1);
  const double step = (xi_hi - xi_lo) / (grid - 1);
  std::vector<double> h(grid);
  for (int i = 0; i < grid; ++i) h[i] = std::norm(z - symbol_I(xi_lo + i * step, p));

  const double scale = std::abs(p.a()) + std::abs(p.b());
  const double tol = 1e-12 * std::max(1.0, scale * scale);
  double best = std::min(h.front(), h.back());
  for (int i = 1; i + 1 < grid; ++i) {
    if (h[i] <= h[i - 1] && h[i] <= h[i + 1]) {
      const double xi0 = xi_lo + i * step;
      const NewtonResult r = refine_min(z, p, xi0 - step, xi0 + step, xi0, tol);
      best = std::min(best, r.value);
    }
  }
  return std::sqrt(std::max(best, 0.0));
}

Complex case2_normalized_symbol(Complex zeta, const SymbolParams& p) {
  return std::abs(p.a()) * zeta + std::abs(p.b()) * zeta * zeta;
}

Case2Curve case2_curve_decomposition(const SymbolParams& p, int samples) {
  if (samples < 3) throw std::invalid_argument("case2_curve_decomposition: samples must be >= 3");
  const double abs_a = std::abs(p.a());
  const double abs_b = std::abs(p.b());
  Case2Curve out;
  out.regime = case2_regime(p);
  out.zeta_c = -p.a() / (2.0 * p.b());
  out.f_zeta_c = -p.a() * p.a() / (4.0 * p.b());
  out.zeta_c_normalized = -abs_a / (2.0 * abs_b);
  out.f_zeta_c_normalized = -abs_a * abs_a / (4.0 * abs_b);
  out.rotation = std::polar(1.0, 2.0 * p.alpha() - p.beta());

  const bool split = out.regime == Case2Regime::SelfIntersecting;
  if (split) {
    const double zc = out.zeta_c_normalized;
    out.alpha_c_normalized = Complex(zc, std::sqrt(1.0 - zc * zc));
    out.self_intersection = out.rotation * case2_normalized_symbol(out.alpha_c_normalized, p);
  }
  // The long arc straddles eta = 0; collect its upper half first so that
  // gamma_ext comes out as one contiguous polyline.
  std::vector<Complex> ext_head;
  std::vector<Complex> ext_tail;
  for (int k = 0; k < samples; ++k) {
    const double eta = kTwoPi * k / samples;
    const Complex zeta = std::polar(1.0, eta);
    const Complex value = out.rotation * case2_normalized_symbol(zeta, p);
    if (split && zeta.real() < out.zeta_c_normalized) {
      out.gamma_int.push_back(value);
    } else if (split && eta > M_PI) {
      ext_tail.push_back(value);
    } else {
      ext_head.push_back(value);
    }
  }
  out.gamma_ext = std::move(ext_tail);
  out.gamma_ext.insert(out.gamma_ext.end(), ext_head.begin(), ext_head.end());
  return out;
}

std::vector<Complex> symbol_curve(const SymbolParams& p, int samples) {
  std::vector<Complex> out;
  out.reserve(samples);
  for (int k = 0; k < samples; ++k) {
    const double xi = kTwoPi * k / samples;
    out.push_back(p.case_tag() == Case::I ? symbol_I(xi, p) : symbol_II(xi, p));
  }
  return out;
}

}  // namespace toeplitz
