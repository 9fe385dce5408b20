#include "toeplitz/grushin.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace toeplitz {

Matrix GrushinInverse::assemble() const {
  const Eigen::Index n = E.rows();
  Matrix out(n + 1, n + 1);
  out.block(0, 0, n, 1) = E_plus;
  out.block(0, 1, n, n) = E;
  out(n, 0) = E_mp;
  out.block(n, 1, 1, n) = E_minus.transpose();
  return out;
}

GrushinInverse GrushinInverse::from_assembled(const Matrix& inverse) {
  const Eigen::Index n = inverse.rows() - 1;
  GrushinInverse out;
  out.E_plus = inverse.block(0, 0, n, 1);
  out.E = inverse.block(0, 1, n, n);
  out.E_mp = inverse(n, 0);
  out.E_minus = inverse.block(n, 1, 1, n).transpose();
  return out;
}

Matrix build_calP(Complex z, const OperatorSpec& spec) {
  spec.require_case_I("build_calP");
  require_finite(z, "z");
  const int dim = spec.n + 1;
  Matrix m = Matrix::Zero(dim, dim);
  for (int j = 0; j < dim; ++j) {
    m(j, j) = spec.params.a();
    if (j >= 1) m(j, j - 1) = -z;
    if (j >= 2) m(j, j - 2) = spec.params.b();
  }
  return m;
}

GeomCoeffs geom_coeffs(Complex z, const OperatorSpec& spec) {
  spec.require_case_I("geom_coeffs");
  const CharRoots r = char_roots_I(z, spec.params);
  const Complex ratio = r.ratio();
  const Complex inv_a = 1.0 / spec.params.a();
  GeomCoeffs out;
  out.c.reserve(spec.n + 1);
  for (int k = 0; k <= spec.n; ++k) {
    out.c.push_back(std::pow(r.zeta_minus, k) * F_geom(k + 1, ratio) * inv_a);
  }
  return out;
}

GrushinInverse grushin_inverse_closed_form(Complex z, const OperatorSpec& spec) {
  const GeomCoeffs coeffs = geom_coeffs(z, spec);
  const auto& c = coeffs.c;
  const int n = spec.n;
  GrushinInverse out;
  out.E = Matrix::Zero(n, n);
  out.E_plus.resize(n);
  out.E_minus.resize(n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < i; ++j) out.E(i, j) = c[i - j - 1];
    out.E_plus(i) = c[i];
    out.E_minus(i) = c[n - 1 - i];
  }
  out.E_mp = c[n];
  return out;
}

Complex E_mp_closed_form(Complex z, const OperatorSpec& spec) {
  spec.require_case_I("E_mp_closed_form");
  const CharRoots r = char_roots_I(z, spec.params);
  return std::pow(r.zeta_minus, spec.n) * F_geom(spec.n + 1, r.ratio()) / spec.params.a();
}

InteriorNormBounds norm_bounds_interior(Complex z, const OperatorSpec& spec) {
  spec.require_case_I("norm_bounds_interior");
  const CharRoots r = char_roots_I(z, spec.params);
  const double s = std::abs(r.zeta_minus);
  if (!(s < 1.0)) {
    std::ostringstream msg;
    msg << "norm_bounds_interior: both roots must lie in D(0,1), got |zeta_-| = " << s;
    throw RegimeError(msg.str());
  }
  const int n = spec.n;
  const double abs_a = std::abs(spec.params.a());
  const double gap = std::abs(1.0 - r.ratio());
  const double ratio_term = gap > 0 ? 2.0 / gap : std::numeric_limits<double>::infinity();
  const double m1 = std::min<double>(n, 2.0 / (1.0 - s));
  const double m2 = std::min(m1, ratio_term);
  InteriorNormBounds out;
  out.bound_E = m1 * m2 / abs_a;
  out.bound_Epm = std::sqrt(m1) * m2 / abs_a;
  out.bound_Emp = std::pow(s, n) / abs_a * std::min<double>(n + 1, ratio_term);
  return out;
}

namespace {

struct KernelParts {
  Complex zeta_plus;
  Complex zeta_minus;
  Complex c;       // 1 / (a (zeta_+ - zeta_-))
  Complex denom;   // 1 - (zeta_+/zeta_-)^{N+1}
};

KernelParts kernel_parts(Complex z, const OperatorSpec& spec) {
  spec.require_case_I("resolvent_kernel");
  const CharRoots r = char_roots_I(z, spec.params);
  const Complex denom = 1.0 - std::pow(r.ratio(), spec.n + 1);
  if (r.is_double || std::abs(denom) <= 1e-12) {
    std::ostringstream msg;
    msg << "resolvent_kernel: zeta_+^{N+1} = zeta_-^{N+1} at z = " << z.real() << (z.imag() < 0 ? "" : "+")
        << z.imag() << "i (z is an eigenvalue or a focal point)";
    throw RegimeError(msg.str());
  }
  return {r.zeta_plus, r.zeta_minus, 1.0 / (spec.params.a() * (r.zeta_plus - r.zeta_minus)), denom};
}

Complex fundamental(const KernelParts& k, int m) {
  return m >= 0 ? k.c * std::pow(k.zeta_plus, m) : k.c * std::pow(k.zeta_minus, m);
}

Complex kernel_entry(const KernelParts& parts, int n, int j, int k) {
  const Complex zp = parts.zeta_plus;
  const Complex zm = parts.zeta_minus;
  const Complex u_left = (std::pow(zp, j) - std::pow(zp, n + 1) * std::pow(zm, -(n + 1 - j))) / parts.denom;
  const Complex u_right = (std::pow(zm, -(n + 1 - j)) - std::pow(zm, -(n + 1)) * std::pow(zp, j)) / parts.denom;
  return fundamental(parts, j - k) - fundamental(parts, -k) * u_left - fundamental(parts, n + 1 - k) * u_right;
}

}  // namespace

Complex fundamental_solution(int k, Complex z, const OperatorSpec& spec) {
  const CharRoots r = char_roots_I(z, spec.params);
  if (r.is_double) throw RegimeError("fundamental_solution: double root (z is a focal point)");
  const KernelParts parts{r.zeta_plus, r.zeta_minus, 1.0 / (spec.params.a() * (r.zeta_plus - r.zeta_minus)), 1.0};
  return fundamental(parts, k);
}

Complex resolvent_kernel(int j, int k, Complex z, const OperatorSpec& spec) {
  if (j < 1 || j > spec.n || k < 1 || k > spec.n) {
    throw std::out_of_range("resolvent_kernel: indices must lie in [1, N]");
  }
  return kernel_entry(kernel_parts(z, spec), spec.n, j, k);
}

Matrix resolvent_kernel_matrix(Complex z, const OperatorSpec& spec) {
  const KernelParts parts = kernel_parts(z, spec);
  Matrix out(spec.n, spec.n);
  for (int j = 1; j <= spec.n; ++j) {
    for (int k = 1; k <= spec.n; ++k) out(j - 1, k - 1) = kernel_entry(parts, spec.n, j, k);
  }
  return out;
}

double resolvent_norm_bound_exterior(Complex z, const OperatorSpec& spec) {
  spec.require_case_I("resolvent_norm_bound_exterior");
  const CharRoots r = char_roots_I(z, spec.params);
  const double mp = std::abs(r.zeta_plus);
  const double mm = std::abs(r.zeta_minus);
  constexpr double tol = 1e-12;
  if (!(mp <= 1.0 + tol && mm >= 1.0 - tol)) {
    std::ostringstream msg;
    msg << "resolvent_norm_bound_exterior: requires |zeta_+| <= 1 <= |zeta_-|, got " << mp << ", " << mm;
    throw RegimeError(msg.str());
  }
  const int n = spec.n;
  const Complex ratio = r.ratio();
  const double denom = std::abs(1.0 - std::pow(ratio, n + 1));
  if (r.is_double || denom == 0.0) throw RegimeError("resolvent_norm_bound_exterior: degenerate roots");
  const double fn_plus = F_geom(n, std::min(mp, 1.0));
  const double fn_minus = F_geom(n, std::min(1.0 / mm, 1.0));
  const double bracket = 1.0 + mp * fn_plus + fn_minus / mm +
                         4.0 * std::abs(ratio) / denom * std::sqrt(fn_plus) * std::sqrt(fn_minus);
  return bracket / (std::abs(spec.params.a()) * std::abs(r.zeta_plus - r.zeta_minus));
}

}  // namespace toeplitz
