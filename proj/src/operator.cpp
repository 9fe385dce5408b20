#include "toeplitz/operator.hpp"

#include <cmath>

#include "toeplitz/geom_series.hpp"

namespace toeplitz {

OperatorSpec::OperatorSpec(int n_, SymbolParams params_) : n(n_), params(params_) {
  if (n < 1) throw std::invalid_argument("N must be >= 1");
}

void OperatorSpec::require_case_I(const char* who) const {
  if (params.case_tag() != Case::I) {
    throw RegimeError(std::string(who) + " is only defined for Case I");
  }
}

Matrix build_P(const OperatorSpec& spec) {
  const int n = spec.n;
  Matrix m = Matrix::Zero(n, n);
  const Complex a = spec.params.a();
  const Complex b = spec.params.b();
  if (spec.params.case_tag() == Case::I) {
    for (int j = 0; j + 1 < n; ++j) {
      m(j, j + 1) = a;
      m(j + 1, j) = b;
    }
  } else {
    for (int j = 0; j + 1 < n; ++j) m(j, j + 1) = a;
    for (int j = 0; j + 2 < n; ++j) m(j, j + 2) = b;
  }
  return m;
}

std::vector<Complex> exact_spectrum_I(const OperatorSpec& spec) {
  spec.require_case_I("exact_spectrum_I");
  const Complex two_root = 2.0 * sqrt_ab(spec.params);
  std::vector<Complex> out;
  out.reserve(spec.n);
  for (int nu = 1; nu <= spec.n; ++nu) {
    out.push_back(two_root * std::cos(M_PI * nu / (spec.n + 1)));
  }
  return out;
}

LogComplex det_closed_form_log(Complex z, const OperatorSpec& spec) {
  spec.require_case_I("det_closed_form");
  const CharRoots r = char_roots_I(z, spec.params);
  const int n = spec.n;
  const LogComplex lead = (LogComplex::from(-spec.params.a()) * LogComplex::from(r.zeta_minus)).pow(n);
  LogComplex out = lead * LogComplex::from(F_geom(n + 1, r.ratio()));
  out.arg = std::remainder(out.arg, 2.0 * M_PI);
  return out;
}

Complex det_closed_form(Complex z, const OperatorSpec& spec) { return det_closed_form_log(z, spec).value(); }

LogComplex det_mirror_form_log(Complex z, const OperatorSpec& spec) {
  spec.require_case_I("det_mirror_form");
  const CharRoots r = char_roots_I(z, spec.params);
  const int n = spec.n;
  const LogComplex lead = (LogComplex::from(-spec.params.b()) * LogComplex::from(1.0 / r.zeta_plus)).pow(n);
  LogComplex out = lead * LogComplex::from(F_geom(n + 1, r.ratio()));
  out.arg = std::remainder(out.arg, 2.0 * M_PI);
  return out;
}

Matrix symmetrized_form(const OperatorSpec& spec) {
  spec.require_case_I("symmetrized_form");
  const int n = spec.n;
  const Complex s = sqrt_ab(spec.params);
  Matrix m = Matrix::Zero(n, n);
  for (int j = 0; j + 1 < n; ++j) {
    m(j, j + 1) = s;
    m(j + 1, j) = s;
  }
  return m;
}

Eigen::VectorXcd similarity_diagonal(const OperatorSpec& spec) {
  const Complex w = std::sqrt(spec.params.a() / spec.params.b());
  Eigen::VectorXcd d(spec.n);
  Complex power = 1.0;
  for (int k = 0; k < spec.n; ++k) {
    d(k) = power;
    power *= w;
  }
  return d;
}

std::vector<Complex> numerical_range_boundary(const Matrix& m, int n_angles) {
  if (n_angles < 3) throw std::invalid_argument("numerical_range_boundary: n_angles must be >= 3");
  std::vector<Complex> out;
  out.reserve(n_angles);
  for (int k = 0; k < n_angles; ++k) {
    const double theta = 2.0 * M_PI * k / n_angles;
    const Matrix rotated = std::polar(1.0, -theta) * m;
    const Matrix hermitian_part = 0.5 * (rotated + rotated.adjoint());
    const HermitianEigpair top = hermitian_extreme_eigpair(hermitian_part);
    out.push_back(top.vector.dot(m * top.vector));
  }
  return out;
}

std::vector<Complex> numerical_range_boundary(const OperatorSpec& spec, int n_angles) {
  return numerical_range_boundary(build_P(spec), n_angles);
}

}  // namespace toeplitz
