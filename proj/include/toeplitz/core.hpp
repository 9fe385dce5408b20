#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace toeplitz {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;

/// Raised when a numerical routine cannot deliver its contract
/// (non-convergence, numerically singular system).
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised when an operation is called outside the parameter regime in which
/// its formula is valid (e.g. an interior bound requested for an exterior z).
class RegimeError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Raised by Monte Carlo drivers when a configuration violates a gating
/// inequality. The message names the violated inequality.
class GateError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

inline bool is_finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

void require_finite(Complex z, const char* what);

/// A complex number stored as ln|w| and arg w. Used wherever powers like
/// a^N or zeta^N would leave the double range.
struct LogComplex {
  double log_abs = 0.0;
  double arg = 0.0;

  static LogComplex from(Complex w);
  Complex value() const;
  Complex phase() const { return std::polar(1.0, arg); }
  LogComplex operator*(const LogComplex& o) const { return {log_abs + o.log_abs, arg + o.arg}; }
  LogComplex pow(int n) const { return {n * log_abs, n * arg}; }
};

/// Eigenvalues of a square matrix, with multiplicity. Hessenberg reduction
/// followed by shifted complex QR.
std::vector<Complex> eig(const Matrix& m);

/// sum ln|u_ii| of a partially pivoted LU factorization; -inf when singular.
double log_abs_det(const Matrix& m);

/// Determinant in log-polar form (the phase includes the permutation sign).
LogComplex log_det(const Matrix& m);

/// Solves m * x = rhs. Throws NumericError if m is numerically singular.
Matrix solve(const Matrix& m, const Matrix& rhs);

struct HermitianEigpair {
  double value;
  Vector vector;
};

/// Largest eigenvalue and a unit eigenvector of a hermitian matrix.
HermitianEigpair hermitian_extreme_eigpair(const Matrix& h);

/// Largest singular value.
double spectral_norm(const Matrix& m);

/// Smallest singular value.
double min_singular_value(const Matrix& m);

/// Singular values in decreasing order.
Eigen::VectorXd singular_values(const Matrix& m);

}  // namespace toeplitz
