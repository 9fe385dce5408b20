#include "toeplitz/core.hpp"

#include <cmath>
#include <limits>

namespace toeplitz {

void require_finite(Complex z, const char* what) {
  if (!is_finite(z)) {
    throw std::invalid_argument(std::string(what) + " must be finite");
  }
}

LogComplex LogComplex::from(Complex w) {
  return {std::log(std::abs(w)), std::arg(w)};
}

Complex LogComplex::value() const {
  return std::polar(std::exp(log_abs), arg);
}

std::vector<Complex> eig(const Matrix& m) {
  if (m.rows() != m.cols() || m.rows() < 1) {
    throw std::invalid_argument("eig: matrix must be square with dimension >= 1");
  }
  Eigen::ComplexEigenSolver<Matrix> solver;
  solver.setMaxIterations(60 * m.rows());
  solver.compute(m, /*computeEigenvectors=*/false);
  if (solver.info() != Eigen::Success) {
    throw NumericError("eig: shifted QR did not converge for a " + std::to_string(m.rows()) + "x" +
                       std::to_string(m.cols()) + " matrix");
  }
  const auto& values = solver.eigenvalues();
  return {values.data(), values.data() + values.size()};
}

namespace {

Eigen::PartialPivLU<Matrix> factor(const Matrix& m, const char* who) {
  if (m.rows() != m.cols()) {
    throw std::invalid_argument(std::string(who) + ": matrix must be square");
  }
  return Eigen::PartialPivLU<Matrix>(m);
}

}  // namespace

double log_abs_det(const Matrix& m) {
  if (m.rows() == 0) return 0.0;
  const auto lu = factor(m, "log_abs_det");
  const auto& packed = lu.matrixLU();
  double acc = 0.0;
  for (Eigen::Index i = 0; i < packed.rows(); ++i) {
    const double pivot = std::abs(packed(i, i));
    if (pivot == 0.0) return -std::numeric_limits<double>::infinity();
    acc += std::log(pivot);
  }
  return acc;
}

LogComplex log_det(const Matrix& m) {
  if (m.rows() == 0) return {};
  const auto lu = factor(m, "log_det");
  const auto& packed = lu.matrixLU();
  LogComplex out{0.0, lu.permutationP().determinant() < 0 ? M_PI : 0.0};
  for (Eigen::Index i = 0; i < packed.rows(); ++i) {
    const Complex pivot = packed(i, i);
    if (pivot == Complex(0.0)) return {-std::numeric_limits<double>::infinity(), 0.0};
    out.log_abs += std::log(std::abs(pivot));
    out.arg += std::arg(pivot);
  }
  out.arg = std::remainder(out.arg, 2.0 * M_PI);
  return out;
}

Matrix solve(const Matrix& m, const Matrix& rhs) {
  if (m.rows() != rhs.rows()) {
    throw std::invalid_argument("solve: row count of rhs does not match the matrix");
  }
  const auto lu = factor(m, "solve");
  const auto& packed = lu.matrixLU();
  const double scale = packed.cwiseAbs().maxCoeff();
  for (Eigen::Index i = 0; i < packed.rows(); ++i) {
    if (std::abs(packed(i, i)) <= std::numeric_limits<double>::epsilon() * scale * 1e-2) {
      throw NumericError("solve: matrix is numerically singular (zero pivot at row " + std::to_string(i) + ")");
    }
  }
  // rcond is a cheap 1-norm estimate; anything below machine precision means
  // the residual contract cannot hold.
  if (lu.rcond() < std::numeric_limits<double>::epsilon()) {
    throw NumericError("solve: matrix is numerically singular (rcond below machine epsilon)");
  }
  return lu.solve(rhs);
}

HermitianEigpair hermitian_extreme_eigpair(const Matrix& h) {
  if (h.rows() != h.cols() || h.rows() < 1) {
    throw std::invalid_argument("hermitian_extreme_eigpair: matrix must be square and non-empty");
  }
  const double scale = std::max(h.norm(), std::numeric_limits<double>::min());
  if ((h - h.adjoint()).norm() > 1e-12 * scale) {
    throw std::invalid_argument("hermitian_extreme_eigpair: matrix is not hermitian");
  }
  Eigen::SelfAdjointEigenSolver<Matrix> solver(h);
  if (solver.info() != Eigen::Success) {
    throw NumericError("hermitian_extreme_eigpair: eigensolver did not converge");
  }
  const Eigen::Index last = h.rows() - 1;
  return {solver.eigenvalues()(last), solver.eigenvectors().col(last)};
}

Eigen::VectorXd singular_values(const Matrix& m) {
  if (m.size() == 0) return {};
  Eigen::BDCSVD<Matrix> svd(m);
  return svd.singularValues();
}

double spectral_norm(const Matrix& m) {
  if (m.size() == 0) return 0.0;
  return singular_values(m)(0);
}

double min_singular_value(const Matrix& m) {
  if (m.size() == 0) return 0.0;
  const auto s = singular_values(m);
  return s(s.size() - 1);
}

}  // namespace toeplitz
