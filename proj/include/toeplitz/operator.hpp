#pragma once

#include <vector>

#include "toeplitz/core.hpp"
#include "toeplitz/symbol.hpp"

namespace toeplitz {

/// An N x N bidiagonal Toeplitz operator.
struct OperatorSpec {
  int n;
  SymbolParams params;

  OperatorSpec(int n_, SymbolParams params_);
  /// Throws RegimeError unless params.case_tag() == Case::I.
  void require_case_I(const char* who) const;
};

/// Dense matrix of P_I or P_II.
Matrix build_P(const OperatorSpec& spec);

/// 2 sqrt(ab) cos(pi nu / (N+1)), nu = 1..N.
std::vector<Complex> exact_spectrum_I(const OperatorSpec& spec);

/// det(P_I - z) = (-a)^N zeta_-^N F_{N+1}(zeta_+/zeta_-), in log-polar form.
LogComplex det_closed_form_log(Complex z, const OperatorSpec& spec);
Complex det_closed_form(Complex z, const OperatorSpec& spec);

/// The same determinant assembled from the reflected Grushin problem:
/// (-b)^N zeta_+^{-N} F_{N+1}(zeta_+/zeta_-).
LogComplex det_mirror_form_log(Complex z, const OperatorSpec& spec);

/// sqrt(ab) times the symmetric 0/1 tridiagonal matrix; similar to P_I.
Matrix symmetrized_form(const OperatorSpec& spec);

/// The diagonal similarity W = diag(w^k), w = (a/b)^{1/2}, k = 0..N-1.
Eigen::VectorXcd similarity_diagonal(const OperatorSpec& spec);

/// Boundary points of the numerical range, one per supporting direction
/// theta = 2 pi k / n_angles.
std::vector<Complex> numerical_range_boundary(const Matrix& m, int n_angles);
std::vector<Complex> numerical_range_boundary(const OperatorSpec& spec, int n_angles);

}  // namespace toeplitz
