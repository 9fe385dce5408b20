#pragma once

#include <vector>

#include "toeplitz/core.hpp"
#include "toeplitz/geom_series.hpp"
#include "toeplitz/operator.hpp"

namespace toeplitz {

/// Blocks of the inverse of the bordered operator
///
///     calP(z) = [ R_+      0  ]      with R_+ u = a u(1), R_- u_- = a u_- e_N,
///               [ P - z   R_- ]
///
/// laid out as calE = [ E_+   E  ; E_mp  E_- ] (E_mp in the lower left corner).
struct GrushinInverse {
  Matrix E;         ///< N x N
  Vector E_plus;    ///< column, length N
  Vector E_minus;   ///< row, length N
  Complex E_mp{};   ///< scalar corner

  /// The full (N+1) x (N+1) inverse in the layout above.
  Matrix assemble() const;
  static GrushinInverse from_assembled(const Matrix& inverse);
};

/// c_k for k = 0..N: the constant entries of calE(z) on its k-th subdiagonal.
struct GeomCoeffs {
  std::vector<Complex> c;
};

/// Lower triangular (N+1) x (N+1): a on the diagonal, -z below it, b two below.
Matrix build_calP(Complex z, const OperatorSpec& spec);

/// c_k = zeta_-^k F_{k+1}(zeta_+/zeta_-) / a, continuous through the focal
/// double root.
GeomCoeffs geom_coeffs(Complex z, const OperatorSpec& spec);

GrushinInverse grushin_inverse_closed_form(Complex z, const OperatorSpec& spec);

/// E_mp(z) = zeta_-^N F_{N+1}(zeta_+/zeta_-) / a without forming the blocks.
Complex E_mp_closed_form(Complex z, const OperatorSpec& spec);

/// Explicit upper bounds on the Grushin blocks, valid when both roots lie in
/// D(0,1).
struct InteriorNormBounds {
  double bound_E;    ///< operator norm of E
  double bound_Epm;  ///< 2-norms of E_+ and E_-
  double bound_Emp;  ///< |E_mp|
};

InteriorNormBounds norm_bounds_interior(Complex z, const OperatorSpec& spec);

/// Matrix element E(j,k) of (P - z)^{-1}, 1-based, built from the
/// fundamental solution of the bi-infinite problem corrected by the two
/// Dirichlet solutions u_L, u_R.
Complex resolvent_kernel(int j, int k, Complex z, const OperatorSpec& spec);

/// All N x N elements at once (same formula).
Matrix resolvent_kernel_matrix(Complex z, const OperatorSpec& spec);

/// Fundamental solution F(k) of (a tau^{-1} + b tau - z) F = delta_0.
Complex fundamental_solution(int k, Complex z, const OperatorSpec& spec);

/// Upper bound on ||(P - z)^{-1}|| for |zeta_+| <= 1 <= |zeta_-|:
///
///   1/(|a||zeta_+ - zeta_-|) * ( 1 + |zeta_+| F_N(|zeta_+|) + F_N(1/|zeta_-|)/|zeta_-|
///        + 4 |zeta_+/zeta_-| / |1 - (zeta_+/zeta_-)^{N+1}| F_N(|zeta_+|)^{1/2} F_N(1/|zeta_-|)^{1/2} )
///
/// The first three terms bound the convolution part (Young), the last the two
/// rank-one Dirichlet corrections, each entrywise bounded with a factor 2.
double resolvent_norm_bound_exterior(Complex z, const OperatorSpec& spec);

}  // namespace toeplitz
