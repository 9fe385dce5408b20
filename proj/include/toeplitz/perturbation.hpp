#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "toeplitz/constants.hpp"
#include "toeplitz/core.hpp"
#include "toeplitz/grushin.hpp"
#include "toeplitz/operator.hpp"
#include "toeplitz/rng.hpp"

namespace toeplitz {

struct PerturbationConfig {
  OperatorSpec spec;
  double delta = 0.0;
  /// delta = N^{-kappa} when set.
  std::optional<double> kappa;
  std::uint64_t master_seed = 0;
  int trials = 1;
  double C1 = constants::kC1;
  double phi_C = constants::kPhiC;
  double delta0 = constants::kDelta0;
  double gate_offset = constants::kGateOffset;
  /// Upper bound on concurrently running trials; 0 picks hardware_concurrency.
  int jobs = 1;

  explicit PerturbationConfig(OperatorSpec s) : spec(std::move(s)) {}
  void validate() const;
};

struct ProbeRecord {
  Complex z;
  Complex E_mp_exact;
  Complex E_mp_first_order;
  double log_abs_det;
};

struct TrialResult {
  int trial_index = 0;
  double hs_norm_Q = 0.0;
  std::vector<Complex> eigenvalues;
  std::vector<ProbeRecord> records;
};

/// N x N matrix of i.i.d. complex Gaussians (density e^{-|q|^2}/pi), row-major
/// draw order.
Matrix sample_Q(int n, RngStream& stream);

/// P_0 + delta Q, with Q drawn from the stream.
Matrix build_P_delta(const PerturbationConfig& config, RngStream& stream);

/// P_0 + delta Q for a given Q.
Matrix build_P_delta(const OperatorSpec& spec, const Matrix& Q, double delta);

/// The bordered operator with P_0 + delta Q in place of P_0.
Matrix build_calP_delta(Complex z, const Matrix& Q, double delta, const OperatorSpec& spec);

/// Inverse of the perturbed bordered operator by a direct solve. Throws
/// RegimeError unless delta ||Q|| ||E^0|| < 1/2.
GrushinInverse perturbed_grushin_exact(Complex z, const Matrix& Q, double delta, const OperatorSpec& spec);

/// Corner entry of the perturbed inverse only, no precondition.
Complex E_mp_exact(Complex z, const Matrix& Q, double delta, const OperatorSpec& spec);

/// E_mp^0 - delta E_-^0 Q E_+^0.
Complex E_mp_first_order(Complex z, const Matrix& Q, double delta, const OperatorSpec& spec);

/// Same quantity as an explicit double sum over c_{N-j} q_{jk} c_{k-1}.
Complex E_mp_first_order_double_sum(Complex z, const Matrix& Q, double delta, const OperatorSpec& spec);

struct ZVector {
  Matrix Z;        ///< Z(j,k) = E_-^0(j) E_+^0(k), so E_- Q E_+ = sum q_jk Z_jk
  double hs_norm;  ///< |Z|
};

/// Throws RegimeError on the focal segment unless allow_focal is set. The
/// coefficients stay finite there (except at a double root), but the two-sided
/// bound |Z| ~ F_N(|zeta_-|) does not apply.
ZVector Z_vector(Complex z, const OperatorSpec& spec, bool allow_focal = false);

struct ClopperPearson {
  double lower;
  double upper;
};

/// Two-sided interval for a binomial proportion at the given confidence.
ClopperPearson clopper_pearson(int successes, int trials, double confidence = 0.99);

struct SmallCornerResult {
  bool skipped = false;
  std::string skip_reason;
  int successes = 0;
  int trials = 0;
  double empirical_prob = 0.0;
  ClopperPearson interval{0.0, 1.0};
  double gaussian_term = 0.0;  ///< 1 - exp(-(t/(delta |Z|))^2)
  double slack = 0.0;          ///< F_N(|zeta_-|) N delta
  double bound = 0.0;          ///< e^{-N^2} + (1 + slack) gaussian_term
  double Z_norm = 0.0;
  bool holds = false;          ///< interval.lower <= bound
};

/// Frequency of {||Q||_HS <= C1 N and |E_mp^delta| <= t} over config.trials.
SmallCornerResult small_corner_mc(Complex z, const PerturbationConfig& config, double t,
                             double smallness_C = constants::kSmallnessC);

/// phi(z) = ln|a| + max(ln|zeta_-|, 0) + C/N.
double phi(Complex z, const OperatorSpec& spec, double C);

/// eps = 2 N^{delta_0} / N.
double phi_epsilon(int n, double delta0);

/// |zeta_-| <= 1 - (kappa/N)(ln N + offset).
bool interior_lower_gate(Complex z, const OperatorSpec& spec, double kappa, double offset);

struct LogDetBand {
  double log_abs_det;
  double upper;          ///< N phi(z)
  double lower;          ///< N (phi(z) - eps)
  bool upper_ok;
  bool lower_gated;      ///< the interior gate holds, so the lower band applies
  bool lower_ok;         ///< true when not gated
};

/// Compares ln|det(P_delta - z)| with the bands. Throws RegimeError within
/// 0.1 of the focal segment.
LogDetBand log_det_band_check(const Matrix& P_delta, Complex z, const PerturbationConfig& config);

/// m(s) = s^N (1 - s).
double m_of_s(double s, int n);
/// N / (N + 1), the maximiser of m.
double s_max(int n);
/// Root of m(s) = C delta on [0, s_max]. Throws RegimeError if C delta > m(s_max).
double s_delta(int n, double delta, double C);

/// Runs body(trial_index) for every trial on up to `jobs` threads.
void parallel_for_trials(int trials, int jobs, const std::function<void(int)>& body);

/// One trial per index: samples Q from (master_seed, trial), computes the
/// spectrum of P_delta and, for every probe z, the exact and first-order
/// E_mp together with ln|det(P_delta - z)|. Results are ordered by trial.
std::vector<TrialResult> run_trials(const PerturbationConfig& config, const std::vector<Complex>& probes = {},
                                    bool with_eigenvalues = true);

}  // namespace toeplitz
