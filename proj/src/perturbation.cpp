#include "toeplitz/perturbation.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <sstream>
#include <thread>

#include <boost/math/special_functions/beta.hpp>
#include <boost/math/tools/roots.hpp>

#include "toeplitz/geom_series.hpp"

namespace toeplitz {

void PerturbationConfig::validate() const {
  if (!(delta >= 0.0) || !std::isfinite(delta)) throw std::invalid_argument("delta must be finite and >= 0");
  if (trials < 1) throw std::invalid_argument("trials must be >= 1");
  if (!(C1 > 0.0)) throw std::invalid_argument("C1 must be > 0");
  if (jobs < 0) throw std::invalid_argument("jobs must be >= 0");
}

Matrix sample_Q(int n, RngStream& stream) {
  if (n < 1) throw std::invalid_argument("sample_Q: N must be >= 1");
  Matrix q(n, n);
  for (int j = 0; j < n; ++j) {
    for (int k = 0; k < n; ++k) q(j, k) = stream.complex_gaussian();
  }
  return q;
}

Matrix build_P_delta(const OperatorSpec& spec, const Matrix& Q, double delta) {
  Matrix p = build_P(spec);
  if (delta != 0.0) p += delta * Q;
  return p;
}

Matrix build_P_delta(const PerturbationConfig& config, RngStream& stream) {
  config.spec.require_case_I("build_P_delta");
  const Matrix q = sample_Q(config.spec.n, stream);
  return build_P_delta(config.spec, q, config.delta);
}

Matrix build_calP_delta(Complex z, const Matrix& Q, double delta, const OperatorSpec& spec) {
  Matrix m = build_calP(z, spec);
  if (delta != 0.0) m.block(1, 0, spec.n, spec.n) += delta * Q;
  return m;
}

GrushinInverse perturbed_grushin_exact(Complex z, const Matrix& Q, double delta, const OperatorSpec& spec) {
  const GrushinInverse unperturbed = grushin_inverse_closed_form(z, spec);
  const double smallness = delta * spectral_norm(Q) * spectral_norm(unperturbed.E);
  if (!(smallness < 0.5)) {
    std::ostringstream msg;
    msg << "perturbed_grushin_exact: delta ||Q|| ||E^0|| = " << smallness << " violates < 1/2";
    throw RegimeError(msg.str());
  }
  const int dim = spec.n + 1;
  return GrushinInverse::from_assembled(solve(build_calP_delta(z, Q, delta, spec), Matrix::Identity(dim, dim)));
}

Complex E_mp_exact(Complex z, const Matrix& Q, double delta, const OperatorSpec& spec) {
  const int dim = spec.n + 1;
  Matrix rhs = Matrix::Zero(dim, 1);
  rhs(0, 0) = 1.0;
  return solve(build_calP_delta(z, Q, delta, spec), rhs)(spec.n, 0);
}

Complex E_mp_first_order(Complex z, const Matrix& Q, double delta, const OperatorSpec& spec) {
  const GrushinInverse g = grushin_inverse_closed_form(z, spec);
  if (delta == 0.0) return g.E_mp;
  const Complex bilinear = g.E_minus.transpose() * Q * g.E_plus;
  return g.E_mp - delta * bilinear;
}

Complex E_mp_first_order_double_sum(Complex z, const Matrix& Q, double delta, const OperatorSpec& spec) {
  const GeomCoeffs coeffs = geom_coeffs(z, spec);
  const auto& c = coeffs.c;
  const int n = spec.n;
  Complex sum = 0.0;
  for (int j = 1; j <= n; ++j) {
    for (int k = 1; k <= n; ++k) sum += c[n - j] * Q(j - 1, k - 1) * c[k - 1];
  }
  return c[n] - delta * sum;
}

ZVector Z_vector(Complex z, const OperatorSpec& spec, bool allow_focal) {
  spec.require_case_I("Z_vector");
  if (char_roots_I(z, spec.params).is_double) throw RegimeError("Z_vector: z is a focal point (double root)");
  if (!allow_focal && on_focal_segment(z, spec.params)) throw RegimeError("Z_vector: z lies on the focal segment");
  const GrushinInverse g = grushin_inverse_closed_form(z, spec);
  ZVector out;
  out.Z = g.E_minus * g.E_plus.transpose();
  out.hs_norm = g.E_minus.norm() * g.E_plus.norm();
  return out;
}

ClopperPearson clopper_pearson(int successes, int trials, double confidence) {
  if (trials < 1 || successes < 0 || successes > trials) {
    throw std::invalid_argument("clopper_pearson: need 0 <= successes <= trials, trials >= 1");
  }
  if (!(confidence > 0.0 && confidence < 1.0)) throw std::invalid_argument("clopper_pearson: confidence in (0,1)");
  const double tail = 0.5 * (1.0 - confidence);
  const double k = successes;
  const double n = trials;
  ClopperPearson out{0.0, 1.0};
  if (successes > 0) out.lower = boost::math::ibeta_inv(k, n - k + 1.0, tail);
  if (successes < trials) out.upper = boost::math::ibeta_inv(k + 1.0, n - k, 1.0 - tail);
  return out;
}

SmallCornerResult small_corner_mc(Complex z, const PerturbationConfig& config, double t, double smallness_C) {
  config.validate();
  const OperatorSpec& spec = config.spec;
  spec.require_case_I("small_corner_mc");
  if (!(t >= 0.0)) throw std::invalid_argument("small_corner_mc: t must be >= 0");
  const int n = spec.n;

  SmallCornerResult out;
  out.trials = config.trials;
  const double s = std::abs(char_roots_I(z, spec.params).zeta_minus);
  const double fn = F_geom(n, s);
  const double e_mp0 = std::abs(E_mp_closed_form(z, spec));
  if (!(e_mp0 <= smallness_C * config.delta * fn)) {
    std::ostringstream msg;
    msg << "smallness hypothesis |E_mp^0| <= C delta F_N(|zeta_-|) fails: " << e_mp0 << " > "
        << smallness_C * config.delta * fn;
    out.skipped = true;
    out.skip_reason = msg.str();
    return out;
  }
  out.Z_norm = Z_vector(z, spec, true).hs_norm;

  std::vector<char> hit(config.trials, 0);
  parallel_for_trials(config.trials, config.jobs, [&](int trial) {
    RngStream stream(config.master_seed, static_cast<std::uint64_t>(trial));
    const Matrix q = sample_Q(n, stream);
    if (q.norm() > config.C1 * n) return;
    hit[trial] = std::abs(E_mp_exact(z, q, config.delta, spec)) <= t ? 1 : 0;
  });
  for (char h : hit) out.successes += h;
  out.empirical_prob = static_cast<double>(out.successes) / config.trials;
  out.interval = clopper_pearson(out.successes, config.trials);

  const double scale = config.delta * out.Z_norm;
  out.gaussian_term = scale > 0.0 ? -std::expm1(-(t / scale) * (t / scale)) : 1.0;
  out.slack = fn * n * config.delta;
  out.bound = std::exp(-static_cast<double>(n) * n) + (1.0 + out.slack) * out.gaussian_term;
  out.holds = out.interval.lower <= out.bound;
  return out;
}

double phi(Complex z, const OperatorSpec& spec, double C) {
  spec.require_case_I("phi");
  const double s = std::abs(char_roots_I(z, spec.params).zeta_minus);
  return std::log(std::abs(spec.params.a())) + std::max(std::log(s), 0.0) + C / spec.n;
}

double phi_epsilon(int n, double delta0) { return 2.0 * std::pow(static_cast<double>(n), delta0) / n; }

bool interior_lower_gate(Complex z, const OperatorSpec& spec, double kappa, double offset) {
  const double s = std::abs(char_roots_I(z, spec.params).zeta_minus);
  const double n = spec.n;
  return s <= 1.0 - (kappa / n) * (std::log(n) + offset);
}

LogDetBand log_det_band_check(const Matrix& P_delta, Complex z, const PerturbationConfig& config) {
  const OperatorSpec& spec = config.spec;
  if (dist_to_focal_segment(z, spec.params) < 0.1) {
    throw RegimeError("log_det_band_check: z lies within 0.1 of the focal segment");
  }
  const int n = spec.n;
  LogDetBand out{};
  out.log_abs_det = log_abs_det(P_delta - z * Matrix::Identity(n, n));
  const double ph = phi(z, spec, config.phi_C);
  out.upper = n * ph;
  out.lower = n * (ph - phi_epsilon(n, config.delta0));
  out.upper_ok = out.log_abs_det <= out.upper;
  double kappa = std::numeric_limits<double>::quiet_NaN();
  if (config.kappa) {
    kappa = *config.kappa;
  } else if (config.delta > 0.0) {
    kappa = -std::log(config.delta) / std::log(static_cast<double>(n));
  }
  out.lower_gated = std::isfinite(kappa) && interior_lower_gate(z, spec, kappa, config.gate_offset);
  out.lower_ok = !out.lower_gated || out.log_abs_det >= out.lower;
  return out;
}

double m_of_s(double s, int n) { return std::pow(s, n) * (1.0 - s); }

double s_max(int n) { return static_cast<double>(n) / (n + 1); }

double s_delta(int n, double delta, double C) {
  const double target = C * delta;
  const double hi = s_max(n);
  if (target > m_of_s(hi, n)) {
    std::ostringstream msg;
    msg << "s_delta: C delta = " << target << " exceeds m(s_max) = " << m_of_s(hi, n);
    throw RegimeError(msg.str());
  }
  if (target <= 0.0) return 0.0;
  auto f = [&](double s) { return m_of_s(s, n) - target; };
  const auto bracket = boost::math::tools::bisect(f, 0.0, hi, boost::math::tools::eps_tolerance<double>(50));
  return 0.5 * (bracket.first + bracket.second);
}

void parallel_for_trials(int trials, int jobs, const std::function<void(int)>& body) {
  if (trials <= 0) return;
  int workers = jobs > 0 ? jobs : static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  workers = std::min(workers, trials);
  if (workers == 1) {
    for (int i = 0; i < trials; ++i) body(i);
    return;
  }
  std::atomic<int> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (int i = next++; i < trials; i = next++) {
      try {
        body(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next = trials;
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);
}

std::vector<TrialResult> run_trials(const PerturbationConfig& config, const std::vector<Complex>& probes,
                                    bool with_eigenvalues) {
  config.validate();
  const OperatorSpec& spec = config.spec;
  spec.require_case_I("run_trials");
  const int n = spec.n;
  std::vector<TrialResult> results(config.trials);
  parallel_for_trials(config.trials, config.jobs, [&](int trial) {
    RngStream stream(config.master_seed, static_cast<std::uint64_t>(trial));
    const Matrix q = sample_Q(n, stream);
    const Matrix p = build_P_delta(spec, q, config.delta);
    TrialResult& r = results[trial];
    r.trial_index = trial;
    r.hs_norm_Q = q.norm();
    if (with_eigenvalues) r.eigenvalues = eig(p);
    for (Complex z : probes) {
      ProbeRecord rec{z, {}, {}, 0.0};
      rec.E_mp_exact = E_mp_exact(z, q, config.delta, spec);
      rec.E_mp_first_order = E_mp_first_order(z, q, config.delta, spec);
      rec.log_abs_det = log_abs_det(p - z * Matrix::Identity(n, n));
      r.records.push_back(rec);
    }
  });
  return results;
}

}  // namespace toeplitz
