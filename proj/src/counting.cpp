#include "toeplitz/counting.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

namespace toeplitz {

namespace {
constexpr double kTwoPi = 2.0 * M_PI;
}

std::string_view to_string(MembershipMode mode) {
  return mode == MembershipMode::PiProjection ? "pi_projection" : "distance_equality";
}

MembershipMode membership_mode_from_string(std::string_view text) {
  if (text == "pi_projection") return MembershipMode::PiProjection;
  if (text == "distance_equality") return MembershipMode::DistanceEquality;
  throw std::invalid_argument("membership mode must be pi_projection or distance_equality, got '" +
                              std::string(text) + "'");
}

void ArcRegion::validate() const {
  if (!std::isfinite(xi_lo) || !std::isfinite(xi_hi) || !(xi_lo <= xi_hi) || xi_hi > xi_lo + kTwoPi + 1e-12) {
    throw std::invalid_argument("arc must satisfy xi_lo <= xi_hi <= xi_lo + 2 pi");
  }
  if (!(r > 0.0) || !std::isfinite(r)) throw std::invalid_argument("arc radius r must be > 0");
}

bool ArcRegion::contains_angle(double xi) const {
  if (full_circle()) return true;
  double w = std::fmod(xi - xi_lo, kTwoPi);
  if (w < 0) w += kTwoPi;
  return w <= length();
}

std::vector<std::string> region_gate_violations(const ArcRegion& region, int n) {
  std::vector<std::string> out;
  const double floor = 4.0 * std::log(static_cast<double>(n)) / n;
  if (!(region.r >= floor)) {
    std::ostringstream msg;
    msg << "r >= 4 ln N / N (r = " << region.r << ", 4 ln N / N = " << floor << ")";
    out.push_back(msg.str());
  }
  if (!(region.r <= 0.3)) {
    std::ostringstream msg;
    msg << "r <= 0.3 (r = " << region.r << ")";
    out.push_back(msg.str());
  }
  return out;
}

bool gamma_membership(Complex z, const ArcRegion& region, const SymbolParams& p) {
  region.validate();
  const CurveDistance d = dist_to_E1(z, p);
  if (!(d.distance < region.r)) return false;
  if (region.mode == MembershipMode::PiProjection) return region.contains_angle(d.xi_star);
  if (region.full_circle()) return true;
  return dist_to_E1_arc(z, p, region.xi_lo, region.xi_hi) - d.distance <= 1e-9;
}

double weyl_count(const ArcRegion& region, int n) {
  region.validate();
  return n * std::min(region.length(), kTwoPi) / kTwoPi;
}

double delta_phi_arc_identity(const ArcRegion& region, const SymbolParams& p, int mesh) {
  region.validate();
  p.require_strict_ellipse();
  if (mesh < 64) throw std::invalid_argument("delta_phi_arc_identity: mesh must be >= 64");
  const double r_min = std::sqrt(std::abs(p.b()) / std::abs(p.a()));
  const double rho_in = 0.5 * (1.0 + r_min);
  const double rho_out = 1.5;

  // phi without its constant, as a function of zeta_- = zeta.
  auto psi = [&](double rho, double theta) {
    const Complex zeta = std::polar(rho, theta);
    const Complex z = p.a() * zeta + p.b() / zeta;
    const double s = std::abs(char_roots_I(z, p).zeta_minus);
    return std::max(std::log(s), 0.0);
  };
  auto d_rho = [&](double rho, double theta) {
    const double h = 1e-5 * rho;
    return (psi(rho + h, theta) - psi(rho - h, theta)) / (2.0 * h);
  };
  auto d_theta = [&](double rho, double theta) {
    const double h = 1e-5;
    return (psi(rho, theta + h) - psi(rho, theta - h)) / (2.0 * h);
  };

  const double len = std::min(region.length(), kTwoPi);
  double flux = 0.0;
  const double dtheta = len / mesh;
  for (int i = 0; i < mesh; ++i) {
    const double theta = region.xi_lo + (i + 0.5) * dtheta;
    flux += rho_out * d_rho(rho_out, theta) * dtheta;
    flux -= rho_in * d_rho(rho_in, theta) * dtheta;
  }
  if (!region.full_circle()) {
    const double drho = (rho_out - rho_in) / mesh;
    for (int i = 0; i < mesh; ++i) {
      const double rho = rho_in + (i + 0.5) * drho;
      flux += d_theta(rho, region.xi_hi) / rho * drho;
      flux -= d_theta(rho, region.xi_lo) / rho * drho;
    }
  }
  return flux;
}

int empirical_count(const std::vector<Complex>& eigenvalues, const ArcRegion& region, const SymbolParams& p) {
  int count = 0;
  for (Complex z : eigenvalues) count += gamma_membership(z, region, p) ? 1 : 0;
  return count;
}

StrayCount stray_count(const std::vector<Complex>& eigenvalues, double r, const SymbolParams& p) {
  StrayCount out;
  for (Complex z : eigenvalues) {
    if (dist_to_E1(z, p).distance <= r) continue;
    if (inside_E1(z, p)) {
      ++out.interior;
    } else {
      ++out.exterior;
    }
  }
  return out;
}

namespace {

double effective_kappa(const PerturbationConfig& config) {
  if (config.kappa) return *config.kappa;
  if (config.delta > 0.0) return -std::log(config.delta) / std::log(static_cast<double>(config.spec.n));
  return std::numeric_limits<double>::quiet_NaN();
}

}  // namespace

std::vector<std::string> count_gate_violations(const PerturbationConfig& config, const ArcRegion& region) {
  std::vector<std::string> out;
  const int n = config.spec.n;
  if (config.delta <= 0.0) {
    out.push_back("delta > 0 (delta = N^{-kappa})");
  } else {
    const double kappa = effective_kappa(config);
    if (!(kappa > 2.5)) {
      std::ostringstream msg;
      msg << "kappa > 5/2 (kappa = " << kappa << ")";
      out.push_back(msg.str());
    }
    if (config.kappa) {
      const double expected = std::pow(static_cast<double>(n), -*config.kappa);
      if (std::abs(config.delta - expected) > 1e-9 * expected) {
        std::ostringstream msg;
        msg << "delta = N^{-kappa} (delta = " << config.delta << ", N^{-kappa} = " << expected << ")";
        out.push_back(msg.str());
      }
    }
  }
  if (!(std::abs(config.spec.params.b()) < std::abs(config.spec.params.a()))) out.push_back("|b| < |a|");
  for (auto& v : region_gate_violations(region, n)) out.push_back(std::move(v));
  return out;
}

CountReport count_experiment_mc(const PerturbationConfig& config, const ArcRegion& region, bool enforce_gates,
                            double C_acc) {
  config.validate();
  region.validate();
  const OperatorSpec& spec = config.spec;
  spec.require_case_I("count_experiment_mc");

  CountReport report;
  report.violations = count_gate_violations(config, region);
  if (!report.violations.empty()) {
    if (enforce_gates) {
      std::string msg = "gate violated:";
      for (const auto& v : report.violations) msg += " " + v + ";";
      throw GateError(msg);
    }
    report.theorem_regime = false;
  }
  spec.params.require_strict_ellipse();

  const int n = spec.n;
  report.n = n;
  report.a = spec.params.a();
  report.b = spec.params.b();
  report.delta = config.delta;
  report.kappa = effective_kappa(config);
  report.seed = config.master_seed;
  report.trials = config.trials;
  report.region = region;
  report.theoretical = weyl_count(region, n);

  const double n_pow = std::pow(static_cast<double>(n), config.delta0);
  const double ln_n = std::log(static_cast<double>(n));
  report.bound_rhs = C_acc * n_pow * (1.0 / region.r + ln_n);
  report.stray_bound = C_acc * n_pow * ln_n;

  report.per_trial.assign(config.trials, 0);
  report.stray_per_trial.assign(config.trials, 0);
  parallel_for_trials(config.trials, config.jobs, [&](int trial) {
    RngStream stream(config.master_seed, static_cast<std::uint64_t>(trial));
    const Matrix p = build_P_delta(config, stream);
    const std::vector<Complex> spectrum = eig(p);
    report.per_trial[trial] = empirical_count(spectrum, region, spec.params);
    report.stray_per_trial[trial] = stray_count(spectrum, region.r, spec.params).total();
  });

  const double count = config.trials;
  report.mean = std::accumulate(report.per_trial.begin(), report.per_trial.end(), 0.0) / count;
  double ss = 0.0;
  int passed = 0;
  int stray_passed = 0;
  for (int t = 0; t < config.trials; ++t) {
    ss += (report.per_trial[t] - report.mean) * (report.per_trial[t] - report.mean);
    if (std::abs(report.per_trial[t] - report.theoretical) <= report.bound_rhs) ++passed;
    if (report.stray_per_trial[t] <= report.stray_bound) ++stray_passed;
  }
  report.stddev = config.trials > 1 ? std::sqrt(ss / (count - 1.0)) : 0.0;
  report.pass_fraction = passed / count;
  report.stray_pass_fraction = stray_passed / count;
  return report;
}

}  // namespace toeplitz
