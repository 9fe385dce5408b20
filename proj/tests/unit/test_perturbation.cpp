#include <algorithm>
#include <cmath>

#include "doctest.h"
#include "toeplitz/geom_series.hpp"
#include "toeplitz/perturbation.hpp"

using namespace toeplitz;

namespace {

const SymbolParams kP({1, 1}, 0.5);

Complex from_zeta(double rho, double theta) {
  const Complex zeta = std::polar(rho, theta);
  return kP.a() * zeta + kP.b() / zeta;
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t m = v.size() / 2;
  return v.size() % 2 ? v[m] : 0.5 * (v[m - 1] + v[m]);
}

double trace_norm(const Matrix& m) { return singular_values(m).sum(); }

PerturbationConfig make_config(int n, double delta, std::uint64_t seed, int trials) {
  PerturbationConfig c{OperatorSpec(n, kP)};
  c.delta = delta;
  c.master_seed = seed;
  c.trials = trials;
  return c;
}

}  // namespace

TEST_CASE("sample_Q statistics") {
  const int n = 50;
  double mean = 0.0;
  for (int t = 0; t < 100; ++t) {
    RngStream s(101, t);
    const Matrix q = sample_Q(n, s);
    mean += q.squaredNorm() / 100.0;
    CHECK(trace_norm(q) <= std::sqrt(double(n)) * q.norm() * (1 + 1e-12));
  }
  CHECK(mean >= 0.97 * n * n);
  CHECK(mean <= 1.03 * n * n);

  int failures = 0;
  for (int t = 0; t < 10000; ++t) {
    RngStream s(102, t);
    if (sample_Q(n, s).norm() > constants::kC1 * n) ++failures;
  }
  CHECK(failures == 0);
}

TEST_CASE("sample_Q draw order is row-major") {
  RngStream a(5, 3), b(5, 3);
  const Matrix q = sample_Q(3, a);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) CHECK(q(i, j) == b.complex_gaussian());
}

TEST_CASE("build_P_delta") {
  auto cfg = make_config(30, 0.0, 1, 1);
  RngStream s(1, 0);
  CHECK(build_P_delta(cfg, s) == build_P(cfg.spec));

  RngStream s2(1, 0);
  const Matrix q = sample_Q(30, s2);
  const Matrix pd = build_P_delta(cfg.spec, q, 1e-3);
  CHECK(std::abs((pd - build_P(cfg.spec)).norm() - 1e-3 * q.norm()) <= 1e-15 * q.norm());

  cfg.delta = 1e-3;
  RngStream s3(1, 0);
  CHECK(build_P_delta(cfg, s3) == pd);
}

TEST_CASE("perturbed Grushin inverse") {
  const OperatorSpec spec(40, kP);
  const Complex z = from_zeta(0.85, 1.1);
  RngStream s(33, 0);
  const Matrix q = sample_Q(40, s);

  const Matrix zero_delta = perturbed_grushin_exact(z, q, 0.0, spec).assemble();
  const Matrix closed = grushin_inverse_closed_form(z, spec).assemble();
  CHECK((zero_delta - closed).cwiseAbs().maxCoeff() <= 1e-10);

  const GrushinInverse g0 = grushin_inverse_closed_form(z, spec);
  const double e0 = spectral_norm(g0.E);
  const double qn = spectral_norm(q);
  const double delta = 0.4 / (qn * e0);
  const GrushinInverse gd = perturbed_grushin_exact(z, q, delta, spec);
  CHECK(spectral_norm(gd.E) <= 2.0 * e0);
  CHECK_THROWS_AS(perturbed_grushin_exact(z, q, 0.6 / (qn * e0), spec), RegimeError);

  // E_mp^delta vanishes at eigenvalues of P_delta
  const double small = 1e-6;
  const Matrix pd = build_P_delta(spec, q, small);
  int checked = 0;
  for (Complex l : eig(pd)) {
    if (dist_to_focal_segment(l, kP) < 0.1) continue;
    CHECK(std::abs(E_mp_exact(l, q, small, spec)) <= 1e-6 * std::abs(kP.a()));
    ++checked;
  }
  CHECK(checked > 0);
}

TEST_CASE("first-order expansion") {
  const OperatorSpec spec(60, kP);
  const Complex z = from_zeta(0.9, 2.0);
  RngStream s(44, 0);
  const Matrix q = sample_Q(60, s);
  CHECK(E_mp_first_order(z, q, 0.0, spec) == E_mp_closed_form(z, spec));
  for (double delta : {1e-8, 1e-5, 1e-2}) {
    const Complex bilinear = E_mp_first_order(z, q, delta, spec);
    const Complex sum = E_mp_first_order_double_sum(z, q, delta, spec);
    CHECK(std::abs(bilinear - sum) <= 1e-12 * std::max(1.0, std::abs(bilinear)));
  }
}

TEST_CASE("second-order remainder halves twice as fast") {
  const OperatorSpec spec(100, kP);
  const Complex z = 0.0;
  std::vector<double> full, half;
  for (int t = 0; t < 50; ++t) {
    RngStream s(77, t);
    const Matrix q = sample_Q(100, s);
    for (double delta : {1e-6, 5e-7}) {
      const double r = std::abs(E_mp_exact(z, q, delta, spec) - E_mp_first_order(z, q, delta, spec));
      (delta == 1e-6 ? full : half).push_back(r);
    }
  }
  const double ratio = median(full) / median(half);
  CHECK(ratio >= 3.0);
  CHECK(ratio <= 5.0);
}

TEST_CASE("Z vector") {
  const OperatorSpec spec(50, kP);
  const Complex z = from_zeta(0.8, 0.7);
  const ZVector zv = Z_vector(z, spec);
  const GrushinInverse g = grushin_inverse_closed_form(z, spec);
  RngStream s(55, 0);
  const Matrix q = sample_Q(50, s);
  const Complex direct = (g.E_minus.transpose() * q * g.E_plus)(0, 0);
  const Complex pairing = (q.array() * zv.Z.array()).sum();
  CHECK(std::abs(direct - pairing) <= 1e-10 * std::max(1.0, std::abs(direct)));
  CHECK(std::abs(zv.hs_norm - zv.Z.norm()) <= 1e-12 * zv.hs_norm);

  const Eigen::VectorXd sv = singular_values(zv.Z);
  CHECK(sv(1) <= 1e-10 * sv(0));

  CHECK_THROWS_AS(Z_vector(0.1 * sqrt_ab(kP), spec), RegimeError);
  CHECK_NOTHROW(Z_vector(0.1 * sqrt_ab(kP), spec, true));
  CHECK_THROWS_AS(Z_vector(2.0 * sqrt_ab(kP), spec, true), RegimeError);
}

TEST_CASE("Z vector norm is comparable to F_N(|zeta_-|)") {
  const double c0 = constants::kZNormC0;
  for (int n : {20, 50, 100, 200}) {
    const OperatorSpec spec(n, kP);
    for (double rho : {0.75, 0.85, 0.95, 0.99, 0.999}) {
      for (int k = 0; k < 12; ++k) {
        const Complex z = from_zeta(rho, 2 * M_PI * k / 12 + 0.1);
        if (dist_to_focal_segment(z, kP) < 0.1) continue;
        const double fn = F_geom(n, std::abs(char_roots_I(z, kP).zeta_minus));
        const double zn = Z_vector(z, spec).hs_norm;
        CHECK(zn <= c0 * fn);
        CHECK(zn >= fn / c0);
      }
    }
  }
}

TEST_CASE("Clopper-Pearson") {
  const auto all = clopper_pearson(0, 100);
  CHECK(all.lower == 0.0);
  CHECK(all.upper == doctest::Approx(1.0 - std::pow(0.005, 0.01)).epsilon(1e-10));
  const auto full = clopper_pearson(100, 100);
  CHECK(full.upper == 1.0);
  CHECK(full.lower == doctest::Approx(std::pow(0.005, 0.01)).epsilon(1e-10));
  const auto mid = clopper_pearson(50, 100);
  CHECK(mid.lower < 0.5);
  CHECK(mid.upper > 0.5);
  CHECK(mid.lower == doctest::Approx(1.0 - mid.upper).epsilon(1e-10));
  CHECK_THROWS_AS(clopper_pearson(5, 0), std::invalid_argument);
}

TEST_CASE("small-corner probability Monte Carlo") {
  const int n = 40;
  auto cfg = make_config(n, std::pow(double(n), -3.0), 2024, 2000);
  SUBCASE("t = 0") {
    cfg.trials = 200;
    const auto r = small_corner_mc(0.0, cfg, 0.0);
    REQUIRE_FALSE(r.skipped);
    CHECK(r.successes == 0);
  }
  SUBCASE("large t") {
    cfg.trials = 200;
    const auto r = small_corner_mc(0.0, cfg, 1e3);
    CHECK(r.empirical_prob == 1.0);
    CHECK(r.bound >= 1.0);
  }
  SUBCASE("t in {0.5, 1, 2} delta |Z|") {
    const double scale = cfg.delta * Z_vector(0.0, cfg.spec, true).hs_norm;
    for (double m : {0.5, 1.0, 2.0}) {
      const auto r = small_corner_mc(0.0, cfg, m * scale);
      REQUIRE_FALSE(r.skipped);
      CHECK(r.holds);
      CHECK(r.gaussian_term == doctest::Approx(1.0 - std::exp(-m * m)).epsilon(1e-9));
    }
  }
  SUBCASE("smallness hypothesis") {
    cfg.trials = 10;
    const auto r = small_corner_mc(from_zeta(0.95, 0.7), cfg, 1.0);
    CHECK(r.skipped);
    CHECK_FALSE(r.skip_reason.empty());
  }
}

TEST_CASE("phi and the exterior determinant") {
  const int n = 200;
  auto cfg = make_config(n, std::pow(double(n), -2.6), 31, 20);
  const std::vector<Complex> probes = {from_zeta(1.3, 0.4), from_zeta(1.8, 2.5), Complex(3.0, -1.0)};
  for (const TrialResult& tr : run_trials(cfg, probes, false)) {
    for (const ProbeRecord& rec : tr.records) {
      const double ln_zm = std::log(std::abs(char_roots_I(rec.z, kP).zeta_minus));
      const double residual = rec.log_abs_det - n * (std::log(std::abs(kP.a())) + ln_zm);
      CHECK(std::abs(residual) / n <= 20.0 / n);
      CHECK(rec.log_abs_det <= n * phi(rec.z, cfg.spec, cfg.phi_C));
    }
  }
  CHECK(phi(Complex(0.1, 0.9), cfg.spec, 0.0) == doctest::Approx(std::log(std::abs(kP.a()))));
  CHECK(phi_epsilon(100, 0.2) == doctest::Approx(2.0 * std::pow(100.0, 0.2) / 100.0));
}

namespace {

// Fraction of trials in which the interior lower band holds at N = 100.
double interior_lower_fraction(double delta0) {
  const int n = 100;
  auto cfg = make_config(n, std::pow(double(n), -2.6), 4242, 1000);
  cfg.kappa = 2.6;
  cfg.delta0 = delta0;
  const Complex z = from_zeta(0.8, 1.3);
  REQUIRE(interior_lower_gate(z, cfg.spec, 2.6, cfg.gate_offset));
  int ok = 0;
  for (const TrialResult& tr : run_trials(cfg, {z}, false)) {
    RngStream s(cfg.master_seed, tr.trial_index);
    const LogDetBand band = log_det_band_check(build_P_delta(cfg, s), z, cfg);
    CHECK(band.log_abs_det == doctest::Approx(tr.records[0].log_abs_det).epsilon(1e-12));
    CHECK(band.lower_gated);
    if (band.lower_ok) ++ok;
  }
  return ok / 1000.0;
}

}  // namespace

TEST_CASE("interior lower band at delta0 = 0.2" * doctest::should_fail()) {
  CHECK(interior_lower_fraction(0.2) >= 0.99);
}

TEST_CASE("interior lower band at delta0 = 0.5") {
  CHECK(interior_lower_fraction(0.5) >= 0.99);
}

TEST_CASE("log_det_band_check regime") {
  auto cfg = make_config(30, 1e-4, 1, 1);
  const Matrix p = build_P(cfg.spec);
  CHECK_THROWS_AS(log_det_band_check(p, Complex(0.05, 0.0), cfg), RegimeError);
  cfg.kappa = 2.6;
  const LogDetBand ext = log_det_band_check(p, Complex(3.0, 0.5), cfg);
  CHECK_FALSE(ext.lower_gated);
  CHECK(ext.lower_ok);
  CHECK(ext.upper_ok);
}

TEST_CASE("m(s) and s_delta") {
  for (int n : {50, 100, 500, 2000}) {
    const double v = m_of_s(s_max(n), n) * M_E * n;
    CHECK(v >= 0.9);
    CHECK(v <= 1.1);
    CHECK(m_of_s(s_max(n), n) >= m_of_s(s_max(n) * 0.999, n));
    CHECK(m_of_s(s_max(n), n) >= m_of_s(std::min(1.0, s_max(n) * 1.001), n));
  }
  for (int n : {20, 100, 400}) {
    for (double delta : {1e-40, 1e-20, 1e-10}) {
      if (n == 20 && delta < 1e-30) continue;
      const double s = s_delta(n, delta, 1.0);
      CHECK(m_of_s(s, n) == doctest::Approx(delta).epsilon(1e-8));
      CHECK(s >= std::pow(delta, 1.0 / n));
      CHECK(s <= std::pow(n * delta, 1.0 / n));
    }
  }
  CHECK_THROWS_AS(s_delta(50, 1.0, 1.0), RegimeError);
}

TEST_CASE("Neumann consistency and determinant perturbation") {
  const int n = 40;
  const OperatorSpec spec(n, kP);
  for (int t = 0; t < 20; ++t) {
    RngStream s(88, t);
    const Matrix q = sample_Q(n, s);
    const Complex z = from_zeta(0.75 + 0.01 * t, 0.3 * t);
    const Matrix e0 = grushin_inverse_closed_form(z, spec).assemble();
    const double e0n = spectral_norm(e0);
    const double qn = spectral_norm(q);
    const double delta = 0.1 / (qn * e0n);

    const Matrix ed = solve(build_calP_delta(z, q, delta, spec), Matrix::Identity(n + 1, n + 1));
    CHECK(spectral_norm(ed - e0) <= 2.0 * delta * qn * e0n * e0n);

    const double lhs = std::abs(log_abs_det(build_calP_delta(z, q, delta, spec)) - (n + 1) * std::log(std::abs(kP.a())));
    CHECK(lhs <= delta * trace_norm(q) * e0n / (1.0 - delta * qn * e0n));
  }
}

TEST_CASE("run_trials is deterministic and ordered") {
  auto cfg = make_config(30, 1e-6, 99, 6);
  cfg.jobs = 3;
  const auto a = run_trials(cfg, {Complex(0.5, 0.5)});
  cfg.jobs = 1;
  const auto b = run_trials(cfg, {Complex(0.5, 0.5)});
  REQUIRE(a.size() == 6);
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].trial_index == int(i));
    CHECK(a[i].eigenvalues.size() == 30);
    CHECK(a[i].eigenvalues == b[i].eigenvalues);
    CHECK(a[i].hs_norm_Q == b[i].hs_norm_Q);
    CHECK(a[i].records[0].E_mp_exact == b[i].records[0].E_mp_exact);
  }
  cfg.trials = 0;
  CHECK_THROWS_AS(run_trials(cfg), std::invalid_argument);
}
