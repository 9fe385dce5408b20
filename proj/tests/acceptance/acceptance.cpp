// Acceptance suite: one line per criterion, exit status 1 if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "toeplitz/counting.hpp"
#include "toeplitz/geom_series.hpp"

using namespace toeplitz;

namespace {

const SymbolParams kP({1, 1}, 0.5);

struct Outcome {
  bool pass;
  std::string detail;
};

std::string fmt(const char* f, double a, double b = 0, double c = 0, double d = 0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c, d);
  return buf;
}

Complex from_zeta(double rho, double theta) {
  const Complex zeta = std::polar(rho, theta);
  return kP.a() * zeta + kP.b() / zeta;
}

double pairing_distance(std::vector<Complex> got, std::vector<Complex> want) {
  double worst = 0.0;
  for (Complex g : got) {
    auto best = std::min_element(want.begin(), want.end(),
                                 [&](Complex x, Complex y) { return std::abs(x - g) < std::abs(y - g); });
    worst = std::max(worst, std::abs(*best - g));
    want.erase(best);
  }
  return worst;
}

// |exp(x - y) - 1| for two log-polar numbers
double log_rel_err(const LogComplex& x, const LogComplex& y) {
  const Complex d(x.log_abs - y.log_abs, std::remainder(x.arg - y.arg, 2 * M_PI));
  return std::abs(std::exp(d) - 1.0);
}

Outcome c1_closed_form_spectrum() {
  double worst = 0.0;
  for (int n = 1; n <= 200; ++n) {
    const OperatorSpec spec(n, kP);
    worst = std::max(worst, pairing_distance(eig(build_P(spec)), exact_spectrum_I(spec)));
  }
  return {worst <= 1e-6 * std::abs(kP.a()), fmt("max pairing distance %.3g (limit %.3g)", worst, 1e-6 * std::abs(kP.a()))};
}

Outcome c2_determinant_triple() {
  RngStream s(2, 0);
  double triple = 0.0, mirror = 0.0;
  for (int n : {5, 20, 80}) {
    const OperatorSpec spec(n, kP);
    const auto spectrum = exact_spectrum_I(spec);
    const Matrix p = build_P(spec);
    int done = 0;
    while (done < 200) {
      const Complex z = std::polar(2.5 * std::sqrt(s.uniform_open()), 2 * M_PI * s.uniform_open());
      double d = INFINITY;
      for (Complex l : spectrum) d = std::min(d, std::abs(z - l));
      if (d < 1e-3) continue;
      const LogComplex closed = det_closed_form_log(z, spec);
      const Complex emp_form = (n % 2 ? -1.0 : 1.0) * grushin_inverse_closed_form(z, spec).E_mp;
      const LogComplex via_emp = LogComplex::from(emp_form) * LogComplex::from(kP.a()).pow(n + 1);
      const LogComplex numeric = log_det(p - z * Matrix::Identity(n, n));
      triple = std::max({triple, log_rel_err(closed, via_emp), log_rel_err(closed, numeric)});
      mirror = std::max(mirror, log_rel_err(closed, det_mirror_form_log(z, spec)));
      ++done;
    }
  }
  return {triple <= 1e-8 && mirror <= 1e-10, fmt("triple rel err %.3g (<= 1e-8), mirror %.3g (<= 1e-10)", triple, mirror)};
}

double grushin_residual(Complex z, const OperatorSpec& spec, bool relative) {
  const Matrix cp = build_calP(z, spec);
  const Matrix ce = grushin_inverse_closed_form(z, spec).assemble();
  const double r = (cp * ce - Matrix::Identity(spec.n + 1, spec.n + 1)).norm();
  return r / (cp.norm() * (relative ? ce.norm() : 1.0));
}

Outcome c3_grushin_inverse() {
  const OperatorSpec spec(200, kP);
  RngStream s(3, 0);
  double worst = 0.0;
  int counts[3] = {0, 0, 0};
  for (int i = 0; i < 100; ++i) {
    const double theta = 2 * M_PI * s.uniform_open();
    double rho;
    switch (i % 3) {
      case 0: rho = 0.6 + 0.399 * s.uniform_open(); break;   // interior, off the focal segment
      case 1: rho = 1.0; break;                              // on E_1
      default: rho = 1.0 + 0.05 * s.uniform_open(); break;   // exterior band next to E_1
    }
    const Complex z = from_zeta(rho, theta);
    ++counts[i % 3];
    worst = std::max(worst, grushin_residual(z, spec, false));
  }
  // far exterior: ||calE|| grows like |zeta_-|^N, so only the relative residual is meaningful
  double far_rel = 0.0, far_abs = 0.0;
  for (int i = 0; i < 20; ++i) {
    const Complex z = from_zeta(1.2 + s.uniform_open(), 2 * M_PI * s.uniform_open());
    far_rel = std::max(far_rel, grushin_residual(z, spec, true));
    far_abs = std::max(far_abs, grushin_residual(z, spec, false));
  }
  return {worst <= 1e-10 && far_rel <= 1e-10,
          fmt("||calP calE - I||/||calP|| max %.3g over interior/on-curve/near-exterior; far exterior relative %.3g "
              "(absolute %.3g, not attainable)",
              worst, far_rel, far_abs)};
}

Outcome c4_resolvent_kernel() {
  RngStream s(4, 0);
  double worst_entry = 0.0;
  const OperatorSpec spec30(30, kP);
  const Matrix p30 = build_P(spec30);
  for (int i = 0; i < 50; ++i) {
    const Complex z = from_zeta(1.0 + 1e-3 + 2.0 * s.uniform_open(), 2 * M_PI * s.uniform_open());
    const Matrix direct = solve(p30 - z * Matrix::Identity(30, 30), Matrix::Identity(30, 30));
    const double err = (resolvent_kernel_matrix(z, spec30) - direct).cwiseAbs().maxCoeff() / spectral_norm(direct);
    worst_entry = std::max(worst_entry, err);
  }
  double worst_ratio = INFINITY;
  for (int i = 0; i < 1000; ++i) {
    const int n = 1 + static_cast<int>(s.uniform_open() * 200);
    const OperatorSpec spec(n, kP);
    const Complex z = from_zeta(1.0 + 1e-3 + 2.0 * s.uniform_open(), 2 * M_PI * s.uniform_open());
    const double actual = 1.0 / min_singular_value(build_P(spec) - z * Matrix::Identity(n, n));
    worst_ratio = std::min(worst_ratio, resolvent_norm_bound_exterior(z, spec) / actual);
  }
  return {worst_entry <= 1e-8 && worst_ratio >= 1.0,
          fmt("kernel entry err %.3g x ||R|| (<= 1e-8); min bound/actual %.4f over 1000 samples", worst_entry,
              worst_ratio)};
}

Outcome c5_norm_bounds() {
  RngStream s(5, 0);
  const double g1 = std::abs(kP.a()) + std::abs(kP.b());
  double worst_E = 0.0, worst_pm = 0.0, worst_mp = 0.0;
  bool mirror_exact = true;
  for (int n : {50, 200}) {
    const OperatorSpec spec(n, kP);
    int done = 0;
    while (done < 1000) {
      const Complex z(g1 * (2 * s.uniform_open() - 1), g1 * (2 * s.uniform_open() - 1));
      if (!inside_E1(z, kP)) continue;
      const GrushinInverse g = grushin_inverse_closed_form(z, spec);
      const InteriorNormBounds b = norm_bounds_interior(z, spec);
      worst_E = std::max(worst_E, spectral_norm(g.E) / b.bound_E);
      worst_pm = std::max({worst_pm, g.E_plus.norm() / b.bound_Epm, g.E_minus.norm() / b.bound_Epm});
      worst_mp = std::max(worst_mp, std::abs(g.E_mp) / b.bound_Emp);
      mirror_exact = mirror_exact && (g.E_minus.reverse() == g.E_plus);
      ++done;
    }
  }
  const bool ok = worst_E <= 1.0 && worst_pm <= 1.0 && worst_mp <= 1.0 + 1e-12 && mirror_exact;
  return {ok, fmt("max measured/bound: E %.3f, E_pm %.3f, E_mp %.3f; E_- = reversed E_+ bitwise: ", worst_E, worst_pm,
                  worst_mp) +
                  (mirror_exact ? "yes" : "no")};
}

Outcome c6_expansion_order() {
  const OperatorSpec spec(100, kP);
  std::vector<double> full, half;
  for (int t = 0; t < 50; ++t) {
    RngStream s(6, t);
    const Matrix q = sample_Q(100, s);
    full.push_back(std::abs(E_mp_exact(0.0, q, 1e-6, spec) - E_mp_first_order(0.0, q, 1e-6, spec)));
    half.push_back(std::abs(E_mp_exact(0.0, q, 5e-7, spec) - E_mp_first_order(0.0, q, 5e-7, spec)));
  }
  std::nth_element(full.begin(), full.begin() + 25, full.end());
  std::nth_element(half.begin(), half.begin() + 25, half.end());
  std::nth_element(full.begin(), full.begin() + 24, full.begin() + 25);
  std::nth_element(half.begin(), half.begin() + 24, half.begin() + 25);
  const double ratio = (full[24] + full[25]) / (half[24] + half[25]);
  return {ratio >= 3.0 && ratio <= 5.0, fmt("median remainder ratio %.4f (in [3, 5])", ratio)};
}

Outcome c7_large_ensemble() {
  PerturbationConfig cfg{OperatorSpec(500, kP)};
  cfg.delta = 1e-5;
  cfg.master_seed = 7;
  cfg.trials = 20;
  cfg.jobs = 0;
  int min_near = 500, max_stray = 0;
  for (const TrialResult& tr : run_trials(cfg)) {
    int near = 0;
    for (Complex l : tr.eigenvalues) near += dist_to_E1(l, kP).distance <= 0.1 ? 1 : 0;
    min_near = std::min(min_near, near);
    max_stray = std::max(max_stray, stray_count(tr.eigenvalues, 0.3, kP).total());
  }
  return {min_near >= 440 && max_stray <= 60,
          fmt("min within 0.1 of E_1: %.0f (>= 440); max at distance > 0.3: %.0f (<= 60)", min_near, max_stray)};
}

Outcome c8_weyl_law() {
  const int n = 300;
  PerturbationConfig cfg{OperatorSpec(n, kP)};
  cfg.kappa = 2.6;
  cfg.delta = std::pow(double(n), -2.6);
  cfg.master_seed = 8;
  cfg.trials = 100;
  cfg.jobs = 0;
  ArcRegion quarter;
  quarter.xi_lo = 0.0;
  quarter.xi_hi = M_PI / 2;
  quarter.r = 0.15;
  const CountReport rep = count_experiment_mc(cfg, quarter);
  const int passing = static_cast<int>(std::lround(rep.pass_fraction * rep.trials));
  return {passing >= 95, fmt("%.0f/100 trials within %.2f of %.1f (mean count %.2f)", passing, rep.bound_rhs,
                             rep.theoretical, rep.mean)};
}

Outcome c9_lemma() {
  const int n = 40;
  PerturbationConfig cfg{OperatorSpec(n, kP)};
  cfg.delta = std::pow(double(n), -3.0);
  cfg.master_seed = 9;
  cfg.trials = 2000;
  cfg.jobs = 0;
  const double scale = cfg.delta * Z_vector(0.0, cfg.spec, true).hs_norm;
  bool ok = true;
  std::string detail;
  for (double m : {0.5, 1.0, 2.0}) {
    const SmallCornerResult r = small_corner_mc(0.0, cfg, m * scale);
    ok = ok && !r.skipped && r.holds;
    detail += fmt("t=%.1f: emp %.4f, CP lower %.4f, bound %.4f; ", m, r.empirical_prob, r.interval.lower, r.bound);
  }
  detail += fmt("slack F_N N delta = %.3g", F_geom(n, std::abs(char_roots_I(0.0, kP).zeta_minus)) * n * cfg.delta);
  return {ok, detail};
}

Outcome c10_numerical_range() {
  const Complex c = 2.0 * sqrt_ab(kP);
  const double g1 = std::abs(kP.a()) + std::abs(kP.b());
  double excess = -INFINITY;
  const auto pts = numerical_range_boundary(OperatorSpec(100, kP), 256);
  for (Complex p : pts) excess = std::max(excess, std::abs(p - c) + std::abs(p + c) - 2 * g1);
  double worst = 0.0;
  for (int n = 1; n <= 50; ++n) {
    for (Complex l : eig(build_P(OperatorSpec(n, SymbolParams(kP.a(), kP.b(), Case::II))))) {
      worst = std::max(worst, std::abs(l));
    }
  }
  return {pts.size() == 256 && excess <= 1e-6 && worst <= 1e-4,
          fmt("hull excess %.3g (<= 1e-6) over %.0f points; max |lambda(P_II)| %.3g (<= 1e-4)", excess,
              double(pts.size()), worst)};
}

Outcome c11_measure_identity() {
  RngStream s(11, 0);
  double worst = 0.0;
  for (int i = 0; i < 10; ++i) {
    ArcRegion g;
    g.xi_lo = 2 * M_PI * s.uniform_open();
    g.xi_hi = g.xi_lo + 2 * M_PI * s.uniform_open();
    worst = std::max(worst, std::abs(delta_phi_arc_identity(g, kP, 4096) - g.length()));
  }
  return {worst <= 1e-3, fmt("max |flux - arc length| %.3g (<= 1e-3)", worst)};
}

struct Criterion {
  int id;
  const char* name;
  double time_limit;  // seconds, 0 = none
  std::function<Outcome()> run;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "closed-form spectrum", 30, c1_closed_form_spectrum},
      {2, "determinant triple identity", 10, c2_determinant_triple},
      {3, "Grushin inverse", 20, c3_grushin_inverse},
      {4, "resolvent kernel and exterior bound", 0, c4_resolvent_kernel},
      {5, "interior norm bounds", 0, c5_norm_bounds},
      {6, "perturbation expansion order", 60, c6_expansion_order},
      {7, "N=500 ensemble near E_1", 900, c7_large_ensemble},
      {8, "probabilistic Weyl law", 1200, c8_weyl_law},
      {9, "small-|E_mp| probability bound", 300, c9_lemma},
      {10, "numerical range and P_II spectrum", 0, c10_numerical_range},
      {11, "length-measure identity", 0, c11_measure_identity},
  };
  int failures = 0;
  for (const Criterion& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = c.time_limit <= 0 || secs <= c.time_limit;
    const bool pass = o.pass && in_time;
    failures += pass ? 0 : 1;
    std::printf("%s  criterion %2d  %-36s %s [%.1f s%s]\n", pass ? "PASS" : "FAIL", c.id, c.name, o.detail.c_str(), secs,
                c.time_limit > 0 ? fmt(" / %.0f s", c.time_limit).c_str() : "");
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
