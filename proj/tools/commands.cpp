#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <sstream>

#include "json.hpp"

#include "cli_support.hpp"
#include "toeplitz/counting.hpp"
#include "toeplitz/grushin.hpp"
#include "toeplitz/operator.hpp"
#include "toeplitz/perturbation.hpp"

namespace toeplitz::cli {

using ordered_json = nlohmann::ordered_json;

namespace {

Case parse_case(const std::string& name) {
  if (name == "I") return Case::I;
  if (name == "II") return Case::II;
  throw std::invalid_argument("--case must be I or II, got '" + name + "'");
}

OperatorSpec make_spec(const RunOptions& opts) {
  if (opts.n < 1) throw std::invalid_argument("-N must be >= 1");
  return OperatorSpec(opts.n, SymbolParams(parse_complex(opts.a), parse_complex(opts.b), parse_case(opts.case_name)));
}

double resolve_delta(const RunOptions& opts) {
  double delta = 0.0;
  if (opts.delta) {
    delta = *opts.delta;
  } else if (opts.kappa) {
    delta = std::pow(static_cast<double>(opts.n), -*opts.kappa);
  }
  if (!(delta >= 0.0) || !std::isfinite(delta)) throw std::invalid_argument("--delta must be finite and >= 0");
  return delta;
}

ordered_json complex_json(Complex z) { return ordered_json::array({z.real(), z.imag()}); }

ordered_json log_complex_json(const LogComplex& w) { return {{"log_abs", w.log_abs}, {"arg", w.arg}}; }

std::vector<std::vector<double>> complex_rows(const std::vector<Complex>& values) {
  std::vector<std::vector<double>> rows;
  rows.reserve(values.size());
  for (Complex z : values) rows.push_back({z.real(), z.imag()});
  return rows;
}

/// Collects artifacts of one run and writes manifest.json plus the config
/// needed to reproduce it.
class Artifacts {
 public:
  Artifacts(std::string command, const RunOptions& opts, std::uint64_t seed)
      : command_(std::move(command)), opts_(opts), seed_(seed), dir_(opts.out) {}

  void write(const std::string& name, const std::string& text) {
    files_.push_back({{"file", name}, {"fnv1a64", hex64(write_artifact(dir_, name, text))}});
  }

  void set_svg_transform(const SvgCanvas::Transform& t) {
    svg_ = {{"width", SvgCanvas::kSize},
            {"height", SvgCanvas::kSize},
            {"scale", t.scale},
            {"offset_x", t.offset_x},
            {"offset_y", t.offset_y},
            {"map", "x = offset_x + scale * re, y = offset_y - scale * im"}};
  }

  ordered_json& extras() { return extras_; }

  void finish(std::ostream& log) {
    write("run.cfg", options_config_text(command_, opts_, seed_));
    ordered_json manifest;
    manifest["command"] = command_;
    manifest["version"] = TOEPLITZ_SPECTRA_VERSION;
    manifest["seed"] = seed_;
    manifest["parameters"] = parameters();
    if (!svg_.is_null()) manifest["svg_transform"] = svg_;
    if (!extras_.is_null()) manifest["results"] = extras_;
    manifest["artifacts"] = files_;
    write_artifact(dir_, "manifest.json", manifest.dump(2) + "\n");
    log << "wrote " << files_.size() << " artifacts and manifest.json to " << dir_.string() << "\n";
  }

 private:
  ordered_json parameters() const {
    ordered_json p;
    p["case"] = opts_.case_name;
    p["N"] = opts_.n;
    p["a"] = opts_.a;
    p["b"] = opts_.b;
    p["delta"] = resolve_delta(opts_);
    p["kappa"] = opts_.kappa ? ordered_json(*opts_.kappa) : ordered_json(nullptr);
    p["trials"] = opts_.trials;
    p["jobs"] = opts_.jobs;
    p["xi_lo"] = opts_.xi_lo;
    p["xi_hi"] = opts_.xi_hi;
    p["r"] = opts_.r;
    p["mode"] = opts_.mode;
    p["no_gates"] = opts_.no_gates;
    p["samples"] = opts_.samples;
    p["overlay_a"] = opts_.overlay_a;
    p["angles"] = opts_.angles;
    p["probe"] = opts_.probe;
    return p;
  }

  std::string command_;
  RunOptions opts_;
  std::uint64_t seed_;
  std::filesystem::path dir_;
  ordered_json files_ = ordered_json::array();
  ordered_json svg_;
  ordered_json extras_;
};

const char* kPalette[] = {"#c0392b", "#2471a3", "#1e8449", "#7d3c98", "#b9770e"};

}  // namespace

std::string options_config_text(const std::string& command, const RunOptions& opts, std::uint64_t seed) {
  std::ostringstream cfg;
  auto quoted = [](const std::string& s) { return "\"" + s + "\""; };
  auto list = [&](const std::vector<std::string>& items) {
    std::string out = "[";
    for (std::size_t k = 0; k < items.size(); ++k) out += (k ? ", " : "") + quoted(items[k]);
    return out + "]";
  };
  cfg << "# toeplitz_spectra " << command << "\n";
  cfg << "case = " << quoted(opts.case_name) << "\n";
  cfg << "N = " << opts.n << "\n";
  cfg << "a = " << quoted(opts.a) << "\n";
  cfg << "b = " << quoted(opts.b) << "\n";
  cfg << "delta = " << format_number(resolve_delta(opts)) << "\n";
  if (opts.kappa) cfg << "kappa = " << format_number(*opts.kappa) << "\n";
  cfg << "seed = " << seed << "\n";
  cfg << "trials = " << opts.trials << "\n";
  cfg << "out = " << quoted(opts.out) << "\n";
  cfg << "jobs = " << opts.jobs << "\n";
  cfg << "xi_lo = " << format_number(opts.xi_lo) << "\n";
  cfg << "xi_hi = " << format_number(opts.xi_hi) << "\n";
  cfg << "r = " << format_number(opts.r) << "\n";
  cfg << "mode = " << quoted(opts.mode) << "\n";
  cfg << "no_gates = " << (opts.no_gates ? "true" : "false") << "\n";
  cfg << "samples = " << opts.samples << "\n";
  if (!opts.overlay_a.empty()) cfg << "overlay_a = " << list(opts.overlay_a) << "\n";
  cfg << "angles = " << opts.angles << "\n";
  if (!opts.probe.empty()) cfg << "probe = " << list(opts.probe) << "\n";
  return cfg.str();
}

void cmd_spectrum(const RunOptions& opts, std::ostream& log) {
  const OperatorSpec spec = make_spec(opts);
  const double delta = resolve_delta(opts);
  const std::uint64_t seed = resolve_seed(opts.seed);

  Matrix p = build_P(spec);
  if (delta > 0.0) {
    RngStream stream(seed, 0);
    p += delta * sample_Q(spec.n, stream);
  }
  std::vector<Complex> spectrum = eig(p);
  auto by_re_im = [](Complex x, Complex y) {
    return x.real() != y.real() ? x.real() < y.real() : x.imag() < y.imag();
  };
  std::sort(spectrum.begin(), spectrum.end(), by_re_im);

  Artifacts art("spectrum", opts, seed);
  art.write("eigenvalues.csv", csv_text({"re", "im"}, complex_rows(spectrum)));
  if (delta == 0.0 && spec.params.case_tag() == Case::I) {
    std::vector<Complex> exact = exact_spectrum_I(spec);
    std::sort(exact.begin(), exact.end(), by_re_im);
    art.write("closed_form.csv", csv_text({"re", "im"}, complex_rows(exact)));
  }

  SvgCanvas canvas;
  canvas.add_polyline(symbol_curve(spec.params, 1024), kPalette[0]);
  canvas.add_points(spectrum, "#1a1a1a");
  art.set_svg_transform(canvas.transform());
  std::ostringstream title;
  title << "spectrum of P_" << opts.case_name << ", N=" << spec.n << ", a=" << opts.a << ", b=" << opts.b
        << ", delta=" << format_number(delta);
  art.write("spectrum.svg", canvas.render(title.str()));
  art.finish(log);
  log << spectrum.size() << " eigenvalues\n";
}

void cmd_symbol(const RunOptions& opts, std::ostream& log) {
  if (opts.samples < 16) throw std::invalid_argument("--samples must be >= 16");
  const OperatorSpec spec = make_spec(opts);
  const std::uint64_t seed = resolve_seed(opts.seed);
  Artifacts art("symbol", opts, seed);
  SvgCanvas canvas;

  std::vector<SymbolParams> sets{spec.params};
  for (const auto& extra : opts.overlay_a) sets.emplace_back(parse_complex(extra), spec.params.b(), spec.params.case_tag());

  for (std::size_t k = 0; k < sets.size(); ++k) {
    const SymbolParams& p = sets[k];
    const std::vector<Complex> curve = symbol_curve(p, opts.samples);
    std::vector<std::vector<double>> rows;
    rows.reserve(curve.size());
    for (int i = 0; i < opts.samples; ++i) {
      rows.push_back({2.0 * M_PI * i / opts.samples, curve[i].real(), curve[i].imag()});
    }
    const std::string name = k == 0 ? "curve.csv" : "curve_overlay_" + std::to_string(k) + ".csv";
    art.write(name, csv_text({"xi", "re", "im"}, rows));
    const char* color = kPalette[k % 5];
    canvas.add_polyline(curve, color);
    if (p.case_tag() == Case::I) {
      const auto [f1, f2] = focal_points(p);
      canvas.add_polyline({f1, f2}, color, false);
      log << "curve " << k << ": ellipse, focal points +-" << format_complex(f1) << "\n";
    } else {
      const Case2Curve dec = case2_curve_decomposition(p, opts.samples);
      log << "curve " << k << ": case II regime " << to_string(dec.regime) << "\n";
      switch (dec.regime) {
        case Case2Regime::Simple:
          canvas.add_marker(dec.f_zeta_c, color, "f(zeta_c)");
          break;
        case Case2Regime::Cusp:
          canvas.add_marker(dec.f_zeta_c, color, "cusp");
          break;
        case Case2Regime::SelfIntersecting:
          canvas.add_marker(dec.self_intersection, color, "self-intersection");
          break;
      }
    }
  }
  art.set_svg_transform(canvas.transform());
  art.write("curve.svg", canvas.render("symbol curves, case " + opts.case_name));
  art.finish(log);
}

void cmd_count(const RunOptions& opts, std::ostream& log) {
  if (opts.trials < 1) throw std::invalid_argument("--trials must be >= 1");
  if (opts.jobs < 0) throw std::invalid_argument("--jobs must be >= 0");
  const OperatorSpec spec = make_spec(opts);
  spec.require_case_I("count");
  const std::uint64_t seed = resolve_seed(opts.seed);

  PerturbationConfig config(spec);
  config.delta = resolve_delta(opts);
  config.kappa = opts.kappa;
  config.master_seed = seed;
  config.trials = opts.trials;
  config.jobs = opts.jobs;
  const ArcRegion region{opts.xi_lo, opts.xi_hi, opts.r, membership_mode_from_string(opts.mode)};
  region.validate();

  const CountReport rep = count_experiment_mc(config, region, !opts.no_gates);

  ordered_json out;
  out["n"] = rep.n;
  out["a"] = complex_json(rep.a);
  out["b"] = complex_json(rep.b);
  out["delta"] = rep.delta;
  out["kappa"] = std::isfinite(rep.kappa) ? ordered_json(rep.kappa) : ordered_json(nullptr);
  out["seed"] = rep.seed;
  out["trials"] = rep.trials;
  out["arc"] = {{"xi_lo", region.xi_lo}, {"xi_hi", region.xi_hi}, {"r", region.r}, {"mode", std::string(to_string(region.mode))}};
  out["theoretical"] = rep.theoretical;
  out["per_trial"] = rep.per_trial;
  out["mean"] = rep.mean;
  out["std"] = rep.stddev;
  out["bound_rhs"] = rep.bound_rhs;
  out["pass_fraction"] = rep.pass_fraction;

  Artifacts art("count", opts, seed);
  art.write("count_report.json", out.dump(2) + "\n");
  art.extras() = {{"theorem_regime", rep.theorem_regime},
                  {"violations", rep.violations},
                  {"stray_per_trial", rep.stray_per_trial},
                  {"stray_bound", rep.stray_bound},
                  {"stray_pass_fraction", rep.stray_pass_fraction}};
  art.finish(log);
  log << "theoretical " << rep.theoretical << ", mean " << rep.mean << ", std " << rep.stddev << ", bound "
      << rep.bound_rhs << ", pass fraction " << rep.pass_fraction << "\n";
  if (!rep.theorem_regime) {
    log << "note: outside the theorem regime:";
    for (const auto& v : rep.violations) log << " " << v << ";";
    log << "\n";
  }
}

void cmd_range(const RunOptions& opts, std::ostream& log) {
  if (opts.angles < 3) throw std::invalid_argument("--angles must be >= 3");
  const OperatorSpec spec = make_spec(opts);
  const std::uint64_t seed = resolve_seed(opts.seed);
  const std::vector<Complex> boundary = numerical_range_boundary(spec, opts.angles);

  const Complex a = spec.params.a();
  const Complex b = spec.params.b();
  int outside = 0;
  std::string claim;
  if (spec.params.case_tag() == Case::I) {
    const Complex c = 2.0 * sqrt_ab(spec.params);
    const double limit = 2.0 * (std::abs(a) + std::abs(b)) + 1e-6;
    for (Complex p : boundary) outside += std::abs(p - c) + std::abs(p + c) <= limit ? 0 : 1;
    claim = "inside the convex hull of E_1";
  } else {
    const double limit = std::abs(a) + std::abs(b) + 1e-6;
    for (Complex p : boundary) outside += std::abs(p) <= limit ? 0 : 1;
    claim = "inside D(0, |a|+|b|)";
  }

  Artifacts art("range", opts, seed);
  art.write("range.csv", csv_text({"re", "im"}, complex_rows(boundary)));
  SvgCanvas canvas;
  canvas.add_polyline(symbol_curve(spec.params, 1024), kPalette[0]);
  canvas.add_polyline(boundary, kPalette[1]);
  canvas.add_points(boundary, kPalette[1], 1.2);
  art.set_svg_transform(canvas.transform());
  art.write("range.svg", canvas.render("numerical range of P_" + opts.case_name + ", N=" + std::to_string(spec.n)));
  art.extras() = {{"points", boundary.size()}, {"outside", outside}};
  art.finish(log);
  log << boundary.size() - outside << " of " << boundary.size() << " boundary points " << claim << ": "
      << (outside == 0 ? "yes" : "NO") << "\n";
  if (outside != 0) throw NumericError("numerical range boundary leaves the expected region");
}

void cmd_grushin(const RunOptions& opts, std::ostream& log) {
  const OperatorSpec spec = make_spec(opts);
  spec.require_case_I("grushin");
  const double delta = resolve_delta(opts);
  const std::uint64_t seed = resolve_seed(opts.seed);
  const int n = spec.n;

  std::vector<Complex> probes;
  for (const auto& text : opts.probe) probes.push_back(parse_complex(text));
  Matrix q;
  if (delta > 0.0) {
    RngStream stream(seed, 0);
    q = sample_Q(n, stream);
  }
  const Matrix p0 = build_P(spec);

  ordered_json records = ordered_json::array();
  int flagged = 0;
  for (Complex z : probes) {
    ordered_json rec;
    rec["z"] = complex_json(z);
    const bool focal = on_focal_segment(z, spec.params);
    rec["focal_segment"] = focal;
    try {
      const CharRoots roots = char_roots_I(z, spec.params);
      rec["region"] = std::string(to_string(classify_I(z, spec.params)));
      rec["abs_zeta_plus"] = std::abs(roots.zeta_plus);
      rec["abs_zeta_minus"] = std::abs(roots.zeta_minus);
      const GrushinInverse g = grushin_inverse_closed_form(z, spec);
      rec["E_mp"] = complex_json(g.E_mp);
      rec["det_closed_form"] = log_complex_json(det_closed_form_log(z, spec));
      rec["det_numeric"] = log_complex_json(log_det(p0 - z * Matrix::Identity(n, n)));
      if (std::abs(roots.zeta_minus) < 1.0) {
        const InteriorNormBounds nb = norm_bounds_interior(z, spec);
        rec["norms"] = {{"E", spectral_norm(g.E)},
                        {"E_plus", g.E_plus.norm()},
                        {"E_minus", g.E_minus.norm()},
                        {"E_mp", std::abs(g.E_mp)}};
        rec["bounds"] = {{"E", nb.bound_E}, {"E_pm", nb.bound_Epm}, {"E_mp", nb.bound_Emp}};
      } else {
        const double actual = 1.0 / min_singular_value(p0 - z * Matrix::Identity(n, n));
        const double bound = resolvent_norm_bound_exterior(z, spec);
        rec["resolvent_norm"] = actual;
        rec["resolvent_bound"] = bound;
        rec["bound_ratio"] = bound / actual;
      }
      if (delta > 0.0) {
        rec["E_mp_delta_exact"] = complex_json(E_mp_exact(z, q, delta, spec));
        rec["E_mp_delta_first_order"] = complex_json(E_mp_first_order(z, q, delta, spec));
      }
    } catch (const std::exception& e) {
      rec["error"] = e.what();
    }
    if (focal || rec.contains("error")) ++flagged;
    records.push_back(std::move(rec));
  }

  ordered_json report;
  report["n"] = n;
  report["a"] = complex_json(spec.params.a());
  report["b"] = complex_json(spec.params.b());
  report["delta"] = delta;
  report["seed"] = seed;
  report["records"] = records;

  Artifacts art("grushin", opts, seed);
  art.write("report.json", report.dump(2) + "\n");
  art.finish(log);
  log << probes.size() << " probes, " << flagged << " flagged\n";
}

int run_command(const std::string& command, const RunOptions& opts, std::ostream& log, std::ostream& err) {
  try {
    if (command == "spectrum") {
      cmd_spectrum(opts, log);
    } else if (command == "symbol") {
      cmd_symbol(opts, log);
    } else if (command == "count") {
      cmd_count(opts, log);
    } else if (command == "range") {
      cmd_range(opts, log);
    } else if (command == "grushin") {
      cmd_grushin(opts, log);
    } else {
      err << "unknown command '" << command << "'\n";
      return kUsage;
    }
  } catch (const GateError& e) {
    err << "gate violation: " << e.what() << "\n";
    return kGate;
  } catch (const NumericError& e) {
    err << "numeric failure: " << e.what() << "\n";
    return kNumeric;
  } catch (const RegimeError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::invalid_argument& e) {
    err << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::out_of_range& e) {
    err << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    err << "failure: " << e.what() << "\n";
    return kNumeric;
  }
  return kOk;
}

}  // namespace toeplitz::cli
