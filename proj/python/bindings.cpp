#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "toeplitz/counting.hpp"
#include "toeplitz/geom_series.hpp"

namespace py = pybind11;
using namespace toeplitz;

namespace {

Case case_from(const std::string& name) {
  if (name == "I") return Case::I;
  if (name == "II") return Case::II;
  throw std::invalid_argument("case must be 'I' or 'II', got '" + name + "'");
}

OperatorSpec make_spec(int n, Complex a, Complex b, const std::string& case_name) {
  return OperatorSpec(n, SymbolParams(a, b, case_from(case_name)));
}

PerturbationConfig make_config(const OperatorSpec& spec, std::optional<double> delta, std::optional<double> kappa,
                               std::uint64_t seed, int trials, int jobs) {
  PerturbationConfig c(spec);
  c.kappa = kappa;
  if (delta) {
    c.delta = *delta;
  } else if (kappa) {
    c.delta = std::pow(static_cast<double>(spec.n), -*kappa);
  }
  c.master_seed = seed;
  c.trials = trials;
  c.jobs = jobs;
  return c;
}

ArcRegion make_arc(double xi_lo, double xi_hi, double r, const std::string& mode) {
  ArcRegion g;
  g.xi_lo = xi_lo;
  g.xi_hi = xi_hi;
  g.r = r;
  g.mode = membership_mode_from_string(mode);
  g.validate();
  return g;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Spectra of bidiagonal Toeplitz matrices and their Gaussian perturbations";

  py::register_exception<RegimeError>(m, "RegimeError", PyExc_ValueError);
  py::register_exception<GateError>(m, "GateError", PyExc_ValueError);
  py::register_exception<NumericError>(m, "NumericError", PyExc_ArithmeticError);

  py::class_<SymbolParams>(m, "SymbolParams")
      .def(py::init([](Complex a, Complex b, const std::string& c) { return SymbolParams(a, b, case_from(c)); }),
           py::arg("a"), py::arg("b"), py::arg("case") = "I")
      .def_property_readonly("a", &SymbolParams::a)
      .def_property_readonly("b", &SymbolParams::b)
      .def_property_readonly("case", [](const SymbolParams& p) { return p.case_tag() == Case::I ? "I" : "II"; })
      .def("__repr__", [](const SymbolParams& p) {
        return "SymbolParams(a=" + py::repr(py::cast(p.a())).cast<std::string>() +
               ", b=" + py::repr(py::cast(p.b())).cast<std::string>() + ", case='" +
               (p.case_tag() == Case::I ? "I" : "II") + "')";
      });

  py::class_<OperatorSpec>(m, "OperatorSpec")
      .def(py::init(&make_spec), py::arg("n"), py::arg("a"), py::arg("b"), py::arg("case") = "I")
      .def_readonly("n", &OperatorSpec::n)
      .def_readonly("params", &OperatorSpec::params);

  py::class_<CharRoots>(m, "CharRoots")
      .def_readonly("zeta_plus", &CharRoots::zeta_plus)
      .def_readonly("zeta_minus", &CharRoots::zeta_minus)
      .def_readonly("is_double", &CharRoots::is_double);

  m.def("symbol", [](double xi, const SymbolParams& p) {
    return p.case_tag() == Case::I ? symbol_I(xi, p) : symbol_II(xi, p);
  }, py::arg("xi"), py::arg("params"));
  m.def("symbol_curve", &symbol_curve, py::arg("params"), py::arg("samples"));
  m.def("char_roots", [](Complex z, const SymbolParams& p) {
    return p.case_tag() == Case::I ? char_roots_I(z, p) : char_roots_II(z, p);
  }, py::arg("z"), py::arg("params"));
  m.def("classify", [](Complex z, const SymbolParams& p) {
    return std::string(p.case_tag() == Case::I ? to_string(classify_I(z, p)) : to_string(classify_II(z, p)));
  }, py::arg("z"), py::arg("params"));
  m.def("dist_to_E1", [](Complex z, const SymbolParams& p) {
    const CurveDistance d = dist_to_E1(z, p);
    return py::make_tuple(d.distance, d.xi_star);
  }, py::arg("z"), py::arg("params"), "Distance from z to the symbol ellipse and the minimising angle.");
  m.def("inside_E1", &inside_E1, py::arg("z"), py::arg("params"));

  m.def("build_P", &build_P, py::arg("spec"));
  m.def("eig", &eig, py::arg("matrix"));
  m.def("exact_spectrum", &exact_spectrum_I, py::arg("spec"));
  m.def("det_closed_form", &det_closed_form, py::arg("z"), py::arg("spec"));
  m.def("log_abs_det", &log_abs_det, py::arg("matrix"));
  m.def("numerical_range_boundary",
        py::overload_cast<const OperatorSpec&, int>(&numerical_range_boundary), py::arg("spec"),
        py::arg("n_angles") = 256);
  m.def("F_geom", py::overload_cast<int, Complex>(&F_geom), py::arg("k"), py::arg("t"));

  m.def("build_calP", &build_calP, py::arg("z"), py::arg("spec"));
  m.def("grushin_inverse", [](Complex z, const OperatorSpec& spec) {
    const GrushinInverse g = grushin_inverse_closed_form(z, spec);
    py::dict d;
    d["E"] = g.E;
    d["E_plus"] = g.E_plus;
    d["E_minus"] = g.E_minus;
    d["E_mp"] = g.E_mp;
    return d;
  }, py::arg("z"), py::arg("spec"), "Closed-form blocks of the bordered inverse.");
  m.def("E_mp", &E_mp_closed_form, py::arg("z"), py::arg("spec"));
  m.def("resolvent_kernel_matrix", &resolvent_kernel_matrix, py::arg("z"), py::arg("spec"));
  m.def("resolvent_norm_bound_exterior", &resolvent_norm_bound_exterior, py::arg("z"), py::arg("spec"));

  m.def("sample_Q", [](int n, std::uint64_t seed, std::uint64_t stream) {
    RngStream s(seed, stream);
    return sample_Q(n, s);
  }, py::arg("n"), py::arg("seed"), py::arg("stream") = 0);
  m.def("E_mp_exact", &E_mp_exact, py::arg("z"), py::arg("Q"), py::arg("delta"), py::arg("spec"));
  m.def("E_mp_first_order", &E_mp_first_order, py::arg("z"), py::arg("Q"), py::arg("delta"), py::arg("spec"));

  m.def("perturbed_spectra", [](const OperatorSpec& spec, std::optional<double> delta, std::optional<double> kappa,
                                std::uint64_t seed, int trials, int jobs) {
    const PerturbationConfig cfg = make_config(spec, delta, kappa, seed, trials, jobs);
    std::vector<std::vector<Complex>> out;
    {
      py::gil_scoped_release release;
      for (TrialResult& t : run_trials(cfg)) out.push_back(std::move(t.eigenvalues));
    }
    return out;
  }, py::arg("spec"), py::arg("delta") = py::none(), py::arg("kappa") = py::none(), py::arg("seed") = 0,
     py::arg("trials") = 1, py::arg("jobs") = 1, "Eigenvalues of P + delta Q for each seeded trial.");

  m.def("lemma_mc", [](Complex z, const OperatorSpec& spec, double delta, double t, std::uint64_t seed, int trials) {
    const PerturbationConfig cfg = make_config(spec, delta, std::nullopt, seed, trials, 1);
    SmallCornerResult r;
    {
      py::gil_scoped_release release;
      r = small_corner_mc(z, cfg, t);
    }
    py::dict d;
    d["skipped"] = r.skipped;
    d["skip_reason"] = r.skip_reason;
    d["empirical_prob"] = r.empirical_prob;
    d["ci_lower"] = r.interval.lower;
    d["ci_upper"] = r.interval.upper;
    d["bound"] = r.bound;
    d["slack"] = r.slack;
    d["Z_norm"] = r.Z_norm;
    d["holds"] = r.holds;
    return d;
  }, py::arg("z"), py::arg("spec"), py::arg("delta"), py::arg("t"), py::arg("seed") = 0, py::arg("trials") = 1000);

  m.def("weyl_count", [](double xi_lo, double xi_hi, int n) { return weyl_count(make_arc(xi_lo, xi_hi, 0.1, "pi_projection"), n); },
        py::arg("xi_lo"), py::arg("xi_hi"), py::arg("n"));
  m.def("gamma_membership", [](Complex z, const SymbolParams& p, double xi_lo, double xi_hi, double r,
                               const std::string& mode) {
    return gamma_membership(z, make_arc(xi_lo, xi_hi, r, mode), p);
  }, py::arg("z"), py::arg("params"), py::arg("xi_lo"), py::arg("xi_hi"), py::arg("r"),
     py::arg("mode") = "pi_projection");
  m.def("delta_phi_arc_identity", [](const SymbolParams& p, double xi_lo, double xi_hi, int mesh) {
    return delta_phi_arc_identity(make_arc(xi_lo, xi_hi, 0.1, "pi_projection"), p, mesh);
  }, py::arg("params"), py::arg("xi_lo"), py::arg("xi_hi"), py::arg("mesh") = 4096);

  m.def("count_experiment", [](const OperatorSpec& spec, double kappa, double xi_lo, double xi_hi, double r,
                               std::uint64_t seed, int trials, bool enforce_gates, const std::string& mode) {
    const PerturbationConfig cfg = make_config(spec, std::nullopt, kappa, seed, trials, 1);
    const ArcRegion g = make_arc(xi_lo, xi_hi, r, mode);
    CountReport rep;
    {
      py::gil_scoped_release release;
      rep = count_experiment_mc(cfg, g, enforce_gates);
    }
    py::dict d;
    d["theoretical"] = rep.theoretical;
    d["per_trial"] = rep.per_trial;
    d["mean"] = rep.mean;
    d["std"] = rep.stddev;
    d["bound_rhs"] = rep.bound_rhs;
    d["pass_fraction"] = rep.pass_fraction;
    d["stray_per_trial"] = rep.stray_per_trial;
    d["theorem_regime"] = rep.theorem_regime;
    d["violations"] = rep.violations;
    return d;
  }, py::arg("spec"), py::arg("kappa"), py::arg("xi_lo"), py::arg("xi_hi"), py::arg("r"), py::arg("seed") = 0,
     py::arg("trials") = 100, py::arg("enforce_gates") = true, py::arg("mode") = "pi_projection");
}
