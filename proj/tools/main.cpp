#include <iostream>

#include "CLI11.hpp"
#include "commands.hpp"

int main(int argc, char** argv) {
  using toeplitz::cli::RunOptions;
  RunOptions opts;
  CLI::App app{"Spectra of bidiagonal Toeplitz matrices and their random perturbations"};
  app.require_subcommand(1);
  app.set_config("--config", "", "Flat key = value file; flags override file values");

  app.add_option("--case", opts.case_name, "Model: I (a above, b below the diagonal) or II (a, b on two super-diagonals)")
      ->check(CLI::IsMember({"I", "II"}));
  app.add_option("-N,--N", opts.n, "Matrix size")->check(CLI::PositiveNumber);
  app.add_option("-a,--a", opts.a, "Complex coefficient a, syntax re+imi");
  app.add_option("-b,--b", opts.b, "Complex coefficient b, syntax re+imi");
  app.add_option("--delta", opts.delta, "Perturbation strength (default N^-kappa if --kappa is given, else 0)");
  app.add_option("--kappa", opts.kappa, "Exponent in delta = N^-kappa");
  app.add_option("--seed", opts.seed, "Master seed (fallback: TOEPLITZ_SPECTRA_SEED, then 0)");
  app.add_option("--trials", opts.trials, "Monte Carlo trials");
  app.add_option("--out", opts.out, "Output directory");
  app.add_option("--jobs", opts.jobs, "Concurrent trials (0 = all cores)");
  app.add_option("--xi-lo,--xi_lo", opts.xi_lo, "Arc start angle");
  app.add_option("--xi-hi,--xi_hi", opts.xi_hi, "Arc end angle");
  app.add_option("--r", opts.r, "Arc neighbourhood width");
  app.add_option("--mode", opts.mode, "Arc membership: pi_projection or distance_equality")
      ->check(CLI::IsMember({"pi_projection", "distance_equality"}));
  app.add_flag("--no-gates,--no_gates", opts.no_gates, "Run outside the theorem hypotheses instead of failing");
  app.add_option("--samples", opts.samples, "Points on the symbol curve");
  app.add_option("--overlay-a,--overlay_a", opts.overlay_a, "Extra values of a drawn on the same symbol plot");
  app.add_option("--angles", opts.angles, "Supporting directions for the numerical range");
  app.add_option("--probe", opts.probe, "Probe points z for the grushin report");

  std::string command;
  for (const char* name : {"spectrum", "symbol", "count", "range", "grushin"}) {
    auto* sub = app.add_subcommand(name);
    sub->fallthrough();
    sub->callback([&command, name] { command = name; });
  }
  app.get_subcommand("spectrum")->description("Eigenvalues of P or P + delta Q, with an SVG against the symbol curve");
  app.get_subcommand("symbol")->description("Image of the unit circle under the symbol");
  app.get_subcommand("count")->description("Monte Carlo eigenvalue counts near an arc of the ellipse");
  app.get_subcommand("range")->description("Boundary of the numerical range");
  app.get_subcommand("grushin")->description("Grushin-problem diagnostics at probe points");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : toeplitz::cli::kUsage;
  }
  return toeplitz::cli::run_command(command, opts, std::cout, std::cerr);
}
