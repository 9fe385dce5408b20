#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace toeplitz::cli {

/// Every flag of every subcommand. Field names match the long flag names and
/// the keys of the config file.
struct RunOptions {
  std::string case_name = "I";
  int n = 50;
  std::string a = "1+1i";
  std::string b = "0.5";
  std::optional<double> delta;
  std::optional<double> kappa;
  std::optional<std::uint64_t> seed;
  int trials = 100;
  std::string out = ".";
  int jobs = 1;
  // count
  double xi_lo = 0.0;
  double xi_hi = 6.283185307179586;
  double r = 0.3;
  std::string mode = "pi_projection";
  bool no_gates = false;
  // symbol
  int samples = 1024;
  std::vector<std::string> overlay_a;
  // range
  int angles = 256;
  // grushin
  std::vector<std::string> probe;
};

/// Exit codes.
enum ExitCode { kOk = 0, kUsage = 1, kNumeric = 2, kGate = 3 };

/// Flat key = value rendering of the resolved options, readable by --config.
std::string options_config_text(const std::string& command, const RunOptions& opts, std::uint64_t seed);

void cmd_spectrum(const RunOptions& opts, std::ostream& log);
void cmd_symbol(const RunOptions& opts, std::ostream& log);
void cmd_count(const RunOptions& opts, std::ostream& log);
void cmd_range(const RunOptions& opts, std::ostream& log);
void cmd_grushin(const RunOptions& opts, std::ostream& log);

/// Dispatches a subcommand and maps exceptions to exit codes, reporting the
/// message on err.
int run_command(const std::string& command, const RunOptions& opts, std::ostream& log, std::ostream& err);

}  // namespace toeplitz::cli
