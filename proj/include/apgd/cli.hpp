#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include "apgd/core.hpp"

namespace apgd::cli {

enum class Command { Example1, Example2, Example3, Example4, FeatSel, LogReg, RateCheck };
enum class Solver { Gda, Gd, Sgda, Nesterov };

std::optional<Command> parse_command(const std::string& name);
std::optional<Solver> parse_solver(const std::string& name);
const char* to_string(Command c);
const char* to_string(Solver s);

struct RunSpec {
  Command command = Command::Example1;
  Solver solver = Solver::Gda;
  std::optional<double> lambda0;
  std::optional<double> sigma;
  std::optional<double> kappa;
  std::optional<std::size_t> max_iter;
  std::optional<double> step_tol;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> n;
  std::optional<double> delta;
  std::string dataset_path;
  std::string output_path;    // trace file; derived from command/solver when empty
  std::string format = "csv"; // trace format: csv | json
};

// Executes the run, writes the trace file, prints a one-line summary
// (f*, #Iter, Time, stationarity). Returns the process exit code:
// 0 success, 2 solver numeric failure, 3 I/O or parse failure.
int run(const RunSpec& spec, std::ostream& out, std::ostream& err);

// default output directory honoring APGD_OUTPUT_DIR
std::string default_output_dir();

} // namespace apgd::cli
