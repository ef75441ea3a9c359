#pragma once

#include "coderiv/amz.hpp"
#include "coderiv/covering.hpp"
#include "coderiv/types.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace coderiv::cli {

enum class Command { kVerifyJacobians, kProbeOrigin, kCovering, kIdentities, kSolve, kSweep };
enum class Format { kJson, kCsv };

std::string_view to_string(Command command);

/// Bad command line. `exit_code` is 2 for usage errors and 0 for --help.
class UsageError : public std::runtime_error {
 public:
  UsageError(const std::string& what, int exit_code, std::string message = {})
      : std::runtime_error(what), exit_code_(exit_code), message_(std::move(message)) {}
  int exit_code() const { return exit_code_; }
  /// Text CLI11 prepared for the user (help screen or error).
  const std::string& message() const { return message_; }

 private:
  int exit_code_;
  std::string message_;
};

struct RunConfig {
  Command command = Command::kCovering;
  MapId map = MapId::F2;
  std::vector<VecX> points;
  std::uint64_t seed = 0;

  std::vector<double> etas = default_etas();
  int y_samples = 512;
  int z_samples = 64;
  int count = 0;  // random points or centers; 0 picks the command default
  CoveringMethod method = CoveringMethod::kSpectral;
  double fd_step = 1e-5;
  std::optional<double> tol;

  std::string scenario_path;
  std::optional<Scenario> scenario;
  double s = 0.0;
  std::vector<double> s_grid;
  std::optional<double> alpha;

  std::string output;  // empty: standard output
  Format format = Format::kJson;
};

/// argv[0] is the program name. Throws UsageError.
RunConfig parse_args(const std::vector<std::string>& argv);

/// Runs the selected suite. 0 when every check passes, 1 on a failed check,
/// 3 on runtime or I/O errors (diagnostic written to `err`). Reports go to
/// config.output, or `out` when no output path is set.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// parse_args + run with exit-code mapping; the body of main.
int main_entry(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err);

}  // namespace coderiv::cli
