#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace eltsim::cli {

enum ExitCode : int {
  kOk = 0,
  kUsage = 1,
  kConfigError = 2,
  kVerifyFailed = 3,
  kIoError = 4,
};

struct GlobalOptions {
  std::string config_path;  // empty: built-in rubidium parameter set
  std::string out_path;     // empty: write to stdout, no manifest
  std::optional<double> grid_min;
  std::optional<double> grid_max;
  std::optional<std::size_t> grid_points;
  bool raw = false;
  double tolerance = 1e-6;
  std::vector<std::string> argv;  // echoed into the manifest
};

// Each command writes its primary output to `out_path` (or `out`) and
// diagnostics to `err`, and returns an ExitCode.

/// Branches: elt, ground, full, fringes, antifringes.
int cmdIntensity(const GlobalOptions& options, std::string_view branch,
                 std::ostream& out, std::ostream& err);

/// `corrupt` names a z-table entry to perturb by 1e-3 (fault injection);
/// empty for a normal run. points == 1 evaluates at x = 0 only.
int cmdVerify(const GlobalOptions& options, std::size_t points,
              std::string_view corrupt, std::ostream& out, std::ostream& err);

/// Measurements: bell, internal, none.
int cmdStates(const GlobalOptions& options, std::string_view measurement,
              std::ostream& out, std::ostream& err);

/// Parameters: sigma0, beta, d, t, tau.
int cmdSweep(const GlobalOptions& options, std::string_view parameter,
             double min, double max, std::size_t steps, std::ostream& out,
             std::ostream& err);

/// Parses `args` (without the program name) and dispatches.
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

}  // namespace eltsim::cli
