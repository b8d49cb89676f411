#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>

namespace sfhp::cli {

/// Process exit codes; stable for scripting.
enum ExitCode : int {
  kSuccess = 0,
  kCheckFailed = 1,    ///< IO failure, or a convergence / criticality check that did not pass
  kConfigError = 2,
  kNumericAbort = 3,
  kQuadratureFailure = 4,
};

struct CommandOptions {
  std::filesystem::path config;
  std::optional<std::filesystem::path> out;  ///< overrides output.dir
  std::optional<std::uint64_t> seed;         ///< overrides seed
  bool no_plots = false;
};

int cmd_simulate(const CommandOptions& options, std::ostream& out, std::ostream& err);
int cmd_ensemble(const CommandOptions& options, std::ostream& out, std::ostream& err);
int cmd_convergence(const CommandOptions& options, std::ostream& out, std::ostream& err);
int cmd_action_check(const CommandOptions& options, std::ostream& out, std::ostream& err);
int cmd_integral(const CommandOptions& options, std::ostream& out, std::ostream& err);

}  // namespace sfhp::cli
