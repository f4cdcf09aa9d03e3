#pragma once

#include <optional>
#include <string>

#include "ghostpin/config.hpp"
#include "ghostpin/errors.hpp"

namespace ghostpin {

/// Command-line overrides applied on top of a parsed config.
struct CommandOptions {
  std::string out_dir;  // empty = take the config's output.dir
  int threads = 0;      // 0 = take the config's run.threads
  std::optional<PropagationMode> mode;
  std::optional<PmModel> pm;
};

/// Each command runs one experiment and writes its data files plus
/// ".meta.json" sidecars into the output directory. Errors surface as
/// ghostpin::Error; the CLI maps them to exit codes.
void cmd_jsp(const RunConfig& config, const CommandOptions& options);
void cmd_ghost(const RunConfig& config, const CommandOptions& options);
void cmd_analytic(const RunConfig& config, const CommandOptions& options);
void cmd_sweep(const RunConfig& config, const CommandOptions& options);
void cmd_optimize(const RunConfig& config, const CommandOptions& options);

/// Reruns the built-in double-slit / design-curve / resolution-and-modes
/// parameter sets ("fig2", "fig3", "fig4") and writes a checks file with
/// one pass/fail line per built-in expectation.
void cmd_reproduce(const std::string& figure, const CommandOptions& options);

/// True when the error should map to a configuration exit (code 2) rather
/// than a numerical one (code 3).
bool is_config_error(ErrorCode code) noexcept;

}  // namespace ghostpin
