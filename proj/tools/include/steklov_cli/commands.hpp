#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "steklov_cli/config.hpp"
#include "steklov_cli/output.hpp"

namespace steklov::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitNumerical = 3;
inline constexpr int kExitVerification = 4;

// Command-line flags that take precedence over the config file.
struct Overrides {
  std::optional<std::string> out_json;
  std::optional<std::string> out_csv;
  std::optional<int> jobs;
  std::optional<std::uint64_t> seed;
};

RunConfig apply_overrides(RunConfig config, const Overrides& overrides);

struct CommandOutput {
  int exit_code = kExitOk;
  Json json;
  std::string csv;
};

// Each command computes its payload without touching the filesystem.
// Invalid configuration throws (ConfigError, InvalidArgument, NotApplicable);
// numerical breakdown throws NumericalError.
CommandOutput cmd_ball_spectrum(const RunConfig& config);
CommandOutput cmd_spectrum(const RunConfig& config);
CommandOutput cmd_verify(const RunConfig& config);
CommandOutput cmd_sweep(const RunConfig& config);

// Dispatches by subcommand name, writes the outputs named in the config (JSON
// to stdout when no JSON path is set) and maps exceptions to exit codes.
int run_command(std::string_view name, const RunConfig& config);

}  // namespace steklov::cli
