#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "edgemarket/core/config.hpp"

namespace edgemarket::harness {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitIo = 3;
inline constexpr int kExitUsage = 64;

struct ExperimentSpec {
  Mechanism mechanism = Mechanism::evo;
  std::string action;  // run | sweep | compare | train | solve
  std::string config_path;
  std::optional<std::uint64_t> seed;  // overrides the config's seed
  std::optional<std::string> out_dir;  // overrides the config's output.dir
  bool svg = false;
  bool operator==(const ExperimentSpec&) const = default;
};

/// Either a spec to run, or text to print with an exit code (help, version,
/// usage errors).
struct CliResult {
  std::optional<ExperimentSpec> spec;
  std::string message;
  int exit_code = kExitOk;
};

/// Subcommands: evo run|sweep, dda run|compare|train, sip solve|compare.
/// Flags: --config <path> (required), --seed <u64>, --out <dir>, --svg.
/// `args` excludes the program name.
CliResult parse_cli(const std::vector<std::string>& args);
CliResult parse_cli(int argc, const char* const* argv);

}  // namespace edgemarket::harness
