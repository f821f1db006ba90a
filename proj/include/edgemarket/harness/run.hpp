#pragma once

#include <string>
#include <vector>

#include "edgemarket/core/config.hpp"
#include "edgemarket/dda/controller.hpp"
#include "edgemarket/harness/cli.hpp"

namespace edgemarket::harness {

struct Artifact {
  std::string path;
  std::string schema;  // e.g. "evo.trajectory", "sip.results", "svg"
};

struct RunArtifacts {
  std::vector<Artifact> files;
  std::string summary;  // printed to stdout; every number also lives in a CSV
};

/// Loads the config, applies CLI overrides and dispatches to the mechanism.
/// Throws ParseError/ConfigError (exit 2) or IoError (exit 3).
RunArtifacts run_experiment(const ExperimentSpec& spec);
/// Same, for an already validated config.
RunArtifacts run_experiment(const ExperimentSpec& spec, SimConfig config);

/// Controllers declared in a dda config; learned controllers are loaded from
/// their Q-table or trained on the configured generator.
std::vector<dda::ClockController> build_controllers(const dda::DdaConfig& config, std::uint64_t seed);

/// Column schema declared for each CSV schema id.
const std::vector<std::string>& csv_schema(const std::string& schema);

/// Maps exceptions to the exit-code contract: 0 ok, 2 config, 3 I/O, 64 usage.
int run_main(int argc, const char* const* argv);

}  // namespace edgemarket::harness
