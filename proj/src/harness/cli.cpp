#include "edgemarket/harness/cli.hpp"

#include <sstream>

#include "CLI11.hpp"

namespace edgemarket::harness {

namespace {

constexpr const char* kVersion = "edgemarket 0.1.0";

}  // namespace

CliResult parse_cli(const std::vector<std::string>& args) {
  CLI::App app{"Edge market mechanism experiments: evolutionary sensing, double Dutch auctions, "
               "stochastic reservation planning",
               "edgemarket"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  ExperimentSpec spec;
  std::string seed_text;
  std::string out_dir;
  app.add_option("--config", spec.config_path, "JSON configuration file")->required();
  app.add_option("--seed", seed_text, "unsigned 64-bit seed (overrides the config)");
  app.add_option("--out", out_dir, "output directory (overrides the config)");
  app.add_flag("--svg", spec.svg, "also write SVG charts");

  struct Entry {
    Mechanism mechanism;
    const char* name;
    const char* description;
    std::vector<std::pair<const char*, const char*>> actions;
  };
  const std::vector<Entry> entries = {
      {Mechanism::evo, "evo", "evolutionary sensing market",
       {{"run", "integrate the replicator dynamics"}, {"sweep", "equilibria across a reward grid"}}},
      {Mechanism::dda, "dda", "double Dutch auction for edge rendering",
       {{"run", "run the configured instance"},
        {"compare", "compare clock controllers on the instance family"},
        {"train", "train the Q-learning clock controller"}}},
      {Mechanism::sip, "sip", "two-stage stochastic reservation planning",
       {{"solve", "solve the configured instances exactly"}, {"compare", "compare SIP, EVF and average-historical"}}},
  };

  std::vector<std::pair<CLI::App*, std::pair<Mechanism, std::string>>> leaves;
  for (const auto& e : entries) {
    CLI::App* group = app.add_subcommand(e.name, e.description);
    group->require_subcommand(1);
    group->fallthrough();
    for (const auto& [action, help] : e.actions) {
      CLI::App* leaf = group->add_subcommand(action, help);
      leaf->fallthrough();
      leaves.push_back({leaf, {e.mechanism, action}});
    }
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  CliResult result;
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    result.message = app.help();
    result.exit_code = kExitOk;
    return result;
  } catch (const CLI::CallForAllHelp&) {
    result.message = app.help("", CLI::AppFormatMode::All);
    result.exit_code = kExitOk;
    return result;
  } catch (const CLI::CallForVersion&) {
    result.message = std::string(kVersion) + "\n";
    result.exit_code = kExitOk;
    return result;
  } catch (const CLI::ParseError& e) {
    result.message = std::string("error: ") + e.what() + "\n\n" + app.help();
    result.exit_code = kExitUsage;
    return result;
  }

  for (const auto& [leaf, id] : leaves) {
    if (leaf->parsed()) {
      spec.mechanism = id.first;
      spec.action = id.second;
    }
  }
  if (!seed_text.empty()) {
    try {
      std::size_t used = 0;
      if (seed_text.front() == '-') throw std::invalid_argument("negative");
      const unsigned long long v = std::stoull(seed_text, &used, 10);
      if (used != seed_text.size()) throw std::invalid_argument("trailing characters");
      spec.seed = static_cast<std::uint64_t>(v);
    } catch (const std::exception&) {
      result.message = "error: --seed expects an unsigned 64-bit integer, got '" + seed_text + "'\n\n" + app.help();
      result.exit_code = kExitUsage;
      return result;
    }
  }
  if (!out_dir.empty()) spec.out_dir = out_dir;
  result.spec = spec;
  return result;
}

CliResult parse_cli(int argc, const char* const* argv) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return parse_cli(args);
}

}  // namespace edgemarket::harness
