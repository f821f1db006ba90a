#include "edgemarket/harness/run.hpp"

#include <filesystem>
#include <iostream>
#include <map>
#include <stdexcept>

#include "edgemarket/core/error.hpp"
#include "edgemarket/core/parallel.hpp"
#include "edgemarket/core/rng.hpp"
#include "edgemarket/core/table.hpp"
#include "edgemarket/dda/auction.hpp"
#include "edgemarket/dda/experiment.hpp"
#include "edgemarket/dda/qlearning.hpp"
#include "edgemarket/dda/qoe.hpp"
#include "edgemarket/evo/replicator.hpp"
#include "edgemarket/harness/svg.hpp"
#include "edgemarket/sip/compare.hpp"
#include "edgemarket/sip/sampling.hpp"

namespace edgemarket::harness {

namespace {

namespace fs = std::filesystem;

const std::map<std::string, std::vector<std::string>>& schemas() {
  static const std::map<std::string, std::vector<std::string>> table = {
      {"evo.trajectory", {"time", "pop_id", "region_id", "share", "payoff"}},
      {"evo.summary", {"region_id", "mass", "sync_frequency", "steps", "converged"}},
      {"evo.sweep", {"reward", "region_id", "mass", "sync_frequency"}},
      {"dda.results", {"controller", "instance", "welfare", "oracle_welfare", "rounds", "messages"}},
      {"dda.matches", {"controller", "buyer", "seller", "price"}},
      {"dda.controllers", {"controller", "mean_welfare", "welfare_ratio", "mean_rounds", "mean_messages"}},
      {"dda.summary", {"controller", "bitrate", "mean_welfare", "welfare_ratio", "mean_rounds", "mean_messages"}},
      {"dda.qtable", {"spread_bin", "buyer_bin", "seller_bin", "action", "multiplier", "q_value", "visits"}},
      {"dda.training", {"episode", "epsilon", "reward", "welfare", "rounds"}},
      {"sip.results", {"instance", "scheme", "first_stage", "on_demand", "total"}},
      {"sip.plan", {"instance", "resource", "reserved"}},
      {"sip.summary", {"scheme", "mean_first_stage", "mean_on_demand", "mean_total", "violations"}},
  };
  return table;
}

class Writer {
 public:
  explicit Writer(fs::path dir) : dir_(std::move(dir)) {
    std::error_code ec;
    fs::create_directories(dir_, ec);
    if (ec || !fs::is_directory(dir_)) throw IoError("cannot create output directory '" + dir_.string() + "'");
  }

  void csv(const std::string& file, const std::string& schema, const Table& table) {
    if (table.columns != csv_schema(schema)) throw std::logic_error("table does not match schema " + schema);
    put(file, schema, to_csv(table));
  }

  void svg(const std::string& file, const Table& table, const ChartSpec& chart) {
    put(file, "svg", emit_svg(table, chart));
  }

  void note(const std::string& line) { artifacts_.summary += line + "\n"; }

  void show(const std::string& title, const Table& table) {
    artifacts_.summary += title + "\n" + to_csv(table);
  }

  RunArtifacts done() {
    std::string files;
    for (const auto& f : artifacts_.files) files += "wrote " + f.path + "\n";
    artifacts_.summary = files + artifacts_.summary;
    return std::move(artifacts_);
  }

 private:
  void put(const std::string& file, const std::string& schema, const std::string& text) {
    const std::string path = (dir_ / file).string();
    write_text_file(path, text);
    artifacts_.files.push_back({path, schema});
  }

  fs::path dir_;
  RunArtifacts artifacts_;
};

template <class T>
const T& section(const SimConfig& config, Mechanism expected) {
  if (config.mechanism() != expected) {
    throw ConfigError("mechanism", "config is for '" + std::string(mechanism_name(config.mechanism())) +
                                       "' but the subcommand is '" + std::string(mechanism_name(expected)) + "'");
  }
  return std::get<T>(config.section);
}

// ---------------------------------------------------------------- evo

Table trajectory_table(const evo::EvoGame& game, const evo::Trajectory& traj) {
  Table t;
  t.columns = csv_schema("evo.trajectory");
  for (const auto& point : traj.points) {
    const auto u = evo::payoff_matrix(point.state, game);
    for (std::size_t p = 0; p < game.populations.size(); ++p) {
      for (std::size_t v = 0; v < game.regions.size(); ++v) {
        t.add_row({point.time, game.populations[p].id, game.regions[v].id, point.state.shares[p][v], u[p][v]});
      }
    }
  }
  return t;
}

void evo_run(const evo::EvoConfig& cfg, Writer& out, bool svg) {
  const auto traj = evo::evolve(cfg.game, cfg.initial_state(), cfg.options);
  const Table trajectory = trajectory_table(cfg.game, traj);
  out.csv("evo_trajectory.csv", "evo.trajectory", trajectory);

  Table summary;
  summary.columns = csv_schema("evo.summary");
  for (std::size_t v = 0; v < cfg.game.regions.size(); ++v) {
    summary.add_row({cfg.game.regions[v].id, evo::serving_mass(traj.final_state(), cfg.game, v),
                     evo::sync_frequency(traj.final_state(), cfg.game, v), traj.steps,
                     std::string(traj.converged ? "true" : "false")});
  }
  out.csv("evo_summary.csv", "evo.summary", summary);
  if (svg) {
    // share of the first population over time, one line per region
    Table shares;
    shares.columns = {"time", "region_id", "share"};
    for (const auto& row : trajectory.rows) {
      if (std::get<std::string>(row[1]) == cfg.game.populations.front().id) shares.add_row({row[0], row[2], row[3]});
    }
    out.svg("evo_trajectory.svg", shares,
            {ChartKind::line, "Strategy shares of " + cfg.game.populations.front().id, "time", "share", "region_id"});
  }
  out.show("equilibrium", summary);
}

void evo_sweep(const evo::EvoConfig& cfg, Writer& out, bool svg) {
  if (!cfg.sweep) throw ConfigError("evo.sweep", "required for 'evo sweep'");
  const auto rows = evo::reward_sweep(cfg, cfg.sweep->region, cfg.sweep->grid);
  Table t;
  t.columns = csv_schema("evo.sweep");
  for (const auto& row : rows) {
    for (std::size_t v = 0; v < cfg.game.regions.size(); ++v) {
      t.add_row({row.reward, cfg.game.regions[v].id, row.mass[v], row.frequency[v]});
    }
  }
  out.csv("evo_sweep.csv", "evo.sweep", t);
  if (svg && !t.empty()) {
    out.svg("evo_sweep.svg", t,
            {ChartKind::line, "Sync frequency vs reward of " + cfg.sweep->region, "reward", "sync_frequency",
             "region_id"});
  }
  out.show("sweep", t);
}

// ---------------------------------------------------------------- dda

dda::AuctionInstance configured_instance(const dda::DdaConfig& cfg) {
  dda::AuctionInstance inst;
  inst.name = "configured";
  inst.buyers = cfg.buyers;
  inst.sellers = cfg.sellers;
  inst.qoe = cfg.qoe;
  inst.bounds = cfg.bounds;
  dda::price_instance(inst);
  return inst;
}

std::vector<dda::ClockController> controllers_or_default(const dda::DdaConfig& cfg, std::uint64_t seed) {
  auto controllers = build_controllers(cfg, seed);
  if (controllers.empty()) controllers.push_back(dda::ClockController::fixed(cfg.training.base_step, "fixed"));
  return controllers;
}

void dda_run(const dda::DdaConfig& cfg, std::uint64_t seed, Writer& out) {
  if (cfg.buyers.empty() && cfg.sellers.empty()) throw ConfigError("dda.buyers", "'dda run' needs buyers and sellers");
  const auto inst = configured_instance(cfg);
  const auto controllers = controllers_or_default(cfg, seed);
  const dda::Bids bids = dda::bids_of(inst);
  const double oracle = dda::oracle_max_welfare(bids);

  Table results;
  results.columns = csv_schema("dda.results");
  Table matches;
  matches.columns = csv_schema("dda.matches");
  for (const auto& c : controllers) {
    const auto outcome = dda::run_dda(bids, c, inst.bounds, inst.name);
    results.add_row({c.name(), inst.name, outcome.welfare, oracle, outcome.rounds, outcome.messages});
    for (const auto& m : outcome.matches) {
      matches.add_row({c.name(), inst.buyers[m.buyer].id, inst.sellers[m.seller].id, m.price});
    }
  }
  out.csv("dda_results.csv", "dda.results", results);
  out.csv("dda_matches.csv", "dda.matches", matches);
  out.show("results", results);
}

std::vector<dda::AuctionInstance> family(const dda::DdaConfig& cfg, std::uint64_t seed) {
  if (!cfg.generator) throw ConfigError("dda.generator", "required for this subcommand");
  return dda::generate_family(*cfg.generator, cfg.qoe, cfg.bounds, rng_stream(seed, "dda/family"));
}

void dda_compare(const dda::DdaConfig& cfg, std::uint64_t seed, Writer& out, bool svg) {
  const auto instances = family(cfg, seed);
  const auto controllers = controllers_or_default(cfg, seed);
  const auto cmp = dda::compare_controllers(instances, controllers);
  out.csv("dda_results.csv", "dda.results", dda::runs_table(cmp.runs));
  const Table per_controller = dda::summary_table(cmp.summary);
  out.csv("dda_controllers.csv", "dda.controllers", per_controller);
  const Table by_bitrate = dda::bitrate_table(dda::summarize_by_bitrate(cmp));
  out.csv("dda_summary.csv", "dda.summary", by_bitrate);
  if (svg) {
    out.svg("dda_welfare_ratio.svg", by_bitrate,
            {ChartKind::line, "Welfare / efficient welfare vs bitrate", "bitrate", "welfare_ratio", "controller"});
    out.svg("dda_messages.svg", by_bitrate,
            {ChartKind::line, "Auction messages vs bitrate", "bitrate", "mean_messages", "controller"});
  }
  out.show("controllers", per_controller);
}

Table training_table(const std::vector<dda::EpisodeLog>& log) {
  Table t;
  t.columns = csv_schema("dda.training");
  for (const auto& e : log) t.add_row({e.episode, e.epsilon, e.reward, e.welfare, e.rounds});
  return t;
}

void dda_train(const dda::DdaConfig& cfg, std::uint64_t seed, Writer& out, bool svg) {
  if (!cfg.generator) throw ConfigError("dda.generator", "required for 'dda train'");
  const auto result = dda::train_q_controller(dda::family_generator(*cfg.generator, cfg.qoe, cfg.bounds),
                                              cfg.training, rng_stream(seed, "dda/train/learned"));
  const auto& learned = std::get<dda::LearnedStep>(result.controller.variant());
  out.csv("dda_qtable.csv", "dda.qtable", dda::q_table_to_table(learned));
  const Table training = training_table(result.episodes);
  out.csv("dda_training.csv", "dda.training", training);
  if (svg) {
    Table curve;
    curve.columns = {"episode", "series", "reward"};
    for (const auto& row : training.rows) curve.add_row({row[0], std::string("reward"), row[2]});
    out.svg("dda_training.svg", curve, {ChartKind::line, "Training reward", "episode", "reward", "series"});
  }
  // last episode only; the full curve is in the CSV
  Table last;
  last.columns = training.columns;
  last.add_row(training.rows.back());
  out.show("final episode", last);
}

// ---------------------------------------------------------------- sip

std::vector<sip::SipInstance> sip_instances(const sip::SipConfig& cfg, std::uint64_t seed) {
  std::vector<sip::SipInstance> out;
  for (const auto& inst : cfg.instances) {
    for (const auto& r : inst.resources) {
      if (r.price_reserved >= r.price_on_demand) {
        std::cerr << "warning: " << inst.name << "/" << r.id
                  << ": reserved price is not below on-demand price; reserving is dominated\n";
      }
    }
    out.push_back(sip::prepare_instance(inst, cfg.trace_length, rng_stream(seed, "sip/instance/" + inst.name)));
  }
  if (cfg.random) {
    const RngStream base = rng_stream(seed, "sip/random");
    for (std::int64_t i = 0; i < cfg.random->count; ++i) {
      RngStream draw = base.substream(std::to_string(i));
      out.push_back(sip::random_instance(*cfg.random, draw, "random-" + std::to_string(i)));
    }
  }
  return out;
}

void sip_solve(const sip::SipConfig& cfg, std::uint64_t seed, Writer& out) {
  const auto instances = sip_instances(cfg, seed);
  std::vector<sip::SchemeResult> results(instances.size());
  parallel_for(instances.size(), [&](std::size_t i) {
    const auto& inst = instances[i];
    results[i] = {inst.name, "sip", sip::solve_sip(inst.demand, inst.resources, inst.budget)};
  });
  Table plan;
  plan.columns = csv_schema("sip.plan");
  for (std::size_t i = 0; i < instances.size(); ++i) {
    for (std::size_t r = 0; r < instances[i].resources.size(); ++r) {
      plan.add_row({instances[i].name, instances[i].resources[r].id, results[i].solution.plan.reserved[r]});
    }
  }
  const Table table = sip::results_table(results);
  out.csv("sip_results.csv", "sip.results", table);
  out.csv("sip_plan.csv", "sip.plan", plan);
  out.show("results", table);
}

void sip_compare(const sip::SipConfig& cfg, std::uint64_t seed, Writer& out, bool svg) {
  const auto instances = sip_instances(cfg, seed);
  const auto cmp = sip::compare_schemes(instances);
  out.csv("sip_results.csv", "sip.results", sip::results_table(cmp.results));
  const Table agg = sip::aggregate_table(cmp);
  out.csv("sip_summary.csv", "sip.summary", agg);
  if (svg) out.svg("sip_compare.svg", agg, {ChartKind::bar, "Mean expected total cost", "", "mean_total", "scheme"});
  out.show("summary", agg);
  for (const auto& name : cmp.violations) out.note("violation: SIP costs more than a baseline on " + name);
}

}  // namespace

const std::vector<std::string>& csv_schema(const std::string& schema) {
  const auto it = schemas().find(schema);
  if (it == schemas().end()) throw std::invalid_argument("unknown CSV schema '" + schema + "'");
  return it->second;
}

std::vector<dda::ClockController> build_controllers(const dda::DdaConfig& config, std::uint64_t seed) {
  std::vector<dda::ClockController> out;
  for (const auto& c : config.controllers) {
    switch (c.kind) {
      case dda::ControllerKind::fixed:
        out.push_back(dda::ClockController::fixed(c.step, c.name));
        break;
      case dda::ControllerKind::ou:
        out.push_back(dda::make_ou_controller(c.theta, c.mu, c.sigma, c.min_step, c.max_step,
                                              rng_stream(seed, "dda/ou/" + c.name), c.step, c.name));
        break;
      case dda::ControllerKind::learned:
        if (!c.q_table.empty()) {
          auto learned = dda::learned_from_table(dda::read_csv_table(c.q_table), config.training.base_step,
                                                 config.training.multipliers);
          out.emplace_back(c.name, std::move(learned));
        } else {
          if (!config.generator) {
            throw ConfigError("dda.generator", "learned controller '" + c.name + "' needs a generator or q_table");
          }
          out.push_back(dda::train_q_controller(dda::family_generator(*config.generator, config.qoe, config.bounds),
                                                config.training, rng_stream(seed, "dda/train/" + c.name), c.name)
                            .controller);
        }
        break;
    }
  }
  return out;
}

RunArtifacts run_experiment(const ExperimentSpec& spec) {
  return run_experiment(spec, load_config_file(spec.config_path));
}

RunArtifacts run_experiment(const ExperimentSpec& spec, SimConfig config) {
  if (spec.seed) config.seed = *spec.seed;
  if (spec.out_dir) config.output_dir = *spec.out_dir;
  Writer out(config.output_dir);
  const std::uint64_t seed = config.seed;

  switch (spec.mechanism) {
    case Mechanism::evo: {
      const auto& cfg = section<evo::EvoConfig>(config, Mechanism::evo);
      if (spec.action == "run") {
        evo_run(cfg, out, spec.svg);
      } else if (spec.action == "sweep") {
        evo_sweep(cfg, out, spec.svg);
      } else {
        throw std::invalid_argument("unknown evo action '" + spec.action + "'");
      }
      break;
    }
    case Mechanism::dda: {
      const auto& cfg = section<dda::DdaConfig>(config, Mechanism::dda);
      if (spec.action == "run") {
        dda_run(cfg, seed, out);
      } else if (spec.action == "compare") {
        dda_compare(cfg, seed, out, spec.svg);
      } else if (spec.action == "train") {
        dda_train(cfg, seed, out, spec.svg);
      } else {
        throw std::invalid_argument("unknown dda action '" + spec.action + "'");
      }
      break;
    }
    case Mechanism::sip: {
      const auto& cfg = section<sip::SipConfig>(config, Mechanism::sip);
      if (spec.action == "solve") {
        sip_solve(cfg, seed, out);
      } else if (spec.action == "compare") {
        sip_compare(cfg, seed, out, spec.svg);
      } else {
        throw std::invalid_argument("unknown sip action '" + spec.action + "'");
      }
      break;
    }
  }
  return out.done();
}

int run_main(int argc, const char* const* argv) {
  const CliResult cli = parse_cli(argc, argv);
  if (!cli.spec) {
    (cli.exit_code == kExitOk ? std::cout : std::cerr) << cli.message;
    return cli.exit_code;
  }
  try {
    const RunArtifacts artifacts = run_experiment(*cli.spec);
    std::cout << artifacts.summary;
    return kExitOk;
  } catch (const ParseError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const IoError& e) {
    std::cerr << "I/O error: " << e.what() << "\n";
    return kExitIo;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace edgemarket::harness
