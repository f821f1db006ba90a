#include "edgemarket/dda/experiment.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include "edgemarket/core/parallel.hpp"
#include "edgemarket/dda/qoe.hpp"

namespace edgemarket::dda {

AuctionInstance generate_instance(const GeneratorSpec& spec, const QoeParams& qoe, const PriceBounds& bounds,
                                  double bitrate, RngStream& rng) {
  AuctionInstance inst;
  inst.qoe = qoe;
  inst.bounds = bounds;
  const auto n_buyers = rng.uniform_int(spec.min_agents, spec.max_agents);
  const auto n_sellers = rng.uniform_int(spec.min_agents, spec.max_agents);
  for (std::int64_t i = 0; i < n_buyers; ++i) {
    VrUser u;
    u.id = "u" + std::to_string(i);
    u.head_speed = rng.uniform(0.0, spec.head_speed_max);
    u.bitrate = bitrate;
    inst.buyers.push_back(u);
  }
  for (std::int64_t j = 0; j < n_sellers; ++j) {
    EdgeSeller s;
    s.id = "s" + std::to_string(j);
    s.energy_price = rng.uniform(spec.energy_price_min, spec.energy_price_max);
    s.base_cost = rng.uniform(spec.base_cost_min, spec.base_cost_max);
    inst.sellers.push_back(s);
  }
  price_instance(inst);
  return inst;
}

std::vector<AuctionInstance> generate_family(const GeneratorSpec& spec, const QoeParams& qoe,
                                             const PriceBounds& bounds, const RngStream& rng) {
  std::vector<AuctionInstance> out;
  for (std::size_t i = 0; i < spec.bitrates.size(); ++i) {
    for (std::int64_t k = 0; k < spec.instances_per_bitrate; ++k) {
      RngStream draw = rng.substream("b" + std::to_string(i) + "/i" + std::to_string(k));
      AuctionInstance inst = generate_instance(spec, qoe, bounds, spec.bitrates[i], draw);
      inst.name = "b" + format_number(spec.bitrates[i]) + "-" + std::to_string(k);
      out.push_back(std::move(inst));
    }
  }
  return out;
}

InstanceGenerator family_generator(const GeneratorSpec& spec, const QoeParams& qoe, const PriceBounds& bounds) {
  return [spec, qoe, bounds](RngStream& rng) {
    const auto idx = rng.uniform_int(0, static_cast<std::int64_t>(spec.bitrates.size()) - 1);
    const AuctionInstance inst = generate_instance(spec, qoe, bounds, spec.bitrates[static_cast<std::size_t>(idx)], rng);
    return TrainingInstance{bids_of(inst), inst.bounds};
  };
}

double instance_bitrate(const AuctionInstance& instance) {
  double b = 0.0;
  for (const auto& u : instance.buyers) b = std::max(b, u.bitrate);
  return b;
}

namespace {

RunRecord run_one(const AuctionInstance& inst, const ClockController& controller) {
  const Bids bids = bids_of(inst);
  const AuctionOutcome out = run_dda(bids, controller, inst.bounds, inst.name);
  return {controller.name(), inst.name, instance_bitrate(inst), out.welfare, oracle_max_welfare(bids), out.rounds,
          out.messages};
}

double ratio(const RunRecord& r) { return r.oracle_welfare > 0.0 ? r.welfare / r.oracle_welfare : 1.0; }

ControllerSummary summarize(const std::string& name, const std::vector<const RunRecord*>& runs) {
  ControllerSummary s;
  s.controller = name;
  if (runs.empty()) return s;
  for (const auto* r : runs) {
    s.mean_welfare += r->welfare;
    s.mean_ratio += ratio(*r);
    s.mean_rounds += static_cast<double>(r->rounds);
    s.mean_messages += static_cast<double>(r->messages);
  }
  const double n = static_cast<double>(runs.size());
  s.mean_welfare /= n;
  s.mean_ratio /= n;
  s.mean_rounds /= n;
  s.mean_messages /= n;
  return s;
}

Comparison assemble(std::vector<RunRecord> runs, const std::vector<ClockController>& controllers,
                    std::size_t n_instances) {
  Comparison c;
  c.runs = std::move(runs);
  for (std::size_t k = 0; k < controllers.size(); ++k) {
    std::vector<const RunRecord*> mine;
    for (std::size_t i = 0; i < n_instances; ++i) mine.push_back(&c.runs[k * n_instances + i]);
    c.summary.push_back(summarize(controllers[k].name(), mine));
  }
  return c;
}

void check_inputs(const std::vector<AuctionInstance>& instances, const std::vector<ClockController>& controllers) {
  if (instances.empty()) throw std::invalid_argument("compare_controllers: at least one instance is required");
  if (controllers.empty()) throw std::invalid_argument("compare_controllers: at least one controller is required");
}

}  // namespace

Comparison compare_controllers(const std::vector<AuctionInstance>& instances,
                               const std::vector<ClockController>& controllers) {
  check_inputs(instances, controllers);
  const std::size_t n = instances.size();
  std::vector<RunRecord> runs(controllers.size() * n);
  parallel_for(runs.size(), [&](std::size_t idx) { runs[idx] = run_one(instances[idx % n], controllers[idx / n]); });
  return assemble(std::move(runs), controllers, n);
}

Comparison compare_controllers_serial(const std::vector<AuctionInstance>& instances,
                                      const std::vector<ClockController>& controllers) {
  check_inputs(instances, controllers);
  std::vector<RunRecord> runs;
  for (const auto& c : controllers) {
    for (const auto& inst : instances) runs.push_back(run_one(inst, c));
  }
  return assemble(std::move(runs), controllers, instances.size());
}

std::vector<BitrateSummary> summarize_by_bitrate(const Comparison& comparison) {
  std::vector<BitrateSummary> out;
  for (const auto& s : comparison.summary) {
    std::map<double, std::vector<const RunRecord*>> groups;
    for (const auto& r : comparison.runs) {
      if (r.controller == s.controller) groups[r.bitrate].push_back(&r);
    }
    for (const auto& [bitrate, runs] : groups) out.push_back({s.controller, bitrate, summarize(s.controller, runs)});
  }
  return out;
}

Table runs_table(const std::vector<RunRecord>& runs) {
  Table t;
  t.columns = {"controller", "instance", "welfare", "oracle_welfare", "rounds", "messages"};
  for (const auto& r : runs) t.add_row({r.controller, r.instance, r.welfare, r.oracle_welfare, r.rounds, r.messages});
  return t;
}

Table summary_table(const std::vector<ControllerSummary>& summary) {
  Table t;
  t.columns = {"controller", "mean_welfare", "welfare_ratio", "mean_rounds", "mean_messages"};
  for (const auto& s : summary) t.add_row({s.controller, s.mean_welfare, s.mean_ratio, s.mean_rounds, s.mean_messages});
  return t;
}

Table bitrate_table(const std::vector<BitrateSummary>& rows) {
  Table t;
  t.columns = {"controller", "bitrate", "mean_welfare", "welfare_ratio", "mean_rounds", "mean_messages"};
  for (const auto& r : rows) {
    t.add_row({r.controller, r.bitrate, r.stats.mean_welfare, r.stats.mean_ratio, r.stats.mean_rounds,
               r.stats.mean_messages});
  }
  return t;
}

}  // namespace edgemarket::dda
