#include "edgemarket/sip/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "edgemarket/sip/solver.hpp"

namespace edgemarket::sip {

DemandModel sample_scenarios(const DistributionSpec& spec, std::int64_t n, RngStream& rng) {
  if (n < 1) throw std::invalid_argument("sample_scenarios: n must be at least 1");
  if (spec.marginals.empty() == spec.empirical.empty()) {
    throw std::invalid_argument("sample_scenarios: need either marginals or an empirical trace");
  }
  for (const auto& m : spec.marginals) {
    if (const auto* u = std::get_if<UniformInt>(&m)) {
      if (u->lo < 0 || u->lo > u->hi) throw std::invalid_argument("sample_scenarios: invalid uniform bounds");
    } else if (std::get<DiscretizedNormal>(m).stddev < 0.0) {
      throw std::invalid_argument("sample_scenarios: negative standard deviation");
    }
  }

  DemandModel model;
  const double p = 1.0 / static_cast<double>(n);
  const bool identity = !spec.empirical.empty() && static_cast<std::size_t>(n) == spec.empirical.size();
  for (std::int64_t k = 0; k < n; ++k) {
    Scenario s;
    s.probability = p;
    if (identity) {
      s.demand = spec.empirical[static_cast<std::size_t>(k)];
    } else if (!spec.empirical.empty()) {
      const auto pick = rng.uniform_int(0, static_cast<std::int64_t>(spec.empirical.size()) - 1);
      s.demand = spec.empirical[static_cast<std::size_t>(pick)];
    } else {
      for (const auto& m : spec.marginals) {
        if (const auto* u = std::get_if<UniformInt>(&m)) {
          s.demand.push_back(rng.uniform_int(u->lo, u->hi));
        } else {
          const auto& nd = std::get<DiscretizedNormal>(m);
          s.demand.push_back(std::max<std::int64_t>(0, round_half_up(nd.mean + nd.stddev * rng.normal())));
        }
      }
    }
    model.scenarios.push_back(std::move(s));
  }
  return model;
}

std::vector<DemandVector> sample_trace(const DemandModel& demand, std::int64_t count, RngStream& rng) {
  if (demand.scenarios.empty()) throw std::invalid_argument("sample_trace: empty scenario set");
  std::vector<DemandVector> trace;
  for (std::int64_t k = 0; k < count; ++k) {
    const double u = rng.uniform();
    double acc = 0.0;
    std::size_t pick = demand.scenarios.size() - 1;
    for (std::size_t s = 0; s < demand.scenarios.size(); ++s) {
      acc += demand.scenarios[s].probability;
      if (u < acc) {
        pick = s;
        break;
      }
    }
    trace.push_back(demand.scenarios[pick].demand);
  }
  return trace;
}

SipInstance prepare_instance(SipInstance instance, std::int64_t trace_length, const RngStream& rng) {
  if (instance.distribution) {
    RngStream draw = rng.substream("scenarios");
    instance.demand.scenarios = sample_scenarios(*instance.distribution, instance.n_scenarios, draw).scenarios;
  }
  if (instance.demand.trace.empty()) {
    RngStream draw = rng.substream("trace");
    instance.demand.trace = sample_trace(instance.demand, trace_length, draw);
  }
  return instance;
}

SipInstance random_instance(const RandomInstanceSpec& spec, RngStream& rng, std::string name) {
  SipInstance inst;
  inst.name = std::move(name);
  const auto n_resources = rng.uniform_int(1, spec.max_resources);
  for (std::int64_t r = 0; r < n_resources; ++r) {
    ResourceType t;
    t.id = "r" + std::to_string(r);
    t.price_reserved = rng.uniform(0.5, 3.0);
    t.price_on_demand = t.price_reserved * rng.uniform(0.8, 4.0);
    inst.resources.push_back(t);
  }
  const auto n_scenarios = rng.uniform_int(1, spec.max_scenarios);
  std::vector<double> weights;
  double total = 0.0;
  for (std::int64_t s = 0; s < n_scenarios; ++s) {
    weights.push_back(0.05 + rng.uniform());
    total += weights.back();
  }
  for (std::int64_t s = 0; s < n_scenarios; ++s) {
    Scenario sc;
    for (std::int64_t r = 0; r < n_resources; ++r) sc.demand.push_back(rng.uniform_int(0, spec.max_demand));
    sc.probability = weights[static_cast<std::size_t>(s)] / total;
    inst.demand.scenarios.push_back(std::move(sc));
  }
  if (rng.uniform() < spec.budget_probability) {
    double full = 0.0;
    for (std::int64_t r = 0; r < n_resources; ++r) {
      full += inst.resources[static_cast<std::size_t>(r)].price_reserved *
              static_cast<double>(inst.demand.max_demand(static_cast<std::size_t>(r)));
    }
    inst.budget = full * rng.uniform();
  }
  inst.demand.trace = sample_trace(inst.demand, spec.trace_length, rng);
  return inst;
}

}  // namespace edgemarket::sip
