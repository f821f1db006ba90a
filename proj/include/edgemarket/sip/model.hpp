#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace edgemarket::sip {

struct ResourceType {
  std::string id;
  double price_reserved = 0.0;   // per unit, paid ex-ante
  double price_on_demand = 0.0;  // per unit, paid after demand is revealed
  bool operator==(const ResourceType&) const = default;
};

using DemandVector = std::vector<std::int64_t>;

struct Scenario {
  DemandVector demand;
  double probability = 0.0;
  bool operator==(const Scenario&) const = default;
};

struct DemandModel {
  std::vector<Scenario> scenarios;
  std::vector<DemandVector> trace;  // optional historical observations

  /// Checks probabilities > 0, summing to 1 within 1e-9, and equal lengths.
  void validate(std::size_t resources) const;
  std::int64_t max_demand(std::size_t r) const;
  double mean_demand(std::size_t r) const;
  bool operator==(const DemandModel&) const = default;
};

struct ReservationPlan {
  std::vector<std::int64_t> reserved;
  bool operator==(const ReservationPlan&) const = default;
};

// Marginal demand distributions for scenario sampling.
struct UniformInt {
  std::int64_t lo = 0;
  std::int64_t hi = 0;
  bool operator==(const UniformInt&) const = default;
};
struct DiscretizedNormal {
  double mean = 0.0;
  double stddev = 0.0;
  bool operator==(const DiscretizedNormal&) const = default;
};
using Marginal = std::variant<UniformInt, DiscretizedNormal>;

/// Either independent per-resource marginals or joint resampling of a trace.
struct DistributionSpec {
  std::vector<Marginal> marginals;
  std::vector<DemandVector> empirical;
  bool operator==(const DistributionSpec&) const = default;
};

struct SipInstance {
  std::string name;
  std::vector<ResourceType> resources;
  DemandModel demand;
  std::optional<double> budget;
  // Sampled into `demand.scenarios` when no explicit scenario list is given.
  std::optional<DistributionSpec> distribution;
  std::int64_t n_scenarios = 0;
  bool operator==(const SipInstance&) const = default;
};

/// Seeded random instance family for scheme comparison sweeps.
struct RandomInstanceSpec {
  std::int64_t count = 0;
  std::int64_t max_resources = 3;
  std::int64_t max_demand = 30;
  std::int64_t max_scenarios = 5;
  std::int64_t trace_length = 10;
  double budget_probability = 0.0;
  bool operator==(const RandomInstanceSpec&) const = default;
};

struct SipConfig {
  std::vector<SipInstance> instances;
  std::optional<RandomInstanceSpec> random;
  std::int64_t trace_length = 20;  // trace drawn from the model when none is given
  bool operator==(const SipConfig&) const = default;
};

}  // namespace edgemarket::sip
