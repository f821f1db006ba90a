#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace edgemarket::evo {

/// A virtual-region operator posting a reward pool per epoch.
struct VspRegion {
  std::string id;
  double reward_pool = 0.0;  // currency per epoch
  double sync_coeff = 1.0;   // uploads per epoch per unit of serving mass
  bool operator==(const VspRegion&) const = default;
};

/// A cluster of sensing providers sharing capability and cost profile.
struct SspPopulation {
  std::string id;
  std::int64_t size = 1;         // number of providers
  double capability = 1.0;       // reward-share weight of one provider
  std::vector<double> cost;      // per-region service cost
  double learning_rate = 1.0;    // replicator speed
  bool operator==(const SspPopulation&) const = default;
};

struct EvoGame {
  std::vector<VspRegion> regions;
  std::vector<SspPopulation> populations;

  std::size_t region_index(const std::string& id) const;  // throws std::out_of_range
  bool operator==(const EvoGame&) const = default;
};

// shares[p][v]: fraction of population p serving region v.
struct PopulationState {
  std::vector<std::vector<double>> shares;

  static PopulationState uniform(const EvoGame& game);
  bool operator==(const PopulationState&) const = default;
};

struct EvolveOptions {
  double step = 0.01;
  double tol = 1e-6;
  std::int64_t max_steps = 1'000'000;
  std::int64_t record_every = 100;  // trajectory sampling interval, in steps
  bool operator==(const EvolveOptions&) const = default;
};

struct SweepSpec {
  std::string region;
  std::vector<double> grid;
  bool operator==(const SweepSpec&) const = default;
};

struct EvoConfig {
  EvoGame game;
  std::optional<PopulationState> init;
  EvolveOptions options;
  std::optional<SweepSpec> sweep;

  PopulationState initial_state() const { return init ? *init : PopulationState::uniform(game); }
  bool operator==(const EvoConfig&) const = default;
};

}  // namespace edgemarket::evo
