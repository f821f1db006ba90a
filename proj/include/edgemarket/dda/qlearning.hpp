#pragma once

#include <functional>
#include <string>
#include <vector>

#include "edgemarket/core/rng.hpp"
#include "edgemarket/core/table.hpp"
#include "edgemarket/dda/auction.hpp"
#include "edgemarket/dda/controller.hpp"

namespace edgemarket::dda {

/// Draws one training auction (reported values and price bounds).
struct TrainingInstance {
  Bids bids;
  PriceBounds bounds;
};
using InstanceGenerator = std::function<TrainingInstance(RngStream&)>;

struct EpisodeLog {
  std::int64_t episode = 0;
  double epsilon = 0.0;
  double reward = 0.0;
  double welfare = 0.0;
  std::int64_t rounds = 0;
};

struct TrainResult {
  ClockController controller;
  std::vector<EpisodeLog> episodes;
};

// Tabular Q-learning of the clock stepsize. Each episode draws an instance
// from `generator` (episode i uses substream "episode/i"), runs one auction
// under an epsilon-greedy policy over step = multiplier * base_step, and
// credits reward = welfare - eta * rounds at termination. Updates sweep the
// episode backwards with rate max(learning_rate, 1/visits). Epsilon decays
// linearly from epsilon_start to epsilon_end. The returned controller is
// greedy. Sequential by construction.
TrainResult train_q_controller(const InstanceGenerator& generator, const TrainingConfig& config,
                               const RngStream& rng, std::string name = "learned");

Table q_table_to_table(const LearnedStep& learned);
/// Inverse of q_table_to_table for a table written by the CLI.
LearnedStep learned_from_table(const Table& table, double base_step, const std::vector<double>& multipliers);
Table read_csv_table(const std::string& path);

}  // namespace edgemarket::dda
