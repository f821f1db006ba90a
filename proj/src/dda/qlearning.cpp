#include "edgemarket/dda/qlearning.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "edgemarket/core/error.hpp"

namespace edgemarket::dda {

namespace {

std::size_t default_action_for(const std::vector<double>& multipliers) {
  for (std::size_t a = 0; a < multipliers.size(); ++a) {
    if (multipliers[a] == 1.0) return a;
  }
  return 0;
}

class ExploringPolicy final : public StepPolicy {
 public:
  ExploringPolicy(const LearnedStep& learned, double epsilon, RngStream& rng)
      : learned_(learned), epsilon_(epsilon), rng_(rng) {}

  double next_step(const ClockObservation& obs) override {
    const std::size_t s = learned_.states.index(obs);
    std::size_t a = learned_.table.greedy(s);
    if (epsilon_ > 0.0 && rng_.uniform() < epsilon_) {
      a = static_cast<std::size_t>(rng_.uniform_int(0, static_cast<std::int64_t>(learned_.table.actions) - 1));
    }
    path.push_back({s, a});
    return learned_.multipliers[a] * learned_.base_step;
  }

  std::vector<std::pair<std::size_t, std::size_t>> path;

 private:
  const LearnedStep& learned_;
  double epsilon_;
  RngStream& rng_;
};

}  // namespace

TrainResult train_q_controller(const InstanceGenerator& generator, const TrainingConfig& config,
                               const RngStream& rng, std::string name) {
  if (config.multipliers.empty()) throw std::invalid_argument("train_q_controller: empty action set");
  if (config.episodes < 1) throw std::invalid_argument("train_q_controller: zero episodes");
  if (!(config.base_step > 0.0)) throw std::invalid_argument("train_q_controller: base step must be positive");

  LearnedStep learned;
  learned.multipliers = config.multipliers;
  learned.base_step = config.base_step;
  learned.table = QTable(learned.states.size(), config.multipliers.size(), default_action_for(config.multipliers));

  RngStream explore = rng.substream("explore");
  std::vector<EpisodeLog> log;
  log.reserve(static_cast<std::size_t>(config.episodes));
  for (std::int64_t e = 0; e < config.episodes; ++e) {
    const double progress =
        config.episodes > 1 ? static_cast<double>(e) / static_cast<double>(config.episodes - 1) : 1.0;
    const double epsilon = config.epsilon_start + (config.epsilon_end - config.epsilon_start) * progress;

    RngStream draw = rng.substream("episode/" + std::to_string(e));
    const TrainingInstance inst = generator(draw);
    ExploringPolicy policy(learned, epsilon, explore);
    const AuctionOutcome out = run_dda(inst.bids, policy, inst.bounds);
    const double reward = out.welfare - config.eta * static_cast<double>(out.rounds);
    // Every-visit Monte-Carlo update. The instance's efficient welfare is
    // subtracted as a baseline: it does not depend on the actions taken, so
    // the greedy policy is unchanged in expectation while variance between
    // instances drops out.
    const double advantage = reward - oracle_max_welfare(inst.bids);
    double target = advantage;
    for (std::size_t t = policy.path.size(); t-- > 0;) {
      const auto [s, a] = policy.path[t];
      auto& visits = learned.table.visit(s, a);
      ++visits;
      const double rate = std::max(config.learning_rate, 1.0 / static_cast<double>(visits));
      auto& q = learned.table.value(s, a);
      q += rate * (target - q);
      target *= config.discount;
    }
    log.push_back({e, epsilon, reward, out.welfare, out.rounds});
  }
  return {ClockController(std::move(name), std::move(learned)), std::move(log)};
}

Table q_table_to_table(const LearnedStep& learned) {
  Table t;
  t.columns = {"spread_bin", "buyer_bin", "seller_bin", "action", "multiplier", "q_value", "visits"};
  const int cb = learned.states.claim_bins;
  for (std::size_t s = 0; s < learned.table.states; ++s) {
    const auto si = static_cast<std::int64_t>(s);
    for (std::size_t a = 0; a < learned.table.actions; ++a) {
      t.add_row({si / (cb * cb), (si / cb) % cb, si % cb, static_cast<std::int64_t>(a), learned.multipliers[a],
                 learned.table.value(s, a), learned.table.visit(s, a)});
    }
  }
  return t;
}

LearnedStep learned_from_table(const Table& table, double base_step, const std::vector<double>& multipliers) {
  LearnedStep learned;
  learned.multipliers = multipliers;
  learned.base_step = base_step;
  learned.table = QTable(learned.states.size(), multipliers.size(), default_action_for(multipliers));
  const std::size_t c_spread = table.column_index("spread_bin");
  const std::size_t c_buyer = table.column_index("buyer_bin");
  const std::size_t c_seller = table.column_index("seller_bin");
  const std::size_t c_action = table.column_index("action");
  const std::size_t c_mult = table.column_index("multiplier");
  const std::size_t c_q = table.column_index("q_value");
  const std::size_t c_visits = table.column_index("visits");
  const int cb = learned.states.claim_bins;
  for (const auto& row : table.rows) {
    const auto spread = static_cast<int>(cell_as_double(row[c_spread]));
    const auto buyer = static_cast<int>(cell_as_double(row[c_buyer]));
    const auto seller = static_cast<int>(cell_as_double(row[c_seller]));
    const auto action = static_cast<std::size_t>(cell_as_double(row[c_action]));
    if (spread < 0 || spread >= learned.states.spread_bins || buyer < 0 || buyer >= cb || seller < 0 || seller >= cb ||
        action >= multipliers.size()) {
      throw std::invalid_argument("Q-table row out of range");
    }
    if (cell_as_double(row[c_mult]) != multipliers[action]) {
      throw std::invalid_argument("Q-table multipliers do not match the configured action set");
    }
    const auto s = static_cast<std::size_t>((spread * cb + buyer) * cb + seller);
    learned.table.value(s, action) = cell_as_double(row[c_q]);
    learned.table.visit(s, action) = static_cast<std::int64_t>(cell_as_double(row[c_visits]));
  }
  return learned;
}

Table read_csv_table(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read '" + path + "'");
  Table t;
  std::string line;
  bool header = true;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) fields.push_back(field);
    if (header) {
      t.columns = fields;
      header = false;
      continue;
    }
    std::vector<Cell> row;
    for (const auto& f : fields) {
      char* end = nullptr;
      const double v = std::strtod(f.c_str(), &end);
      if (end && *end == '\0' && !f.empty()) {
        row.emplace_back(v);
      } else {
        row.emplace_back(f);
      }
    }
    t.add_row(std::move(row));
  }
  if (header) throw IoError("'" + path + "' is empty");
  return t;
}

}  // namespace edgemarket::dda
