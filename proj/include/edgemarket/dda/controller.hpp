#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "edgemarket/core/rng.hpp"

namespace edgemarket::dda {

/// What the auctioneer sees before each clock move.
struct ClockObservation {
  double spread = 1.0;            // (buyer clock - seller clock) / (p_high - p_low), clamped to [0, 1]
  double buyers_claimed = 0.0;    // fraction of buyers that have claimed
  double sellers_claimed = 0.0;
  bool buyer_clock_active = true;
  std::int64_t round = 0;
};

/// Supplies the step of the next clock move. One instance drives one auction.
class StepPolicy {
 public:
  virtual ~StepPolicy() = default;
  virtual double next_step(const ClockObservation& obs) = 0;
};

// 10 spread bins x 4 buyer-claim bins x 4 seller-claim bins.
struct StateDiscretizer {
  int spread_bins = 10;
  int claim_bins = 4;

  std::size_t size() const { return static_cast<std::size_t>(spread_bins * claim_bins * claim_bins); }
  std::size_t index(const ClockObservation& obs) const;
  bool operator==(const StateDiscretizer&) const = default;
};

// Tabular action values. Actions never tried in a state are not candidates
// for the greedy choice; with nothing tried the default action is taken.
// Ties prefer the default action, then the lower index.
struct QTable {
  std::size_t states = 0;
  std::size_t actions = 0;
  std::size_t default_action = 0;
  std::vector<double> values;         // states x actions
  std::vector<std::int64_t> visits;   // states x actions

  QTable() = default;
  QTable(std::size_t n_states, std::size_t n_actions, std::size_t default_action);

  double& value(std::size_t s, std::size_t a) { return values[s * actions + a]; }
  double value(std::size_t s, std::size_t a) const { return values[s * actions + a]; }
  std::int64_t& visit(std::size_t s, std::size_t a) { return visits[s * actions + a]; }
  std::int64_t visit(std::size_t s, std::size_t a) const { return visits[s * actions + a]; }

  std::size_t greedy(std::size_t s) const;
  /// Max over tried actions, or 0 when none has been tried.
  double best_value(std::size_t s) const;
  bool operator==(const QTable&) const = default;
};

struct FixedStep {
  double step = 1.0;
  bool operator==(const FixedStep&) const = default;
};

// Step_{t+1} = clamp(step_t + theta (mu - step_t) + sigma eps_t), eps ~ N(0,1).
struct OuStep {
  double theta = 0.5;
  double mu = 1.0;
  double sigma = 0.0;
  double min_step = 0.5;
  double max_step = 2.0;
  double initial = 1.0;
  std::uint64_t seed = 0;
  std::string label;
  bool operator==(const OuStep&) const = default;
};

struct LearnedStep {
  QTable table;
  StateDiscretizer states;
  std::vector<double> multipliers;
  double base_step = 0.25;
  bool operator==(const LearnedStep&) const = default;
};

class ClockController {
 public:
  using Variant = std::variant<FixedStep, OuStep, LearnedStep>;

  ClockController(std::string name, Variant variant);

  static ClockController fixed(double step, std::string name = {});

  /// Fresh policy for one auction. OU noise is drawn from the controller's
  /// stream, or from its substream `run_tag` when one is given, so every run
  /// is reproducible on its own.
  std::unique_ptr<StepPolicy> start(std::string_view run_tag = {}) const;

  double min_step() const;
  double max_step() const;
  const std::string& name() const { return name_; }
  const Variant& variant() const { return variant_; }
  bool operator==(const ClockController&) const = default;

 private:
  std::string name_;
  Variant variant_;
};

/// OU-driven stepsize. Requires theta in (0, 1], sigma >= 0 and
/// 0 < min_step <= mu <= max_step; the first step is `initial` (default mu),
/// clamped to the bounds.
ClockController make_ou_controller(double theta, double mu, double sigma, double min_step, double max_step,
                                   const RngStream& rng, std::string name = "ou");
ClockController make_ou_controller(double theta, double mu, double sigma, double min_step, double max_step,
                                   const RngStream& rng, double initial, std::string name);

/// Step sequence a controller would emit for `count` moves under a fixed
/// observation; handy for inspecting OU paths.
std::vector<double> step_sequence(const ClockController& controller, std::size_t count,
                                  std::string_view run_tag = {});

}  // namespace edgemarket::dda
