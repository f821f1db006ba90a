#include "edgemarket/dda/controller.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace edgemarket::dda {

namespace {

int bucket(double fraction, int bins) {
  const int b = static_cast<int>(std::floor(std::clamp(fraction, 0.0, 1.0) * bins));
  return std::min(b, bins - 1);
}

class FixedPolicy final : public StepPolicy {
 public:
  explicit FixedPolicy(double step) : step_(step) {}
  double next_step(const ClockObservation&) override { return step_; }

 private:
  double step_;
};

class OuPolicy final : public StepPolicy {
 public:
  OuPolicy(const OuStep& params, RngStream rng)
      : params_(params), rng_(std::move(rng)),
        current_(std::clamp(params.initial, params.min_step, params.max_step)) {}

  double next_step(const ClockObservation&) override {
    const double step = current_;
    const double noise = params_.sigma > 0.0 ? params_.sigma * rng_.normal() : 0.0;
    current_ = std::clamp(current_ + params_.theta * (params_.mu - current_) + noise, params_.min_step,
                          params_.max_step);
    return step;
  }

 private:
  OuStep params_;
  RngStream rng_;
  double current_;
};

class GreedyPolicy final : public StepPolicy {
 public:
  explicit GreedyPolicy(const LearnedStep& learned) : learned_(learned) {}
  double next_step(const ClockObservation& obs) override {
    const std::size_t a = learned_.table.greedy(learned_.states.index(obs));
    return learned_.multipliers[a] * learned_.base_step;
  }

 private:
  const LearnedStep& learned_;
};

}  // namespace

std::size_t StateDiscretizer::index(const ClockObservation& obs) const {
  const int s = bucket(obs.spread, spread_bins);
  const int b = bucket(obs.buyers_claimed, claim_bins);
  const int c = bucket(obs.sellers_claimed, claim_bins);
  return static_cast<std::size_t>((s * claim_bins + b) * claim_bins + c);
}

QTable::QTable(std::size_t n_states, std::size_t n_actions, std::size_t default_action_index)
    : states(n_states), actions(n_actions), default_action(default_action_index),
      values(n_states * n_actions, 0.0), visits(n_states * n_actions, 0) {
  if (n_actions == 0) throw std::invalid_argument("QTable: empty action set");
  if (default_action_index >= n_actions) throw std::invalid_argument("QTable: default action out of range");
}

std::size_t QTable::greedy(std::size_t s) const {
  std::size_t best = default_action;
  bool found = visit(s, default_action) > 0;
  for (std::size_t a = 0; a < actions; ++a) {
    if (visit(s, a) == 0 || a == default_action) continue;
    if (!found || value(s, a) > value(s, best)) {
      best = a;
      found = true;
    }
  }
  return best;
}

double QTable::best_value(std::size_t s) const {
  const std::size_t a = greedy(s);
  return visit(s, a) > 0 ? value(s, a) : 0.0;
}

ClockController::ClockController(std::string name, Variant variant)
    : name_(std::move(name)), variant_(std::move(variant)) {
  if (const auto* f = std::get_if<FixedStep>(&variant_)) {
    if (!(f->step > 0.0) || !std::isfinite(f->step)) throw std::invalid_argument("fixed step must be positive");
  } else if (const auto* l = std::get_if<LearnedStep>(&variant_)) {
    if (l->multipliers.empty()) throw std::invalid_argument("learned controller: empty action set");
    if (l->multipliers.size() != l->table.actions) {
      throw std::invalid_argument("learned controller: action set does not match Q-table");
    }
    if (l->table.states != l->states.size()) throw std::invalid_argument("learned controller: state count mismatch");
    if (!(l->base_step > 0.0)) throw std::invalid_argument("learned controller: base step must be positive");
    for (double m : l->multipliers) {
      if (!(m > 0.0)) throw std::invalid_argument("learned controller: multipliers must be positive");
    }
  }
}

ClockController ClockController::fixed(double step, std::string name) {
  if (name.empty()) name = "fixed";
  return ClockController(std::move(name), FixedStep{step});
}

std::unique_ptr<StepPolicy> ClockController::start(std::string_view run_tag) const {
  return std::visit(
      [&](const auto& v) -> std::unique_ptr<StepPolicy> {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, FixedStep>) {
          return std::make_unique<FixedPolicy>(v.step);
        } else if constexpr (std::is_same_v<T, OuStep>) {
          RngStream base(v.seed, v.label);
          return std::make_unique<OuPolicy>(v, run_tag.empty() ? base : base.substream(run_tag));
        } else {
          return std::make_unique<GreedyPolicy>(v);
        }
      },
      variant_);
}

double ClockController::min_step() const {
  return std::visit(
      [](const auto& v) -> double {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, FixedStep>) {
          return v.step;
        } else if constexpr (std::is_same_v<T, OuStep>) {
          return v.min_step;
        } else {
          return *std::min_element(v.multipliers.begin(), v.multipliers.end()) * v.base_step;
        }
      },
      variant_);
}

double ClockController::max_step() const {
  return std::visit(
      [](const auto& v) -> double {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, FixedStep>) {
          return v.step;
        } else if constexpr (std::is_same_v<T, OuStep>) {
          return v.max_step;
        } else {
          return *std::max_element(v.multipliers.begin(), v.multipliers.end()) * v.base_step;
        }
      },
      variant_);
}

ClockController make_ou_controller(double theta, double mu, double sigma, double min_step, double max_step,
                                   const RngStream& rng, double initial, std::string name) {
  if (!(theta > 0.0 && theta <= 1.0)) throw std::invalid_argument("ou controller: theta must lie in (0, 1]");
  if (!(sigma >= 0.0)) throw std::invalid_argument("ou controller: sigma must be non-negative");
  if (!(min_step > 0.0 && min_step <= mu && mu <= max_step)) {
    throw std::invalid_argument("ou controller: need 0 < min_step <= mu <= max_step");
  }
  OuStep params{theta, mu, sigma, min_step, max_step, initial, rng.seed(), rng.label()};
  return ClockController(std::move(name), params);
}

ClockController make_ou_controller(double theta, double mu, double sigma, double min_step, double max_step,
                                   const RngStream& rng, std::string name) {
  return make_ou_controller(theta, mu, sigma, min_step, max_step, rng, mu, std::move(name));
}

std::vector<double> step_sequence(const ClockController& controller, std::size_t count, std::string_view run_tag) {
  auto policy = controller.start(run_tag);
  std::vector<double> out;
  out.reserve(count);
  ClockObservation obs;
  for (std::size_t i = 0; i < count; ++i) {
    obs.round = static_cast<std::int64_t>(i);
    out.push_back(policy->next_step(obs));
  }
  return out;
}

}  // namespace edgemarket::dda
