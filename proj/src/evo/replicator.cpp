#include "edgemarket/evo/replicator.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "edgemarket/core/config.hpp"
#include "edgemarket/core/error.hpp"

namespace edgemarket::evo {

namespace {

constexpr double kSimplexTolerance = 1e-9;

void check_region(const EvoGame& game, std::size_t v) {
  if (v >= game.regions.size()) throw std::out_of_range("region index " + std::to_string(v) + " out of range");
}

double max_abs(const RateMatrix& m) {
  double out = 0.0;
  for (const auto& row : m) {
    for (double x : row) out = std::max(out, std::abs(x));
  }
  return out;
}

// state + scale * rates
PopulationState offset(const PopulationState& state, const RateMatrix& rates, double scale) {
  PopulationState out = state;
  for (std::size_t p = 0; p < out.shares.size(); ++p) {
    for (std::size_t v = 0; v < out.shares[p].size(); ++v) out.shares[p][v] += scale * rates[p][v];
  }
  return out;
}

// Clamps round-off negatives and renormalizes; returns the drift measured
// before correction.
double project_to_simplex(PopulationState& state) {
  double drift = 0.0;
  for (auto& row : state.shares) {
    double sum = 0.0;
    for (double& x : row) {
      if (x < 0.0) {
        drift = std::max(drift, -x);
        x = 0.0;
      }
      sum += x;
    }
    drift = std::max(drift, std::abs(sum - 1.0));
    if (drift > kSimplexTolerance) return drift;
    for (double& x : row) x /= sum;
  }
  return drift;
}

}  // namespace

std::size_t EvoGame::region_index(const std::string& id) const {
  for (std::size_t v = 0; v < regions.size(); ++v) {
    if (regions[v].id == id) return v;
  }
  throw std::out_of_range("unknown region id '" + id + "'");
}

PopulationState PopulationState::uniform(const EvoGame& game) {
  PopulationState s;
  const double share = game.regions.empty() ? 0.0 : 1.0 / static_cast<double>(game.regions.size());
  s.shares.assign(game.populations.size(), std::vector<double>(game.regions.size(), share));
  return s;
}

double serving_mass(const PopulationState& state, const EvoGame& game, std::size_t v) {
  check_region(game, v);
  double mass = 0.0;
  for (std::size_t p = 0; p < game.populations.size(); ++p) {
    const auto& pop = game.populations[p];
    mass += state.shares[p][v] * static_cast<double>(pop.size) * pop.capability;
  }
  return mass;
}

double serving_mass(const PopulationState& state, const EvoGame& game, const std::string& region_id) {
  return serving_mass(state, game, game.region_index(region_id));
}

double payoff(const PopulationState& state, const EvoGame& game, std::size_t p, std::size_t v) {
  const auto& pop = game.populations.at(p);
  const double mass = serving_mass(state, game, v);
  return pop.capability * game.regions[v].reward_pool / std::max(mass, pop.capability) - pop.cost[v];
}

RateMatrix payoff_matrix(const PopulationState& state, const EvoGame& game) {
  std::vector<double> mass(game.regions.size());
  for (std::size_t v = 0; v < mass.size(); ++v) mass[v] = serving_mass(state, game, v);
  RateMatrix u(game.populations.size(), std::vector<double>(game.regions.size()));
  for (std::size_t p = 0; p < u.size(); ++p) {
    const auto& pop = game.populations[p];
    for (std::size_t v = 0; v < mass.size(); ++v) {
      u[p][v] = pop.capability * game.regions[v].reward_pool / std::max(mass[v], pop.capability) - pop.cost[v];
    }
  }
  return u;
}

RateMatrix replicator_derivative(const PopulationState& state, const EvoGame& game) {
  RateMatrix rates = payoff_matrix(state, game);
  for (std::size_t p = 0; p < rates.size(); ++p) {
    const auto& x = state.shares[p];
    auto& row = rates[p];
    double mean = 0.0;
    for (std::size_t v = 0; v < row.size(); ++v) mean += x[v] * row[v];
    for (std::size_t v = 0; v < row.size(); ++v) row[v] = game.populations[p].learning_rate * x[v] * (row[v] - mean);
  }
  return rates;
}

double sync_frequency(const PopulationState& state, const EvoGame& game, std::size_t v) {
  return game.regions.at(v).sync_coeff * serving_mass(state, game, v);
}

Trajectory evolve(const EvoGame& game, const PopulationState& init, const EvolveOptions& options) {
  if (!(options.step > 0.0)) throw std::invalid_argument("evolve: step must be positive");
  if (options.tol < 0.0) throw std::invalid_argument("evolve: tol must be non-negative");
  if (options.max_steps < 0) throw std::invalid_argument("evolve: max_steps must be non-negative");
  validate_game(game, "game");
  validate_state(init, game, "init");

  const double h = options.step;
  const std::int64_t record_every = std::max<std::int64_t>(1, options.record_every);
  Trajectory traj;
  PopulationState x = init;
  traj.points.push_back({0.0, x});

  RateMatrix k1 = replicator_derivative(x, game);
  std::int64_t step = 0;
  while (true) {
    traj.final_rate = max_abs(k1);
    if (traj.final_rate < options.tol) {
      traj.converged = true;
      break;
    }
    if (step >= options.max_steps) break;

    const RateMatrix k2 = replicator_derivative(offset(x, k1, h / 2), game);
    const RateMatrix k3 = replicator_derivative(offset(x, k2, h / 2), game);
    const RateMatrix k4 = replicator_derivative(offset(x, k3, h), game);
    for (std::size_t p = 0; p < x.shares.size(); ++p) {
      for (std::size_t v = 0; v < x.shares[p].size(); ++v) {
        x.shares[p][v] += h / 6 * (k1[p][v] + 2 * k2[p][v] + 2 * k3[p][v] + k4[p][v]);
      }
    }
    ++step;
    const double drift = project_to_simplex(x);
    traj.max_drift = std::max(traj.max_drift, drift);
    if (drift > kSimplexTolerance) {
      throw SimplexDriftError("simplex drift " + std::to_string(drift) + " at step " + std::to_string(step) +
                              " exceeds 1e-9; reduce the step size");
    }
    k1 = replicator_derivative(x, game);
    if (step % record_every == 0) traj.points.push_back({static_cast<double>(step) * h, x});
  }
  traj.steps = step;
  if (traj.points.back().time != static_cast<double>(step) * h) {
    traj.points.push_back({static_cast<double>(step) * h, x});
  }
  traj.final_payoffs = payoff_matrix(x, game);
  return traj;
}

}  // namespace edgemarket::evo
