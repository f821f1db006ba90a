#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "edgemarket/evo/model.hpp"

namespace edgemarket::evo {

using RateMatrix = std::vector<std::vector<double>>;  // [population][region]

/// Capability-weighted mass serving region v: sum_p x[p][v] * N_p * w_p.
double serving_mass(const PopulationState& state, const EvoGame& game, std::size_t v);
double serving_mass(const PopulationState& state, const EvoGame& game, const std::string& region_id);

/// Per-provider payoff of population p on region v. The reward pool is split
/// in proportion to capability; the mass is clamped below at w_p so a lone
/// deviator onto an empty region collects the whole pool.
double payoff(const PopulationState& state, const EvoGame& game, std::size_t p, std::size_t v);
RateMatrix payoff_matrix(const PopulationState& state, const EvoGame& game);

/// dx[p][v]/dt = delta_p * x[p][v] * (u[p][v] - mean_v u[p][.]).
RateMatrix replicator_derivative(const PopulationState& state, const EvoGame& game);

/// Uploads per epoch: kappa_v * n_v.
double sync_frequency(const PopulationState& state, const EvoGame& game, std::size_t v);

struct TrajectoryPoint {
  double time = 0.0;
  PopulationState state;
};

struct Trajectory {
  std::vector<TrajectoryPoint> points;  // strictly increasing times, last is final
  bool converged = false;
  std::int64_t steps = 0;
  double max_drift = 0.0;   // largest pre-renormalization simplex error seen
  double final_rate = 0.0;  // max |dx/dt| at the final state
  RateMatrix final_payoffs;

  const PopulationState& final_state() const { return points.back().state; }
};

/// Fixed-step RK4 on the replicator ODE until max |dx/dt| < tol or max_steps.
/// Throws SimplexDriftError if a step leaves the simplex by more than 1e-9.
Trajectory evolve(const EvoGame& game, const PopulationState& init, const EvolveOptions& options);

struct SweepRow {
  double reward = 0.0;
  PopulationState equilibrium;
  std::vector<double> mass;       // per region
  std::vector<double> frequency;  // per region
  bool converged = false;
};

/// Re-runs evolve with region `region_id`'s reward pool set to each grid
/// value. Grid points run concurrently; rows come back in grid order.
std::vector<SweepRow> reward_sweep(const EvoConfig& config, const std::string& region_id,
                                   const std::vector<double>& grid);
/// Sequential reference for reward_sweep.
std::vector<SweepRow> reward_sweep_serial(const EvoConfig& config, const std::string& region_id,
                                          const std::vector<double>& grid);

}  // namespace edgemarket::evo
