#include <stdexcept>

#include "edgemarket/core/parallel.hpp"
#include "edgemarket/evo/replicator.hpp"

namespace edgemarket::evo {

namespace {

SweepRow sweep_point(const EvoConfig& config, std::size_t region, double reward) {
  EvoGame game = config.game;
  game.regions[region].reward_pool = reward;
  const Trajectory traj = evolve(game, config.initial_state(), config.options);
  SweepRow row;
  row.reward = reward;
  row.equilibrium = traj.final_state();
  row.converged = traj.converged;
  for (std::size_t v = 0; v < game.regions.size(); ++v) {
    row.mass.push_back(serving_mass(row.equilibrium, game, v));
    row.frequency.push_back(sync_frequency(row.equilibrium, game, v));
  }
  return row;
}

std::size_t checked_region(const EvoConfig& config, const std::string& region_id,
                           const std::vector<double>& grid) {
  const std::size_t v = config.game.region_index(region_id);
  for (double r : grid) {
    if (r < 0.0) throw std::invalid_argument("reward_sweep: grid values must be non-negative");
  }
  return v;
}

}  // namespace

std::vector<SweepRow> reward_sweep(const EvoConfig& config, const std::string& region_id,
                                   const std::vector<double>& grid) {
  const std::size_t v = checked_region(config, region_id, grid);
  std::vector<SweepRow> rows(grid.size());
  parallel_for(grid.size(), [&](std::size_t i) { rows[i] = sweep_point(config, v, grid[i]); });
  return rows;
}

std::vector<SweepRow> reward_sweep_serial(const EvoConfig& config, const std::string& region_id,
                                          const std::vector<double>& grid) {
  const std::size_t v = checked_region(config, region_id, grid);
  std::vector<SweepRow> rows;
  rows.reserve(grid.size());
  for (double r : grid) rows.push_back(sweep_point(config, v, r));
  return rows;
}

}  // namespace edgemarket::evo
