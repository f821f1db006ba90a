#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "edgemarket/sip/model.hpp"

namespace edgemarket::sip {

struct ScenarioCost {
  std::vector<std::int64_t> on_demand;  // y[r] = max(0, d[r] - x[r])
  double cost = 0.0;                    // on-demand spend in this scenario
  std::int64_t over_provisioned = 0;    // sum_r max(0, x[r] - d[r])
  std::int64_t under_provisioned = 0;   // sum_r y[r]
};

struct CostReport {
  double first_stage_cost = 0.0;
  double expected_on_demand_cost = 0.0;
  double expected_total = 0.0;
  std::vector<ScenarioCost> scenarios;
};

struct Solution {
  ReservationPlan plan;
  CostReport report;
};

/// Spend is compared against a budget with this relative slack.
inline constexpr double kBudgetSlack = 1e-9;

double plan_spend(const ReservationPlan& plan, const std::vector<ResourceType>& resources);
bool within_budget(const ReservationPlan& plan, const std::vector<ResourceType>& resources,
                   std::optional<double> budget);

/// first_stage + sum_w pi_w sum_r p_od[r] * max(0, d[r,w] - x[r]).
CostReport evaluate_plan(const ReservationPlan& plan, const DemandModel& demand,
                         const std::vector<ResourceType>& resources);

/// Expected cost contributed by resource r alone at reservation level x.
double resource_cost(const ResourceType& resource, const DemandModel& demand, std::size_t r, std::int64_t x);

using DemandMarginal = std::vector<std::pair<std::int64_t, double>>;  // (demand, probability), merged and sorted
DemandMarginal marginal_of(const DemandModel& demand, std::size_t r);

/// Smallest x with P(d > x) <= p_res / p_od, i.e. the smallest minimizer of
/// the convex per-resource cost. 0 when reserving is not cheaper.
std::int64_t newsvendor_quantile(const ResourceType& resource, const DemandMarginal& marginal);

/// Smallest minimizer of resource_cost over [0, max demand], by enumeration.
std::int64_t enumerate_argmin(const ResourceType& resource, const DemandModel& demand, std::size_t r);

/// Exact optimum. Without a budget each resource is solved by its newsvendor
/// quantile (cross-checked by enumeration). With a budget, a dynamic program
/// over Pareto frontiers of (spend, cost) returns the lexicographically
/// smallest optimal plan.
Solution solve_sip(const DemandModel& demand, const std::vector<ResourceType>& resources,
                   std::optional<double> budget = std::nullopt);

/// Plans for round-half-up(E[d]); see reduce_to_budget.
Solution solve_evf(const DemandModel& demand, const std::vector<ResourceType>& resources,
                   std::optional<double> budget = std::nullopt);

/// Plans for round-half-up of the trace's per-resource sample mean, scored
/// against the scenario model.
Solution solve_average_historical(const std::vector<DemandVector>& trace, const DemandModel& demand,
                                  const std::vector<ResourceType>& resources,
                                  std::optional<double> budget = std::nullopt);

std::int64_t round_half_up(double value);

/// Decrements reservations of the most expensive resources first (by reserved
/// price, ties by lower index) until the plan fits the budget.
void reduce_to_budget(ReservationPlan& plan, const std::vector<ResourceType>& resources, double budget);

}  // namespace edgemarket::sip
