#include "edgemarket/sip/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <stdexcept>

#include "edgemarket/core/config.hpp"
#include "edgemarket/core/error.hpp"

namespace edgemarket::sip {

void DemandModel::validate(std::size_t resources) const {
  if (scenarios.empty()) throw std::invalid_argument("demand model: empty scenario set");
  double sum = 0.0;
  for (const auto& s : scenarios) {
    if (s.demand.size() != resources) throw std::invalid_argument("demand model: dimension mismatch");
    if (!(s.probability > 0.0)) throw std::invalid_argument("demand model: probabilities must be positive");
    for (auto d : s.demand) {
      if (d < 0) throw std::invalid_argument("demand model: negative demand");
    }
    sum += s.probability;
  }
  if (std::abs(sum - 1.0) > 1e-9) throw std::invalid_argument("demand model: probabilities do not sum to 1");
  for (const auto& t : trace) {
    if (t.size() != resources) throw std::invalid_argument("demand model: trace dimension mismatch");
  }
}

std::int64_t DemandModel::max_demand(std::size_t r) const {
  std::int64_t m = 0;
  for (const auto& s : scenarios) m = std::max(m, s.demand.at(r));
  return m;
}

double DemandModel::mean_demand(std::size_t r) const {
  double m = 0.0;
  for (const auto& s : scenarios) m += s.probability * static_cast<double>(s.demand.at(r));
  return m;
}

namespace {

void check_dimensions(const DemandModel& demand, const std::vector<ResourceType>& resources) {
  if (resources.empty()) throw std::invalid_argument("at least one resource is required");
  demand.validate(resources.size());
}

double cost_tolerance(double value) { return 1e-9 * std::max(1.0, std::abs(value)); }

double budget_limit(double budget) { return budget + kBudgetSlack * std::max(1.0, std::abs(budget)); }

Solution finish(ReservationPlan plan, const DemandModel& demand, const std::vector<ResourceType>& resources) {
  CostReport report = evaluate_plan(plan, demand, resources);
  return {std::move(plan), std::move(report)};
}

struct FrontierPoint {
  double spend;
  double cost;
};

// Pareto-minimal (spend, cost) points, ascending spend, strictly descending cost.
std::vector<FrontierPoint> prune(std::vector<FrontierPoint> points) {
  std::sort(points.begin(), points.end(), [](const FrontierPoint& a, const FrontierPoint& b) {
    return a.spend < b.spend || (a.spend == b.spend && a.cost < b.cost);
  });
  std::vector<FrontierPoint> out;
  for (const auto& p : points) {
    if (out.empty() || p.cost < out.back().cost) out.push_back(p);
  }
  return out;
}

double best_within(const std::vector<FrontierPoint>& frontier, double budget) {
  double best = std::numeric_limits<double>::infinity();
  const double limit = budget_limit(budget);
  for (const auto& p : frontier) {
    if (p.spend > limit) break;
    best = p.cost;  // costs descend along the frontier
  }
  return best;
}

Solution solve_budgeted(const DemandModel& demand, const std::vector<ResourceType>& resources, double budget) {
  const std::size_t n = resources.size();
  std::vector<std::vector<double>> curve(n);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::int64_t x = 0; x <= demand.max_demand(r); ++x) curve[r].push_back(resource_cost(resources[r], demand, r, x));
  }
  // frontier[r] covers resources r..n-1
  std::vector<std::vector<FrontierPoint>> frontier(n + 1);
  frontier[n] = {{0.0, 0.0}};
  const double limit = budget_limit(budget);
  for (std::size_t r = n; r-- > 0;) {
    std::vector<FrontierPoint> points;
    for (std::size_t x = 0; x < curve[r].size(); ++x) {
      const double spend = resources[r].price_reserved * static_cast<double>(x);
      for (const auto& tail : frontier[r + 1]) {
        if (spend + tail.spend > limit) break;
        points.push_back({spend + tail.spend, curve[r][x] + tail.cost});
      }
    }
    frontier[r] = prune(std::move(points));
  }

  ReservationPlan plan;
  double remaining = budget;
  for (std::size_t r = 0; r < n; ++r) {
    const double optimum = best_within(frontier[r], remaining);
    std::int64_t chosen = -1;
    for (std::size_t x = 0; x < curve[r].size(); ++x) {
      const double spend = resources[r].price_reserved * static_cast<double>(x);
      if (spend > budget_limit(remaining)) break;
      const double total = curve[r][x] + best_within(frontier[r + 1], remaining - spend);
      if (total <= optimum + cost_tolerance(optimum)) {
        chosen = static_cast<std::int64_t>(x);
        break;
      }
    }
    if (chosen < 0) throw std::logic_error("solve_sip: budget reconstruction failed");
    plan.reserved.push_back(chosen);
    remaining -= resources[r].price_reserved * static_cast<double>(chosen);
  }
  return finish(std::move(plan), demand, resources);
}

}  // namespace

double plan_spend(const ReservationPlan& plan, const std::vector<ResourceType>& resources) {
  double spend = 0.0;
  for (std::size_t r = 0; r < resources.size(); ++r) {
    spend += resources[r].price_reserved * static_cast<double>(plan.reserved.at(r));
  }
  return spend;
}

bool within_budget(const ReservationPlan& plan, const std::vector<ResourceType>& resources,
                   std::optional<double> budget) {
  return !budget || plan_spend(plan, resources) <= budget_limit(*budget);
}

CostReport evaluate_plan(const ReservationPlan& plan, const DemandModel& demand,
                         const std::vector<ResourceType>& resources) {
  check_dimensions(demand, resources);
  if (plan.reserved.size() != resources.size()) throw std::invalid_argument("evaluate_plan: dimension mismatch");
  for (auto x : plan.reserved) {
    if (x < 0) throw std::invalid_argument("evaluate_plan: negative reservation");
  }
  CostReport report;
  report.first_stage_cost = plan_spend(plan, resources);
  for (const auto& s : demand.scenarios) {
    ScenarioCost sc;
    for (std::size_t r = 0; r < resources.size(); ++r) {
      const std::int64_t y = std::max<std::int64_t>(0, s.demand[r] - plan.reserved[r]);
      sc.on_demand.push_back(y);
      sc.cost += resources[r].price_on_demand * static_cast<double>(y);
      sc.under_provisioned += y;
      sc.over_provisioned += std::max<std::int64_t>(0, plan.reserved[r] - s.demand[r]);
    }
    report.expected_on_demand_cost += s.probability * sc.cost;
    report.scenarios.push_back(std::move(sc));
  }
  report.expected_total = report.first_stage_cost + report.expected_on_demand_cost;
  return report;
}

double resource_cost(const ResourceType& resource, const DemandModel& demand, std::size_t r, std::int64_t x) {
  double shortfall = 0.0;
  for (const auto& s : demand.scenarios) {
    shortfall += s.probability * static_cast<double>(std::max<std::int64_t>(0, s.demand.at(r) - x));
  }
  return resource.price_reserved * static_cast<double>(x) + resource.price_on_demand * shortfall;
}

DemandMarginal marginal_of(const DemandModel& demand, std::size_t r) {
  std::map<std::int64_t, double> merged;
  for (const auto& s : demand.scenarios) merged[s.demand.at(r)] += s.probability;
  return {merged.begin(), merged.end()};
}

std::int64_t newsvendor_quantile(const ResourceType& resource, const DemandMarginal& marginal) {
  if (resource.price_reserved >= resource.price_on_demand) return 0;
  const double ratio = resource.price_reserved / resource.price_on_demand;
  const double slack = 1e-12;
  // tail[k] = P(d > value_k), accumulated from the top for accuracy
  std::vector<double> tail(marginal.size(), 0.0);
  double above = 0.0;
  for (std::size_t k = marginal.size(); k-- > 0;) {
    tail[k] = above;
    above += marginal[k].second;
  }
  if (marginal.empty()) return 0;
  // P(d > 0): all mass above zero
  double tail_zero = above;
  if (marginal.front().first == 0) tail_zero = tail[0];
  if (tail_zero <= ratio + slack) return 0;
  for (std::size_t k = 0; k < marginal.size(); ++k) {
    if (tail[k] <= ratio + slack) return marginal[k].first;
  }
  return marginal.back().first;
}

std::int64_t enumerate_argmin(const ResourceType& resource, const DemandModel& demand, std::size_t r) {
  const std::int64_t hi = demand.max_demand(r);
  std::vector<double> cost;
  for (std::int64_t x = 0; x <= hi; ++x) cost.push_back(resource_cost(resource, demand, r, x));
  const double best = *std::min_element(cost.begin(), cost.end());
  for (std::size_t x = 0; x < cost.size(); ++x) {
    if (cost[x] <= best + cost_tolerance(best)) return static_cast<std::int64_t>(x);
  }
  return 0;
}

Solution solve_sip(const DemandModel& demand, const std::vector<ResourceType>& resources,
                   std::optional<double> budget) {
  check_dimensions(demand, resources);
  if (budget) {
    if (*budget < 0.0) throw std::invalid_argument("solve_sip: infeasible, budget is negative");
    return solve_budgeted(demand, resources, *budget);
  }
  ReservationPlan plan;
  for (std::size_t r = 0; r < resources.size(); ++r) {
    const std::int64_t x = newsvendor_quantile(resources[r], marginal_of(demand, r));
    if (x != enumerate_argmin(resources[r], demand, r)) {
      throw std::logic_error("solve_sip: newsvendor quantile disagrees with enumeration for resource " +
                             resources[r].id);
    }
    plan.reserved.push_back(x);
  }
  return finish(std::move(plan), demand, resources);
}

std::int64_t round_half_up(double value) { return static_cast<std::int64_t>(std::floor(value + 0.5 + 1e-9)); }

void reduce_to_budget(ReservationPlan& plan, const std::vector<ResourceType>& resources, double budget) {
  if (budget < 0.0) throw std::invalid_argument("budget is negative");
  std::vector<std::size_t> order(resources.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return resources[a].price_reserved > resources[b].price_reserved;
  });
  for (std::size_t r : order) {
    while (plan.reserved[r] > 0 && !within_budget(plan, resources, budget)) --plan.reserved[r];
  }
}

Solution solve_evf(const DemandModel& demand, const std::vector<ResourceType>& resources,
                   std::optional<double> budget) {
  check_dimensions(demand, resources);
  ReservationPlan plan;
  for (std::size_t r = 0; r < resources.size(); ++r) plan.reserved.push_back(round_half_up(demand.mean_demand(r)));
  if (budget) reduce_to_budget(plan, resources, *budget);
  return finish(std::move(plan), demand, resources);
}

Solution solve_average_historical(const std::vector<DemandVector>& trace, const DemandModel& demand,
                                  const std::vector<ResourceType>& resources, std::optional<double> budget) {
  if (trace.empty()) throw std::invalid_argument("solve_average_historical: empty trace");
  check_dimensions(demand, resources);
  ReservationPlan plan;
  for (std::size_t r = 0; r < resources.size(); ++r) {
    double sum = 0.0;
    for (const auto& t : trace) {
      if (t.size() != resources.size()) throw std::invalid_argument("solve_average_historical: dimension mismatch");
      sum += static_cast<double>(t[r]);
    }
    plan.reserved.push_back(round_half_up(sum / static_cast<double>(trace.size())));
  }
  if (budget) reduce_to_budget(plan, resources, *budget);
  return finish(std::move(plan), demand, resources);
}

}  // namespace edgemarket::sip
