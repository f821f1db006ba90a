#include "edgemarket/sip/compare.hpp"

#include <algorithm>
#include <array>
#include <stdexcept>

#include "edgemarket/core/parallel.hpp"

namespace edgemarket::sip {

namespace {

constexpr std::array<const char*, 3> kSchemes = {"sip", "evf", "avg"};

std::array<SchemeResult, 3> solve_all(const SipInstance& inst) {
  return {SchemeResult{inst.name, "sip", solve_sip(inst.demand, inst.resources, inst.budget)},
          SchemeResult{inst.name, "evf", solve_evf(inst.demand, inst.resources, inst.budget)},
          SchemeResult{inst.name, "avg",
                       solve_average_historical(inst.demand.trace, inst.demand, inst.resources, inst.budget)}};
}

SchemeComparison assemble(const std::vector<std::array<SchemeResult, 3>>& per_instance) {
  SchemeComparison c;
  for (std::size_t k = 0; k < kSchemes.size(); ++k) c.aggregate.push_back({kSchemes[k], 0.0, 0.0, 0.0});
  for (const auto& trio : per_instance) {
    const double sip_total = trio[0].solution.report.expected_total;
    bool violated = false;
    for (std::size_t k = 0; k < trio.size(); ++k) {
      const auto& rep = trio[k].solution.report;
      c.aggregate[k].mean_first_stage += rep.first_stage_cost;
      c.aggregate[k].mean_on_demand += rep.expected_on_demand_cost;
      c.aggregate[k].mean_total += rep.expected_total;
      if (k > 0 && sip_total > rep.expected_total + 1e-9 * std::max(1.0, rep.expected_total)) violated = true;
      c.results.push_back(trio[k]);
    }
    if (violated) c.violations.push_back(trio[0].instance);
  }
  const double n = static_cast<double>(per_instance.size());
  for (auto& a : c.aggregate) {
    a.mean_first_stage /= n;
    a.mean_on_demand /= n;
    a.mean_total /= n;
  }
  return c;
}

}  // namespace

SchemeComparison compare_schemes(const std::vector<SipInstance>& instances) {
  if (instances.empty()) throw std::invalid_argument("compare_schemes: at least one instance is required");
  std::vector<std::array<SchemeResult, 3>> per_instance(instances.size());
  parallel_for(instances.size(), [&](std::size_t i) { per_instance[i] = solve_all(instances[i]); });
  return assemble(per_instance);
}

SchemeComparison compare_schemes_serial(const std::vector<SipInstance>& instances) {
  if (instances.empty()) throw std::invalid_argument("compare_schemes: at least one instance is required");
  std::vector<std::array<SchemeResult, 3>> per_instance;
  for (const auto& inst : instances) per_instance.push_back(solve_all(inst));
  return assemble(per_instance);
}

Table results_table(const std::vector<SchemeResult>& results) {
  Table t;
  t.columns = {"instance", "scheme", "first_stage", "on_demand", "total"};
  for (const auto& r : results) {
    const auto& rep = r.solution.report;
    t.add_row({r.instance, r.scheme, rep.first_stage_cost, rep.expected_on_demand_cost, rep.expected_total});
  }
  return t;
}

Table aggregate_table(const SchemeComparison& comparison) {
  Table t;
  t.columns = {"scheme", "mean_first_stage", "mean_on_demand", "mean_total", "violations"};
  for (const auto& a : comparison.aggregate) {
    t.add_row({a.scheme, a.mean_first_stage, a.mean_on_demand, a.mean_total,
               static_cast<std::int64_t>(a.scheme == std::string("sip") ? comparison.violations.size() : 0)});
  }
  return t;
}

}  // namespace edgemarket::sip
