#pragma once

#include <string>
#include <vector>

#include "edgemarket/core/table.hpp"
#include "edgemarket/sip/model.hpp"
#include "edgemarket/sip/solver.hpp"

namespace edgemarket::sip {

struct SchemeResult {
  std::string instance;
  std::string scheme;  // "sip", "evf" or "avg"
  Solution solution;
};

struct SchemeAggregate {
  std::string scheme;
  double mean_first_stage = 0.0;
  double mean_on_demand = 0.0;
  double mean_total = 0.0;
};

struct SchemeComparison {
  std::vector<SchemeResult> results;        // instance-major, schemes in sip/evf/avg order
  std::vector<SchemeAggregate> aggregate;   // sip, evf, avg
  std::vector<std::string> violations;      // instances where SIP costs more than a baseline
};

/// Solves every (prepared) instance with all three schemes. Instances run
/// concurrently; results are assembled in instance order.
SchemeComparison compare_schemes(const std::vector<SipInstance>& instances);
SchemeComparison compare_schemes_serial(const std::vector<SipInstance>& instances);

/// Columns: instance, scheme, first_stage, on_demand, total.
Table results_table(const std::vector<SchemeResult>& results);
Table aggregate_table(const SchemeComparison& comparison);

}  // namespace edgemarket::sip
