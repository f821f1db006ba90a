#pragma once

#include <string>
#include <vector>

#include "edgemarket/core/rng.hpp"
#include "edgemarket/core/table.hpp"
#include "edgemarket/dda/auction.hpp"
#include "edgemarket/dda/controller.hpp"
#include "edgemarket/dda/qlearning.hpp"

namespace edgemarket::dda {

/// One priced random instance: every buyer requests `bitrate`.
AuctionInstance generate_instance(const GeneratorSpec& spec, const QoeParams& qoe, const PriceBounds& bounds,
                                  double bitrate, RngStream& rng);

/// instances_per_bitrate instances per grid bitrate, bitrate-major order.
/// Instance k at bitrate index i draws from substream "b<i>/i<k>".
std::vector<AuctionInstance> generate_family(const GeneratorSpec& spec, const QoeParams& qoe,
                                             const PriceBounds& bounds, const RngStream& rng);

/// Training generator drawing a random grid bitrate per episode.
InstanceGenerator family_generator(const GeneratorSpec& spec, const QoeParams& qoe, const PriceBounds& bounds);

double instance_bitrate(const AuctionInstance& instance);

struct RunRecord {
  std::string controller;
  std::string instance;
  double bitrate = 0.0;
  double welfare = 0.0;
  double oracle_welfare = 0.0;
  std::int64_t rounds = 0;
  std::int64_t messages = 0;
  bool operator==(const RunRecord&) const = default;
};

struct ControllerSummary {
  std::string controller;
  double mean_welfare = 0.0;
  double mean_ratio = 0.0;  // mean of welfare / oracle, 1 when oracle is 0
  double mean_rounds = 0.0;
  double mean_messages = 0.0;
  bool operator==(const ControllerSummary&) const = default;
};

struct Comparison {
  std::vector<RunRecord> runs;  // controller-major, then instance order
  std::vector<ControllerSummary> summary;  // one row per controller, input order
  bool operator==(const Comparison&) const = default;
};

/// Runs every controller on every instance; instance runs are independent
/// and execute concurrently. Run (c, i) uses OU substream "<instance name>".
Comparison compare_controllers(const std::vector<AuctionInstance>& instances,
                               const std::vector<ClockController>& controllers);
Comparison compare_controllers_serial(const std::vector<AuctionInstance>& instances,
                                      const std::vector<ClockController>& controllers);

/// Per-(controller, bitrate) aggregates of a comparison.
struct BitrateSummary {
  std::string controller;
  double bitrate = 0.0;
  ControllerSummary stats;
};
std::vector<BitrateSummary> summarize_by_bitrate(const Comparison& comparison);

Table runs_table(const std::vector<RunRecord>& runs);
Table summary_table(const std::vector<ControllerSummary>& summary);
Table bitrate_table(const std::vector<BitrateSummary>& rows);

}  // namespace edgemarket::dda
