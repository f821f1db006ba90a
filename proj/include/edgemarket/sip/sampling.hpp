#pragma once

#include <cstdint>

#include "edgemarket/core/rng.hpp"
#include "edgemarket/sip/model.hpp"

namespace edgemarket::sip {

/// n equiprobable scenarios. Marginals are sampled independently per
/// resource (normals rounded half-up and clamped at 0); an empirical spec
/// resamples trace rows with replacement, except that n == trace length
/// returns the trace itself in order.
DemandModel sample_scenarios(const DistributionSpec& spec, std::int64_t n, RngStream& rng);

/// Draws `count` demand vectors from the scenario model.
std::vector<DemandVector> sample_trace(const DemandModel& demand, std::int64_t count, RngStream& rng);

/// Fills sampled scenarios (substream "scenarios") when the instance carries
/// a distribution, and a trace (substream "trace") when it has none.
SipInstance prepare_instance(SipInstance instance, std::int64_t trace_length, const RngStream& rng);

/// Random desk-scale instance: 1..max_resources resources, 1..max_scenarios
/// scenarios with demands in [0, max_demand], random prices, optional budget.
SipInstance random_instance(const RandomInstanceSpec& spec, RngStream& rng, std::string name);

}  // namespace edgemarket::sip
