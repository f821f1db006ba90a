#pragma once

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "edgemarket/dda/controller.hpp"
#include "edgemarket/dda/model.hpp"

namespace edgemarket::dda {

/// Reported values entering one auction, indexed like the agent lists.
struct Bids {
  std::vector<double> valuations;
  std::vector<double> costs;
  bool operator==(const Bids&) const = default;
};

Bids bids_of(const AuctionInstance& instance);

struct Claim {
  std::size_t agent = 0;
  double price = 0.0;
  std::int64_t round = 0;
  bool operator==(const Claim&) const = default;
};

struct Match {
  std::size_t buyer = 0;
  std::size_t seller = 0;
  double price = 0.0;
  bool operator==(const Match&) const = default;
};

struct AuctionOutcome {
  std::vector<Match> matches;
  std::vector<Claim> buyer_claims;   // in claim order
  std::vector<Claim> seller_claims;
  std::int64_t rounds = 0;
  std::int64_t messages = 0;
  double welfare = 0.0;
  double clearing_price = 0.0;
  double buyer_clock = 0.0;   // final clock positions
  double seller_clock = 0.0;
  double payments = 0.0;      // total paid by matched buyers
  double receipts = 0.0;      // total received by matched sellers
  bool operator==(const AuctionOutcome&) const = default;
};

/// Double Dutch Auction.
///
/// The buyer clock descends from p_high and the seller clock ascends from
/// p_low. The buyer clock is active while claimed buyers do not outnumber
/// claimed sellers, otherwise the seller clock is; each round moves the active
/// clock by the policy's step. After every move each unclaimed buyer with
/// valuation >= buyer clock claims at the buyer clock and each unclaimed
/// seller with cost <= seller clock claims at the seller clock, ties in input
/// order. The auction stops when the clocks cross or the active side has no
/// unclaimed agents left.
///
/// The i-th claimed buyer is paired with the i-th claimed seller; a pair whose
/// buyer claim is below its seller claim is dropped. All kept pairs trade at
/// one clearing price: the midpoint of the final clocks clamped into
/// [last kept seller claim, last kept buyer claim].
///
/// messages = rounds * (buyers + sellers) + claims.
AuctionOutcome run_dda(const Bids& bids, StepPolicy& policy, const PriceBounds& bounds);
AuctionOutcome run_dda(const Bids& bids, const ClockController& controller, const PriceBounds& bounds,
                       std::string_view run_tag = {});
AuctionOutcome run_dda(const std::vector<VrUser>& buyers, const std::vector<EdgeSeller>& sellers,
                       const ClockController& controller, double p_low, double p_high);

/// Efficient welfare: sort valuations descending, costs ascending, and sum
/// the positive-spread prefix.
double oracle_max_welfare(std::span<const double> valuations, std::span<const double> costs);
double oracle_max_welfare(const Bids& bids);

enum class Side { buyer, seller };

struct AgentRef {
  Side side = Side::buyer;
  std::size_t index = 0;
};

/// Quasi-linear utility of `agent` in `outcome`, evaluated at its true value.
double agent_utility(const AuctionOutcome& outcome, AgentRef agent, double true_value);

/// Utility gain of `agent` from reporting `misreport` instead of its true
/// value while every other agent reports truthfully.
double truthfulness_probe(const Bids& truth, AgentRef agent, double misreport, const ClockController& controller,
                          const PriceBounds& bounds);

}  // namespace edgemarket::dda
