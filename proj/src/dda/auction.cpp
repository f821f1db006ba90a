#include "edgemarket/dda/auction.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>

namespace edgemarket::dda {

Bids bids_of(const AuctionInstance& instance) {
  Bids bids;
  for (const auto& b : instance.buyers) bids.valuations.push_back(b.valuation);
  for (const auto& s : instance.sellers) bids.costs.push_back(s.cost);
  return bids;
}

AuctionOutcome run_dda(const Bids& bids, StepPolicy& policy, const PriceBounds& bounds) {
  if (!(bounds.low < bounds.high) || !std::isfinite(bounds.low) || !std::isfinite(bounds.high)) {
    throw std::invalid_argument("run_dda: need finite p_low < p_high");
  }
  const std::size_t n_buyers = bids.valuations.size();
  const std::size_t n_sellers = bids.costs.size();
  const double range = bounds.high - bounds.low;

  AuctionOutcome out;
  double buyer_clock = bounds.high;
  double seller_clock = bounds.low;
  std::vector<bool> buyer_done(n_buyers, false);
  std::vector<bool> seller_done(n_sellers, false);

  while (n_buyers > 0 && n_sellers > 0) {
    const std::size_t nb = out.buyer_claims.size();
    const std::size_t ns = out.seller_claims.size();
    const bool buyer_active = nb <= ns;
    if (buyer_active ? nb == n_buyers : ns == n_sellers) break;

    ClockObservation obs;
    obs.spread = std::clamp((buyer_clock - seller_clock) / range, 0.0, 1.0);
    obs.buyers_claimed = static_cast<double>(nb) / static_cast<double>(n_buyers);
    obs.sellers_claimed = static_cast<double>(ns) / static_cast<double>(n_sellers);
    obs.buyer_clock_active = buyer_active;
    obs.round = out.rounds;
    const double step = policy.next_step(obs);
    if (!(step > 0.0) || !std::isfinite(step)) throw std::logic_error("run_dda: controller produced a non-positive step");

    if (buyer_active) {
      buyer_clock -= step;
    } else {
      seller_clock += step;
    }
    ++out.rounds;

    for (std::size_t i = 0; i < n_buyers; ++i) {
      if (!buyer_done[i] && bids.valuations[i] >= buyer_clock) {
        buyer_done[i] = true;
        out.buyer_claims.push_back({i, buyer_clock, out.rounds});
      }
    }
    for (std::size_t j = 0; j < n_sellers; ++j) {
      if (!seller_done[j] && bids.costs[j] <= seller_clock) {
        seller_done[j] = true;
        out.seller_claims.push_back({j, seller_clock, out.rounds});
      }
    }
    if (buyer_clock <= seller_clock) break;
  }
  out.buyer_clock = buyer_clock;
  out.seller_clock = seller_clock;

  const std::size_t pairs = std::min(out.buyer_claims.size(), out.seller_claims.size());
  std::size_t kept = 0;
  while (kept < pairs && out.buyer_claims[kept].price >= out.seller_claims[kept].price) ++kept;
  if (kept > 0) {
    const double lo = out.seller_claims[kept - 1].price;
    const double hi = out.buyer_claims[kept - 1].price;
    out.clearing_price = std::clamp(0.5 * (buyer_clock + seller_clock), lo, hi);
    for (std::size_t k = 0; k < kept; ++k) {
      const Match m{out.buyer_claims[k].agent, out.seller_claims[k].agent, out.clearing_price};
      out.matches.push_back(m);
      out.welfare += bids.valuations[m.buyer] - bids.costs[m.seller];
      out.payments += m.price;
      out.receipts += m.price;
    }
  }
  out.messages = out.rounds * static_cast<std::int64_t>(n_buyers + n_sellers) +
                 static_cast<std::int64_t>(out.buyer_claims.size() + out.seller_claims.size());
  return out;
}

AuctionOutcome run_dda(const Bids& bids, const ClockController& controller, const PriceBounds& bounds,
                       std::string_view run_tag) {
  auto policy = controller.start(run_tag);
  return run_dda(bids, *policy, bounds);
}

AuctionOutcome run_dda(const std::vector<VrUser>& buyers, const std::vector<EdgeSeller>& sellers,
                       const ClockController& controller, double p_low, double p_high) {
  Bids bids;
  for (const auto& b : buyers) bids.valuations.push_back(b.valuation);
  for (const auto& s : sellers) bids.costs.push_back(s.cost);
  return run_dda(bids, controller, PriceBounds{p_low, p_high});
}

double oracle_max_welfare(std::span<const double> valuations, std::span<const double> costs) {
  std::vector<double> v(valuations.begin(), valuations.end());
  std::vector<double> c(costs.begin(), costs.end());
  std::sort(v.begin(), v.end(), std::greater<>());
  std::sort(c.begin(), c.end());
  double total = 0.0;
  for (std::size_t k = 0; k < std::min(v.size(), c.size()) && v[k] >= c[k]; ++k) total += v[k] - c[k];
  return total;
}

double oracle_max_welfare(const Bids& bids) { return oracle_max_welfare(bids.valuations, bids.costs); }

double agent_utility(const AuctionOutcome& outcome, AgentRef agent, double true_value) {
  for (const auto& m : outcome.matches) {
    if (agent.side == Side::buyer && m.buyer == agent.index) return true_value - m.price;
    if (agent.side == Side::seller && m.seller == agent.index) return m.price - true_value;
  }
  return 0.0;
}

double truthfulness_probe(const Bids& truth, AgentRef agent, double misreport, const ClockController& controller,
                          const PriceBounds& bounds) {
  const auto& values = agent.side == Side::buyer ? truth.valuations : truth.costs;
  if (agent.index >= values.size()) throw std::out_of_range("truthfulness_probe: unknown agent");
  const double true_value = values[agent.index];

  Bids reported = truth;
  (agent.side == Side::buyer ? reported.valuations : reported.costs)[agent.index] = misreport;

  const double honest = agent_utility(run_dda(truth, controller, bounds), agent, true_value);
  const double deviant = agent_utility(run_dda(reported, controller, bounds), agent, true_value);
  return deviant - honest;
}

}  // namespace edgemarket::dda
