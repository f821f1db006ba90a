#include "edgemarket/dda/qoe.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace edgemarket::dda {

PerceptualScores perceptual_scores(double bitrate, double head_speed, const QoeParams& params) {
  if (bitrate < 0.0 || head_speed < 0.0) {
    throw std::invalid_argument("perceptual_scores: bitrate and head speed must be non-negative");
  }
  const double effective = bitrate / (1.0 + params.beta * head_speed);
  return {100.0 * -std::expm1(-params.alpha * effective), -std::expm1(-params.gamma * effective)};
}

double buyer_valuation(const VrUser& user, const QoeParams& params) {
  const auto s = perceptual_scores(user.bitrate, user.head_speed, params);
  return params.lambda * (params.w_vmaf * s.vmaf / 100.0 + params.w_ssim * s.ssim);
}

double seller_cost(const EdgeSeller& seller, double bitrate) {
  if (bitrate < 0.0) throw std::invalid_argument("seller_cost: bitrate must be non-negative");
  return seller.energy_price * bitrate + seller.base_cost;
}

void price_instance(AuctionInstance& instance) {
  double bitrate = 0.0;
  for (auto& b : instance.buyers) {
    b.valuation = buyer_valuation(b, instance.qoe);
    bitrate = std::max(bitrate, b.bitrate);
  }
  for (auto& s : instance.sellers) s.cost = seller_cost(s, bitrate);
}

}  // namespace edgemarket::dda
