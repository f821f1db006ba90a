#pragma once

#include "edgemarket/dda/model.hpp"

namespace edgemarket::dda {

struct PerceptualScores {
  double vmaf = 0.0;  // [0, 100]
  double ssim = 0.0;  // [0, 1]
};

/// Saturating-exponential proxies; the effective rate b / (1 + beta * omega)
/// shrinks with head rotation speed.
PerceptualScores perceptual_scores(double bitrate, double head_speed, const QoeParams& params);

/// lambda * (w_vmaf * VMAF / 100 + w_ssim * SSIM), in [0, lambda].
double buyer_valuation(const VrUser& user, const QoeParams& params);

/// energy_price * bitrate + base_cost.
double seller_cost(const EdgeSeller& seller, double bitrate);

/// Fills the cached valuation/cost fields. Sellers are costed at the highest
/// bitrate any buyer in the instance requests.
void price_instance(AuctionInstance& instance);

}  // namespace edgemarket::dda
