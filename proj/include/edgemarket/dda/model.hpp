#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace edgemarket::dda {

/// Parametric perceptual model: saturating VMAF/SSIM proxies in bitrate with
/// a head-motion penalty, blended into a currency valuation.
struct QoeParams {
  double alpha = 0.02;   // per Mbit/s, streaming-quality proxy
  double gamma = 0.05;   // per Mbit/s, image-quality proxy
  double beta = 1.0;     // per rad/s, head-motion penalty
  double w_vmaf = 0.5;
  double w_ssim = 0.5;
  double lambda = 10.0;  // currency per unit QoE
  bool operator==(const QoeParams&) const = default;
};

struct VrUser {
  std::string id;
  double head_speed = 0.0;  // rad/s
  double bitrate = 0.0;     // Mbit/s
  double valuation = 0.0;   // derived from QoeParams
  bool operator==(const VrUser&) const = default;
};

struct EdgeSeller {
  std::string id;
  double energy_price = 0.0;  // currency per Mbit/s
  double base_cost = 0.0;     // currency per service
  double cost = 0.0;          // derived
  bool operator==(const EdgeSeller&) const = default;
};

struct PriceBounds {
  double low = 0.0;
  double high = 100.0;
  bool operator==(const PriceBounds&) const = default;
};

struct AuctionInstance {
  std::string name;
  std::vector<VrUser> buyers;
  std::vector<EdgeSeller> sellers;
  QoeParams qoe;
  PriceBounds bounds;
  bool operator==(const AuctionInstance&) const = default;
};

/// Random instance family for comparisons and training. Every buyer in an
/// instance requests the same bitrate, drawn from `bitrates`.
struct GeneratorSpec {
  std::vector<double> bitrates{1.0, 25.0, 50.0, 100.0, 250.0};
  std::int64_t instances_per_bitrate = 20;
  std::int64_t min_agents = 5;
  std::int64_t max_agents = 20;
  double head_speed_max = 3.0;
  double energy_price_min = 0.1;
  double energy_price_max = 0.4;
  double base_cost_min = 0.1;
  double base_cost_max = 2.0;
  bool operator==(const GeneratorSpec&) const = default;
};

enum class ControllerKind { fixed, ou, learned };

struct ControllerSpec {
  std::string name;
  ControllerKind kind = ControllerKind::fixed;
  double step = 0.25;       // fixed step, or OU initial step
  double theta = 0.5;
  double mu = 1.0;
  double sigma = 0.25;
  double min_step = 0.125;
  double max_step = 2.0;
  std::string q_table;      // learned: optional CSV path; empty means train inline
  bool operator==(const ControllerSpec&) const = default;
};

struct TrainingConfig {
  std::int64_t episodes = 10000;
  double eta = 0.01;            // welfare units charged per clock move
  double learning_rate = 0.01;
  double discount = 1.0;
  double epsilon_start = 0.3;
  double epsilon_end = 0.0;
  double base_step = 0.25;
  std::vector<double> multipliers{0.5, 1.0, 2.0, 4.0};
  bool operator==(const TrainingConfig&) const = default;
};

struct DdaConfig {
  QoeParams qoe;
  PriceBounds bounds;
  std::vector<VrUser> buyers;
  std::vector<EdgeSeller> sellers;
  std::optional<GeneratorSpec> generator;
  std::vector<ControllerSpec> controllers;
  TrainingConfig training;
  bool operator==(const DdaConfig&) const = default;
};

}  // namespace edgemarket::dda
