#include "edgemarket/core/rng.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace edgemarket {
namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::uint64_t fnv1a(std::string_view text) {
  std::uint64_t h = 0xCBF29CE484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001B3ULL;
  }
  return h;
}

}  // namespace

RngStream::RngStream(std::uint64_t seed, std::string_view label)
    : seed_(seed), label_(label), key_(mix64(seed ^ mix64(fnv1a(label) + kGolden))) {}

RngStream::result_type RngStream::operator()() {
  ++counter_;
  return mix64(mix64(counter_ * kGolden) ^ key_);
}

double RngStream::uniform() {
  return static_cast<double>((*this)() >> 11) * 0x1.0p-53;
}

double RngStream::uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

std::int64_t RngStream::uniform_int(std::int64_t lo, std::int64_t hi) {
  if (lo > hi) throw std::invalid_argument("uniform_int: lo > hi");
  const std::uint64_t span = static_cast<std::uint64_t>(hi) - static_cast<std::uint64_t>(lo);
  if (span == std::numeric_limits<std::uint64_t>::max()) return static_cast<std::int64_t>((*this)());
  const std::uint64_t range = span + 1;
  // reject the tail so every residue is equally likely
  const std::uint64_t limit = max() - (max() % range + 1) % range;
  std::uint64_t draw = (*this)();
  while (draw > limit) draw = (*this)();
  return static_cast<std::int64_t>(static_cast<std::uint64_t>(lo) + draw % range);
}

double RngStream::normal() {
  double u1 = uniform();
  const double u2 = uniform();
  if (u1 <= 0.0) u1 = 0x1.0p-53;
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

RngStream RngStream::substream(std::string_view child) const {
  std::string name = label_;
  name += '/';
  name += child;
  return RngStream(seed_, name);
}

RngStream rng_stream(std::uint64_t seed, std::string_view label) { return RngStream(seed, label); }

}  // namespace edgemarket
