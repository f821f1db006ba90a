#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <string_view>

namespace edgemarket {

// Counter-based stream keyed by (seed, label). Draw i is a pure hash of the
// key and i, so substreams never depend on the order they are consumed in.
// Satisfies UniformRandomBitGenerator; distributions are implemented here
// rather than via <random> so sequences are identical across standard
// libraries.
class RngStream {
 public:
  using result_type = std::uint64_t;

  RngStream(std::uint64_t seed, std::string_view label);

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  result_type operator()();

  /// Uniform on [0, 1) with 53 random bits.
  double uniform();
  double uniform(double lo, double hi);
  /// Uniform integer on the closed range [lo, hi], unbiased.
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi);
  /// Standard normal via Box-Muller; consumes two draws per call.
  double normal();

  /// Independent child stream labelled "<label>/<child>".
  RngStream substream(std::string_view child) const;

  std::uint64_t seed() const { return seed_; }
  const std::string& label() const { return label_; }
  std::uint64_t draws() const { return counter_; }

 private:
  std::uint64_t seed_;
  std::string label_;
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

RngStream rng_stream(std::uint64_t seed, std::string_view label);

}  // namespace edgemarket
