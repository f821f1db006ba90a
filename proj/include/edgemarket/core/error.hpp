#pragma once

#include <stdexcept>
#include <string>

namespace edgemarket {

/// Configuration document is not valid JSON.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Configuration parsed but violates a constraint; `field()` is the dotted
/// path of the offending entry, e.g. "evo.regions[0].reward_pool".
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string field, const std::string& what)
      : std::runtime_error(field + ": " + what), field_(std::move(field)) {}
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Replicator integration left the simplex by more than the allowed drift.
class SimplexDriftError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace edgemarket
