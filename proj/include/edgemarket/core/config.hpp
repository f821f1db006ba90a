#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <variant>

#include "json.hpp"
#include "edgemarket/dda/model.hpp"
#include "edgemarket/evo/model.hpp"
#include "edgemarket/sip/model.hpp"

namespace edgemarket {

enum class Mechanism { evo, dda, sip };

std::string_view mechanism_name(Mechanism m);

struct SimConfig {
  std::uint64_t seed = 0;
  std::variant<evo::EvoConfig, dda::DdaConfig, sip::SipConfig> section;
  std::string output_dir = "results";

  Mechanism mechanism() const { return static_cast<Mechanism>(section.index()); }
  bool operator==(const SimConfig&) const = default;
};

/// Parses and validates a JSON configuration document. Throws ParseError on
/// malformed JSON and ConfigError (naming the field) on schema or invariant
/// violations, including unknown keys.
SimConfig validate_config(std::string_view raw);
SimConfig load_config_file(const std::string& path);

nlohmann::json to_json(const SimConfig& config);
std::string serialize_config(const SimConfig& config);

// Invariant checks shared with programmatic construction; `path` prefixes
// the reported field.
void validate_game(const evo::EvoGame& game, const std::string& path);
void validate_state(const evo::PopulationState& state, const evo::EvoGame& game,
                    const std::string& path);
void validate_qoe(const dda::QoeParams& qoe, const std::string& path);
void validate_instance(const sip::SipInstance& instance, const std::string& path);

}  // namespace edgemarket
