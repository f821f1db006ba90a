#pragma once

#include <cstdint>
#include <set>
#include <string>

#include "json.hpp"

namespace edgemarket {

// Strict view over a JSON object: every key must be consumed by the time
// finish() is called, otherwise the first unknown key is reported with its
// dotted path.
class ObjectReader {
 public:
  ObjectReader(const nlohmann::json& node, std::string path);

  bool has(const std::string& key) const;
  const nlohmann::json& at(const std::string& key);
  std::string child_path(const std::string& key) const;

  double number(const std::string& key);
  double number(const std::string& key, double fallback);
  std::int64_t integer(const std::string& key);
  std::int64_t integer(const std::string& key, std::int64_t fallback);
  std::uint64_t unsigned_integer(const std::string& key, std::uint64_t fallback);
  std::string text(const std::string& key);
  std::string text(const std::string& key, const std::string& fallback);
  bool boolean(const std::string& key, bool fallback);

  void finish() const;
  const std::string& path() const { return path_; }

 private:
  const nlohmann::json& node_;
  std::string path_;
  std::set<std::string> seen_;
};

std::string index_path(const std::string& path, std::size_t i);
const nlohmann::json& require_array(const nlohmann::json& node, const std::string& path);
double as_number(const nlohmann::json& node, const std::string& path);
std::int64_t as_integer(const nlohmann::json& node, const std::string& path);

}  // namespace edgemarket
