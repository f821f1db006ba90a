#include "edgemarket/core/json_reader.hpp"

#include <cmath>

#include "edgemarket/core/error.hpp"

namespace edgemarket {

ObjectReader::ObjectReader(const nlohmann::json& node, std::string path)
    : node_(node), path_(std::move(path)) {
  if (!node_.is_object()) throw ConfigError(path_.empty() ? "<root>" : path_, "expected an object");
}

bool ObjectReader::has(const std::string& key) const { return node_.contains(key); }

std::string ObjectReader::child_path(const std::string& key) const {
  return path_.empty() ? key : path_ + "." + key;
}

const nlohmann::json& ObjectReader::at(const std::string& key) {
  if (!node_.contains(key)) throw ConfigError(child_path(key), "required field missing");
  seen_.insert(key);
  return node_.at(key);
}

double ObjectReader::number(const std::string& key) { return as_number(at(key), child_path(key)); }

double ObjectReader::number(const std::string& key, double fallback) {
  return has(key) ? number(key) : fallback;
}

std::int64_t ObjectReader::integer(const std::string& key) {
  return as_integer(at(key), child_path(key));
}

std::int64_t ObjectReader::integer(const std::string& key, std::int64_t fallback) {
  return has(key) ? integer(key) : fallback;
}

std::uint64_t ObjectReader::unsigned_integer(const std::string& key, std::uint64_t fallback) {
  if (!has(key)) return fallback;
  const auto& v = at(key);
  if (!v.is_number_unsigned()) throw ConfigError(child_path(key), "expected a non-negative integer");
  return v.get<std::uint64_t>();
}

std::string ObjectReader::text(const std::string& key) {
  const auto& v = at(key);
  if (!v.is_string()) throw ConfigError(child_path(key), "expected a string");
  return v.get<std::string>();
}

std::string ObjectReader::text(const std::string& key, const std::string& fallback) {
  return has(key) ? text(key) : fallback;
}

bool ObjectReader::boolean(const std::string& key, bool fallback) {
  if (!has(key)) return fallback;
  const auto& v = at(key);
  if (!v.is_boolean()) throw ConfigError(child_path(key), "expected true or false");
  return v.get<bool>();
}

void ObjectReader::finish() const {
  for (const auto& item : node_.items()) {
    if (!seen_.contains(item.key())) throw ConfigError(child_path(item.key()), "unknown key");
  }
}

std::string index_path(const std::string& path, std::size_t i) {
  return path + "[" + std::to_string(i) + "]";
}

const nlohmann::json& require_array(const nlohmann::json& node, const std::string& path) {
  if (!node.is_array()) throw ConfigError(path, "expected an array");
  return node;
}

double as_number(const nlohmann::json& node, const std::string& path) {
  if (!node.is_number()) throw ConfigError(path, "expected a number");
  const double v = node.get<double>();
  if (!std::isfinite(v)) throw ConfigError(path, "must be finite");
  return v;
}

std::int64_t as_integer(const nlohmann::json& node, const std::string& path) {
  if (!node.is_number_integer()) throw ConfigError(path, "expected an integer");
  return node.get<std::int64_t>();
}

}  // namespace edgemarket
