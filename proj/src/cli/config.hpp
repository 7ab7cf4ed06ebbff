#pragma once

#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "flowlab/errors.hpp"
#include "flowlab/types.hpp"

namespace flowlab {
namespace cli {

enum class ValueType { Int, Real, Bool, String };

struct KeySpec {
  std::string key;
  ValueType type = ValueType::String;
  std::string fallback;    // textual default, already schema-valid
  bool allow_auto = false; // Real keys that accept the literal `auto`
  std::string doc;
};

struct Schema {
  std::string scenario;
  std::vector<KeySpec> keys;
  const KeySpec* find(const std::string& key) const;
};

// Typed key-value store with strict validation: a key outside the schema or
// a value that does not parse as the declared type is a ConfigError naming
// the offender. Values keep their canonical text so a resolved config can
// be embedded byte-for-byte in every artifact.
class Config {
 public:
  explicit Config(Schema schema);

  void load_file(const std::string& path);
  void set(const std::string& key, const std::string& value);

  long long get_int(const std::string& key) const;
  Real get_real(const std::string& key) const;          // `auto` -> -1
  bool get_bool(const std::string& key) const;
  const std::string& get_str(const std::string& key) const;
  unsigned long long get_seed() const;

  // Comma list of reals; empty string -> empty list.
  std::vector<Real> get_real_list(const std::string& key) const;

  const Schema& schema() const { return schema_; }
  // `key=value` lines in schema order.
  std::vector<std::string> resolved_lines() const;
  nlohmann::ordered_json resolved_json() const;

 private:
  const std::string& raw(const std::string& key) const;
  Schema schema_;
  std::vector<std::string> values_;  // parallel to schema_.keys
};

Schema schema_for(const std::string& scenario);
const std::vector<std::string>& scenario_names();

// `key=value` / `--key value` / `--key=value` token pairs.
std::vector<std::pair<std::string, std::string>> parse_kv_tokens(
    const std::vector<std::string>& tokens);

// JSON text with every float at 17 significant digits.
std::string dump_json17(const nlohmann::ordered_json& j, int indent = 2);

}  // namespace cli
}  // namespace flowlab
