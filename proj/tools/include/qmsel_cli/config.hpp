#pragma once

#include <istream>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace qmsel::cli {

/// Malformed config text or keys/values that do not validate.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Sectioned "key = value" text:
///
///   # comment
///   [simulate]
///   scenario = multiple_index
///   p = 200, 400
///
/// Keys before the first header belong to the "" section. Values are kept as
/// strings; typed getters parse on access and remember which keys were read,
/// so leftovers can be reported as unknown.
class KeyValueConfig {
 public:
  static KeyValueConfig parse(std::istream& in, const std::string& source = "<config>");
  static KeyValueConfig load(const std::string& path);

  bool has_section(const std::string& section) const;
  bool has(const std::string& section, const std::string& key) const;

  std::string get_string(const std::string& section, const std::string& key, const std::string& fallback);
  int get_int(const std::string& section, const std::string& key, int fallback);
  long long get_int64(const std::string& section, const std::string& key, long long fallback);
  double get_double(const std::string& section, const std::string& key, double fallback);
  bool get_bool(const std::string& section, const std::string& key, bool fallback);
  /// Comma-separated list; empty when absent.
  std::vector<std::string> get_list(const std::string& section, const std::string& key);

  /// "section.key" for every key never read through a getter.
  std::vector<std::string> unread_keys() const;
  /// Throws ConfigError naming every unread key.
  void reject_unknown() const;

 private:
  const std::string* find(const std::string& section, const std::string& key);

  std::string source_;
  std::map<std::string, std::map<std::string, std::string>> values_;
  std::set<std::string> read_;
};

std::string trim(std::string_view s);
std::vector<std::string> split_list(std::string_view s, char sep = ',');

}  // namespace qmsel::cli
