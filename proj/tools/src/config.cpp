#include "qmsel_cli/config.hpp"

#include <charconv>
#include <fstream>

#include <fmt/format.h>

namespace qmsel::cli {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split_list(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= s.size()) {
    auto end = s.find(sep, start);
    if (end == std::string_view::npos) end = s.size();
    auto item = trim(s.substr(start, end - start));
    if (!item.empty()) out.push_back(std::move(item));
    start = end + 1;
  }
  return out;
}

KeyValueConfig KeyValueConfig::parse(std::istream& in, const std::string& source) {
  KeyValueConfig cfg;
  cfg.source_ = source;
  std::string section;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const auto text = trim(line);
    if (text.empty()) continue;
    if (text.front() == '[') {
      if (text.back() != ']' || text.size() < 3)
        throw ConfigError(fmt::format("{}:{}: malformed section header '{}'", source, line_no, text));
      section = trim(std::string_view(text).substr(1, text.size() - 2));
      cfg.values_[section];
      continue;
    }
    const auto eq = text.find('=');
    if (eq == std::string::npos)
      throw ConfigError(fmt::format("{}:{}: expected 'key = value', got '{}'", source, line_no, text));
    auto key = trim(std::string_view(text).substr(0, eq));
    auto value = trim(std::string_view(text).substr(eq + 1));
    if (key.empty()) throw ConfigError(fmt::format("{}:{}: empty key", source, line_no));
    auto [it, inserted] = cfg.values_[section].emplace(key, value);
    if (!inserted)
      throw ConfigError(fmt::format("{}:{}: duplicate key '{}' in [{}]", source, line_no, key, section));
  }
  return cfg;
}

KeyValueConfig KeyValueConfig::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(fmt::format("cannot open config file '{}'", path));
  return parse(in, path);
}

bool KeyValueConfig::has_section(const std::string& section) const { return values_.count(section) > 0; }

bool KeyValueConfig::has(const std::string& section, const std::string& key) const {
  auto s = values_.find(section);
  return s != values_.end() && s->second.count(key) > 0;
}

const std::string* KeyValueConfig::find(const std::string& section, const std::string& key) {
  auto s = values_.find(section);
  if (s == values_.end()) return nullptr;
  auto k = s->second.find(key);
  if (k == s->second.end()) return nullptr;
  read_.insert(section + "." + key);
  return &k->second;
}

namespace {

template <typename T>
T parse_number(const std::string& text, const std::string& where) {
  T value{};
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size())
    throw ConfigError(fmt::format("{}: cannot parse '{}' as a number", where, text));
  return value;
}

}  // namespace

std::string KeyValueConfig::get_string(const std::string& section, const std::string& key,
                                       const std::string& fallback) {
  const auto* v = find(section, key);
  return v ? *v : fallback;
}

int KeyValueConfig::get_int(const std::string& section, const std::string& key, int fallback) {
  const auto* v = find(section, key);
  return v ? parse_number<int>(*v, fmt::format("{}: [{}] {}", source_, section, key)) : fallback;
}

long long KeyValueConfig::get_int64(const std::string& section, const std::string& key, long long fallback) {
  const auto* v = find(section, key);
  return v ? parse_number<long long>(*v, fmt::format("{}: [{}] {}", source_, section, key)) : fallback;
}

double KeyValueConfig::get_double(const std::string& section, const std::string& key, double fallback) {
  const auto* v = find(section, key);
  return v ? parse_number<double>(*v, fmt::format("{}: [{}] {}", source_, section, key)) : fallback;
}

bool KeyValueConfig::get_bool(const std::string& section, const std::string& key, bool fallback) {
  const auto* v = find(section, key);
  if (!v) return fallback;
  if (*v == "true" || *v == "1" || *v == "yes") return true;
  if (*v == "false" || *v == "0" || *v == "no") return false;
  throw ConfigError(fmt::format("{}: [{}] {}: expected true/false, got '{}'", source_, section, key, *v));
}

std::vector<std::string> KeyValueConfig::get_list(const std::string& section, const std::string& key) {
  const auto* v = find(section, key);
  return v ? split_list(*v) : std::vector<std::string>{};
}

std::vector<std::string> KeyValueConfig::unread_keys() const {
  std::vector<std::string> out;
  for (const auto& [section, keys] : values_)
    for (const auto& kv : keys) {
      auto name = section + "." + kv.first;
      if (!read_.count(name)) out.push_back(name);
    }
  return out;
}

void KeyValueConfig::reject_unknown() const {
  const auto unknown = unread_keys();
  if (unknown.empty()) return;
  throw ConfigError(fmt::format("{}: unknown keys: {}", source_, fmt::join(unknown, ", ")));
}

}  // namespace qmsel::cli
