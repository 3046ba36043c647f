#pragma once

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "qwalk/errors.hpp"

namespace qwalk {

// Raw key=value settings. Each value remembers where it came from so parse
// errors can point at a file line or a command-line flag.
class ConfigValues {
 public:
  struct Entry {
    std::string value;
    std::string origin;  // "line 7" or "flag"
  };

  void set(std::string key, std::string value, std::string origin) {
    entries_[normalize(std::move(key))] = Entry{std::move(value), std::move(origin)};
  }

  // Later values win; used to let flags override a config file.
  void merge_from(const ConfigValues& other) {
    for (const auto& [k, v] : other.entries_) entries_[k] = v;
  }

  bool has(std::string_view key) const { return entries_.count(normalize(std::string(key))) > 0; }

  const Entry* find(std::string_view key) const {
    auto it = entries_.find(normalize(std::string(key)));
    return it == entries_.end() ? nullptr : &it->second;
  }

  std::string get_string(std::string_view key, std::string fallback) const {
    const Entry* e = find(key);
    return e ? e->value : std::move(fallback);
  }

  double get_double(std::string_view key, double fallback) const {
    const Entry* e = find(key);
    if (!e) return fallback;
    return parse_double(key, *e);
  }

  long get_long(std::string_view key, long fallback) const {
    const Entry* e = find(key);
    if (!e) return fallback;
    return parse_long(key, e->value, *e);
  }

  bool get_bool(std::string_view key, bool fallback) const {
    const Entry* e = find(key);
    if (!e) return fallback;
    const std::string& v = e->value;
    if (v == "1" || v == "true" || v == "yes" || v == "on" || v.empty()) return true;
    if (v == "0" || v == "false" || v == "no" || v == "off") return false;
    throw error(key, *e, "expected a boolean");
  }

  std::vector<long> get_long_list(std::string_view key) const {
    const Entry* e = find(key);
    if (!e) return {};
    std::vector<long> out;
    for (const std::string& item : split_list(e->value)) out.push_back(parse_long(key, item, *e));
    return out;
  }

  static std::vector<std::string> split_list(const std::string& text) {
    std::vector<std::string> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
      item = trim(item);
      if (!item.empty()) out.push_back(item);
    }
    return out;
  }

  static std::string trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r\n");
    return std::string(s.substr(first, last - first + 1));
  }

  static ConfigError error(std::string_view key, const Entry& e, std::string_view what) {
    return ConfigError("config " + e.origin + ", field '" + std::string(key) + "': " +
                       std::string(what) + " (got '" + e.value + "')");
  }

 private:
  static std::string normalize(std::string key) {
    std::replace(key.begin(), key.end(), '_', '-');
    return key;
  }

  static double parse_double(std::string_view key, const Entry& e) {
    const std::string& v = e.value;
    char* end = nullptr;
    const double out = std::strtod(v.c_str(), &end);
    if (v.empty() || end != v.c_str() + v.size()) throw error(key, e, "expected a number");
    return out;
  }

  static long parse_long(std::string_view key, const std::string& text, const Entry& e) {
    long out = 0;
    const auto res = std::from_chars(text.data(), text.data() + text.size(), out);
    if (res.ec != std::errc{} || res.ptr != text.data() + text.size()) {
      throw error(key, e, "expected an integer");
    }
    return out;
  }

  std::map<std::string, Entry> entries_;
};

// Flat "key = value" text; '#' starts a comment.
inline ConfigValues parse_config_text(std::string_view text) {
  ConfigValues values;
  std::istringstream in{std::string(text)};
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const std::string trimmed = ConfigValues::trim(line);
    if (trimmed.empty()) continue;
    const auto eq = trimmed.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("config line " + std::to_string(number) + ": expected key = value");
    }
    const std::string key = ConfigValues::trim(std::string_view(trimmed).substr(0, eq));
    if (key.empty()) {
      throw ConfigError("config line " + std::to_string(number) + ": empty key");
    }
    values.set(key, ConfigValues::trim(std::string_view(trimmed).substr(eq + 1)),
               "line " + std::to_string(number));
  }
  return values;
}

inline ConfigValues load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_config_text(buffer.str());
}

}  // namespace qwalk
