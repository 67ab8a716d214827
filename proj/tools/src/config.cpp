#include "fppdt_cli/config.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <set>

#include "fppdt/io.hpp"

namespace fppdt::cli {

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return {};
  const auto b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (;;) {
    const auto comma = s.find(',', start);
    out.push_back(trim(s.substr(start, comma == std::string::npos ? std::string::npos : comma - start)));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

Config Config::parse(std::istream& in, const std::string& origin) {
  Config c;
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError(origin + ":" + std::to_string(number) + ": expected 'key = value'");
    }
    const std::string key = trim(line.substr(0, eq));
    if (key.empty()) throw ConfigError(origin + ":" + std::to_string(number) + ": empty key");
    c.set(key, trim(line.substr(eq + 1)));
  }
  return c;
}

Config Config::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file '" + path + "'");
  return parse(in, path);
}

void Config::assign(const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos || trim(assignment.substr(0, eq)).empty()) {
    throw ConfigError("expected key=value, got '" + assignment + "'");
  }
  set(trim(assignment.substr(0, eq)), trim(assignment.substr(eq + 1)));
}

Params::Params(const std::vector<KeySpec>& keys, const Config& config) {
  std::set<std::string> known;
  for (const auto& k : keys) {
    known.insert(k.name);
    values_[k.name] = k.fallback;
  }
  for (const auto& [key, value] : config.values()) {
    if (!known.count(key)) throw ConfigError("unknown key '" + key + "'");
    values_[key] = value;
  }
}

const std::string& Params::text(const std::string& key) const {
  const auto it = values_.find(key);
  if (it == values_.end()) throw ConfigError("missing key '" + key + "'");
  return it->second;
}

double Params::real(const std::string& key) const {
  try {
    return parse_double(text(key));
  } catch (const InvalidArgument&) {
    throw ConfigError("key '" + key + "' needs a number, got '" + text(key) + "'");
  }
}

std::int64_t Params::integer(const std::string& key) const {
  const std::string& s = text(key);
  std::int64_t v = 0;
  const auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || end != s.data() + s.size() || s.empty()) {
    throw ConfigError("key '" + key + "' needs an integer, got '" + s + "'");
  }
  return v;
}

std::uint64_t Params::unsigned_integer(const std::string& key) const {
  const std::string& s = text(key);
  std::uint64_t v = 0;
  const auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || end != s.data() + s.size() || s.empty()) {
    throw ConfigError("key '" + key + "' needs a nonnegative 64-bit integer, got '" + s + "'");
  }
  return v;
}

bool Params::flag(const std::string& key) const {
  const std::string& s = text(key);
  if (s == "true" || s == "1" || s == "yes") return true;
  if (s == "false" || s == "0" || s == "no") return false;
  throw ConfigError("key '" + key + "' needs true or false, got '" + s + "'");
}

std::vector<double> Params::reals(const std::string& key) const {
  const std::string& s = text(key);
  if (trim(s).empty()) throw ConfigError("key '" + key + "' needs a nonempty list");
  std::vector<double> out;
  for (const auto& item : split_list(s)) {
    try {
      out.push_back(parse_double(item));
    } catch (const InvalidArgument&) {
      throw ConfigError("key '" + key + "' has a bad list item '" + item + "'");
    }
  }
  return out;
}

std::vector<std::int64_t> Params::integers(const std::string& key) const {
  const std::string& s = text(key);
  if (trim(s).empty()) throw ConfigError("key '" + key + "' needs a nonempty list");
  std::vector<std::int64_t> out;
  for (const auto& item : split_list(s)) {
    std::int64_t v = 0;
    const auto [end, ec] = std::from_chars(item.data(), item.data() + item.size(), v);
    if (ec != std::errc() || end != item.data() + item.size() || item.empty()) {
      throw ConfigError("key '" + key + "' has a bad list item '" + item + "'");
    }
    out.push_back(v);
  }
  return out;
}

}  // namespace fppdt::cli
