#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "fppdt/error.hpp"

namespace fppdt::cli {

/// Bad configuration: unknown key, malformed value, missing file.
class ConfigError : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

/// Flat key = value assignments. Lists are written "a,b,c".
class Config {
 public:
  /// Lines "key = value"; '#' starts a comment; blank lines are skipped.
  static Config parse(std::istream& in, const std::string& origin = "config");
  static Config load(const std::string& path);

  /// "key=value"
  void assign(const std::string& assignment);
  void set(const std::string& key, const std::string& value) { values_[key] = value; }
  bool has(const std::string& key) const { return values_.count(key) != 0; }
  const std::map<std::string, std::string>& values() const { return values_; }

 private:
  std::map<std::string, std::string> values_;
};

struct KeySpec {
  std::string name;
  std::string fallback;
  std::string help;
};

/// Configuration resolved against one command's keys: every key has a
/// value, unknown keys are rejected.
class Params {
 public:
  Params(const std::vector<KeySpec>& keys, const Config& config);

  const std::string& text(const std::string& key) const;
  double real(const std::string& key) const;
  std::int64_t integer(const std::string& key) const;
  std::uint64_t unsigned_integer(const std::string& key) const;
  bool flag(const std::string& key) const;
  std::vector<double> reals(const std::string& key) const;
  std::vector<std::int64_t> integers(const std::string& key) const;

  const std::map<std::string, std::string>& resolved() const { return values_; }

 private:
  std::map<std::string, std::string> values_;
};

std::string trim(const std::string& s);
std::vector<std::string> split_list(const std::string& s);

}  // namespace fppdt::cli
