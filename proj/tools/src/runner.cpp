#include "fppdt_cli/runner.hpp"

#include <unistd.h>

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <ostream>

#include "fppdt/campaign.hpp"
#include "fppdt_cli/commands.hpp"

#ifndef FPPDT_VERSION
#define FPPDT_VERSION "unknown"
#endif

namespace fppdt::cli {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

Config manifest_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read manifest '" + path + "'");
  json m;
  try {
    in >> m;
  } catch (const json::exception& e) {
    throw ConfigError("manifest '" + path + "' is not valid JSON: " + e.what());
  }
  if (!m.contains("config") || !m["config"].is_object()) throw ConfigError("manifest has no config object");
  Config c;
  for (const auto& [key, value] : m["config"].items()) {
    if (!value.is_string()) throw ConfigError("manifest config values must be strings");
    c.set(key, value.get<std::string>());
  }
  return c;
}

// The output directory must be writable, or creatable under a writable
// ancestor.
void check_writable(const fs::path& dir) {
  std::error_code ec;
  fs::path probe = fs::absolute(dir, ec);
  if (ec) throw ConfigError("bad output directory '" + dir.string() + "'");
  while (!fs::exists(probe, ec)) {
    if (!probe.has_parent_path() || probe.parent_path() == probe) break;
    probe = probe.parent_path();
  }
  if (!fs::is_directory(probe, ec) || ::access(probe.c_str(), W_OK) != 0) {
    throw ConfigError("output directory '" + dir.string() + "' is not writable");
  }
}

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  out << content;
  out.close();
  if (!out) throw ConfigError("cannot write '" + path.string() + "'");
}

}  // namespace

int run_command(const RunOptions& options, std::ostream& log) {
  try {
    const Command* cmd = find_command(options.command);
    if (cmd == nullptr) throw ConfigError("unknown command '" + options.command + "'");
    Config config;
    if (!options.manifest_path.empty()) config = manifest_config(options.manifest_path);
    if (!options.config_path.empty()) {
      for (const auto& [k, v] : Config::load(options.config_path).values()) config.set(k, v);
    }
    for (const auto& a : options.assignments) config.assign(a);
    if (options.seed) config.set("seed", std::to_string(*options.seed));
    if (const char* env = std::getenv("FPPDT_THREADS"); env != nullptr && *env != '\0') config.set("threads", env);
    if (options.threads) config.set("threads", std::to_string(*options.threads));

    const Params params(cmd->keys, config);
    check_writable(options.out_dir);

    const auto start = std::chrono::steady_clock::now();
    CommandOutput result = cmd->run(params);
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    result.summary["schema"] = kSchema;
    result.summary["command"] = cmd->name;
    json manifest = {{"schema", kSchema}, {"command", cmd->name}, {"version", FPPDT_VERSION},
                     {"config", params.resolved()}, {"wall_seconds", seconds}};
    if (cmd->replicated) {
      const CampaignSetup setup = setup_from(params);
      json seeds = json::array();
      for (std::size_t r = 0; r < setup.replicas; ++r) {
        const ReplicaSeeds s = replica_seeds(setup, r);
        seeds.push_back({{"replica", r}, {"points", s.points}, {"weights", s.weights}, {"bonds", s.bonds},
                         {"field", derive_seed(setup.seed, r, "field")},
                         {"circuit", derive_seed(setup.seed, r, "circuit")}});
      }
      manifest["replica_seeds"] = seeds;
    } else {
      manifest["seeds"] = {{"points", derive_seed(params.unsigned_integer("seed"), 0, "points")},
                           {"weights", derive_seed(params.unsigned_integer("seed"), 0, "weights")}};
    }

    const fs::path dir(options.out_dir);
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw ConfigError("cannot create output directory '" + dir.string() + "'");
    write_file(dir / (cmd->name + ".csv"), result.table.csv());
    write_file(dir / (cmd->name + ".json"), result.summary.dump(2) + "\n");
    write_file(dir / (cmd->name + ".manifest.json"), manifest.dump(2) + "\n");
    for (const auto& [suffix, content] : result.files) write_file(dir / (cmd->name + "." + suffix), content);
    log << cmd->name << ": " << result.table.rows.size() << " rows in " << seconds << " s -> " << dir.string() << "\n";
    return kExitOk;
  } catch (const InvalidArgument& e) {
    log << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const Error& e) {
    log << "numeric failure: " << e.what() << "\n";
    return kExitNumeric;
  } catch (const std::bad_alloc&) {
    log << "numeric failure: out of memory\n";
    return kExitNumeric;
  }
}

}  // namespace fppdt::cli
