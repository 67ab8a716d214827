#pragma once

#include <functional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "fppdt/campaign.hpp"
#include "json.hpp"
#include "fppdt_cli/config.hpp"

namespace fppdt::cli {

inline constexpr const char* kSchema = "fppdt-1";

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  /// "," separated, "\n" line ends, header first.
  std::string csv() const;
};

struct CommandOutput {
  Table table;
  nlohmann::json summary = nlohmann::json::object();
  /// Extra files as (suffix, content); written to <out>/<command>.<suffix>.
  std::vector<std::pair<std::string, std::string>> files;
};

struct Command {
  std::string name;
  std::string help;
  std::vector<KeySpec> keys;
  /// Replica campaigns list their per-replica seeds in the manifest.
  bool replicated = true;
  std::function<CommandOutput(const Params&)> run;
};

const std::vector<Command>& command_table();
const Command* find_command(std::string_view name);

/// seed, replicas, threads, intensity, side, freeze_points.
CampaignSetup setup_from(const Params& params);

}  // namespace fppdt::cli
