#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace fppdt::cli {

enum ExitCode : int { kExitOk = 0, kExitConfig = 2, kExitNumeric = 3 };

struct RunOptions {
  std::string command;
  std::string config_path;    ///< flat key = value file
  std::string manifest_path;  ///< rerun the configuration echoed in a manifest
  std::vector<std::string> assignments;  ///< --set key=value, applied last
  std::optional<std::uint64_t> seed;
  std::optional<unsigned> threads;
  std::string out_dir = ".";
};

/// Resolves the configuration (manifest, then config file, then --set,
/// then --seed; threads from FPPDT_THREADS or --threads), runs the command
/// and writes <out>/<command>.csv, .json, .manifest.json and any extra
/// files. Nothing is written unless the run succeeds.
int run_command(const RunOptions& options, std::ostream& log);

}  // namespace fppdt::cli
