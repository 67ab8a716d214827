#include <iostream>

#include "CLI11.hpp"
#include "fppdt_cli/commands.hpp"
#include "fppdt_cli/runner.hpp"

int main(int argc, char** argv) {
  using namespace fppdt::cli;
  CLI::App app{"First-passage percolation on Poisson-Delaunay triangulations"};
  app.require_subcommand(1);
  app.set_version_flag("--version", FPPDT_VERSION);

  RunOptions options;
  std::uint64_t seed = 0;
  unsigned threads = 0;
  bool list_keys = false;
  for (const auto& cmd : command_table()) {
    CLI::App* sub = app.add_subcommand(cmd.name, cmd.help);
    sub->add_option("-c,--config", options.config_path, "flat key = value config file");
    sub->add_option("-s,--set", options.assignments, "override one key (key=value); repeatable");
    sub->add_option("--seed", seed, "master seed (overrides the config)");
    sub->add_option("-j,--threads", threads, "worker threads (overrides FPPDT_THREADS and the config)");
    sub->add_option("-o,--out", options.out_dir, "output directory")->capture_default_str();
    sub->add_option("--manifest", options.manifest_path, "rerun the configuration recorded in a manifest");
    sub->add_flag("--keys", list_keys, "list configuration keys with defaults and exit");
    sub->callback([&options, &cmd, sub, &seed, &threads] {
      options.command = cmd.name;
      if (sub->count("--seed")) options.seed = seed;
      if (sub->count("--threads")) options.threads = threads;
    });
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }
  if (list_keys) {
    for (const auto& k : find_command(options.command)->keys) {
      std::cout << k.name << " = " << k.fallback << "    # " << k.help << "\n";
    }
    return kExitOk;
  }
  return run_command(options, std::cerr);
}
