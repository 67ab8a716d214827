#include <unistd.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "fppdt_cli/commands.hpp"
#include "fppdt_cli/config.hpp"
#include "fppdt_cli/runner.hpp"
#include "json.hpp"

using namespace fppdt::cli;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("fppdt_unit_" + std::to_string(::getpid()) + "_" + name);
  fs::remove_all(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

int run(const std::string& cmd, std::vector<std::string> sets, const fs::path& out, std::string manifest = "") {
  RunOptions o;
  o.command = cmd;
  o.assignments = std::move(sets);
  o.out_dir = out.string();
  o.manifest_path = std::move(manifest);
  std::ostringstream log;
  return run_command(o, log);
}

}  // namespace

TEST_CASE("config parsing") {
  std::istringstream in("# comment\n\nreplicas = 5\n  n=8,16 # trailing\nname = a b\n");
  const Config c = Config::parse(in);
  CHECK(c.values().at("replicas") == "5");
  CHECK(c.values().at("n") == "8,16");
  CHECK(c.values().at("name") == "a b");
  std::istringstream bad("replicas 5\n");
  CHECK_THROWS_AS(Config::parse(bad), ConfigError);
  Config d;
  d.assign("seed=9");
  CHECK(d.has("seed"));
  CHECK_THROWS_AS(d.assign("noequals"), ConfigError);
  CHECK_THROWS_AS(Config::load("/nonexistent/file.cfg"), ConfigError);
}

TEST_CASE("params resolve defaults and reject unknown keys") {
  const std::vector<KeySpec> keys{{"a", "1", ""}, {"b", "0.5,1.5", ""}, {"c", "true", ""}};
  Config c;
  c.set("a", "7");
  const Params p(keys, c);
  CHECK(p.integer("a") == 7);
  CHECK(p.reals("b") == std::vector<double>{0.5, 1.5});
  CHECK(p.flag("c"));
  c.set("zzz", "1");
  CHECK_THROWS_AS(Params(keys, c), ConfigError);
  Config e;
  e.set("a", "x");
  CHECK_THROWS_AS(Params(keys, e).integer("a"), ConfigError);
  CHECK(split_list(" 1, 2 ,3 ") == std::vector<std::string>{"1", "2", "3"});
  CHECK(trim("  x ") == "x");
}

TEST_CASE("every command is registered with help and keys") {
  for (const char* name : {"gen", "triangulate", "fpp", "mu", "fluct", "shape", "perc", "pcstar", "renorm", "animals",
                           "paths", "kappa", "truncgap"}) {
    const Command* c = find_command(name);
    REQUIRE(c != nullptr);
    CHECK(!c->help.empty());
    CHECK(!c->keys.empty());
  }
  CHECK(find_command("nope") == nullptr);
}

TEST_CASE("minimal mu campaign") {
  const fs::path out = scratch("mu");
  CHECK(run("mu", {"replicas=1", "n=8"}, out) == kExitOk);
  const std::string csv = slurp(out / "mu.csv");
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 2);
  const auto summary = nlohmann::json::parse(slurp(out / "mu.json"));
  CHECK(summary.contains("mu_hat"));
  CHECK(summary["schema"] == kSchema);
  const auto manifest = nlohmann::json::parse(slurp(out / "mu.manifest.json"));
  CHECK(manifest["replica_seeds"].size() == 1);
  fs::remove_all(out);
}

TEST_CASE("invalid parameters exit 2 and write nothing") {
  const fs::path out = scratch("bad");
  CHECK(run("perc", {"p=1.5", "replicas=2"}, out) == kExitConfig);
  CHECK(!fs::exists(out));
  CHECK(run("mu", {"bogus=1"}, out) == kExitConfig);
  CHECK(run("nosuch", {}, out) == kExitConfig);
  CHECK(run("mu", {"replicas=1", "n=8"}, "/proc/forbidden") == kExitConfig);
  CHECK(!fs::exists(out));
}

TEST_CASE("reruns are byte-identical across thread counts and from the manifest") {
  const fs::path a = scratch("a"), b = scratch("b"), c = scratch("c");
  const std::vector<std::string> sets{"replicas=6", "n=8,16", "seed=5"};
  auto s1 = sets;
  s1.push_back("threads=1");
  auto s4 = sets;
  s4.push_back("threads=4");
  REQUIRE(run("mu", s1, a) == kExitOk);
  REQUIRE(run("mu", s4, b) == kExitOk);
  CHECK(slurp(a / "mu.csv") == slurp(b / "mu.csv"));
  REQUIRE(run("mu", {}, c, (a / "mu.manifest.json").string()) == kExitOk);
  CHECK(slurp(a / "mu.csv") == slurp(c / "mu.csv"));
  for (const auto& d : {a, b, c}) fs::remove_all(d);
}
