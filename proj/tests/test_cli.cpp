// SPDX-License-Identifier: Apache-2.0
//
// End-to-end tests that drive the installed CLI binary.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "axsched/config.hpp"
#include "axsched/csv.hpp"
#include "axsched/harness.hpp"

namespace fs = std::filesystem;
using namespace axsched;

namespace {

struct TempDir {
  fs::path path;
  explicit TempDir(const std::string& tag) {
    path = fs::temp_directory_path() / ("axsched-test-" + tag + "-" + std::to_string(::getpid()));
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

int run_cli(const std::string& args) {
  const std::string cmd = std::string(AXSCHED_CLI_PATH) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  REQUIRE(status != -1);
  return WEXITSTATUS(status);
}

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const fs::path& p, const std::string& text) {
  std::ofstream out(p, std::ios::binary);
  out << text;
}

const char* kSmallConfig = R"json({
  "stations": 3,
  "epochs": 40,
  "topologies": 3,
  "master_seed": 7,
  "policies": [
    {"kind": "SRM"},
    {"kind": "ESRM", "v": 100, "r_min_bits": 20000, "p_max_dbm": 14}
  ]
})json";

}  // namespace

TEST_CASE("usage errors exit with code 1") {
  CHECK(run_cli("") == 1);                       // missing subcommand
  CHECK(run_cli("run") == 1);                    // missing required flags
  CHECK(run_cli("run --bogus x") == 1);          // unknown flag
  CHECK(run_cli("frobnicate") == 1);             // unknown subcommand
}

TEST_CASE("config errors exit with code 2") {
  TempDir tmp("cfg");
  CHECK(run_cli("run --config " + (tmp.path / "missing.json").string() + " --out " +
                (tmp.path / "out").string()) == 2);

  write_file(tmp.path / "broken.json", "{ not json");
  CHECK(run_cli("run --config " + (tmp.path / "broken.json").string() + " --out " +
                (tmp.path / "out").string()) == 2);

  write_file(tmp.path / "invalid.json", R"({"epochs": 0})");
  CHECK(run_cli("run --config " + (tmp.path / "invalid.json").string() + " --out " +
                (tmp.path / "out").string()) == 2);
}

TEST_CASE("run is deterministic: byte-identical CSVs for the same seed") {
  TempDir tmp("det");
  write_file(tmp.path / "cfg.json", kSmallConfig);
  const std::string base = "run --config " + (tmp.path / "cfg.json").string();
  REQUIRE(run_cli(base + " --seed 7 --out " + (tmp.path / "a").string()) == 0);
  REQUIRE(run_cli(base + " --seed 7 --out " + (tmp.path / "b").string()) == 0);
  REQUIRE(run_cli(base + " --seed 8 --out " + (tmp.path / "c").string()) == 0);

  for (const char* name : {"summary.csv", "epochs_SRM.csv", "epochs_ESRM.csv", "config.json"}) {
    CHECK(read_file(tmp.path / "a" / name) == read_file(tmp.path / "b" / name));
  }
  CHECK(read_file(tmp.path / "a" / "summary.csv") != read_file(tmp.path / "c" / "summary.csv"));
}

TEST_CASE("summary CSV round-trips the in-memory run summary") {
  TempDir tmp("roundtrip");
  write_file(tmp.path / "cfg.json", kSmallConfig);
  REQUIRE(run_cli("run --config " + (tmp.path / "cfg.json").string() + " --out " +
                  (tmp.path / "out").string()) == 0);

  // Recompute the same runs through the library.
  ExperimentConfig cfg = load_config(tmp.path / "cfg.json");
  cfg.store_epochs = true;
  const Topology topo =
      generate_topology(cfg.stations, cfg.topology.pl0_db, cfg.topology.exponent,
                        cfg.topology.d_max_m, topology_seed(cfg.master_seed, 0));
  std::vector<RunSummary> expected;
  for (std::size_t pi = 0; pi < cfg.policies.size(); ++pi) {
    expected.push_back(
        run_single(cfg, topo, cfg.policies[pi], run_seed(cfg.master_seed, 0, pi)).summary);
  }

  const auto rows = parse_csv(read_file(tmp.path / "out" / "summary.csv"));
  REQUIRE(rows.size() == 1 + cfg.policies.size() * cfg.stations);
  CHECK(rows[0] == std::vector<std::string>{"policy", "station", "avg_rate_bits", "avg_power_mw"});
  std::size_t row = 1;
  for (std::size_t pi = 0; pi < cfg.policies.size(); ++pi) {
    for (std::size_t k = 0; k < cfg.stations; ++k, ++row) {
      CHECK(rows[row][0] == cfg.policies[pi].name());
      CHECK(std::stoul(rows[row][1]) == k);
      CHECK(std::stod(rows[row][2]) == expected[pi].avg_rate_bits[k]);
      CHECK(std::stod(rows[row][3]) == expected[pi].avg_power_mw[k]);
    }
  }
}

TEST_CASE("one-epoch single-station run emits exactly one data row") {
  TempDir tmp("tinyrun");
  write_file(tmp.path / "cfg.json", R"({"stations": 1, "epochs": 1,
    "policies": [{"kind": "SRM"}]})");
  REQUIRE(run_cli("run --config " + (tmp.path / "cfg.json").string() + " --out " +
                  (tmp.path / "out").string()) == 0);
  const auto rows = parse_csv(read_file(tmp.path / "out" / "epochs_SRM.csv"));
  REQUIRE(rows.size() == 2);
  CHECK(rows[0] == std::vector<std::string>{"epoch", "station", "rate_bits", "power_mw",
                                            "q", "z", "g"});
  CHECK(rows[1][0] == "0");
  CHECK(rows[1][1] == "0");
}

TEST_CASE("provenance: the resolved config is echoed and reloadable") {
  TempDir tmp("prov");
  write_file(tmp.path / "cfg.json", kSmallConfig);
  REQUIRE(run_cli("run --config " + (tmp.path / "cfg.json").string() + " --seed 123 --out " +
                  (tmp.path / "out").string()) == 0);
  const ExperimentConfig echoed = load_config(tmp.path / "out" / "config.json");
  CHECK(echoed.master_seed == 123);
  CHECK(echoed.stations == 3);
  CHECK(echoed.policies.size() == 2);
  // a second save is canonical: serialization is a fixed point after load
  CHECK(config_to_json(echoed) == read_file(tmp.path / "out" / "config.json"));
}

TEST_CASE("policy filter narrows the run") {
  TempDir tmp("filter");
  write_file(tmp.path / "cfg.json", kSmallConfig);
  REQUIRE(run_cli("run --config " + (tmp.path / "cfg.json").string() +
                  " --policies ESRM --out " + (tmp.path / "out").string()) == 0);
  const auto rows = parse_csv(read_file(tmp.path / "out" / "summary.csv"));
  for (std::size_t i = 1; i < rows.size(); ++i) CHECK(rows[i][0] == "ESRM");
  CHECK(!fs::exists(tmp.path / "out" / "epochs_SRM.csv"));
  // filtering away everything is a config error
  CHECK(run_cli("run --config " + (tmp.path / "cfg.json").string() + " --policies MM --out " +
                (tmp.path / "out2").string()) == 2);
}

TEST_CASE("empty sweep emits a header-only file") {
  TempDir tmp("sweep0");
  write_file(tmp.path / "cfg.json", R"({"stations": 2, "epochs": 5, "k_values": [],
    "policies": [{"kind": "SRM"}]})");
  REQUIRE(run_cli("sweep --config " + (tmp.path / "cfg.json").string() + " --out " +
                  (tmp.path / "out").string()) == 0);
  CHECK(read_file(tmp.path / "out" / "sweep.csv") == "policy,K,min_rate,sum_rate\n");
}

TEST_CASE("cdf subcommand emits the four-column schema") {
  TempDir tmp("cdf");
  write_file(tmp.path / "cfg.json", R"({"stations": 3, "epochs": 20, "topologies": 3,
    "policies": [{"kind": "SRM"}, {"kind": "RND"}]})");
  REQUIRE(run_cli("cdf --config " + (tmp.path / "cfg.json").string() + " --out " +
                  (tmp.path / "out").string()) == 0);
  const auto rows = parse_csv(read_file(tmp.path / "out" / "cdf.csv"));
  REQUIRE(rows.size() == 1 + 2 * 2 * 3);  // policies x metrics x topologies
  CHECK(rows[0] == std::vector<std::string>{"policy", "metric", "value", "cdf_level"});
  CHECK(rows[1][0] == "SRM");
  CHECK(rows[1][1] == "min_rate");
  CHECK(std::stod(rows[3][3]) == 1.0);
}

TEST_CASE("selftest runs the per-sample inequality checks and exits 0") {
  CHECK(run_cli("selftest --epochs 120") == 0);
}
