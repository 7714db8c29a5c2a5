// End-to-end checks of the galikit command-line tool: config validation,
// exit codes, CSV schemas, determinism, and the scenario-level numerical
// claims that can be verified from the emitted files alone.
//
// Usage: cli_test <galikit-binary> <configs-dir> <scratch-dir>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

#include "scenario.hpp"

namespace fs = std::filesystem;

namespace {

int g_failures = 0;

#define CHECK(cond)                                                        \
  do {                                                                     \
    if (!(cond)) {                                                         \
      std::fprintf(stderr, "FAILED %s:%d: %s\n", __FILE__, __LINE__, #cond); \
      ++g_failures;                                                        \
    }                                                                      \
  } while (0)

std::string g_binary;
fs::path g_configs;
fs::path g_scratch;

int run_cli(const std::string& args) {
  const std::string cmd = "\"" + g_binary + "\" " + args + " > " +
                          (g_scratch / "cli_output.log").string() + " 2>&1";
  const int status = std::system(cmd.c_str());
  if (status == -1) return -1;
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

struct Csv {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  double value(std::size_t row, const std::string& column) const {
    for (std::size_t c = 0; c < header.size(); ++c) {
      if (header[c] == column) return std::stod(rows[row][c]);
    }
    throw std::runtime_error("no column " + column);
  }
};

Csv read_csv(const fs::path& path) {
  Csv out;
  std::ifstream in(path);
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (first) {
      out.header = cells;
      first = false;
    } else {
      out.rows.push_back(cells);
    }
  }
  return out;
}

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
}

void test_parse_errors() {
  using galikit::tools::parse_scenario;
  using galikit::tools::ScenarioError;

  // Empty input: the error names the missing kind.
  try {
    parse_scenario("");
    CHECK(false);
  } catch (const ScenarioError& e) {
    CHECK(std::string(e.what()).find("kind") != std::string::npos);
  }

  try {
    parse_scenario("{}");
    CHECK(false);
  } catch (const ScenarioError& e) {
    CHECK(std::string(e.what()).find("kind") != std::string::npos);
  }

  // Unknown keys are named.
  try {
    parse_scenario(R"({"kind": "earth-sim", "durations": 1.0})");
    CHECK(false);
  } catch (const ScenarioError& e) {
    CHECK(std::string(e.what()).find("durations") != std::string::npos);
  }

  // All violations are listed, not just the first.
  try {
    parse_scenario(R"({"kind": "earth-sim", "dt": -1.0,
                       "earth": {"omega_e": [0,0,0], "g_a": 8.0}})");
    CHECK(false);
  } catch (const ScenarioError& e) {
    const std::string what = e.what();
    CHECK(what.find("dt") != std::string::npos);
    CHECK(what.find("g_a") != std::string::npos);
  }

  // Unknown kind.
  try {
    parse_scenario(R"({"kind": "teleport"})");
    CHECK(false);
  } catch (const ScenarioError& e) {
    CHECK(std::string(e.what()).find("teleport") != std::string::npos);
  }

  // A minimal valid config parses with defaults applied.
  const galikit::tools::Scenario s = parse_scenario(slurp(g_configs / "fuse_galilean.json"));
  CHECK(s.kind == galikit::tools::ScenarioKind::FuseDemo);
  CHECK(!s.seed.has_value());
}

void test_exit_codes() {
  CHECK(run_cli("earth-sim --config " + (g_configs / "nonexistent.json").string() +
                " --out " + (g_scratch / "x").string()) == 4);

  const fs::path bad = g_scratch / "bad.json";
  write_file(bad, R"({"kind": "earth-sim", "dt": 0.0})");
  CHECK(run_cli("earth-sim --config " + bad.string() + " --out " +
                (g_scratch / "x").string()) == 2);

  // Kind mismatch between subcommand and config is a config error.
  CHECK(run_cli("gdh-fk --config " + (g_configs / "earth_sim.json").string() +
                " --out " + (g_scratch / "x").string()) == 2);

  // A config that passes validation but diverges numerically.
  const fs::path blowup = g_scratch / "blowup.json";
  write_file(blowup, R"({"kind": "earth-sim", "duration": 10.0, "dt": 0.001,
                         "imu": {"omega": [0,0,0], "accel": [1e308, 0, 0]}})");
  CHECK(run_cli("earth-sim --config " + blowup.string() + " --out " +
                (g_scratch / "x").string()) == 3);

  // Stochastic scenario without a seed anywhere.
  const fs::path sampled = g_scratch / "sampled_noseed.json";
  std::string text = slurp(g_configs / "fuse_sampled.json");
  const auto pos = text.find("\"seed\": 42,");
  CHECK(pos != std::string::npos);
  text.erase(pos, std::string("\"seed\": 42,").size());
  write_file(sampled, text);
  CHECK(run_cli("fuse-demo --config " + sampled.string() + " --out " +
                (g_scratch / "x").string()) == 2);
  // ... but a --seed override satisfies it.
  CHECK(run_cli("fuse-demo --config " + sampled.string() + " --out " +
                (g_scratch / "seeded").string() + " --seed 7") == 0);
}

void test_earth_sim() {
  const fs::path out = g_scratch / "earth";
  CHECK(run_cli("earth-sim --config " + (g_configs / "earth_sim.json").string() +
                " --out " + out.string() + " --plot") == 0);

  const Csv csv = read_csv(out / "trajectory.csv");
  CHECK(csv.header.size() == 16);
  CHECK(csv.header[0] == "time");
  for (const auto& row : csv.rows) CHECK(row.size() == csv.header.size());

  // Zero Earth rate and the hover input: straight-line coasting.
  const Eigen::Vector3d v0(1.0, 0.5, 0.0);
  for (std::size_t i = 0; i < csv.rows.size(); i += 100) {
    const double t = csv.value(i, "time");
    CHECK(std::abs(csv.value(i, "px") - t * v0.x()) < 1e-9);
    CHECK(std::abs(csv.value(i, "py") - t * v0.y()) < 1e-9);
    CHECK(std::abs(csv.value(i, "pz")) < 1e-9);
  }
  CHECK(fs::exists(out / "trajectory.svg"));

  // Same config twice: byte-identical output.
  const fs::path out2 = g_scratch / "earth2";
  CHECK(run_cli("earth-sim --config " + (g_configs / "earth_sim.json").string() +
                " --out " + out2.string()) == 0);
  CHECK(slurp(out / "trajectory.csv") == slurp(out2 / "trajectory.csv"));
}

void test_gdh() {
  const fs::path out = g_scratch / "gdh";
  CHECK(run_cli("gdh-fk --config " + (g_configs / "gdh_scara.json").string() +
                " --out " + out.string()) == 0);

  const Csv csv = read_csv(out / "end_effector.csv");
  CHECK(csv.header == std::vector<std::string>(
                          {"time", "px", "py", "pz", "pdx", "pdy", "pdz"}));
  for (const auto& row : csv.rows) CHECK(row.size() == csv.header.size());

  // Post-hoc check: the velocity columns are the derivative of the
  // position columns.
  for (std::size_t i = 200; i + 1 < csv.rows.size(); i += 300) {
    const double dt = csv.value(i + 1, "time") - csv.value(i - 1, "time");
    for (const auto& [p, pd] : {std::pair{"px", "pdx"}, {"py", "pdy"}, {"pz", "pdz"}}) {
      const double fd = (csv.value(i + 1, p) - csv.value(i - 1, p)) / dt;
      CHECK(std::abs(fd - csv.value(i, pd)) < 1e-5);
    }
  }
}

void test_fuse() {
  const fs::path out_g = g_scratch / "fuse_g";
  const fs::path out_c = g_scratch / "fuse_c";
  CHECK(run_cli("fuse-demo --config " + (g_configs / "fuse_galilean.json").string() +
                " --out " + out_g.string() + " --plot") == 0);
  CHECK(run_cli("fuse-demo --config " + (g_configs / "fuse_classical.json").string() +
                " --out " + out_c.string()) == 0);

  const Csv galilean = read_csv(out_g / "result.csv");
  const Csv classical = read_csv(out_c / "result.csv");
  CHECK(galilean.rows.size() == 1);
  CHECK(galilean.rows[0][0] == "galilean");
  CHECK(classical.rows[0][0] == "classical");

  // Timestamp uncertainty stretches the posterior along the x velocity;
  // the time-blind baseline is tighter (overconfident).
  const double gal_xx = galilean.value(0, "poscov_11");
  const double gal_yy = galilean.value(0, "poscov_22");
  CHECK(gal_xx > 10.0 * gal_yy);
  CHECK(classical.value(0, "poscov_trace") < galilean.value(0, "poscov_trace"));
  CHECK(fs::exists(out_g / "fusion.svg"));
  CHECK(fs::exists(out_g / "covariance.csv"));

  // Determinism of the sampled variant: same seed, same bytes.
  const fs::path s1 = g_scratch / "fuse_s1";
  const fs::path s2 = g_scratch / "fuse_s2";
  const fs::path s3 = g_scratch / "fuse_s3";
  const std::string cfg = (g_configs / "fuse_sampled.json").string();
  CHECK(run_cli("fuse-demo --config " + cfg + " --out " + s1.string()) == 0);
  CHECK(run_cli("fuse-demo --config " + cfg + " --out " + s2.string()) == 0);
  CHECK(run_cli("fuse-demo --config " + cfg + " --out " + s3.string() +
                " --seed 99") == 0);
  CHECK(slurp(s1 / "result.csv") == slurp(s2 / "result.csv"));
  CHECK(slurp(s1 / "result.csv") != slurp(s3 / "result.csv"));
}

void test_preintegrate() {
  const fs::path out = g_scratch / "pre";
  CHECK(run_cli("preintegrate --config " +
                (g_configs / "preintegrate.json").string() + " --out " +
                out.string()) == 0);

  const Csv csv = read_csv(out / "relative_frame.csv");
  CHECK(csv.header[0] == "time");
  CHECK(csv.header[1] == "rel_time");
  for (const auto& row : csv.rows) CHECK(row.size() == csv.header.size());

  // The relative time entry accumulates the elapsed duration.
  const std::size_t last = csv.rows.size() - 1;
  CHECK(std::abs(csv.value(last, "rel_time") -
                 (csv.value(last, "time") - csv.value(0, "time"))) < 1e-9);

  // The final CSV row is the library's own pre-integration result.
  const auto scenario =
      galikit::tools::parse_scenario(slurp(g_configs / "preintegrate.json"));
  const auto& params =
      std::get<galikit::tools::PreintegrateScenario>(scenario.params);
  const galikit::GalileanFrame rel = galikit::preintegrate(params.samples);
  CHECK(std::abs(csv.value(last, "rel_time") - rel.time) < 1e-12);
  CHECK(std::abs(csv.value(last, "px") - rel.position.x()) < 1e-12);
  CHECK(std::abs(csv.value(last, "py") - rel.position.y()) < 1e-12);
  CHECK(std::abs(csv.value(last, "vz") - rel.velocity.z()) < 1e-12);
}

}  // namespace

int main(int argc, char** argv) {
  if (argc != 4) {
    std::fprintf(stderr, "usage: cli_test <galikit-binary> <configs> <scratch>\n");
    return 1;
  }
  g_binary = argv[1];
  g_configs = argv[2];
  g_scratch = argv[3];
  fs::remove_all(g_scratch);
  fs::create_directories(g_scratch);

  test_parse_errors();
  test_exit_codes();
  test_earth_sim();
  test_gdh();
  test_fuse();
  test_preintegrate();

  if (g_failures == 0) {
    std::printf("cli_test: all checks passed\n");
  } else {
    std::printf("cli_test: %d checks failed\n", g_failures);
  }
  return g_failures;
}
