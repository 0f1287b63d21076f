#include <catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "uavjam/cli.hpp"

namespace fs = std::filesystem;

namespace {

struct Run {
  int code = 0;
  std::string out;
  std::string err;
};

Run invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "uavjam");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  Run r;
  r.code = uavjam::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

std::string config_path() { return std::string(UAVJAM_CONFIG_DIR) + "/default.json"; }

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("uavjam_cli_" + name);
  fs::remove_all(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void write(const fs::path& p, const std::string& text) {
  std::ofstream(p) << text;
}

}  // namespace

TEST_CASE("usage errors exit with 1") {
  CHECK(invoke({}).code == 1);
  CHECK(invoke({"frobnicate"}).code == 1);
  CHECK(invoke({"metrics"}).code == 1);
  CHECK(invoke({"metrics", "--config", config_path(), "--scheme", "mimo"}).code == 1);
  CHECK(invoke({"metrics", "--config", config_path(), "--grid-step", "-1"}).code == 1);
  CHECK(invoke({"sweep", "spiral", "--config", config_path()}).code == 1);
  CHECK(invoke({"--help"}).code == 0);
}

TEST_CASE("invalid scenarios exit with 2") {
  const fs::path dir = scratch("invalid");
  fs::create_directories(dir);
  write(dir / "bad.json", R"({"bob": [0, 0]})");
  const Run r = invoke({"metrics", "--config", (dir / "bad.json").string(), "--out", (dir / "o").string()});
  CHECK(r.code == 2);
  CHECK(r.err.find("alice and bob") != std::string::npos);
  write(dir / "zf.json", R"({"scheme": "zf", "power": {"gamma_j2": 3}})");
  CHECK(invoke({"metrics", "--config", (dir / "zf.json").string(), "--out", (dir / "o").string()}).code == 2);
  write(dir / "broken.json", "{not json");
  CHECK(invoke({"metrics", "--config", (dir / "broken.json").string()}).code == 2);
  CHECK(invoke({"metrics", "--config", (dir / "missing.json").string()}).code == 2);
}

TEST_CASE("metrics writes the field, the metrics row and a manifest") {
  const fs::path dir = scratch("metrics");
  const Run r = invoke({"metrics", "--config", config_path(), "--out", dir.string(), "--grid-step", "1"});
  REQUIRE(r.code == 0);
  CHECK(fs::exists(dir / "delta_field.csv"));
  const std::string metrics = slurp(dir / "metrics.csv");
  CHECK(metrics.rfind("scheme,rj,theta1,theta2,gamma_a,gamma_j,step,coverage,efficiency,wsc\nzf,5,0,180,", 0) == 0);
  const auto manifest = uavjam::json::parse(slurp(dir / "manifest.json"));
  CHECK(manifest.at("command") == "metrics");
  CHECK(manifest.at("grid_step") == 1.0);
  CHECK(manifest.at("tool_version") == uavjam::cli::kToolVersion);
  CHECK(manifest.contains("timestamp"));
  CHECK(manifest.at("scenario").at("scheme") == "zf");

  const fs::path dir2 = scratch("metrics_classical");
  REQUIRE(invoke({"metrics", "--config", config_path(), "--out", dir2.string(), "--grid-step", "1", "--scheme",
                  "classical"})
              .code == 0);
  CHECK(slurp(dir2 / "metrics.csv").find("\nclassical,") != std::string::npos);
}

TEST_CASE("repeated runs produce byte-identical CSV across worker counts") {
  const fs::path a = scratch("det_a"), b = scratch("det_b");
  REQUIRE(invoke({"sweep", "angles", "--config", config_path(), "--out", a.string(), "--grid-step", "2",
                  "--angle-step", "30", "--rj", "4", "--workers", "1"})
              .code == 0);
  REQUIRE(invoke({"sweep", "angles", "--config", config_path(), "--out", b.string(), "--grid-step", "2",
                  "--angle-step", "30", "--rj", "4", "--workers", "4"})
              .code == 0);
  for (const char* f : {"optimize_angles.csv", "fig4.dat", "fig5.dat", "plots.gp"}) {
    CHECK(slurp(a / f) == slurp(b / f));
    CHECK(!slurp(a / f).empty());
  }
}

TEST_CASE("radius and power sweeps write their tables") {
  const fs::path dir = scratch("sweeps");
  REQUIRE(invoke({"sweep", "radius", "--config", config_path(), "--out", dir.string(), "--grid-step", "3", "--rj", "2",
                  "6"})
              .code == 0);
  const std::string radius = slurp(dir / "sweep_radius.csv");
  std::size_t lines = 0;
  for (char c : radius) lines += c == '\n';
  CHECK(lines == 1 + 2 * 4 * 2);
  REQUIRE(invoke({"sweep", "power", "--config", config_path(), "--out", dir.string(), "--grid-step", "3",
                  "--angle-step", "60", "--rj", "4", "--ratios", "0", "1"})
              .code == 0);
  const std::string power = slurp(dir / "sweep_power.csv");
  lines = 0;
  for (char c : power) lines += c == '\n';
  CHECK(lines == 1 + 2 * 2);
  CHECK(fs::exists(dir / "fig6.dat"));
  CHECK(fs::exists(dir / "fig7.dat"));
  CHECK(fs::exists(dir / "fig8.dat"));
}

TEST_CASE("validate checks closed forms against the oracle") {
  const fs::path dir = scratch("validate");
  const Run r = invoke({"validate", "--config", config_path(), "--out", dir.string(), "--trials", "20000",
                        "--draws", "10", "--seed", "3"});
  CHECK(r.code == 0);
  CHECK(r.out.find("verdict derived_sign") != std::string::npos);
  CHECK(r.out.find("FAIL") == std::string::npos);
  CHECK(slurp(dir / "validation.csv").rfind("check,scheme,", 0) == 0);

  const Run few = invoke({"validate", "--config", config_path(), "--out", dir.string(), "--trials", "50",
                          "--draws", "1"});
  CHECK(few.err.find("warning") != std::string::npos);
  CHECK(few.code == 3);
}
