#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "json.hpp"

#include "cavscat/pipeline.hpp"

using namespace cavscat;
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

ScenarioConfig fast_scenario() {
  ScenarioConfig sc = default_scenario();
  sc.grid.r_max = 1200.0;
  sc.grid.step = 0.05;
  sc.scan.points = 101;
  return sc;
}

fs::path fresh_dir(const std::string& tag) {
  const fs::path p = fs::temp_directory_path() / ("cavscat_pipeline_" + tag);
  fs::remove_all(p);
  return p;
}

std::size_t line_count(const std::string& text) {
  std::size_t n = 0;
  for (char c : text)
    if (c == '\n') ++n;
  return n;
}

}  // namespace

TEST_CASE("formatted numbers survive a round trip") {
  for (double v : {0.0, 1.0, -2.5e17, 1.0 / 3.0, 81.387, 1695.8312345678901,
                   1e-300, -3.14159e8}) {
    const std::string s = format_sig(v);
    CHECK(std::strtod(s.c_str(), nullptr) == v);
  }
}

TEST_CASE("digest matches the published test vectors") {
  CHECK(fnv1a64("") == 0xcbf29ce484222325ULL);
  CHECK(fnv1a64("a") == 0xaf63dc4c8601ec8cULL);
  CHECK(fnv1a64("foobar") == 0x85944171f73967e8ULL);
}

TEST_CASE("output directory precedence") {
  ScenarioConfig sc;
  sc.output_dir = "from_config";
  unsetenv("CAVSCAT_OUT_DIR");
  CHECK(resolve_output_dir(sc, "from_cli") == "from_cli");
  CHECK(resolve_output_dir(sc, "") == "from_config");
  sc.output_dir.clear();
  CHECK(resolve_output_dir(sc, "") == "");
  setenv("CAVSCAT_OUT_DIR", "from_env", 1);
  CHECK(resolve_output_dir(sc, "from_cli") == "from_env");
  unsetenv("CAVSCAT_OUT_DIR");
}

TEST_CASE("bound run writes verifiable artifacts") {
  RunOptions opt;
  opt.scenario = fast_scenario();
  const fs::path dir = fresh_dir("bound");
  opt.out_dir = dir.string();

  const DigestMap digests = run_bound(opt);
  REQUIRE(digests.count("bound.csv") == 1);
  REQUIRE(digests.count("report.json") == 1);

  for (const auto& [name, digest] : digests) {
    const std::string content = slurp(dir / name);
    CHECK(hex64(fnv1a64(content)) == digest);
    CHECK(content.find('\r') == std::string::npos);
  }

  const std::string csv = slurp(dir / "bound.csv");
  CHECK(csv.substr(0, csv.find('\n')) ==
        "v,E_rel_MHz,E_above_lower_MHz,E_above_lower_mK");

  const json report = json::parse(slurp(dir / "report.json"));
  CHECK(report.at("n_levels").get<int>() >= 1);
  CHECK(report.at("well_depth_MHz").get<double>() > 100.0);
  CHECK(report.at("v0_MHz").get<double>() < 0.0);
  CHECK(report.at("w_b_MHz").get<double>() > 0.0);
  CHECK(line_count(csv) == 1 + report.at("n_levels").get<std::size_t>());

  const json manifest = json::parse(slurp(dir / "manifest.json"));
  CHECK(manifest.at("engine_version").get<std::string>() == kEngineVersion);
  CHECK(manifest.at("threads").get<int>() == 1);
  CHECK(manifest.at("outputs").at("bound.csv").get<std::string>() ==
        digests.at("bound.csv"));
  CHECK(manifest.at("config").contains("cavity.g_A"));
  fs::remove_all(dir);
}

TEST_CASE("resonance run is reproducible across thread counts") {
  RunOptions a;
  a.scenario = fast_scenario();
  const fs::path dir_a = fresh_dir("res_t1");
  a.out_dir = dir_a.string();
  a.threads = 1;

  RunOptions b = a;
  const fs::path dir_b = fresh_dir("res_t2");
  b.out_dir = dir_b.string();
  b.threads = 2;

  const DigestMap da = run_resonance(a);
  const DigestMap db = run_resonance(b);

  REQUIRE(da.count("resonance.csv") == 1);
  CHECK(da.at("resonance.csv") == db.at("resonance.csv"));
  CHECK(da.at("report.json") == db.at("report.json"));

  const std::string csv = slurp(dir_a / "resonance.csv");
  CHECK(csv.substr(0, csv.find('\n')) ==
        "E_mK,E_MHz,eta_bg,eta_r,F_re,F_im,sigma_el_a0sq");
  CHECK(line_count(csv) == 1 + a.scenario.scan.points);

  const json report = json::parse(slurp(dir_a / "report.json"));
  CHECK(report.at("found").get<bool>());
  const double w_b = report.at("w_b_MHz").get<double>();
  CHECK(std::abs(report.at("e_res_MHz").get<double>() - w_b) < 1e-5);
  CHECK(report.at("gamma_MHz").get<double>() > 0.0);
  CHECK(report.at("coupling_scale").get<double>() == 1.0);
  CHECK_FALSE(report.at("unitarity_warning").get<bool>());
  fs::remove_all(dir_a);
  fs::remove_all(dir_b);
}

TEST_CASE("sweep emits one row per value and validates its range") {
  RunOptions opt;
  opt.scenario = fast_scenario();
  const fs::path dir = fresh_dir("sweep");
  opt.out_dir = dir.string();

  SweepRange bad;
  bad.param = "mass";
  bad.lo = 1.0;
  bad.hi = 2.0;
  CHECK_THROWS_AS(run_sweep(opt, bad), ConfigError);

  SweepRange flat{"g_A", 20.0, 18.0, 2};
  CHECK_THROWS_AS(run_sweep(opt, flat), ConfigError);
  SweepRange single{"g_A", 18.0, 20.0, 1};
  CHECK_THROWS_AS(run_sweep(opt, single), ConfigError);

  SweepRange range{"g_A", 18.0, 24.0, 2};
  const DigestMap digests = run_sweep(opt, range);
  REQUIRE(digests.count("sweep.csv") == 1);
  const std::string csv = slurp(dir / "sweep.csv");
  CHECK(line_count(csv) == 1 + range.steps);
  CHECK(csv.substr(0, csv.find(',')) == "param_value");

  const json report = json::parse(slurp(dir / "report.json"));
  CHECK(report.at("param").get<std::string>() == "g_A");
  CHECK(report.at("rows").size() == 2);
  fs::remove_all(dir);
}

TEST_CASE("evolution run guards its sampling and window") {
  RunOptions opt;
  opt.scenario = fast_scenario();
  const fs::path dir = fresh_dir("evolve");
  opt.out_dir = dir.string();

  EvolveSpec degenerate;
  degenerate.t_points = 1;
  CHECK_THROWS_AS(run_evolve(opt, degenerate), ConfigError);

  RunOptions narrow = opt;
  narrow.scenario.scan.half_width_MHz = 0.05;
  EvolveSpec spec;
  CHECK_THROWS_AS(run_evolve(narrow, spec), ConfigError);

  spec.t_points = 41;
  const DigestMap digests = run_evolve(opt, spec);
  REQUIRE(digests.count("evolve.csv") == 1);
  const std::string csv = slurp(dir / "evolve.csv");
  CHECK(line_count(csv) == 1 + spec.t_points);
  CHECK(csv.substr(0, csv.find('\n')) == "t_us,survival");

  const json report = json::parse(slurp(dir / "report.json"));
  CHECK(report.at("gamma_MHz").get<double>() > 0.0);
  CHECK(report.at("norm0").get<double>() > 0.5);
  CHECK(report.at("t_max_us").get<double>() > 0.0);
  fs::remove_all(dir);
}

TEST_CASE("unwritable output directory raises an io error") {
  const fs::path blocker = fs::temp_directory_path() / "cavscat_blocker";
  {
    std::ofstream out(blocker);
    out << "x";
  }
  RunOptions opt;
  opt.scenario = fast_scenario();
  opt.out_dir = (blocker / "sub").string();
  CHECK_THROWS_AS(run_bound(opt), IoError);
  fs::remove(blocker);
}
