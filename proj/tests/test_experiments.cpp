#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "pcreg/experiments.hpp"

using namespace pcreg;
using nlohmann::json;

namespace {

const char* kMinimalConfig = R"({
  "function": {"levels": [1, -1, 1, -1], "lengths_in_T": [1.3, 1.45, 1.35, 1.3], "T": 1.0},
  "grids": [{"offset_in_T": -0.95, "N": 9}, {"offset_in_T": -0.5, "N": 9}]
})";

struct TempDir {
  std::filesystem::path path;
  TempDir() : path(std::filesystem::temp_directory_path() / "pcreg_test_out") {
    std::filesystem::remove_all(path);
    std::filesystem::create_directories(path);
  }
  ~TempDir() { std::filesystem::remove_all(path); }
};

}  // namespace

TEST_CASE("minimal config parses with defaults") {
  const ExperimentConfig cfg = parse_config(kMinimalConfig, "inline");
  CHECK(cfg.max_paths == 64);
  CHECK(cfg.tolerance == 1e-9);
  CHECK(cfg.method == "dp");
  CHECK(cfg.grid1.count == 9);
  CHECK(validate_function(cfg.function()).empty());
}

TEST_CASE("unknown keys are rejected by name") {
  const std::string bad = R"({
    "function": {"levels": [1], "lengths_in_T": [1.3], "T": 1.0},
    "grids": [{"offset_in_T": 0, "N": 4}, {"offset_in_T": 0.3, "N": 4}],
    "wibble": 3
  })";
  try {
    parse_config(bad, "inline");
    FAIL("expected a config error");
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find("wibble") != std::string::npos);
  }

  const std::string malformed = "{ not json";
  CHECK_THROWS_AS(parse_config(malformed, "inline"), ConfigError);
}

TEST_CASE("fixed noise patterns load from a plain numeric file") {
  TempDir tmp;
  const auto pattern_path = tmp.path / "pattern.txt";
  {
    std::ofstream out(pattern_path);
    out << "-0.15 0.15 -0.15\n0.15 0.15 -0.15 -0.15 0.15 0.15\n";
  }
  const std::string text = std::string(R"({
    "function": {"levels": [1, -1, 1, -1], "lengths_in_T": [1.3, 1.45, 1.35, 1.3], "T": 1.0},
    "grids": [{"offset_in_T": -0.95, "N": 9}, {"offset_in_T": -0.5, "N": 9}],
    "noise": {"kind": "fixed", "pattern_file": ")") +
                           pattern_path.string() + R"("}
  })";
  const ExperimentConfig cfg = parse_config(text, "inline");
  REQUIRE(cfg.noise.pattern.size() == 9);
  CHECK(cfg.noise.pattern.front() == -0.15);
  CHECK(cfg.noise.pattern.back() == 0.15);
}

TEST_CASE("repro bundle is deterministic") {
  ReproResult a = run_paper_repro();
  ReproResult b = run_paper_repro();
  a.report.erase("timing");
  b.report.erase("timing");
  CHECK(a.report.dump() == b.report.dump());
}

TEST_CASE("report round trip") {
  TempDir tmp;
  json report;
  report["alpha"] = 1.5;
  report["nested"]["values"] = {1, 2, 3};
  const auto path = tmp.path / "r.json";
  emit_report(report, path);
  CHECK(load_report(path) == report);
}

TEST_CASE("closed-form cross-correlation spot values") {
  // Hand-computed inner products at noise magnitude one half.
  CHECK(xcorr_closed_form(3, 0.5) == doctest::Approx(1.5).epsilon(1e-15));
  CHECK(xcorr_closed_form(-4, 0.5) == doctest::Approx(-0.25).epsilon(1e-15));
  CHECK(xcorr_closed_form(-1, 0.0) == 3.0);
  CHECK(xcorr_closed_form(1, 0.0) == -4.0);
}

TEST_CASE("worked-example reproduction passes every check") {
  const ReproResult result = run_paper_repro();
  for (const auto& check : result.checks) {
    INFO(check.name, ": ", check.detail);
    CHECK(check.pass);
  }
  CHECK(result.ok);
  CHECK(result.report.at("energies").at("threshold_limit_gap_in_T") == "11/144");
  CHECK(result.report.at("energies").at("dp_best_gap_in_T") == "41/144");
}

TEST_CASE("repro artifacts are written") {
  TempDir tmp;
  const ReproResult result = run_paper_repro();
  write_repro_artifacts(result, tmp.path);
  CHECK(std::filesystem::exists(tmp.path / "report.json"));
  CHECK(std::filesystem::exists(tmp.path / "xcorr_closed_form_check.csv"));
  CHECK(std::filesystem::exists(tmp.path / "threshold_ladders.csv"));
  CHECK(std::filesystem::exists(tmp.path / "dp_paths.csv"));
  CHECK(std::filesystem::exists(tmp.path / "graph_x0.2.dot"));
}

TEST_CASE("monte carlo with vanishing noise recovers every segmentation") {
  ExperimentConfig cfg = parse_config(kMinimalConfig, "inline");
  cfg.noise = NoiseSpec::symmetric_binary(0.0);
  cfg.method = "all";
  cfg.dp_threshold = 1.0;
  cfg.seed = 9;
  const json report = run_monte_carlo(cfg, 50);
  CHECK(report.at("methods").at("threshold").at("exact_segmentation_rate") == 1.0);
  CHECK(report.at("methods").at("dp_w1").at("exact_segmentation_rate") == 1.0);
  CHECK(report.at("methods").at("dp_w2").at("exact_segmentation_rate") == 1.0);
  CHECK(report.at("methods").at("dp_w3").at("exact_segmentation_rate") == 1.0);
  CHECK(report.at("methods").at("threshold").at("false_segmentation_per_trial") == 0.0);
}

TEST_CASE("monte carlo feasibility under worked-example sign noise") {
  ExperimentConfig cfg = parse_config(kMinimalConfig, "inline");
  cfg.noise = NoiseSpec::symmetric_binary(0.15);
  cfg.method = "threshold";
  cfg.seed = 77;
  const json report = run_monte_carlo(cfg, 1000);
  CHECK(report.at("methods").at("threshold").at("feasible_rate") == 1.0);
}

TEST_CASE("monte carlo dp recovery rate under well-separated gaussian noise") {
  // Smallest jump 1, gate at half of it, noise a shade below the gate over
  // four standard deviations of each difference value.
  ExperimentConfig cfg = parse_config(kMinimalConfig, "inline");
  const double sigma = 0.5 / (4.5 * std::sqrt(2.0));
  cfg.noise = NoiseSpec::gaussian(sigma);
  cfg.method = "dp";
  cfg.dp_weight = WeightKind::indicator;
  cfg.dp_threshold = 0.5;
  cfg.seed = 31;
  const json report = run_monte_carlo(cfg, 1000);
  CHECK(report.at("methods").at("dp_w1").at("exact_segmentation_rate").get<double>() >= 0.99);
}

TEST_CASE("monte carlo reports are deterministic given the seed") {
  ExperimentConfig cfg = parse_config(kMinimalConfig, "inline");
  cfg.noise = NoiseSpec::gaussian(0.05);
  cfg.method = "all";
  cfg.dp_threshold = 0.5;
  cfg.seed = 123;
  json a = run_monte_carlo(cfg, 25);
  json b = run_monte_carlo(cfg, 25);
  a.erase("timing");
  b.erase("timing");
  CHECK(a.dump() == b.dump());

  cfg.seed = 124;
  json c = run_monte_carlo(cfg, 25);
  c.erase("timing");
  CHECK(a.dump() != c.dump());
}

TEST_CASE("monte carlo rejects non-stochastic noise") {
  ExperimentConfig cfg = parse_config(kMinimalConfig, "inline");
  cfg.noise = NoiseSpec::fixed(std::vector<double>(9, 0.0));
  CHECK_THROWS_AS(run_monte_carlo(cfg, 5), ConfigError);
}
