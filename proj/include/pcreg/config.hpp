#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "pcreg/dp_align.hpp"
#include "pcreg/noise.hpp"
#include "pcreg/signal_model.hpp"

namespace pcreg {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct GridSpec {
  double offset_in_T = 0.0;
  int count = 0;
};

// Everything a run needs: the function, the two grids, the noise law and
// seed, the method and its parameters, and where to write results.
struct ExperimentConfig {
  std::vector<double> levels;
  std::vector<double> lengths_in_T;
  double interval = 1.0;  // T
  GridSpec grid1, grid2;
  NoiseSpec noise = NoiseSpec::fixed({});
  std::uint64_t seed = 0;
  std::string method = "dp";  // xcorr | threshold | dp | all
  WeightKind dp_weight = WeightKind::indicator;
  double dp_threshold = 1.0;
  int max_paths = 64;
  std::vector<int> ref_indices;  // empty means every admissible l
  long long trials = 1000;
  double tolerance = 1e-9;
  std::string report_path;
  std::string csv_dir;
  std::string dot_path;

  PiecewiseConstantFunction function() const;
  SamplingGrid grid(int which) const;  // 1 or 2
};

// Strict JSON parse: unknown keys are rejected by name, malformed values
// carry the source position.  Defaults: max_paths 64, tolerance 1e-9.
ExperimentConfig load_config(const std::filesystem::path& path);
ExperimentConfig parse_config(const std::string& text, const std::string& origin);

}  // namespace pcreg
