#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "pcreg/config.hpp"
#include "pcreg/dp_align.hpp"
#include "pcreg/estimator.hpp"
#include "pcreg/rational.hpp"
#include "pcreg/signal_model.hpp"
#include "pcreg/threshold_align.hpp"

namespace pcreg {

// The worked example: four alternating unit regions (lengths 1.3T, 1.45T,
// 1.35T, 1.3T), two nine-sample grids starting at -0.95T and -0.5T, and the
// fixed noise sign patterns applied throughout.
struct PaperCase {
  PiecewiseConstantFunction function;
  SamplingGrid grid1, grid2;
  std::vector<int> signs1, signs2;  // +/-1 noise sign patterns
  SampleSequence gamma1, gamma2;

  SampleSequence corrupted1(double x) const;
  SampleSequence corrupted2(double x) const;
  // Exact sample values for rational x; the noiseless samples are integers.
  std::vector<Rational> corrupted1_exact(const Rational& x) const;
  std::vector<Rational> corrupted2_exact(const Rational& x) const;
};

PaperCase paper_case();

// Closed-form cross-correlation of the corrupted pair as a function of the
// noise magnitude x (a quadratic per shift, shifts -8..8).
double xcorr_closed_form(int shift, double x);

// Prop-3 ground truth: first-sample-after-discontinuity positions.  Needs at
// least one sample beyond the support.
Segmentation true_segmentation(const PiecewiseConstantFunction& f, const SamplingGrid& grid);

// Best-achievable reconstruction given the truth: classification from the
// true count patterns, true levels.
PiecewiseFn<double> reference_reconstruction(const PiecewiseConstantFunction& f,
                                             const SamplingGrid& grid1,
                                             const SamplingGrid& grid2, int ref_index);

struct ThresholdCaseResult {
  double x = 0.0;
  ThresholdSearchResult search;
  LevelEstimate levels;  // when feasible
};

// Threshold pipeline on the worked instance at noise magnitude x.
ThresholdCaseResult run_threshold_case(double x);

struct DpCaseResult {
  double x = 0.0;
  double v = 0.0;
  PathResult paths;
  std::vector<PathSegmentation> segmentations;  // one per path, in order
};

// DP pipeline on the worked instance.
DpCaseResult run_dp_case(double x, double v, WeightKind kind = WeightKind::indicator);

// Picks among tied paths by the smallest predicted estimation-error energy
// (minimized over reference indices); -1 when no path supports a
// reconstruction.
int select_path(const std::vector<PathSegmentation>& segmentations, const SampleSequence& y1,
                const SampleSequence& y2);

struct CheckLine {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct ReproResult {
  nlohmann::json report;
  std::vector<CheckLine> checks;
  bool ok = false;
};

// Reproduces the worked example end to end: the noiseless sequences, the
// full cross-correlation table and its argmax transition, the threshold
// ladder at x in {0, 0.15, 0.3, 0.49, 0.5}, the DP paths, the level
// estimates, and the two exact energy gaps (11/144 and 41/144 in units
// of T).  Every expectation becomes a pass/fail check line.
ReproResult run_paper_repro();

// Writes report.json plus CSV tables (cross-correlation check, threshold
// ladders, DP paths) and the x = 0.2 alignment graph in DOT form.
void write_repro_artifacts(const ReproResult& result, const std::filesystem::path& dir);

// Fixed-function Monte Carlo over noise draws: per-method feasibility,
// exact-segmentation and false-segmentation rates, boundary position
// errors, and reconstruction energy against the truth-derived reference.
nlohmann::json run_monte_carlo(const ExperimentConfig& cfg, long long trials);

void emit_report(const nlohmann::json& report, const std::filesystem::path& path);
nlohmann::json load_report(const std::filesystem::path& path);
void write_monte_carlo_csv(const nlohmann::json& report, const std::filesystem::path& path);

}  // namespace pcreg
