#include "pcreg/experiments.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>
#include <stdexcept>

#include "pcreg/difference.hpp"
#include "pcreg/noise.hpp"
#include "pcreg/xcorr.hpp"

namespace pcreg {

using nlohmann::json;

namespace {

Vertex seg_vertex(int j1, int j2, int s) { return {Vertex::Kind::seg, j1, j2, s}; }
Vertex align_vertex(int j1, int j2) { return {Vertex::Kind::align, j1, j2, 0}; }

std::string path_to_text(const std::vector<Vertex>& path) {
  std::string out;
  for (size_t k = 0; k < path.size(); ++k) {
    if (k) out += " -> ";
    out += to_string(path[k]);
  }
  return out;
}

std::vector<Rational> exact_noisy(const SampleSequence& gamma, const std::vector<int>& signs,
                                  const Rational& x) {
  std::vector<Rational> out;
  out.reserve(gamma.values.size());
  for (size_t k = 0; k < gamma.values.size(); ++k) {
    const long long level = std::llround(gamma.values[k]);
    out.push_back(Rational(level) + (signs[k] > 0 ? x : -x));
  }
  return out;
}

}  // namespace

PaperCase paper_case() {
  PaperCase pc;
  pc.function.levels = {1.0, -1.0, 1.0, -1.0};
  pc.function.region_lengths = {1.3, 1.45, 1.35, 1.3};
  pc.function.sampling_interval = 1.0;
  pc.grid1 = {-0.95, 9, 1.0};
  pc.grid2 = {-0.5, 9, 1.0};
  pc.signs1 = {-1, 1, -1, 1, 1, -1, -1, 1, 1};
  pc.signs2 = {-1, -1, 1, -1, -1, 1, 1, 1, -1};
  pc.gamma1 = sample(pc.function, pc.grid1);
  pc.gamma2 = sample(pc.function, pc.grid2);
  return pc;
}

SampleSequence PaperCase::corrupted1(double x) const {
  SampleSequence y = gamma1;
  for (size_t k = 0; k < y.values.size(); ++k) y.values[k] += signs1[k] * x;
  return y;
}

SampleSequence PaperCase::corrupted2(double x) const {
  SampleSequence y = gamma2;
  for (size_t k = 0; k < y.values.size(); ++k) y.values[k] += signs2[k] * x;
  return y;
}

std::vector<Rational> PaperCase::corrupted1_exact(const Rational& x) const {
  return exact_noisy(gamma1, signs1, x);
}

std::vector<Rational> PaperCase::corrupted2_exact(const Rational& x) const {
  return exact_noisy(gamma2, signs2, x);
}

double xcorr_closed_form(int shift, double x) {
  // Quadratic coefficients (c0, c1, c2) per shift, shifts -8..8.
  static constexpr double kCoeff[17][3] = {
      {0, 0, -1},    // -8
      {0, 1, -2},    // -7
      {0, 1, 1},     // -6
      {-1, -3, 2},   // -5
      {2, -3, -3},   // -4
      {1, 5, -2},    // -3
      {-4, 0, 5},    // -2
      {3, -9, 2},    // -1
      {1, 3, -5},    //  0
      {-4, 1, 0},    //  1
      {1, -2, 1},    //  2
      {0, 2, 2},     //  3
      {-1, -2, 1},   //  4
      {0, 4, -2},    //  5
      {0, 0, 1},     //  6
      {0, -1, -2},   //  7
      {0, 0, 1},     //  8
  };
  if (shift < -8 || shift > 8) throw std::out_of_range("xcorr_closed_form: shift out of range");
  const double* c = kCoeff[shift + 8];
  return c[0] + c[1] * x + c[2] * x * x;
}

Segmentation true_segmentation(const PiecewiseConstantFunction& f, const SamplingGrid& grid) {
  const RegionCounts rc = region_counts(f, grid);
  if (rc.trailing_zeros < 1) {
    throw std::domain_error("true_segmentation: grid has no sample beyond the support");
  }
  Segmentation seg;
  int pos = rc.leading_zeros + 1;
  seg.boundaries.push_back(pos);
  for (int count : rc.counts) {
    pos += count;
    seg.boundaries.push_back(pos);
  }
  return seg;
}

PiecewiseFn<double> reference_reconstruction(const PiecewiseConstantFunction& f,
                                             const SamplingGrid& grid1,
                                             const SamplingGrid& grid2, int ref_index) {
  const RegionCounts rc1 = region_counts(f, grid1);
  const RegionCounts rc2 = region_counts(f, grid2);
  std::vector<long long> c1(rc1.counts.begin(), rc1.counts.end());
  std::vector<long long> c2(rc2.counts.begin(), rc2.counts.end());
  const IndexClassification cls = classify_indices(c1, c2, ref_index);
  const IntervalBounds bounds = interval_bounds(cls, f.sampling_interval);
  return reconstruct<double>(f.levels, bounds, ref_index);
}

ThresholdCaseResult run_threshold_case(double x) {
  const PaperCase pc = paper_case();
  const SampleSequence y1 = pc.corrupted1(x);
  const SampleSequence y2 = pc.corrupted2(x);
  ThresholdCaseResult out;
  out.x = x;
  out.search = search_threshold(difference_sequence(y1), difference_sequence(y2));
  if (out.search.feasible) {
    out.levels = estimate_levels(y1, y2, out.search.seg1, out.search.seg2);
  }
  return out;
}

DpCaseResult run_dp_case(double x, double v, WeightKind kind) {
  const PaperCase pc = paper_case();
  const SampleSequence y1 = pc.corrupted1(x);
  const SampleSequence y2 = pc.corrupted2(x);
  DpCaseResult out;
  out.x = x;
  out.v = v;
  const AlignmentGraph graph(difference_sequence(y1), difference_sequence(y2), v, kind);
  out.paths = longest_paths(graph);
  for (const auto& path : out.paths.paths) {
    out.segmentations.push_back(path_to_segmentation(path));
  }
  return out;
}

namespace {

void add_check(std::vector<CheckLine>& checks, const std::string& name, bool pass,
               const std::string& detail) {
  checks.push_back({name, pass, detail});
}

bool same_boundaries(const Segmentation& a, const std::vector<int>& expect) {
  return a.boundaries == expect;
}

json piecewise_json(const PiecewiseFn<Rational>& fn) {
  json out;
  out["breakpoints_in_T"] = fn.breakpoints;
  json values = json::array();
  for (const auto& v : fn.values) {
    values.push_back(json{{"exact", v.to_string()}, {"value", v.to_double()}});
  }
  out["values"] = values;
  out["overlapping_bounds"] = fn.overlapping_bounds;
  return out;
}

// Rational level estimate for the worked instance at exact hundredth x.
std::vector<Rational> exact_levels(const PaperCase& pc, const Rational& x,
                                   const Segmentation& seg1, const Segmentation& seg2) {
  const std::vector<Rational> y1 = pc.corrupted1_exact(x);
  const std::vector<Rational> y2 = pc.corrupted2_exact(x);
  return pooled_level_means<Rational>(y1, y2, seg1, seg2);
}

}  // namespace

ReproResult run_paper_repro() {
  const auto t_start = std::chrono::steady_clock::now();
  ReproResult result;
  auto& checks = result.checks;
  json report;

  const PaperCase pc = paper_case();
  const std::vector<double> expect_gamma1{0, 1, 1, -1, 1, 1, -1, 0, 0};
  const std::vector<double> expect_gamma2{0, 1, -1, -1, 1, -1, 0, 0, 0};
  add_check(checks, "noiseless sequences", pc.gamma1.values == expect_gamma1 &&
                                               pc.gamma2.values == expect_gamma2,
            "nine-sample sequences from the two grid placements");
  report["gamma1"] = pc.gamma1.values;
  report["gamma2"] = pc.gamma2.values;

  // Full cross-correlation table against the closed-form quadratics.
  {
    double max_dev = 0.0;
    json rows = json::array();
    for (int step = 0; step <= 100; ++step) {
      const double x = 0.005 * step;
      const CorrelationProfile profile =
          cross_correlation(pc.corrupted1(x), pc.corrupted2(x));
      for (int shift = -8; shift <= 8; ++shift) {
        const double dev = std::abs(profile.at(shift) - xcorr_closed_form(shift, x));
        max_dev = std::max(max_dev, dev);
      }
      if (step % 20 == 0) {
        json row;
        row["x"] = x;
        json vals = json::array();
        for (int shift = -8; shift <= 8; ++shift) vals.push_back(profile.at(shift));
        row["profile"] = vals;
        rows.push_back(row);
      }
    }
    add_check(checks, "cross-correlation table", max_dev <= 1e-9,
              "max deviation from the closed form over 101 noise magnitudes: " +
                  std::to_string(max_dev));
    report["xcorr"]["max_deviation"] = max_dev;
    report["xcorr"]["sampled_profiles"] = rows;
  }

  // Argmax transition of the cross-correlation maximum.
  {
    const auto best_at = [&](double x, double tol) {
      return best_shifts(cross_correlation(pc.corrupted1(x), pc.corrupted2(x)), tol);
    };
    const std::vector<int> at10 = best_at(0.10, 0.0);
    const std::vector<int> at20 = best_at(0.20, 0.0);
    const double x_star = (7.0 - std::sqrt(41.0)) / 4.0;
    const std::vector<int> at_star = best_at(x_star, 1e-9);
    const bool pass = at10 == std::vector<int>{-1} && at20 == std::vector<int>{-3} &&
                      at_star == std::vector<int>{-1, -3};
    add_check(checks, "argmax transition", pass,
              "best shift -1 at x=0.10, -3 at x=0.20, tied {-1,-3} at x=(7-sqrt(41))/4");
    report["xcorr"]["transition_x"] = x_star;
    report["xcorr"]["best_at_0.10"] = at10;
    report["xcorr"]["best_at_0.20"] = at20;
    report["xcorr"]["best_at_transition"] = at_star;
  }

  const std::vector<int> true_b1{2, 4, 5, 7, 8};
  const std::vector<int> true_b2{2, 3, 5, 6, 7};

  // Thresholding across the x sweep.
  json threshold_section = json::array();
  Segmentation seg1_ref, seg2_ref;  // from the x = 0 run, reused for the limit estimate
  for (const double x : {0.0, 0.15, 0.3, 0.49}) {
    const ThresholdCaseResult tc = run_threshold_case(x);
    json entry;
    entry["x"] = x;
    entry["feasible"] = tc.search.feasible;
    json ladder = json::array();
    for (const auto& cand : tc.search.ladder) {
      ladder.push_back(json{{"v", cand.threshold},
                            {"accepted", cand.verdict.accepted},
                            {"reason", cand.verdict.reason}});
    }
    entry["ladder"] = ladder;

    bool pass = tc.search.feasible && same_boundaries(tc.search.seg1, true_b1) &&
                same_boundaries(tc.search.seg2, true_b2);
    std::string detail = "boundaries (2,4,5,7,8)/(2,3,5,6,7)";
    if (pass) {
      const std::vector<double> expect{1.0 - x / 3.0, -1.0 + x / 3.0, 1.0 - x / 3.0, -1.0};
      for (size_t k = 0; k < expect.size(); ++k) {
        if (std::abs(tc.levels.values[k] - expect[k]) > 1e-12) pass = false;
      }
      detail += ", levels (1-x/3, -1+x/3, 1-x/3, -1)";
      entry["levels"] = tc.levels.values;
      entry["accepted_v"] = tc.search.threshold;
      seg1_ref = tc.search.seg1;
      seg2_ref = tc.search.seg2;
    }
    add_check(checks, "threshold search at x=" + std::to_string(x), pass, detail);
    threshold_section.push_back(entry);
  }

  // x = 0.5: infeasible, with the two characteristic failure modes.
  {
    const ThresholdCaseResult tc = run_threshold_case(0.5);
    json entry;
    entry["x"] = 0.5;
    entry["feasible"] = tc.search.feasible;
    json ladder = json::array();
    bool sign_mode = false;
    bool count_mode = false;
    for (const auto& cand : tc.search.ladder) {
      ladder.push_back(json{{"v", cand.threshold},
                            {"accepted", cand.verdict.accepted},
                            {"reason", cand.verdict.reason}});
      if (cand.threshold > 0.5 && cand.threshold <= 1.0 &&
          cand.verdict.kind == CompatibilityVerdict::Kind::sign_mismatch &&
          cand.verdict.reason.find("6") != std::string::npos &&
          cand.verdict.reason.find("7") != std::string::npos) {
        sign_mode = true;
      }
      if (cand.threshold > 1.0 && cand.threshold < 2.0 &&
          cand.verdict.kind == CompatibilityVerdict::Kind::count_mismatch &&
          cand.verdict.reason.find("4 vs 1") != std::string::npos) {
        count_mode = true;
      }
    }
    entry["ladder"] = ladder;
    add_check(checks, "threshold search at x=0.50", !tc.search.feasible && sign_mode && count_mode,
              "infeasible; signs differ at pairs 6,7 for v in (0.5,1]; counts 4 vs 1 for v in (1,2)");
    threshold_section.push_back(entry);
  }
  report["threshold"] = threshold_section;

  // DP longest paths.
  const std::vector<Vertex> unique_path{
      {Vertex::Kind::start, 0, 0, 0}, align_vertex(0, 0),  seg_vertex(2, 2, 0),
      seg_vertex(4, 3, 1),            seg_vertex(5, 5, 0), seg_vertex(7, 6, 1),
      seg_vertex(8, 7, 1),            {Vertex::Kind::terminal, 0, 0, 0}};
  json dp_section = json::array();
  for (const double x : {0.0, 0.15, 0.2, 0.3, 0.49}) {
    const DpCaseResult dc = run_dp_case(x, 1.0);
    json entry;
    entry["x"] = x;
    entry["v"] = 1.0;
    entry["weight"] = dc.paths.weight;
    json paths = json::array();
    for (const auto& p : dc.paths.paths) paths.push_back(path_to_text(p));
    entry["paths"] = paths;
    const bool pass = dc.paths.weight == 5.0 && dc.paths.paths.size() == 1 &&
                      dc.paths.paths[0] == unique_path &&
                      same_boundaries(dc.segmentations[0].seg1, true_b1) &&
                      same_boundaries(dc.segmentations[0].seg2, true_b2);
    add_check(checks, "dp unique path at x=" + std::to_string(x), pass,
              "weight 5 through (0,0),(2,2,0),(4,3,1),(5,5,0),(7,6,1),(8,7,1)");
    dp_section.push_back(entry);
  }

  // x = 0.5 with v in (0.5, 1]: the two tied paths, five inferred regions.
  DpCaseResult tie_case = run_dp_case(0.5, 0.75);
  {
    const std::vector<Vertex> path_a{
        {Vertex::Kind::start, 0, 0, 0}, align_vertex(0, 0),  seg_vertex(2, 2, 0),
        seg_vertex(3, 3, 0),            seg_vertex(4, 4, 0), seg_vertex(5, 5, 0),
        seg_vertex(6, 6, 0),            seg_vertex(8, 7, 1), {Vertex::Kind::terminal, 0, 0, 0}};
    const std::vector<Vertex> path_b{
        {Vertex::Kind::start, 0, 0, 0}, align_vertex(0, 0),  seg_vertex(2, 2, 0),
        seg_vertex(3, 3, 0),            seg_vertex(4, 4, 0), seg_vertex(5, 5, 0),
        seg_vertex(7, 6, 1),            seg_vertex(8, 7, 1), {Vertex::Kind::terminal, 0, 0, 0}};
    json entry;
    entry["x"] = 0.5;
    entry["v"] = 0.75;
    entry["weight"] = tie_case.paths.weight;
    json paths = json::array();
    for (const auto& p : tie_case.paths.paths) paths.push_back(path_to_text(p));
    entry["paths"] = paths;
    const bool pass = tie_case.paths.weight == 6.0 && tie_case.paths.paths.size() == 2 &&
                      tie_case.paths.paths[0] == path_a && tie_case.paths.paths[1] == path_b &&
                      tie_case.segmentations[0].regions == 5 &&
                      tie_case.segmentations[1].regions == 5;
    add_check(checks, "dp tie at x=0.50", pass,
              "two paths of weight 6, both inferring five regions");
    dp_section.push_back(entry);
  }

  // x = 0.5 with v in (1, 2): at most one usable pair per sequence.
  {
    const DpCaseResult dc = run_dp_case(0.5, 1.5);
    json entry;
    entry["x"] = 0.5;
    entry["v"] = 1.5;
    entry["weight"] = dc.paths.weight;
    json paths = json::array();
    for (const auto& p : dc.paths.paths) paths.push_back(path_to_text(p));
    entry["paths"] = paths;
    bool all_degenerate = true;
    for (const auto& seg : dc.segmentations) {
      if (seg.valid_for_reconstruction) all_degenerate = false;
    }
    add_check(checks, "dp degenerate at x=0.50, v=1.5", dc.paths.weight == 1.0 && all_degenerate,
              "weight collapses to 1 and no path supports a reconstruction");
    dp_section.push_back(entry);
  }
  report["dp"] = dp_section;

  // Exact energies, in units of T.
  try {
    // Reference: the noiseless estimate with reference index 2.
    std::vector<long long> eta1{2, 1, 2, 1};
    std::vector<long long> eta2{1, 2, 1, 1};
    const IndexClassification cls = classify_indices(eta1, eta2, 2);
    const IntervalBounds bounds = interval_bounds(cls);
    const std::vector<Rational> levels0 = exact_levels(pc, Rational(0), seg1_ref, seg2_ref);
    const PiecewiseFn<Rational> reference = reconstruct<Rational>(levels0, bounds, 2);
    report["energies"]["reference"] = piecewise_json(reference);

    // Limit of the estimate as x approaches one half: same segmentation,
    // levels re-averaged from the exact boundary-noise samples.
    const std::vector<Rational> levels_half =
        exact_levels(pc, Rational(1, 2), seg1_ref, seg2_ref);
    const PiecewiseFn<Rational> limit = reconstruct<Rational>(levels_half, bounds, 2);
    const Rational gap_limit = energy_between(reference, limit);
    add_check(checks, "energy of the threshold limit gap", gap_limit == Rational(11, 144),
              "11/144 in units of T, exact; got " + gap_limit.to_string());
    report["energies"]["threshold_limit_gap_in_T"] = gap_limit.to_string();

    // Candidates from the two tied DP paths at x = 0.5 across every
    // reference index; the best sits on the second path with l = 3.
    Rational best_energy(0);
    int best_path = -1;
    int best_ref = -1;
    json candidates = json::array();
    for (size_t p = 0; p < tie_case.segmentations.size(); ++p) {
      const PathSegmentation& pseg = tie_case.segmentations[p];
      if (!pseg.valid_for_reconstruction) continue;
      const std::vector<Rational> levels =
          exact_levels(pc, Rational(1, 2), pseg.seg1, pseg.seg2);
      for (int l = 0; l <= pseg.regions; ++l) {
        IndexClassification path_cls;
        try {
          path_cls = classify_indices(pseg.seg1.region_counts(), pseg.seg2.region_counts(), l);
        } catch (const std::invalid_argument&) {
          continue;
        }
        const IntervalBounds path_bounds = interval_bounds(path_cls);
        const PiecewiseFn<Rational> fn = reconstruct<Rational>(levels, path_bounds, l);
        const Rational e = energy_between(reference, fn);
        candidates.push_back(json{{"path", p},
                                  {"l", l},
                                  {"energy_in_T", e.to_string()},
                                  {"overlapping_bounds", fn.overlapping_bounds}});
        if (best_path < 0 || e < best_energy) {
          best_energy = e;
          best_path = static_cast<int>(p);
          best_ref = l;
        }
      }
    }
    report["energies"]["dp_candidates"] = candidates;
    report["energies"]["dp_best_gap_in_T"] = best_energy.to_string();
    report["energies"]["dp_best_path"] = best_path;
    report["energies"]["dp_best_l"] = best_ref;
    add_check(checks, "energy of the best dp candidate",
              best_energy == Rational(41, 144) && best_path == 1 && best_ref == 3,
              "41/144 in units of T from the second path with l=3; got " +
                  best_energy.to_string() + " (path " + std::to_string(best_path) + ", l=" +
                  std::to_string(best_ref) + ")");
  } catch (const std::exception& e) {
    add_check(checks, "exact energy section", false, std::string("exception: ") + e.what());
  }

  result.ok = true;
  json check_lines = json::array();
  for (const auto& c : checks) {
    if (!c.pass) result.ok = false;
    check_lines.push_back(json{{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
  }
  report["checks"] = check_lines;
  report["ok"] = result.ok;
  const auto t_end = std::chrono::steady_clock::now();
  report["timing"]["seconds"] = std::chrono::duration<double>(t_end - t_start).count();
  result.report = std::move(report);
  return result;
}

void write_repro_artifacts(const ReproResult& result, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  emit_report(result.report, dir / "report.json");

  {
    std::ofstream csv(dir / "xcorr_closed_form_check.csv");
    csv << "x,shift,computed,closed_form,abs_error\n";
    const PaperCase pc = paper_case();
    for (int step = 0; step <= 100; ++step) {
      const double x = 0.005 * step;
      const CorrelationProfile profile =
          cross_correlation(pc.corrupted1(x), pc.corrupted2(x));
      for (int shift = -8; shift <= 8; ++shift) {
        const double expect = xcorr_closed_form(shift, x);
        csv << x << ',' << shift << ',' << profile.at(shift) << ',' << expect << ','
            << std::abs(profile.at(shift) - expect) << '\n';
      }
    }
  }

  {
    std::ofstream csv(dir / "threshold_ladders.csv");
    csv << "x,candidate_v,accepted,reason\n";
    for (const auto& entry : result.report.at("threshold")) {
      for (const auto& cand : entry.at("ladder")) {
        csv << entry.at("x").get<double>() << ',' << cand.at("v").get<double>() << ','
            << (cand.at("accepted").get<bool>() ? "accept" : "reject") << ",\""
            << cand.at("reason").get<std::string>() << "\"\n";
      }
    }
  }

  {
    std::ofstream csv(dir / "dp_paths.csv");
    csv << "x,v,weight,path_index,path\n";
    for (const auto& entry : result.report.at("dp")) {
      int index = 0;
      for (const auto& p : entry.at("paths")) {
        csv << entry.at("x").get<double>() << ',' << entry.at("v").get<double>() << ','
            << entry.at("weight").get<double>() << ',' << index++ << ",\""
            << p.get<std::string>() << "\"\n";
      }
    }
  }

  {
    const PaperCase pc = paper_case();
    const AlignmentGraph graph(difference_sequence(pc.corrupted1(0.2)),
                               difference_sequence(pc.corrupted2(0.2)), 1.0,
                               WeightKind::indicator);
    const PathResult paths = longest_paths(graph);
    std::ofstream dot(dir / "graph_x0.2.dot");
    dot << to_dot(graph, paths.paths);
  }
}

namespace {

struct MethodStats {
  long long attempts = 0;
  long long feasible = 0;
  long long exact = 0;
  long long m_match = 0;
  long long false_points = 0;
  long long correct_shift = 0;
  double boundary_abs_err = 0.0;
  long long boundary_terms = 0;
  double energy_sum = 0.0;
  long long energy_terms = 0;

  json to_json(bool is_xcorr) const {
    json out;
    const double n = static_cast<double>(attempts);
    if (is_xcorr) {
      out["correct_shift_rate"] = static_cast<double>(correct_shift) / n;
      return out;
    }
    out["feasible_rate"] = static_cast<double>(feasible) / n;
    out["exact_segmentation_rate"] = static_cast<double>(exact) / n;
    out["m_match_rate"] = static_cast<double>(m_match) / n;
    out["false_segmentation_per_trial"] = static_cast<double>(false_points) / n;
    out["boundary_abs_error_mean"] =
        boundary_terms ? boundary_abs_err / static_cast<double>(boundary_terms) : 0.0;
    out["energy_vs_reference_mean"] =
        energy_terms ? energy_sum / static_cast<double>(energy_terms) : 0.0;
    out["energy_trials"] = energy_terms;
    return out;
  }
};

long long count_false_points(const Segmentation& proposed, const Segmentation& truth) {
  long long count = 0;
  for (int b : proposed.boundaries) {
    bool found = false;
    for (int t : truth.boundaries) {
      if (b == t) found = true;
    }
    if (!found) ++count;
  }
  return count;
}

// Scores one proposed segmentation pair against the truth and, where the
// region count matches, against the truth-derived reconstruction.
void score_segmentation(MethodStats& stats, const Segmentation& s1, const Segmentation& s2,
                        const Segmentation& t1, const Segmentation& t2,
                        const SampleSequence& y1, const SampleSequence& y2,
                        const std::vector<int>& ref_choices,
                        const std::vector<PiecewiseFn<double>>& references) {
  ++stats.feasible;
  const bool exact = s1.boundaries == t1.boundaries && s2.boundaries == t2.boundaries;
  if (exact) ++stats.exact;
  stats.false_points += count_false_points(s1, t1) + count_false_points(s2, t2);

  const int true_m = t1.regions();
  if (s1.regions() != true_m) return;
  ++stats.m_match;
  for (size_t k = 0; k < s1.boundaries.size(); ++k) {
    stats.boundary_abs_err += std::abs(s1.boundaries[k] - t1.boundaries[k]) +
                              std::abs(s2.boundaries[k] - t2.boundaries[k]);
    stats.boundary_terms += 2;
  }

  const std::vector<double> levels =
      pooled_level_means<double>(y1.values, y2.values, s1, s2);
  for (size_t idx = 0; idx < ref_choices.size(); ++idx) {
    const int l = ref_choices[idx];
    IndexClassification cls;
    try {
      cls = classify_indices(s1.region_counts(), s2.region_counts(), l);
    } catch (const std::invalid_argument&) {
      continue;
    }
    const IntervalBounds bounds = interval_bounds(cls);
    const PiecewiseFn<double> fn = reconstruct<double>(levels, bounds, l);
    stats.energy_sum += energy_between(fn, references[idx]);
    ++stats.energy_terms;
  }
}

// Predicted estimation-error energy used to rank tied paths: the smallest
// over admissible reference indices, from the path's own level estimates.
double predicted_energy(const PathSegmentation& pseg, const SampleSequence& y1,
                        const SampleSequence& y2) {
  const std::vector<double> levels =
      pooled_level_means<double>(y1.values, y2.values, pseg.seg1, pseg.seg2);
  std::vector<double> full;
  full.push_back(0.0);
  full.insert(full.end(), levels.begin(), levels.end());
  full.push_back(0.0);
  double best = std::numeric_limits<double>::infinity();
  for (int l = 0; l <= pseg.regions; ++l) {
    IndexClassification cls;
    try {
      cls = classify_indices(pseg.seg1.region_counts(), pseg.seg2.region_counts(), l);
    } catch (const std::invalid_argument&) {
      continue;
    }
    best = std::min(best, error_energy<double>(cls, full));
  }
  return best;
}

}  // namespace

int select_path(const std::vector<PathSegmentation>& segmentations, const SampleSequence& y1,
                const SampleSequence& y2) {
  int chosen = -1;
  double chosen_energy = std::numeric_limits<double>::infinity();
  for (size_t p = 0; p < segmentations.size(); ++p) {
    if (!segmentations[p].valid_for_reconstruction) continue;
    const double e =
        segmentations.size() == 1 ? 0.0 : predicted_energy(segmentations[p], y1, y2);
    if (chosen < 0 || e < chosen_energy) {
      chosen = static_cast<int>(p);
      chosen_energy = e;
    }
  }
  return chosen;
}

json run_monte_carlo(const ExperimentConfig& cfg, long long trials) {
  const PiecewiseConstantFunction f = cfg.function();
  const std::vector<std::string> violations = validate_function(f);
  if (!violations.empty()) {
    throw ConfigError("invalid function in config: " + violations.front());
  }
  if (cfg.noise.kind == NoiseKind::fixed) {
    throw ConfigError("monte carlo needs a stochastic noise spec");
  }
  const auto t_start = std::chrono::steady_clock::now();

  const SamplingGrid g1 = cfg.grid(1);
  const SamplingGrid g2 = cfg.grid(2);
  const SampleSequence gamma1 = sample(f, g1);
  const SampleSequence gamma2 = sample(f, g2);
  const Segmentation t1 = true_segmentation(f, g1);
  const Segmentation t2 = true_segmentation(f, g2);
  const int true_m = t1.regions();
  const int true_shift = t2.boundaries.front() - t1.boundaries.front();

  std::vector<int> ref_choices = cfg.ref_indices;
  if (ref_choices.empty()) {
    for (int l = 0; l <= true_m; ++l) ref_choices.push_back(l);
  }
  std::vector<PiecewiseFn<double>> references;
  references.reserve(ref_choices.size());
  for (int l : ref_choices) references.push_back(reference_reconstruction(f, g1, g2, l));

  std::vector<std::string> methods;
  if (cfg.method == "all") {
    methods = {"xcorr", "threshold", "dp_w1", "dp_w2", "dp_w3"};
  } else if (cfg.method == "dp") {
    methods = {std::string("dp_") + to_string(cfg.dp_weight)};
  } else {
    methods = {cfg.method};
  }
  std::map<std::string, MethodStats> stats;
  for (const auto& name : methods) stats[name];

  for (long long trial = 0; trial < trials; ++trial) {
    // Stream ids fold the trial index and the sequence id together so every
    // sample of every trial has its own counter-derived draw.
    const SampleSequence y1 =
        apply_noise(gamma1, cfg.noise, Seed{cfg.seed}, 2 * static_cast<std::uint64_t>(trial) + 1);
    const SampleSequence y2 =
        apply_noise(gamma2, cfg.noise, Seed{cfg.seed}, 2 * static_cast<std::uint64_t>(trial) + 2);
    const DifferenceSequence d1 = difference_sequence(y1);
    const DifferenceSequence d2 = difference_sequence(y2);

    for (const auto& name : methods) {
      MethodStats& ms = stats[name];
      ++ms.attempts;
      if (name == "xcorr") {
        const std::vector<int> best = best_shifts(cross_correlation(y1, y2));
        if (!best.empty() && best.front() == true_shift) ++ms.correct_shift;
        continue;
      }
      if (name == "threshold") {
        const ThresholdSearchResult search = search_threshold(d1, d2);
        if (search.feasible) {
          score_segmentation(ms, search.seg1, search.seg2, t1, t2, y1, y2, ref_choices,
                             references);
        }
        continue;
      }
      const WeightKind kind = parse_weight_kind(name.substr(3));
      const AlignmentGraph graph(d1, d2, cfg.dp_threshold, kind);
      const PathResult paths = longest_paths(graph, cfg.max_paths);
      std::vector<PathSegmentation> segs;
      segs.reserve(paths.paths.size());
      for (const auto& path : paths.paths) segs.push_back(path_to_segmentation(path));
      const int chosen = select_path(segs, y1, y2);
      if (chosen >= 0) {
        const PathSegmentation& pseg = segs[static_cast<size_t>(chosen)];
        score_segmentation(ms, pseg.seg1, pseg.seg2, t1, t2, y1, y2, ref_choices, references);
      }
    }
  }

  json report;
  report["trials"] = trials;
  report["seed"] = cfg.seed;
  report["method"] = cfg.method;
  report["dp_threshold"] = cfg.dp_threshold;
  report["dp_weight"] = to_string(cfg.dp_weight);
  report["true"]["m"] = true_m;
  report["true"]["boundaries1"] = t1.boundaries;
  report["true"]["boundaries2"] = t2.boundaries;
  report["true"]["index_shift"] = true_shift;
  json methods_json;
  for (const auto& [name, ms] : stats) methods_json[name] = ms.to_json(name == "xcorr");
  report["methods"] = methods_json;
  const auto t_end = std::chrono::steady_clock::now();
  report["timing"]["seconds"] = std::chrono::duration<double>(t_end - t_start).count();
  return report;
}

void emit_report(const json& report, const std::filesystem::path& path) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write report: " + path.string());
  out << report.dump(2) << '\n';
}

json load_report(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read report: " + path.string());
  return json::parse(in);
}

void write_monte_carlo_csv(const json& report, const std::filesystem::path& path) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream csv(path);
  if (!csv) throw std::runtime_error("cannot write csv: " + path.string());
  csv << "method,feasible_rate,exact_segmentation_rate,m_match_rate,false_segmentation_per_trial,"
         "boundary_abs_error_mean,energy_vs_reference_mean,correct_shift_rate\n";
  for (const auto& [name, entry] : report.at("methods").items()) {
    const auto field = [&](const char* key) -> std::string {
      if (!entry.contains(key)) return "";
      std::ostringstream os;
      os << entry.at(key).get<double>();
      return os.str();
    };
    csv << name << ',' << field("feasible_rate") << ',' << field("exact_segmentation_rate") << ','
        << field("m_match_rate") << ',' << field("false_segmentation_per_trial") << ','
        << field("boundary_abs_error_mean") << ',' << field("energy_vs_reference_mean") << ','
        << field("correct_shift_rate") << '\n';
  }
}

}  // namespace pcreg
