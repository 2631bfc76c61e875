#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "pcreg/config.hpp"
#include "pcreg/difference.hpp"
#include "pcreg/dp_align.hpp"
#include "pcreg/estimator.hpp"
#include "pcreg/experiments.hpp"
#include "pcreg/gaussian.hpp"
#include "pcreg/noise.hpp"
#include "pcreg/threshold_align.hpp"
#include "pcreg/xcorr.hpp"

namespace {

using nlohmann::json;
using namespace pcreg;

struct InputOptions {
  std::string config_path;
  bool use_paper = false;
  double paper_x = 0.15;
};

struct RunInputs {
  PiecewiseConstantFunction function;
  SamplingGrid grid1, grid2;
  SampleSequence gamma1, gamma2;
  SampleSequence y1, y2;
  // dp defaults, from the config when present
  WeightKind weight = WeightKind::indicator;
  double threshold = 1.0;
  int max_paths = 64;
  std::vector<int> ref_indices;
  std::optional<ExperimentConfig> config;
};

void add_input_options(CLI::App* cmd, InputOptions& opts) {
  auto* cfg = cmd->add_option("--config", opts.config_path, "experiment config file (JSON)");
  auto* paper = cmd->add_flag("--paper", opts.use_paper, "use the built-in worked example");
  cmd->add_option("--x", opts.paper_x, "noise magnitude for --paper (default 0.15)");
  paper->excludes(cfg);
}

RunInputs resolve_inputs(const InputOptions& opts) {
  RunInputs in;
  if (!opts.use_paper && opts.config_path.empty()) {
    throw ConfigError("need --config <file> or --paper");
  }
  if (opts.use_paper) {
    const PaperCase pc = paper_case();
    in.function = pc.function;
    in.grid1 = pc.grid1;
    in.grid2 = pc.grid2;
    in.gamma1 = pc.gamma1;
    in.gamma2 = pc.gamma2;
    in.y1 = pc.corrupted1(opts.paper_x);
    in.y2 = pc.corrupted2(opts.paper_x);
    return in;
  }
  ExperimentConfig cfg = load_config(opts.config_path);
  in.function = cfg.function();
  const auto violations = validate_function(in.function);
  if (!violations.empty()) {
    throw ConfigError("invalid function in config: " + violations.front());
  }
  in.grid1 = cfg.grid(1);
  in.grid2 = cfg.grid(2);
  in.gamma1 = sample(in.function, in.grid1);
  in.gamma2 = sample(in.function, in.grid2);
  in.y1 = apply_noise(in.gamma1, cfg.noise, Seed{cfg.seed}, 1);
  in.y2 = apply_noise(in.gamma2, cfg.noise, Seed{cfg.seed}, 2);
  in.weight = cfg.dp_weight;
  in.threshold = cfg.dp_threshold;
  in.max_paths = cfg.max_paths;
  in.ref_indices = cfg.ref_indices;
  in.config = std::move(cfg);
  return in;
}

std::ostream& open_output(std::ofstream& file, const std::string& path) {
  if (path.empty()) return std::cout;
  file.open(path);
  if (!file) throw std::runtime_error("cannot write " + path);
  return file;
}

int cmd_simulate(const InputOptions& opts, const std::string& out_path) {
  const RunInputs in = resolve_inputs(opts);
  std::ofstream file;
  std::ostream& out = open_output(file, out_path);
  out << "pos,t1,gamma1,y1,t2,gamma2,y2\n";
  for (int pos = 1; pos <= in.gamma1.size(); ++pos) {
    out << pos << ',' << in.grid1.time_at(pos) << ',' << in.gamma1.at1(pos) << ','
        << in.y1.at1(pos) << ',' << in.grid2.time_at(pos) << ',' << in.gamma2.at1(pos) << ','
        << in.y2.at1(pos) << '\n';
  }
  const RegionCounts rc1 = region_counts(in.function, in.grid1);
  const RegionCounts rc2 = region_counts(in.function, in.grid2);
  std::cerr << "region counts grid1:";
  for (int c : rc1.counts) std::cerr << ' ' << c;
  std::cerr << "  grid2:";
  for (int c : rc2.counts) std::cerr << ' ' << c;
  std::cerr << '\n';
  return 0;
}

int cmd_xcorr(const InputOptions& opts, const std::string& out_path) {
  const RunInputs in = resolve_inputs(opts);
  const CorrelationProfile profile = cross_correlation(in.y1, in.y2);
  std::ofstream file;
  std::ostream& out = open_output(file, out_path);
  out << "shift,value\n";
  for (int shift = profile.min_shift(); shift <= profile.max_shift(); ++shift) {
    out << shift << ',' << profile.at(shift) << '\n';
  }
  const std::vector<int> best = best_shifts(profile);
  std::cerr << "best shift: " << best.front() << '\n';
  return 0;
}

int cmd_diff(const InputOptions& opts, const std::string& out_path) {
  const RunInputs in = resolve_inputs(opts);
  const DifferenceSequence d1 = difference_sequence(in.y1);
  const DifferenceSequence d2 = difference_sequence(in.y2);
  std::ofstream file;
  std::ostream& out = open_output(file, out_path);
  out << "pos,d1,d2\n";
  for (int pos = 1; pos <= d1.size(); ++pos) {
    out << pos << ',' << d1.at1(pos) << ',' << d2.at1(pos) << '\n';
  }
  return 0;
}

int cmd_threshold(const InputOptions& opts, const std::string& out_path) {
  const RunInputs in = resolve_inputs(opts);
  const ThresholdSearchResult search =
      search_threshold(difference_sequence(in.y1), difference_sequence(in.y2));
  std::ofstream file;
  std::ostream& out = open_output(file, out_path);
  out << "candidate_v,verdict,reason\n";
  for (const auto& cand : search.ladder) {
    out << cand.threshold << ',' << (cand.verdict.accepted ? "accept" : "reject") << ",\""
        << cand.verdict.reason << "\"\n";
  }
  if (!search.feasible) {
    std::cerr << "infeasible: no candidate threshold passed the compatibility checks\n";
    return 1;
  }
  std::cerr << "feasible at v=" << search.threshold << "; boundaries";
  for (int b : search.seg1.boundaries) std::cerr << ' ' << b;
  std::cerr << " /";
  for (int b : search.seg2.boundaries) std::cerr << ' ' << b;
  const LevelEstimate levels = estimate_levels(in.y1, in.y2, search.seg1, search.seg2);
  std::cerr << "; levels";
  for (double v : levels.values) std::cerr << ' ' << v;
  std::cerr << '\n';
  return 0;
}

json reconstruction_json(const PiecewiseFn<double>& fn) {
  json out;
  out["breakpoints_in_T"] = fn.breakpoints;
  out["values"] = fn.values;
  out["overlapping_bounds"] = fn.overlapping_bounds;
  return out;
}

json estimate_json(const Segmentation& s1, const Segmentation& s2, const SampleSequence& y1,
                   const SampleSequence& y2, const std::vector<int>& ref_choices) {
  json out;
  out["boundaries1"] = s1.boundaries;
  out["boundaries2"] = s2.boundaries;
  const std::vector<double> levels = pooled_level_means<double>(y1.values, y2.values, s1, s2);
  out["levels"] = levels;
  std::vector<double> full{0.0};
  full.insert(full.end(), levels.begin(), levels.end());
  full.push_back(0.0);
  json per_ref = json::array();
  for (int l : ref_choices) {
    json entry;
    entry["l"] = l;
    IndexClassification cls;
    try {
      cls = classify_indices(s1.region_counts(), s2.region_counts(), l);
    } catch (const std::exception& e) {
      entry["error"] = e.what();
      per_ref.push_back(entry);
      continue;
    }
    const IntervalBounds bounds = interval_bounds(cls);
    entry["tight"] = cls.tight_indices();
    entry["loose"] = cls.loose_indices();
    entry["precondition_ok"] = cls.precondition_ok;
    json intervals = json::array();
    for (int i = 0; i <= cls.regions; ++i) {
      intervals.push_back(json{{"left_in_T", bounds.left[static_cast<size_t>(i)]},
                               {"right_in_T", bounds.right[static_cast<size_t>(i)]}});
    }
    entry["bounds"] = intervals;
    entry["predicted_error_energy_in_T"] = error_energy<double>(cls, full);
    entry["reconstruction"] = reconstruction_json(reconstruct<double>(levels, bounds, l));
    per_ref.push_back(entry);
  }
  out["per_reference"] = per_ref;
  return out;
}

int cmd_dp(const InputOptions& opts, std::string weight_name, double threshold, int max_paths,
           const std::string& dot_path, const std::string& report_path) {
  RunInputs in = resolve_inputs(opts);
  if (!weight_name.empty()) in.weight = parse_weight_kind(weight_name);
  if (threshold > 0.0) in.threshold = threshold;
  if (max_paths > 0) in.max_paths = max_paths;

  const AlignmentGraph graph(difference_sequence(in.y1), difference_sequence(in.y2), in.threshold,
                             in.weight);
  const PathResult paths = longest_paths(graph, in.max_paths);
  std::cout << "weight " << paths.weight << ", " << paths.paths.size() << " optimal path(s)"
            << (paths.truncated ? " (truncated)" : "") << "\n";
  json report;
  report["weight"] = paths.weight;
  report["truncated"] = paths.truncated;
  json path_list = json::array();
  for (const auto& path : paths.paths) {
    std::string text;
    for (size_t k = 0; k < path.size(); ++k) {
      if (k) text += " -> ";
      text += to_string(path[k]);
    }
    std::cout << "  " << text << '\n';
    json entry;
    entry["path"] = text;
    const PathSegmentation pseg = path_to_segmentation(path);
    entry["boundaries1"] = pseg.seg1.boundaries;
    entry["boundaries2"] = pseg.seg2.boundaries;
    entry["regions"] = pseg.regions;
    entry["valid_for_reconstruction"] = pseg.valid_for_reconstruction;
    path_list.push_back(entry);
  }
  report["paths"] = path_list;
  if (!dot_path.empty()) {
    std::ofstream dot(dot_path);
    if (!dot) throw std::runtime_error("cannot write " + dot_path);
    dot << to_dot(graph, paths.paths);
  }
  if (!report_path.empty()) emit_report(report, report_path);
  return paths.paths.empty() ? 1 : 0;
}

int cmd_estimate(const InputOptions& opts, const std::string& method, std::string weight_name,
                 double threshold, const std::vector<int>& ref_flags,
                 const std::string& report_path) {
  RunInputs in = resolve_inputs(opts);
  if (!weight_name.empty()) in.weight = parse_weight_kind(weight_name);
  if (threshold > 0.0) in.threshold = threshold;
  Segmentation s1, s2;
  if (method == "threshold") {
    const ThresholdSearchResult search =
        search_threshold(difference_sequence(in.y1), difference_sequence(in.y2));
    if (!search.feasible) {
      std::cerr << "threshold search infeasible; nothing to estimate\n";
      return 1;
    }
    s1 = search.seg1;
    s2 = search.seg2;
  } else if (method == "dp") {
    const AlignmentGraph graph(difference_sequence(in.y1), difference_sequence(in.y2),
                               in.threshold, in.weight);
    const PathResult paths = longest_paths(graph, in.max_paths);
    std::vector<PathSegmentation> segs;
    segs.reserve(paths.paths.size());
    for (const auto& path : paths.paths) segs.push_back(path_to_segmentation(path));
    const int chosen = select_path(segs, in.y1, in.y2);
    if (chosen < 0) {
      std::cerr << "no dp path supports a reconstruction\n";
      return 1;
    }
    if (segs.size() > 1) {
      std::cerr << segs.size() << " tied paths; using the one with the smallest predicted "
                << "error energy (index " << chosen << ")\n";
    }
    s1 = segs[static_cast<size_t>(chosen)].seg1;
    s2 = segs[static_cast<size_t>(chosen)].seg2;
  } else {
    throw ConfigError("estimate: method must be threshold or dp");
  }

  std::vector<int> refs = !ref_flags.empty() ? ref_flags : in.ref_indices;
  if (refs.empty()) {
    for (int l = 0; l <= s1.regions(); ++l) refs.push_back(l);
  }
  const json report = estimate_json(s1, s2, in.y1, in.y2, refs);
  if (!report_path.empty()) {
    emit_report(report, report_path);
  } else {
    std::cout << report.dump(2) << '\n';
  }
  return 0;
}

int cmd_paper_repro(const std::string& out_dir, bool full) {
  const ReproResult result = run_paper_repro();
  for (const auto& check : result.checks) {
    std::cout << (check.pass ? "[PASS] " : "[FAIL] ") << check.name << " — " << check.detail
              << '\n';
  }
  if (!out_dir.empty()) write_repro_artifacts(result, out_dir);
  bool ok = result.ok;
  if (full) {
    std::cout << "(--full) property and oracle suites run in the acceptance binary; "
                 "invoke tests/pcreg_acceptance for the complete gate\n";
  }
  std::cout << (ok ? "paper reproduction: all checks passed\n"
                   : "paper reproduction: CHECKS FAILED\n");
  return ok ? 0 : 1;
}

int cmd_mc(const InputOptions& opts, long long trials_flag, const std::string& out_dir) {
  if (opts.config_path.empty()) throw ConfigError("mc needs --config");
  ExperimentConfig cfg = load_config(opts.config_path);
  const long long trials = trials_flag > 0 ? trials_flag : cfg.trials;
  const json report = run_monte_carlo(cfg, trials);
  const std::filesystem::path dir = out_dir.empty() ? "." : out_dir;
  emit_report(report, dir / "mc_report.json");
  write_monte_carlo_csv(report, dir / "mc_summary.csv");
  std::cout << report.dump(2) << '\n';
  return 0;
}

int cmd_edge_stats(const std::string& kind_name, double a, double b, double v, double sigma,
                   const std::string& family_name, long long trials, std::uint64_t seed,
                   const std::string& out_path) {
  const WeightKind kind = parse_weight_kind(kind_name);
  const EdgeNoiseFamily family =
      family_name == "uniform" ? EdgeNoiseFamily::uniform : EdgeNoiseFamily::gaussian;
  const EdgeNoiseContext ctx{a, b, v, sigma};
  const EdgeStats stats = monte_carlo_edge_stats(kind, ctx, trials, Seed{seed}, family);
  std::ofstream file;
  std::ostream& out = open_output(file, out_path);
  out << "kind,family,a,b,v,sigma,closed_form_positive,closed_form_mean,mc_positive_rate,"
         "mc_positive_se,mc_mean,mc_mean_se\n";
  std::string closed_positive;
  std::string closed_mean;
  if (family == EdgeNoiseFamily::gaussian) {
    closed_positive = std::to_string(prob_w1_positive(ctx));
    if (kind == WeightKind::product) closed_mean = std::to_string(expected_w2(ctx));
  }
  out << kind_name << ',' << family_name << ',' << a << ',' << b << ',' << v << ',' << sigma
      << ',' << closed_positive << ',' << closed_mean << ',' << stats.positive_rate << ','
      << stats.positive_rate_std_err << ',' << stats.mean_weight << ','
      << stats.mean_weight_std_err << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"alignment, segmentation and reconstruction of piecewise constant samples"};
  app.require_subcommand(1);

  InputOptions sim_in, xc_in, diff_in, thr_in, dp_in, est_in;
  std::string sim_out, xc_out, diff_out, thr_out;

  auto* sim = app.add_subcommand("simulate", "emit noiseless and corrupted sample sequences");
  add_input_options(sim, sim_in);
  sim->add_option("--out", sim_out, "CSV output path (default stdout)");

  auto* xc = app.add_subcommand("xcorr", "cross-correlation profile and best shifts");
  add_input_options(xc, xc_in);
  xc->add_option("--out", xc_out, "CSV output path (default stdout)");

  auto* df = app.add_subcommand("diff", "first-order difference sequences");
  add_input_options(df, diff_in);
  df->add_option("--out", diff_out, "CSV output path (default stdout)");

  auto* th = app.add_subcommand("threshold", "ascending threshold search with candidate ladder");
  add_input_options(th, thr_in);
  th->add_option("--out", thr_out, "ladder CSV output path (default stdout)");

  std::string dp_weight, dp_dot, dp_report;
  double dp_threshold = 0.0;
  int dp_max_paths = 0;
  auto* dp = app.add_subcommand("dp", "longest-path alignment and segmentation");
  add_input_options(dp, dp_in);
  dp->add_option("--weight", dp_weight, "edge weight kind: w1, w2 or w3");
  dp->add_option("--threshold", dp_threshold, "gate threshold v");
  dp->add_option("--max-paths", dp_max_paths, "cap on enumerated optimal paths");
  dp->add_option("--dot", dp_dot, "write the graph in DOT form");
  dp->add_option("--report", dp_report, "write a JSON report");

  std::string est_method = "threshold", est_weight, est_report;
  double est_threshold = 0.0;
  std::vector<int> est_refs;
  auto* est = app.add_subcommand("estimate", "classify, bound and reconstruct");
  add_input_options(est, est_in);
  est->add_option("--method", est_method, "segmentation source: threshold or dp");
  est->add_option("--weight", est_weight, "edge weight kind for --method dp");
  est->add_option("--threshold", est_threshold, "gate threshold v for --method dp");
  est->add_option("--l", est_refs, "reference indices (repeatable; default all)");
  est->add_option("--report", est_report, "write the JSON report (default stdout)");

  std::string repro_dir = "repro_out";
  bool repro_full = false;
  auto* repro = app.add_subcommand("paper-repro", "reproduce the worked example end to end");
  repro->add_option("--out", repro_dir, "artifact directory (default repro_out)");
  repro->add_flag("--full", repro_full, "note the full acceptance gate");

  InputOptions mc_in;
  long long mc_trials = 0;
  std::string mc_dir;
  auto* mc = app.add_subcommand("mc", "Monte Carlo method comparison over noise draws");
  mc->add_option("--config", mc_in.config_path, "experiment config file (JSON)")->required();
  mc->add_option("--trials", mc_trials, "override the configured trial count");
  mc->add_option("--out", mc_dir, "output directory (default .)");

  std::string es_kind = "w1", es_family = "gaussian", es_out;
  double es_a = 0.0, es_b = 0.0, es_v = 1.0, es_sigma = 1.0;
  long long es_trials = 1000000;
  std::uint64_t es_seed = 1;
  auto* es = app.add_subcommand("edge-stats", "closed-form vs Monte Carlo single-edge statistics");
  es->add_option("--kind", es_kind, "w1, w2 or w3");
  es->add_option("--a", es_a, "true difference value of sequence 1");
  es->add_option("--b", es_b, "true difference value of sequence 2");
  es->add_option("--v", es_v, "gate threshold");
  es->add_option("--sigma", es_sigma, "noise scale (std dev, or halfwidth for uniform)");
  es->add_option("--family", es_family, "gaussian or uniform");
  es->add_option("--trials", es_trials, "Monte Carlo trials");
  es->add_option("--seed", es_seed, "seed");
  es->add_option("--out", es_out, "CSV output path (default stdout)");

  try {
    app.parse(argc, argv);
    if (sim->parsed()) return cmd_simulate(sim_in, sim_out);
    if (xc->parsed()) return cmd_xcorr(xc_in, xc_out);
    if (df->parsed()) return cmd_diff(diff_in, diff_out);
    if (th->parsed()) return cmd_threshold(thr_in, thr_out);
    if (dp->parsed()) {
      return cmd_dp(dp_in, dp_weight, dp_threshold, dp_max_paths, dp_dot, dp_report);
    }
    if (est->parsed()) {
      return cmd_estimate(est_in, est_method, est_weight, est_threshold, est_refs, est_report);
    }
    if (repro->parsed()) return cmd_paper_repro(repro_dir, repro_full);
    if (mc->parsed()) return cmd_mc(mc_in, mc_trials, mc_dir);
    if (es->parsed()) {
      return cmd_edge_stats(es_kind, es_a, es_b, es_v, es_sigma, es_family, es_trials, es_seed,
                            es_out);
    }
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 2;
}
