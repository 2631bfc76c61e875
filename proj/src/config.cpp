#include "pcreg/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace pcreg {

using nlohmann::json;

PiecewiseConstantFunction ExperimentConfig::function() const {
  PiecewiseConstantFunction f;
  f.levels = levels;
  f.sampling_interval = interval;
  f.region_lengths.reserve(lengths_in_T.size());
  for (double len : lengths_in_T) f.region_lengths.push_back(len * interval);
  return f;
}

SamplingGrid ExperimentConfig::grid(int which) const {
  const GridSpec& spec = which == 1 ? grid1 : grid2;
  return {spec.offset_in_T * interval, spec.count, interval};
}

namespace {

void require_keys(const json& obj, const std::string& where,
                  const std::set<std::string>& allowed) {
  for (const auto& item : obj.items()) {
    if (!allowed.contains(item.key())) {
      throw ConfigError("unknown key '" + item.key() + "' in " + where);
    }
  }
}

GridSpec parse_grid(const json& g, const std::string& where) {
  require_keys(g, where, {"offset_in_T", "N"});
  if (!g.contains("offset_in_T") || !g.contains("N")) {
    throw ConfigError(where + " needs offset_in_T and N");
  }
  GridSpec spec;
  spec.offset_in_T = g.at("offset_in_T").get<double>();
  spec.count = g.at("N").get<int>();
  if (spec.count < 1) throw ConfigError(where + ": N must be positive");
  return spec;
}

std::vector<double> load_pattern_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open noise pattern file: " + path);
  std::vector<double> values;
  double v;
  while (in >> v) values.push_back(v);
  if (!in.eof()) throw ConfigError("malformed number in noise pattern file: " + path);
  return values;
}

NoiseSpec parse_noise(const json& n) {
  require_keys(n, "noise", {"kind", "x", "sigma", "halfwidth", "pattern", "pattern_file"});
  const std::string kind = n.value("kind", std::string("fixed"));
  if (kind == "symmetric_binary") {
    if (!n.contains("x")) throw ConfigError("noise kind symmetric_binary needs x");
    return NoiseSpec::symmetric_binary(n.at("x").get<double>());
  }
  if (kind == "gaussian") {
    if (!n.contains("sigma")) throw ConfigError("noise kind gaussian needs sigma");
    return NoiseSpec::gaussian(n.at("sigma").get<double>());
  }
  if (kind == "uniform") {
    if (!n.contains("halfwidth")) throw ConfigError("noise kind uniform needs halfwidth");
    return NoiseSpec::uniform(n.at("halfwidth").get<double>());
  }
  if (kind == "fixed") {
    if (n.contains("pattern")) return NoiseSpec::fixed(n.at("pattern").get<std::vector<double>>());
    if (n.contains("pattern_file")) {
      return NoiseSpec::fixed(load_pattern_file(n.at("pattern_file").get<std::string>()));
    }
    return NoiseSpec::fixed({});
  }
  throw ConfigError("unknown noise kind '" + kind + "'");
}

}  // namespace

ExperimentConfig parse_config(const std::string& text, const std::string& origin) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(origin + ": " + e.what());
  }
  if (!root.is_object()) throw ConfigError(origin + ": top level must be an object");
  require_keys(root, origin,
               {"function", "grids", "noise", "seed", "method", "dp", "l", "trials", "tolerance",
                "output"});

  ExperimentConfig cfg;
  if (!root.contains("function")) throw ConfigError(origin + ": missing 'function'");
  const json& fn = root.at("function");
  require_keys(fn, "function", {"levels", "lengths_in_T", "T"});
  if (!fn.contains("levels") || !fn.contains("lengths_in_T")) {
    throw ConfigError("function needs levels and lengths_in_T");
  }
  cfg.levels = fn.at("levels").get<std::vector<double>>();
  cfg.lengths_in_T = fn.at("lengths_in_T").get<std::vector<double>>();
  cfg.interval = fn.value("T", 1.0);
  if (cfg.levels.size() != cfg.lengths_in_T.size() || cfg.levels.empty()) {
    throw ConfigError("function levels and lengths_in_T must be nonempty and equally long");
  }
  if (cfg.interval <= 0.0) throw ConfigError("function T must be positive");

  if (!root.contains("grids")) throw ConfigError(origin + ": missing 'grids'");
  const json& grids = root.at("grids");
  if (!grids.is_array() || grids.size() != 2) throw ConfigError("grids must hold two entries");
  cfg.grid1 = parse_grid(grids[0], "grids[0]");
  cfg.grid2 = parse_grid(grids[1], "grids[1]");

  if (root.contains("noise")) cfg.noise = parse_noise(root.at("noise"));
  cfg.seed = root.value("seed", std::uint64_t{0});
  cfg.method = root.value("method", std::string("dp"));
  if (cfg.method != "xcorr" && cfg.method != "threshold" && cfg.method != "dp" &&
      cfg.method != "all") {
    throw ConfigError("unknown method '" + cfg.method + "'");
  }

  if (root.contains("dp")) {
    const json& dp = root.at("dp");
    require_keys(dp, "dp", {"weight", "threshold", "max_paths"});
    if (dp.contains("weight")) cfg.dp_weight = parse_weight_kind(dp.at("weight").get<std::string>());
    cfg.dp_threshold = dp.value("threshold", 1.0);
    cfg.max_paths = dp.value("max_paths", 64);
    if (cfg.dp_threshold <= 0.0) throw ConfigError("dp threshold must be positive");
    if (cfg.max_paths < 1) throw ConfigError("dp max_paths must be positive");
  }

  if (root.contains("l")) cfg.ref_indices = root.at("l").get<std::vector<int>>();
  cfg.trials = root.value("trials", 1000LL);
  if (cfg.trials < 1) throw ConfigError("trials must be positive");
  cfg.tolerance = root.value("tolerance", 1e-9);

  if (root.contains("output")) {
    const json& out = root.at("output");
    require_keys(out, "output", {"report", "csv_dir", "dot"});
    cfg.report_path = out.value("report", std::string());
    cfg.csv_dir = out.value("csv_dir", std::string());
    cfg.dot_path = out.value("dot", std::string());
  }
  return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_config(buffer.str(), path.string());
}

}  // namespace pcreg
