#include "pcreg/dp_align.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace pcreg {

const char* to_string(WeightKind kind) {
  switch (kind) {
    case WeightKind::indicator: return "w1";
    case WeightKind::product: return "w2";
    case WeightKind::min_square: return "w3";
  }
  return "?";
}

WeightKind parse_weight_kind(const std::string& name) {
  if (name == "w1" || name == "W1" || name == "indicator") return WeightKind::indicator;
  if (name == "w2" || name == "W2" || name == "product") return WeightKind::product;
  if (name == "w3" || name == "W3" || name == "min_square") return WeightKind::min_square;
  throw std::invalid_argument("unknown weight kind: " + name);
}

double edge_weight(WeightKind kind, double d1_val, double d2_val, double v) {
  if (v <= 0.0) throw std::invalid_argument("edge_weight: v must be positive");
  if (!(d1_val * d2_val > 0.0) || std::abs(d1_val) < v || std::abs(d2_val) < v) return 0.0;
  switch (kind) {
    case WeightKind::indicator: return 1.0;
    case WeightKind::product: return d1_val * d2_val;
    case WeightKind::min_square: return std::min(d1_val * d1_val, d2_val * d2_val);
  }
  return 0.0;
}

std::string to_string(const Vertex& v) {
  switch (v.kind) {
    case Vertex::Kind::start: return "start";
    case Vertex::Kind::terminal: return "end";
    case Vertex::Kind::align:
      return "(" + std::to_string(v.j1) + "," + std::to_string(v.j2) + ")";
    case Vertex::Kind::seg:
      return "(" + std::to_string(v.j1) + "," + std::to_string(v.j2) + "," +
             std::to_string(v.state) + ")";
  }
  return "?";
}

AlignmentGraph::AlignmentGraph(DifferenceSequence d1, DifferenceSequence d2, double v,
                               WeightKind kind)
    : n_(d1.size()), v_(v), kind_(kind), d1_(std::move(d1)), d2_(std::move(d2)) {
  if (d1_.size() != d2_.size()) throw std::invalid_argument("AlignmentGraph: length mismatch");
  if (n_ < 2) throw std::invalid_argument("AlignmentGraph: need at least two samples");
  if (v_ <= 0.0) throw std::invalid_argument("AlignmentGraph: v must be positive");

  seg_id_.assign(static_cast<size_t>(n_) * static_cast<size_t>(n_), 0);
  long long next = 2LL * n_;  // start plus the 2N-1 alignment vertices
  for (int j1 = 1; j1 <= n_; ++j1) {
    for (int j2 = 1; j2 <= n_; ++j2) {
      seg_id_[static_cast<size_t>((j1 - 1) * n_ + (j2 - 1))] = next;
      next += (j1 == 1 || j2 == 1) ? 1 : 3;
    }
  }
  terminal_id_ = next;
}

double AlignmentGraph::pair_weight(int j1, int j2) const {
  return edge_weight(kind_, d1_.at1(j1), d2_.at1(j2), v_);
}

long long AlignmentGraph::vertex_id(const Vertex& v) const {
  switch (v.kind) {
    case Vertex::Kind::start: return 0;
    case Vertex::Kind::align: return v.j1 == 0 ? 1 + v.j2 : static_cast<long long>(n_) + v.j1;
    case Vertex::Kind::seg:
      return seg_id_[static_cast<size_t>((v.j1 - 1) * n_ + (v.j2 - 1))] + v.state;
    case Vertex::Kind::terminal: return terminal_id_;
  }
  return -1;
}

void AlignmentGraph::for_each_successor(const Vertex& v, bool skip_zero_weight,
                                        const std::function<void(const Vertex&)>& fn) const {
  const auto seg = [&](int j1, int j2, int state) {
    if (!skip_zero_weight || gate_open(j1, j2)) fn({Vertex::Kind::seg, j1, j2, state});
  };

  switch (v.kind) {
    case Vertex::Kind::start: {
      for (int j2 = 0; j2 < n_; ++j2) fn({Vertex::Kind::align, 0, j2, 0});
      for (int j1 = 1; j1 < n_; ++j1) fn({Vertex::Kind::align, j1, 0, 0});
      return;
    }
    case Vertex::Kind::align: {
      const int kmax = n_ - std::max(v.j1, v.j2);
      for (int k = 1; k <= kmax; ++k) seg(v.j1 + k, v.j2 + k, 0);
      return;
    }
    case Vertex::Kind::seg: {
      // Same-state steps, then the lead-changing step(s), then the terminal.
      if (v.j1 < n_ && v.j2 < n_) {
        const int kmax = n_ - std::max(v.j1, v.j2);
        for (int k = 1; k <= kmax; ++k) seg(v.j1 + k, v.j2 + k, v.state);
      }
      if (v.state == 0 || v.state == 2) {
        if (v.j1 < n_ - 1 && v.j2 < n_) {
          const int kmax = n_ - std::max(v.j1 + 1, v.j2);
          const int target_state = v.state == 0 ? 1 : 0;
          for (int k = 1; k <= kmax; ++k) seg(v.j1 + k + 1, v.j2 + k, target_state);
        }
      }
      if (v.state == 0 || v.state == 1) {
        if (v.j1 < n_ && v.j2 < n_ - 1) {
          const int kmax = n_ - std::max(v.j1, v.j2 + 1);
          const int target_state = v.state == 0 ? 2 : 0;
          for (int k = 1; k <= kmax; ++k) seg(v.j1 + k, v.j2 + k + 1, target_state);
        }
      }
      fn(terminal());
      return;
    }
    case Vertex::Kind::terminal: return;
  }
}

namespace {

// Sort key giving lexicographically smallest-next-vertex enumeration:
// segmentation vertices by (j1, j2, state), terminal last.
std::tuple<int, int, int, int> order_key(const Vertex& v) {
  switch (v.kind) {
    case Vertex::Kind::start: return {0, 0, 0, 0};
    case Vertex::Kind::align: return {1, v.j1, v.j2, 0};
    case Vertex::Kind::seg: return {2, v.j1, v.j2, v.state};
    case Vertex::Kind::terminal: return {3, 0, 0, 0};
  }
  return {4, 0, 0, 0};
}

}  // namespace

PathResult longest_paths(const AlignmentGraph& graph, int cap) {
  if (cap < 1) throw std::invalid_argument("longest_paths: cap must be positive");
  constexpr double kNegInf = -std::numeric_limits<double>::infinity();
  const long long total = graph.total_vertex_count();
  std::vector<double> value_from(static_cast<size_t>(total), kNegInf);
  value_from[static_cast<size_t>(graph.vertex_id(graph.terminal()))] = 0.0;

  const int n = graph.length();

  // value_from in reverse topological order: every edge strictly increases
  // j1 + j2, so segmentation vertices are processed by decreasing index sum.
  const auto relax = [&](const Vertex& u) {
    double best = kNegInf;
    graph.for_each_successor(u, /*skip_zero_weight=*/true, [&](const Vertex& s) {
      const double w = s.kind == Vertex::Kind::seg ? graph.pair_weight(s.j1, s.j2) : 0.0;
      const double v = value_from[static_cast<size_t>(graph.vertex_id(s))];
      if (v == kNegInf) return;
      best = std::max(best, w + v);
    });
    value_from[static_cast<size_t>(graph.vertex_id(u))] = best;
  };

  for (int sum = 2 * n; sum >= 2; --sum) {
    const int j1_lo = std::max(1, sum - n);
    const int j1_hi = std::min(n, sum - 1);
    for (int j1 = j1_lo; j1 <= j1_hi; ++j1) {
      const int j2 = sum - j1;
      if (!graph.gate_open(j1, j2)) continue;
      const int max_state = (j1 == 1 || j2 == 1) ? 0 : 2;
      for (int state = 0; state <= max_state; ++state) {
        relax({Vertex::Kind::seg, j1, j2, state});
      }
    }
  }
  for (int j2 = 0; j2 < n; ++j2) relax({Vertex::Kind::align, 0, j2, 0});
  for (int j1 = 1; j1 < n; ++j1) relax({Vertex::Kind::align, j1, 0, 0});
  relax(graph.start());

  PathResult result;
  const double best = value_from[static_cast<size_t>(graph.vertex_id(graph.start()))];
  if (best == kNegInf) return result;  // no admissible path
  result.weight = best;

  // Depth-first enumeration of every optimal continuation, in sorted order.
  std::vector<Vertex> chain{graph.start()};
  const std::function<bool(const Vertex&)> descend = [&](const Vertex& u) -> bool {
    if (u.kind == Vertex::Kind::terminal) {
      if (static_cast<int>(result.paths.size()) == cap) {
        result.truncated = true;
        return false;
      }
      result.paths.push_back(chain);
      return true;
    }
    std::vector<Vertex> succ;
    graph.for_each_successor(u, /*skip_zero_weight=*/true, [&](const Vertex& s) {
      const double w = s.kind == Vertex::Kind::seg ? graph.pair_weight(s.j1, s.j2) : 0.0;
      const double v = value_from[static_cast<size_t>(graph.vertex_id(s))];
      if (v != kNegInf && w + v == value_from[static_cast<size_t>(graph.vertex_id(u))]) {
        succ.push_back(s);
      }
    });
    std::sort(succ.begin(), succ.end(),
              [](const Vertex& a, const Vertex& b) { return order_key(a) < order_key(b); });
    for (const Vertex& s : succ) {
      chain.push_back(s);
      const bool keep_going = descend(s);
      chain.pop_back();
      if (!keep_going) return false;
    }
    return true;
  };
  descend(graph.start());
  return result;
}

PathSegmentation path_to_segmentation(const std::vector<Vertex>& path) {
  PathSegmentation out;
  bool saw_align = false;
  for (const Vertex& v : path) {
    if (v.kind == Vertex::Kind::align) {
      out.align_offset = {v.j1, v.j2};
      saw_align = true;
    } else if (v.kind == Vertex::Kind::seg) {
      out.seg1.boundaries.push_back(v.j1);
      out.seg2.boundaries.push_back(v.j2);
    }
  }
  if (!saw_align || out.seg1.boundaries.empty()) {
    throw std::invalid_argument("path_to_segmentation: path has no segmentation pair");
  }
  out.regions = static_cast<int>(out.seg1.boundaries.size()) - 1;
  out.valid_for_reconstruction = out.regions >= 1;

  // The graph is built to enforce these; a violation means a malformed path.
  const std::vector<long long> eta1 = out.seg1.region_counts();
  const std::vector<long long> eta2 = out.seg2.region_counts();
  long long prefix = 0;
  for (size_t k = 0; k < eta1.size(); ++k) {
    const long long step = eta1[k] - eta2[k];
    prefix += step;
    if (std::llabs(step) > 1 || std::llabs(prefix) > 1) {
      throw std::logic_error("path violates the count constraints");
    }
  }
  return out;
}

std::string to_dot(const AlignmentGraph& graph, const std::vector<std::vector<Vertex>>& highlight) {
  const auto name = [&](const Vertex& v) -> std::string {
    switch (v.kind) {
      case Vertex::Kind::start: return "start";
      case Vertex::Kind::terminal: return "end";
      case Vertex::Kind::align:
        return "a_" + std::to_string(v.j1) + "_" + std::to_string(v.j2);
      case Vertex::Kind::seg:
        return "s_" + std::to_string(v.j1) + "_" + std::to_string(v.j2) + "_" +
               std::to_string(v.state);
    }
    return "v";
  };

  std::vector<std::pair<long long, long long>> marked;
  for (const auto& path : highlight) {
    for (size_t k = 0; k + 1 < path.size(); ++k) {
      marked.emplace_back(graph.vertex_id(path[k]), graph.vertex_id(path[k + 1]));
    }
  }
  std::sort(marked.begin(), marked.end());

  std::ostringstream os;
  os << "digraph alignment {\n  rankdir=LR;\n  node [shape=ellipse, fontsize=10];\n";
  const auto emit_edges = [&](const Vertex& u) {
    graph.for_each_successor(u, /*skip_zero_weight=*/false, [&](const Vertex& s) {
      const double w = s.kind == Vertex::Kind::seg ? graph.pair_weight(s.j1, s.j2) : 0.0;
      os << "  " << name(u) << " -> " << name(s) << " [label=\"" << w << "\"";
      if (std::binary_search(marked.begin(), marked.end(),
                             std::make_pair(graph.vertex_id(u), graph.vertex_id(s)))) {
        os << ", color=red, penwidth=2.0";
      }
      os << "];\n";
    });
  };

  emit_edges(graph.start());
  const int n = graph.length();
  for (int j2 = 0; j2 < n; ++j2) emit_edges({Vertex::Kind::align, 0, j2, 0});
  for (int j1 = 1; j1 < n; ++j1) emit_edges({Vertex::Kind::align, j1, 0, 0});
  for (int j1 = 1; j1 <= n; ++j1) {
    for (int j2 = 1; j2 <= n; ++j2) {
      const int max_state = (j1 == 1 || j2 == 1) ? 0 : 2;
      for (int state = 0; state <= max_state; ++state) {
        emit_edges({Vertex::Kind::seg, j1, j2, state});
      }
    }
  }
  os << "}\n";
  return os.str();
}

}  // namespace pcreg
