#pragma once

#include <compare>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "pcreg/difference.hpp"
#include "pcreg/threshold_align.hpp"

namespace pcreg {

// Edge weight families for segmentation-pair vertices: a gated indicator, the
// gated product, and the gated minimum of squares.  The gate requires the two
// difference values to share a sign and both magnitudes to reach v.
enum class WeightKind { indicator, product, min_square };

const char* to_string(WeightKind kind);
WeightKind parse_weight_kind(const std::string& name);

double edge_weight(WeightKind kind, double d1_val, double d2_val, double v);

struct Vertex {
  enum class Kind { start, align, seg, terminal };
  Kind kind = Kind::start;
  int j1 = 0;
  int j2 = 0;
  int state = 0;  // 0: in step, 1: sequence 1 leads by one, 2: sequence 2 leads

  friend bool operator==(const Vertex&, const Vertex&) = default;
};

std::string to_string(const Vertex& v);

// Alignment/segmentation DAG over two equal-length difference sequences.
//
// Vertices: a start vertex; 2N-1 alignment vertices (j1, j2) with j1 = 0 or
// j2 = 0 fixing where examination of each sequence begins; 3N^2-4N+2
// segmentation vertices (j1, j2, s) over j1, j2 in 1..N (only s = 0 when
// j1 = 1 or j2 = 1); a terminal vertex.  Every edge into (j1, j2, s) carries
// weight W(j1, j2, v); edges from the start and into the terminal carry 0.
// The s tag tracks which sequence is cumulatively one position ahead, which
// encodes the two admissible count constraints (per-region and cumulative
// differences of at most one).
class AlignmentGraph {
public:
  AlignmentGraph(DifferenceSequence d1, DifferenceSequence d2, double v, WeightKind kind);

  int length() const { return n_; }
  double threshold() const { return v_; }
  WeightKind weight_kind() const { return kind_; }

  long long alignment_vertex_count() const { return 2LL * n_ - 1; }
  long long segmentation_vertex_count() const { return 3LL * n_ * n_ - 4LL * n_ + 2; }
  long long total_vertex_count() const {
    return alignment_vertex_count() + segmentation_vertex_count() + 2;
  }

  double pair_weight(int j1, int j2) const;  // W(j1, j2, v)
  bool gate_open(int j1, int j2) const { return pair_weight(j1, j2) > 0.0; }

  // Enumerates the outgoing edges of `v` in a fixed order (per-group
  // ascending step, terminal last).  When skip_zero_weight is set,
  // segmentation targets whose weight is zero are omitted; such vertices
  // carry no evidence of a segmentation pair and are never proposed on a
  // reported path.
  void for_each_successor(const Vertex& v, bool skip_zero_weight,
                          const std::function<void(const Vertex&)>& fn) const;

  // Dense id in [0, total_vertex_count()), topologically ordered.
  long long vertex_id(const Vertex& v) const;
  Vertex start() const { return {Vertex::Kind::start, 0, 0, 0}; }
  Vertex terminal() const { return {Vertex::Kind::terminal, 0, 0, 0}; }

  const DifferenceSequence& d1() const { return d1_; }
  const DifferenceSequence& d2() const { return d2_; }

private:
  int n_ = 0;
  double v_ = 0.0;
  WeightKind kind_ = WeightKind::indicator;
  DifferenceSequence d1_, d2_;
  std::vector<long long> seg_id_;  // id of (j1, j2, 0), indexed (j1-1)*n + (j2-1)
  long long terminal_id_ = 0;
};

struct PathResult {
  double weight = 0.0;
  std::vector<std::vector<Vertex>> paths;  // maximizers, lexicographic order
  bool truncated = false;
};

// Maximum-weight start-to-terminal paths.  All maximizers are enumerated
// (up to `cap`, setting `truncated` beyond it) over paths whose segmentation
// vertices all pass the weight gate.  When no such path exists the weight is
// zero and the path list empty.
PathResult longest_paths(const AlignmentGraph& graph, int cap = 64);

struct PathSegmentation {
  std::pair<int, int> align_offset{0, 0};
  Segmentation seg1, seg2;
  int regions = 0;                        // number of segmentation pairs - 1
  bool valid_for_reconstruction = false;  // needs at least two pairs
};

// Reads the alignment vertex and segmentation-pair boundaries off a path and
// validates the two count constraints the graph is built to enforce.
PathSegmentation path_to_segmentation(const std::vector<Vertex>& path);

// graphviz dump; vertices on any of `highlight` paths are emphasized.
std::string to_dot(const AlignmentGraph& graph,
                   const std::vector<std::vector<Vertex>>& highlight = {});

}  // namespace pcreg
