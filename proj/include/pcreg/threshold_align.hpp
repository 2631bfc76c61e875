#pragma once

#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "pcreg/difference.hpp"
#include "pcreg/signal_model.hpp"

namespace pcreg {

// Positions of the first sample after each discontinuity within one
// sequence: m+1 strictly increasing 1-based boundaries; region k holds the
// samples at positions [boundaries[k-1], boundaries[k]).
struct Segmentation {
  std::vector<int> boundaries;

  int regions() const { return static_cast<int>(boundaries.size()) - 1; }
  std::vector<long long> region_counts() const;
};

struct ThresholdedPair {
  double threshold = 0.0;
  DifferenceSequence t1, t2;
  NonzeroSignature sig1, sig2;
};

struct CompatibilityVerdict {
  enum class Kind {
    ok,
    too_few_entries,
    count_mismatch,
    sign_mismatch,
    region_count_mismatch,
    cumulative_mismatch,
  };
  bool accepted = false;
  Kind kind = Kind::ok;
  std::string reason;
  int inferred_regions = 0;  // m, valid when accepted
};

struct ThresholdSearchResult {
  struct Candidate {
    double threshold = 0.0;
    CompatibilityVerdict verdict;
  };
  bool feasible = false;
  double threshold = 0.0;  // smallest accepted candidate
  ThresholdedPair pair;
  Segmentation seg1, seg2;
  std::vector<Candidate> ladder;  // every candidate, ascending
};

struct LevelEstimate {
  std::vector<double> values;
  std::vector<long long> pooled_counts;
};

// Zeroes every component with magnitude strictly below v; |value| == v is
// kept.
DifferenceSequence apply_threshold(const DifferenceSequence& d, double v);

// Accepts a signature pair as a plausible common segmentation:
// (a) equal entry counts, at least two entries,
// (b) identical sign sequences,
// (c) per-region counts differ by at most one,
// (d) every contiguous window of region counts sums within one.
// The verdict carries the first failed criterion.
CompatibilityVerdict compatibility_check(const NonzeroSignature& sig1,
                                         const NonzeroSignature& sig2);

Segmentation signature_to_segmentation(const NonzeroSignature& sig);

// Ascending threshold search over the pooled magnitudes of d1 and d2: one
// candidate below the smallest positive magnitude, then the midpoint of each
// consecutive distinct pair.  Returns the first accepted candidate's
// thresholding and segmentations, with the full candidate ladder either way.
ThresholdSearchResult search_threshold(const DifferenceSequence& d1,
                                       const DifferenceSequence& d2);

LevelEstimate estimate_levels(const SampleSequence& y1, const SampleSequence& y2,
                              const Segmentation& seg1, const Segmentation& seg2);

// Pooled per-region means over both sequences; V is double or Rational.
template <class V>
std::vector<V> pooled_level_means(std::span<const V> y1, std::span<const V> y2,
                                  const Segmentation& seg1, const Segmentation& seg2) {
  if (seg1.regions() != seg2.regions() || seg1.regions() < 1) {
    throw std::invalid_argument("estimate_levels: segmentations disagree on region count");
  }
  const int m = seg1.regions();
  std::vector<V> levels;
  levels.reserve(static_cast<size_t>(m));
  for (int k = 0; k < m; ++k) {
    V sum(0);
    long long count = 0;
    for (int pos = seg1.boundaries[static_cast<size_t>(k)];
         pos < seg1.boundaries[static_cast<size_t>(k + 1)]; ++pos) {
      sum += y1[static_cast<size_t>(pos - 1)];
      ++count;
    }
    for (int pos = seg2.boundaries[static_cast<size_t>(k)];
         pos < seg2.boundaries[static_cast<size_t>(k + 1)]; ++pos) {
      sum += y2[static_cast<size_t>(pos - 1)];
      ++count;
    }
    levels.push_back(sum / V(count));
  }
  return levels;
}

}  // namespace pcreg
