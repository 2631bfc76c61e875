#pragma once

#include <algorithm>
#include <stdexcept>
#include <vector>

#include "pcreg/rational.hpp"

namespace pcreg {

// Classification of the discontinuity indices 0..m relative to a reference
// index l, derived from two per-region count patterns.  An index whose
// partial count sums toward l differ between the patterns is located to
// within T ("tight", the larger sum is its bound); equal sums only pin it to
// within 2T ("loose", the common sum is its bound).
struct IndexClassification {
  int ref_index = 0;
  int regions = 0;                    // m
  std::vector<bool> loose;            // indexed 0..m; false at ref_index
  std::vector<long long> count_bound; // C_i, 0 at ref_index
  bool precondition_ok = true;        // single-sample regions have a pinned far side
  std::vector<int> precondition_failures;  // offending region indices

  std::vector<int> loose_indices() const;
  std::vector<int> tight_indices() const;
};

// Open uncertainty intervals (in units of T) containing each translated
// discontinuity: width T for tight indices, 2T for loose ones, degenerate
// zero at the reference.
struct IntervalBounds {
  int ref_index = 0;
  int regions = 0;
  double interval = 1.0;           // T, for the *_time accessors
  std::vector<long long> left;     // G_{i,L} in units of T
  std::vector<long long> right;    // G_{i,R} in units of T

  double left_time(int i) const { return static_cast<double>(left[static_cast<size_t>(i)]) * interval; }
  double right_time(int i) const { return static_cast<double>(right[static_cast<size_t>(i)]) * interval; }
};

// Piecewise constant function with breakpoints at integer multiples of T and
// values of type V (double or Rational) on the open intervals between
// consecutive breakpoints; identically zero outside.  Zero-width pieces are
// not representable and single-point values carry no energy.
template <class V>
struct PiecewiseFn {
  std::vector<long long> breakpoints;  // size k+1 for k pieces, in units of T
  std::vector<V> values;               // size k
  bool overlapping_bounds = false;     // bounds overlapped during reconstruction

  bool empty() const { return values.empty(); }
};

using ReconstructedFunction = PiecewiseFn<Rational>;

// Builds the classification from two count patterns (same length m >= 1).
// Throws if some partial-sum pair differs by more than one.
IndexClassification classify_indices(const std::vector<long long>& counts1,
                                     const std::vector<long long>& counts2, int ref_index);

IntervalBounds interval_bounds(const IndexClassification& cls, double interval = 1.0);

// Predicted energy of the estimation error, in units of T:
//   sum over tight i of ((g_i - g_{i+1})/2)^2 + twice that over loose i.
// `levels_full` holds g_0..g_{m+1} (the zero flanks included).
template <class V>
V error_energy(const IndexClassification& cls, const std::vector<V>& levels_full) {
  if (levels_full.size() != static_cast<size_t>(cls.regions) + 2) {
    throw std::invalid_argument("error_energy: need m+2 levels including the zero flanks");
  }
  V total(0);
  for (int i = 0; i <= cls.regions; ++i) {
    if (i == cls.ref_index) continue;
    const V jump_half =
        (levels_full[static_cast<size_t>(i)] - levels_full[static_cast<size_t>(i + 1)]) / V(2);
    const V term = jump_half * jump_half;
    total += cls.loose[static_cast<size_t>(i)] ? term + term : term;
  }
  return total;
}

// Minimum-energy reconstruction from estimated levels and uncertainty
// intervals.  On each stretch between breakpoints the value is the midpoint
// of the extreme levels still possible there given the interval bounds,
// which reduces to the level-plus-midpoint-band form when the bounds are
// disjoint.  Overlapping bounds (possible when the classification's
// precondition fails) are handled the same way and flagged.
template <class V>
PiecewiseFn<V> reconstruct(const std::vector<V>& levels, const IntervalBounds& bounds,
                           int ref_index);

// Integral of the squared difference, in units of T; exact for V = Rational.
template <class V>
V energy_between(const PiecewiseFn<V>& a, const PiecewiseFn<V>& b);

// --- template definitions ---

template <class V>
PiecewiseFn<V> reconstruct(const std::vector<V>& levels, const IntervalBounds& bounds,
                           int ref_index) {
  const int m = bounds.regions;
  if (ref_index != bounds.ref_index) {
    throw std::invalid_argument("reconstruct: reference index disagrees with the bounds");
  }
  if (static_cast<int>(levels.size()) != m) {
    throw std::invalid_argument("reconstruct: need one level per region");
  }

  // Discontinuity i is pinned to 0 at the reference, otherwise anywhere in
  // (left[i], right[i]).
  std::vector<long long> lo(bounds.left);
  std::vector<long long> hi(bounds.right);
  lo[static_cast<size_t>(ref_index)] = 0;
  hi[static_cast<size_t>(ref_index)] = 0;

  PiecewiseFn<V> fn;
  for (int i = 0; i + 1 <= m; ++i) {
    if (hi[static_cast<size_t>(i)] > lo[static_cast<size_t>(i + 1)]) fn.overlapping_bounds = true;
  }

  std::vector<long long> cuts;
  cuts.reserve(2 * static_cast<size_t>(m) + 2);
  for (int i = 0; i <= m; ++i) {
    cuts.push_back(lo[static_cast<size_t>(i)]);
    cuts.push_back(hi[static_cast<size_t>(i)]);
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  std::vector<long long> breaks;
  std::vector<V> vals;
  for (size_t c = 0; c + 1 < cuts.size(); ++c) {
    // Compare the interval midpoint t* against integer bounds via 2*t*.
    const long long twice_mid = cuts[c] + cuts[c + 1];
    V min_level(0);
    V max_level(0);
    bool any = false;
    const auto consider = [&](const V& level) {
      if (!any) {
        min_level = level;
        max_level = level;
        any = true;
      } else {
        min_level = std::min(min_level, level);
        max_level = std::max(max_level, level);
      }
    };
    // Region r (1-based) spans (D_{r-1}, D_r); it can contain t* exactly when
    // D_{r-1} can sit below t* and D_r above it.
    for (int r = 1; r <= m; ++r) {
      if (2 * lo[static_cast<size_t>(r - 1)] < twice_mid &&
          twice_mid < 2 * hi[static_cast<size_t>(r)]) {
        consider(levels[static_cast<size_t>(r - 1)]);
      }
    }
    if (twice_mid < 2 * hi[0]) consider(V(0));              // left of the support
    if (twice_mid > 2 * lo[static_cast<size_t>(m)]) consider(V(0));  // right of it
    if (!any) throw std::logic_error("reconstruct: no feasible region on a stretch");

    const V value = (min_level + max_level) / V(2);
    if (!vals.empty() && vals.back() == value) {
      breaks.back() = cuts[c + 1];  // merge equal neighbours
    } else {
      if (vals.empty()) breaks.push_back(cuts[c]);
      breaks.push_back(cuts[c + 1]);
      vals.push_back(value);
    }
  }

  // Trim identically-zero flanks; outside pieces are implicit.
  while (!vals.empty() && vals.front() == V(0)) {
    vals.erase(vals.begin());
    breaks.erase(breaks.begin());
  }
  while (!vals.empty() && vals.back() == V(0)) {
    vals.pop_back();
    breaks.pop_back();
  }
  if (vals.empty()) breaks.clear();
  fn.breakpoints = std::move(breaks);
  fn.values = std::move(vals);
  return fn;
}

template <class V>
V energy_between(const PiecewiseFn<V>& a, const PiecewiseFn<V>& b) {
  std::vector<long long> cuts;
  cuts.reserve(a.breakpoints.size() + b.breakpoints.size());
  cuts.insert(cuts.end(), a.breakpoints.begin(), a.breakpoints.end());
  cuts.insert(cuts.end(), b.breakpoints.begin(), b.breakpoints.end());
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  const auto value_at = [](const PiecewiseFn<V>& fn, long long twice_mid) -> V {
    if (fn.empty()) return V(0);
    for (size_t k = 0; k + 1 < fn.breakpoints.size(); ++k) {
      if (2 * fn.breakpoints[k] < twice_mid && twice_mid < 2 * fn.breakpoints[k + 1]) {
        return fn.values[k];
      }
    }
    return V(0);
  };

  V total(0);
  for (size_t c = 0; c + 1 < cuts.size(); ++c) {
    const long long twice_mid = cuts[c] + cuts[c + 1];
    const V diff = value_at(a, twice_mid) - value_at(b, twice_mid);
    total += diff * diff * V(cuts[c + 1] - cuts[c]);
  }
  return total;
}

}  // namespace pcreg
