#pragma once

#include <string>
#include <vector>

namespace pcreg {

// Ground truth for the whole pipeline: a spatially limited piecewise
// constant function with m regions in its support.  Region i has amplitude
// levels[i-1] and length region_lengths[i-1]; the support starts at t = 0
// and the function is zero outside it.  Samples that land exactly on a
// discontinuity take the right-hand region's value (half-open regions);
// floating-point ties are snapped to the analytic breakpoint within
// 1e-12 * T.
struct PiecewiseConstantFunction {
  std::vector<double> levels;
  std::vector<double> region_lengths;
  double sampling_interval = 1.0;

  int region_count() const { return static_cast<int>(levels.size()); }
  double support_length() const;
  // Discontinuity positions B_0 = 0 < B_1 < ... < B_m.
  std::vector<double> breakpoints() const;
  double evaluate(double t) const;
};

// Region length R expressed as (n - f) * T with integer n >= 2 and
// f in (0, 1].
struct RegionDecomposition {
  std::vector<int> whole_counts;        // n_i
  std::vector<double> fractional_parts; // f_i
};

// Uniform grid of `count` samples spaced by `interval`, the first one at
// `first_sample_time`.  Sample positions are 1-based throughout.
struct SamplingGrid {
  double first_sample_time = 0.0;
  int count = 0;
  double interval = 1.0;

  double time_at(int pos) const { return first_sample_time + (pos - 1) * interval; }
};

struct SampleSequence {
  std::vector<double> values;  // 0-based storage
  SamplingGrid grid;

  int size() const { return static_cast<int>(values.size()); }
  double at1(int pos) const { return values[static_cast<size_t>(pos - 1)]; }
};

// Per-region sample counts for one grid placement, plus the offsets from
// each region's left endpoint to its first sample.
struct RegionCounts {
  std::vector<int> counts;               // eta_i
  std::vector<double> offsets;           // Delta_i in [0, T)
  int leading_zeros = 0;                 // samples left of the support
  int trailing_zeros = 0;                // samples at or right of its end

  long long total() const;
};

// Closed-form cumulative sample count over regions start..start+span
// (both 1-based): the count is `count_upper` when the first region's grid
// offset is below `offset_breakpoint`, and `count_upper - 1` otherwise.
struct CumulativeCountRule {
  int start_region = 0;       // i
  int span = 0;               // K
  int frac_sum_floor = 0;     // floor of f_i + ... + f_{i+K}
  long long count_upper = 0;  // sum of n  minus  frac_sum_floor
  double offset_breakpoint = 0.0;  // in absolute time units, lies in (0, T]

  long long predict(double delta) const {
    return delta < offset_breakpoint ? count_upper : count_upper - 1;
  }
};

// The same function with its time origin moved to discontinuity
// `ref_index` (0..m); discontinuities[i] is the translated position of
// discontinuity i.
struct TranslatedFunction {
  PiecewiseConstantFunction base;
  int ref_index = 0;
  std::vector<double> discontinuities;  // size m + 1, entry ref_index == 0
  double shift = 0.0;                   // g_translated(t) = g(t + shift)

  double evaluate(double t) const { return base.evaluate(t + shift); }
};

// Returns human-readable descriptions of every violated invariant;
// empty means valid.  Includes the non-integrality requirement on every
// contiguous sum of fractional parts (tolerance 1e-9).
std::vector<std::string> validate_function(const PiecewiseConstantFunction& f);

// Splits every region length into (n, f).  Lengths within 1e-9 relative of
// an integer multiple k*T map to (k + 1, 1).  Throws if a region is shorter
// than the sampling interval.
RegionDecomposition decompose_lengths(const PiecewiseConstantFunction& f);

// Ideal noiseless sampling; grid.interval must equal f.sampling_interval.
SampleSequence sample(const PiecewiseConstantFunction& f, const SamplingGrid& grid);
SampleSequence sample(const TranslatedFunction& f, const SamplingGrid& grid);

// Counts samples per region.  Throws if any region receives no sample.
RegionCounts region_counts(const PiecewiseConstantFunction& f, const SamplingGrid& grid);

// Cumulative-count rule for regions start..start+span (1-based, inclusive).
CumulativeCountRule cumulative_count_rule(const RegionDecomposition& dec, int start_region,
                                          int span, double sampling_interval);

TranslatedFunction translate_reference(const PiecewiseConstantFunction& f, int ref_index);

}  // namespace pcreg
