#include "pcreg/signal_model.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace pcreg {

namespace {

constexpr double kSnapFactor = 1e-12;
constexpr double kIntegerTolerance = 1e-9;

// Snaps t onto a breakpoint when it is within 1e-12 * T of one, so that
// samples computed along slightly different floating-point routes agree on
// region membership.
double snap_time(double t, const std::vector<double>& breaks, double interval) {
  const double tol = kSnapFactor * interval;
  for (double b : breaks) {
    if (std::abs(t - b) <= tol) return b;
  }
  return t;
}

}  // namespace

double PiecewiseConstantFunction::support_length() const {
  double total = 0.0;
  for (double r : region_lengths) total += r;
  return total;
}

std::vector<double> PiecewiseConstantFunction::breakpoints() const {
  std::vector<double> b;
  b.reserve(region_lengths.size() + 1);
  b.push_back(0.0);
  double acc = 0.0;
  for (double r : region_lengths) {
    acc += r;
    b.push_back(acc);
  }
  return b;
}

double PiecewiseConstantFunction::evaluate(double t) const {
  const std::vector<double> b = breakpoints();
  const double ts = snap_time(t, b, sampling_interval);
  if (ts < b.front() || ts >= b.back()) return 0.0;
  // Region i covers [b[i-1], b[i]).
  auto it = std::upper_bound(b.begin(), b.end(), ts);
  const auto region = static_cast<size_t>(it - b.begin());  // 1-based
  return levels[region - 1];
}

std::vector<std::string> validate_function(const PiecewiseConstantFunction& f) {
  std::vector<std::string> violations;
  const size_t m = f.levels.size();
  if (m == 0) violations.push_back("no regions");
  if (f.sampling_interval <= 0.0) violations.push_back("sampling interval not positive");
  if (f.region_lengths.size() != m) {
    violations.push_back("levels/lengths size mismatch");
    return violations;
  }
  if (m == 0) return violations;

  if (f.levels.front() == 0.0) violations.push_back("first level is zero");
  if (f.levels.back() == 0.0) violations.push_back("last level is zero");
  for (size_t i = 0; i + 1 < m; ++i) {
    if (f.levels[i] == f.levels[i + 1]) {
      violations.push_back("adjacent equal levels (regions " + std::to_string(i + 1) + "," +
                           std::to_string(i + 2) + ")");
    }
  }
  for (size_t i = 0; i < m; ++i) {
    if (f.region_lengths[i] <= 0.0) {
      violations.push_back("region length not positive (region " + std::to_string(i + 1) + ")");
    } else if (f.region_lengths[i] < f.sampling_interval * (1.0 - kIntegerTolerance)) {
      violations.push_back("region shorter than sampling interval (region " +
                           std::to_string(i + 1) + ")");
    }
  }
  if (!violations.empty()) return violations;

  const RegionDecomposition dec = decompose_lengths(f);
  for (size_t i = 0; i < m; ++i) {
    double sum = 0.0;
    for (size_t j = i; j < m; ++j) {
      sum += dec.fractional_parts[j];
      if (std::abs(sum - std::round(sum)) <= kIntegerTolerance) {
        violations.push_back("f partial sum integral (regions " + std::to_string(i + 1) + ".." +
                             std::to_string(j + 1) + ")");
      }
    }
  }
  return violations;
}

RegionDecomposition decompose_lengths(const PiecewiseConstantFunction& f) {
  RegionDecomposition dec;
  const double T = f.sampling_interval;
  if (T <= 0.0) throw std::invalid_argument("sampling interval not positive");
  for (size_t i = 0; i < f.region_lengths.size(); ++i) {
    const double q = f.region_lengths[i] / T;
    if (q < 1.0 - kIntegerTolerance) {
      throw std::invalid_argument("region " + std::to_string(i + 1) +
                                  " shorter than sampling interval");
    }
    const double k = std::round(q);
    int n;
    double frac;
    if (std::abs(q - k) <= kIntegerTolerance * std::max(1.0, q)) {
      n = static_cast<int>(k) + 1;
      frac = 1.0;
    } else {
      n = static_cast<int>(std::floor(q)) + 1;
      frac = n - q;
    }
    dec.whole_counts.push_back(n);
    dec.fractional_parts.push_back(frac);
  }
  return dec;
}

SampleSequence sample(const PiecewiseConstantFunction& f, const SamplingGrid& grid) {
  if (grid.interval != f.sampling_interval) {
    throw std::invalid_argument("grid interval differs from the function's sampling interval");
  }
  if (grid.count < 1) throw std::invalid_argument("grid needs at least one sample");
  SampleSequence seq;
  seq.grid = grid;
  seq.values.reserve(static_cast<size_t>(grid.count));
  for (int k = 1; k <= grid.count; ++k) {
    seq.values.push_back(f.evaluate(grid.time_at(k)));
  }
  return seq;
}

SampleSequence sample(const TranslatedFunction& f, const SamplingGrid& grid) {
  SamplingGrid shifted = grid;
  shifted.first_sample_time += f.shift;
  SampleSequence seq = sample(f.base, shifted);
  seq.grid = grid;
  return seq;
}

long long RegionCounts::total() const {
  long long t = leading_zeros + trailing_zeros;
  for (int c : counts) t += c;
  return t;
}

RegionCounts region_counts(const PiecewiseConstantFunction& f, const SamplingGrid& grid) {
  if (grid.interval != f.sampling_interval) {
    throw std::invalid_argument("grid interval differs from the function's sampling interval");
  }
  const std::vector<double> b = f.breakpoints();
  const size_t m = f.levels.size();
  RegionCounts rc;
  rc.counts.assign(m, 0);
  rc.offsets.assign(m, 0.0);

  for (int k = 1; k <= grid.count; ++k) {
    const double t = snap_time(grid.time_at(k), b, f.sampling_interval);
    if (t < b.front()) {
      ++rc.leading_zeros;
      continue;
    }
    if (t >= b.back()) {
      ++rc.trailing_zeros;
      continue;
    }
    auto it = std::upper_bound(b.begin(), b.end(), t);
    const auto region = static_cast<size_t>(it - b.begin());  // 1-based
    if (rc.counts[region - 1] == 0) {
      double delta = t - b[region - 1];
      if (delta < 0.0) delta = 0.0;
      rc.offsets[region - 1] = delta;
    }
    ++rc.counts[region - 1];
  }

  for (size_t i = 0; i < m; ++i) {
    if (rc.counts[i] == 0) {
      throw std::domain_error("region " + std::to_string(i + 1) + " received no samples");
    }
  }
  return rc;
}

CumulativeCountRule cumulative_count_rule(const RegionDecomposition& dec, int start_region,
                                          int span, double sampling_interval) {
  const int m = static_cast<int>(dec.whole_counts.size());
  if (start_region < 1 || span < 0 || start_region + span > m) {
    throw std::out_of_range("cumulative_count_rule: region window out of range");
  }
  double frac_sum = 0.0;
  long long n_sum = 0;
  for (int j = 0; j <= span; ++j) {
    frac_sum += dec.fractional_parts[static_cast<size_t>(start_region - 1 + j)];
    n_sum += dec.whole_counts[static_cast<size_t>(start_region - 1 + j)];
  }
  CumulativeCountRule rule;
  rule.start_region = start_region;
  rule.span = span;
  rule.frac_sum_floor = static_cast<int>(std::floor(frac_sum));
  rule.count_upper = n_sum - rule.frac_sum_floor;
  rule.offset_breakpoint = (1.0 + rule.frac_sum_floor - frac_sum) * sampling_interval;
  return rule;
}

TranslatedFunction translate_reference(const PiecewiseConstantFunction& f, int ref_index) {
  const int m = f.region_count();
  if (ref_index < 0 || ref_index > m) throw std::out_of_range("reference index out of range");
  TranslatedFunction tf;
  tf.base = f;
  tf.ref_index = ref_index;
  tf.discontinuities.assign(static_cast<size_t>(m) + 1, 0.0);
  for (int i = ref_index + 1; i <= m; ++i) {
    tf.discontinuities[static_cast<size_t>(i)] =
        tf.discontinuities[static_cast<size_t>(i - 1)] + f.region_lengths[static_cast<size_t>(i - 1)];
  }
  for (int i = ref_index - 1; i >= 0; --i) {
    tf.discontinuities[static_cast<size_t>(i)] =
        tf.discontinuities[static_cast<size_t>(i + 1)] - f.region_lengths[static_cast<size_t>(i)];
  }
  double shift = 0.0;
  for (int j = 1; j <= ref_index; ++j) shift += f.region_lengths[static_cast<size_t>(j - 1)];
  tf.shift = shift;
  return tf;
}

}  // namespace pcreg
