#include "pcreg/xcorr.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace pcreg {

CorrelationProfile cross_correlation(const std::vector<double>& y1,
                                     const std::vector<double>& y2) {
  if (y1.size() != y2.size()) throw std::invalid_argument("cross_correlation: length mismatch");
  const int n = static_cast<int>(y1.size());
  if (n == 0) throw std::invalid_argument("cross_correlation: empty sequences");
  CorrelationProfile profile;
  profile.n = n;
  profile.values.assign(static_cast<size_t>(2 * n - 1), 0.0);
  for (int shift = -(n - 1); shift <= n - 1; ++shift) {
    // Overlap window in 1-based positions of y1.
    const int lo = std::max(1, 1 - shift);
    const int hi = std::min(n, n - shift);
    double acc = 0.0;
    for (int pos = lo; pos <= hi; ++pos) {
      acc += y1[static_cast<size_t>(pos - 1)] * y2[static_cast<size_t>(pos + shift - 1)];
    }
    profile.values[static_cast<size_t>(shift + n - 1)] = acc;
  }
  return profile;
}

CorrelationProfile cross_correlation(const SampleSequence& y1, const SampleSequence& y2) {
  return cross_correlation(y1.values, y2.values);
}

std::vector<int> best_shifts(const CorrelationProfile& profile, double tie_tolerance) {
  double best = profile.values.front();
  for (double v : profile.values) best = std::max(best, v);
  std::vector<int> shifts;
  for (int shift = profile.min_shift(); shift <= profile.max_shift(); ++shift) {
    if (profile.at(shift) >= best - tie_tolerance) shifts.push_back(shift);
  }
  std::sort(shifts.begin(), shifts.end(), [](int a, int b) {
    if (std::abs(a) != std::abs(b)) return std::abs(a) < std::abs(b);
    return a < b;
  });
  return shifts;
}

}  // namespace pcreg
