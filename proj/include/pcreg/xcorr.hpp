#pragma once

#include <vector>

#include "pcreg/signal_model.hpp"

namespace pcreg {

// Cross-correlation r[i] = sum_n y1[n] * y2[n+i] for i in -(N-1)..(N-1),
// with both sequences treated as zero outside positions 1..N.
struct CorrelationProfile {
  int n = 0;                   // sequence length N
  std::vector<double> values;  // length 2N-1, index i + (N-1)

  int min_shift() const { return -(n - 1); }
  int max_shift() const { return n - 1; }
  double at(int shift) const { return values[static_cast<size_t>(shift + n - 1)]; }
};

CorrelationProfile cross_correlation(const SampleSequence& y1, const SampleSequence& y2);
CorrelationProfile cross_correlation(const std::vector<double>& y1,
                                     const std::vector<double>& y2);

// All shifts whose value is within tie_tolerance of the maximum, sorted by
// |shift| then by shift; the first entry is the method's reported choice.
std::vector<int> best_shifts(const CorrelationProfile& profile, double tie_tolerance = 0.0);

}  // namespace pcreg
