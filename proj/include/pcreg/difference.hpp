#pragma once

#include <vector>

#include "pcreg/signal_model.hpp"

namespace pcreg {

// First-order difference of a sample sequence, with an implicit zero sample
// before position 1.  On noiseless data its nonzero entries sit exactly at
// the first sample after each discontinuity.
struct DifferenceSequence {
  std::vector<double> values;  // 0-based storage, positions are 1-based

  int size() const { return static_cast<int>(values.size()); }
  double at1(int pos) const { return values[static_cast<size_t>(pos - 1)]; }
};

struct NonzeroSignature {
  struct Entry {
    int position = 0;  // 1-based
    double value = 0.0;
    int sign = 0;      // +1 or -1
  };
  std::vector<Entry> entries;

  int count() const { return static_cast<int>(entries.size()); }
};

DifferenceSequence difference_sequence(const SampleSequence& seq);
DifferenceSequence difference_sequence(const std::vector<double>& values);

// Entries with |value| > zero_tolerance, in position order.
NonzeroSignature nonzero_signature(const DifferenceSequence& d, double zero_tolerance = 0.0);

}  // namespace pcreg
