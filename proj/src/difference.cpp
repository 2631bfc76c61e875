#include "pcreg/difference.hpp"

#include <cmath>

namespace pcreg {

DifferenceSequence difference_sequence(const std::vector<double>& values) {
  DifferenceSequence d;
  d.values.reserve(values.size());
  double prev = 0.0;
  for (double v : values) {
    d.values.push_back(v - prev);
    prev = v;
  }
  return d;
}

DifferenceSequence difference_sequence(const SampleSequence& seq) {
  return difference_sequence(seq.values);
}

NonzeroSignature nonzero_signature(const DifferenceSequence& d, double zero_tolerance) {
  NonzeroSignature sig;
  for (int pos = 1; pos <= d.size(); ++pos) {
    const double v = d.at1(pos);
    if (std::abs(v) > zero_tolerance) {
      sig.entries.push_back({pos, v, v > 0.0 ? 1 : -1});
    }
  }
  return sig;
}

}  // namespace pcreg
