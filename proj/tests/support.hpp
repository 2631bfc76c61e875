#pragma once

// Randomized test instances: a valid piecewise constant function with
// integer levels, two sampling grids covering the support with slack on both
// sides, and optional sign-flip noise small enough that a separating
// threshold is guaranteed to exist.

#include <cmath>
#include <cstdint>
#include <limits>
#include <vector>

#include "pcreg/difference.hpp"
#include "pcreg/noise.hpp"
#include "pcreg/rng.hpp"
#include "pcreg/signal_model.hpp"

namespace pcreg::testing {

struct RandomInstance {
  PiecewiseConstantFunction f;
  SamplingGrid grid1, grid2;
  double min_jump = 0.0;
};

inline RandomInstance random_instance(CounterRng& rng, int min_regions = 2, int max_regions = 4,
                                      int extra_trailing = 12) {
  for (;;) {
    RandomInstance inst;
    const int m = min_regions +
                  static_cast<int>(rng.next_u64() % static_cast<std::uint64_t>(
                                       max_regions - min_regions + 1));
    double prev = 0.0;
    for (int i = 0; i < m; ++i) {
      double level;
      do {
        level = static_cast<double>(1 + rng.next_u64() % 3) * (rng.next_bit() ? 1.0 : -1.0);
      } while (level == prev);
      inst.f.levels.push_back(level);
      prev = level;
    }
    for (int i = 0; i < m; ++i) {
      const int n = 2 + static_cast<int>(rng.next_u64() % 2);
      const double frac = 0.05 + 0.9 * rng.next_unit();
      inst.f.region_lengths.push_back(n - frac);
    }
    inst.f.sampling_interval = 1.0;
    if (!validate_function(inst.f).empty()) continue;

    const double support = inst.f.support_length();
    const int lead1 = 2 + static_cast<int>(rng.next_u64() % 3);
    const int lead2 = 2 + static_cast<int>(rng.next_u64() % 3);
    const int count = static_cast<int>(std::ceil(support)) + std::max(lead1, lead2) + 1 +
                      extra_trailing;
    const double u1 = 0.02 + 0.96 * rng.next_unit();
    const double u2 = 0.02 + 0.96 * rng.next_unit();
    inst.grid1 = {-(lead1 - u1), count, 1.0};
    inst.grid2 = {-(lead2 - u2), count, 1.0};

    inst.min_jump = std::abs(inst.f.levels.front());
    for (size_t k = 0; k + 1 < inst.f.levels.size(); ++k) {
      inst.min_jump = std::min(inst.min_jump, std::abs(inst.f.levels[k + 1] - inst.f.levels[k]));
    }
    inst.min_jump = std::min(inst.min_jump, std::abs(inst.f.levels.back()));
    return inst;
  }
}

struct NoisyPair {
  SampleSequence y1, y2;
  double magnitude = 0.0;
  bool margin_ok = false;  // a separating threshold exists, checked vs truth
};

inline bool margin_holds(const SampleSequence& gamma, const SampleSequence& y) {
  const DifferenceSequence clean = difference_sequence(gamma);
  const DifferenceSequence noisy = difference_sequence(y);
  double zero_max = 0.0;
  double signal_min = std::numeric_limits<double>::infinity();
  for (int pos = 1; pos <= clean.size(); ++pos) {
    if (clean.at1(pos) == 0.0) {
      zero_max = std::max(zero_max, std::abs(noisy.at1(pos)));
    } else {
      signal_min = std::min(signal_min, std::abs(noisy.at1(pos)));
      if (clean.at1(pos) * noisy.at1(pos) <= 0.0) return false;
    }
  }
  return zero_max < signal_min;
}

// Sign-flip noise at 0.15 of the smallest jump: the difference of two noise
// samples stays below half the smallest clean difference component, so the
// separating-threshold condition always holds.
inline NoisyPair corrupt_with_margin(CounterRng& rng, const RandomInstance& inst,
                                     const SampleSequence& gamma1,
                                     const SampleSequence& gamma2) {
  NoisyPair out;
  out.magnitude = 0.15 * inst.min_jump;
  out.y1 = gamma1;
  out.y2 = gamma2;
  for (double& v : out.y1.values) v += rng.next_bit() ? out.magnitude : -out.magnitude;
  for (double& v : out.y2.values) v += rng.next_bit() ? out.magnitude : -out.magnitude;
  out.margin_ok = margin_holds(gamma1, out.y1) && margin_holds(gamma2, out.y2);
  return out;
}

}  // namespace pcreg::testing
