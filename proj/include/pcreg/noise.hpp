#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "pcreg/signal_model.hpp"

namespace pcreg {

enum class NoiseKind { symmetric_binary, gaussian, uniform, fixed };

// Additive noise model.  symmetric_binary draws +/-magnitude with equal
// probability, gaussian is zero-mean with standard deviation sigma, uniform
// has density 1/(2*halfwidth) on [-halfwidth, halfwidth], and fixed adds a
// caller-supplied pattern verbatim.
struct NoiseSpec {
  NoiseKind kind = NoiseKind::fixed;
  double magnitude = 0.0;   // symmetric_binary
  double sigma = 0.0;       // gaussian
  double halfwidth = 0.0;   // uniform
  std::vector<double> pattern;  // fixed

  static NoiseSpec symmetric_binary(double x);
  static NoiseSpec gaussian(double sigma);
  static NoiseSpec uniform(double halfwidth);
  static NoiseSpec fixed(std::vector<double> pattern);
};

struct Seed {
  std::uint64_t value = 0;
};

// One draw of the noise law, reproducible from (seed, stream, index).
// index is the 1-based sample position; for fixed patterns it selects
// pattern[index-1].
double draw_noise(const NoiseSpec& spec, Seed seed, std::uint64_t stream, std::uint64_t index);

// y = gamma + e, componentwise.  `stream` distinguishes the sequences of a
// trial so both can be generated from one seed.
SampleSequence apply_noise(const SampleSequence& seq, const NoiseSpec& spec, Seed seed,
                           std::uint64_t stream = 0);

// Empirical (mean, variance) over `trials` draws; variance is the population
// variance.  For fixed patterns the draws are the pattern itself.
std::pair<double, double> sample_statistics(const NoiseSpec& spec, long long trials, Seed seed);

}  // namespace pcreg
