#include "pcreg/noise.hpp"

#include <stdexcept>

#include "pcreg/rng.hpp"

namespace pcreg {

NoiseSpec NoiseSpec::symmetric_binary(double x) {
  if (x < 0.0) throw std::invalid_argument("symmetric_binary magnitude must be >= 0");
  NoiseSpec s;
  s.kind = NoiseKind::symmetric_binary;
  s.magnitude = x;
  return s;
}

NoiseSpec NoiseSpec::gaussian(double sigma) {
  if (sigma <= 0.0) throw std::invalid_argument("gaussian sigma must be > 0");
  NoiseSpec s;
  s.kind = NoiseKind::gaussian;
  s.sigma = sigma;
  return s;
}

NoiseSpec NoiseSpec::uniform(double halfwidth) {
  if (halfwidth <= 0.0) throw std::invalid_argument("uniform halfwidth must be > 0");
  NoiseSpec s;
  s.kind = NoiseKind::uniform;
  s.halfwidth = halfwidth;
  return s;
}

NoiseSpec NoiseSpec::fixed(std::vector<double> pattern) {
  NoiseSpec s;
  s.kind = NoiseKind::fixed;
  s.pattern = std::move(pattern);
  return s;
}

double draw_noise(const NoiseSpec& spec, Seed seed, std::uint64_t stream, std::uint64_t index) {
  switch (spec.kind) {
    case NoiseKind::fixed: {
      if (index < 1 || index > spec.pattern.size()) {
        throw std::out_of_range("fixed noise pattern index out of range");
      }
      return spec.pattern[static_cast<size_t>(index - 1)];
    }
    case NoiseKind::symmetric_binary: {
      CounterRng rng(seed.value, stream, index);
      return rng.next_bit() ? spec.magnitude : -spec.magnitude;
    }
    case NoiseKind::gaussian: {
      CounterRng rng(seed.value, stream, index);
      return spec.sigma * rng.next_gaussian();
    }
    case NoiseKind::uniform: {
      CounterRng rng(seed.value, stream, index);
      return rng.next_uniform(spec.halfwidth);
    }
  }
  throw std::logic_error("unreachable noise kind");
}

SampleSequence apply_noise(const SampleSequence& seq, const NoiseSpec& spec, Seed seed,
                           std::uint64_t stream) {
  if (spec.kind == NoiseKind::fixed && spec.pattern.size() != seq.values.size()) {
    throw std::invalid_argument("fixed noise pattern length does not match sequence length");
  }
  SampleSequence out = seq;
  for (int k = 1; k <= seq.size(); ++k) {
    out.values[static_cast<size_t>(k - 1)] +=
        draw_noise(spec, seed, stream, static_cast<std::uint64_t>(k));
  }
  return out;
}

std::pair<double, double> sample_statistics(const NoiseSpec& spec, long long trials, Seed seed) {
  if (trials < 1) throw std::invalid_argument("sample_statistics needs at least one trial");
  long long n = trials;
  if (spec.kind == NoiseKind::fixed) n = static_cast<long long>(spec.pattern.size());
  double sum = 0.0;
  double sum_sq = 0.0;
  for (long long i = 0; i < n; ++i) {
    const double v = spec.kind == NoiseKind::fixed
                         ? spec.pattern[static_cast<size_t>(i)]
                         : draw_noise(spec, seed, 0, static_cast<std::uint64_t>(i) + 1);
    sum += v;
    sum_sq += v * v;
  }
  const double mean = sum / static_cast<double>(n);
  const double variance = sum_sq / static_cast<double>(n) - mean * mean;
  return {mean, variance};
}

}  // namespace pcreg
