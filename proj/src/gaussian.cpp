#include "pcreg/gaussian.hpp"

#include <cmath>
#include <stdexcept>

#include "pcreg/rng.hpp"

namespace pcreg {

namespace {
constexpr double kSqrt2 = 1.4142135623730950488;
constexpr double kSqrtPi = 1.7724538509055160273;
}  // namespace

double q_function(double z) { return 0.5 * std::erfc(z / kSqrt2); }

double prob_w1_positive(const EdgeNoiseContext& ctx) {
  if (ctx.sigma <= 0.0 || ctx.v <= 0.0) {
    throw std::invalid_argument("prob_w1_positive: sigma and v must be positive");
  }
  const double s = ctx.sigma * kSqrt2;
  return q_function((ctx.v - ctx.a) / s) * q_function((ctx.v - ctx.b) / s) +
         q_function((ctx.v + ctx.a) / s) * q_function((ctx.v + ctx.b) / s);
}

double expected_w2(const EdgeNoiseContext& ctx) {
  if (ctx.sigma <= 0.0 || ctx.v <= 0.0) {
    throw std::invalid_argument("expected_w2: sigma and v must be positive");
  }
  const double s = ctx.sigma * kSqrt2;
  const double tail = ctx.sigma / kSqrtPi;
  const double four_sigma_sq = 4.0 * ctx.sigma * ctx.sigma;

  const auto upper = [&](double x) {
    return x * q_function((ctx.v - x) / s) + tail * std::exp(-(ctx.v - x) * (ctx.v - x) / four_sigma_sq);
  };
  const auto lower = [&](double x) {
    return x * q_function((ctx.v + x) / s) - tail * std::exp(-(ctx.v + x) * (ctx.v + x) / four_sigma_sq);
  };
  return upper(ctx.a) * upper(ctx.b) + lower(ctx.a) * lower(ctx.b);
}

EdgeStats monte_carlo_edge_stats(WeightKind kind, const EdgeNoiseContext& ctx, long long trials,
                                 Seed seed, EdgeNoiseFamily family) {
  if (trials < 1) throw std::invalid_argument("monte_carlo_edge_stats: trials must be >= 1");
  long long positives = 0;
  double sum = 0.0;
  double sum_sq = 0.0;
  for (long long t = 0; t < trials; ++t) {
    CounterRng rng(seed.value, 0x9d5u, static_cast<std::uint64_t>(t));
    double d1;
    double d2;
    if (family == EdgeNoiseFamily::gaussian) {
      const double s = ctx.sigma * kSqrt2;
      d1 = ctx.a + s * rng.next_gaussian();
      d2 = ctx.b + s * rng.next_gaussian();
    } else {
      d1 = ctx.a + rng.next_uniform(ctx.sigma) - rng.next_uniform(ctx.sigma);
      d2 = ctx.b + rng.next_uniform(ctx.sigma) - rng.next_uniform(ctx.sigma);
    }
    const double w = edge_weight(kind, d1, d2, ctx.v);
    if (w > 0.0) ++positives;
    sum += w;
    sum_sq += w * w;
  }
  EdgeStats stats;
  const double n = static_cast<double>(trials);
  stats.positive_rate = static_cast<double>(positives) / n;
  stats.positive_rate_std_err =
      std::sqrt(std::max(0.0, stats.positive_rate * (1.0 - stats.positive_rate) / n));
  stats.mean_weight = sum / n;
  const double variance = std::max(0.0, sum_sq / n - stats.mean_weight * stats.mean_weight);
  stats.mean_weight_std_err = std::sqrt(variance / n);
  return stats;
}

}  // namespace pcreg
