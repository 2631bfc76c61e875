#include <doctest.h>

#include <cmath>

#include "pcreg/gaussian.hpp"
#include "pcreg/rng.hpp"

using namespace pcreg;

namespace {

// Independent oracle: Simpson quadrature of the standard normal density
// over [z, z + 40], which exhausts the tail to far below 1e-12.
double q_by_quadrature(double z) {
  const double hi = z + 40.0;
  const int steps = 400000;  // even
  const double h = (hi - z) / steps;
  const auto density = [](double t) {
    return std::exp(-0.5 * t * t) / std::sqrt(2.0 * 3.14159265358979323846);
  };
  double acc = density(z) + density(hi);
  for (int k = 1; k < steps; ++k) {
    acc += density(z + k * h) * (k % 2 ? 4.0 : 2.0);
  }
  return acc * h / 3.0;
}

}  // namespace

TEST_CASE("gaussian tail function") {
  CHECK(q_function(0.0) == 0.5);
  CHECK(std::abs(q_function(1.6449) - 0.05) < 1e-4);
  CHECK(std::abs(q_function(1.6449) - q_by_quadrature(1.6449)) < 1e-10);
  for (double z = -6.0; z <= 6.0; z += 0.5) {
    CHECK(q_function(-z) + q_function(z) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(std::abs(q_function(z) - q_by_quadrature(z)) < 1e-10);
  }
}

TEST_CASE("positive-weight probability") {
  // Far above the gate the weight is almost surely positive.
  CHECK(prob_w1_positive({2.0, 2.0, 1.0, 1e-6}) == doctest::Approx(1.0).epsilon(1e-12));

  // At the origin the closed form collapses to twice a squared tail.
  const double p0 = prob_w1_positive({0.0, 0.0, 1.0, 1.0});
  const double q = q_function(1.0 / std::sqrt(2.0));
  CHECK(p0 == doctest::Approx(2.0 * q * q).epsilon(1e-14));

  // Strictly positive and nonincreasing in the gate for fixed inputs.
  double prev = 1.1;
  for (double v = 0.25; v <= 4.0; v += 0.25) {
    const double p = prob_w1_positive({0.7, -0.4, v, 0.8});
    CHECK(p > 0.0);
    CHECK(p < 1.0);
    CHECK(p <= prev + 1e-15);
    prev = p;
  }
}

TEST_CASE("expected gated product") {
  // Shrinking noise drives the expectation to the clean product.
  CHECK(std::abs(expected_w2({2.0, 2.0, 1.0, 1e-3}) - 4.0) < 1e-6);
  double prev_gap = 1e9;
  for (const double sigma : {1e-2, 1e-3, 1e-4}) {
    const double gap = std::abs(expected_w2({2.0, 2.0, 1.0, sigma}) - 4.0);
    CHECK(gap < prev_gap + 1e-18);
    prev_gap = gap;
  }
  CHECK(std::abs(expected_w2({-2.0, -2.0, 1.0, 1e-3}) - 4.0) < 1e-6);

  // Mirror symmetry is exact.
  CHECK(expected_w2({0.8, -1.3, 1.0, 0.9}) == expected_w2({-0.8, 1.3, 1.0, 0.9}));
}

TEST_CASE("monte carlo agrees with the closed forms") {
  const long long trials = 1000000;
  CounterRng settings(55, 0, 0);
  for (int setting = 0; setting < 5; ++setting) {
    EdgeNoiseContext ctx;
    ctx.a = settings.next_uniform(3.0);
    ctx.b = settings.next_uniform(3.0);
    ctx.v = 0.2 + 1.8 * settings.next_unit();
    ctx.sigma = 0.3 + 1.7 * settings.next_unit();

    const EdgeStats w1 = monte_carlo_edge_stats(WeightKind::indicator, ctx, trials,
                                                Seed{1000 + static_cast<std::uint64_t>(setting)});
    CHECK(std::abs(w1.positive_rate - prob_w1_positive(ctx)) <=
          3.0 * w1.positive_rate_std_err + 1e-9);

    const EdgeStats w2 = monte_carlo_edge_stats(WeightKind::product, ctx, trials,
                                                Seed{2000 + static_cast<std::uint64_t>(setting)});
    CHECK(std::abs(w2.mean_weight - expected_w2(ctx)) <= 3.0 * w2.mean_weight_std_err + 1e-9);
  }

  // A single trial yields a degenerate rate.
  const EdgeStats one =
      monte_carlo_edge_stats(WeightKind::indicator, {0.0, 0.0, 1.0, 1.0}, 1, Seed{3});
  CHECK((one.positive_rate == 0.0 || one.positive_rate == 1.0));

  // The uniform analog is supported for the empirical comparison.
  const EdgeStats uni = monte_carlo_edge_stats(WeightKind::min_square, {1.0, 1.0, 0.5, 0.6},
                                               10000, Seed{4}, EdgeNoiseFamily::uniform);
  CHECK(uni.positive_rate > 0.0);
  CHECK(uni.mean_weight > 0.0);
}
