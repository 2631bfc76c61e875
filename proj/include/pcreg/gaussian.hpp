#pragma once

#include <cstdint>

#include "pcreg/dp_align.hpp"
#include "pcreg/noise.hpp"

namespace pcreg {

// Single-edge noise model for j1 >= 2, j2 >= 2: the two difference values
// are the true values a and b plus independent noise of variance 2*sigma^2
// each (per-sample noise of variance sigma^2 enters twice in a difference).
struct EdgeNoiseContext {
  double a = 0.0;
  double b = 0.0;
  double v = 1.0;
  double sigma = 1.0;
};

enum class EdgeNoiseFamily { gaussian, uniform };

// Standard normal upper-tail probability, absolute error below 1e-10.
double q_function(double z);

// Probability that the gated indicator weight is positive under the
// Gaussian model:
//   Q((v-a)/(sigma sqrt 2)) Q((v-b)/(sigma sqrt 2))
// + Q((v+a)/(sigma sqrt 2)) Q((v+b)/(sigma sqrt 2)).
double prob_w1_positive(const EdgeNoiseContext& ctx);

// Expected gated product weight under the Gaussian model; approaches a*b as
// sigma shrinks when a and b are on the same side of the gate.
double expected_w2(const EdgeNoiseContext& ctx);

struct EdgeStats {
  double positive_rate = 0.0;
  double positive_rate_std_err = 0.0;
  double mean_weight = 0.0;
  double mean_weight_std_err = 0.0;
};

// Monte Carlo over the single-edge model; `family` picks Gaussian noise of
// standard deviation sigma or the uniform analog (per-sample halfwidth
// sigma, so each difference value adds two independent uniforms).
EdgeStats monte_carlo_edge_stats(WeightKind kind, const EdgeNoiseContext& ctx, long long trials,
                                 Seed seed, EdgeNoiseFamily family = EdgeNoiseFamily::gaussian);

}  // namespace pcreg
