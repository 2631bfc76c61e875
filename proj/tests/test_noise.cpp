#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "pcreg/noise.hpp"

using namespace pcreg;

namespace {

SampleSequence make_sequence(std::vector<double> values) {
  SampleSequence seq;
  seq.values = std::move(values);
  seq.grid = {0.0, static_cast<int>(seq.values.size()), 1.0};
  return seq;
}

}  // namespace

TEST_CASE("fixed pattern corruption reproduces the worked sequences") {
  const SampleSequence gamma1 = make_sequence({0, 1, 1, -1, 1, 1, -1, 0, 0});
  const double x = 0.15;
  const NoiseSpec spec = NoiseSpec::fixed({-x, x, -x, x, x, -x, -x, x, x});
  const SampleSequence y1 = apply_noise(gamma1, spec, Seed{0});
  const std::vector<double> expect{-0.15, 1.15, 0.85, -0.85, 1.15, 0.85, -1.15, 0.15, 0.15};
  for (size_t k = 0; k < expect.size(); ++k) {
    CHECK(y1.values[k] == doctest::Approx(expect[k]).epsilon(1e-15));
  }

  // All-zero pattern is the identity.
  const SampleSequence same =
      apply_noise(gamma1, NoiseSpec::fixed(std::vector<double>(9, 0.0)), Seed{0});
  CHECK(same.values == gamma1.values);

  CHECK_THROWS_AS(apply_noise(gamma1, NoiseSpec::fixed({1.0, 2.0}), Seed{0}),
                  std::invalid_argument);
}

TEST_CASE("sign-flip noise has exact magnitude and is seed-deterministic") {
  const SampleSequence gamma = make_sequence({0, 1, 1, -1, 1, 1, -1, 0, 0});
  const NoiseSpec spec = NoiseSpec::symmetric_binary(0.15);
  const SampleSequence a = apply_noise(gamma, spec, Seed{42}, 1);
  const SampleSequence b = apply_noise(gamma, spec, Seed{42}, 1);
  CHECK(a.values == b.values);

  const SampleSequence other_stream = apply_noise(gamma, spec, Seed{42}, 2);
  CHECK(a.values != other_stream.values);

  // Every draw lies exactly on the two-point support of the law.
  for (int k = 1; k <= 64; ++k) {
    const double e = draw_noise(spec, Seed{42}, 1, static_cast<std::uint64_t>(k));
    CHECK((e == 0.15 || e == -0.15));
  }
}

TEST_CASE("gaussian and uniform draws are reproducible per index") {
  const NoiseSpec g = NoiseSpec::gaussian(0.5);
  CHECK(draw_noise(g, Seed{7}, 3, 11) == draw_noise(g, Seed{7}, 3, 11));
  CHECK(draw_noise(g, Seed{7}, 3, 11) != draw_noise(g, Seed{7}, 3, 12));

  const NoiseSpec u = NoiseSpec::uniform(2.0);
  for (int k = 1; k <= 200; ++k) {
    const double v = draw_noise(u, Seed{9}, 0, static_cast<std::uint64_t>(k));
    CHECK(v >= -2.0);
    CHECK(v < 2.0);
  }
}

TEST_CASE("sample statistics") {
  const auto [g_mean, g_var] = sample_statistics(NoiseSpec::gaussian(1.0), 1000000, Seed{11});
  CHECK(std::abs(g_mean) < 0.01);
  CHECK(std::abs(g_var - 1.0) < 0.01);

  const NoiseSpec pattern = NoiseSpec::fixed({1.0, -1.0, 1.0, -1.0});
  const auto [p_mean, p_var] = sample_statistics(pattern, 1, Seed{0});
  CHECK(p_mean == 0.0);
  CHECK(p_var == 1.0);

  const auto [z_mean, z_var] = sample_statistics(NoiseSpec::symmetric_binary(0.0), 1000, Seed{1});
  CHECK(z_mean == 0.0);
  CHECK(z_var == 0.0);
}

TEST_CASE("every stochastic law is empirically zero-mean") {
  const long long trials = 1000000;
  struct Case {
    NoiseSpec spec;
    double std_dev;
  };
  const Case cases[] = {
      {NoiseSpec::symmetric_binary(0.5), 0.5},
      {NoiseSpec::gaussian(1.0), 1.0},
      {NoiseSpec::uniform(1.0), 1.0 / std::sqrt(3.0)},
  };
  for (const auto& c : cases) {
    const auto [mean, var] = sample_statistics(c.spec, trials, Seed{123});
    const double std_err = c.std_dev / std::sqrt(static_cast<double>(trials));
    CHECK(std::abs(mean) <= 4.0 * std_err);
    CHECK(var == doctest::Approx(c.std_dev * c.std_dev).epsilon(0.02));
  }
}
