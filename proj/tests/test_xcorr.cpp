#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "pcreg/experiments.hpp"
#include "pcreg/rng.hpp"
#include "pcreg/xcorr.hpp"

using namespace pcreg;

TEST_CASE("cross-correlation of the worked pair at zero noise") {
  const PaperCase pc = paper_case();
  const CorrelationProfile r = cross_correlation(pc.gamma1, pc.gamma2);
  CHECK(r.at(-1) == 3.0);
  CHECK(r.at(0) == 1.0);
  CHECK(r.at(1) == -4.0);
  CHECK(r.at(2) == 1.0);
  CHECK(r.at(-2) == -4.0);
  CHECK(best_shifts(r) == std::vector<int>{-1});
}

TEST_CASE("cross-correlation of the worked pair at x = 0.15") {
  const PaperCase pc = paper_case();
  const CorrelationProfile r = cross_correlation(pc.corrupted1(0.15), pc.corrupted2(0.15));
  CHECK(r.at(-3) == doctest::Approx(1.705).epsilon(1e-12));
  CHECK(r.at(-1) == doctest::Approx(1.695).epsilon(1e-12));
  CHECK(best_shifts(r) == std::vector<int>{-3});
}

TEST_CASE("zero sequence gives an all-zero profile") {
  const std::vector<double> y{1, 2, 3, 4};
  const std::vector<double> z(4, 0.0);
  const CorrelationProfile r = cross_correlation(y, z);
  CHECK(static_cast<int>(r.values.size()) == 7);
  for (double v : r.values) CHECK(v == 0.0);

  CHECK_THROWS_AS(cross_correlation(y, std::vector<double>{1.0, 2.0}), std::invalid_argument);
}

TEST_CASE("profile matches the closed-form quadratics across the noise sweep") {
  const PaperCase pc = paper_case();
  for (int step = 0; step <= 100; ++step) {
    const double x = 0.005 * step;
    const CorrelationProfile r = cross_correlation(pc.corrupted1(x), pc.corrupted2(x));
    for (int shift = -8; shift <= 8; ++shift) {
      REQUIRE(std::abs(r.at(shift) - xcorr_closed_form(shift, x)) <= 1e-9);
    }
  }
}

TEST_CASE("argmax moves from -1 to -3 across the critical noise magnitude") {
  const PaperCase pc = paper_case();
  const auto best_at = [&](double x, double tol) {
    return best_shifts(cross_correlation(pc.corrupted1(x), pc.corrupted2(x)), tol);
  };
  CHECK(best_at(0.10, 0.0) == std::vector<int>{-1});
  CHECK(best_at(0.20, 0.0) == std::vector<int>{-3});
  const double x_star = (7.0 - std::sqrt(41.0)) / 4.0;
  CHECK(best_at(x_star, 1e-9) == std::vector<int>{-1, -3});
}

TEST_CASE("swapping the sequences mirrors the profile exactly") {
  CounterRng rng(31337, 0, 0);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 3 + static_cast<int>(rng.next_u64() % 14);
    std::vector<double> y1, y2;
    for (int k = 0; k < n; ++k) {
      y1.push_back(rng.next_uniform(2.0));
      y2.push_back(rng.next_uniform(2.0));
    }
    const CorrelationProfile fwd = cross_correlation(y1, y2);
    const CorrelationProfile rev = cross_correlation(y2, y1);
    for (int shift = fwd.min_shift(); shift <= fwd.max_shift(); ++shift) {
      REQUIRE(fwd.at(shift) == rev.at(-shift));
    }
  }
}
