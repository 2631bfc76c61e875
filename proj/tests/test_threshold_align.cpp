#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "pcreg/difference.hpp"
#include "pcreg/experiments.hpp"
#include "pcreg/rng.hpp"
#include "pcreg/threshold_align.hpp"
#include "support.hpp"

using namespace pcreg;

TEST_CASE("apply_threshold on the worked pair at x = 0.3") {
  const PaperCase pc = paper_case();
  const DifferenceSequence d1 = difference_sequence(pc.corrupted1(0.3));
  const DifferenceSequence d2 = difference_sequence(pc.corrupted2(0.3));
  const DifferenceSequence t1 = apply_threshold(d1, 1.0);
  const DifferenceSequence t2 = apply_threshold(d2, 1.0);

  const std::vector<double> expect1{0, 1.6, 0, -1.4, 2, 0, -2, 1.6, 0};
  const std::vector<double> expect2{0, 1, -1.4, 0, 2, -1.4, 1, 0, 0};
  for (size_t k = 0; k < expect1.size(); ++k) {
    CHECK(t1.values[k] == doctest::Approx(expect1[k]).epsilon(1e-12));
    CHECK(t2.values[k] == doctest::Approx(expect2[k]).epsilon(1e-12));
  }

  // Above the largest magnitude everything vanishes.
  const DifferenceSequence wiped = apply_threshold(d1, 10.0);
  for (double v : wiped.values) CHECK(v == 0.0);

  // Boundary magnitudes are kept, and thresholding is idempotent.
  CounterRng rng(17, 0, 0);
  for (int trial = 0; trial < 100; ++trial) {
    DifferenceSequence d;
    for (int k = 0; k < 12; ++k) d.values.push_back(rng.next_uniform(2.0));
    const double v = 0.1 + rng.next_unit();
    const DifferenceSequence once = apply_threshold(d, v);
    const DifferenceSequence twice = apply_threshold(once, v);
    REQUIRE(once.values == twice.values);
  }
  DifferenceSequence exact;
  exact.values = {1.0, -1.0, 0.5};
  CHECK(apply_threshold(exact, 1.0).values == std::vector<double>{1.0, -1.0, 0.0});
}

TEST_CASE("compatibility accepts the worked thresholded pair") {
  const PaperCase pc = paper_case();
  const DifferenceSequence t1 = apply_threshold(difference_sequence(pc.corrupted1(0.3)), 1.0);
  const DifferenceSequence t2 = apply_threshold(difference_sequence(pc.corrupted2(0.3)), 1.0);
  const CompatibilityVerdict verdict =
      compatibility_check(nonzero_signature(t1), nonzero_signature(t2));
  CHECK(verdict.accepted);
  CHECK(verdict.inferred_regions == 4);
}

TEST_CASE("compatibility rejections at the breakdown noise level") {
  const PaperCase pc = paper_case();
  const DifferenceSequence d1 = difference_sequence(pc.corrupted1(0.5));
  const DifferenceSequence d2 = difference_sequence(pc.corrupted2(0.5));

  // v in (0.5, 1]: equal counts but two sign disagreements.
  {
    const CompatibilityVerdict verdict =
        compatibility_check(nonzero_signature(apply_threshold(d1, 0.75)),
                            nonzero_signature(apply_threshold(d2, 0.75)));
    CHECK(!verdict.accepted);
    CHECK(verdict.kind == CompatibilityVerdict::Kind::sign_mismatch);
    CHECK(verdict.reason.find("6") != std::string::npos);
    CHECK(verdict.reason.find("7") != std::string::npos);
  }

  // v in (1, 2): four entries against one.
  {
    const CompatibilityVerdict verdict =
        compatibility_check(nonzero_signature(apply_threshold(d1, 1.5)),
                            nonzero_signature(apply_threshold(d2, 1.5)));
    CHECK(!verdict.accepted);
    CHECK(verdict.kind == CompatibilityVerdict::Kind::count_mismatch);
    CHECK(verdict.reason.find("4 vs 1") != std::string::npos);
  }
}

TEST_CASE("compatibility verdict is symmetric") {
  CounterRng rng(23, 0, 0);
  for (int trial = 0; trial < 300; ++trial) {
    const auto random_signature = [&]() {
      NonzeroSignature sig;
      int pos = 0;
      const int entries = 1 + static_cast<int>(rng.next_u64() % 6);
      for (int k = 0; k < entries; ++k) {
        pos += 1 + static_cast<int>(rng.next_u64() % 3);
        const double value = (rng.next_bit() ? 1.0 : -1.0) * (0.5 + rng.next_unit());
        sig.entries.push_back({pos, value, value > 0 ? 1 : -1});
      }
      return sig;
    };
    const NonzeroSignature a = random_signature();
    const NonzeroSignature b = random_signature();
    const CompatibilityVerdict ab = compatibility_check(a, b);
    const CompatibilityVerdict ba = compatibility_check(b, a);
    REQUIRE(ab.accepted == ba.accepted);
    REQUIRE(ab.kind == ba.kind);
  }
}

TEST_CASE("windowed count compatibility catches offsetting drifts") {
  // Region counts (2,1,1) vs (1,2,2): every pairwise difference and every
  // prefix difference stays within one, but the window over regions 2..3
  // differs by two.
  NonzeroSignature a, b;
  for (int pos : {2, 4, 5, 6}) a.entries.push_back({pos, 1.0, 1});
  for (int pos : {2, 3, 5, 7}) b.entries.push_back({pos, 1.0, 1});
  const CompatibilityVerdict verdict = compatibility_check(a, b);
  CHECK(!verdict.accepted);
  CHECK(verdict.kind == CompatibilityVerdict::Kind::cumulative_mismatch);
}

TEST_CASE("threshold search on the worked pair") {
  const PaperCase pc = paper_case();

  for (const double x : {0.0, 0.1, 0.2, 0.3, 0.4, 0.49}) {
    const ThresholdSearchResult result =
        search_threshold(difference_sequence(pc.corrupted1(x)),
                         difference_sequence(pc.corrupted2(x)));
    REQUIRE(result.feasible);
    REQUIRE(result.seg1.boundaries == std::vector<int>{2, 4, 5, 7, 8});
    REQUIRE(result.seg2.boundaries == std::vector<int>{2, 3, 5, 6, 7});
    // The accepted candidate sits in the equivalence class that contains 1:
    // thresholding with it zeroes exactly what v = 1 zeroes.
    const DifferenceSequence d1 = difference_sequence(pc.corrupted1(x));
    REQUIRE(apply_threshold(d1, result.threshold).values == apply_threshold(d1, 1.0).values);
  }

  const ThresholdSearchResult infeasible =
      search_threshold(difference_sequence(pc.corrupted1(0.5)),
                       difference_sequence(pc.corrupted2(0.5)));
  CHECK(!infeasible.feasible);
  for (const auto& cand : infeasible.ladder) CHECK(!cand.verdict.accepted);
}

TEST_CASE("a noiseless sequence paired with itself accepts the smallest candidate") {
  const PaperCase pc = paper_case();
  const DifferenceSequence d = difference_sequence(pc.gamma1);
  const ThresholdSearchResult result = search_threshold(d, d);
  REQUIRE(result.feasible);
  CHECK(result.threshold == result.ladder.front().threshold);
  CHECK(result.seg1.boundaries == std::vector<int>{2, 4, 5, 7, 8});
}

TEST_CASE("level estimates pool both sequences") {
  const PaperCase pc = paper_case();
  Segmentation seg1{{2, 4, 5, 7, 8}};
  Segmentation seg2{{2, 3, 5, 6, 7}};

  const LevelEstimate noiseless = estimate_levels(pc.gamma1, pc.gamma2, seg1, seg2);
  CHECK(noiseless.values == std::vector<double>{1, -1, 1, -1});
  CHECK(noiseless.pooled_counts == std::vector<long long>{3, 3, 3, 2});

  for (const double x : {0.1, 0.25, 0.3, 0.45}) {
    const LevelEstimate est = estimate_levels(pc.corrupted1(x), pc.corrupted2(x), seg1, seg2);
    CHECK(est.values[0] == doctest::Approx(1.0 - x / 3.0).epsilon(1e-12));
    CHECK(est.values[1] == doctest::Approx(-1.0 + x / 3.0).epsilon(1e-12));
    CHECK(est.values[2] == doctest::Approx(1.0 - x / 3.0).epsilon(1e-12));
    CHECK(est.values[3] == doctest::Approx(-1.0).epsilon(1e-12));
  }

  Segmentation wrong{{2, 5, 8}};
  CHECK_THROWS_AS(estimate_levels(pc.gamma1, pc.gamma2, seg1, wrong), std::invalid_argument);
}

TEST_CASE("search recovers the exact segmentation whenever a separating threshold exists") {
  CounterRng rng(777, 0, 0);
  int margin_trials = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const testing::RandomInstance inst = testing::random_instance(rng);
    const SampleSequence gamma1 = sample(inst.f, inst.grid1);
    const SampleSequence gamma2 = sample(inst.f, inst.grid2);
    const testing::NoisyPair noisy = testing::corrupt_with_margin(rng, inst, gamma1, gamma2);
    REQUIRE(noisy.margin_ok);
    ++margin_trials;

    const ThresholdSearchResult result = search_threshold(difference_sequence(noisy.y1),
                                                          difference_sequence(noisy.y2));
    REQUIRE(result.feasible);
    REQUIRE(result.seg1.boundaries == true_segmentation(inst.f, inst.grid1).boundaries);
    REQUIRE(result.seg2.boundaries == true_segmentation(inst.f, inst.grid2).boundaries);
  }
  CHECK(margin_trials == 1000);
}
