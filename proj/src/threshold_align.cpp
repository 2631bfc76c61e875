#include "pcreg/threshold_align.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace pcreg {

std::vector<long long> Segmentation::region_counts() const {
  std::vector<long long> counts;
  for (size_t k = 0; k + 1 < boundaries.size(); ++k) {
    counts.push_back(boundaries[k + 1] - boundaries[k]);
  }
  return counts;
}

DifferenceSequence apply_threshold(const DifferenceSequence& d, double v) {
  if (v <= 0.0) throw std::invalid_argument("apply_threshold: v must be positive");
  DifferenceSequence out = d;
  for (double& x : out.values) {
    if (std::abs(x) < v) x = 0.0;
  }
  return out;
}

Segmentation signature_to_segmentation(const NonzeroSignature& sig) {
  Segmentation seg;
  seg.boundaries.reserve(sig.entries.size());
  for (const auto& e : sig.entries) seg.boundaries.push_back(e.position);
  return seg;
}

namespace {

CompatibilityVerdict reject(CompatibilityVerdict::Kind kind, std::string reason) {
  CompatibilityVerdict v;
  v.accepted = false;
  v.kind = kind;
  v.reason = std::move(reason);
  return v;
}

}  // namespace

CompatibilityVerdict compatibility_check(const NonzeroSignature& sig1,
                                         const NonzeroSignature& sig2) {
  const int c1 = sig1.count();
  const int c2 = sig2.count();
  if (c1 != c2) {
    return reject(CompatibilityVerdict::Kind::count_mismatch,
                  "count mismatch (" + std::to_string(c1) + " vs " + std::to_string(c2) + ")");
  }
  if (c1 < 2) {
    return reject(CompatibilityVerdict::Kind::too_few_entries,
                  "fewer than two entries (" + std::to_string(c1) + ")");
  }

  std::vector<int> sign_mismatches;
  for (int k = 0; k < c1; ++k) {
    if (sig1.entries[static_cast<size_t>(k)].sign != sig2.entries[static_cast<size_t>(k)].sign) {
      sign_mismatches.push_back(k + 1);
    }
  }
  if (!sign_mismatches.empty()) {
    std::ostringstream os;
    os << "signs differ at pair";
    if (sign_mismatches.size() > 1) os << "s";
    for (size_t k = 0; k < sign_mismatches.size(); ++k) {
      os << (k == 0 ? " " : ",") << sign_mismatches[k];
    }
    return reject(CompatibilityVerdict::Kind::sign_mismatch, os.str());
  }

  const Segmentation seg1 = signature_to_segmentation(sig1);
  const Segmentation seg2 = signature_to_segmentation(sig2);
  const std::vector<long long> eta1 = seg1.region_counts();
  const std::vector<long long> eta2 = seg2.region_counts();
  for (size_t k = 0; k < eta1.size(); ++k) {
    if (std::llabs(eta1[k] - eta2[k]) > 1) {
      return reject(CompatibilityVerdict::Kind::region_count_mismatch,
                    "region " + std::to_string(k + 1) + " counts differ by more than one (" +
                        std::to_string(eta1[k]) + " vs " + std::to_string(eta2[k]) + ")");
    }
  }

  // Window sums differ by at most one for every contiguous window, i.e. the
  // prefix-difference range never exceeds one.
  long long prefix = 0;
  long long lo = 0;
  long long hi = 0;
  for (size_t k = 0; k < eta1.size(); ++k) {
    prefix += eta1[k] - eta2[k];
    lo = std::min(lo, prefix);
    hi = std::max(hi, prefix);
    if (hi - lo > 1) {
      return reject(CompatibilityVerdict::Kind::cumulative_mismatch,
                    "cumulative counts through region " + std::to_string(k + 1) +
                        " differ by more than one");
    }
  }

  CompatibilityVerdict v;
  v.accepted = true;
  v.kind = CompatibilityVerdict::Kind::ok;
  v.reason = "compatible";
  v.inferred_regions = c1 - 1;
  return v;
}

ThresholdSearchResult search_threshold(const DifferenceSequence& d1,
                                       const DifferenceSequence& d2) {
  if (d1.size() != d2.size()) throw std::invalid_argument("search_threshold: length mismatch");

  std::vector<double> magnitudes;
  magnitudes.reserve(static_cast<size_t>(2 * d1.size()));
  for (double x : d1.values) {
    if (x != 0.0) magnitudes.push_back(std::abs(x));
  }
  for (double x : d2.values) {
    if (x != 0.0) magnitudes.push_back(std::abs(x));
  }
  std::sort(magnitudes.begin(), magnitudes.end());
  // Magnitudes within 1e-9 relative are one equivalence class; rounding must
  // not manufacture a candidate between two arithmetically equal values.
  std::vector<double> distinct;
  for (double mag : magnitudes) {
    if (distinct.empty() || mag - distinct.back() > 1e-9 * std::max(1.0, mag)) {
      distinct.push_back(mag);
    }
  }
  magnitudes = std::move(distinct);

  ThresholdSearchResult result;
  if (magnitudes.empty()) return result;  // all-zero pair: infeasible, empty ladder

  std::vector<double> candidates;
  candidates.push_back(magnitudes.front() / 2.0);
  for (size_t k = 0; k + 1 < magnitudes.size(); ++k) {
    candidates.push_back((magnitudes[k] + magnitudes[k + 1]) / 2.0);
  }

  for (double v : candidates) {
    ThresholdedPair pair;
    pair.threshold = v;
    pair.t1 = apply_threshold(d1, v);
    pair.t2 = apply_threshold(d2, v);
    pair.sig1 = nonzero_signature(pair.t1);
    pair.sig2 = nonzero_signature(pair.t2);
    const CompatibilityVerdict verdict = compatibility_check(pair.sig1, pair.sig2);
    result.ladder.push_back({v, verdict});
    if (verdict.accepted && !result.feasible) {
      result.feasible = true;
      result.threshold = v;
      result.seg1 = signature_to_segmentation(pair.sig1);
      result.seg2 = signature_to_segmentation(pair.sig2);
      result.pair = std::move(pair);
    }
  }
  return result;
}

LevelEstimate estimate_levels(const SampleSequence& y1, const SampleSequence& y2,
                              const Segmentation& seg1, const Segmentation& seg2) {
  LevelEstimate est;
  est.values = pooled_level_means<double>(y1.values, y2.values, seg1, seg2);
  const std::vector<long long> eta1 = seg1.region_counts();
  const std::vector<long long> eta2 = seg2.region_counts();
  for (size_t k = 0; k < eta1.size(); ++k) est.pooled_counts.push_back(eta1[k] + eta2[k]);
  return est;
}

}  // namespace pcreg
