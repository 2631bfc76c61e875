#include "pcreg/estimator.hpp"

#include <cstdlib>
#include <string>

namespace pcreg {

std::vector<int> IndexClassification::loose_indices() const {
  std::vector<int> out;
  for (int i = 0; i <= regions; ++i) {
    if (i != ref_index && loose[static_cast<size_t>(i)]) out.push_back(i);
  }
  return out;
}

std::vector<int> IndexClassification::tight_indices() const {
  std::vector<int> out;
  for (int i = 0; i <= regions; ++i) {
    if (i != ref_index && !loose[static_cast<size_t>(i)]) out.push_back(i);
  }
  return out;
}

IndexClassification classify_indices(const std::vector<long long>& counts1,
                                     const std::vector<long long>& counts2, int ref_index) {
  const int m = static_cast<int>(counts1.size());
  if (counts2.size() != counts1.size() || m < 1) {
    throw std::invalid_argument("classify_indices: count patterns must agree and be nonempty");
  }
  if (ref_index < 0 || ref_index > m) {
    throw std::out_of_range("classify_indices: reference index out of range");
  }

  IndexClassification cls;
  cls.ref_index = ref_index;
  cls.regions = m;
  cls.loose.assign(static_cast<size_t>(m) + 1, false);
  cls.count_bound.assign(static_cast<size_t>(m) + 1, 0);

  // Partial sums of region counts between each index and the reference.
  const auto partial = [&](const std::vector<long long>& counts, int i) -> long long {
    long long s = 0;
    if (i < ref_index) {
      for (int j = i + 1; j <= ref_index; ++j) s += counts[static_cast<size_t>(j - 1)];
    } else {
      for (int j = ref_index + 1; j <= i; ++j) s += counts[static_cast<size_t>(j - 1)];
    }
    return s;
  };

  for (int i = 0; i <= m; ++i) {
    if (i == ref_index) continue;
    const long long s1 = partial(counts1, i);
    const long long s2 = partial(counts2, i);
    if (std::llabs(s1 - s2) > 1) {
      throw std::invalid_argument("classify_indices: partial sums toward index " +
                                  std::to_string(i) + " differ by more than one");
    }
    if (s1 == s2) {
      cls.loose[static_cast<size_t>(i)] = true;
      cls.count_bound[static_cast<size_t>(i)] = s1;
    } else {
      cls.count_bound[static_cast<size_t>(i)] = std::max(s1, s2);
    }
  }

  // The estimate needs every region sampled once in both patterns to have
  // its far-side discontinuity located to within one interval.
  for (int region = 1; region <= m; ++region) {
    if (counts1[static_cast<size_t>(region - 1)] != 1 ||
        counts2[static_cast<size_t>(region - 1)] != 1) {
      continue;
    }
    int needed = -1;
    if (region > ref_index) needed = region - 1;
    if (region < ref_index) needed = region + 1;
    if (needed >= 0 && needed != ref_index && cls.loose[static_cast<size_t>(needed)]) {
      cls.precondition_ok = false;
      cls.precondition_failures.push_back(region);
    }
  }
  return cls;
}

IntervalBounds interval_bounds(const IndexClassification& cls, double interval) {
  IntervalBounds bounds;
  bounds.ref_index = cls.ref_index;
  bounds.regions = cls.regions;
  bounds.interval = interval;
  const size_t count = static_cast<size_t>(cls.regions) + 1;
  bounds.left.assign(count, 0);
  bounds.right.assign(count, 0);
  for (int i = 0; i <= cls.regions; ++i) {
    if (i == cls.ref_index) continue;
    const long long c = cls.count_bound[static_cast<size_t>(i)];
    const bool loose = cls.loose[static_cast<size_t>(i)];
    if (i < cls.ref_index) {
      bounds.left[static_cast<size_t>(i)] = loose ? -(c + 1) : -c;
      bounds.right[static_cast<size_t>(i)] = -(c - 1);
    } else {
      bounds.left[static_cast<size_t>(i)] = c - 1;
      bounds.right[static_cast<size_t>(i)] = loose ? c + 1 : c;
    }
  }
  return bounds;
}

}  // namespace pcreg
