#include "sortlab/two_merge.hpp"

#include <cmath>
#include <string>

#include "sortlab/rhbs.hpp"

namespace sortlab {

namespace {

using Wide = __int128;

// ceil(num / 2^shift) for num >= 0.
long long ceil_shift(Wide num, unsigned shift) {
  const Wide den = Wide{1} << shift;
  return static_cast<long long>((num + den - 1) / den);
}

void require_round_length(std::size_t i) {
  if (i < 4 || i % 2 != 0) {
    throw DomainError("two-element merge needs an even target length >= 4, got " + std::to_string(i));
  }
}

bool upper_quarter(std::size_t i) {
  // p_i in (3/4, 1]
  return 4 * static_cast<std::uint64_t>(i) > 3 * pow2(ceil_lg(i));
}

}  // namespace

double alpha(int r) {
  if (r < 1) throw DomainError("alpha: r must be >= 1");
  return 1.0 - std::exp2(-r / 2.0);
}

double alpha_star(int r, double p) {
  if (r < 1) throw DomainError("alpha_star: r must be >= 1");
  if (!(p > 0.5 && p <= 1.0)) throw DomainError("alpha_star: p must lie in (1/2, 1]");
  const int k = (r + 1) / 2;
  if (r % 2 == 0) return 1.0 - std::exp2(-k);
  if (p > 0.75) return 1.0 - std::exp2(-(k - 1)) + 1.0 / (p * std::exp2(k + 1));
  return 1.0 - std::exp2(-k) - 1.0 / (p * std::exp2(k + 2));
}

long long raw_pivot(std::size_t i, int r, MergeVariant variant) {
  if (r < 1) throw DomainError("raw_pivot: r must be >= 1");
  const Wide n = static_cast<Wide>(i);
  const unsigned k = static_cast<unsigned>((r + 1) / 2);
  if (r % 2 == 0) {
    // i (1 - 2^-k)
    return ceil_shift(n * (Wide{1} << k) - n, k);
  }
  if (variant == MergeVariant::plain) {
    const long double value =
        static_cast<long double>(i) * (1.0L - std::exp2(-static_cast<long double>(r) / 2.0L));
    return static_cast<long long>(std::ceil(value));
  }
  const Wide top = Wide{1} << ceil_lg(i);
  if (upper_quarter(i)) {
    // i - i / 2^(k-1) + 2^c / 2^(k+1)
    return ceil_shift(n * (Wide{1} << (k + 1)) - 4 * n + top, k + 1);
  }
  // i - i / 2^k - 2^c / 2^(k+2)
  return ceil_shift(n * (Wide{1} << (k + 2)) - 4 * n - top, k + 2);
}

PivotSchedule pivot_schedule(std::size_t i, MergeVariant variant) {
  require_round_length(i);
  PivotSchedule schedule;
  schedule.variant = variant;
  schedule.i = i;
  const auto top = static_cast<long long>(i - 2);
  const int rounds = static_cast<int>(ceil_lg(static_cast<std::uint64_t>(i) * i));  // ceil(2 lg i)
  for (int r = 1; r <= rounds; ++r) {
    const long long pivot = std::clamp(raw_pivot(i, r, variant), 1LL, top);
    if (!schedule.pivots.empty() && pivot <= static_cast<long long>(schedule.pivots.back())) continue;
    schedule.pivots.push_back(static_cast<std::size_t>(pivot));
    schedule.alpha_index.push_back(r);
  }
  return schedule;
}

SmallerPlacement locate_smaller(Key a, std::span<const Key> t, const PivotSchedule& schedule,
                                Tally& tally) {
  if (t.size() + 2 != schedule.i) {
    throw DomainError("two-element merge: sequence length does not match the schedule");
  }
  SmallerPlacement placement;
  std::size_t block = 0;
  while (block < schedule.pivots.size() && !tally.less(a, t[schedule.pivots[block] - 1])) ++block;
  placement.block = block;
  placement.step2_comparisons = schedule.step2_comparisons(block);
  const std::size_t first = schedule.block_first_gap(block);
  const std::size_t end = schedule.block_end_gap(block);
  placement.gap = first + rhbs_locate(a, t.subspan(first, end - first - 1), tally);
  return placement;
}

PairPlacement locate_pair(Key a, Key b, std::span<const Key> t, const PivotSchedule& schedule,
                          Tally& tally) {
  PairPlacement placement;
  if (tally.less(a, b)) {
    placement.smaller = a;
    placement.larger = b;
  } else {
    placement.smaller = b;
    placement.larger = a;
  }
  placement.smaller_placement = locate_smaller(placement.smaller, t, schedule, tally);
  const std::size_t floor_gap = placement.smaller_placement.gap;
  placement.larger_gap = floor_gap + rhbs_locate(placement.larger, t.subspan(floor_gap), tally);
  return placement;
}

void two_merge(Key a, Key b, KeySeq& t, const PivotSchedule& schedule, Tally& tally) {
  const PairPlacement placement = locate_pair(a, b, t, schedule, tally);
  t.insert(t.begin() + static_cast<std::ptrdiff_t>(placement.larger_gap), placement.larger);
  t.insert(t.begin() + static_cast<std::ptrdiff_t>(placement.smaller_placement.gap), placement.smaller);
}

void two_merge(Key a, Key b, KeySeq& t, MergeVariant variant, Tally& tally) {
  two_merge(a, b, t, pivot_schedule(t.size() + 2, variant), tally);
}

}  // namespace sortlab
