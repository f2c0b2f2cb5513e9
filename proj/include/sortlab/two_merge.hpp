// Two-element merge: inserts a pair (A, B) into a sorted sequence of length
// i - 2 (i even, i >= 4).
//
//   1. One comparison orders A and B.
//   2. A walks a pivot schedule t[P_1] < t[P_2] < ... until A < t[P_r].
//   3. A is RHBS-inserted into the open block strictly between P_{r-1} and P_r
//      (P_0 = 0). If the schedule runs out, into the block above the last pivot.
//   4. B is RHBS-inserted into the gaps at or above A's gap.
//
// The plain variant uses the pivot fractions 1 - 2^(-r/2). The star variant
// shifts the odd-indexed pivots so that the first block holds a power of two of
// gaps (or lands the walk on such a length) depending on p_i.
#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "sortlab/core.hpp"

namespace sortlab {

enum class MergeVariant { plain, star };

/// 1 - 2^(-r/2), r >= 1.
double alpha(int r);

/// Pivot fraction of the star variant for target length with p_i = p.
double alpha_star(int r, double p);

struct PivotSchedule {
  MergeVariant variant = MergeVariant::plain;
  std::size_t i = 0;
  // 1-based positions into T, strictly increasing, each in [1, i - 2].
  std::vector<std::size_t> pivots;
  // The r that produced each surviving pivot.
  std::vector<int> alpha_index;

  std::size_t block_count() const { return pivots.size() + 1; }
  /// Gap range [first, last) of block b (the last block lies above every pivot).
  std::size_t block_first_gap(std::size_t b) const { return b == 0 ? 0 : pivots[b - 1]; }
  std::size_t block_end_gap(std::size_t b) const { return b < pivots.size() ? pivots[b] : i - 1; }
  /// Step-2 comparisons spent when A ends in block b.
  std::size_t step2_comparisons(std::size_t b) const { return b < pivots.size() ? b + 1 : pivots.size(); }
};

/// Raw (unclamped) pivot ceil(alpha * i) computed exactly where alpha * i is a
/// dyadic rational.
long long raw_pivot(std::size_t i, int r, MergeVariant variant);

PivotSchedule pivot_schedule(std::size_t i, MergeVariant variant);

struct SmallerPlacement {
  std::size_t gap = 0;    // gap of A in T
  std::size_t block = 0;  // block that contained A
  std::size_t step2_comparisons = 0;
};

/// Steps 2 and 3 for the smaller key.
SmallerPlacement locate_smaller(Key a, std::span<const Key> t, const PivotSchedule& schedule,
                                Tally& tally);

struct PairPlacement {
  Key smaller;
  Key larger;
  SmallerPlacement smaller_placement;
  std::size_t larger_gap = 0;  // gap of B in T, >= smaller gap
};

/// Steps 1-4 without modifying T.
PairPlacement locate_pair(Key a, Key b, std::span<const Key> t, const PivotSchedule& schedule,
                          Tally& tally);

void two_merge(Key a, Key b, KeySeq& t, const PivotSchedule& schedule, Tally& tally);
void two_merge(Key a, Key b, KeySeq& t, MergeVariant variant, Tally& tally);

}  // namespace sortlab
