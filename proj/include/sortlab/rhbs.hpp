// Right-heavy binary search (RHBS) insertion.
//
// RHBS places its probe so that the elements on one side of it number a power
// of two minus one. As a result the positions that need one comparison more
// than the minimum always form a suffix of the gaps, so cheap outcomes line up
// with small ranks.
//
// Gaps are 0-based: gap g of a sorted sequence t of length m is the position
// just above t[g-1] (gap 0 lies below t[0], gap m above t[m-1]).
#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "sortlab/core.hpp"

namespace sortlab {

/// 1-based probe position used by RHBS on a sequence of `length` >= 1 elements.
std::size_t rhbs_pivot(std::size_t length);

using PivotRule = std::size_t (*)(std::size_t length);

/// Gap of `a` in sorted `t`. Inserting into an empty sequence costs nothing.
std::size_t rhbs_locate(Key a, std::span<const Key> t, Tally& tally, PivotRule rule = rhbs_pivot);

/// Inserts `a` into sorted `t` in place and returns the gap it landed in.
std::size_t rhbs_insert(Key a, KeySeq& t, Tally& tally);

/// Comparisons RHBS spends for a key landing in gap `g` of `m_gaps` gaps.
unsigned rhbs_gap_cost(std::uint64_t m_gaps, std::uint64_t g);

/// Sum of rhbs_gap_cost over all gaps: m (ceil(lg m) + 1) - 2^ceil(lg m).
std::uint64_t rhbs_cost_sum(std::uint64_t m_gaps);

/// Mean comparisons for a uniformly placed key: ceil(lg m) + 1 - 2^ceil(lg m) / m.
template <class Scalar = double>
Scalar rhbs_average(std::uint64_t m_gaps) {
  if (m_gaps == 0) throw DomainError("rhbs_average: m_gaps must be >= 1");
  return Scalar(rhbs_cost_sum(m_gaps)) / Scalar(m_gaps);
}

}  // namespace sortlab
