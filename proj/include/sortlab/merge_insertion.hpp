// Ford-Johnson merge insertion.
#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "sortlab/core.hpp"

namespace sortlab {

/// Batch limits t_k = (2^(k+1) + (-1)^k) / 3 (1, 3, 5, 11, 21, ...), up to the
/// first one that reaches n.
struct FJPlan {
  std::size_t n = 0;
  std::vector<std::uint64_t> batch_bounds;
};

FJPlan fj_batch_bounds(std::size_t n);

/// Largest comparison count seen for an insertion of batch k (index k, k >= 2),
/// accumulated over every recursion level.
struct MergeInsertionStats {
  std::vector<std::uint64_t> max_batch_comparisons;
  std::vector<std::uint64_t> max_search_length;
};

KeySeq merge_insertion_sort(std::span<const Key> s, Tally& tally, MergeInsertionStats* stats = nullptr);

}  // namespace sortlab
