// Insertion sorts built on RHBS and the two-element merge.
#pragma once

#include <cstddef>
#include <optional>
#include <span>

#include "sortlab/core.hpp"
#include "sortlab/two_merge.hpp"

namespace sortlab {

enum class InsertionPolicy { binary, one_two, one_two_star };

/// Closed interval of p_i values on which a round uses the two-element merge.
struct Window {
  double lo;
  double hi;
  bool contains(double p) const { return lo <= p && p <= hi; }
};

inline constexpr Window kOneTwoWindow{0.5511, 0.888};
// [3/4 - sqrt(6)/12, 3/4 + sqrt(3)/12]
inline constexpr Window kOneTwoStarWindow{0.75 - 0.20412414523193150818, 0.75 + 0.14433756729740644113};

std::optional<Window> two_merge_window(InsertionPolicy policy);

/// True iff the round that grows the sorted prefix to length i merges its pair.
bool use_two_merge(std::size_t i, InsertionPolicy policy);

MergeVariant merge_variant(InsertionPolicy policy);

/// Grows sorted `t` from length i - 2 to i by inserting a and b: either one
/// two-element merge or two RHBS insertions, as the policy dictates for i.
void insert_round(KeySeq& t, Key a, Key b, InsertionPolicy policy, Tally& tally);

KeySeq binary_insertion_sort(std::span<const Key> s, Tally& tally);

/// (1,2)Insertion for MergeVariant::plain, (1,2)Insertion* for MergeVariant::star.
/// Odd lengths finish with one RHBS insertion of the last key.
KeySeq one_two_insertion(std::span<const Key> s, MergeVariant variant, Tally& tally);

}  // namespace sortlab
