// Merge insertion on a prefix of size ~2^k/3, then paired star insertions.
#pragma once

#include <cstddef>
#include <span>

#include "sortlab/core.hpp"

namespace sortlab {

struct PrefixChoice {
  std::size_t n = 0;
  std::size_t n_prime = 0;
  bool parity_adjusted = false;
  unsigned k = 0;  // n_prime is ceil(2^k / 3), possibly minus one
};

/// Largest ceil(2^k/3) <= n, lowered by one when n - n' would be odd. n even, n >= 4.
PrefixChoice choose_n_prime(std::size_t n);

enum class CombinationPolicy { combination, merge_insertion_only, automatic };

/// p_n range where plain merge insertion beats the combination.
inline constexpr double kMergeInsertionWindowLo = 0.638;
inline constexpr double kMergeInsertionWindowHi = 2.0 / 3.0;

bool in_merge_insertion_window(std::size_t n);

/// Whether `policy` sorts an input of length n with the combination route.
bool uses_combination_route(std::size_t n, CombinationPolicy policy);

/// Requires even n.
KeySeq combination_sort(std::span<const Key> s, Tally& tally,
                        CombinationPolicy policy = CombinationPolicy::automatic);

}  // namespace sortlab
