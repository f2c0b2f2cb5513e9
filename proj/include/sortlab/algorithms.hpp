// Name-based dispatch over every sorting algorithm in the library.
#pragma once

#include <array>
#include <optional>
#include <span>
#include <string_view>

#include "sortlab/combination.hpp"
#include "sortlab/core.hpp"

namespace sortlab {

enum class Algorithm { binary, one_two, one_two_star, merge_insertion, combination };

inline constexpr std::array<Algorithm, 5> kAllAlgorithms{
    Algorithm::binary, Algorithm::one_two, Algorithm::one_two_star, Algorithm::merge_insertion,
    Algorithm::combination};

std::string_view to_string(Algorithm alg);
std::optional<Algorithm> parse_algorithm(std::string_view name);

/// Combination is only defined for even lengths.
bool supports_length(Algorithm alg, std::size_t n);

KeySeq run_sort(Algorithm alg, std::span<const Key> s, Tally& tally,
                CombinationPolicy policy = CombinationPolicy::automatic);

std::optional<CombinationPolicy> parse_policy(std::string_view name);
std::string_view to_string(CombinationPolicy policy);

}  // namespace sortlab
