#include "sortlab/algorithms.hpp"

#include "sortlab/merge_insertion.hpp"
#include "sortlab/sorters.hpp"

namespace sortlab {

std::string_view to_string(Algorithm alg) {
  switch (alg) {
    case Algorithm::binary: return "binary";
    case Algorithm::one_two: return "one_two";
    case Algorithm::one_two_star: return "one_two_star";
    case Algorithm::merge_insertion: return "merge_insertion";
    case Algorithm::combination: return "combination";
  }
  return "?";
}

std::optional<Algorithm> parse_algorithm(std::string_view name) {
  for (Algorithm alg : kAllAlgorithms) {
    if (to_string(alg) == name) return alg;
  }
  return std::nullopt;
}

bool supports_length(Algorithm alg, std::size_t n) {
  return alg != Algorithm::combination || n % 2 == 0;
}

KeySeq run_sort(Algorithm alg, std::span<const Key> s, Tally& tally, CombinationPolicy policy) {
  switch (alg) {
    case Algorithm::binary: return binary_insertion_sort(s, tally);
    case Algorithm::one_two: return one_two_insertion(s, MergeVariant::plain, tally);
    case Algorithm::one_two_star: return one_two_insertion(s, MergeVariant::star, tally);
    case Algorithm::merge_insertion: return merge_insertion_sort(s, tally);
    case Algorithm::combination: return combination_sort(s, tally, policy);
  }
  throw DomainError("run_sort: unknown algorithm");
}

std::optional<CombinationPolicy> parse_policy(std::string_view name) {
  if (name == "combination") return CombinationPolicy::combination;
  if (name == "merge-insertion-only") return CombinationPolicy::merge_insertion_only;
  if (name == "auto") return CombinationPolicy::automatic;
  return std::nullopt;
}

std::string_view to_string(CombinationPolicy policy) {
  switch (policy) {
    case CombinationPolicy::combination: return "combination";
    case CombinationPolicy::merge_insertion_only: return "merge-insertion-only";
    case CombinationPolicy::automatic: return "auto";
  }
  return "?";
}

}  // namespace sortlab
