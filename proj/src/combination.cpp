#include "sortlab/combination.hpp"

#include <string>

#include "sortlab/merge_insertion.hpp"
#include "sortlab/sorters.hpp"

namespace sortlab {

namespace {

std::uint64_t ceil_third_pow2(unsigned k) { return (pow2(k) + 2) / 3; }

}  // namespace

PrefixChoice choose_n_prime(std::size_t n) {
  if (n < 4 || n % 2 != 0) throw DomainError("choose_n_prime: n must be even and >= 4, got " + std::to_string(n));
  PrefixChoice choice;
  choice.n = n;
  unsigned k = 1;
  while (ceil_third_pow2(k + 1) <= n) ++k;
  choice.k = k;
  choice.n_prime = static_cast<std::size_t>(ceil_third_pow2(k));
  if ((n - choice.n_prime) % 2 != 0) {
    --choice.n_prime;
    choice.parity_adjusted = true;
  }
  return choice;
}

bool in_merge_insertion_window(std::size_t n) {
  const double p = p_of(static_cast<std::uint64_t>(n));
  return kMergeInsertionWindowLo <= p && p <= kMergeInsertionWindowHi;
}

bool uses_combination_route(std::size_t n, CombinationPolicy policy) {
  switch (policy) {
    case CombinationPolicy::combination: return true;
    case CombinationPolicy::merge_insertion_only: return false;
    case CombinationPolicy::automatic: return !in_merge_insertion_window(n);
  }
  return true;
}

KeySeq combination_sort(std::span<const Key> s, Tally& tally, CombinationPolicy policy) {
  const std::size_t n = s.size();
  if (n % 2 != 0) throw DomainError("combination_sort: n must be even");
  if (n < 4 || !uses_combination_route(n, policy)) return merge_insertion_sort(s, tally);

  const PrefixChoice choice = choose_n_prime(n);
  KeySeq out = merge_insertion_sort(s.first(choice.n_prime), tally);
  out.reserve(n);
  for (std::size_t i = choice.n_prime + 2; i <= n; i += 2) {
    insert_round(out, s[i - 2], s[i - 1], InsertionPolicy::one_two_star, tally);
  }
  return out;
}

}  // namespace sortlab
