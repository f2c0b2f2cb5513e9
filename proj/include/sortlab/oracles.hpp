// Ground-truth engines: exhaustive permutation runs, exact pair enumeration of
// one merge round, exact whole-sort expectations built from rounds, Monte Carlo.
//
// Every engine drives the production sorting code with counting tallies; none
// of them re-implements an algorithm.
#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "sortlab/algorithms.hpp"
#include "sortlab/expectation.hpp"
#include "sortlab/sorters.hpp"
#include "sortlab/two_merge.hpp"

namespace sortlab {

struct OracleCaps {
  std::size_t exhaustive_n = 8;
  std::size_t worst_case_n = 10;
  std::size_t pair_i = 4096;
  std::size_t exact_n = std::size_t{1} << 14;
};

/// Mean comparisons over all n! inputs, as an exact fraction.
Expectation exhaustive_average(Algorithm alg, std::size_t n, const OracleCaps& caps = {},
                               CombinationPolicy policy = CombinationPolicy::automatic);

/// Largest comparison count over all n! inputs.
std::uint64_t worst_case(Algorithm alg, std::size_t n, const OracleCaps& caps = {},
                         CombinationPolicy policy = CombinationPolicy::automatic);

/// One merge round over every final rank pair of A < B.
struct RoundExpectation {
  std::size_t i = 0;
  MergeVariant variant = MergeVariant::plain;
  std::uint64_t pairs = 0;              // C(i, 2)
  std::uint64_t total_comparisons = 0;  // summed over all pairs, Step 1 included
  Rational mean;
  long double mean_value = 0;

  // Per block of the pivot schedule: number of pairs whose smaller key stopped
  // there, and the Step-3 comparisons summed over those pairs.
  std::vector<std::uint64_t> block_pairs;
  std::vector<std::uint64_t> block_step3;
  // Stop index of each block: alpha_index of its upper pivot, or one past the
  // last alpha_index for the block above every pivot.
  std::vector<int> block_r;

  std::uint64_t step2_total = 0;
  std::uint64_t step3_total = 0;
  std::uint64_t step4_total = 0;

  /// Pr[the smaller key stops in block b].
  Rational stop_probability(std::size_t b) const;
  /// Distribution over r (index r-1), summing to one.
  std::vector<Rational> stop_distribution() const;
  /// Mean Step-3 cost given a stop in block b.
  long double step3_given_block(std::size_t b) const;
  long double step2_mean() const;
  long double step4_mean() const;
};

RoundExpectation pair_enumeration_expectation(MergeVariant variant, std::size_t i, const OracleCaps& caps = {});

/// Moments of the stop index r under the exact stop distribution.
struct StopMomentsOracle {
  long double mean_r = 0;  // mean Step-2 comparisons
  long double mean_floor_half = 0;
  long double mean_ceil_half = 0;
  long double mean_inv_p = 0;  // E[1/p_r], p_r = p of (sqrt2 - 1) 2^(-r/2) i
  long double mean_inv_p2 = 0;
};

StopMomentsOracle stop_moments(const RoundExpectation& round);

/// Exact mean of the round that grows the sorted prefix from i - 2 to i under
/// `policy`: numerator / denominator. Merge rounds enumerate the smaller key's
/// gap and add the RHBS tail average for the larger one.
struct RoundValue {
  std::uint64_t numerator = 0;
  std::uint64_t denominator = 1;
  Rational exact() const { return Rational(numerator) / denominator; }
  long double value() const { return static_cast<long double>(numerator) / static_cast<long double>(denominator); }
};

RoundValue round_expectation(std::size_t i, InsertionPolicy policy);
/// The merge round alone, whatever the policy window says.
RoundValue merge_round_expectation(std::size_t i, MergeVariant variant);

/// Exact Step-4 mean of the plain merge: the larger key uniform over the gaps
/// at or above the smaller key's gap, smaller-key gap weighted by (i-1-l)/C(i,2).
Rational step4_exact_mean(std::size_t i);

/// Cumulative round means for every even i <= max_n.
class RoundTable {
 public:
  RoundTable(InsertionPolicy policy, std::size_t max_n);

  InsertionPolicy policy() const { return policy_; }
  std::size_t max_n() const { return max_n_; }
  long double round(std::size_t i) const;
  /// Sum of the rounds 2, 4, ..., n (n even).
  long double rounds_through(std::size_t n) const;

 private:
  InsertionPolicy policy_;
  std::size_t max_n_;
  std::vector<long double> rounds_;  // rounds_[i/2]
  std::vector<long double> prefix_;  // prefix_[i/2]
};

/// Exact expected comparisons of a whole sort, summed round by round.
/// merge_insertion (and a merge-insertion prefix of the combination) is
/// available only up to the exhaustive cap.
Expectation exact_sort_expectation(Algorithm alg, std::size_t n, const OracleCaps& caps = {},
                                   CombinationPolicy policy = CombinationPolicy::automatic);

/// Same, as an exact fraction. Intended for small n.
Rational exact_sort_expectation_rational(Algorithm alg, std::size_t n, const OracleCaps& caps = {},
                                         CombinationPolicy policy = CombinationPolicy::automatic);

/// Mean over `trials` seeded random permutations, with the standard error as band.
Expectation monte_carlo(Algorithm alg, std::size_t n, std::size_t trials, std::uint64_t seed,
                        CombinationPolicy policy = CombinationPolicy::automatic);

/// Combination cost with a Monte Carlo merge-insertion part and exact star
/// rounds. Inside the merge-insertion window (auto policy) the whole sort is
/// Monte Carlo. `table` (star policy) may be passed to reuse rounds.
Expectation hybrid_combination_expectation(std::size_t n, std::size_t trials, std::uint64_t seed,
                                           CombinationPolicy policy = CombinationPolicy::automatic,
                                           const RoundTable* table = nullptr);

/// Combination cost with the merge-insertion prefix charged at the
/// Ford-Johnson bound n' lg n' - (3 - lg 3) n' and exact star rounds on top.
/// This is the accounting the combination formula uses; the measured
/// merge-insertion average at n' is lower (see hybrid_combination_expectation).
Expectation bounded_prefix_combination_expectation(std::size_t n, const RoundTable* table = nullptr);

}  // namespace sortlab
