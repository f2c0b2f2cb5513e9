#include "sortlab/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numeric>
#include <string>

#include "sortlab/analytics.hpp"
#include "sortlab/combination.hpp"
#include "sortlab/merge_insertion.hpp"
#include "sortlab/rhbs.hpp"

namespace sortlab {

namespace {

void require_cap(std::size_t value, std::size_t cap, const char* who) {
  if (value > cap) {
    throw CapExceededError(std::string(who) + ": " + std::to_string(value) + " exceeds the cap of " +
                           std::to_string(cap));
  }
}

void require_supported(Algorithm alg, std::size_t n) {
  if (!supports_length(alg, n)) {
    throw DomainError(std::string(to_string(alg)) + " needs an even length, got " + std::to_string(n));
  }
}

// Calls visit(count) for the comparison count of every permutation of 1..n.
template <class Visit>
void for_each_permutation_count(Algorithm alg, std::size_t n, CombinationPolicy policy, Visit&& visit) {
  KeySeq perm = identity_keys(n);
  do {
    Tally tally;
    const KeySeq out = run_sort(alg, perm, tally, policy);
    if (!is_sorted_permutation(perm, out)) throw std::logic_error("oracle: sort produced a wrong result");
    visit(tally.count());
  } while (std::next_permutation(perm.begin(), perm.end(),
                                 [](Key a, Key b) { return a.value < b.value; }));
}

// T = (3, 6, ..., 3m): a key 3l+1 lands in gap l, a key 3g+2 in gap g, and the
// two fit together in the same gap.
KeySeq synthetic_sequence(std::size_t m) {
  KeySeq t(m);
  for (std::size_t j = 0; j < m; ++j) t[j] = Key{static_cast<std::uint32_t>(3 * (j + 1))};
  return t;
}

Key smaller_key_at(std::size_t gap) { return Key{static_cast<std::uint32_t>(3 * gap + 1)}; }
Key larger_key_at(std::size_t gap) { return Key{static_cast<std::uint32_t>(3 * gap + 2)}; }

std::uint64_t choose2(std::uint64_t i) { return i * (i - 1) / 2; }

RoundValue rhbs_round(std::size_t i) {
  // Two RHBS insertions into lengths i - 2 and i - 1.
  const std::uint64_t a = i - 1;
  const std::uint64_t b = i;
  return {b * rhbs_cost_sum(a) + a * rhbs_cost_sum(b), a * b};
}

RoundValue merge_round(std::size_t i, MergeVariant variant) {
  const std::size_t m = i - 2;
  const PivotSchedule schedule = pivot_schedule(i, variant);
  const KeySeq t = synthetic_sequence(m);
  std::uint64_t numerator = 0;
  for (std::size_t gap = 0; gap <= m; ++gap) {
    Tally tally;
    const SmallerPlacement placed = locate_smaller(smaller_key_at(gap), t, schedule, tally);
    if (placed.gap != gap) throw std::logic_error("round oracle: smaller key landed in the wrong gap");
    const std::uint64_t above = i - 1 - gap;  // gaps open to the larger key
    numerator += above * (1 + tally.count()) + rhbs_cost_sum(above);
  }
  return {numerator, choose2(i)};
}

struct Accumulator {
  long double sum = 0;
  long double compensation = 0;
  void add(long double x) {
    const long double y = x - compensation;
    const long double t = sum + y;
    compensation = (t - sum) - y;
    sum = t;
  }
};

template <class Scalar>
Scalar as_scalar(const RoundValue& v) {
  if constexpr (std::is_same_v<Scalar, Rational>) {
    return v.exact();
  } else {
    return v.value();
  }
}

template <class Scalar>
Scalar rhbs_mean(std::uint64_t gaps) {
  if constexpr (std::is_same_v<Scalar, Rational>) {
    return Rational(rhbs_cost_sum(gaps)) / gaps;
  } else {
    return rhbs_average<long double>(gaps);
  }
}

template <class Scalar>
Scalar insertion_rounds(InsertionPolicy policy, std::size_t from_exclusive, std::size_t to) {
  Scalar total = 0;
  for (std::size_t i = from_exclusive + 2; i <= to; i += 2) total += as_scalar<Scalar>(round_expectation(i, policy));
  return total;
}

template <class Scalar>
Scalar exhaustive_mean(Algorithm alg, std::size_t n, const OracleCaps& caps, CombinationPolicy policy) {
  const Expectation e = exhaustive_average(alg, n, caps, policy);
  if constexpr (std::is_same_v<Scalar, Rational>) {
    return *e.exact;
  } else {
    return e.value;
  }
}

template <class Scalar>
Scalar exact_total(Algorithm alg, std::size_t n, const OracleCaps& caps, CombinationPolicy policy) {
  require_cap(n, caps.exact_n, "exact_sort_expectation");
  require_supported(alg, n);
  if (n == 0) return Scalar(0);
  switch (alg) {
    case Algorithm::binary: {
      Scalar total = 0;
      for (std::size_t k = 1; k <= n; ++k) total += rhbs_mean<Scalar>(k);
      return total;
    }
    case Algorithm::one_two:
    case Algorithm::one_two_star: {
      const InsertionPolicy ip = alg == Algorithm::one_two ? InsertionPolicy::one_two : InsertionPolicy::one_two_star;
      Scalar total = insertion_rounds<Scalar>(ip, 0, n - n % 2);
      if (n % 2 != 0) total += rhbs_mean<Scalar>(n);
      return total;
    }
    case Algorithm::merge_insertion: return exhaustive_mean<Scalar>(alg, n, caps, policy);
    case Algorithm::combination: {
      if (n < 4 || !uses_combination_route(n, policy)) {
        return exhaustive_mean<Scalar>(Algorithm::merge_insertion, n, caps, policy);
      }
      const PrefixChoice choice = choose_n_prime(n);
      return exhaustive_mean<Scalar>(Algorithm::merge_insertion, choice.n_prime, caps, policy) +
             insertion_rounds<Scalar>(InsertionPolicy::one_two_star, choice.n_prime, n);
    }
  }
  throw DomainError("exact_sort_expectation: unknown algorithm");
}

}  // namespace

Expectation exhaustive_average(Algorithm alg, std::size_t n, const OracleCaps& caps, CombinationPolicy policy) {
  require_cap(n, caps.exhaustive_n, "exhaustive_average");
  require_supported(alg, n);
  std::uint64_t total = 0;
  std::uint64_t count = 0;
  for_each_permutation_count(alg, n, policy, [&](std::uint64_t c) {
    total += c;
    ++count;
  });
  Expectation e;
  e.source = Source::exact;
  e.exact = Rational(total) / count;
  e.value = static_cast<long double>(total) / static_cast<long double>(count);
  return e;
}

std::uint64_t worst_case(Algorithm alg, std::size_t n, const OracleCaps& caps, CombinationPolicy policy) {
  require_cap(n, caps.worst_case_n, "worst_case");
  require_supported(alg, n);
  std::uint64_t worst = 0;
  for_each_permutation_count(alg, n, policy, [&](std::uint64_t c) { worst = std::max(worst, c); });
  return worst;
}

Rational RoundExpectation::stop_probability(std::size_t b) const { return Rational(block_pairs.at(b)) / pairs; }

std::vector<Rational> RoundExpectation::stop_distribution() const {
  std::vector<Rational> dist(static_cast<std::size_t>(*std::max_element(block_r.begin(), block_r.end())));
  for (std::size_t b = 0; b < block_pairs.size(); ++b) dist[static_cast<std::size_t>(block_r[b] - 1)] += stop_probability(b);
  return dist;
}

long double RoundExpectation::step3_given_block(std::size_t b) const {
  if (block_pairs.at(b) == 0) throw DomainError("step3_given_block: block is never reached");
  return static_cast<long double>(block_step3[b]) / static_cast<long double>(block_pairs[b]);
}

long double RoundExpectation::step2_mean() const {
  return static_cast<long double>(step2_total) / static_cast<long double>(pairs);
}

long double RoundExpectation::step4_mean() const {
  return static_cast<long double>(step4_total) / static_cast<long double>(pairs);
}

RoundExpectation pair_enumeration_expectation(MergeVariant variant, std::size_t i, const OracleCaps& caps) {
  require_cap(i, caps.pair_i, "pair_enumeration_expectation");
  const PivotSchedule schedule = pivot_schedule(i, variant);
  const std::size_t m = i - 2;
  const KeySeq t = synthetic_sequence(m);

  RoundExpectation round;
  round.i = i;
  round.variant = variant;
  round.pairs = choose2(i);
  round.block_pairs.assign(schedule.block_count(), 0);
  round.block_step3.assign(schedule.block_count(), 0);
  round.block_r.assign(schedule.alpha_index.begin(), schedule.alpha_index.end());
  round.block_r.push_back(schedule.alpha_index.empty() ? 1 : schedule.alpha_index.back() + 1);

  std::mutex merge_lock;
  parallel_chunks(m + 1, [&](std::size_t begin, std::size_t end) {
    RoundExpectation local;
    local.block_pairs.assign(schedule.block_count(), 0);
    local.block_step3.assign(schedule.block_count(), 0);
    for (std::size_t low = begin; low < end; ++low) {
      // Steps 2 and 3 depend on the smaller key only; measure them once per gap.
      Tally smaller_tally;
      const SmallerPlacement alone = locate_smaller(smaller_key_at(low), t, schedule, smaller_tally);
      const std::uint64_t steps23 = smaller_tally.count();
      for (std::size_t high = low; high <= m; ++high) {
        Tally tally;
        const PairPlacement placed = locate_pair(larger_key_at(high), smaller_key_at(low), t, schedule, tally);
        if (placed.smaller_placement.gap != low || placed.larger_gap != high) {
          throw std::logic_error("pair oracle: keys landed in the wrong gaps");
        }
        const std::uint64_t total = tally.count();
        local.total_comparisons += total;
        local.block_pairs[alone.block] += 1;
        local.step2_total += alone.step2_comparisons;
        local.block_step3[alone.block] += steps23 - alone.step2_comparisons;
        local.step3_total += steps23 - alone.step2_comparisons;
        local.step4_total += total - 1 - steps23;
      }
    }
    const std::lock_guard<std::mutex> guard(merge_lock);
    round.total_comparisons += local.total_comparisons;
    round.step2_total += local.step2_total;
    round.step3_total += local.step3_total;
    round.step4_total += local.step4_total;
    for (std::size_t b = 0; b < schedule.block_count(); ++b) {
      round.block_pairs[b] += local.block_pairs[b];
      round.block_step3[b] += local.block_step3[b];
    }
  });

  round.mean = Rational(round.total_comparisons) / round.pairs;
  round.mean_value = static_cast<long double>(round.total_comparisons) / static_cast<long double>(round.pairs);
  return round;
}

StopMomentsOracle stop_moments(const RoundExpectation& round) {
  StopMomentsOracle m;
  const long double pairs = static_cast<long double>(round.pairs);
  const long double w0 = (std::sqrt(2.0L) - 1.0L) * static_cast<long double>(round.i);
  for (std::size_t b = 0; b < round.block_pairs.size(); ++b) {
    const long double pr = static_cast<long double>(round.block_pairs[b]) / pairs;
    const int r = round.block_r[b];
    // p_x is invariant under scaling by powers of two, so shift w_r above 1.
    const double w = static_cast<double>(w0 * std::exp2(-r / 2.0L));
    const long double p = p_of(std::ldexp(w, 64));
    m.mean_floor_half += pr * (r / 2);
    m.mean_ceil_half += pr * ((r + 1) / 2);
    m.mean_inv_p += pr / p;
    m.mean_inv_p2 += pr / (p * p);
  }
  m.mean_r = round.step2_mean();
  return m;
}

RoundValue round_expectation(std::size_t i, InsertionPolicy policy) {
  if (i < 2 || i % 2 != 0) throw DomainError("round_expectation: i must be even and >= 2");
  if (i == 2 || !use_two_merge(i, policy)) return rhbs_round(i);
  return merge_round(i, merge_variant(policy));
}

RoundValue merge_round_expectation(std::size_t i, MergeVariant variant) {
  if (i < 4 || i % 2 != 0) throw DomainError("merge_round_expectation: i must be even and >= 4");
  return merge_round(i, variant);
}

Rational step4_exact_mean(std::size_t i) {
  if (i < 4 || i % 2 != 0) throw DomainError("step4_exact_mean: i must be even and >= 4");
  std::uint64_t numerator = 0;
  for (std::size_t gap = 0; gap <= i - 2; ++gap) numerator += rhbs_cost_sum(i - 1 - gap);
  return Rational(numerator) / choose2(i);
}

RoundTable::RoundTable(InsertionPolicy policy, std::size_t max_n) : policy_(policy), max_n_(max_n) {
  const std::size_t slots = max_n / 2 + 1;
  rounds_.assign(slots, 0.0L);
  prefix_.assign(slots, 0.0L);
  parallel_chunks(slots - 1, [&](std::size_t begin, std::size_t end) {
    for (std::size_t j = begin + 1; j <= end; ++j) rounds_[j] = round_expectation(2 * j, policy).value();
  });
  Accumulator acc;
  for (std::size_t j = 1; j < slots; ++j) {
    acc.add(rounds_[j]);
    prefix_[j] = acc.sum;
  }
}

long double RoundTable::round(std::size_t i) const {
  if (i < 2 || i % 2 != 0 || i > max_n_) throw DomainError("RoundTable: i outside the table");
  return rounds_[i / 2];
}

long double RoundTable::rounds_through(std::size_t n) const {
  if (n % 2 != 0 || n > max_n_) throw DomainError("RoundTable: n outside the table");
  return prefix_[n / 2];
}

Expectation exact_sort_expectation(Algorithm alg, std::size_t n, const OracleCaps& caps, CombinationPolicy policy) {
  Expectation e;
  e.source = Source::exact;
  e.value = exact_total<long double>(alg, n, caps, policy);
  return e;
}

Rational exact_sort_expectation_rational(Algorithm alg, std::size_t n, const OracleCaps& caps,
                                         CombinationPolicy policy) {
  return exact_total<Rational>(alg, n, caps, policy);
}

Expectation monte_carlo(Algorithm alg, std::size_t n, std::size_t trials, std::uint64_t seed,
                        CombinationPolicy policy) {
  if (trials < 1) throw DomainError("monte_carlo: trials must be >= 1");
  if (n < 1) throw DomainError("monte_carlo: n must be >= 1");
  require_supported(alg, n);
  // Integer sums keep the result independent of how trials are split across threads.
  std::uint64_t sum = 0;
  unsigned __int128 sum_sq = 0;
  std::mutex merge_lock;
  parallel_chunks(trials, [&](std::size_t begin, std::size_t end) {
    std::uint64_t local = 0;
    unsigned __int128 local_sq = 0;
    for (std::size_t trial = begin; trial < end; ++trial) {
      const KeySeq input = random_permutation(n, derive_seed(seed, trial));
      Tally tally;
      const KeySeq out = run_sort(alg, input, tally, policy);
      if (!is_sorted_permutation(input, out)) throw std::logic_error("monte_carlo: sort produced a wrong result");
      local += tally.count();
      local_sq += static_cast<unsigned __int128>(tally.count()) * tally.count();
    }
    const std::lock_guard<std::mutex> guard(merge_lock);
    sum += local;
    sum_sq += local_sq;
  });
  const long double t = static_cast<long double>(trials);
  const long double mean = static_cast<long double>(sum) / t;
  Expectation e;
  e.source = Source::monte_carlo;
  e.value = mean;
  if (trials > 1) {
    const long double var = (static_cast<long double>(sum_sq) - t * mean * mean) / (t - 1);
    e.error_band = std::sqrt(std::max(0.0L, var) / t);
  } else {
    e.error_band = 0.0L;
  }
  return e;
}

Expectation hybrid_combination_expectation(std::size_t n, std::size_t trials, std::uint64_t seed,
                                           CombinationPolicy policy, const RoundTable* table) {
  if (n % 2 != 0) throw DomainError("hybrid_combination_expectation: n must be even");
  if (n < 4 || !uses_combination_route(n, policy)) return monte_carlo(Algorithm::merge_insertion, n, trials, seed);
  if (table && (table->policy() != InsertionPolicy::one_two_star || table->max_n() < n)) {
    throw DomainError("hybrid_combination_expectation: table does not cover the star rounds up to n");
  }
  const PrefixChoice choice = choose_n_prime(n);
  Expectation e = monte_carlo(Algorithm::merge_insertion, choice.n_prime, trials, seed);
  e.value += table ? table->rounds_through(n) - table->rounds_through(choice.n_prime)
                   : insertion_rounds<long double>(InsertionPolicy::one_two_star, choice.n_prime, n);
  return e;
}

Expectation bounded_prefix_combination_expectation(std::size_t n, const RoundTable* table) {
  if (n < 4 || n % 2 != 0) throw DomainError("bounded_prefix_combination_expectation: n must be even and >= 4");
  if (!uses_combination_route(n, CombinationPolicy::automatic)) {
    throw DomainError("bounded_prefix_combination_expectation: n lies in the merge-insertion window");
  }
  if (table && (table->policy() != InsertionPolicy::one_two_star || table->max_n() < n)) {
    throw DomainError("bounded_prefix_combination_expectation: table does not cover the star rounds up to n");
  }
  const std::size_t prefix = choose_n_prime(n).n_prime;
  const long double x = static_cast<long double>(prefix);
  Expectation e;
  e.source = Source::exact;
  e.value = x * std::log2(x) - constants::kMergeInsertionBest * x;
  e.value += table ? table->rounds_through(n) - table->rounds_through(prefix)
                   : insertion_rounds<long double>(InsertionPolicy::one_two_star, prefix, n);
  return e;
}

}  // namespace sortlab
