// Closed-form average comparison counts.
//
// Every quantity here is written as ceil(lg i) (or similar) plus an "excess"
// that depends only on p_i = i / 2^ceil(lg i). The excess functions take p
// directly so they can be evaluated on a grid; the i-based wrappers pick p_i.
//
// O(.) terms of the asymptotic formulas are carried in Expectation::error_band
// as their leading magnitude with constant 1; tests fit the real constant.
#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "sortlab/algorithms.hpp"
#include "sortlab/core.hpp"
#include "sortlab/expectation.hpp"
#include "sortlab/merge_insertion.hpp"

namespace sortlab {

namespace constants {
inline constexpr long double kSqrt2 = 1.41421356237309504880168872420969808L;
inline constexpr long double kSqrt3 = 1.73205080756887729352744634150587237L;
inline constexpr long double kSqrt6 = 2.44948974278317809819728407470589139L;
/// Branch points of the plain two-element merge: (1 + sqrt 2)/4, (2 + sqrt 2)/4.
inline constexpr long double kMergeBranchLow = (1.0L + kSqrt2) / 4.0L;
inline constexpr long double kMergeBranchHigh = (2.0L + kSqrt2) / 4.0L;
inline constexpr long double kStarWindowLo = 0.75L - kSqrt6 / 12.0L;
inline constexpr long double kStarWindowHi = 0.75L + kSqrt3 / 12.0L;
inline constexpr long double kOneTwoWindowLo = 0.5511L;
inline constexpr long double kOneTwoWindowHi = 0.888L;
/// 3 - lg 3, the merge-insertion linear coefficient at n = ceil(2^k/3).
inline constexpr long double kMergeInsertionBest = 1.41503749927884381855L;
/// lg e, the information-theoretic linear coefficient.
inline constexpr long double kLog2E = 1.44269504088896340736L;
}  // namespace constants

/// 1 - 2^ceil(lg i) / i: the binary-insertion excess over ceil(lg i).
template <class Scalar = double>
Scalar binary_excess(std::uint64_t i) {
  if (i == 0) throw DomainError("binary_excess: i must be >= 1");
  return Scalar(1) - Scalar(pow2(ceil_lg(i))) / Scalar(i);
}

/// n lg n + (1 - lg p_n - (1 + ln 4p_n) / p_n) n.
double binary_total(std::uint64_t n);
double binary_total_coefficient(double p);

/// Mean Step-3 cost of the plain merge when Step 2 stopped at r.
Expectation step3_block_expectation(std::uint64_t i, int r);

/// Expected Step-3 excess over ceil(lg i), averaged over r.
double step3_excess(double p);
double step3_excess(std::uint64_t i);

/// Steps 3 and 4 excess of the plain merge over ceil(lg i) + ceil(lg(i-1)),
/// with Step 4 expressed through p_{i-1}. Steps 1 and 2 are not included.
double steps34_excess(std::uint64_t i);
/// Same with p_{i-1} replaced by p.
double steps34_excess(double p);

/// Mean Step-4 cost: ceil(lg(i-1)) + 1 - 2/p_i + 1/(3 p_i^2).
Expectation step4_expected(std::uint64_t i);

/// Per-insertion excess of the plain merge (all four steps, halved).
double two_merge_step_excess(double p);
/// Per-insertion excess of the star merge.
double two_merge_star_step_excess(double p);

/// Per-insertion excess of (1,2)Insertion: merge inside its window, binary outside.
double one_two_step_excess(double p);
/// Per-insertion excess of (1,2)Insertion*.
double one_two_star_step_excess(double p);

struct StarStepFormula {
  double per_insertion = 0;   // ceil(lg i) + binary excess + star correction
  double steps23_upper = 0;   // Steps 2-3 for p_i in (3/4, 1]
  double steps23_lower = 0;   // Steps 2-3 for p_i in (1/2, 3/4]
  double steps23 = 0;         // the branch matching p_i
  double pair_total = 0;      // ceil(lg i) + ceil(lg(i-1)) + 2 * star excess
  long double error_band = 0;
};

StarStepFormula per_step_two_merge_star(std::uint64_t i);

/// Moments of the plain merge's Step-2 stop index r.
struct StopMoments {
  double mean_r = 0;
  double mean_floor_half = 0;
  double mean_ceil_half = 0;
  double mean_inv_p = 0;
  double mean_inv_p2 = 0;
  long double error_band = 0;
};

StopMoments stop_moments_formula(std::uint64_t i);

/// 2^ceil(lg n) (integral over (1/2,1] + integral over (1/2, p_n]) of f,
/// with panels split at the given breakpoints.
double trapezoid_sum(const std::function<double(double)>& f, std::span<const double> breakpoints,
                     std::uint64_t n);

/// Breakpoints of the piecewise excess functions, for quadrature panels.
std::vector<double> one_two_breakpoints();
std::vector<double> one_two_star_breakpoints();

/// Average-comparison formula for a whole sort of even length n.
///   binary: the binary-insertion total above.
///   one_two / one_two_star: per-round sum of ceil(lg i) + ceil(lg(i-1)) + 2 excess(p_i).
///   combination: n' lg n' - (3 - lg 3) n' for the merge-insertion prefix plus star rounds.
/// merge_insertion has no closed form here.
long double total_formula(Algorithm alg, std::uint64_t n);
double c_constant(Algorithm alg, std::uint64_t n);

/// Cumulative per-round formula totals for every even n <= max_n, so constants
/// over a range of n cost O(1) each.
class FormulaCurve {
 public:
  FormulaCurve(Algorithm alg, std::uint64_t max_n);

  long double total(std::uint64_t n) const;
  double constant(std::uint64_t n) const;
  Algorithm algorithm() const { return alg_; }

 private:
  long double star_rounds(std::uint64_t from_exclusive, std::uint64_t to) const;

  Algorithm alg_;
  std::uint64_t max_n_;
  std::vector<long double> prefix_;  // prefix_[n/2] = total of rounds 2..n
};

/// Combination cost written through the integral of the star excess (p_n >= 2/3).
double combination_integral_form(std::uint64_t n);

/// ceil(lg n!), exact.
std::uint64_t info_lower_bound(std::uint64_t n);
/// lg n!.
double lg_factorial(std::uint64_t n);

}  // namespace sortlab
