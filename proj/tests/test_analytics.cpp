#include <doctest.h>

#include <cmath>
#include <iostream>

#include <boost/math/tools/roots.hpp>

#include "sortlab/analytics.hpp"
#include "sortlab/oracles.hpp"
#include "sortlab/rhbs.hpp"

using namespace sortlab;

namespace {

double binary_curve(double p) { return 1.0 - 1.0 / p; }

double root_between(double (*f)(double), double lo, double hi) {
  auto g = [f](double p) { return f(p) - binary_curve(p); };
  boost::math::tools::eps_tolerance<double> tol(50);
  std::uintmax_t iters = 200;
  const auto [a, b] = boost::math::tools::bisect(g, lo, hi, tol, iters);
  return (a + b) / 2;
}

double lg(double x) { return std::log2(x); }

// Max of c_constant over even n = p 2^20 on a grid of 1000 p values.
struct GridMax {
  double value = -10;
  double p = 0;
};

GridMax grid_max(const FormulaCurve& curve, bool skip_merge_insertion_window = false) {
  GridMax best;
  const std::size_t top = std::size_t{1} << 20;
  for (int k = 0; k < 1000; ++k) {
    std::size_t n = top + (top * k) / 1000 + 2;
    n -= n % 2;
    const double p = static_cast<double>(n) / (2.0 * top);
    if (skip_merge_insertion_window && p >= 0.638 && p <= 2.0 / 3.0) continue;
    const double c = curve.constant(n);
    if (c > best.value) best = {c, p};
  }
  return best;
}

}  // namespace

TEST_CASE("binary excess and total") {
  CHECK(binary_excess<Rational>(8) == 0);
  CHECK(binary_excess<Rational>(6) == Rational(-1, 3));
  CHECK(binary_excess<Rational>(5) == Rational(-3, 5));
  CHECK(binary_total_coefficient(1.0) == doctest::Approx(-1.38629436111989));
  CHECK(binary_total_coefficient(1.0) < -1.386);

  for (std::uint64_t n : {std::uint64_t{4096}, std::uint64_t{3072}}) {
    long double direct = 0;
    for (std::uint64_t i = 1; i <= n; ++i) direct += ceil_lg(i) + binary_excess<long double>(i);
    const double diff = std::abs(binary_total(n) - static_cast<double>(direct));
    MESSAGE("binary total vs direct sum at n = " << n << ": " << diff);
    CHECK(diff <= 2.0 * lg(static_cast<double>(n)));
  }
}

TEST_CASE("Step-3 block expectation") {
  const Expectation a = step3_block_expectation(1024, 2);
  CHECK(static_cast<double>(a.value) == doctest::Approx(7.76471862576143).epsilon(1e-12));
  CHECK(a.error_band.has_value());
  CHECK_THROWS_AS(step3_block_expectation(1024, 0), DomainError);
  CHECK_THROWS_AS(step3_block_expectation(1023, 1), DomainError);

  // Conditional Step-3 mean given the stop index, against the oracle. The
  // deviation follows the fractional part of the block width, so fit C in
  // |dev| <= C 2^(r/2) / i rather than expecting monotone decay.
  double fitted = 0;
  for (std::size_t i : {256u, 1024u, 4096u}) {
    const RoundExpectation round = pair_enumeration_expectation(MergeVariant::plain, i);
    for (int r = 1; r <= 4; ++r) {
      REQUIRE(round.block_r[r - 1] == r);
      const Expectation f = step3_block_expectation(i, r);
      const double dev = std::abs(static_cast<double>(round.step3_given_block(r - 1) - f.value));
      fitted = std::max(fitted, dev / static_cast<double>(*f.error_band));
    }
  }
  MESSAGE("fitted C for the Step-3 block formula: " << fitted);
  CHECK(fitted < 4.0);
}

TEST_CASE("T and U") {
  CHECK(step3_excess(1.0) == doctest::Approx(-2.24018758282571).epsilon(1e-13));
  CHECK(step3_excess(0.7) == doctest::Approx(-2.75205798667685).epsilon(1e-13));
  CHECK(step3_excess(std::uint64_t{4096}) == step3_excess(1.0));
  CHECK_THROWS_AS(step3_excess(std::uint64_t{7}), DomainError);

  for (int k = 1; k <= 10000; ++k) {
    const double p = 0.5 + 0.5 * k / 10000.0;
    REQUIRE(std::abs(steps34_excess(p) / 2 + 1.5 - two_merge_step_excess(p)) <= 1e-12);
  }
  // With p_{i-1} in U the identity holds up to O(1/i).
  CHECK(std::abs(steps34_excess(std::uint64_t{3000}) / 2 + 1.5 - two_merge_step_excess(p_of(std::uint64_t{3000}))) < 1e-3);
}

TEST_CASE("Step-4 mean") {
  CHECK(static_cast<double>(step4_expected(8).value) == doctest::Approx(7.0 / 3.0));
  CHECK(static_cast<double>(step4_exact_mean(8)) == doctest::Approx(2.25));
  const double d1024 = std::abs(static_cast<double>(step4_exact_mean(1024)) - static_cast<double>(step4_expected(1024).value));
  const double d4096 = std::abs(static_cast<double>(step4_exact_mean(4096)) - static_cast<double>(step4_expected(4096).value));
  CHECK(static_cast<double>(step4_exact_mean(1024)) == doctest::Approx(9.332682291667).epsilon(1e-12));
  CHECK(static_cast<double>(step4_exact_mean(4096)) == doctest::Approx(11.333170572917).epsilon(1e-12));
  CHECK(d1024 <= 0.01);
  CHECK(d4096 <= 0.003);
}

TEST_CASE("D and D*") {
  CHECK(one_two_step_excess(1.0) == 0.0);
  CHECK(one_two_star_step_excess(1.0) == 0.0);
  CHECK(one_two_step_excess(0.75) == doctest::Approx(-0.364919027495767).epsilon(1e-13));
  CHECK(std::abs(one_two_step_excess(0.5511) - binary_curve(0.5511)) < 2e-4);
  CHECK_THROWS_AS(one_two_step_excess(0.5), DomainError);
  CHECK_THROWS_AS(one_two_star_step_excess(1.5), DomainError);

  SUBCASE("crossovers") {
    CHECK(root_between(two_merge_step_excess, 0.51, 0.6) == doctest::Approx(0.551110167791287).epsilon(1e-10));
    CHECK(root_between(two_merge_step_excess, 0.8, 0.95) == doctest::Approx(0.888034894420952).epsilon(1e-10));
    CHECK(root_between(two_merge_star_step_excess, 0.51, 0.6) ==
          doctest::Approx(static_cast<double>(constants::kStarWindowLo)).epsilon(1e-10));
    CHECK(root_between(two_merge_star_step_excess, 0.8, 0.95) ==
          doctest::Approx(static_cast<double>(constants::kStarWindowHi)).epsilon(1e-10));
  }

  SUBCASE("sign checks on a grid") {
    for (int k = 1; k <= 10000; ++k) {
      const double p = 0.5 + 0.5 * k / 10000.0;
      REQUIRE((two_merge_step_excess(p) < binary_curve(p)) == (p > 0.551110167791287 && p < 0.888034894420952));
      const bool star_inside = p > static_cast<double>(constants::kStarWindowLo) &&
                               p < static_cast<double>(constants::kStarWindowHi);
      REQUIRE((two_merge_star_step_excess(p) < binary_curve(p)) == star_inside);
    }
  }

  SUBCASE("branch continuity audit") {
    auto jump = [](double (*f)(double), double x) { return f(std::nextafter(x, 2.0)) - f(x); };
    // Windowed D switches branch at the window ends; the inner branch points are continuous.
    CHECK(one_two_step_excess(0.5511) - binary_curve(0.5511) == doctest::Approx(7.04796676e-6).epsilon(1e-6));
    CHECK(two_merge_step_excess(0.888) - binary_curve(0.888) == doctest::Approx(-1.42524144e-5).epsilon(1e-6));
    CHECK(std::abs(jump(one_two_step_excess, static_cast<double>(constants::kMergeBranchLow))) < 1e-12);
    CHECK(std::abs(jump(one_two_step_excess, static_cast<double>(constants::kMergeBranchHigh))) < 1e-12);
    CHECK(std::abs(jump(one_two_star_step_excess, static_cast<double>(constants::kStarWindowLo))) < 1e-12);
    CHECK(std::abs(jump(one_two_star_step_excess, 0.75)) < 1e-12);
    CHECK(std::abs(jump(one_two_star_step_excess, static_cast<double>(constants::kStarWindowHi))) < 1e-12);
  }
}

TEST_CASE("per-step star formula") {
  for (std::size_t i : {1024u, 4096u}) {
    const StarStepFormula f = per_step_two_merge_star(i);
    CHECK(f.per_insertion == doctest::Approx(ceil_lg(i) + 1.0 / 24.0));
    CHECK(f.steps23 == f.steps23_upper);
    CHECK(f.steps23_upper == doctest::Approx(ceil_lg(i) + 2 - 3.0 + 0.75));
    CHECK(f.steps23_lower == doctest::Approx(ceil_lg(i) + 1 - 1.5 + 3.0 / 16.0));
  }
  CHECK(per_step_two_merge_star(1536).steps23 == per_step_two_merge_star(1536).steps23_lower);
  for (std::size_t i : {2048u, 1536u}) {
    const RoundExpectation round = pair_enumeration_expectation(MergeVariant::star, i);
    const double dev = std::abs(static_cast<double>(round.mean_value / 2) - per_step_two_merge_star(i).per_insertion);
    MESSAGE("star per-insertion deviation at i = " << i << ": " << dev);
    CHECK(dev <= 0.01);
  }
}

TEST_CASE("stop-index moments") {
  const StopMoments f = stop_moments_formula(4096);
  CHECK(f.mean_floor_half + f.mean_ceil_half == doctest::Approx(f.mean_r));
  CHECK(f.mean_inv_p == doctest::Approx((3 * std::sqrt(2.0) + 5) / 6));
  CHECK(f.mean_inv_p2 == doctest::Approx(5 * (3 + 2 * std::sqrt(2.0)) / 12));
  const StopMoments g = stop_moments_formula(2900);  // p ~ 0.708, middle branch
  CHECK(g.mean_inv_p == doctest::Approx((3 + 2 * std::sqrt(2.0)) / (6 * p_of(std::uint64_t{2900}))));

  double dev[2] = {0, 0};
  int slot = 0;
  for (std::size_t i : {1024u, 4096u}) {
    const StopMomentsOracle o = stop_moments(pair_enumeration_expectation(MergeVariant::plain, i));
    const StopMoments e = stop_moments_formula(i);
    const double d[] = {std::abs(static_cast<double>(o.mean_r) - e.mean_r),
                        std::abs(static_cast<double>(o.mean_floor_half) - e.mean_floor_half),
                        std::abs(static_cast<double>(o.mean_ceil_half) - e.mean_ceil_half),
                        std::abs(static_cast<double>(o.mean_inv_p) - e.mean_inv_p),
                        std::abs(static_cast<double>(o.mean_inv_p2) - e.mean_inv_p2)};
    for (double x : d) dev[slot] = std::max(dev[slot], x);
    MESSAGE("moment deviations at i = " << i << ": " << d[0] << ' ' << d[1] << ' ' << d[2] << ' ' << d[3] << ' ' << d[4]);
    if (i == 4096) {
      for (double x : d) CHECK(x <= 0.01);
    }
    ++slot;
  }
  // Proportional to 1/i within a factor of two: the ratio for a 4x step lies in [2, 8].
  CHECK(dev[0] / dev[1] >= 2.0);
  CHECK(dev[0] / dev[1] <= 8.0);
}

TEST_CASE("trapezoid sums") {
  auto one = [](double) { return 1.0; };
  const std::vector<double> none;
  CHECK(trapezoid_sum(one, none, 1024) == doctest::Approx(1024.0));

  auto compare = [](std::function<double(double)> f, const std::vector<double>& cuts, std::uint64_t n) {
    double direct = 0;
    for (std::uint64_t i = 1; i <= n; ++i) direct += f(p_of(i));
    const double diff = std::abs(trapezoid_sum(f, cuts, n) - direct);
    MESSAGE("trapezoid vs direct at n = " << n << ": " << diff);
    return diff;
  };
  CHECK(compare([](double p) { return one_two_step_excess(p); }, one_two_breakpoints(), 3 * 1024) <= 5 * lg(3 * 1024));
  CHECK(compare([](double p) { return one_two_star_step_excess(p); }, one_two_star_breakpoints(), 4096) <=
        5 * lg(4096));
}

TEST_CASE("theorem constants") {
  const FormulaCurve one_two(Algorithm::one_two, std::size_t{1} << 21);
  const FormulaCurve star(Algorithm::one_two_star, std::size_t{1} << 21);
  const FormulaCurve comb(Algorithm::combination, std::size_t{1} << 21);

  const GridMax a = grid_max(one_two);
  const GridMax b = grid_max(star);
  const GridMax c = grid_max(comb, true);
  MESSAGE("max constants: " << a.value << " @" << a.p << ", " << b.value << " @" << b.p << ", " << c.value << " @" << c.p);
  CHECK(std::abs(a.value + 1.40118) <= 0.001);
  CHECK(std::abs(b.value + 1.4034) <= 0.001);
  CHECK(std::abs(c.value + 1.41064) <= 0.001);

  CHECK(one_two.total(4096) == doctest::Approx(static_cast<double>(total_formula(Algorithm::one_two, 4096))));
  CHECK(comb.constant(3000) == doctest::Approx(c_constant(Algorithm::combination, 3000)));
  CHECK_THROWS_AS(total_formula(Algorithm::merge_insertion, 100), DomainError);
  CHECK_THROWS_AS(total_formula(Algorithm::one_two, 101), DomainError);

  SUBCASE("curve ordering") {
    const std::size_t top = std::size_t{1} << 20;
    for (int k = 0; k < 1000; ++k) {
      std::size_t n = top + (top * k) / 1000 + 2;
      n -= n % 2;
      REQUIRE(star.constant(n) <= one_two.constant(n) + 1e-3);
      REQUIRE(comb.constant(n) <= star.constant(n) + 1e-3);
    }
  }

  SUBCASE("integral form of the combination") {
    for (std::size_t n : {std::size_t{3} << 18, std::size_t{7} << 17, std::size_t{1} << 20}) {
      CHECK(std::abs(combination_integral_form(n) - static_cast<double>(comb.total(n))) / n < 1e-3);
    }
    CHECK_THROWS_AS(combination_integral_form(1300u << 10), DomainError);
  }
}

TEST_CASE("information bound") {
  CHECK(info_lower_bound(1) == 0);
  CHECK(info_lower_bound(4) == 5);
  CHECK(info_lower_bound(5) == 7);
  CHECK(info_lower_bound(16) == 45);
  CHECK(lg_factorial(4) == doctest::Approx(std::log2(24.0)));
  // ceil(lg n!) against the real-valued sum where the gap is comfortable.
  for (std::uint64_t n = 2; n <= 300; ++n) {
    const double lgf = lg_factorial(n);
    if (std::abs(lgf - std::round(lgf)) > 1e-6) REQUIRE(info_lower_bound(n) == static_cast<std::uint64_t>(std::ceil(lgf)));
  }
}
