#include "sortlab/analytics.hpp"

#include <cmath>
#include <string>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/multiprecision/cpp_int.hpp>

#include "sortlab/combination.hpp"
#include "sortlab/sorters.hpp"

namespace sortlab {

namespace {

constexpr double kSqrt2 = static_cast<double>(constants::kSqrt2);

void require_p(double p, const char* who) {
  if (!(p > 0.5 && p <= 1.0)) throw DomainError(std::string(who) + ": p must lie in (1/2, 1]");
}

void require_round(std::uint64_t i, const char* who) {
  if (i < 4 || i % 2 != 0) throw DomainError(std::string(who) + ": i must be even and >= 4");
}

double p_of_index(std::uint64_t i) { return p_of(i); }

// ceil(lg x) for real x >= 1.
int ceil_lg_real(double x) {
  int e = 0;
  const double m = std::frexp(x, &e);
  return m == 0.5 ? e - 1 : e;
}

}  // namespace

double binary_total_coefficient(double p) {
  require_p(p, "binary_total_coefficient");
  return 1.0 - std::log2(p) - (1.0 + std::log(4.0 * p)) / p;
}

double binary_total(std::uint64_t n) {
  if (n < 2) throw DomainError("binary_total: n must be >= 2");
  const double nd = static_cast<double>(n);
  return nd * std::log2(nd) + binary_total_coefficient(p_of(n)) * nd;
}

Expectation step3_block_expectation(std::uint64_t i, int r) {
  require_round(i, "step3_block_expectation");
  if (r < 1 || r > static_cast<int>(ceil_lg(i * i))) throw DomainError("step3_block_expectation: r out of range");
  const double w = (kSqrt2 - 1.0) * std::exp2(-r / 2.0) * static_cast<double>(i);
  if (w < 1.0) throw DomainError("step3_block_expectation: block shorter than one element for this r");
  const double p = p_of(w);
  Expectation e;
  e.value = ceil_lg_real(w) + 7.0 - 4.0 * kSqrt2 - (10.0 - 6.0 * kSqrt2) / p + (3.0 - 2.0 * kSqrt2) / (p * p);
  e.source = Source::formula;
  e.error_band = std::exp2(r / 2.0) / static_cast<double>(i);
  return e;
}

double step3_excess(double p) {
  require_p(p, "step3_excess");
  const double base = 5.0 - 4.0 * kSqrt2 - 1.0 / p + 1.0 / (6.0 * p * p);
  if (p <= static_cast<double>(constants::kMergeBranchLow)) {
    return base - 1.0 / (6.0 * p) - 1.0 / (16.0 * p * p) - 2.0 / 3.0;
  }
  if (p <= static_cast<double>(constants::kMergeBranchHigh)) {
    return base - kSqrt2 / (3.0 * p) - 1.0 / 3.0;
  }
  return base - 4.0 / (3.0 * p) + 1.0 / (4.0 * p * p) + 1.0 / 3.0;
}

double step3_excess(std::uint64_t i) {
  require_round(i, "step3_excess");
  return step3_excess(p_of_index(i));
}

double steps34_excess(double p) {
  return 1.0 + step3_excess(p) - 2.0 / p + 1.0 / (3.0 * p * p);
}

double steps34_excess(std::uint64_t i) {
  require_round(i, "steps34_excess");
  const double q = p_of_index(i - 1);
  return 1.0 + step3_excess(i) - 2.0 / q + 1.0 / (3.0 * q * q);
}

Expectation step4_expected(std::uint64_t i) {
  require_round(i, "step4_expected");
  const double p = p_of_index(i);
  Expectation e;
  e.value = ceil_lg(i - 1) + 1.0 - 2.0 / p + 1.0 / (3.0 * p * p);
  e.source = Source::formula;
  e.error_band = 1.0L / static_cast<long double>(i);
  return e;
}

double two_merge_step_excess(double p) {
  require_p(p, "two_merge_step_excess");
  if (p <= static_cast<double>(constants::kMergeBranchLow)) {
    return 25.0 / 6.0 - 2.0 * kSqrt2 - 19.0 / (12.0 * p) + 7.0 / (32.0 * p * p);
  }
  if (p <= static_cast<double>(constants::kMergeBranchHigh)) {
    return 13.0 / 3.0 - 2.0 * kSqrt2 - (9.0 + kSqrt2) / (6.0 * p) + 1.0 / (4.0 * p * p);
  }
  return 14.0 / 3.0 - 2.0 * kSqrt2 - 13.0 / (6.0 * p) + 3.0 / (8.0 * p * p);
}

double two_merge_star_step_excess(double p) {
  require_p(p, "two_merge_star_step_excess");
  if (p <= 0.75) return 1.5 - 7.0 / (4.0 * p) + 25.0 / (96.0 * p * p);
  return 2.0 - 5.0 / (2.0 * p) + 13.0 / (24.0 * p * p);
}

double one_two_step_excess(double p) {
  require_p(p, "one_two_step_excess");
  if (p < static_cast<double>(constants::kOneTwoWindowLo) || p > static_cast<double>(constants::kOneTwoWindowHi)) {
    return 1.0 - 1.0 / p;
  }
  return two_merge_step_excess(p);
}

double one_two_star_step_excess(double p) {
  require_p(p, "one_two_star_step_excess");
  if (p < static_cast<double>(constants::kStarWindowLo) || p > static_cast<double>(constants::kStarWindowHi)) {
    return 1.0 - 1.0 / p;
  }
  return two_merge_star_step_excess(p);
}

StarStepFormula per_step_two_merge_star(std::uint64_t i) {
  require_round(i, "per_step_two_merge_star");
  const double p = p_of_index(i);
  const double lg = ceil_lg(i);
  StarStepFormula f;
  f.steps23_upper = lg + 2.0 - 3.0 / p + 3.0 / (4.0 * p * p);
  f.steps23_lower = lg + 1.0 - 3.0 / (2.0 * p) + 3.0 / (16.0 * p * p);
  f.steps23 = p > 0.75 ? f.steps23_upper : f.steps23_lower;
  const double correction = p > 0.75 ? 1.0 - 3.0 / (2.0 * p) + 13.0 / (24.0 * p * p)
                                     : 0.5 - 3.0 / (4.0 * p) + 25.0 / (96.0 * p * p);
  f.per_insertion = lg + binary_excess(i) + correction;
  f.pair_total = lg + ceil_lg(i - 1) + 2.0 * two_merge_star_step_excess(p);
  f.error_band = 1.0L / static_cast<long double>(i);
  return f;
}

StopMoments stop_moments_formula(std::uint64_t i) {
  require_round(i, "stop_moments_formula");
  const double p = p_of_index(i);
  const double a = 3.0 * kSqrt2 + 5.0;
  const double b = 3.0 + 2.0 * kSqrt2;
  StopMoments m;
  m.mean_r = 2.0;
  m.mean_floor_half = 2.0 / 3.0;
  m.mean_ceil_half = 4.0 / 3.0;
  if (p <= static_cast<double>(constants::kMergeBranchLow)) {
    m.mean_inv_p = a / (12.0 * p);
    m.mean_inv_p2 = 5.0 * b / (48.0 * p * p);
  } else if (p <= static_cast<double>(constants::kMergeBranchHigh)) {
    m.mean_inv_p = b / (6.0 * p);
    m.mean_inv_p2 = b / (6.0 * p * p);
  } else {
    m.mean_inv_p = a / (6.0 * p);
    m.mean_inv_p2 = 5.0 * b / (12.0 * p * p);
  }
  m.error_band = 1.0L / static_cast<long double>(i);
  return m;
}

double trapezoid_sum(const std::function<double(double)>& f, std::span<const double> breakpoints,
                     std::uint64_t n) {
  if (n < 1) throw DomainError("trapezoid_sum: n must be >= 1");
  auto integrate = [&](double a, double b) {
    std::vector<double> cuts{a};
    for (double x : breakpoints) {
      if (x > a && x < b) cuts.push_back(x);
    }
    std::sort(cuts.begin() + 1, cuts.end());
    cuts.push_back(b);
    double total = 0.0;
    for (std::size_t j = 0; j + 1 < cuts.size(); ++j) {
      if (cuts[j + 1] <= cuts[j]) continue;
      double error = 0.0;
      total += boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, cuts[j], cuts[j + 1], 15, 1e-13,
                                                                              &error);
      if (error > 1e-10) throw DomainError("trapezoid_sum: quadrature did not converge");
    }
    return total;
  };
  const double result =
      static_cast<double>(pow2(ceil_lg(n))) * (integrate(0.5, 1.0) + integrate(0.5, p_of(n)));
  if (!std::isfinite(result)) throw DomainError("trapezoid_sum: integrand is not finite on (1/2, 1]");
  return result;
}

std::vector<double> one_two_breakpoints() {
  return {static_cast<double>(constants::kOneTwoWindowLo), static_cast<double>(constants::kMergeBranchLow),
          static_cast<double>(constants::kMergeBranchHigh), static_cast<double>(constants::kOneTwoWindowHi)};
}

std::vector<double> one_two_star_breakpoints() {
  return {static_cast<double>(constants::kStarWindowLo), 0.75, static_cast<double>(constants::kStarWindowHi)};
}

namespace {

long double round_formula(std::uint64_t i, Algorithm alg) {
  if (i == 2) return 1.0L;
  const double p = p_of(i);
  const double excess = alg == Algorithm::one_two ? one_two_step_excess(p) : one_two_star_step_excess(p);
  return static_cast<long double>(ceil_lg(i)) + ceil_lg(i - 1) + 2.0L * excess;
}

long double merge_insertion_prefix_formula(std::uint64_t n_prime) {
  const long double x = static_cast<long double>(n_prime);
  return x * std::log2(x) - constants::kMergeInsertionBest * x;
}

void require_even_formula(std::uint64_t n) {
  if (n < 2 || n % 2 != 0) throw DomainError("formula totals need an even n >= 2, got " + std::to_string(n));
}

}  // namespace

long double total_formula(Algorithm alg, std::uint64_t n) {
  require_even_formula(n);
  switch (alg) {
    case Algorithm::binary: return binary_total(n);
    case Algorithm::one_two:
    case Algorithm::one_two_star: {
      long double total = 0;
      for (std::uint64_t i = 2; i <= n; i += 2) total += round_formula(i, alg);
      return total;
    }
    case Algorithm::combination: {
      if (n < 4) throw DomainError("total_formula: combination needs n >= 4");
      const PrefixChoice choice = choose_n_prime(n);
      long double total = merge_insertion_prefix_formula(choice.n_prime);
      for (std::uint64_t i = choice.n_prime + 2; i <= n; i += 2) total += round_formula(i, Algorithm::one_two_star);
      return total;
    }
    case Algorithm::merge_insertion: break;
  }
  throw DomainError("total_formula: no closed form for merge_insertion");
}

double c_constant(Algorithm alg, std::uint64_t n) {
  const long double nd = static_cast<long double>(n);
  return static_cast<double>((total_formula(alg, n) - nd * std::log2(nd)) / nd);
}

FormulaCurve::FormulaCurve(Algorithm alg, std::uint64_t max_n) : alg_(alg), max_n_(max_n) {
  if (alg == Algorithm::merge_insertion) throw DomainError("FormulaCurve: no closed form for merge_insertion");
  if (alg == Algorithm::binary) return;
  const Algorithm rounds = alg == Algorithm::one_two ? Algorithm::one_two : Algorithm::one_two_star;
  prefix_.assign(max_n / 2 + 1, 0.0L);
  for (std::uint64_t j = 1; j <= max_n / 2; ++j) prefix_[j] = prefix_[j - 1] + round_formula(2 * j, rounds);
}

long double FormulaCurve::star_rounds(std::uint64_t from_exclusive, std::uint64_t to) const {
  return prefix_[to / 2] - prefix_[from_exclusive / 2];
}

long double FormulaCurve::total(std::uint64_t n) const {
  require_even_formula(n);
  if (n > max_n_) throw DomainError("FormulaCurve: n beyond the tabulated range");
  switch (alg_) {
    case Algorithm::binary: return binary_total(n);
    case Algorithm::one_two:
    case Algorithm::one_two_star: return prefix_[n / 2];
    case Algorithm::combination: {
      const PrefixChoice choice = choose_n_prime(n);
      return merge_insertion_prefix_formula(choice.n_prime) + star_rounds(choice.n_prime, n);
    }
    case Algorithm::merge_insertion: break;
  }
  throw DomainError("FormulaCurve: no closed form for merge_insertion");
}

double FormulaCurve::constant(std::uint64_t n) const {
  const long double nd = static_cast<long double>(n);
  return static_cast<double>((total(n) - nd * std::log2(nd)) / nd);
}

double combination_integral_form(std::uint64_t n) {
  const double p = p_of(n);
  if (p < 2.0 / 3.0) throw DomainError("combination_integral_form: needs p_n >= 2/3");
  const auto breaks = one_two_star_breakpoints();
  double integral = 0.0;
  if (p > 2.0 / 3.0) {
    std::vector<double> cuts{2.0 / 3.0};
    for (double x : breaks) {
      if (x > 2.0 / 3.0 && x < p) cuts.push_back(x);
    }
    cuts.push_back(p);
    for (std::size_t j = 0; j + 1 < cuts.size(); ++j) {
      integral += boost::math::quadrature::gauss_kronrod<double, 31>::integrate(
          [](double x) { return one_two_star_step_excess(x); }, cuts[j], cuts[j + 1], 15, 1e-13);
    }
  }
  const double nd = static_cast<double>(n);
  return nd * std::log2(nd) + (-std::log2(p) - 4.0 / (3.0 * p) + integral / p) * nd;
}

std::uint64_t info_lower_bound(std::uint64_t n) {
  boost::multiprecision::cpp_int factorial = 1;
  for (std::uint64_t k = 2; k <= n; ++k) factorial *= k;
  if (factorial == 1) return 0;
  factorial -= 1;
  return static_cast<std::uint64_t>(boost::multiprecision::msb(factorial)) + 1;
}

double lg_factorial(std::uint64_t n) {
  long double total = 0;
  for (std::uint64_t k = 2; k <= n; ++k) total += std::log2(static_cast<long double>(k));
  return static_cast<double>(total);
}

}  // namespace sortlab
