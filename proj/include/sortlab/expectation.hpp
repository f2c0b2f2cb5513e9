// Expected comparison counts with their provenance.
#pragma once

#include <optional>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace sortlab {

using Rational = boost::multiprecision::cpp_rational;

enum class Source { formula, exact, monte_carlo };

constexpr std::string_view to_string(Source s) {
  switch (s) {
    case Source::formula: return "formula";
    case Source::exact: return "exact";
    case Source::monte_carlo: return "monte_carlo";
  }
  return "?";
}

struct Expectation {
  long double value = 0;
  Source source = Source::formula;
  // Present for Monte Carlo estimates (standard error) and for formulas that
  // carry an O(.) term (the magnitude of that term).
  std::optional<long double> error_band;
  // Set when the value is known as an exact fraction.
  std::optional<Rational> exact;
};

}  // namespace sortlab
