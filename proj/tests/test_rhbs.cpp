#include <doctest.h>

#include "sortlab/expectation.hpp"
#include "sortlab/rhbs.hpp"

using namespace sortlab;

namespace {

KeySeq evens(std::size_t m) {
  KeySeq t(m);
  for (std::size_t j = 0; j < m; ++j) t[j] = Key{static_cast<std::uint32_t>(2 * (j + 1))};
  return t;
}

unsigned simulated_cost(std::size_t m, std::size_t g, PivotRule rule = rhbs_pivot) {
  const KeySeq t = evens(m);
  Tally tally;
  const std::size_t got = rhbs_locate(Key{static_cast<std::uint32_t>(2 * g + 1)}, t, tally, rule);
  REQUIRE(got == g);
  return static_cast<unsigned>(tally.count());
}

std::size_t shifted_pivot(std::size_t length) { return std::min(length, rhbs_pivot(length) + 1); }

}  // namespace

TEST_CASE("pivot rule") {
  CHECK(rhbs_pivot(11) == 4);
  CHECK(rhbs_pivot(12) == 5);
  CHECK(rhbs_pivot(1) == 1);
  CHECK(rhbs_pivot(2) == 1);
  CHECK(rhbs_pivot(3) == 2);
  CHECK_THROWS_AS(rhbs_pivot(0), DomainError);
  for (std::size_t len = 1; len <= 5000; ++len) {
    const std::size_t d = rhbs_pivot(len);
    CHECK(d >= 1);
    CHECK(d <= len);
  }
}

TEST_CASE("insertion examples") {
  SUBCASE("15 into (10, 20)") {
    KeySeq t{Key{10}, Key{20}};
    Tally tally;
    CHECK(rhbs_insert(Key{15}, t, tally) == 1);
    CHECK(t == KeySeq{Key{10}, Key{15}, Key{20}});
    CHECK(tally.count() == 2);
  }
  SUBCASE("5 into (10)") {
    KeySeq t{Key{10}};
    Tally tally;
    rhbs_insert(Key{5}, t, tally);
    CHECK(t == KeySeq{Key{5}, Key{10}});
    CHECK(tally.count() == 1);
  }
  SUBCASE("empty sequence is free") {
    KeySeq t;
    Tally tally;
    rhbs_insert(Key{5}, t, tally);
    CHECK(tally.count() == 0);
  }
  SUBCASE("m = 11") {
    CHECK(simulated_cost(11, 0) == 3);
    CHECK(simulated_cost(11, 11) == 4);
  }
  SUBCASE("duplicate key") {
    KeySeq t{Key{10}, Key{20}};
    Tally tally;
    CHECK_THROWS_AS(rhbs_insert(Key{20}, t, tally), DuplicateKeyError);
  }
}

TEST_CASE("gap cost closed form") {
  CHECK(rhbs_gap_cost(12, 0) == 3);
  CHECK(rhbs_gap_cost(12, 4) == 4);
  for (std::uint64_t g = 0; g < 8; ++g) CHECK(rhbs_gap_cost(8, g) == 3);
  CHECK_THROWS_AS(rhbs_gap_cost(12, 12), DomainError);
  CHECK_THROWS_AS(rhbs_gap_cost(0, 0), DomainError);
}

TEST_CASE("average per insertion") {
  CHECK(rhbs_average(8) == 3.0);
  CHECK(rhbs_average<Rational>(12) == Rational(11, 3));
  CHECK(rhbs_average<Rational>(6) == Rational(8, 3));
  CHECK(rhbs_average<Rational>(1) == 0);
  CHECK_THROWS_AS(rhbs_average(0), DomainError);
}

TEST_CASE("simulation matches the cost model for every gap, m <= 1024") {
  for (std::size_t m = 0; m <= 1024; ++m) {
    const std::uint64_t gaps = m + 1;
    const unsigned q0 = ceil_lg(gaps) == 0 ? 0 : ceil_lg(gaps) - 1;
    std::uint64_t total = 0;
    for (std::size_t g = 0; g <= m; ++g) {
      const unsigned c = simulated_cost(m, g);
      REQUIRE(c == rhbs_gap_cost(gaps, g));
      if (m >= 1) REQUIRE((c == q0 || c == q0 + 1));
      total += c;
    }
    REQUIRE(total == rhbs_cost_sum(gaps));
    REQUIRE(Rational(total) / gaps == rhbs_average<Rational>(gaps));
  }
}

TEST_CASE("a shifted pivot breaks the cost model") {
  bool broken = false;
  for (std::size_t m = 1; m <= 64 && !broken; ++m) {
    for (std::size_t g = 0; g <= m; ++g) {
      if (simulated_cost(m, g, shifted_pivot) != rhbs_gap_cost(m + 1, g)) {
        broken = true;
        break;
      }
    }
  }
  CHECK(broken);
}
