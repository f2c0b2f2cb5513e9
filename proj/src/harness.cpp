#include "sortlab/harness.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>

#include "sortlab/analytics.hpp"
#include "sortlab/combination.hpp"
#include "sortlab/rhbs.hpp"
#include "sortlab/sorters.hpp"
#include "sortlab/two_merge.hpp"

namespace sortlab {

std::string format_number(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

namespace {

std::string format_integer(std::uint64_t x) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

long double n_lg_n(std::uint64_t n) {
  const long double x = static_cast<long double>(n);
  return x * std::log2(x);
}

}  // namespace

ResultRow make_row(std::string_view algorithm, std::uint64_t n, const Expectation& e,
                   std::optional<std::uint64_t> seed, std::optional<std::uint64_t> trials) {
  if (n < 1) throw DomainError("make_row: n must be >= 1");
  ResultRow row;
  row.algorithm = std::string(algorithm);
  row.n = n;
  row.p_n = p_of(n);
  row.source = e.source;
  row.comparisons = e.value;
  row.constant_c = static_cast<double>((e.value - n_lg_n(n)) / static_cast<long double>(n));
  row.seed = seed;
  row.trials = trials;
  return row;
}

std::string format_row(const ResultRow& row) {
  std::string line = row.algorithm;
  line += ',' + format_integer(row.n);
  line += ',' + format_number(row.p_n);
  line += ',' + std::string(to_string(row.source));
  line += ',' + format_number(static_cast<double>(row.comparisons));
  line += ',' + format_number(row.constant_c);
  line += ',' + (row.seed ? format_integer(*row.seed) : std::string());
  line += ',' + (row.trials ? format_integer(*row.trials) : std::string());
  return line;
}

void write_rows(std::ostream& out, std::span<const ResultRow> rows, bool header) {
  if (header) out << kCsvHeader << '\n';
  for (const auto& row : rows) out << format_row(row) << '\n';
}

namespace {

template <class Emit>
void with_output(const std::filesystem::path& path, Emit&& emit) {
  if (path.empty() || path == "-") {
    emit(std::cout);
    std::cout.flush();
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  emit(out);
  out.flush();
  if (!out) throw IoError("failed writing " + path.string());
}

}  // namespace

void write_rows(const std::filesystem::path& path, std::span<const ResultRow> rows) {
  with_output(path, [&](std::ostream& out) { write_rows(out, rows, true); });
}

void validate(const ExperimentSpec& spec) {
  if (spec.from < 2 || spec.to < 2) throw DomainError("n range bounds must be >= 2");
  if (spec.from > spec.to) throw DomainError("--from must not exceed --to");
  if (spec.step == 0 || spec.step % 2 != 0) throw DomainError("--step must be a positive even number");
  if (spec.trials < 1) throw DomainError("--trials must be >= 1");
  if (spec.algorithms.empty()) throw DomainError("no algorithm selected");
}

std::vector<std::size_t> sample_lengths(const ExperimentSpec& spec) {
  validate(spec);
  std::vector<std::size_t> lengths;
  for (std::size_t n = spec.from + spec.from % 2; n <= spec.to; n += spec.step) lengths.push_back(n);
  return lengths;
}

std::vector<ResultRow> run_fig1(const ExperimentSpec& spec) {
  const std::vector<std::size_t> lengths = sample_lengths(spec);
  auto wants = [&](Algorithm alg) {
    return std::find(spec.algorithms.begin(), spec.algorithms.end(), alg) != spec.algorithms.end();
  };
  const std::size_t exact_top = std::min(spec.to - spec.to % 2, spec.caps.exact_n - spec.caps.exact_n % 2);

  std::unique_ptr<RoundTable> plain_table;
  std::unique_ptr<RoundTable> star_table;
  if (wants(Algorithm::one_two)) plain_table = std::make_unique<RoundTable>(InsertionPolicy::one_two, exact_top);
  if (wants(Algorithm::one_two_star) || wants(Algorithm::combination)) {
    star_table = std::make_unique<RoundTable>(InsertionPolicy::one_two_star, exact_top);
  }
  std::map<Algorithm, FormulaCurve> curves;
  for (Algorithm alg : {Algorithm::one_two, Algorithm::one_two_star, Algorithm::combination}) {
    if (wants(alg)) curves.emplace(alg, FormulaCurve(alg, spec.to));
  }

  std::vector<ResultRow> rows;
  auto formula = [](long double value) {
    Expectation e;
    e.value = value;
    return e;
  };
  auto exact = [](long double value) {
    Expectation e;
    e.value = value;
    e.source = Source::exact;
    return e;
  };
  for (std::size_t n : lengths) {
    for (Algorithm alg : spec.algorithms) {
      const std::string_view name = to_string(alg);
      switch (alg) {
        case Algorithm::binary:
          rows.push_back(make_row(name, n, formula(binary_total(n))));
          rows.push_back(make_row(name, n, exact_sort_expectation(alg, n, {.exact_n = n})));
          break;
        case Algorithm::one_two:
        case Algorithm::one_two_star: {
          rows.push_back(make_row(name, n, formula(curves.at(alg).total(n))));
          const RoundTable& table = alg == Algorithm::one_two ? *plain_table : *star_table;
          if (n <= table.max_n()) {
            rows.push_back(make_row(name, n, exact(table.rounds_through(n))));
          } else {
            rows.push_back(make_row(name, n, monte_carlo(alg, n, spec.trials, spec.seed), spec.seed, spec.trials));
          }
          break;
        }
        case Algorithm::merge_insertion:
          rows.push_back(make_row(name, n, monte_carlo(alg, n, spec.trials, spec.seed), spec.seed, spec.trials));
          break;
        case Algorithm::combination: {
          if (uses_combination_route(n, spec.policy)) rows.push_back(make_row(name, n, formula(curves.at(alg).total(n))));
          const RoundTable* table = n <= star_table->max_n() ? star_table.get() : nullptr;
          rows.push_back(make_row(name, n, hybrid_combination_expectation(n, spec.trials, spec.seed, spec.policy, table),
                                  spec.seed, spec.trials));
          break;
        }
      }
    }
  }
  return rows;
}

Fig2Row fig2_row(std::size_t n, const OracleCaps& caps) {
  const RoundExpectation round = pair_enumeration_expectation(MergeVariant::star, n, caps);
  const StarStepFormula f = per_step_two_merge_star(n);
  Fig2Row row;
  row.n = n;
  row.i = n;
  row.p_i = p_of(static_cast<std::uint64_t>(n));
  row.oracle_pair_mean = round.mean_value;
  row.formula_pair_mean = f.pair_total;
  row.oracle_per_insertion = round.mean_value / 2;
  row.formula_per_insertion = f.per_insertion;
  row.delta = round.mean_value - f.pair_total;
  return row;
}

std::vector<Fig2Row> run_fig2(const ExperimentSpec& spec) {
  std::vector<Fig2Row> rows;
  for (std::size_t n : sample_lengths(spec)) {
    if (n < 4) continue;
    rows.push_back(fig2_row(n, spec.caps));
  }
  return rows;
}

std::string format_row(const Fig2Row& row) {
  std::string line = format_integer(row.n);
  line += ',' + format_integer(row.i);
  line += ',' + format_number(row.p_i);
  line += ',' + format_number(static_cast<double>(row.oracle_pair_mean));
  line += ',' + format_number(row.formula_pair_mean);
  line += ',' + format_number(static_cast<double>(row.oracle_per_insertion));
  line += ',' + format_number(row.formula_per_insertion);
  line += ',' + format_number(static_cast<double>(row.delta));
  return line;
}

void write_fig2(const std::filesystem::path& path, std::span<const Fig2Row> rows) {
  with_output(path, [&](std::ostream& out) {
    out << kFig2Header << '\n';
    for (const auto& row : rows) out << format_row(row) << '\n';
  });
}

std::optional<Suite> parse_suite(std::string_view name) {
  for (Suite s : {Suite::sortedness, Suite::rhbs, Suite::two_merge, Suite::formulas, Suite::oracles, Suite::all}) {
    if (to_string(s) == name) return s;
  }
  return std::nullopt;
}

std::string_view to_string(Suite suite) {
  switch (suite) {
    case Suite::sortedness: return "sortedness";
    case Suite::rhbs: return "rhbs";
    case Suite::two_merge: return "two_merge";
    case Suite::formulas: return "formulas";
    case Suite::oracles: return "oracles";
    case Suite::all: return "all";
  }
  return "?";
}

bool VerifyReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

nlohmann::json VerifyReport::to_json() const {
  nlohmann::json out;
  out["passed"] = passed();
  out["checks"] = nlohmann::json::array();
  for (const auto& c : checks) {
    out["checks"].push_back({{"suite", c.suite}, {"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
  }
  return out;
}

namespace {

class Recorder {
 public:
  Recorder(VerifyReport& report, std::string suite) : report_(report), suite_(std::move(suite)) {}

  // Runs body(); it returns an empty string on success or a failure detail.
  template <class Body>
  void check(std::string name, Body&& body) {
    CheckResult result{suite_, std::move(name), false, {}};
    try {
      result.detail = body();
      result.passed = result.detail.empty();
    } catch (const std::exception& e) {
      result.detail = std::string("exception: ") + e.what();
    }
    report_.checks.push_back(std::move(result));
  }

 private:
  VerifyReport& report_;
  std::string suite_;
};

std::string mismatch(std::string_view what, std::size_t at) {
  return std::string(what) + " at " + std::to_string(at);
}

void verify_sortedness(VerifyReport& report, const VerifyOptions& options) {
  Recorder rec(report, "sortedness");
  for (Algorithm alg : kAllAlgorithms) {
    rec.check(std::string(to_string(alg)) + "/exhaustive", [&]() -> std::string {
      for (std::size_t n = 1; n <= 7; ++n) {
        if (!supports_length(alg, n)) continue;
        KeySeq perm = identity_keys(n);
        do {
          Tally tally;
          if (!is_sorted_permutation(perm, run_sort(alg, perm, tally))) return mismatch("unsorted output, n", n);
        } while (std::next_permutation(perm.begin(), perm.end(), [](Key a, Key b) { return a.value < b.value; }));
      }
      return {};
    });
    rec.check(std::string(to_string(alg)) + "/random", [&]() -> std::string {
      for (std::size_t n : {100u, 1000u}) {
        for (std::size_t trial = 0; trial < options.random_trials; ++trial) {
          const KeySeq input = random_permutation(n, derive_seed(options.seed, trial));
          Tally tally;
          if (!is_sorted_permutation(input, run_sort(alg, input, tally))) return mismatch("unsorted output, n", n);
        }
      }
      return {};
    });
  }
}

void verify_rhbs(VerifyReport& report, const VerifyOptions& options) {
  Recorder rec(report, "rhbs");
  rec.check("gap costs", [&]() -> std::string {
    for (std::size_t m = 1; m <= options.max_gaps; ++m) {
      KeySeq t(m - 1);
      for (std::size_t j = 0; j + 1 < m; ++j) t[j] = Key{static_cast<std::uint32_t>(2 * (j + 1))};
      std::uint64_t total = 0;
      for (std::size_t g = 0; g < m; ++g) {
        Tally tally;
        const std::size_t got = rhbs_locate(Key{static_cast<std::uint32_t>(2 * g + 1)}, t, tally, options.rhbs_rule);
        if (got != g) return mismatch("wrong gap, m", m);
        if (tally.count() != rhbs_gap_cost(m, g)) return mismatch("cost differs from the closed form, m", m);
        total += tally.count();
      }
      if (total != rhbs_cost_sum(m)) return mismatch("cost sum, m", m);
    }
    return {};
  });
  rec.check("cheap gaps form a prefix", [&]() -> std::string {
    for (std::size_t m = 1; m <= options.max_gaps; ++m) {
      const unsigned c = ceil_lg(m);
      std::size_t cheap = 0;
      bool seen_expensive = false;
      for (std::size_t g = 0; g < m; ++g) {
        const unsigned cost = rhbs_gap_cost(m, g);
        if (cost == c) seen_expensive = true;
        else if (seen_expensive) return mismatch("cheap gap after an expensive one, m", m);
        else ++cheap;
      }
      if (cheap != pow2(c) - m) return mismatch("cheap-gap census, m", m);
    }
    return {};
  });
}

void verify_two_merge(VerifyReport& report, const VerifyOptions& options) {
  Recorder rec(report, "two_merge");
  for (MergeVariant variant : {MergeVariant::plain, MergeVariant::star}) {
    const std::string tag = variant == MergeVariant::plain ? "plain" : "star";
    rec.check(tag + "/schedule", [&]() -> std::string {
      for (std::size_t i = 4; i <= 2048; i += 2) {
        const PivotSchedule s = pivot_schedule(i, variant);
        for (std::size_t b = 0; b < s.pivots.size(); ++b) {
          if (s.pivots[b] < 1 || s.pivots[b] > i - 2) return mismatch("pivot out of range, i", i);
          if (b > 0 && s.pivots[b] <= s.pivots[b - 1]) return mismatch("pivots not increasing, i", i);
        }
      }
      return {};
    });
    rec.check(tag + "/pair enumeration", [&]() -> std::string {
      for (std::size_t i = 4; i <= 96; i += 2) {
        const RoundExpectation round = pair_enumeration_expectation(variant, i, options.caps);
        Rational mass = 0;
        for (std::size_t b = 0; b < round.block_pairs.size(); ++b) mass += round.stop_probability(b);
        if (mass != 1) return mismatch("stop distribution does not sum to one, i", i);
        const RoundValue engine =
            round_expectation(i, variant == MergeVariant::plain ? InsertionPolicy::one_two : InsertionPolicy::one_two_star);
        if (use_two_merge(i, variant == MergeVariant::plain ? InsertionPolicy::one_two : InsertionPolicy::one_two_star) &&
            engine.exact() != round.mean) {
          return mismatch("round engine disagrees with pair enumeration, i", i);
        }
      }
      return {};
    });
  }
}

std::string close(std::string_view what, double got, double want, double tol) {
  if (std::abs(got - want) <= tol) return {};
  return std::string(what) + ": got " + format_number(got) + ", want " + format_number(want);
}

void verify_formulas(VerifyReport& report, const VerifyOptions&) {
  Recorder rec(report, "formulas");
  rec.check("pair form of the merge excess", []() -> std::string {
    for (int k = 1; k <= 10000; ++k) {
      const double p = 0.5 + 0.5 * k / 10000.0;
      if (auto d = close("U/2 + 3/2 vs merge excess", steps34_excess(p) / 2 + 1.5, two_merge_step_excess(p), 1e-12);
          !d.empty()) {
        return d;
      }
    }
    return {};
  });
  rec.check("values at p = 1", []() -> std::string {
    if (auto d = close("D(1)", one_two_step_excess(1.0), 0.0, 1e-15); !d.empty()) return d;
    if (auto d = close("D*(1)", one_two_star_step_excess(1.0), 0.0, 1e-15); !d.empty()) return d;
    return close("binary coefficient", binary_total_coefficient(1.0), 1.0 - (1.0 + std::log(4.0)), 1e-15);
  });
  rec.check("merge beats binary inside its window", []() -> std::string {
    for (int k = 1; k <= 10000; ++k) {
      const double p = 0.5 + 0.5 * k / 10000.0;
      const double binary = 1.0 - 1.0 / p;
      const bool inside_plain = p > 0.5512 && p < 0.8879;
      if (inside_plain && !(two_merge_step_excess(p) < binary)) return "plain merge not better at p=" + format_number(p);
      const bool inside_star = p > static_cast<double>(constants::kStarWindowLo) + 1e-9 &&
                               p < static_cast<double>(constants::kStarWindowHi) - 1e-9;
      if (inside_star != (two_merge_star_step_excess(p) < binary)) return "star crossover off at p=" + format_number(p);
    }
    return {};
  });
  rec.check("star excess continuous at 3/4", []() -> std::string {
    return close("star excess jump", two_merge_star_step_excess(0.75), two_merge_star_step_excess(0.75 + 1e-12), 1e-9);
  });
}

void verify_oracles(VerifyReport& report, const VerifyOptions& options) {
  Recorder rec(report, "oracles");
  for (Algorithm alg : kAllAlgorithms) {
    rec.check(std::string(to_string(alg)) + "/engines agree", [&]() -> std::string {
      for (std::size_t n = 2; n <= std::min<std::size_t>(8, options.caps.exhaustive_n); n += 2) {
        if (exhaustive_average(alg, n, options.caps).exact != exact_sort_expectation_rational(alg, n, options.caps)) {
          return mismatch("exhaustive and round engines differ, n", n);
        }
      }
      return {};
    });
  }
  rec.check("step 4 mean", []() -> std::string {
    for (std::size_t i = 4; i <= 256; i += 2) {
      const RoundExpectation round = pair_enumeration_expectation(MergeVariant::plain, i);
      if (Rational(round.step4_total) / round.pairs != step4_exact_mean(i)) return mismatch("step 4 mean, i", i);
    }
    return {};
  });
}

}  // namespace

VerifyReport run_verify(Suite suite, const VerifyOptions& options) {
  VerifyReport report;
  const bool all = suite == Suite::all;
  if (all || suite == Suite::sortedness) verify_sortedness(report, options);
  if (all || suite == Suite::rhbs) verify_rhbs(report, options);
  if (all || suite == Suite::two_merge) verify_two_merge(report, options);
  if (all || suite == Suite::formulas) verify_formulas(report, options);
  if (all || suite == Suite::oracles) verify_oracles(report, options);
  return report;
}

}  // namespace sortlab
