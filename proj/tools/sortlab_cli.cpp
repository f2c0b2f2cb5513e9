// Command-line front end: sorting runs, expectations and figure data.
//
// Exit status: 0 success, 1 verification failure, 2 usage error, 3 I/O error.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "sortlab/analytics.hpp"
#include "sortlab/harness.hpp"
#include "sortlab/oracles.hpp"

using namespace sortlab;

namespace {

constexpr int kOk = 0;
constexpr int kVerifyFailed = 1;
constexpr int kUsage = 2;
constexpr int kIo = 3;

struct Options {
  std::string alg = "one_two_star";
  std::vector<std::string> algs;
  std::size_t n = 1024;
  std::size_t from = 4096;
  std::size_t to = 8192;
  std::size_t step = 256;
  std::size_t trials = 1000;
  std::uint64_t seed = 1;
  std::string out;
  std::string policy = "auto";
  std::string suite = "all";
};

Algorithm algorithm_from(const std::string& name) {
  const auto alg = parse_algorithm(name);
  if (!alg) throw DomainError("unknown algorithm '" + name + "'");
  return *alg;
}

CombinationPolicy policy_from(const std::string& name) {
  const auto policy = parse_policy(name);
  if (!policy) throw DomainError("unknown policy '" + name + "' (combination, merge-insertion-only, auto)");
  return *policy;
}

ExperimentSpec spec_from(const Options& o) {
  ExperimentSpec spec;
  if (!o.algs.empty()) {
    spec.algorithms.clear();
    for (const auto& name : o.algs) spec.algorithms.push_back(algorithm_from(name));
  }
  spec.from = o.from;
  spec.to = o.to;
  spec.step = o.step;
  spec.seed = o.seed;
  spec.trials = o.trials;
  spec.policy = policy_from(o.policy);
  validate(spec);
  return spec;
}

int cmd_sort(const Options& o) {
  const Algorithm alg = algorithm_from(o.alg);
  const KeySeq input = random_permutation(o.n, o.seed);
  Tally tally;
  const KeySeq out = run_sort(alg, input, tally, policy_from(o.policy));
  const bool ok = is_sorted_permutation(input, out);
  std::cout << "algorithm=" << to_string(alg) << " n=" << o.n << " seed=" << o.seed
            << " comparisons=" << tally.count() << " sorted=" << (ok ? "yes" : "no") << '\n';
  return ok ? kOk : kVerifyFailed;
}

int cmd_expect(const Options& o) {
  const Algorithm alg = algorithm_from(o.alg);
  const ResultRow row = make_row(to_string(alg), o.n, exact_sort_expectation(alg, o.n, {}, policy_from(o.policy)));
  write_rows(o.out, std::span<const ResultRow>(&row, 1));
  return kOk;
}

int cmd_mc(const Options& o) {
  const Algorithm alg = algorithm_from(o.alg);
  const Expectation e = monte_carlo(alg, o.n, o.trials, o.seed, policy_from(o.policy));
  const ResultRow row = make_row(to_string(alg), o.n, e, o.seed, o.trials);
  write_rows(o.out, std::span<const ResultRow>(&row, 1));
  std::cerr << "standard error " << format_number(static_cast<double>(*e.error_band)) << '\n';
  return kOk;
}

int cmd_formulas(const Options& o) {
  ExperimentSpec spec = spec_from(o);
  std::vector<ResultRow> rows;
  for (Algorithm alg : spec.algorithms) {
    if (alg == Algorithm::merge_insertion) continue;  // no closed form
    if (alg == Algorithm::binary) {
      for (std::size_t n : sample_lengths(spec)) {
        Expectation e;
        e.value = binary_total(n);
        rows.push_back(make_row(to_string(alg), n, e));
      }
      continue;
    }
    const FormulaCurve curve(alg, spec.to);
    for (std::size_t n : sample_lengths(spec)) {
      if (n < 4) continue;
      Expectation e;
      e.value = curve.total(n);
      rows.push_back(make_row(to_string(alg), n, e));
    }
  }
  write_rows(o.out, rows);
  return kOk;
}

int cmd_fig1(const Options& o) {
  const auto rows = run_fig1(spec_from(o));
  write_rows(o.out, rows);
  return kOk;
}

int cmd_fig2(const Options& o) {
  const auto rows = run_fig2(spec_from(o));
  write_fig2(o.out, rows);
  return kOk;
}

int cmd_verify(const Options& o) {
  const auto suite = parse_suite(o.suite);
  if (!suite) throw DomainError("unknown suite '" + o.suite + "'");
  VerifyOptions options;
  options.seed = o.seed;
  const VerifyReport report = run_verify(*suite, options);
  const std::string text = report.to_json().dump(2) + "\n";
  if (o.out.empty() || o.out == "-") {
    std::cout << text;
  } else {
    std::ofstream file(o.out, std::ios::binary);
    if (!(file << text)) throw IoError("cannot write " + o.out);
  }
  return report.passed() ? kOk : kVerifyFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Comparison-count experiments for insertion-based sorting"};
  app.require_subcommand(1);
  Options o;

  auto add_alg = [&](CLI::App* sub) { sub->add_option("--alg", o.alg, "binary, one_two, one_two_star, merge_insertion, combination"); };
  auto add_algs = [&](CLI::App* sub) { sub->add_option("--alg", o.algs, "algorithms to include (repeatable; default all)"); };
  auto add_range = [&](CLI::App* sub) {
    sub->add_option("--from", o.from, "smallest n")->capture_default_str();
    sub->add_option("--to", o.to, "largest n")->capture_default_str();
    sub->add_option("--step", o.step, "n increment (even)")->capture_default_str();
  };
  auto add_out = [&](CLI::App* sub) { sub->add_option("--out", o.out, "output file (default stdout)"); };
  auto add_policy = [&](CLI::App* sub) {
    sub->add_option("--policy", o.policy, "combination, merge-insertion-only or auto")->capture_default_str();
  };

  auto* sort = app.add_subcommand("sort", "sort one seeded random permutation and count comparisons");
  add_alg(sort);
  sort->add_option("--n", o.n)->capture_default_str();
  sort->add_option("--seed", o.seed)->capture_default_str();
  add_policy(sort);

  auto* expect = app.add_subcommand("expect", "exact expected comparisons");
  add_alg(expect);
  expect->add_option("--n", o.n)->capture_default_str();
  add_policy(expect);
  add_out(expect);

  auto* mc = app.add_subcommand("mc", "Monte Carlo mean comparisons");
  add_alg(mc);
  mc->add_option("--n", o.n)->capture_default_str();
  mc->add_option("--trials", o.trials)->capture_default_str();
  mc->add_option("--seed", o.seed)->capture_default_str();
  add_policy(mc);
  add_out(mc);

  auto* formulas = app.add_subcommand("formulas", "closed-form totals over a range of n");
  add_algs(formulas);
  add_range(formulas);
  add_out(formulas);

  auto* fig1 = app.add_subcommand("fig1", "constant versus p_n for every algorithm");
  add_algs(fig1);
  add_range(fig1);
  fig1->add_option("--trials", o.trials)->capture_default_str();
  fig1->add_option("--seed", o.seed)->capture_default_str();
  add_policy(fig1);
  add_out(fig1);

  auto* fig2 = app.add_subcommand("fig2", "all-pairs experiment for the star merge");
  fig2->add_option("--from", o.from, "smallest n")->default_str("16");
  fig2->add_option("--to", o.to, "largest n")->default_str("4096");
  fig2->add_option("--step", o.step, "n increment (even)")->capture_default_str();
  add_out(fig2);

  auto* verify = app.add_subcommand("verify", "run invariant suites and print a JSON report");
  verify->add_option("suite", o.suite, "sortedness, rhbs, two_merge, formulas, oracles or all")->capture_default_str();
  verify->add_option("--seed", o.seed)->capture_default_str();
  add_out(verify);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*sort) return cmd_sort(o);
    if (*expect) return cmd_expect(o);
    if (*mc) return cmd_mc(o);
    if (*formulas) return cmd_formulas(o);
    if (*fig1) return cmd_fig1(o);
    if (*fig2) {
      if (fig2->count("--from") == 0) o.from = 16;
      if (fig2->count("--to") == 0) o.to = 4096;
      return cmd_fig2(o);
    }
    if (*verify) return cmd_verify(o);
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kIo;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const CapExceededError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}
