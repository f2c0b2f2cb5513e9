// Experiment runners behind the command-line tool: figure data as CSV and the
// invariant suites.
#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "sortlab/algorithms.hpp"
#include "sortlab/expectation.hpp"
#include "sortlab/oracles.hpp"
#include "sortlab/rhbs.hpp"

namespace sortlab {

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr std::string_view kCsvHeader = "algorithm,n,p_n,source,comparisons,constant_c,seed,trials";

struct ResultRow {
  std::string algorithm;
  std::uint64_t n = 0;
  double p_n = 0;
  Source source = Source::formula;
  long double comparisons = 0;
  double constant_c = 0;  // (comparisons - n lg n) / n
  std::optional<std::uint64_t> seed;
  std::optional<std::uint64_t> trials;
};

ResultRow make_row(std::string_view algorithm, std::uint64_t n, const Expectation& e,
                   std::optional<std::uint64_t> seed = std::nullopt,
                   std::optional<std::uint64_t> trials = std::nullopt);

/// Shortest round-trip decimal, independent of the C++ locale.
std::string format_number(double x);

std::string format_row(const ResultRow& row);
void write_rows(std::ostream& out, std::span<const ResultRow> rows, bool header = true);

/// Writes the CSV to `path`, or to stdout when path is empty or "-".
void write_rows(const std::filesystem::path& path, std::span<const ResultRow> rows);

struct ExperimentSpec {
  std::vector<Algorithm> algorithms{kAllAlgorithms.begin(), kAllAlgorithms.end()};
  std::size_t from = 4096;
  std::size_t to = 8192;
  std::size_t step = 256;
  std::uint64_t seed = 1;
  std::size_t trials = 100;
  CombinationPolicy policy = CombinationPolicy::automatic;
  OracleCaps caps;
};

/// Throws DomainError when the range is unusable (bounds < 2, odd step, from > to).
void validate(const ExperimentSpec& spec);

/// Even n in [from, to] stepping by `step`.
std::vector<std::size_t> sample_lengths(const ExperimentSpec& spec);

/// Constant-vs-p_n rows. Insertion sorts get a formula row plus an exact row
/// (Monte Carlo beyond the exact cap); the combination gets its formula and a
/// Monte Carlo prefix with exact rounds; merge insertion is Monte Carlo only.
std::vector<ResultRow> run_fig1(const ExperimentSpec& spec);

/// All-pairs experiment for the star merge.
struct Fig2Row {
  std::uint64_t n = 0;  // set size; the pair is merged into the other n - 2
  std::uint64_t i = 0;  // round length, equal to n
  double p_i = 0;
  long double oracle_pair_mean = 0;
  double formula_pair_mean = 0;
  long double oracle_per_insertion = 0;
  double formula_per_insertion = 0;
  long double delta = 0;  // oracle_pair_mean - formula_pair_mean
};

inline constexpr std::string_view kFig2Header =
    "n,i,p_i,oracle_pair_mean,formula_pair_mean,oracle_per_insertion,formula_per_insertion,delta";

Fig2Row fig2_row(std::size_t n, const OracleCaps& caps = {});
std::vector<Fig2Row> run_fig2(const ExperimentSpec& spec);
std::string format_row(const Fig2Row& row);
void write_fig2(const std::filesystem::path& path, std::span<const Fig2Row> rows);

enum class Suite { sortedness, rhbs, two_merge, formulas, oracles, all };

std::optional<Suite> parse_suite(std::string_view name);
std::string_view to_string(Suite suite);

struct VerifyOptions {
  PivotRule rhbs_rule = rhbs_pivot;  // swapped out by mutation tests
  std::size_t max_gaps = 512;
  std::size_t random_trials = 50;
  std::uint64_t seed = 1;
  OracleCaps caps;
};

struct CheckResult {
  std::string suite;
  std::string name;
  bool passed = false;
  std::string detail;
};

struct VerifyReport {
  std::vector<CheckResult> checks;
  bool passed() const;
  nlohmann::json to_json() const;
};

VerifyReport run_verify(Suite suite, const VerifyOptions& options = {});

}  // namespace sortlab
