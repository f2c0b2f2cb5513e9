// Comparison counting, keys, permutations and the p_x helper shared by every module.
#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace sortlab {

class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class DuplicateKeyError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when an oracle is asked for an instance beyond its enumeration cap.
class CapExceededError : public std::length_error {
 public:
  using std::length_error::length_error;
};

/// A distinct element identified by its integer rank.
///
/// Keys deliberately have no ordering operators: every ordering decision in
/// the library has to go through a Tally so it is counted.
struct Key {
  std::uint32_t value = 0;

  friend bool operator==(Key, Key) = default;
};

using KeySeq = std::vector<Key>;

enum class Ordering { less, greater };

/// Per-run comparison counter.
class Tally {
 public:
  Ordering compare(Key a, Key b) {
    if (a == b) {
      throw DuplicateKeyError("duplicate key " + std::to_string(a.value));
    }
    ++count_;
    return a.value < b.value ? Ordering::less : Ordering::greater;
  }

  bool less(Key a, Key b) { return compare(a, b) == Ordering::less; }

  std::uint64_t count() const noexcept { return count_; }

 private:
  std::uint64_t count_ = 0;
};

inline Ordering counting_compare(Key a, Key b, Tally& tally) {
  return tally.compare(a, b);
}

/// ceil(lg x) for x >= 1, exact.
constexpr unsigned ceil_lg(std::uint64_t x) {
  if (x == 0) throw DomainError("ceil_lg: x must be >= 1");
  unsigned bits = 0;
  for (std::uint64_t v = x - 1; v != 0; v >>= 1) ++bits;
  return bits;
}

constexpr std::uint64_t pow2(unsigned e) { return std::uint64_t{1} << e; }

/// x / 2^ceil(lg x), in (1/2, 1]. Exact for every finite x >= 1.
double p_of(double x);

inline double p_of(std::uint64_t x) {
  if (x == 0) throw DomainError("p_of: x must be >= 1");
  return static_cast<double>(x) / static_cast<double>(pow2(ceil_lg(x)));
}

/// The artifact-wide PRNG is std::mt19937_64 (its output sequence is fixed by
/// the C++ standard). Bounded draws use rejection sampling on the raw 64-bit
/// output, so permutations are identical across standard libraries.
KeySeq random_permutation(std::size_t n, std::uint64_t seed);

/// Keys 1..n in increasing order.
KeySeq identity_keys(std::size_t n);

/// Seed for trial `index` of an experiment run under `seed` (splitmix64 mix).
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);

bool is_sorted_permutation(std::span<const Key> input, std::span<const Key> output);

/// Runs body(begin, end) over contiguous chunks of [0, count) on worker threads.
template <class Body>
void parallel_chunks(std::size_t count, Body&& body) {
  const std::size_t workers =
      std::max<std::size_t>(1, std::min<std::size_t>(std::thread::hardware_concurrency(), count));
  if (workers <= 1) {
    body(std::size_t{0}, count);
    return;
  }
  std::vector<std::thread> pool;
  const std::size_t chunk = (count + workers - 1) / workers;
  for (std::size_t w = 0; w < workers; ++w) {
    const std::size_t begin = w * chunk;
    const std::size_t end = std::min(count, begin + chunk);
    if (begin >= end) break;
    pool.emplace_back([&body, begin, end] { body(begin, end); });
  }
  for (auto& t : pool) t.join();
}

}  // namespace sortlab
