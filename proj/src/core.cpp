#include "sortlab/core.hpp"

#include <cmath>
#include <limits>
#include <random>

namespace sortlab {

double p_of(double x) {
  if (!(x >= 1.0) || !std::isfinite(x)) throw DomainError("p_of: x must be a finite value >= 1");
  int exponent = 0;
  const double mantissa = std::frexp(x, &exponent);  // x = mantissa * 2^exponent, mantissa in [1/2, 1)
  return mantissa == 0.5 ? 1.0 : mantissa;
}

namespace {

std::uint64_t bounded(std::mt19937_64& gen, std::uint64_t bound) {
  // Uniform in [0, bound) by rejecting the incomplete top bucket.
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % bound;
  std::uint64_t draw = gen();
  while (draw >= limit) draw = gen();
  return draw % bound;
}

}  // namespace

KeySeq identity_keys(std::size_t n) {
  KeySeq keys(n);
  for (std::size_t j = 0; j < n; ++j) keys[j] = Key{static_cast<std::uint32_t>(j + 1)};
  return keys;
}

KeySeq random_permutation(std::size_t n, std::uint64_t seed) {
  if (n == 0) throw DomainError("random_permutation: n must be >= 1");
  KeySeq keys = identity_keys(n);
  std::mt19937_64 gen(seed);
  for (std::size_t j = n - 1; j > 0; --j) {
    const auto k = static_cast<std::size_t>(bounded(gen, j + 1));
    std::swap(keys[j], keys[k]);
  }
  return keys;
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

bool is_sorted_permutation(std::span<const Key> input, std::span<const Key> output) {
  if (input.size() != output.size()) return false;
  for (std::size_t j = 1; j < output.size(); ++j) {
    if (!(output[j - 1].value < output[j].value)) return false;
  }
  std::vector<std::uint32_t> a(input.size()), b(output.size());
  std::transform(input.begin(), input.end(), a.begin(), [](Key k) { return k.value; });
  std::transform(output.begin(), output.end(), b.begin(), [](Key k) { return k.value; });
  std::sort(a.begin(), a.end());
  return a == b;
}

}  // namespace sortlab
