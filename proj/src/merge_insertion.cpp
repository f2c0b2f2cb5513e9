#include "sortlab/merge_insertion.hpp"

#include <numeric>

namespace sortlab {

FJPlan fj_batch_bounds(std::size_t n) {
  if (n < 1) throw DomainError("fj_batch_bounds: n must be >= 1");
  FJPlan plan;
  plan.n = n;
  plan.batch_bounds = {1};
  std::uint64_t prev = 1;  // t_0
  while (plan.batch_bounds.back() < n) {
    const std::uint64_t next = plan.batch_bounds.back() + 2 * prev;
    prev = plan.batch_bounds.back();
    plan.batch_bounds.push_back(next);
  }
  return plan;
}

namespace {

void note(MergeInsertionStats* stats, std::size_t batch, std::uint64_t comparisons, std::uint64_t length) {
  if (stats == nullptr) return;
  if (stats->max_batch_comparisons.size() <= batch) {
    stats->max_batch_comparisons.resize(batch + 1, 0);
    stats->max_search_length.resize(batch + 1, 0);
  }
  stats->max_batch_comparisons[batch] = std::max(stats->max_batch_comparisons[batch], comparisons);
  stats->max_search_length[batch] = std::max(stats->max_search_length[batch], length);
}

// Returns the positions of `keys` in increasing key order.
std::vector<std::size_t> sorted_positions(std::span<const Key> keys, Tally& tally, MergeInsertionStats* stats) {
  const std::size_t n = keys.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  if (n <= 1) return order;

  const std::size_t pairs = n / 2;
  std::vector<std::size_t> large(pairs), small(pairs);
  KeySeq large_keys(pairs);
  for (std::size_t j = 0; j < pairs; ++j) {
    const std::size_t x = 2 * j, y = 2 * j + 1;
    if (tally.less(keys[x], keys[y])) {
      small[j] = x;
      large[j] = y;
    } else {
      small[j] = y;
      large[j] = x;
    }
    large_keys[j] = keys[large[j]];
  }
  const std::vector<std::size_t> winners = sorted_positions(large_keys, tally, stats);

  // Main chain b_1 a_1 a_2 ... a_h; tag q marks a_q, 0 marks inserted elements.
  std::vector<std::size_t> chain;
  std::vector<std::size_t> tag;
  chain.reserve(n);
  tag.reserve(n);
  chain.push_back(small[winners[0]]);
  tag.push_back(0);
  for (std::size_t q = 1; q <= pairs; ++q) {
    chain.push_back(large[winners[q - 1]]);
    tag.push_back(q);
  }

  const std::size_t pending = pairs + (n % 2);  // b_1 .. b_pending, b_1 already placed
  auto pending_key = [&](std::size_t q) { return q <= pairs ? small[winners[q - 1]] : n - 1; };

  std::uint64_t done = 1;
  std::uint64_t prev = 1, bound = 1;  // t_{k-2}, t_{k-1}
  for (std::size_t batch = 2; done < pending; ++batch) {
    const std::uint64_t next = bound + 2 * prev;
    prev = bound;
    bound = next;
    const std::uint64_t hi = std::min<std::uint64_t>(bound, pending);
    for (std::uint64_t q = hi; q > done; --q) {
      std::size_t limit = chain.size();
      if (q <= pairs) {
        limit = static_cast<std::size_t>(std::find(tag.begin(), tag.end(), q) - tag.begin());
      }
      const std::size_t position = pending_key(q);
      const Key key = keys[position];
      const std::uint64_t before = tally.count();
      std::size_t lo = 0, hi_pos = limit;
      while (lo < hi_pos) {
        const std::size_t mid = lo + (hi_pos - lo) / 2;
        if (tally.less(key, keys[chain[mid]])) {
          hi_pos = mid;
        } else {
          lo = mid + 1;
        }
      }
      note(stats, batch, tally.count() - before, limit);
      chain.insert(chain.begin() + static_cast<std::ptrdiff_t>(lo), position);
      tag.insert(tag.begin() + static_cast<std::ptrdiff_t>(lo), 0);
    }
    done = hi;
  }
  return chain;
}

}  // namespace

KeySeq merge_insertion_sort(std::span<const Key> s, Tally& tally, MergeInsertionStats* stats) {
  const std::vector<std::size_t> order = sorted_positions(s, tally, stats);
  KeySeq out(s.size());
  for (std::size_t j = 0; j < order.size(); ++j) out[j] = s[order[j]];
  return out;
}

}  // namespace sortlab
