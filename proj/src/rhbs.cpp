#include "sortlab/rhbs.hpp"

#include <string>

namespace sortlab {

std::size_t rhbs_pivot(std::size_t length) {
  if (length < 1) throw DomainError("rhbs_pivot: length must be >= 1");
  const unsigned c = ceil_lg(length + 1);
  // length <= 3 * 2^(c-2) - 1, kept in integers so c = 1 needs no special case.
  if (4 * (length + 1) <= 3 * pow2(c)) return static_cast<std::size_t>(pow2(c) / 4);
  return length - static_cast<std::size_t>(pow2(c - 1)) + 1;
}

std::size_t rhbs_locate(Key a, std::span<const Key> t, Tally& tally, PivotRule rule) {
  std::size_t lo = 0;
  std::size_t hi = t.size();
  while (lo < hi) {
    const std::size_t d = rule(hi - lo);
    if (d < 1 || d > hi - lo) throw DomainError("rhbs_locate: pivot rule returned " + std::to_string(d));
    const std::size_t probe = lo + d - 1;
    if (tally.less(a, t[probe])) {
      hi = probe;
    } else {
      lo = probe + 1;
    }
  }
  return lo;
}

std::size_t rhbs_insert(Key a, KeySeq& t, Tally& tally) {
  const std::size_t gap = rhbs_locate(a, t, tally);
  t.insert(t.begin() + static_cast<std::ptrdiff_t>(gap), a);
  return gap;
}

unsigned rhbs_gap_cost(std::uint64_t m_gaps, std::uint64_t g) {
  if (m_gaps < 1 || g >= m_gaps) {
    throw DomainError("rhbs_gap_cost: gap " + std::to_string(g) + " out of range for " +
                      std::to_string(m_gaps) + " gaps");
  }
  const unsigned c = ceil_lg(m_gaps);
  const std::uint64_t cheap = pow2(c) - m_gaps;
  return g < cheap ? c - 1 : c;
}

std::uint64_t rhbs_cost_sum(std::uint64_t m_gaps) {
  if (m_gaps == 0) throw DomainError("rhbs_cost_sum: m_gaps must be >= 1");
  const unsigned c = ceil_lg(m_gaps);
  return m_gaps * (c + 1) - pow2(c);
}

}  // namespace sortlab
