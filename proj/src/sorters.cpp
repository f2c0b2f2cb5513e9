#include "sortlab/sorters.hpp"

#include "sortlab/rhbs.hpp"

namespace sortlab {

std::optional<Window> two_merge_window(InsertionPolicy policy) {
  switch (policy) {
    case InsertionPolicy::binary: return std::nullopt;
    case InsertionPolicy::one_two: return kOneTwoWindow;
    case InsertionPolicy::one_two_star: return kOneTwoStarWindow;
  }
  return std::nullopt;
}

bool use_two_merge(std::size_t i, InsertionPolicy policy) {
  if (i < 4 || i % 2 != 0) throw DomainError("use_two_merge: i must be even and >= 4");
  const auto window = two_merge_window(policy);
  return window && window->contains(p_of(static_cast<std::uint64_t>(i)));
}

MergeVariant merge_variant(InsertionPolicy policy) {
  return policy == InsertionPolicy::one_two_star ? MergeVariant::star : MergeVariant::plain;
}

void insert_round(KeySeq& t, Key a, Key b, InsertionPolicy policy, Tally& tally) {
  const std::size_t i = t.size() + 2;
  if (use_two_merge(i, policy)) {
    two_merge(a, b, t, merge_variant(policy), tally);
  } else {
    rhbs_insert(a, t, tally);
    rhbs_insert(b, t, tally);
  }
}

KeySeq binary_insertion_sort(std::span<const Key> s, Tally& tally) {
  KeySeq out;
  out.reserve(s.size());
  for (Key k : s) rhbs_insert(k, out, tally);
  return out;
}

KeySeq one_two_insertion(std::span<const Key> s, MergeVariant variant, Tally& tally) {
  const InsertionPolicy policy =
      variant == MergeVariant::star ? InsertionPolicy::one_two_star : InsertionPolicy::one_two;
  KeySeq out;
  out.reserve(s.size());
  if (s.size() < 2) {
    out.assign(s.begin(), s.end());
    return out;
  }
  if (tally.less(s[0], s[1])) {
    out = {s[0], s[1]};
  } else {
    out = {s[1], s[0]};
  }
  std::size_t next = 2;
  for (; next + 1 < s.size(); next += 2) insert_round(out, s[next], s[next + 1], policy, tally);
  if (next < s.size()) rhbs_insert(s[next], out, tally);
  return out;
}

}  // namespace sortlab
