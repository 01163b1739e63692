#include <algorithm>
#include <set>
#include <tuple>

#include "layered_core.hpp"
#include "moebius/errors.hpp"
#include "moebius/examples.hpp"

namespace moebius::examples {

namespace {

using detail::below;
using detail::relation_bit;

struct Canonical {
  std::uint64_t rel;  // canonically relabelled relation
  Perm labelling;     // element -> canonical position
};

// Cells of elements with equal (height, down count, up count), ordered by that
// vector; the canonical labelling minimises the relation word over all
// orderings inside the cells. Heights increase along the order, so the result
// is a linear extension.
Canonical canonicalize(int k, std::uint64_t rel) {
  std::vector<std::tuple<int, int, int, int>> inv(static_cast<std::size_t>(k));
  std::vector<int> height(static_cast<std::size_t>(k), 0);
  for (int pass = 0; pass < k; ++pass)
    for (int a = 0; a < k; ++a)
      for (int b = 0; b < k; ++b)
        if (below(rel, b, a)) height[a] = std::max(height[a], height[b] + 1);
  for (int a = 0; a < k; ++a) {
    int down = 0, up = 0;
    for (int b = 0; b < k; ++b) {
      down += below(rel, b, a);
      up += below(rel, a, b);
    }
    inv[a] = {height[a], down, -up, a};
  }
  std::sort(inv.begin(), inv.end());
  std::vector<int> order(static_cast<std::size_t>(k));  // position -> element
  std::vector<std::pair<int, int>> cells;                 // [begin, end)
  for (int p = 0; p < k; ++p) {
    order[p] = std::get<3>(inv[p]);
    const bool same = p > 0 && std::get<0>(inv[p]) == std::get<0>(inv[p - 1]) &&
                      std::get<1>(inv[p]) == std::get<1>(inv[p - 1]) && std::get<2>(inv[p]) == std::get<2>(inv[p - 1]);
    if (same)
      cells.back().second = p + 1;
    else
      cells.emplace_back(p, p + 1);
  }
  Canonical best{~std::uint64_t{0}, {}};
  std::function<void(std::size_t)> go = [&](std::size_t c) {
    if (c == cells.size()) {
      Perm p(static_cast<std::size_t>(k));
      for (int pos = 0; pos < k; ++pos) p[order[pos]] = static_cast<std::uint8_t>(pos);
      const std::uint64_t r = detail::permute_relation(rel, k, p);
      if (r < best.rel) best = {r, p};
      return;
    }
    auto [b, e] = cells[c];
    std::sort(order.begin() + b, order.begin() + e);
    do go(c + 1);
    while (std::next_permutation(order.begin() + b, order.begin() + e));
  };
  go(0);
  if (k == 0) best.rel = 0;
  return best;
}

std::uint64_t relation_of(const FinPoset& P) {
  if (P.size() > static_cast<std::size_t>(kMaxElements)) throw DomainError("posets are supported on at most 6 elements");
  std::uint64_t rel = 0;
  for (auto [a, b] : P.strict_relations()) rel |= relation_bit(static_cast<int>(a), static_cast<int>(b));
  return rel;
}

std::string form(int k, std::uint64_t rel) {
  std::string s = std::to_string(k) + ":";
  bool first = true;
  for (int a = 0; a < k; ++a)
    for (int b = 0; b < k; ++b)
      if (below(rel, a, b)) {
        s += (first ? "" : ",") + std::to_string(a) + "<" + std::to_string(b);
        first = false;
      }
  return s;
}

FinPoset poset_of(int k, std::uint64_t rel) {
  std::vector<std::string> labels;
  std::vector<std::pair<catposet::Index, catposet::Index>> pairs;
  for (int a = 0; a < k; ++a) {
    labels.push_back(std::to_string(a));
    for (int b = 0; b < k; ++b)
      if (below(rel, a, b)) pairs.emplace_back(a, b);
  }
  return FinPoset(std::move(labels), pairs);
}

std::uint64_t automorphisms(int k, std::uint64_t rel) {
  const auto& S = SymmetricGroup::of(k);
  std::uint64_t count = 0;
  for (std::uint32_t g = 0; g < S.order(); ++g)
    if (detail::permute_relation(rel, k, S.element(g)) == rel) ++count;
  return count;
}

}  // namespace

std::string canonical_form(const FinPoset& P) {
  const int k = static_cast<int>(P.size());
  return form(k, canonicalize(k, relation_of(P)).rel);
}

FinPoset canonical_poset(const FinPoset& P) {
  const int k = static_cast<int>(P.size());
  return poset_of(k, canonicalize(k, relation_of(P)).rel);
}

std::uint64_t automorphism_count(const FinPoset& P) {
  return automorphisms(static_cast<int>(P.size()), relation_of(P));
}

std::vector<PosetClass> enumerate_posets(int n) {
  if (n < 0 || n > kMaxElements) throw DomainError("enumerate_posets supports 0 <= n <= 6, got " + std::to_string(n));
  std::set<std::uint64_t> seen;
  for (std::uint64_t rel : detail::naturally_labelled_posets(n)) seen.insert(canonicalize(n, rel).rel);
  std::vector<PosetClass> out;
  for (std::uint64_t rel : seen) out.push_back({poset_of(n, rel), automorphisms(n, rel), form(n, rel)});
  std::sort(out.begin(), out.end(), [](const PosetClass& a, const PosetClass& b) { return a.canonical < b.canonical; });
  return out;
}

}  // namespace moebius::examples
