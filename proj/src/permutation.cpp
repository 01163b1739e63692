#include "moebius/permutation.hpp"

#include <algorithm>
#include <memory>
#include <numeric>

#include "moebius/errors.hpp"

namespace moebius {

FiniteGroup FiniteGroup::trivial() { return cyclic(1); }

FiniteGroup FiniteGroup::cyclic(std::uint32_t n) {
  FiniteGroup g;
  g.order = n;
  g.table.resize(std::size_t(n) * n);
  g.inverses.resize(n);
  for (std::uint32_t a = 0; a < n; ++a) {
    for (std::uint32_t b = 0; b < n; ++b) g.table[a * n + b] = (a + b) % n;
    g.inverses[a] = (n - a) % n;
  }
  return g;
}

void FiniteGroup::validate() const {
  if (order == 0 || table.size() != std::size_t(order) * order || inverses.size() != order)
    throw StructuralError("group table has the wrong shape");
  for (std::uint32_t a = 0; a < order; ++a) {
    if (multiply(0, a) != a || multiply(a, 0) != a)
      throw StructuralError("element 0 is not a two-sided unit");
    if (multiply(a, inverse(a)) != 0 || multiply(inverse(a), a) != 0)
      throw StructuralError("inverse table is wrong at element " + std::to_string(a));
    for (std::uint32_t b = 0; b < order; ++b) {
      if (multiply(a, b) >= order) throw StructuralError("group table is not closed");
      for (std::uint32_t c = 0; c < order; ++c)
        if (multiply(multiply(a, b), c) != multiply(a, multiply(b, c)))
          throw StructuralError("group table is not associative");
    }
  }
}

SymmetricGroup::SymmetricGroup(int k) : degree_(k) {
  Perm p(k);
  std::iota(p.begin(), p.end(), 0);
  do {
    elements_.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  const auto n = static_cast<std::uint32_t>(elements_.size());
  group_.order = n;
  group_.table.resize(std::size_t(n) * n);
  group_.inverses.resize(n);
  Perm tmp(k);
  for (std::uint32_t a = 0; a < n; ++a) {
    const Perm& pa = elements_[a];
    for (std::uint32_t b = 0; b < n; ++b) {
      const Perm& pb = elements_[b];
      for (int i = 0; i < k; ++i) tmp[i] = pa[pb[i]];
      group_.table[a * n + b] = rank(tmp);
    }
    for (int i = 0; i < k; ++i) tmp[pa[i]] = static_cast<std::uint8_t>(i);
    group_.inverses[a] = rank(tmp);
  }
}

std::uint32_t SymmetricGroup::rank(const Perm& p) const {
  // Lehmer code gives the lexicographic rank.
  std::uint32_t r = 0;
  const int k = degree_;
  for (int i = 0; i < k; ++i) {
    std::uint32_t smaller = 0;
    for (int j = i + 1; j < k; ++j)
      if (p[j] < p[i]) ++smaller;
    r = r * static_cast<std::uint32_t>(k - i) + smaller;
  }
  return r;
}

const SymmetricGroup& SymmetricGroup::of(int k) {
  static const std::vector<std::unique_ptr<SymmetricGroup>> groups = [] {
    std::vector<std::unique_ptr<SymmetricGroup>> v;
    for (int d = 0; d <= kMaxDegree; ++d) v.emplace_back(new SymmetricGroup(d));
    return v;
  }();
  if (k < 0 || k > kMaxDegree)
    throw DomainError("symmetric groups are tabulated up to degree " + std::to_string(kMaxDegree));
  return *groups[k];
}

std::string perm_to_string(const Perm& p) {
  std::string s = "[";
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i) s += ' ';
    s += std::to_string(p[i]);
  }
  return s + "]";
}

}  // namespace moebius
