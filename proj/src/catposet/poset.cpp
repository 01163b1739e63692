#include <algorithm>
#include <functional>
#include <map>

#include "moebius/catposet.hpp"
#include "moebius/errors.hpp"

namespace moebius::catposet {

FinPoset::FinPoset(std::vector<std::string> labels, const std::vector<std::pair<Index, Index>>& relations)
    : labels_(std::move(labels)) {
  const std::size_t n = labels_.size();
  leq_.assign(n * n, 0);
  for (std::size_t x = 0; x < n; ++x) leq_[x * n + x] = 1;
  for (auto [a, b] : relations) {
    if (a >= n || b >= n) throw StructuralError("poset relation refers to a missing element");
    leq_[a * n + b] = 1;
  }
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      if (leq_[i * n + k])
        for (std::size_t j = 0; j < n; ++j)
          if (leq_[k * n + j]) leq_[i * n + j] = 1;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (leq_[i * n + j] && leq_[j * n + i])
        throw StructuralError("poset relations contain a cycle through " + labels_[i] + " and " + labels_[j]);
  std::map<std::string, int> seen;
  for (const auto& l : labels_)
    if (seen[l]++) throw StructuralError("duplicate poset element " + l);
}

FinPoset FinPoset::from_labels(std::vector<std::string> labels,
                               const std::vector<std::pair<std::string, std::string>>& relations) {
  std::map<std::string, Index> idx;
  for (Index i = 0; i < labels.size(); ++i) idx[labels[i]] = i;
  std::vector<std::pair<Index, Index>> rel;
  for (const auto& [a, b] : relations) {
    auto ia = idx.find(a), ib = idx.find(b);
    if (ia == idx.end() || ib == idx.end())
      throw StructuralError("relation " + a + " <= " + b + " names an unknown element");
    rel.emplace_back(ia->second, ib->second);
  }
  return FinPoset(std::move(labels), rel);
}

FinPoset FinPoset::chain(int n) {
  std::vector<std::string> labels;
  std::vector<std::pair<Index, Index>> rel;
  for (int i = 0; i < n; ++i) {
    labels.push_back(std::to_string(i));
    if (i > 0) rel.emplace_back(i - 1, i);
  }
  return FinPoset(labels, rel);
}

FinPoset FinPoset::antichain(int n) {
  std::vector<std::string> labels;
  for (int i = 0; i < n; ++i) labels.push_back(std::to_string(i));
  return FinPoset(labels, {});
}

std::optional<Index> FinPoset::index(const std::string& label) const {
  for (Index i = 0; i < labels_.size(); ++i)
    if (labels_[i] == label) return i;
  return std::nullopt;
}

std::vector<std::pair<Index, Index>> FinPoset::strict_relations() const {
  std::vector<std::pair<Index, Index>> out;
  for (Index a = 0; a < size(); ++a)
    for (Index b = 0; b < size(); ++b)
      if (less(a, b)) out.emplace_back(a, b);
  return out;
}

bool FinPoset::is_discrete() const {
  for (Index a = 0; a < size(); ++a)
    for (Index b = 0; b < size(); ++b)
      if (less(a, b)) return false;
  return true;
}

int FinPoset::height(Index x) const {
  int h = 0;
  for (Index y = 0; y < size(); ++y)
    if (less(y, x)) h = std::max(h, height(y) + 1);
  return h;
}

Rational poset_mobius_recursive(const FinPoset& P, Index x, Index y) {
  if (!P.leq(x, y)) return 0;
  std::map<Index, Rational> mu;
  std::function<Rational(Index)> rec = [&](Index z) -> Rational {
    auto it = mu.find(z);
    if (it != mu.end()) return it->second;
    Rational v = z == x ? Rational(1) : Rational(0);
    if (z != x)
      for (Index w = 0; w < P.size(); ++w)
        if (P.leq(x, w) && P.less(w, z)) v -= rec(w);
    mu[z] = v;
    return v;
  };
  return rec(y);
}

}  // namespace moebius::catposet
