#pragma once

// Composable chains in a finite category, stored as {start object, f_1, ..., f_n}.

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "moebius/catposet.hpp"

namespace moebius::catposet::chains {

using Chain = std::vector<Index>;

inline Index vertex(const FinCategory& C, const Chain& c, std::size_t k) {
  return k == 0 ? c[0] : C.target(c[k]);
}

inline std::size_t length(const Chain& c) { return c.size() - 1; }

// Deletes vertex k, composing the two arrows at an inner vertex.
inline Chain delete_vertex(const FinCategory& C, const Chain& c, std::size_t k) {
  const std::size_t n = length(c);
  Chain out;
  if (k == 0) {
    out.push_back(vertex(C, c, 1));
    out.insert(out.end(), c.begin() + 2, c.end());
  } else if (k == n) {
    out.assign(c.begin(), c.end() - 1);
  } else {
    out.assign(c.begin(), c.begin() + k);
    out.push_back(C.compose(c[k + 1], c[k]));
    out.insert(out.end(), c.begin() + k + 2, c.end());
  }
  return out;
}

// Repeats vertex k with an identity arrow.
inline Chain insert_identity(const FinCategory& C, const Chain& c, std::size_t k) {
  Chain out(c.begin(), c.begin() + k + 1);
  out.push_back(C.identity(vertex(C, c, k)));
  out.insert(out.end(), c.begin() + k + 1, c.end());
  return out;
}

// Chains of n arrows whose k-th vertex satisfies allowed(k, object).
inline std::vector<Chain> enumerate(const FinCategory& C, std::size_t n,
                                    const std::function<bool(std::size_t, Index)>& allowed) {
  std::vector<Chain> level;
  for (Index x = 0; x < C.object_count(); ++x)
    if (allowed(0, x)) level.push_back({x});
  for (std::size_t k = 1; k <= n; ++k) {
    std::vector<Chain> next;
    for (const auto& c : level) {
      const Index last = vertex(C, c, k - 1);
      for (Index y = 0; y < C.object_count(); ++y) {
        if (!allowed(k, y)) continue;
        for (Index g : C.hom(last, y)) {
          Chain d = c;
          d.push_back(g);
          next.push_back(std::move(d));
        }
      }
    }
    level = std::move(next);
  }
  return level;
}

inline std::string label(const FinCategory& C, const Chain& c) {
  if (c.size() == 1) return C.object_label(c[0]);
  std::string s;
  for (std::size_t k = 1; k < c.size(); ++k) s += (k > 1 ? "|" : "") + C.morphism(c[k]).label;
  return s;
}

struct ChainLevel {
  std::vector<Chain> chains;
  std::map<Chain, groupoid::ObjectId> index;
  groupoid::GroupoidPtr groupoid;

  groupoid::ObjectId at(const Chain& c) const { return index.at(c); }
};

inline ChainLevel make_level(const FinCategory& C, std::vector<Chain> chains, const std::string& name) {
  ChainLevel L;
  L.chains = std::move(chains);
  std::vector<std::string> labels;
  for (groupoid::ObjectId i = 0; i < L.chains.size(); ++i) {
    L.index.emplace(L.chains[i], i);
    labels.push_back(label(C, L.chains[i]));
  }
  L.groupoid = groupoid::discrete_groupoid(std::move(labels), name);
  return L;
}

// Functor between discrete chain levels induced by a map on chains.
inline groupoid::FunctorPtr chain_functor(const ChainLevel& from, const ChainLevel& to,
                                          const std::function<Chain(const Chain&)>& fn) {
  auto F = std::make_shared<groupoid::GroupoidFunctor>();
  F->source = from.groupoid;
  F->target = to.groupoid;
  for (const auto& c : from.chains) F->on_objects.push_back(to.at(fn(c)));
  F->on_morphisms = F->on_objects;
  return F;
}

}  // namespace moebius::catposet::chains
