#pragma once

#include <algorithm>
#include <random>
#include <string>
#include <vector>

#include "moebius/catposet.hpp"

namespace moebius::testing {

using catposet::CategoryPtr;
using catposet::FinPoset;
using catposet::Index;

// Random order: a random DAG on n points (edges only from lower to higher
// index under a random relabelling), closed transitively.
inline FinPoset random_poset(std::mt19937& rng, int n, double p = 0.35) {
  std::vector<int> perm(n);
  for (int i = 0; i < n; ++i) perm[i] = i;
  std::shuffle(perm.begin(), perm.end(), rng);
  std::bernoulli_distribution edge(p);
  std::vector<std::string> labels;
  for (int i = 0; i < n; ++i) labels.push_back("p" + std::to_string(i));
  std::vector<std::pair<Index, Index>> rel;
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      if (edge(rng)) rel.emplace_back(perm[a], perm[b]);
  return FinPoset(std::move(labels), rel);
}

// Free category on a random acyclic quiver (parallel arrows allowed): the
// morphisms are the nonempty paths, composition is concatenation.
inline CategoryPtr random_free_category(std::mt19937& rng, int objects, int arrows, const std::string& name) {
  std::uniform_int_distribution<int> pick(0, objects - 1);
  struct Edge {
    int s, t;
  };
  std::vector<Edge> edges;
  while (static_cast<int>(edges.size()) < arrows) {
    int a = pick(rng), b = pick(rng);
    if (a == b) continue;
    if (a > b) std::swap(a, b);
    edges.push_back({a, b});
  }
  std::vector<std::vector<int>> paths;  // edge indices
  for (int e = 0; e < arrows; ++e) paths.push_back({e});
  for (std::size_t k = 0; k < paths.size(); ++k)
    for (int e = 0; e < arrows; ++e)
      if (edges[paths[k].back()].t == edges[e].s) {
        auto p = paths[k];
        p.push_back(e);
        paths.push_back(p);
      }
  auto label = [](const std::vector<int>& p) {
    std::string s;
    for (std::size_t i = 0; i < p.size(); ++i) s += (i ? "." : "") + std::string("g") + std::to_string(p[i]);
    return s;
  };
  catposet::CategoryBuilder b(name);
  for (int x = 0; x < objects; ++x) b.add_object("o" + std::to_string(x));
  for (const auto& p : paths)
    b.add_morphism(label(p), "o" + std::to_string(edges[p.front()].s), "o" + std::to_string(edges[p.back()].t));
  for (const auto& f : paths)
    for (const auto& g : paths)
      if (edges[f.back()].t == edges[g.front()].s) {
        auto gf = f;
        gf.insert(gf.end(), g.begin(), g.end());
        b.set_composite(label(g), label(f), label(gf));
      }
  return b.build();
}

// Ten random posets followed by ten random free categories.
inline std::vector<CategoryPtr> random_category_battery(std::uint32_t seed) {
  std::mt19937 rng(seed);
  std::vector<CategoryPtr> out;
  for (int i = 0; i < 10; ++i)
    out.push_back(catposet::category_of(random_poset(rng, 3 + i % 3), "poset" + std::to_string(i)));
  for (int i = 0; i < 10; ++i) out.push_back(random_free_category(rng, 3 + i % 2, 3 + i % 3, "free" + std::to_string(i)));
  return out;
}

}  // namespace moebius::testing
