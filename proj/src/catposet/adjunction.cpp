#include <functional>

#include "moebius/catposet.hpp"
#include "moebius/errors.hpp"

namespace moebius::catposet {

AdjunctionCheck check_adjunction(const CatFunctor& F, const CatFunctor& G) {
  F.validate();
  G.validate();
  if (F.source != G.target || F.target != G.source)
    throw DomainError("F and G do not run between the same two categories");
  const FinCategory& X = *F.source;
  const FinCategory& Y = *F.target;
  AdjunctionCheck r;
  for (Index x = 0; x < X.object_count(); ++x)
    for (Index y = 0; y < Y.object_count(); ++y)
      if (Y.hom(F.on_objects[x], y).size() != X.hom(x, G.on_objects[y]).size()) {
        r.pair = {{x, y}};
        r.witness = "|Hom(F" + X.object_label(x) + ", " + Y.object_label(y) + ")| = " +
                    std::to_string(Y.hom(F.on_objects[x], y).size()) + " but |Hom(" + X.object_label(x) +
                    ", G" + Y.object_label(y) + ")| = " + std::to_string(X.hom(x, G.on_objects[y]).size());
        return r;
      }

  // universal arrows x -> GFx
  std::vector<std::vector<Index>> candidates(X.object_count());
  for (Index x = 0; x < X.object_count(); ++x) {
    const Index Fx = F.on_objects[x];
    for (Index eta : X.hom(x, G.on_objects[Fx])) {
      bool universal = true;
      for (Index y = 0; y < Y.object_count() && universal; ++y) {
        std::vector<char> hit(X.morphism_count(), 0);
        for (Index h : Y.hom(Fx, y)) {
          const Index t = X.compose(G.on_morphisms[h], eta);
          if (hit[t]) universal = false;
          hit[t] = 1;
        }
      }
      if (universal) candidates[x].push_back(eta);
    }
    if (candidates[x].empty()) {
      r.pair = {{x, F.on_objects[x]}};
      r.witness = "no universal arrow " + X.object_label(x) + " -> GF" + X.object_label(x);
      return r;
    }
  }

  // choose units so that F(a) is the induced map on every arrow
  std::vector<Index> eta(X.object_count(), kNone);
  std::string failure;
  auto natural_at = [&](Index a) {
    const Index x = X.source(a), x2 = X.target(a);
    return X.compose(G.on_morphisms[F.on_morphisms[a]], eta[x]) == X.compose(eta[x2], a);
  };
  std::function<bool(Index)> assign = [&](Index x) -> bool {
    if (x == X.object_count()) return true;
    for (Index c : candidates[x]) {
      eta[x] = c;
      bool ok = true;
      for (Index a = 0; a < X.morphism_count() && ok; ++a)
        if (X.source(a) <= x && X.target(a) <= x && !natural_at(a)) {
          ok = false;
          failure = "unit is not natural at " + X.morphism(a).label;
        }
      if (ok && assign(x + 1)) return true;
    }
    eta[x] = kNone;
    return false;
  };
  if (!assign(0)) {
    r.witness = failure;
    return r;
  }
  r.ok = true;
  return r;
}

RotaSides rota_direct(const Adjunction& adj, Index x, Index y, std::optional<int> chain_bound) {
  const FinCategory& X = *adj.F.source;
  const FinCategory& Y = *adj.F.target;
  if (x >= X.object_count() || y >= Y.object_count()) throw DomainError("rota_direct: object out of range");
  RotaSides s{0, 0};
  for (Index f = 0; f < X.morphism_count(); ++f)
    if (X.source(f) == x && adj.F.on_objects[X.target(f)] == y) s.lhs += classical_mobius(X, f, chain_bound);
  for (Index g = 0; g < Y.morphism_count(); ++g)
    if (Y.target(g) == y && adj.G.on_objects[Y.source(g)] == x) s.rhs += classical_mobius(Y, g, chain_bound);
  return s;
}

}  // namespace moebius::catposet
