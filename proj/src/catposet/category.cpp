#include <algorithm>
#include <map>

#include "moebius/catposet.hpp"
#include "moebius/errors.hpp"

namespace moebius::catposet {

Index FinCategory::compose(Index g, Index f) const {
  if (target(f) != source(g))
    throw DomainError("cannot compose " + morphism(g).label + " after " + morphism(f).label);
  return table_[g * morphism_count() + f];
}

std::optional<Index> FinCategory::find_object(const std::string& label) const {
  for (Index x = 0; x < object_count(); ++x)
    if (objects_[x] == label) return x;
  return std::nullopt;
}

std::optional<Index> FinCategory::find_morphism(const std::string& label) const {
  for (Index m = 0; m < morphism_count(); ++m)
    if (morphisms_[m].label == label) return m;
  return std::nullopt;
}

void FinCategory::validate() const {
  const std::size_t M = morphism_count();
  for (Index f = 0; f < M; ++f) {
    if (compose(identity(target(f)), f) != f || compose(f, identity(source(f))) != f)
      throw StructuralError("identity law fails at " + morphism(f).label);
  }
  for (Index f = 0; f < M; ++f)
    for (Index y = 0; y < object_count(); ++y)
      for (Index g : hom(target(f), y)) {
        const Index gf = compose(g, f);
        if (source(gf) != source(f) || target(gf) != target(g))
          throw StructuralError("composite " + morphism(gf).label + " has wrong endpoints");
        for (Index z = 0; z < object_count(); ++z)
          for (Index h : hom(y, z))
            if (compose(h, gf) != compose(compose(h, g), f))
              throw StructuralError("associativity fails at (" + morphism(h).label + ", " + morphism(g).label +
                                    ", " + morphism(f).label + ")");
      }
}

Index CategoryBuilder::add_object(const std::string& label) {
  for (const auto& o : objects_)
    if (o == label) throw StructuralError("duplicate object " + label);
  objects_.push_back(label);
  return static_cast<Index>(objects_.size() - 1);
}

Index CategoryBuilder::add_morphism(const std::string& label, const std::string& source,
                                    const std::string& target) {
  auto find = [&](const std::string& o) {
    for (Index x = 0; x < objects_.size(); ++x)
      if (objects_[x] == o) return x;
    throw StructuralError("morphism " + label + " refers to unknown object " + o);
  };
  for (const auto& m : morphisms_)
    if (m.label == label) throw StructuralError("duplicate morphism " + label);
  if (label.rfind("id_", 0) == 0) throw StructuralError("morphism labels starting with id_ are reserved");
  morphisms_.push_back({label, find(source), find(target)});
  return static_cast<Index>(morphisms_.size() - 1);
}

void CategoryBuilder::set_composite(const std::string& g, const std::string& f, const std::string& gf) {
  composites_.emplace_back(g, f, gf);
}

CategoryPtr CategoryBuilder::build() const {
  auto C = std::make_shared<FinCategory>();
  C->name_ = name_;
  C->objects_ = objects_;
  const std::size_t n = objects_.size();
  for (Index x = 0; x < n; ++x) {
    C->identity_.push_back(static_cast<Index>(C->morphisms_.size()));
    C->morphisms_.push_back({"id_" + objects_[x], x, x});
  }
  for (const auto& m : morphisms_) C->morphisms_.push_back(m);
  const std::size_t M = C->morphisms_.size();
  std::map<std::string, Index> by_label;
  for (Index m = 0; m < M; ++m) by_label[C->morphisms_[m].label] = m;
  auto lookup = [&](const std::string& l) {
    auto it = by_label.find(l);
    if (it == by_label.end()) throw StructuralError("composition refers to unknown morphism " + l);
    return it->second;
  };
  C->table_.assign(M * M, kNone);
  for (Index f = 0; f < M; ++f) {
    C->table_[C->identity_[C->morphisms_[f].target] * M + f] = f;
    C->table_[f * M + C->identity_[C->morphisms_[f].source]] = f;
  }
  for (const auto& [gl, fl, gfl] : composites_) {
    const Index g = lookup(gl), f = lookup(fl), gf = lookup(gfl);
    if (C->morphisms_[f].target != C->morphisms_[g].source)
      throw StructuralError("composite given for non-composable pair " + gl + ", " + fl);
    Index& slot = C->table_[g * M + f];
    if (slot != kNone && slot != gf) throw StructuralError("conflicting composites for " + gl + " o " + fl);
    slot = gf;
  }
  for (Index f = 0; f < M; ++f)
    for (Index g = 0; g < M; ++g)
      if (C->morphisms_[f].target == C->morphisms_[g].source && C->table_[g * M + f] == kNone)
        throw StructuralError("missing composite " + C->morphisms_[g].label + " o " + C->morphisms_[f].label);
  C->hom_.assign(n * n, {});
  for (Index m = 0; m < M; ++m) C->hom_[C->morphisms_[m].source * n + C->morphisms_[m].target].push_back(m);
  C->validate();
  return C;
}

CategoryPtr category_of(const FinPoset& P, std::string name) {
  CategoryBuilder b(std::move(name));
  for (Index x = 0; x < P.size(); ++x) b.add_object(P.label(x));
  auto rel = P.strict_relations();
  auto label = [&](Index a, Index c) { return a == c ? "id_" + P.label(a) : P.label(a) + "<=" + P.label(c); };
  for (auto [a, c] : rel) b.add_morphism(label(a, c), P.label(a), P.label(c));
  for (auto [a, c] : rel)
    for (auto [c2, e] : rel)
      if (c2 == c) b.set_composite(label(c, e), label(a, c), label(a, e));
  return b.build();
}

void CatFunctor::validate() const {
  if (on_objects.size() != source->object_count() || on_morphisms.size() != source->morphism_count())
    throw StructuralError("functor tables have the wrong size");
  for (Index x : on_objects)
    if (x >= target->object_count()) throw StructuralError("functor sends an object out of range");
  for (Index x = 0; x < source->object_count(); ++x)
    if (on_morphisms[source->identity(x)] != target->identity(on_objects[x]))
      throw StructuralError("functor does not preserve the identity of " + source->object_label(x));
  for (Index f = 0; f < source->morphism_count(); ++f) {
    const Index Ff = on_morphisms[f];
    if (Ff >= target->morphism_count() || target->source(Ff) != on_objects[source->source(f)] ||
        target->target(Ff) != on_objects[source->target(f)])
      throw StructuralError("functor does not preserve the endpoints of " + source->morphism(f).label);
  }
  for (Index f = 0; f < source->morphism_count(); ++f)
    for (Index y = 0; y < source->object_count(); ++y)
      for (Index g : source->hom(source->target(f), y))
        if (on_morphisms[source->compose(g, f)] != target->compose(on_morphisms[g], on_morphisms[f]))
          throw StructuralError("functor does not preserve " + source->morphism(g).label + " o " +
                                source->morphism(f).label);
}

CatFunctor monotone_functor(const CategoryPtr& P, const CategoryPtr& Q, std::vector<Index> on_objects) {
  CatFunctor F{P, Q, std::move(on_objects), {}};
  if (F.on_objects.size() != P->object_count()) throw StructuralError("object map has the wrong size");
  for (Index m = 0; m < P->morphism_count(); ++m) {
    const Index a = F.on_objects[P->source(m)], b = F.on_objects[P->target(m)];
    if (a >= Q->object_count() || b >= Q->object_count()) throw StructuralError("object map out of range");
    const auto& h = Q->hom(a, b);
    if (h.size() != 1)
      throw StructuralError("map is not monotone at " + P->morphism(m).label);
    F.on_morphisms.push_back(h[0]);
  }
  F.validate();
  return F;
}

std::vector<std::vector<Rational>> factorization_counts(const FinCategory& C, int bound) {
  const std::size_t M = C.morphism_count();
  std::vector<std::vector<Rational>> N(bound + 1, std::vector<Rational>(M, 0));
  for (Index x = 0; x < C.object_count(); ++x) N[0][C.identity(x)] = 1;
  for (int k = 1; k <= bound; ++k)
    for (Index h = 0; h < M; ++h) {
      if (N[k - 1][h] == 0) continue;
      for (Index y = 0; y < C.object_count(); ++y)
        for (Index g : C.hom(C.target(h), y))
          if (!C.is_identity(g)) N[k][C.compose(g, h)] += N[k - 1][h];
    }
  return N;
}

MobiusCategoryReport is_mobius_category(const FinCategory& C, std::optional<int> chain_bound) {
  const int bound = chain_bound.value_or(static_cast<int>(C.object_count()));
  const auto N = factorization_counts(C, bound + 1);
  MobiusCategoryReport r;
  for (int k = 1; k <= bound + 1; ++k)
    for (Index f = 0; f < C.morphism_count(); ++f)
      if (N[k][f] != 0) {
        if (k == bound + 1) {
          r.ok = false;
          r.witness = C.morphism(f).label + " has identity-free factorizations of length " +
                      std::to_string(k) + " > " + std::to_string(bound);
          // name a looping arrow when there is one
          for (Index g = 0; g < C.morphism_count(); ++g)
            if (!C.is_identity(g) && C.source(g) == C.target(g)) {
              r.witness += "; non-identity endomorphism " + C.morphism(g).label;
              break;
            }
          return r;
        }
        r.max_length = k;
      }
  r.ok = true;
  return r;
}

Rational classical_mobius(const FinCategory& C, Index f, std::optional<int> chain_bound) {
  const auto report = is_mobius_category(C, chain_bound);
  if (!report.ok) throw CertificateError("not a Mobius category: " + report.witness);
  const auto N = factorization_counts(C, report.max_length);
  Rational mu = 0;
  for (int k = 0; k <= report.max_length; ++k) mu += (k % 2 ? -1 : 1) * N[k][f];
  return mu;
}

std::optional<std::vector<std::uint32_t>> object_heights(const FinCategory& C) {
  const std::size_t n = C.object_count();
  std::vector<std::uint32_t> h(n, 0);
  // Bellman-Ford style relaxation; more than n rounds of change means a cycle
  for (std::size_t round = 0; round <= n; ++round) {
    bool changed = false;
    for (Index m = 0; m < C.morphism_count(); ++m) {
      if (C.is_identity(m)) continue;
      if (C.source(m) == C.target(m)) return std::nullopt;
      if (h[C.target(m)] < h[C.source(m)] + 1) {
        h[C.target(m)] = h[C.source(m)] + 1;
        changed = true;
      }
    }
    if (!changed) return h;
  }
  return std::nullopt;
}

}  // namespace moebius::catposet
