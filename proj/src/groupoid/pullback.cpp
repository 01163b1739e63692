#include <algorithm>
#include <numeric>
#include <set>

#include "moebius/errors.hpp"
#include "moebius/groupoid.hpp"

namespace moebius::groupoid {

namespace {

std::uint64_t pair_key(std::uint32_t a, std::uint32_t b) { return (std::uint64_t(a) << 32) | b; }

std::vector<MorphismId> automorphisms(const FiniteGroupoid& G, ObjectId x) { return G.hom(x, x); }

struct UnionFind {
  std::vector<std::uint32_t> parent;
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0u); }
  std::uint32_t find(std::uint32_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(std::uint32_t a, std::uint32_t b) { parent[find(a)] = find(b); }
};

}  // namespace

HomotopyPullback homotopy_pullback(const GroupoidFunctor& f, const GroupoidFunctor& g) {
  if (f.target != g.target) throw DomainError("cospan legs have different codomains");
  const FiniteGroupoid& A = *f.source;
  const FiniteGroupoid& B = *g.source;
  const FiniteGroupoid& C = *f.target;
  const IsoClassTable& Ct = C.classes();
  std::vector<std::vector<ObjectId>> b_over(Ct.size());
  for (ObjectId b = 0; b < B.object_count(); ++b) b_over[Ct.class_of[g(b)]].push_back(b);

  HomotopyPullback pb;
  TupleData t;
  t.name = "pullback(" + A.name() + ", " + B.name() + ")";
  t.factors = {f.source, g.source};
  std::unordered_map<std::uint64_t, std::vector<MorphismId>> homs;
  for (ObjectId a = 0; a < A.object_count(); ++a) {
    for (ObjectId b : b_over[Ct.class_of[f(a)]]) {
      auto h = C.hom(f(a), g(b));
      pb.base[pair_key(a, b)] = static_cast<ObjectId>(t.components.size());
      for (MorphismId phi : h) {
        t.components.push_back({a, b});
        t.labels.push_back("(" + A.object_label(a) + ", " + B.object_label(b) + ", " +
                           C.morphism_label(phi) + ")");
        pb.a_of.push_back(a);
        pb.b_of.push_back(b);
        pb.phi.push_back(phi);
      }
      homs.emplace(pair_key(a, b), std::move(h));
    }
  }
  t.target = [&](ObjectId obj, const std::vector<MorphismId>& ms) -> ObjectId {
    // (a, b, phi) --(alpha, beta)--> (a', b', g(beta) o phi o f(alpha)^-1)
    const MorphismId alpha = ms[0], beta = ms[1];
    const ObjectId a2 = A.target(alpha), b2 = B.target(beta);
    const MorphismId phi2 = C.compose_unchecked(
        g.map(beta), C.compose_unchecked(pb.phi[obj], C.inverse(f.map(alpha))));
    const auto& h = homs.at(pair_key(a2, b2));
    return pb.base.at(pair_key(a2, b2)) +
           static_cast<ObjectId>(std::find(h.begin(), h.end(), phi2) - h.begin());
  };
  pb.groupoid = tuple_groupoid(t);

  auto to_a = std::make_shared<GroupoidFunctor>();
  auto to_b = std::make_shared<GroupoidFunctor>();
  to_a->source = to_b->source = pb.groupoid;
  to_a->target = f.source;
  to_b->target = g.source;
  to_a->on_objects = pb.a_of;
  to_b->on_objects = pb.b_of;
  for (MorphismId m = 0; m < pb.groupoid->morphism_count(); ++m) {
    const ObjectId x = pb.groupoid->source(m);
    const std::uint32_t db = B.out_degree(pb.b_of[x]);
    const std::uint32_t pos = pb.groupoid->out_position(m);
    to_a->on_morphisms.push_back(A.out_begin(pb.a_of[x]) + pos / db);
    to_b->on_morphisms.push_back(B.out_begin(pb.b_of[x]) + pos % db);
  }
  pb.to_a = to_a;
  pb.to_b = to_b;
  return pb;
}

void require_commutes(const Square& sq) {
  const auto label = [&] { return sq.description.empty() ? std::string("square") : sq.description; };
  if (sq.p->source != sq.q->source || sq.p->target != sq.f->source ||
      sq.q->target != sq.g->source || sq.f->target != sq.g->target)
    throw DomainError(label() + ": functors do not form a square");
  const FiniteGroupoid& P = *sq.p->source;
  for (ObjectId x = 0; x < P.object_count(); ++x)
    if ((*sq.f)((*sq.p)(x)) != (*sq.g)((*sq.q)(x)))
      throw DomainError(label() + " does not commute at object " + P.object_label(x));
  for (MorphismId m = 0; m < P.morphism_count(); ++m)
    if (sq.f->map(sq.p->map(m)) != sq.g->map(sq.q->map(m)))
      throw DomainError(label() + " does not commute at morphism " + P.morphism_label(m));
}

FunctorPtr comparison_functor(const Square& sq, const HomotopyPullback& pb) {
  require_commutes(sq);
  const FiniteGroupoid& P = *sq.p->source;
  const FiniteGroupoid& A = *sq.f->source;
  const FiniteGroupoid& B = *sq.g->source;
  const FiniteGroupoid& C = *sq.f->target;
  auto K = std::make_shared<GroupoidFunctor>();
  K->source = sq.p->source;
  K->target = pb.groupoid;
  for (ObjectId x = 0; x < P.object_count(); ++x) {
    const ObjectId a = (*sq.p)(x), b = (*sq.q)(x);
    const ObjectId base = pb.base.at(pair_key(a, b));
    const MorphismId id = C.identity((*sq.f)(a));
    ObjectId y = base;
    while (pb.phi[y] != id) ++y;
    K->on_objects.push_back(y);
  }
  for (MorphismId m = 0; m < P.morphism_count(); ++m) {
    const MorphismId alpha = sq.p->map(m), beta = sq.q->map(m);
    const ObjectId y = K->on_objects[P.source(m)];
    const std::uint32_t pos = A.out_position(alpha) * B.out_degree(pb.b_of[y]) + B.out_position(beta);
    K->on_morphisms.push_back(pb.groupoid->out_begin(y) + pos);
  }
  return K;
}

CheckResult is_pullback_square(const Square& sq) {
  require_commutes(sq);
  const FiniteGroupoid& P = *sq.p->source;
  const FiniteGroupoid& A = *sq.f->source;
  const FiniteGroupoid& B = *sq.g->source;
  const FiniteGroupoid& C = *sq.f->target;
  const GroupoidFunctor& f = *sq.f;
  const GroupoidFunctor& g = *sq.g;
  const IsoClassTable& Pt = P.classes();
  const IsoClassTable& At = A.classes();
  const IsoClassTable& Bt = B.classes();
  const IsoClassTable& Ct = C.classes();
  const std::string where = sq.description.empty() ? "" : sq.description + ": ";

  // pi_0 of the iso-comma groupoid: for each pair of classes ([a], [b]) over the
  // same class of C, the orbits of Aut(a) x Aut(b) on Hom(f a, g b).
  struct PairOrbits {
    ObjectId a, b;
    std::vector<MorphismId> homs;
    std::vector<std::uint32_t> orbit;  // orbit id per hom element
    std::uint32_t orbit_count = 0;
    std::vector<std::uint32_t> orbit_size;
    std::vector<ClassId> hit_by;  // P-class hitting each orbit
  };
  std::vector<std::vector<ClassId>> b_classes_over(Ct.size());
  for (ClassId cb = 0; cb < Bt.size(); ++cb)
    b_classes_over[Ct.class_of[g(Bt.representative[cb])]].push_back(cb);
  std::unordered_map<std::uint64_t, PairOrbits> pairs;
  const auto orbits_for = [&](ClassId ca, ClassId cb) -> PairOrbits& {
    auto it = pairs.find(pair_key(ca, cb));
    if (it != pairs.end()) return it->second;
    PairOrbits po;
    po.a = At.representative[ca];
    po.b = Bt.representative[cb];
    po.homs = C.hom(f(po.a), g(po.b));
    UnionFind uf(po.homs.size());
    const auto autA = automorphisms(A, po.a);
    const auto autB = automorphisms(B, po.b);
    for (std::size_t i = 0; i < po.homs.size(); ++i)
      for (MorphismId alpha : autA) {
        const MorphismId right = C.compose_unchecked(po.homs[i], C.inverse(f.map(alpha)));
        for (MorphismId beta : autB) {
          const MorphismId phi2 = C.compose_unchecked(g.map(beta), right);
          const auto j = std::find(po.homs.begin(), po.homs.end(), phi2) - po.homs.begin();
          uf.unite(static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j));
        }
      }
    std::unordered_map<std::uint32_t, std::uint32_t> ids;
    po.orbit.resize(po.homs.size());
    for (std::size_t i = 0; i < po.homs.size(); ++i) {
      auto [pos, fresh] = ids.emplace(uf.find(static_cast<std::uint32_t>(i)), po.orbit_count);
      if (fresh) {
        ++po.orbit_count;
        po.orbit_size.push_back(0);
      }
      po.orbit[i] = pos->second;
      ++po.orbit_size[pos->second];
    }
    po.hit_by.assign(po.orbit_count, kNone);
    return pairs.emplace(pair_key(ca, cb), std::move(po)).first->second;
  };

  for (ClassId cp = 0; cp < Pt.size(); ++cp) {
    const ObjectId x = Pt.representative[cp];
    const ObjectId a = (*sq.p)(x), b = (*sq.q)(x);
    const ClassId ca = At.class_of[a], cb = Bt.class_of[b];
    PairOrbits& po = orbits_for(ca, cb);
    // transport (a, b, id) to the representatives
    const MorphismId ta = At.to_rep[a], tb = Bt.to_rep[b];
    const MorphismId phi = C.compose_unchecked(g.map(tb), C.inverse(f.map(ta)));
    const auto idx = std::find(po.homs.begin(), po.homs.end(), phi) - po.homs.begin();
    const std::uint32_t orbit = po.orbit[idx];
    if (po.hit_by[orbit] != kNone)
      return CheckResult::fail(Witness::Kind::ClassCollision,
                               where + "corner objects " +
                                   P.object_label(Pt.representative[po.hit_by[orbit]]) + " and " +
                                   P.object_label(x) + " map to the same pullback class");
    po.hit_by[orbit] = cp;

    // Aut_P(x) -> stabiliser of (a, b, id), conjugated to the representatives
    const std::uint64_t stab =
        At.aut_order[ca] * Bt.aut_order[cb] / po.orbit_size[orbit];
    std::set<std::pair<MorphismId, MorphismId>> images;
    for (MorphismId m : automorphisms(P, x)) {
      const MorphismId alpha =
          A.compose_unchecked(A.compose_unchecked(ta, sq.p->map(m)), A.inverse(ta));
      const MorphismId beta =
          B.compose_unchecked(B.compose_unchecked(tb, sq.q->map(m)), B.inverse(tb));
      if (!images.insert({alpha, beta}).second)
        return CheckResult::fail(Witness::Kind::NotFaithful,
                                 where + "two automorphisms of " + P.object_label(x) +
                                     " induce the same automorphism of its pullback image");
    }
    if (images.size() != stab)
      return CheckResult::fail(Witness::Kind::NotFull,
                               where + "pullback object over " + P.object_label(x) + " has " +
                                   std::to_string(stab) + " automorphisms, corner has " +
                                   std::to_string(images.size()));
  }

  // every orbit over every compatible pair of classes must be hit
  for (ClassId ca = 0; ca < At.size(); ++ca)
    for (ClassId cb : b_classes_over[Ct.class_of[f(At.representative[ca])]]) {
      if (sq.truncation) {
        const auto& t = *sq.truncation;
        const ObjectId a = At.representative[ca], b = Bt.representative[cb];
        const std::int64_t grade = std::int64_t{t.grade_a(a)} + t.grade_b(b) - t.grade_c(f(a));
        if (grade > std::int64_t{t.bound}) continue;
      }
      PairOrbits& po = orbits_for(ca, cb);
      for (std::uint32_t o = 0; o < po.orbit_count; ++o)
        if (po.hit_by[o] == kNone) {
          const auto i = std::find(po.orbit.begin(), po.orbit.end(), o) - po.orbit.begin();
          return CheckResult::fail(Witness::Kind::MissingClass,
                                   where + "no corner object over (" + A.object_label(po.a) + ", " +
                                       B.object_label(po.b) + ", " + C.morphism_label(po.homs[i]) +
                                       ")");
        }
    }
  return CheckResult::pass();
}

}  // namespace moebius::groupoid
