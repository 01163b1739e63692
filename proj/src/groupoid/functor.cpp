#include <algorithm>
#include <set>

#include "moebius/errors.hpp"
#include "moebius/groupoid.hpp"

namespace moebius::groupoid {

void GroupoidFunctor::validate() const {
  const auto fail = [this](const std::string& what) {
    throw StructuralError("functor " + source->name() + " -> " + target->name() + ": " + what);
  };
  if (on_objects.size() != source->object_count() || on_morphisms.size() != source->morphism_count())
    fail("tables have the wrong size");
  for (ObjectId x = 0; x < source->object_count(); ++x) {
    if (on_objects[x] >= target->object_count()) fail("object image out of range");
    if (on_morphisms[source->identity(x)] != target->identity(on_objects[x]))
      fail("identity of " + source->object_label(x) + " is not preserved");
  }
  for (MorphismId f = 0; f < source->morphism_count(); ++f) {
    const MorphismId Ff = on_morphisms[f];
    if (Ff >= target->morphism_count() || target->source(Ff) != on_objects[source->source(f)] ||
        target->target(Ff) != on_objects[source->target(f)])
      fail("image of " + source->morphism_label(f) + " has the wrong endpoints");
  }
  for (MorphismId f = 0; f < source->morphism_count(); ++f) {
    const ObjectId b = source->target(f);
    for (MorphismId g = source->out_begin(b); g < source->out_end(b); ++g)
      if (on_morphisms[source->compose_unchecked(g, f)] !=
          target->compose_unchecked(on_morphisms[g], on_morphisms[f]))
        fail("composition not preserved at " + source->morphism_label(g) + " o " +
             source->morphism_label(f));
  }
}

bool GroupoidFunctor::same_as(const GroupoidFunctor& other) const {
  return source == other.source && target == other.target && on_objects == other.on_objects &&
         on_morphisms == other.on_morphisms;
}

FunctorPtr compose(const GroupoidFunctor& G, const GroupoidFunctor& F) {
  if (F.target != G.source) throw DomainError("functors are not composable");
  auto H = std::make_shared<GroupoidFunctor>();
  H->source = F.source;
  H->target = G.target;
  H->on_objects.resize(F.on_objects.size());
  H->on_morphisms.resize(F.on_morphisms.size());
  for (std::size_t x = 0; x < F.on_objects.size(); ++x) H->on_objects[x] = G.on_objects[F.on_objects[x]];
  for (std::size_t m = 0; m < F.on_morphisms.size(); ++m)
    H->on_morphisms[m] = G.on_morphisms[F.on_morphisms[m]];
  return H;
}

FunctorPtr identity_functor(const GroupoidPtr& G) {
  auto F = std::make_shared<GroupoidFunctor>();
  F->source = G;
  F->target = G;
  F->on_objects.resize(G->object_count());
  F->on_morphisms.resize(G->morphism_count());
  for (ObjectId x = 0; x < G->object_count(); ++x) F->on_objects[x] = x;
  for (MorphismId m = 0; m < G->morphism_count(); ++m) F->on_morphisms[m] = m;
  return F;
}

FunctorPtr restrict_functor(const GroupoidFunctor& F, const Subgroupoid& src, const Subgroupoid& tgt) {
  auto R = std::make_shared<GroupoidFunctor>();
  R->source = src.groupoid;
  R->target = tgt.groupoid;
  for (ObjectId x : src.parent_object) {
    const ObjectId y = tgt.local_object[F.on_objects[x]];
    if (y == kNone)
      throw StructuralError("restriction leaves the target subgroupoid at " +
                            F.source->object_label(x));
    R->on_objects.push_back(y);
  }
  // local morphisms of the target, looked up through their parent ids
  std::unordered_map<MorphismId, MorphismId> local;
  for (MorphismId m = 0; m < tgt.parent_morphism.size(); ++m) local[tgt.parent_morphism[m]] = m;
  for (MorphismId m : src.parent_morphism) R->on_morphisms.push_back(local.at(F.on_morphisms[m]));
  return R;
}

// ---------------------------------------------------------------------------

namespace {

// pi_0-injectivity plus bijectivity on automorphism groups.
CheckResult fully_faithful(const GroupoidFunctor& F) {
  const IsoClassTable& A = F.source->classes();
  const IsoClassTable& B = F.target->classes();
  std::vector<ClassId> preimage(B.size(), kNone);
  for (ClassId c = 0; c < A.size(); ++c) {
    const ObjectId a = A.representative[c];
    const ClassId bc = B.class_of[F(a)];
    if (preimage[bc] != kNone)
      return CheckResult::fail(
          Witness::Kind::ClassCollision,
          "non-isomorphic objects " + F.source->object_label(A.representative[preimage[bc]]) +
              " and " + F.source->object_label(a) + " have isomorphic images");
    preimage[bc] = c;
    std::set<MorphismId> images;
    for (MorphismId m = F.source->out_begin(a); m < F.source->out_end(a); ++m) {
      if (F.source->target(m) != a) continue;
      if (!images.insert(F.map(m)).second)
        return CheckResult::fail(Witness::Kind::NotFaithful,
                                 "distinct automorphisms of " + F.source->object_label(a) +
                                     " have the same image " + F.target->morphism_label(F.map(m)));
    }
    if (images.size() != B.aut_order[bc])
      return CheckResult::fail(Witness::Kind::NotFull,
                               "automorphisms of " + F.target->object_label(F(a)) +
                                   " are not all hit from " + F.source->object_label(a));
  }
  return CheckResult::pass();
}

}  // namespace

CheckResult is_monomorphism(const GroupoidFunctor& F) { return fully_faithful(F); }

CheckResult is_equivalence(const GroupoidFunctor& F) {
  CheckResult ff = fully_faithful(F);
  if (!ff) return ff;
  const IsoClassTable& A = F.source->classes();
  const IsoClassTable& B = F.target->classes();
  std::vector<bool> hit(B.size(), false);
  for (ClassId c = 0; c < A.size(); ++c) hit[B.class_of[F(A.representative[c])]] = true;
  for (ClassId b = 0; b < B.size(); ++b)
    if (!hit[b])
      return CheckResult::fail(Witness::Kind::NotEssentiallySurjective,
                               "no object maps to the class of " +
                                   F.target->object_label(B.representative[b]));
  return CheckResult::pass();
}

// ---------------------------------------------------------------------------

Fiber fiber(const GroupoidFunctor& F, ObjectId c) {
  const FiniteGroupoid& A = *F.source;
  const FiniteGroupoid& C = *F.target;
  std::vector<std::uint32_t> start(A.object_count() + 1, 0);
  std::vector<std::vector<MorphismId>> homs(A.object_count());
  TupleData t;
  t.name = "fiber(" + C.object_label(c) + ")";
  t.factors = {F.source};
  Fiber out;
  for (ObjectId a = 0; a < A.object_count(); ++a) {
    start[a] = static_cast<std::uint32_t>(t.components.size());
    homs[a] = C.hom(F(a), c);
    for (MorphismId phi : homs[a]) {
      t.components.push_back({a});
      t.labels.push_back("(" + A.object_label(a) + ", " + C.morphism_label(phi) + ")");
      out.phi.push_back(phi);
    }
  }
  const auto& phis = out.phi;
  t.target = [&](ObjectId obj, const std::vector<MorphismId>& ms) -> ObjectId {
    // (a, phi) --alpha--> (a', phi o F(alpha)^-1)
    const MorphismId alpha = ms[0];
    const ObjectId a2 = A.target(alpha);
    const MorphismId phi2 = C.compose_unchecked(phis[obj], C.inverse(F.map(alpha)));
    const auto& h = homs[a2];
    return start[a2] + static_cast<std::uint32_t>(std::find(h.begin(), h.end(), phi2) - h.begin());
  };
  out.groupoid = tuple_groupoid(t);
  auto proj = std::make_shared<GroupoidFunctor>();
  proj->source = out.groupoid;
  proj->target = F.source;
  for (ObjectId x = 0; x < out.groupoid->object_count(); ++x)
    proj->on_objects.push_back(t.components[x][0]);
  for (MorphismId m = 0; m < out.groupoid->morphism_count(); ++m) {
    // single factor: the tuple position is the out-position in A
    const ObjectId a = t.components[out.groupoid->source(m)][0];
    proj->on_morphisms.push_back(A.out_begin(a) + out.groupoid->out_position(m));
  }
  out.projection = proj;
  return out;
}

Rational fiber_cardinality(const GroupoidFunctor& F, ObjectId c) {
  const IsoClassTable& A = F.source->classes();
  const IsoClassTable& C = F.target->classes();
  const ClassId cc = C.class_of[c];
  Rational total = 0;
  for (ClassId k = 0; k < A.size(); ++k)
    if (C.class_of[F(A.representative[k])] == cc)
      total += Rational(static_cast<unsigned long>(C.aut_order[cc]),
                        static_cast<unsigned long>(A.aut_order[k]));
  total.canonicalize();
  return total;
}

}  // namespace moebius::groupoid
