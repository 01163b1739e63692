#include <doctest.h>

#include "moebius/errors.hpp"
#include "moebius/groupoid.hpp"
#include "random_groupoids.hpp"

using namespace moebius;
using namespace moebius::groupoid;
using namespace testing_support;

namespace {

GroupoidPtr point() { return discrete_groupoid({"*"}, "point"); }

const FiniteGroup& C2() {
  static const FiniteGroup g = FiniteGroup::cyclic(2);
  return g;
}

// The group must outlive the groupoid.
GroupoidPtr delooping(const FiniteGroup& G, const std::string& name) {
  ActionData d;
  d.name = name;
  d.labels = {"*"};
  d.group_of = {&G};
  d.act = [](ObjectId, std::uint32_t) { return ObjectId{0}; };
  return action_groupoid(d);
}

FunctorPtr constant_functor(const GroupoidPtr& A, const GroupoidPtr& B, ObjectId b) {
  auto F = std::make_shared<GroupoidFunctor>();
  F->source = A;
  F->target = B;
  F->on_objects.assign(A->object_count(), b);
  F->on_morphisms.assign(A->morphism_count(), B->identity(b));
  return F;
}

// Strict pullback of two equivariant maps of one group, as an action groupoid.
struct StrictPullback {
  GroupoidPtr P;
  FunctorPtr p, q;
  std::vector<std::pair<ObjectId, ObjectId>> pairs;
};

StrictPullback strict_pullback(const RandomMap& left, const RandomMap& right) {
  StrictPullback s;
  const auto& f = *left.F;
  const auto& g = *right.F;
  for (ObjectId a = 0; a < f.source->object_count(); ++a)
    for (ObjectId b = 0; b < g.source->object_count(); ++b)
      if (f(a) == g(b)) s.pairs.push_back({a, b});
  const FiniteGroup* G = left.A.group;
  ActionData d;
  d.name = "P";
  for (auto [a, b] : s.pairs) {
    d.labels.push_back("(" + f.source->object_label(a) + "," + g.source->object_label(b) + ")");
    d.group_of.push_back(G);
  }
  const auto pairs = s.pairs;
  const GSet A = left.A, B = right.A;
  d.act = [pairs, A, B](ObjectId x, std::uint32_t h) {
    const std::pair<ObjectId, ObjectId> t{A.act(pairs[x].first, h), B.act(pairs[x].second, h)};
    return static_cast<ObjectId>(std::find(pairs.begin(), pairs.end(), t) - pairs.begin());
  };
  s.P = action_groupoid(d);
  std::vector<ObjectId> pa, pb;
  for (auto [a, b] : s.pairs) {
    pa.push_back(a);
    pb.push_back(b);
  }
  s.p = equivariant_functor(s.P, f.source, pa);
  s.q = equivariant_functor(s.P, g.source, pb);
  return s;
}

bool via_iso_comma(const Square& sq) {
  const HomotopyPullback pb = homotopy_pullback(*sq.f, *sq.g);
  return static_cast<bool>(is_equivalence(*comparison_functor(sq, pb)));
}

}  // namespace

TEST_CASE("homotopy cardinality of basic groupoids") {
  CHECK(cardinality(*point()) == 1);
  CHECK(cardinality(*delooping(C2(), "BC2")) == Rational(1, 2));
  CHECK(cardinality(*delooping(SymmetricGroup::of(3).group(), "BS3")) == Rational(1, 6));
  CHECK(cardinality(*discrete_groupoid({}, "empty")) == 0);
}

TEST_CASE("groupoid of two-element sets and bijections has cardinality 1/2") {
  // three objects {a,b}, {a,c}, {b,c}; every hom-set has two bijections
  auto G = bijection_groupoid({{"a", "b"}, {"a", "c"}, {"b", "c"}}, "pairs");
  CHECK(G->object_count() == 3);
  CHECK(G->morphism_count() == 18);
  CHECK(G->classes().size() == 1);
  CHECK(G->classes().aut_order[0] == 2);
  CHECK(cardinality(*G) == Rational(1, 2));
  Skeleton s = skeleton(G);
  CHECK(s.groupoid->object_count() == 1);
  CHECK(is_equivalence(*s.collapse));
  CHECK(is_equivalence(*s.inclusion));
  s.collapse->validate();
  s.inclusion->validate();
}

TEST_CASE("explicit builder rejects defective composition tables") {
  SUBCASE("missing composite") {
    GroupoidBuilder b("bad");
    b.add_object("x");
    b.add_morphism("g", "x", "x");
    CHECK_THROWS_AS(b.build(), StructuralError);
  }
  SUBCASE("non-invertible generator") {
    GroupoidBuilder b("bad");
    b.add_object("x");
    b.add_morphism("e", "x", "x");
    b.set_composite("e", "e", "e");  // idempotent, not an isomorphism
    CHECK_THROWS_AS(b.build(), StructuralError);
  }
  SUBCASE("non-associative table") {
    GroupoidBuilder b("bad");
    b.add_object("x");
    b.add_morphism("a", "x", "x");
    b.add_morphism("b", "x", "x");
    // Latin square without associativity
    b.set_composite("a", "a", "id_x");
    b.set_composite("b", "b", "id_x");
    b.set_composite("a", "b", "a");
    b.set_composite("b", "a", "b");
    CHECK_THROWS_AS(b.build(), StructuralError);
  }
  SUBCASE("valid cyclic group of order 3") {
    GroupoidBuilder b("C3");
    b.add_object("x");
    b.add_morphism("r", "x", "x");
    b.add_morphism("r2", "x", "x");
    b.set_composite("r", "r", "r2");
    b.set_composite("r", "r2", "id_x");
    b.set_composite("r2", "r", "id_x");
    b.set_composite("r2", "r2", "r");
    auto G = b.build();
    CHECK(cardinality(*G) == Rational(1, 3));
  }
}

TEST_CASE("fibre of a point over B(C2)") {
  auto BC2 = delooping(C2(), "BC2");
  auto F = constant_functor(point(), BC2, 0);
  Fiber fib = fiber(*F, 0);
  CHECK(fib.groupoid->object_count() == 2);
  CHECK(fib.groupoid->is_discrete());
  CHECK(cardinality(*fib.groupoid) == 2);
  CHECK(fiber_cardinality(*F, 0) == 2);
  fib.projection->validate();
}

TEST_CASE("point over B(C2) pulled back along itself") {
  auto BC2 = delooping(C2(), "BC2");
  auto pt = point();
  auto f = constant_functor(pt, BC2, 0);
  HomotopyPullback pb = homotopy_pullback(*f, *f);
  CHECK(pb.groupoid->object_count() == 2);
  CHECK(cardinality(*pb.groupoid) == 2);
  pb.groupoid->validate();

  SUBCASE("two points over one corner collide") {
    auto two = discrete_groupoid({"u", "v"}, "two");
    Square sq{constant_functor(two, pt, 0), constant_functor(two, pt, 0), f, f, "two points"};
    auto r = is_pullback_square(sq);
    CHECK_FALSE(r);
    CHECK(r.witness->kind == Witness::Kind::ClassCollision);
    CHECK_FALSE(via_iso_comma(sq));
  }
  SUBCASE("fibre of the universal C2-torsor") {
    // E C2 is C2 acting on itself; its strict fibre over the point is two points
    ActionData d;
    d.name = "EC2";
    d.labels = {"e0", "e1"};
    d.group_of = {&C2(), &C2()};
    d.act = [](ObjectId x, std::uint32_t g) { return (x + g) % 2; };
    auto E = action_groupoid(d);
    auto g = equivariant_functor(E, BC2, {0, 0});
    auto two = discrete_groupoid({"u", "v"}, "two");
    auto q = std::make_shared<GroupoidFunctor>();
    q->source = two;
    q->target = E;
    q->on_objects = {0, 1};
    q->on_morphisms = {E->identity(0), E->identity(1)};
    Square sq{constant_functor(two, pt, 0), q, f, g, "torsor fibre"};
    CHECK(is_pullback_square(sq));
    CHECK(via_iso_comma(sq));
  }
  SUBCASE("one point misses a class") {
    Square sq{constant_functor(pt, pt, 0), constant_functor(pt, pt, 0), f, f, "one point"};
    auto r = is_pullback_square(sq);
    CHECK_FALSE(r);
    REQUIRE(r.witness);
    CHECK(r.witness->kind == Witness::Kind::MissingClass);
    CHECK_FALSE(via_iso_comma(sq));
  }
  SUBCASE("B(C2) in the corner is not faithful") {
    Square sq{constant_functor(BC2, pt, 0), constant_functor(BC2, pt, 0), f, f, "BC2 corner"};
    auto r = is_pullback_square(sq);
    CHECK_FALSE(r);
    CHECK(r.witness->kind == Witness::Kind::NotFaithful);
    CHECK_FALSE(via_iso_comma(sq));
  }
}

TEST_CASE("non-commuting square is a domain error") {
  auto two = discrete_groupoid({"u", "v"}, "two");
  auto pt = point();
  auto id2 = identity_functor(two);
  auto swap = std::make_shared<GroupoidFunctor>(*id2);
  swap->on_objects = {1, 0};
  swap->on_morphisms = {1, 0};
  Square sq{constant_functor(pt, two, 0), constant_functor(pt, two, 0), id2, swap, "twisted"};
  CHECK_THROWS_AS(is_pullback_square(sq), DomainError);
}

TEST_CASE("monomorphisms") {
  auto BC2 = delooping(C2(), "BC2");
  auto pt = point();
  CHECK_FALSE(is_monomorphism(*constant_functor(pt, BC2, 0)));
  CHECK_FALSE(is_monomorphism(*constant_functor(BC2, pt, 0)));
  auto two = discrete_groupoid({"u", "v"}, "two");
  auto three = discrete_groupoid({"a", "b", "c"}, "three");
  auto inc = constant_functor(two, three, 0);
  CHECK_FALSE(is_monomorphism(*inc));
  auto inj = std::make_shared<GroupoidFunctor>(*inc);
  inj->on_objects = {0, 2};
  inj->on_morphisms = {0, 2};
  CHECK(is_monomorphism(*inj));
  CHECK_FALSE(is_equivalence(*inj));
}

TEST_CASE("fibre cardinality: class formula agrees with the constructed fibre") {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 40; ++trial) {
    const FiniteGroup& G = random_group(rng);
    RandomMap r = random_map(rng, G);
    r.F->validate();
    for (ObjectId c = 0; c < r.GB->object_count(); ++c) {
      Fiber fib = fiber(*r.F, c);
      CHECK(cardinality(*fib.groupoid) == fiber_cardinality(*r.F, c));
      if (trial < 5) fib.groupoid->validate();
    }
  }
}

TEST_CASE("property: fibre sums recover the source cardinality") {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 100; ++trial) {
    RandomMap r = random_map(rng, random_group(rng));
    Rational total = 0;
    const IsoClassTable& B = r.GB->classes();
    for (ClassId c = 0; c < B.size(); ++c)
      total += fiber_cardinality(*r.F, B.representative[c]) /
               Rational(static_cast<unsigned long>(B.aut_order[c]));
    CHECK(total == cardinality(*r.GA));
  }
}

TEST_CASE("property: cardinality is invariant under skeletalization") {
  std::mt19937 rng(13);
  for (int trial = 0; trial < 100; ++trial) {
    RandomMap r = random_map(rng, random_group(rng));
    Skeleton s = skeleton(r.GA);
    CHECK(is_equivalence(*s.collapse));
    CHECK(cardinality(*s.groupoid) == cardinality(*r.GA));
  }
}

TEST_CASE("property: pullback test agrees with the iso-comma construction") {
  std::mt19937 rng(17);
  for (int trial = 0; trial < 60; ++trial) {
    const FiniteGroup& G = random_group(rng);
    RandomMap left = random_map(rng, G);
    // second map into the same target G-set
    RandomMap right;
    right.B = left.B;
    right.GB = left.GB;
    right.A.group = &G;
    const auto subs = subgroups(G);
    std::vector<std::size_t> targets;
    const std::size_t n = std::uniform_int_distribution<std::size_t>(1, 2)(rng);
    for (std::size_t i = 0; i < n; ++i) {
      const auto& K = subs[std::uniform_int_distribution<std::size_t>(0, subs.size() - 1)(rng)];
      std::vector<std::size_t> options;
      for (std::size_t o = 0; o < left.B.orbit_subgroup.size(); ++o)
        if (std::includes(left.B.orbit_subgroup[o].begin(), left.B.orbit_subgroup[o].end(),
                          K.begin(), K.end()))
          options.push_back(o);
      targets.push_back(options[std::uniform_int_distribution<std::size_t>(0, options.size() - 1)(rng)]);
      add_orbit(right.A, K);
    }
    right.GA = groupoid_of(right.A, "c");
    right.F = equivariant_functor(right.GA, right.GB, coset_projection(right.A, right.B, targets));

    StrictPullback s = strict_pullback(left, right);
    Square sq{s.p, s.q, left.F, right.F, "strict"};
    CHECK(is_pullback_square(sq));
    CHECK(via_iso_comma(sq));

    if (s.P->object_count() > 0) {
      // drop the orbit of object 0 from the corner
      std::vector<bool> keep(s.P->object_count(), true);
      const ClassId c0 = s.P->classes().class_of[0];
      for (ObjectId x = 0; x < s.P->object_count(); ++x)
        if (s.P->classes().class_of[x] == c0) keep[x] = false;
      Subgroupoid sub = full_subgroupoid(s.P, keep);
      auto inc = std::make_shared<GroupoidFunctor>();
      inc->source = sub.groupoid;
      inc->target = s.P;
      inc->on_objects = sub.parent_object;
      inc->on_morphisms = sub.parent_morphism;
      Square dropped{compose(*s.p, *inc), compose(*s.q, *inc), left.F, right.F, "dropped"};
      auto r = is_pullback_square(dropped);
      CHECK_FALSE(r);
      CHECK(r.witness->kind == Witness::Kind::MissingClass);
      CHECK_FALSE(via_iso_comma(dropped));
    }
  }
}
