#include <doctest.h>

#include <set>

#include "moebius/catposet.hpp"
#include "moebius/errors.hpp"
#include "moebius/examples.hpp"
#include "moebius/simplicial.hpp"
#include "random_categories.hpp"

using namespace moebius;
using namespace moebius::simplicial;
using catposet::FinPoset;

namespace {

// Elementary abelian group (C2)^k, elements as bit masks.
FiniteGroup c2_power(int k) {
  FiniteGroup g;
  g.order = 1u << k;
  for (std::uint32_t a = 0; a < g.order; ++a) {
    g.inverses.push_back(a);
    for (std::uint32_t b = 0; b < g.order; ++b) g.table.push_back(a ^ b);
  }
  return g;
}

// Cech nerve of B(C2) -> point: X_n = B(C2)^{n+1}, faces delete a factor and
// degeneracies repeat one. s_0 is the diagonal, which is not full.
class CechNerve : public LevelGenerator {
 public:
  CechNerve() {
    for (int n = 0; n <= kTop; ++n) groups_.push_back(std::make_unique<FiniteGroup>(c2_power(n + 1)));
    for (int n = 0; n <= kTop; ++n) {
      groupoid::ActionData d;
      d.name = "BC2^" + std::to_string(n + 1);
      d.labels = {"*"};
      d.group_of = {groups_[n].get()};
      d.act = [](ObjectId, std::uint32_t) { return ObjectId{0}; };
      levels_.push_back(groupoid::action_groupoid(d));
    }
  }
  std::string name() const override { return "cech"; }
  int max_level() const override { return kTop; }
  GroupoidPtr level(const TruncatedSimplicialGroupoid&, int n) const override { return levels_[n]; }
  FunctorPtr face(const TruncatedSimplicialGroupoid&, int n, int i) const override {
    return induced(n, n - 1, [i](std::uint32_t g) {
      const std::uint32_t low = g & ((1u << i) - 1);
      return low | ((g >> (i + 1)) << i);
    });
  }
  FunctorPtr degeneracy(const TruncatedSimplicialGroupoid&, int n, int i) const override {
    return induced(n, n + 1, [i](std::uint32_t g) {
      const std::uint32_t low = g & ((1u << (i + 1)) - 1);
      return low | ((g >> i) << (i + 1));
    });
  }

 private:
  static constexpr int kTop = 4;
  FunctorPtr induced(int from, int to, const std::function<std::uint32_t(std::uint32_t)>& h) const {
    auto F = std::make_shared<groupoid::GroupoidFunctor>();
    F->source = levels_[from];
    F->target = levels_[to];
    F->on_objects = {0};
    for (std::uint32_t g = 0; g < groups_[from]->order; ++g)
      F->on_morphisms.push_back(groupoid::action_morphism(*levels_[to], 0, h(g)));
    return F;
  }
  std::vector<std::unique_ptr<FiniteGroup>> groups_;
  std::vector<GroupoidPtr> levels_;
};

ObjectId find_chain(const TruncatedSimplicialGroupoid& N, int n, const std::vector<catposet::Index>& objects) {
  for (ObjectId s = 0; s < N.level(n)->object_count(); ++s)
    if (catposet::nerve_chain(N, n, s).objects == objects) return s;
  FAIL("chain not found");
  return 0;
}

// Levelwise functor from layered posets to layered sets forgetting the order.
// Both levels are labelled structures on {0..k-1} acted on by S_k, so a
// morphism (x, g) goes to (forget x, g).
SimplicialMap forgetful_map(const TruncatedSimplicialGroupoid& C, const TruncatedSimplicialGroupoid& I) {
  return SimplicialMap(
      C, I,
      [C, I](int n) {
        auto F = std::make_shared<groupoid::GroupoidFunctor>();
        F->source = C.level(n);
        F->target = I.level(n);
        const auto& S = *F->source;
        for (ObjectId x = 0; x < S.object_count(); ++x) {
          const auto lp = examples::decode(C, n, x);
          F->on_objects.push_back(*examples::encode(I, n, FinPoset::antichain(static_cast<int>(lp.poset.size())),
                                                    lp.layer));
        }
        F->on_morphisms.resize(S.morphism_count());
        for (MorphismId m = 0; m < S.morphism_count(); ++m)
          F->on_morphisms[m] = groupoid::action_morphism(*F->target, F->on_objects[S.source(m)], S.out_position(m));
        F->validate();
        return groupoid::FunctorPtr(F);
      },
      "forget");
}

}  // namespace

TEST_CASE("nerve of a chain: level sizes, principal edges, Segal") {
  const auto C = catposet::category_of(FinPoset::chain(3), "chain3");
  const auto N = catposet::nerve(C, 4);
  // level n counts weakly increasing sequences of n + 1 elements of {0, 1, 2}
  CHECK(N.level(0)->object_count() == 3);
  CHECK(N.level(1)->object_count() == 6);
  CHECK(N.level(2)->object_count() == 10);
  CHECK(N.level(3)->object_count() == 15);
  CHECK(N.level(2)->is_discrete());

  const ObjectId s = find_chain(N, 2, {0, 1, 2});
  const auto edges = principal_edges(N, 2, s);
  REQUIRE(edges.size() == 2);
  CHECK(catposet::nerve_chain(N, 1, edges[0]).objects == std::vector<catposet::Index>{0, 1});
  CHECK(catposet::nerve_chain(N, 1, edges[1]).objects == std::vector<catposet::Index>{1, 2});
  CHECK(catposet::nerve_chain(N, 1, long_edge(N, 2, s)).objects == std::vector<catposet::Index>{0, 2});
  CHECK(all_edges_nondegenerate(N, 2, s));
  CHECK_FALSE(all_edges_nondegenerate(N, 2, find_chain(N, 2, {0, 0, 2})));

  for (Profile p : {Profile::Identities, Profile::Segal, Profile::Decomposition, Profile::Complete})
    CHECK(check_axioms(N, p, 2).passed());
}

TEST_CASE("profiles parse by name") {
  for (Profile p : {Profile::Identities, Profile::Segal, Profile::Decomposition, Profile::Complete})
    CHECK(parse_profile(to_string(p)) == p);
  CHECK_FALSE(parse_profile("bogus").has_value());
}

TEST_CASE("property: nerves of random categories are complete Segal decomposition spaces") {
  for (const auto& C : testing::random_category_battery(20240601)) {
    CAPTURE(C->name());
    const auto N = catposet::nerve(C, 5);
    CHECK(check_axioms(N, Profile::Identities, 3).passed());
    CHECK(check_axioms(N, Profile::Segal, 3).passed());
    CHECK(check_axioms(N, Profile::Decomposition, 3).passed());
    CHECK(check_axioms(N, Profile::Complete, 3).passed());
  }
}

TEST_CASE("property: lower decalage of a random nerve is Segal with culf comparison map") {
  for (const auto& C : testing::random_category_battery(77)) {
    CAPTURE(C->name());
    const auto N = catposet::nerve(C, 5);
    const auto D = decalage(N, Side::Right);
    CHECK(check_axioms(D.comodule, Profile::Segal, 2).passed());
    CHECK(is_culf(*D.map, 2).passed());
    const auto U = decalage(N, Side::Left);
    CHECK(check_axioms(U.comodule, Profile::Segal, 2).passed());
    CHECK(is_culf(*U.map, 2).passed());
  }
}

TEST_CASE("layered posets: Segal fails with a witness, decalage repairs it") {
  const auto C = examples::layered_posets(3);
  CHECK(check_axioms(C, Profile::Identities, 2).passed());
  CHECK(check_axioms(C, Profile::Decomposition, 3).passed());
  const auto segal = check_axioms(C, Profile::Segal, 3);
  REQUIRE_FALSE(segal.passed());
  REQUIRE(segal.first_failure()->witness.has_value());
  CHECK_FALSE(segal.first_failure()->witness->description.empty());

  const auto D = decalage(C, Side::Right);
  CHECK(check_axioms(D.comodule, Profile::Segal, 2).passed());
  CHECK(is_culf(*D.map, 2).passed());
}

TEST_CASE("nondegenerate simplices of layered posets") {
  const auto C = examples::layered_posets(2);
  const auto nd = nondegenerate_simplices(C, 2);
  // two nonempty layers of one element each: either comparable or not
  CHECK(nd.sub.groupoid->classes().size() == 2);
  for (ObjectId x = 0; x < nd.sub.groupoid->object_count(); ++x) {
    const auto lp = examples::decode(C, 2, nd.sub.parent_object[x]);
    CHECK(lp.poset.size() == 2);
    CHECK(lp.layer[0] != lp.layer[1]);
  }
}

TEST_CASE("property: nondegenerate and degenerate edges partition X_1") {
  const auto check = [](const TruncatedSimplicialGroupoid& X) {
    CAPTURE(X.name());
    const Rational all = groupoid::cardinality(*X.level(1));
    const Rational nondeg = groupoid::cardinality(*nondegenerate_simplices(X, 1).sub.groupoid);
    CHECK(nondeg + groupoid::cardinality(*X.level(0)) == all);
  };
  check(examples::layered_posets(3));
  check(examples::layered_sets(4));
  for (const auto& C : testing::random_category_battery(5)) check(catposet::nerve(C, 3));
}

TEST_CASE("completeness fails when s_0 is not a monomorphism") {
  const TruncatedSimplicialGroupoid X(std::make_shared<CechNerve>());
  CHECK(check_axioms(X, Profile::Identities, 2).passed());
  CHECK(check_axioms(X, Profile::Segal, 2).passed());
  const auto rep = check_axioms(X, Profile::Complete, 2);
  REQUIRE_FALSE(rep.passed());
  CHECK(rep.first_failure()->witness.has_value());
  CHECK_THROWS(nondegenerate_simplices(X, 1));
}

TEST_CASE("checks beyond the truncation raise InsufficientLevels") {
  const auto N = catposet::nerve(catposet::category_of(FinPoset::chain(2), "chain2"), 3);
  CHECK_THROWS_AS(N.level(4), InsufficientLevels);
  CHECK_THROWS_AS(check_axioms(N, Profile::Segal, 3), InsufficientLevels);
  CHECK_THROWS_AS(check_axioms(N, Profile::Decomposition, 2), InsufficientLevels);
  try {
    N.require_level(6);
  } catch (const InsufficientLevels& e) {
    CHECK(e.needed() == 6);
    CHECK(e.available() == 3);
  }
}

TEST_CASE("dropping a 2-simplex breaks Segal with a localized witness") {
  const auto r = examples::run_fault(examples::Fault::DroppedSimplex);
  CHECK(r.detected);
  CHECK(r.witness.find("segal n=1") != std::string::npos);
  CHECK(r.witness.find("1<=2") != std::string::npos);
}

TEST_CASE("word groupoids pick out degenerate and nondegenerate edges") {
  const auto N = catposet::nerve(catposet::category_of(FinPoset::chain(3), "chain3"), 3);
  CHECK(word_groupoid(N, "0").sub.groupoid->object_count() == 3);
  CHECK(word_groupoid(N, "a").sub.groupoid->object_count() == 3);
  CHECK(word_groupoid(N, "aa").sub.groupoid->object_count() == 1);
  CHECK(word_groupoid(N, "1a").sub.groupoid->object_count() == 4);
}

TEST_CASE("forgetting the order of layered posets is conservative but not culf") {
  const auto C = examples::layered_posets(3);
  const auto I = examples::layered_sets(3);
  const auto f = forgetful_map(C, I);
  // naturality on faces
  for (int n = 0; n <= 3; ++n)
    for (int i = 0; i <= n + 1; ++i)
      CHECK(groupoid::compose(*I.face(n + 1, i), *f.at(n + 1))
                ->same_as(*groupoid::compose(*f.at(n), *C.face(n + 1, i))));
  const auto rep = is_culf(f, 2);
  REQUIRE_FALSE(rep.passed());
  // only the empty poset lies over the empty layered set, so every
  // codegeneracy square is a pullback; b<a has no layering [a|b], so the
  // inner face squares are not
  int failures = 0;
  for (const auto& it : rep.items) {
    CAPTURE(it.name);
    if (it.name.rfind("conservative", 0) == 0) CHECK(it.passed);
    if (it.passed) continue;
    ++failures;
    CHECK(it.name.rfind("ulf at d_", 0) == 0);
    REQUIRE(it.witness.has_value());
    CHECK(it.witness->description.find("b<a") != std::string::npos);
  }
  CHECK(failures == 3);
}
