#include <doctest.h>

#include <random>

#include "moebius/bicomodule.hpp"
#include "moebius/catposet.hpp"
#include "moebius/errors.hpp"
#include "moebius/examples.hpp"
#include "random_categories.hpp"

using namespace moebius;
using namespace moebius::bicomodule;
using catposet::FinPoset;
using simplicial::Side;

namespace {

TruncatedSimplicialGroupoid chain_nerve(int n, int levels) {
  return catposet::nerve(catposet::category_of(FinPoset::chain(n), "chain" + std::to_string(n)), levels);
}

BisimplicialPtr chain_adjunction_nerve() {
  const auto adj = examples::chain_adjunction();
  return catposet::correspondence_bisimplicial(catposet::mapping_cylinder(adj.F).correspondence, 4);
}

}  // namespace

TEST_CASE("total decalage of a chain nerve") {
  const auto X = chain_nerve(3, 5);
  const auto B = total_decalage(X);
  CHECK(B->level(0, 0)->object_count() == X.level(1)->object_count());
  CHECK(B->level(1, 1)->object_count() == X.level(3)->object_count());
  CHECK(validate_configuration(*B, 2).passed());
  CHECK(validate_configuration(*B, 2, true).passed());

  // both pointings are degeneracies, so the deltas detect identity arrows
  const auto dr = pointing_delta(*B, Side::Right);
  const auto dl = pointing_delta(*B, Side::Left);
  for (ObjectId m = 0; m < B->level(0, 0)->object_count(); ++m) {
    const auto v = catposet::nerve_chain(X, 1, m);
    const Rational expected = v.objects[0] == v.objects[1] ? 1 : 0;
    CHECK(dr.at_object(m) == expected);
    CHECK(dl.at_object(m) == expected);
  }
}

TEST_CASE("total decalage: coactions are the comultiplication and Rota returns mu") {
  const auto X = chain_nerve(4, 5);
  const auto B = total_decalage(X);
  const auto mu = incidence::mobius_functional(X);
  for (ObjectId m = 0; m < X.level(1)->object_count(); ++m) {
    Rational right = 0, left = 0, base = 0;
    for (const auto& t : coact(*B, Side::Right, m)) right += t.weight;
    for (const auto& t : coact(*B, Side::Left, m)) left += t.weight;
    for (const auto& t : incidence::comultiply(X, m)) base += t.weight;
    CHECK(right == base);
    CHECK(left == base);
    const auto sides = rota_evaluate(*B, m);
    CHECK(sides.lhs == mu.at_object(m));
    CHECK(sides.rhs == mu.at_object(m));
  }
}

TEST_CASE("associativity: total decalages of random poset nerves") {
  std::mt19937 rng(99);
  for (int i = 0; i < 5; ++i) {
    const auto P = testing::random_poset(rng, 4 + i % 2);
    const auto B = total_decalage(catposet::nerve(catposet::category_of(P, "P" + std::to_string(i)), 5));
    const auto rep = check_associativity(*B, 50, 1000 + i);
    CHECK(rep.trials == 50);
    CHECK(rep.evaluations > 0);
    CHECK(rep.passed());
  }
}

TEST_CASE("associativity: chain adjunction nerve and the sets-posets bicomodule") {
  const auto A = chain_adjunction_nerve();
  CHECK(check_associativity(*A, 50, 7).passed());
  const auto SP = examples::sets_posets_bicomodule(3);
  const auto rep = check_associativity(*SP.bicomodule, 50, 8, 3);
  CHECK(rep.passed());
  CHECK(rep.evaluations == 50 * SP.bicomodule->level(0, 0)->classes().size());
}

TEST_CASE("comodule Mobius inversion on the lower decalage of layered posets") {
  const auto C = examples::layered_posets(4);
  const auto D = simplicial::decalage(C, Side::Right);
  const auto rep = comodule_mobius_check(D, comodule_classes(D, 3));
  CHECK(rep.checked > 0);
  CHECK(rep.passed());
}

TEST_CASE("comodule Mobius inversion on both sides of the chain adjunction nerve") {
  const auto A = chain_adjunction_nerve();
  for (const auto& c : {A->right_comodule(), A->left_comodule()}) {
    const auto rep = comodule_mobius_check(c, comodule_classes(c, 8));
    CHECK(rep.checked == A->level(0, 0)->classes().size());
    CHECK(rep.passed());
  }
}

TEST_CASE("sets-posets bicomodule: right inversion holds, left holds only summed") {
  const auto SP = examples::sets_posets_bicomodule(3);
  const auto right = SP.bicomodule->right_comodule();
  CHECK(comodule_mobius_check(right, comodule_classes(right, 3)).passed());
  const auto left = SP.bicomodule->left_comodule();
  const auto rep = comodule_mobius_check(left, comodule_classes(left, 3));
  CHECK_FALSE(rep.failures.empty());
  for (const auto& f : rep.failures) {
    CAPTURE(f.label);
    CHECK(f.identity.rfind("zeta * Phi_", 0) == 0);
  }
}

TEST_CASE("a supplied Phi table that breaks inversion is reported") {
  const auto C = examples::layered_posets(3);
  const auto D = simplicial::decalage(C, Side::Right);
  const auto rep = comodule_mobius_check(D, comodule_classes(D, 2), [](ClassId, int n) -> std::optional<Rational> {
    if (n == 1) return Rational(7);
    return std::nullopt;
  });
  REQUIRE_FALSE(rep.passed());
  CHECK(rep.failures.front().identity.find("Phi^R") != std::string::npos);
}

TEST_CASE("removing a class of B_{0,1} breaks stability and associativity") {
  const auto r = examples::run_fault(examples::Fault::UnstableBicomodule);
  CHECK(r.detected);
  CHECK(r.witness.find("associativity fails at") != std::string::npos);

  const auto X = chain_nerve(3, 5);
  const auto B = total_decalage(X);
  // degenerate simplices cannot be removed; the check runs when the level is built
  CHECK_THROWS_AS(drop_objects(B, 0, 1, {0})->level(0, 1), DomainError);
  ObjectId top = 0;
  while (catposet::nerve_chain(X, 2, top).objects != std::vector<catposet::Index>{0, 1, 2}) ++top;
  const auto M = drop_objects(B, 0, 1, {top});
  CHECK(M->level(0, 1)->object_count() < B->level(0, 1)->object_count());
  CHECK(M->level(0, 0)->object_count() == B->level(0, 0)->object_count());
}

TEST_CASE("levels outside the bisimplicial truncation are rejected") {
  const auto B = total_decalage(chain_nerve(2, 3));
  CHECK_THROWS(B->level(3, 3));
  CHECK_THROWS(B->level(-1, -1));
}
