#include <doctest.h>

#include <random>

#include "moebius/catposet.hpp"
#include "moebius/errors.hpp"
#include "moebius/examples.hpp"
#include "moebius/incidence.hpp"
#include "random_categories.hpp"

using namespace moebius;
using namespace moebius::incidence;
using catposet::FinPoset;
using catposet::Index;

namespace {

ObjectId edge(const TruncatedSimplicialGroupoid& N, Index x, Index y) {
  for (ObjectId s = 0; s < N.level(1)->object_count(); ++s)
    if (catposet::nerve_chain(N, 1, s).objects == std::vector<Index>{x, y}) return s;
  FAIL("edge not found");
  return 0;
}

Functional random_functional(const TruncatedSimplicialGroupoid& X, std::mt19937& rng, const std::string& name) {
  std::uniform_int_distribution<int> v(-3, 3);
  std::map<ClassId, Rational> t;
  for (ClassId c = 0; c < X.level(1)->classes().size(); ++c) t[c] = Rational(v(rng));
  return Functional::from_table(X.level(1), t, name);
}

Rational at(const TruncatedSimplicialGroupoid& X, const Functional& a, ClassId c) {
  return a.at_object(X.level(1)->classes().representative[c]);
}

}  // namespace

TEST_CASE("incidence algebra of the chain 0<1<2") {
  const auto N = catposet::nerve(catposet::category_of(FinPoset::chain(3), "chain3"), 4);
  const ObjectId f = edge(N, 0, 2);
  const auto terms = comultiply(N, f);
  REQUIRE(terms.size() == 3);
  for (const auto& t : terms) CHECK(t.weight == Rational(1));
  CHECK(counit(N, f) == Rational(0));
  CHECK(counit(N, edge(N, 1, 1)) == Rational(1));

  const auto z = zeta(N);
  const auto zz = convolve(N, z, z);
  CHECK(zz.at_object(f) == Rational(3));
  CHECK(zz.at_object(edge(N, 0, 1)) == Rational(2));
  CHECK(zz.at_object(edge(N, 0, 0)) == Rational(1));

  CHECK(mobius(N, f) == Rational(0));
  CHECK(mobius(N, edge(N, 0, 1)) == Rational(-1));
  CHECK(mobius(N, edge(N, 2, 2)) == Rational(1));
  CHECK(phi(N, f, 2) == Rational(1));
  CHECK(phi(N, f, 1) == Rational(1));
  CHECK(phi(N, f, 3) == Rational(0));
}

TEST_CASE("property: counit and associativity laws for random functionals") {
  std::mt19937 rng(4242);
  auto instances = std::vector<TruncatedSimplicialGroupoid>{examples::layered_posets(3), examples::layered_sets(4)};
  for (const auto& C : testing::random_category_battery(9)) instances.push_back(catposet::nerve(C, 4));
  for (const auto& X : instances) {
    CAPTURE(X.name());
    const auto e = delta(X);
    for (int trial = 0; trial < 3; ++trial) {
      const auto a = random_functional(X, rng, "a");
      const auto b = random_functional(X, rng, "b");
      const auto c = random_functional(X, rng, "c");
      const auto ea = convolve(X, e, a), ae = convolve(X, a, e);
      const auto left = convolve(X, convolve(X, a, b), c);
      const auto right = convolve(X, a, convolve(X, b, c));
      for (ClassId k = 0; k < X.level(1)->classes().size(); ++k) {
        CHECK(at(X, ea, k) == at(X, a, k));
        CHECK(at(X, ae, k) == at(X, a, k));
        CHECK(at(X, left, k) == at(X, right, k));
      }
    }
  }
}

TEST_CASE("property: comultiplication is coassociative") {
  // (Delta x id) Delta and (id x Delta) Delta agree as multisets of weighted triples
  auto instances = std::vector<TruncatedSimplicialGroupoid>{examples::layered_posets(3)};
  for (const auto& C : testing::random_category_battery(10)) instances.push_back(catposet::nerve(C, 4));
  for (const auto& X : instances) {
    CAPTURE(X.name());
    const auto& cls = X.level(1)->classes();
    for (ClassId k = 0; k < cls.size(); ++k) {
      std::map<std::tuple<ClassId, ClassId, ClassId>, Rational> lhs, rhs;
      for (const auto& t : comultiply(X, cls.representative[k])) {
        for (const auto& u : comultiply(X, cls.representative[t.first]))
          lhs[{u.first, u.second, t.second}] += t.weight * u.weight;
        for (const auto& u : comultiply(X, cls.representative[t.second]))
          rhs[{t.first, u.first, u.second}] += t.weight * u.weight;
      }
      CHECK(lhs == rhs);
    }
  }
}

TEST_CASE("Mobius inversion on layered posets up to grade 4") {
  const auto C = examples::layered_posets(4);
  const auto rep = verify_inversion(C, classes_up_to_grade(C, 4));
  CHECK(rep.checked == C.level(1)->classes().size());
  CHECK(rep.passed());
  const auto I = examples::layered_sets(6);
  CHECK(verify_inversion(I, classes_up_to_grade(I, 6)).passed());
}

TEST_CASE("intrinsic and shortcut fibres give the same Mobius function") {
  const auto C = examples::layered_posets(3);
  const auto& cls = C.level(1)->classes();
  for (ClassId k = 0; k < cls.size(); ++k)
    CHECK(mobius(C, cls.representative[k], Route::Intrinsic) == mobius(C, cls.representative[k], Route::Auto));
}

TEST_CASE("Mobius inversion on every interval of every poset with at most 5 elements") {
  std::size_t posets = 0, intervals = 0;
  for (int n = 1; n <= 5; ++n)
    for (const auto& pc : examples::enumerate_posets(n)) {
      ++posets;
      const auto& P = pc.poset;
      const auto N = catposet::nerve(catposet::category_of(P, pc.canonical), static_cast<int>(n) + 2);
      CHECK(verify_inversion(N, classes_up_to_grade(N, n)).passed());
      for (Index x = 0; x < P.size(); ++x)
        for (Index y = 0; y < P.size(); ++y)
          if (P.leq(x, y)) {
            ++intervals;
            CHECK(mobius(N, edge(N, x, y)) == catposet::poset_mobius_recursive(P, x, y));
          }
    }
  CHECK(posets == 1 + 2 + 5 + 16 + 63);
  CHECK(intervals > 0);
}

TEST_CASE("Phi vanishes above the grade") {
  const auto C = examples::layered_posets(3);
  const auto& L = *C.level(1);
  for (ObjectId f = 0; f < L.object_count(); ++f) {
    const int g = static_cast<int>(*C.grade(f));
    CHECK(length_certificate(C, f) == g);
    CHECK(phi(C, f, g + 1) == Rational(0));
    if (g > 0) CHECK(phi(C, f, g) != Rational(0));
  }
}

TEST_CASE("no certificate for a category with a non-identity endomorphism") {
  catposet::CategoryBuilder b("Z2");
  b.add_object("*");
  b.add_morphism("g", "*", "*");
  b.set_composite("g", "g", "id_*");
  const auto N = catposet::nerve(b.build(), 3);
  CHECK_THROWS_AS(mobius(N, 1), CertificateError);
}

TEST_CASE("a corrupted Mobius table is rejected with the offending class") {
  const auto r = examples::run_fault(examples::Fault::CorruptedPhi);
  CHECK(r.detected);
  CHECK(r.witness.rfind("at ", 0) == 0);
  CHECK(r.witness.find("zeta*mu") != std::string::npos);
}

TEST_CASE("tables drop zero entries") {
  const auto I = examples::layered_sets(2);
  const auto t = Functional::from_table(I.level(1), {{0, Rational(0)}, {1, Rational(5)}});
  REQUIRE(t.table().has_value());
  CHECK(t.table()->size() == 1);
  CHECK(t(0) == Rational(0));
  CHECK(t(1) == Rational(5));
}
