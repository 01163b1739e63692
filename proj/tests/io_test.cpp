#include <doctest.h>

#include <random>

#include "moebius/errors.hpp"
#include "moebius/examples.hpp"
#include "moebius/io.hpp"
#include "random_categories.hpp"

using namespace moebius;
using namespace moebius::io;
using catposet::FinPoset;

namespace {

std::string data(const std::string& file) { return std::string(MOEBIUS_TEST_DATA) + "/" + file; }

}  // namespace

TEST_CASE("property: poset export and import preserve the iso class") {
  std::mt19937 rng(31337);
  for (int i = 0; i < 100; ++i) {
    const auto P = testing::random_poset(rng, 1 + i % 6, 0.4);
    const auto Q = poset_from_json(json::parse(poset_to_json(P).dump()));
    CHECK(examples::canonical_form(Q) == examples::canonical_form(P));
    CHECK(Q.labels() == P.labels());
  }
  for (const auto& pc : examples::enumerate_posets(4))
    CHECK(examples::canonical_form(poset_from_json(poset_to_json(pc.poset))) == pc.canonical);
}

TEST_CASE("category export round-trips through the loader") {
  std::mt19937 rng(5);
  const auto C = testing::random_free_category(rng, 4, 5, "free");
  const auto D = parse_instance(category_to_json(*C), "free").category;
  CHECK(D->object_count() == C->object_count());
  CHECK(D->morphism_count() == C->morphism_count());
  for (catposet::Index f = 0; f < C->morphism_count(); ++f)
    for (catposet::Index g = 0; g < C->morphism_count(); ++g)
      if (C->target(f) == C->source(g))
        CHECK(D->morphism(D->compose(*D->find_morphism(C->morphism(g).label), *D->find_morphism(C->morphism(f).label)))
                  .label == C->morphism(C->compose(g, f)).label);
}

TEST_CASE("instance files") {
  const auto chain = load_instance(data("chain3.json"));
  CHECK(chain.kind == Kind::Poset);
  CHECK(chain.name == "chain3");
  CHECK(chain.poset->size() == 3);

  const auto d12 = load_instance(data("divisors12.json"));
  const auto& P = *d12.poset;
  CHECK(catposet::poset_mobius_recursive(P, *P.index("1"), *P.index("12")) == 0);
  CHECK(catposet::poset_mobius_recursive(P, *P.index("1"), *P.index("6")) == 1);

  const auto adj = load_instance(data("chain-adjunction.json"));
  REQUIRE(adj.adjunction.has_value());
  CHECK(catposet::check_adjunction(adj.adjunction->F, adj.adjunction->G).ok);
  const auto broken = load_instance(data("broken.json"));
  CHECK_FALSE(catposet::check_adjunction(broken.adjunction->F, broken.adjunction->G).ok);

  const auto cyl = load_instance(data("cylinder.json"));
  REQUIRE(cyl.correspondence.has_value());
  CHECK(cyl.category->object_count() == 5);

  const auto tri = load_instance(data("triangle.json"));
  CHECK(tri.kind == Kind::Category);
  CHECK(tri.category->morphism_count() == 6);
}

TEST_CASE("malformed input is a structural error") {
  CHECK_THROWS_AS(load_instance(data("malformed.json")), StructuralError);
  CHECK_THROWS_AS(load_instance(data("cycle.json")), StructuralError);
  CHECK_THROWS_AS(load_instance(data("does-not-exist.json")), StructuralError);
  CHECK_THROWS_AS(parse_instance(json::parse(R"({"kind": "monoid"})")), StructuralError);
  CHECK_THROWS_AS(parse_instance(json::parse(R"({"kind": "poset", "elements": [0], "relations": [[0, 5]]})")),
                  StructuralError);
  CHECK_THROWS_AS(parse_instance(json::parse(R"({"kind": "category", "objects": ["x"],
      "morphisms": [{"name": "f", "source": "x", "target": "x"}]})")),
                  StructuralError);
  CHECK_THROWS_AS(parse_instance(json::parse(R"({"kind": "adjunction",
      "left": {"kind": "poset", "elements": [0, 1], "relations": [[0, 1]]},
      "right": {"kind": "poset", "elements": [0, 1], "relations": [[0, 1]]},
      "F": {"objects": {"0": 1, "1": 0}}, "G": {"objects": {"0": 0, "1": 1}}})")),
                  StructuralError);
}

TEST_CASE("reports serialise with witnesses") {
  const auto C = examples::layered_posets(2);
  const auto j = to_json(simplicial::check_axioms(C, simplicial::Profile::Segal, 2));
  CHECK(j["passed"] == false);
  bool witnessed = false;
  for (const auto& it : j["items"])
    if (it.contains("witness")) witnessed = true;
  CHECK(witnessed);
}
