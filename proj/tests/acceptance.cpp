// Acceptance run: one PASS/FAIL line per criterion, exit 0 iff all pass.
#include <sys/wait.h>

#include <chrono>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

#include "moebius/errors.hpp"
#include "moebius/examples.hpp"
#include "moebius/io.hpp"
#include "random_categories.hpp"
#include "random_groupoids.hpp"

using namespace moebius;
using catposet::FinPoset;
using catposet::Index;
using groupoid::ClassId;
using groupoid::ObjectId;
using simplicial::Profile;
using simplicial::Side;

namespace {

// Collects the first few problems of a criterion.
struct Log {
  std::ostringstream detail;
  int problems = 0;
  void fail(const std::string& what) {
    if (problems++ < 3) detail << (problems > 1 ? "; " : "") << what;
  }
  bool ok() const { return problems == 0; }
};

Rational sign(std::size_t n) { return n % 2 ? -1 : 1; }

struct Result {
  bool ok;
  std::string detail;
};

Result summary(const Log& log, const std::string& counts) {
  if (log.ok()) return {true, counts};
  return {false, counts + "; " + std::to_string(log.problems) + " problems: " + log.detail.str()};
}

Result c1_mobius() {
  Log log;
  const auto SP = examples::sets_posets_bicomodule(4);
  int classes = 0;
  for (int n = 0; n <= 4; ++n)
    for (const auto& pc : examples::enumerate_posets(n)) {
      ++classes;
      const Rational expected = pc.poset.is_discrete() ? sign(n) : Rational(0);
      const Rational direct = examples::mu_posets(pc.poset, examples::MuRoute::Direct);
      Rational rota = 0;
      try {
        rota = examples::mu_posets(SP, pc.poset, examples::MuRoute::Rota);
      } catch (const std::logic_error& e) {
        log.fail(pc.canonical + ": Rota sides differ (" + e.what() + ")");
        continue;
      }
      if (direct != expected) log.fail(pc.canonical + ": direct " + to_string(direct));
      if (rota != expected) log.fail(pc.canonical + ": rota " + to_string(rota));
    }
  if (classes != 25) log.fail(std::to_string(classes) + " classes");
  return summary(log, std::to_string(classes) + " classes, direct and Rota routes");
}

Result c2_binomial() {
  Log log;
  const auto I = examples::layered_sets(6);
  const auto& cls = I.level(1)->classes();
  for (ClassId c = 0; c < cls.size(); ++c) {
    const ObjectId f = cls.representative[c];
    const auto n = *I.grade(f);
    const Rational mu = incidence::mobius(I, f);
    if (mu != sign(n)) log.fail("|S| = " + std::to_string(n) + ": " + to_string(mu));
  }
  if (cls.size() != 7) log.fail(std::to_string(cls.size()) + " classes");
  return summary(log, std::to_string(cls.size()) + " sets, |S| <= 6");
}

Result c3_rota() {
  Log log;
  std::size_t points = 0, arrows = 0, adjunctions = 0;
  for (const auto& [name, adj] : examples::adjunction_battery()) {
    ++adjunctions;
    if (!catposet::check_adjunction(adj.F, adj.G).ok) log.fail(name + " is not an adjunction");
    const auto nx = adj.F.source->object_count(), ny = adj.F.target->object_count();
    for (Index x = 0; x < nx; ++x)
      for (Index y = 0; y < ny; ++y) {
        ++points;
        const auto s = catposet::rota_direct(adj, x, y);
        if (s.lhs != s.rhs) log.fail(name + " at (" + std::to_string(x) + ", " + std::to_string(y) + ")");
      }
    const auto cyl = catposet::mapping_cylinder(adj.F);
    const auto B = catposet::correspondence_bisimplicial(cyl.correspondence, 4);
    std::vector<std::vector<bool>> seen(nx, std::vector<bool>(ny, false));
    for (ObjectId m = 0; m < B->level(0, 0)->object_count(); ++m) {
      ++arrows;
      const auto v = catposet::correspondence_chain(*B, 0, 0, m);
      const auto x = static_cast<Index>(
          std::find(cyl.source_object.begin(), cyl.source_object.end(), v.objects[0]) - cyl.source_object.begin());
      const auto y = static_cast<Index>(
          std::find(cyl.target_object.begin(), cyl.target_object.end(), v.objects[1]) - cyl.target_object.begin());
      seen[x][y] = true;
      const auto a = bicomodule::rota_evaluate(*B, m);
      const auto d = catposet::rota_direct(adj, x, y);
      if (a.lhs != d.lhs || a.rhs != d.rhs) log.fail(name + ": nerve and direct differ at " + B->level(0, 0)->object_label(m));
    }
    for (Index x = 0; x < nx; ++x)
      for (Index y = 0; y < ny; ++y)
        if (!seen[x][y]) {
          const auto d = catposet::rota_direct(adj, x, y);
          if (d.lhs != 0 || d.rhs != 0) log.fail(name + ": nonzero sum off the support");
        }
  }
  if (adjunctions < 3) log.fail("fewer than three adjunctions");
  return summary(log, std::to_string(adjunctions) + " adjunctions, " + std::to_string(points) + " points, " +
                          std::to_string(arrows) + " mixed arrows through the nerve");
}

Result c4_axioms() {
  Log log;
  int nerves = 0;
  for (const auto& C : testing::random_category_battery(20240601)) {
    ++nerves;
    const auto N = catposet::nerve(C, 5);
    for (Profile p : {Profile::Segal, Profile::Decomposition, Profile::Complete})
      if (!simplicial::check_axioms(N, p, 3).passed()) log.fail(C->name() + " fails " + simplicial::to_string(p));
  }
  const auto C = examples::layered_posets(3);
  if (!simplicial::check_axioms(C, Profile::Decomposition, 3).passed()) log.fail("layered posets: decomposition");
  const auto segal = simplicial::check_axioms(C, Profile::Segal, 3);
  std::string witness;
  if (segal.passed())
    log.fail("layered posets pass Segal");
  else if (const auto* f = segal.first_failure(); !f->witness)
    log.fail("layered posets: Segal failure without witness");
  else
    witness = f->witness->description;
  const auto D = simplicial::decalage(C, Side::Right);
  if (!simplicial::check_axioms(D.comodule, Profile::Segal, 2).passed()) log.fail("lower decalage not Segal");
  if (!simplicial::is_culf(*D.map, 2).passed()) log.fail("decalage map not culf");
  return summary(log, std::to_string(nerves) + " random nerves; witness: " + witness);
}

Result c5_inversion() {
  Log log;
  const auto C = examples::layered_posets(4);
  const auto rep = incidence::verify_inversion(C, incidence::classes_up_to_grade(C, 4));
  if (!rep.passed()) log.fail("layered posets at " + rep.failures.front().label);

  std::size_t intervals = 0;
  for (int n = 1; n <= 5; ++n)
    for (const auto& pc : examples::enumerate_posets(n)) {
      const auto& P = pc.poset;
      const auto N = catposet::nerve(catposet::category_of(P, pc.canonical), n + 2);
      if (!incidence::verify_inversion(N, incidence::classes_up_to_grade(N, n)).passed())
        log.fail(pc.canonical + ": inversion");
      for (ObjectId e = 0; e < N.level(1)->object_count(); ++e) {
        const auto v = catposet::nerve_chain(N, 1, e);
        ++intervals;
        if (incidence::mobius(N, e) != catposet::poset_mobius_recursive(P, v.objects[0], v.objects[1]))
          log.fail(pc.canonical + ": interval against the recursion");
      }
    }

  std::size_t comodule_classes = 0;
  const auto D = simplicial::decalage(C, Side::Right);
  const auto dr = bicomodule::comodule_mobius_check(D, bicomodule::comodule_classes(D, 4));
  comodule_classes += dr.checked;
  if (!dr.passed()) log.fail("lower decalage at " + dr.failures.front().label + ": " + dr.failures.front().identity);
  for (const auto& [name, adj] : examples::adjunction_battery()) {
    const auto B = catposet::correspondence_bisimplicial(catposet::mapping_cylinder(adj.F).correspondence, 4);
    for (const auto& c : {B->right_comodule(), B->left_comodule()}) {
      const auto r = bicomodule::comodule_mobius_check(c, bicomodule::comodule_classes(c, 16));
      comodule_classes += r.checked;
      if (!r.passed()) log.fail(name + " at " + r.failures.front().label + ": " + r.failures.front().identity);
    }
  }
  return summary(log, std::to_string(rep.checked) + " layered classes, " + std::to_string(intervals) +
                          " poset intervals, " + std::to_string(comodule_classes) + " comodule classes");
}

Result c6_associativity() {
  Log log;
  std::size_t evaluations = 0;
  auto run = [&](const std::string& name, const bicomodule::AugmentedBisimplicialGroupoid& B,
                 std::optional<std::uint32_t> bound, std::uint32_t seed) {
    const auto r = bicomodule::check_associativity(B, 50, seed, bound);
    evaluations += r.evaluations;
    if (r.trials != 50) log.fail(name + ": trials");
    if (!r.passed()) log.fail(name + " at " + r.failures.front().label);
  };
  run("sets-posets", *examples::sets_posets_bicomodule(3).bicomodule, 3, 1);
  const auto adj = examples::chain_adjunction();
  run("chain adjunction", *catposet::correspondence_bisimplicial(catposet::mapping_cylinder(adj.F).correspondence, 4),
      std::nullopt, 2);
  run("total decalage", *bicomodule::total_decalage(catposet::nerve(catposet::category_of(examples::divisor_poset(12), "D12"), 5)),
      std::nullopt, 3);
  return summary(log, "3 x 50 triples, " + std::to_string(evaluations) + " evaluations");
}

Result c7_oracles() {
  Log log;
  const std::size_t expected[] = {1, 1, 2, 5, 16, 63};
  std::string counts;
  for (int n = 0; n <= 5; ++n) {
    const auto k = examples::enumerate_posets(n).size();
    counts += (n ? "," : "") + std::to_string(k);
    if (k != expected[n]) log.fail("n = " + std::to_string(n) + ": " + std::to_string(k));
  }
  std::mt19937 rng(13);
  for (int trial = 0; trial < 100; ++trial) {
    auto r = testing_support::random_map(rng, testing_support::random_group(rng));
    const auto s = groupoid::skeleton(r.GA);
    if (!groupoid::is_equivalence(*s.collapse) || groupoid::cardinality(*s.groupoid) != groupoid::cardinality(*r.GA))
      log.fail("skeleton trial " + std::to_string(trial));
  }
  std::mt19937 rng2(11);
  for (int trial = 0; trial < 100; ++trial) {
    auto r = testing_support::random_map(rng2, testing_support::random_group(rng2));
    Rational total = 0;
    const auto& B = r.GB->classes();
    for (ClassId c = 0; c < B.size(); ++c)
      total += groupoid::fiber_cardinality(*r.F, B.representative[c]) /
               Rational(static_cast<unsigned long>(B.aut_order[c]));
    if (total != groupoid::cardinality(*r.GA)) log.fail("fibre sum trial " + std::to_string(trial));
  }
  return summary(log, "counts " + counts + ", 100 skeletons, 100 fibre sums");
}

int run_cli(const std::string& args) {
  const std::string cmd = std::string(MOEBIUSKIT) + " " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

Result c8_controls() {
  Log log;
  std::string witnesses;
  for (auto f : {examples::Fault::DroppedSimplex, examples::Fault::CorruptedPhi, examples::Fault::NonAdjunction,
                 examples::Fault::UnstableBicomodule}) {
    const auto r = examples::run_fault(f);
    if (!r.detected || r.witness.empty()) log.fail(examples::to_string(f) + " not detected");
    witnesses += (witnesses.empty() ? "" : " | ") + r.witness;
    const int code = run_cli("verify --inject-fault " + examples::to_string(f));
    if (code != 1) log.fail(examples::to_string(f) + ": exit code " + std::to_string(code));
  }
  // a non-adjunction is also rejected before any Rota computation
  const int code = run_cli("rota " + std::string(MOEBIUS_TEST_DATA) + "/broken.json");
  if (code != 2) log.fail("rota on a non-adjunction: exit code " + std::to_string(code));
  return summary(log, witnesses);
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Result()>>> criteria = {
      {"1 mobius of layered posets, direct and Rota", c1_mobius},
      {"2 mobius of layered sets is (-1)^n", c2_binomial},
      {"3 Rota formula for adjunctions", c3_rota},
      {"4 axiom checkers", c4_axioms},
      {"5 mobius inversion", c5_inversion},
      {"6 bicomodule associativity", c6_associativity},
      {"7 catalog counts, skeletons, fibre sums", c7_oracles},
      {"8 negative controls", c8_controls},
  };
  int failed = 0;
  for (const auto& [name, run] : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Result r{false, ""};
    try {
      r = run();
    } catch (const std::exception& e) {
      r.detail = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    failed += !r.ok;
    std::cout << (r.ok ? "PASS " : "FAIL ") << name << " [" << r.detail << "] (" << secs << " s)" << std::endl;
  }
  return failed ? 1 : 0;
}
