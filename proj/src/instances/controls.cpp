#include <numeric>

#include "moebius/errors.hpp"
#include "moebius/examples.hpp"
#include "moebius/incidence.hpp"

namespace moebius::examples {

using catposet::Adjunction;
using catposet::category_of;
using catposet::Index;
using catposet::monotone_functor;

namespace {

Adjunction poset_adjunction(const FinPoset& P, const FinPoset& Q, std::vector<Index> F, std::vector<Index> G,
                            const std::string& p = "X", const std::string& q = "Y") {
  auto CP = category_of(P, p);
  auto CQ = category_of(Q, q);
  return {monotone_functor(CP, CQ, std::move(F)), monotone_functor(CQ, CP, std::move(G))};
}

FinPoset subsets(const std::vector<std::string>& base) {
  const std::size_t n = base.size();
  std::vector<std::string> labels;
  for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
    std::string s = "{";
    for (std::size_t i = 0; i < n; ++i)
      if (mask >> i & 1u) s += base[i];
    labels.push_back(s + "}");
  }
  std::vector<std::pair<Index, Index>> rel;
  for (Index a = 0; a < labels.size(); ++a)
    for (Index b = 0; b < labels.size(); ++b)
      if ((a & b) == a) rel.emplace_back(a, b);
  return FinPoset(std::move(labels), rel);
}

}  // namespace

Adjunction chain_adjunction() { return poset_adjunction(FinPoset::chain(3), FinPoset::chain(2), {0, 0, 1}, {1, 2}); }

Adjunction broken_chain_adjunction() {
  return poset_adjunction(FinPoset::chain(3), FinPoset::chain(2), {0, 0, 1}, {0, 2});
}

FinPoset divisor_poset(int n) {
  if (n < 1) throw DomainError("divisor_poset needs n >= 1");
  std::vector<int> divs;
  for (int d = 1; d <= n; ++d)
    if (n % d == 0) divs.push_back(d);
  std::vector<std::string> labels;
  std::vector<std::pair<Index, Index>> rel;
  for (Index a = 0; a < divs.size(); ++a) {
    labels.push_back(std::to_string(divs[a]));
    for (Index b = 0; b < divs.size(); ++b)
      if (divs[b] % divs[a] == 0) rel.emplace_back(a, b);
  }
  return FinPoset(std::move(labels), rel);
}

std::vector<NamedAdjunction> adjunction_battery() {
  std::vector<NamedAdjunction> out;
  out.push_back({"chain", chain_adjunction()});

  const FinPoset D12 = divisor_poset(12), D6 = divisor_poset(6);
  auto at = [](const FinPoset& P, int d) { return *P.index(std::to_string(d)); };
  std::vector<Index> F, G;
  for (int d : {1, 2, 3, 4, 6, 12}) F.push_back(at(D6, std::gcd(d, 6)));
  for (int e : {1, 2, 3, 6}) {
    int best = 1;
    for (int d : {1, 2, 3, 4, 6, 12})
      if (e % std::gcd(d, 6) == 0 && d % best == 0) best = d;
    G.push_back(at(D12, best));
  }
  out.push_back({"gcd-divisors", poset_adjunction(D12, D6, F, G, "D12", "D6")});

  // f : {a,b,c} -> {x,y}; masks over (a, b, c) and (x, y)
  const FinPoset A = subsets({"a", "b", "c"}), B = subsets({"x", "y"});
  const int f[3] = {0, 0, 1};
  std::vector<Index> image, preimage;
  for (Index s = 0; s < 8; ++s) {
    Index t = 0;
    for (int i = 0; i < 3; ++i)
      if (s >> i & 1u) t |= 1u << f[i];
    image.push_back(t);
  }
  for (Index t = 0; t < 4; ++t) {
    Index s = 0;
    for (int i = 0; i < 3; ++i)
      if (t >> f[i] & 1u) s |= 1u << i;
    preimage.push_back(s);
  }
  out.push_back({"image-preimage", poset_adjunction(A, B, image, preimage, "PA", "PB")});

  const FinPoset grid = FinPoset::from_labels({"00", "01", "10", "11"}, {{"00", "01"}, {"00", "10"}, {"01", "11"}, {"10", "11"}});
  out.push_back({"identity-grid", poset_adjunction(grid, grid, {0, 1, 2, 3}, {0, 1, 2, 3}, "G", "G'")});
  return out;
}

std::string to_string(Fault f) {
  switch (f) {
    case Fault::DroppedSimplex: return "dropped-simplex";
    case Fault::CorruptedPhi: return "corrupted-phi";
    case Fault::NonAdjunction: return "non-adjunction";
    case Fault::UnstableBicomodule: return "unstable-bicomodule";
  }
  return "unknown";
}

std::optional<Fault> parse_fault(const std::string& s) {
  for (Fault f : {Fault::DroppedSimplex, Fault::CorruptedPhi, Fault::NonAdjunction, Fault::UnstableBicomodule})
    if (to_string(f) == s) return f;
  return std::nullopt;
}

namespace {

// The object of level 2 of a poset nerve whose chain is (a<b, b<c).
ObjectId chain_simplex(const TruncatedSimplicialGroupoid& N, const catposet::FinCategory& C) {
  const auto& L = *N.level(2);
  for (ObjectId s = 0; s < L.object_count(); ++s) {
    auto v = catposet::nerve_chain(N, 2, s);
    if (!C.is_identity(v.morphisms[0]) && !C.is_identity(v.morphisms[1])) return s;
  }
  throw DomainError("no nondegenerate 2-simplex");
}

}  // namespace

FaultReport run_fault(Fault fault) {
  FaultReport r;
  switch (fault) {
    case Fault::DroppedSimplex: {
      r.check = "segal";
      auto C = category_of(FinPoset::chain(3), "chain3");
      const auto N = catposet::nerve(C, 3);
      const auto M = simplicial::drop_simplices(N, 2, {chain_simplex(N, *C)});
      const auto rep = simplicial::check_axioms(M, simplicial::Profile::Segal, 2);
      if (const auto* f = rep.first_failure()) {
        r.detected = true;
        r.witness = f->witness ? f->witness->description : f->name;
      }
      break;
    }
    case Fault::CorruptedPhi: {
      r.check = "mobius inversion";
      const auto C = layered_posets(3);
      const auto target = C.level(1)->classes().class_of[*poset_edge(C, FinPoset::antichain(2))];
      const auto mu = incidence::mobius_functional(C);
      const incidence::Functional bad(C.level(1), [mu, target](groupoid::ClassId c) {
        return c == target ? Rational(-mu(c)) : mu(c);
      }, "mu with one sign flipped");
      const auto rep = incidence::verify_inversion(C, incidence::classes_up_to_grade(C, 3), bad);
      if (!rep.passed()) {
        r.detected = true;
        const auto& f = rep.failures.front();
        r.witness = "at " + f.label + ": zeta*mu = " + moebius::to_string(f.zeta_mu) + ", mu*zeta = " +
                    moebius::to_string(f.mu_zeta) + ", delta = " + moebius::to_string(f.delta);
      }
      break;
    }
    case Fault::NonAdjunction: {
      r.check = "adjunction";
      const auto adj = broken_chain_adjunction();
      const auto rep = catposet::check_adjunction(adj.F, adj.G);
      if (!rep.ok) {
        r.detected = true;
        r.witness = rep.witness;
        if (rep.pair)
          r.witness += " (x = " + adj.F.source->object_label(rep.pair->first) +
                       ", y = " + adj.F.target->object_label(rep.pair->second) + ")";
      }
      break;
    }
    case Fault::UnstableBicomodule: {
      r.check = "stability and associativity";
      auto C = category_of(FinPoset::chain(3), "chain3");
      const auto N = catposet::nerve(C, 5);
      const auto B = bicomodule::total_decalage(N);
      const auto M = bicomodule::drop_objects(B, 0, 1, {chain_simplex(N, *C)});
      const auto val = bicomodule::validate_configuration(*M, 2);
      const auto assoc = bicomodule::check_associativity(*M, 5, 1);
      if (const auto* f = val.first_failure(); f && !assoc.passed()) {
        r.detected = true;
        r.witness = (f->witness ? f->witness->description : f->name) + "; associativity fails at " +
                    assoc.failures.front().label;
      }
      break;
    }
  }
  return r;
}

}  // namespace moebius::examples
