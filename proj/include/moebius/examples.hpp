#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "moebius/bicomodule.hpp"
#include "moebius/catposet.hpp"
#include "moebius/rational.hpp"
#include "moebius/simplicial.hpp"

namespace moebius::examples {

using catposet::FinPoset;
using groupoid::ObjectId;
using simplicial::TruncatedSimplicialGroupoid;

inline constexpr int kMaxElements = 6;

// A labelled poset with a monotone map to {0, ..., layers - 1}; empty layers allowed.
struct LayeredPoset {
  FinPoset poset;
  std::vector<int> layer;
  int layers = 0;
};

// Level n: n-layered finite sets with at most grade_bound elements; morphisms
// are layer-preserving bijections. Faces join inner layers and delete outer
// ones, degeneracies insert empty layers; graded by element count.
// max_level defaults to grade_bound + 3.
TruncatedSimplicialGroupoid layered_sets(std::uint32_t grade_bound, int max_level = -1);
// The same for finite posets with monotone layerings.
TruncatedSimplicialGroupoid layered_posets(std::uint32_t grade_bound, int max_level = -1);

// B_{i,j}: labelled posets with i + j + 1 layers whose first i layers form an
// antichain (i set layers, then j + 1 poset layers). Set elements may lie
// below poset elements. e_0 deletes the first layer, e_l joins layers l - 1
// and l (so e_i merges the last set layer into the first poset layer), d_k
// joins the poset layers k and k + 1 and d_j deletes the last layer. The
// borders are layered_sets (j = -1) and layered_posets (i = -1), sharing
// their groupoids. The right pointing inserts an empty first poset layer; the
// left pointing prepends an empty layer to a layered poset (only at i = 0).
struct SetsPosets {
  TruncatedSimplicialGroupoid sets;
  TruncatedSimplicialGroupoid posets;
  bicomodule::BisimplicialPtr bicomodule;
};
SetsPosets sets_posets_bicomodule(std::uint32_t grade_bound, int max_level = -1);

// Conversions between objects of these instances and explicit layered posets.
// Elements are labelled a, b, c, ...
LayeredPoset decode(const TruncatedSimplicialGroupoid& X, int n, ObjectId x);
LayeredPoset decode(const bicomodule::AugmentedBisimplicialGroupoid& B, int i, int j, ObjectId m);
std::optional<ObjectId> encode(const TruncatedSimplicialGroupoid& X, int n, const FinPoset& P,
                               const std::vector<int>& layer);
std::optional<ObjectId> encode(const bicomodule::AugmentedBisimplicialGroupoid& B, int i, int j,
                               const FinPoset& P, const std::vector<int>& layer);
// P as a 1-layered poset, i.e. an object of C_1 or of B_{0,0}.
std::optional<ObjectId> poset_edge(const TruncatedSimplicialGroupoid& C, const FinPoset& P);
std::optional<ObjectId> poset_edge(const bicomodule::AugmentedBisimplicialGroupoid& B, const FinPoset& P);

// ---------------------------------------------------------------------------
// Poset catalog

struct PosetClass {
  FinPoset poset;  // canonically labelled 0, 1, ...; labels form a linear extension
  std::uint64_t aut_order;
  std::string canonical;
};
// Iso classes of posets with exactly n elements, sorted by canonical form.
// Throws DomainError for n > 6.
std::vector<PosetClass> enumerate_posets(int n);
// Isomorphism-invariant string; equal iff the posets are isomorphic. Size <= 6.
std::string canonical_form(const FinPoset& P);
// The canonically labelled representative of P's class.
FinPoset canonical_poset(const FinPoset& P);
std::uint64_t automorphism_count(const FinPoset& P);

enum class MuRoute { Direct, Rota };
// Mobius function of the layered-poset decomposition space at P. Direct: from
// the Phi counts on C_1. Rota: both sides of the Rota formula on the
// bicomodule of layered sets and posets, which must agree (std::logic_error
// otherwise).
Rational mu_posets(const SetsPosets& instance, const FinPoset& P, MuRoute route);
Rational mu_posets(const FinPoset& P, MuRoute route);

}  // namespace moebius::examples

namespace moebius::examples {

// ---------------------------------------------------------------------------
// Fixed adjunctions and negative controls

// F : {0<1<2} -> {0<1}, F = (0, 0, 1), with right adjoint G = (1, 2).
catposet::Adjunction chain_adjunction();
// The same F with G = (0, 2), which is not a right adjoint.
catposet::Adjunction broken_chain_adjunction();
// Divisors of n ordered by divisibility, labelled by the divisors.
FinPoset divisor_poset(int n);

struct NamedAdjunction {
  std::string name;
  catposet::Adjunction adjunction;
};
// chain, gcd(-, 6) on the divisors of 12 with d |-> largest divisor of 12
// whose gcd with 6 divides d, image -/ preimage along {a,b,c} -> {x,y} with
// a, b |-> x, and the identity on the 2x2 grid.
std::vector<NamedAdjunction> adjunction_battery();

enum class Fault { DroppedSimplex, CorruptedPhi, NonAdjunction, UnstableBicomodule };
std::string to_string(Fault f);
std::optional<Fault> parse_fault(const std::string& s);
struct FaultReport {
  std::string check;  // the check that is expected to catch the fault
  bool detected = false;
  std::string witness;
};
// DroppedSimplex: the 2-simplex (0<1, 1<2) removed from the nerve of 0<1<2,
// caught by the Segal check. CorruptedPhi: the sign of mu flipped at the
// discrete 2-poset of layered posets, caught by Mobius inversion.
// NonAdjunction: broken_chain_adjunction, caught by check_adjunction.
// UnstableBicomodule: a class of B_{0,1} removed from the total decalage of a
// chain nerve, caught by the stability and associativity checks.
FaultReport run_fault(Fault f);

}  // namespace moebius::examples
