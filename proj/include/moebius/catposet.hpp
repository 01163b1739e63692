#pragma once

#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "moebius/rational.hpp"
#include "moebius/simplicial.hpp"

namespace moebius::bicomodule {
class AugmentedBisimplicialGroupoid;
}

namespace moebius::catposet {

using Index = std::uint32_t;
inline constexpr Index kNone = 0xffffffffu;

// A finite poset stored as the reflexive-transitive closure of its input.
class FinPoset {
 public:
  FinPoset() = default;
  // Closes the relation; throws StructuralError on a cycle.
  FinPoset(std::vector<std::string> labels, const std::vector<std::pair<Index, Index>>& relations);
  static FinPoset from_labels(std::vector<std::string> labels,
                              const std::vector<std::pair<std::string, std::string>>& relations);
  static FinPoset chain(int n);
  static FinPoset antichain(int n);

  std::size_t size() const { return labels_.size(); }
  const std::string& label(Index x) const { return labels_[x]; }
  const std::vector<std::string>& labels() const { return labels_; }
  std::optional<Index> index(const std::string& label) const;
  bool leq(Index a, Index b) const { return leq_[a * size() + b] != 0; }
  bool less(Index a, Index b) const { return a != b && leq(a, b); }
  std::vector<std::pair<Index, Index>> strict_relations() const;
  bool is_discrete() const;
  // length of the longest strict chain ending at x
  int height(Index x) const;

 private:
  std::vector<std::string> labels_;
  std::vector<char> leq_;
};

struct Morphism {
  std::string label;
  Index source;
  Index target;
};

class FinCategory;
using CategoryPtr = std::shared_ptr<const FinCategory>;

class FinCategory {
 public:
  std::size_t object_count() const { return objects_.size(); }
  std::size_t morphism_count() const { return morphisms_.size(); }
  const std::string& name() const { return name_; }
  const std::string& object_label(Index x) const { return objects_[x]; }
  const Morphism& morphism(Index m) const { return morphisms_[m]; }
  Index source(Index m) const { return morphisms_[m].source; }
  Index target(Index m) const { return morphisms_[m].target; }
  Index identity(Index x) const { return identity_[x]; }
  bool is_identity(Index m) const { return identity_[morphisms_[m].source] == m; }
  // g o f; throws DomainError when not composable
  Index compose(Index g, Index f) const;
  const std::vector<Index>& hom(Index a, Index b) const { return hom_[a * object_count() + b]; }
  std::optional<Index> find_object(const std::string& label) const;
  std::optional<Index> find_morphism(const std::string& label) const;
  // Exhaustive unit/associativity check; throws StructuralError.
  void validate() const;

 private:
  friend class CategoryBuilder;
  std::string name_;
  std::vector<std::string> objects_;
  std::vector<Morphism> morphisms_;
  std::vector<Index> identity_;
  std::vector<Index> table_;  // table_[g * morphism_count + f]
  std::vector<std::vector<Index>> hom_;
};

// Identities "id_<object>" are created automatically and compose implicitly;
// every composable pair of non-identity morphisms needs a composite.
class CategoryBuilder {
 public:
  explicit CategoryBuilder(std::string name = "C") : name_(std::move(name)) {}
  Index add_object(const std::string& label);
  Index add_morphism(const std::string& label, const std::string& source, const std::string& target);
  void set_composite(const std::string& g, const std::string& f, const std::string& gf);
  CategoryPtr build() const;

 private:
  std::string name_;
  std::vector<std::string> objects_;
  std::vector<Morphism> morphisms_;
  std::vector<std::tuple<std::string, std::string, std::string>> composites_;
};

// The category with one morphism x -> y for each x <= y ("x<=y", or "id_x").
CategoryPtr category_of(const FinPoset& P, std::string name = "P");

struct CatFunctor {
  CategoryPtr source;
  CategoryPtr target;
  std::vector<Index> on_objects;
  std::vector<Index> on_morphisms;
  // Throws StructuralError unless identities, endpoints and composites are preserved.
  void validate() const;
};
// Functor between poset categories induced by a monotone object map.
CatFunctor monotone_functor(const CategoryPtr& P, const CategoryPtr& Q, std::vector<Index> on_objects);

struct Adjunction {
  CatFunctor F;  // X -> Y
  CatFunctor G;  // Y -> X
};

struct AdjunctionCheck {
  bool ok = false;
  std::optional<std::pair<Index, Index>> pair;  // failing (x, y)
  std::string witness;
};
// Searches for a unit making Hom(Fx, y) -> Hom(x, Gy), h |-> G(h) o eta_x,
// bijective for all y and inducing F on morphisms.
AdjunctionCheck check_adjunction(const CatFunctor& F, const CatFunctor& G);

struct MobiusCategoryReport {
  bool ok = false;
  int max_length = 0;  // longest chain of non-identity arrows
  std::string witness;
};
// Default bound: the number of objects (longer chains revisit an object).
MobiusCategoryReport is_mobius_category(const FinCategory& C, std::optional<int> chain_bound = {});
// Number of chains of k non-identity arrows composing to each morphism, k = 0..bound.
std::vector<std::vector<Rational>> factorization_counts(const FinCategory& C, int bound);
Rational classical_mobius(const FinCategory& C, Index f, std::optional<int> chain_bound = {});
// Poset recursion mu(x, y) = -sum_{x <= z < y} mu(x, z), as an independent route.
Rational poset_mobius_recursive(const FinPoset& P, Index x, Index y);

// Longest non-identity path ending at each object, if the arrows are acyclic
// on objects (no loops); this grades nerves additively.
std::optional<std::vector<std::uint32_t>> object_heights(const FinCategory& C);

// Discrete nerve: level n holds the composable chains of n morphisms.
simplicial::TruncatedSimplicialGroupoid nerve(const CategoryPtr& C, int max_level);
// Chain of level n as its morphism list (n = 0: the single object).
struct ChainView {
  std::vector<Index> objects;
  std::vector<Index> morphisms;
};
ChainView nerve_chain(const simplicial::TruncatedSimplicialGroupoid& N, int n, groupoid::ObjectId sigma);

struct CorrespondenceCat {
  CategoryPtr category;
  std::vector<int> labels;  // 0 or 1 per object
  // Throws StructuralError if a morphism goes from label 1 to label 0.
  void validate() const;
};

struct FibrationReport {
  std::vector<std::optional<Index>> cocartesian;  // per object over 0
  std::vector<std::optional<Index>> cartesian;    // per object over 1
  bool all_cocartesian = false;
  bool all_cartesian = false;
  bool bicartesian() const { return all_cocartesian && all_cartesian; }
};
// Lift search by the universal property on mixed hom-sets.
FibrationReport fibration_report(const CorrespondenceCat& M);

struct MappingCylinder {
  CorrespondenceCat correspondence;
  FibrationReport report;
  std::vector<Index> source_object;  // object of C -> object of M
  std::vector<Index> target_object;  // object of D -> object of M
  // mixed morphism of M for x in C and h : F x -> y in D
  std::vector<std::vector<Index>> mixed;  // mixed[x][h] or kNone
};
MappingCylinder mapping_cylinder(const CatFunctor& F);
// Right adjoint read off cartesian lifts, when every object over 1 has one.
std::optional<CatFunctor> right_adjoint_from_lifts(const CatFunctor& F, const MappingCylinder& M);

// Bisimplicial nerve of a correspondence: B_{i,j} is the set of chains
// v_0 -> ... -> v_i -> w_0 -> ... -> w_j with the v's over 0 and the w's over 1.
// e_l deletes v_l, d_k deletes w_k; pointings use the lifts when they exist.
std::shared_ptr<const bicomodule::AugmentedBisimplicialGroupoid> correspondence_bisimplicial(
    const CorrespondenceCat& M, int max_level = 4);
// The chain of an object of B_{i,j} of such a nerve; throws DomainError for
// other bisimplicial groupoids.
ChainView correspondence_chain(const bicomodule::AugmentedBisimplicialGroupoid& B, int i, int j,
                               groupoid::ObjectId m);

struct RotaSides {
  Rational lhs;
  Rational rhs;
};
// sum_{f : x -> x', F x' = y} mu_X(f) and sum_{g : y' -> y, G y' = x} mu_Y(g).
RotaSides rota_direct(const Adjunction& adj, Index x, Index y, std::optional<int> chain_bound = {});

}  // namespace moebius::catposet
