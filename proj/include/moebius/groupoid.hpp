#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "moebius/permutation.hpp"
#include "moebius/rational.hpp"

namespace moebius::groupoid {

using ObjectId = std::uint32_t;
using MorphismId = std::uint32_t;
using ClassId = std::uint32_t;

inline constexpr std::uint32_t kNone = 0xffffffffu;

class FiniteGroupoid;

// Strategy for composing morphisms; the groupoid has already checked that
// target(f) == source(g).
class CompositionRule {
 public:
  virtual ~CompositionRule() = default;
  virtual MorphismId compose(const FiniteGroupoid& G, MorphismId g, MorphismId f) const = 0;
};

// Connected components of a groupoid with a chosen representative per
// component and a chosen isomorphism from every object to its representative.
struct IsoClassTable {
  std::vector<ClassId> class_of;
  std::vector<ObjectId> representative;
  std::vector<std::uint64_t> aut_order;
  std::vector<std::uint32_t> class_size;
  std::vector<MorphismId> to_rep;

  std::size_t size() const { return representative.size(); }
};

// A finite groupoid. Morphisms are numbered contiguously by source, so the
// morphisms out of x are the ids in [out_begin(x), out_end(x)).
class FiniteGroupoid {
 public:
  struct Data {
    std::string name;
    std::vector<std::string> object_labels;
    std::vector<ObjectId> source;
    std::vector<ObjectId> target;
    std::vector<std::uint32_t> out_offset;  // object_count + 1 entries
    std::vector<MorphismId> identity;
    std::vector<MorphismId> inverse;
    std::shared_ptr<const CompositionRule> rule;
    std::function<std::string(MorphismId)> morphism_labeler;
  };

  explicit FiniteGroupoid(Data data);

  const std::string& name() const { return data_.name; }
  std::size_t object_count() const { return data_.object_labels.size(); }
  std::size_t morphism_count() const { return data_.source.size(); }

  ObjectId source(MorphismId m) const { return data_.source[m]; }
  ObjectId target(MorphismId m) const { return data_.target[m]; }
  MorphismId identity(ObjectId x) const { return data_.identity[x]; }
  MorphismId inverse(MorphismId m) const { return data_.inverse[m]; }
  bool is_identity(MorphismId m) const { return data_.identity[data_.source[m]] == m; }

  MorphismId out_begin(ObjectId x) const { return data_.out_offset[x]; }
  MorphismId out_end(ObjectId x) const { return data_.out_offset[x + 1]; }
  std::uint32_t out_degree(ObjectId x) const { return out_end(x) - out_begin(x); }
  std::uint32_t out_position(MorphismId m) const { return m - out_begin(source(m)); }

  // g o f; throws DomainError unless target(f) == source(g).
  MorphismId compose(MorphismId g, MorphismId f) const;
  MorphismId compose_unchecked(MorphismId g, MorphismId f) const {
    return data_.rule->compose(*this, g, f);
  }

  std::vector<MorphismId> hom(ObjectId a, ObjectId b) const;

  const std::string& object_label(ObjectId x) const { return data_.object_labels[x]; }
  std::string morphism_label(MorphismId m) const;
  std::optional<ObjectId> find_object(const std::string& label) const;
  std::optional<MorphismId> find_morphism(const std::string& label) const;

  bool is_discrete() const { return morphism_count() == object_count(); }

  // Exhaustive check of units, inverses and associativity; throws StructuralError.
  void validate() const;

  const IsoClassTable& classes() const;
  std::uint64_t aut_order(ObjectId x) const { return classes().aut_order[classes().class_of[x]]; }

 private:
  Data data_;
  mutable std::once_flag classes_once_;
  mutable std::unique_ptr<IsoClassTable> classes_;
  mutable std::once_flag labels_once_;
  mutable std::unique_ptr<std::unordered_map<std::string, ObjectId>> label_index_;
};

using GroupoidPtr = std::shared_ptr<const FiniteGroupoid>;

// ---------------------------------------------------------------------------
// Construction

// Explicit groupoid from labelled generators. Identity morphisms "id_<label>"
// are created automatically; composites of non-identity pairs must all be given.
class GroupoidBuilder {
 public:
  explicit GroupoidBuilder(std::string name = "G") : name_(std::move(name)) {}
  ObjectId add_object(const std::string& label);
  MorphismId add_morphism(const std::string& label, ObjectId source, ObjectId target);
  MorphismId add_morphism(const std::string& label, const std::string& source,
                          const std::string& target);
  void set_composite(MorphismId g, MorphismId f, MorphismId gf);
  void set_composite(const std::string& g, const std::string& f, const std::string& gf);
  // Validates the table and throws StructuralError on any defect.
  GroupoidPtr build() const;

 private:
  MorphismId lookup(const std::string& label) const;
  std::string name_;
  std::vector<std::string> objects_;
  struct Gen {
    std::string label;
    ObjectId source, target;
  };
  std::vector<Gen> morphisms_;
  struct Composite {
    bool identity;  // id names an object when true
    std::uint32_t id;
  };
  std::unordered_map<std::uint64_t, Composite> composites_;
};

GroupoidPtr discrete_groupoid(std::vector<std::string> labels, std::string name = "discrete");

// Action groupoid: morphisms out of x are the pairs (x, g), g in the group
// attached to x, landing in g.x. The group must be constant along orbits.
struct ActionData {
  std::string name = "action";
  std::vector<std::string> labels;
  std::vector<const FiniteGroup*> group_of;
  std::function<ObjectId(ObjectId, std::uint32_t)> act;
  std::function<std::string(ObjectId, std::uint32_t)> morphism_labeler;
};
GroupoidPtr action_groupoid(ActionData data);
// The morphism (x, g) of an action groupoid.
inline MorphismId action_morphism(const FiniteGroupoid& G, ObjectId x, std::uint32_t g) {
  return G.out_begin(x) + g;
}

// Groupoid whose morphisms out of an object are all tuples of morphisms out of
// its component objects in the factor groupoids; composition is componentwise.
struct TupleData {
  std::string name = "tuple";
  std::vector<GroupoidPtr> factors;
  std::vector<std::vector<ObjectId>> components;  // per object, one entry per factor
  std::vector<std::string> labels;
  // target of the tuple morphism out of `object` with the given components
  std::function<ObjectId(ObjectId, const std::vector<MorphismId>&)> target;
};
GroupoidPtr tuple_groupoid(TupleData data);

struct Subgroupoid {
  GroupoidPtr groupoid;
  std::vector<ObjectId> parent_object;         // local -> parent
  std::vector<ObjectId> local_object;          // parent -> local or kNone
  std::vector<MorphismId> parent_morphism;     // local -> parent
};
// Full subgroupoid on the objects with keep[x] true.
Subgroupoid full_subgroupoid(const GroupoidPtr& G, const std::vector<bool>& keep,
                             std::string name = {});

// ---------------------------------------------------------------------------
// Functors

struct GroupoidFunctor {
  GroupoidPtr source;
  GroupoidPtr target;
  std::vector<ObjectId> on_objects;
  std::vector<MorphismId> on_morphisms;

  ObjectId operator()(ObjectId x) const { return on_objects[x]; }
  MorphismId map(MorphismId m) const { return on_morphisms[m]; }
  // Exhaustive functoriality check; throws StructuralError naming the defect.
  void validate() const;
  bool same_as(const GroupoidFunctor& other) const;
};

using FunctorPtr = std::shared_ptr<const GroupoidFunctor>;

FunctorPtr compose(const GroupoidFunctor& G, const GroupoidFunctor& F);  // G o F
FunctorPtr identity_functor(const GroupoidPtr& G);
// Restriction of F to full subgroupoids of its source and target.
FunctorPtr restrict_functor(const GroupoidFunctor& F, const Subgroupoid& source,
                            const Subgroupoid& target);

// ---------------------------------------------------------------------------
// Homotopy cardinality, fibres, pullbacks

Rational cardinality(const FiniteGroupoid& G);

struct Fiber {
  GroupoidPtr groupoid;       // objects (a, phi : F a -> c)
  FunctorPtr projection;      // to the source of F
  std::vector<MorphismId> phi;  // per fibre object, the morphism F a -> c
};
Fiber fiber(const GroupoidFunctor& F, ObjectId c);
// |fiber(F, c)| computed from class data: sum over classes [a] with F a ~ c of |Aut c| / |Aut a|.
Rational fiber_cardinality(const GroupoidFunctor& F, ObjectId c);

struct HomotopyPullback {
  GroupoidPtr groupoid;  // objects (a, b, phi : f a -> g b)
  FunctorPtr to_a;
  FunctorPtr to_b;
  std::vector<ObjectId> a_of, b_of;
  std::vector<MorphismId> phi;
  std::unordered_map<std::uint64_t, ObjectId> base;  // (a, b) -> first object id
};
HomotopyPullback homotopy_pullback(const GroupoidFunctor& f, const GroupoidFunctor& g);

// P --p--> A
// |q       |f
// v        v
// B --g--> C
// Levels truncated by an additive grade: pullback classes (a, b) with
// grade(a) + grade(b) - grade(c) above the bound lie outside the truncation
// and are not required to be hit.
struct Truncation {
  std::uint32_t bound;
  std::function<std::uint32_t(ObjectId)> grade_a, grade_b, grade_c;
};

struct Square {
  FunctorPtr p;
  FunctorPtr q;
  FunctorPtr f;
  FunctorPtr g;
  std::string description;
  std::optional<Truncation> truncation;
};

struct Witness {
  enum class Kind { MissingClass, ClassCollision, NotFaithful, NotFull, NotEssentiallySurjective };
  Kind kind;
  std::string description;
};
std::string to_string(Witness::Kind kind);

struct CheckResult {
  bool ok = true;
  std::optional<Witness> witness;
  explicit operator bool() const { return ok; }
  static CheckResult pass() { return {}; }
  static CheckResult fail(Witness::Kind kind, std::string description) {
    return {false, Witness{kind, std::move(description)}};
  }
};

// Throws DomainError if the square does not commute strictly.
void require_commutes(const Square& sq);
// Comparison functor P -> A x^h_C B, x |-> (p x, q x, id).
FunctorPtr comparison_functor(const Square& sq, const HomotopyPullback& pb);
// Decides whether the comparison functor is an equivalence, without building
// the iso-comma groupoid: pi_0 of the pullback is enumerated as double cosets
// and automorphism groups are compared class by class.
CheckResult is_pullback_square(const Square& sq);

CheckResult is_equivalence(const GroupoidFunctor& F);
// Every homotopy fibre is empty or contractible (equivalently F is fully faithful).
CheckResult is_monomorphism(const GroupoidFunctor& F);

struct Skeleton {
  GroupoidPtr groupoid;
  FunctorPtr collapse;   // G -> skeleton
  FunctorPtr inclusion;  // skeleton -> G
};
Skeleton skeleton(const GroupoidPtr& G);

// Groupoid of the given finite sets and all bijections between them.
GroupoidPtr bijection_groupoid(const std::vector<std::vector<std::string>>& sets,
                               std::string name = "bijections");

}  // namespace moebius::groupoid
