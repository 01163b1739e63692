#pragma once

#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "moebius/groupoid.hpp"

namespace moebius::simplicial {

using groupoid::ClassId;
using groupoid::FunctorPtr;
using groupoid::GroupoidPtr;
using groupoid::MorphismId;
using groupoid::ObjectId;

class TruncatedSimplicialGroupoid;

// A term of the comultiplication of an edge: the classes of the two principal
// edges of a 2-simplex over it, and its weight |Aut f| / |Aut sigma|.
struct TensorTerm {
  ClassId first;
  ClassId second;
  Rational weight;
};

// Optional direct enumeration of fibres of long-edge maps. Implementations
// count structures on a fixed edge instead of building the higher levels; the
// results must agree with the intrinsic groupoid computation.
class FiberShortcuts {
 public:
  virtual ~FiberShortcuts() = default;
  virtual std::optional<std::vector<TensorTerm>> comultiply(ObjectId f) const = 0;
  virtual std::optional<Rational> phi(ObjectId f, int n) const = 0;
};

// Source of levels and structure maps; results are memoised by the wrapper.
class LevelGenerator {
 public:
  virtual ~LevelGenerator() = default;
  virtual std::string name() const = 0;
  virtual int max_level() const = 0;
  virtual GroupoidPtr level(const TruncatedSimplicialGroupoid& X, int n) const = 0;
  // d_i : X_n -> X_{n-1}
  virtual FunctorPtr face(const TruncatedSimplicialGroupoid& X, int n, int i) const = 0;
  // s_i : X_n -> X_{n+1}
  virtual FunctorPtr degeneracy(const TruncatedSimplicialGroupoid& X, int n, int i) const = 0;
  // Additive grading on X_1, if any.
  virtual std::optional<std::uint32_t> grade(const TruncatedSimplicialGroupoid&, ObjectId) const {
    return std::nullopt;
  }
  virtual bool graded() const { return false; }
  // Uniform bound on the length of nondegenerate simplices, if known.
  virtual std::optional<int> length_bound() const { return std::nullopt; }
  virtual const FiberShortcuts* shortcuts() const { return nullptr; }
  // Levels truncated at an additive grade on all simplices, if any.
  virtual std::optional<std::uint32_t> truncation_grade() const { return std::nullopt; }
  virtual std::uint32_t simplex_grade(const TruncatedSimplicialGroupoid&, int, ObjectId) const { return 0; }
};

// A simplicial groupoid truncated at max_level, generated lazily. Copies share
// the memoised levels.
class TruncatedSimplicialGroupoid {
 public:
  explicit TruncatedSimplicialGroupoid(std::shared_ptr<const LevelGenerator> generator);

  std::string name() const { return generator_->name(); }
  int max_level() const { return generator_->max_level(); }
  const LevelGenerator& generator() const { return *generator_; }

  GroupoidPtr level(int n) const;
  FunctorPtr face(int n, int i) const;
  FunctorPtr degeneracy(int n, int i) const;

  bool graded() const { return generator_->graded(); }
  std::optional<std::uint32_t> grade(ObjectId edge) const { return generator_->grade(*this, edge); }
  std::optional<int> length_bound() const { return generator_->length_bound(); }
  const FiberShortcuts* shortcuts() const { return generator_->shortcuts(); }
  std::optional<std::uint32_t> truncation_grade() const { return generator_->truncation_grade(); }
  std::uint32_t simplex_grade(int n, ObjectId x) const { return generator_->simplex_grade(*this, n, x); }

  // Classes of X_1 in the essential image of s_0 : X_0 -> X_1.
  const std::vector<bool>& degenerate_edge_classes() const;

  // Throws InsufficientLevels when level n is beyond the truncation.
  void require_level(int n) const;

  // Derived data memoised alongside the levels (fibre tables and the like).
  template <class T>
  std::shared_ptr<const T> memo(const std::string& key, const std::function<std::shared_ptr<const T>()>& make) const {
    return std::static_pointer_cast<const T>(memo_erased(key, [&]() -> std::shared_ptr<const void> { return make(); }));
  }

 private:
  struct Cache {
    std::mutex mutex;
    std::map<int, GroupoidPtr> levels;
    std::map<std::pair<int, int>, FunctorPtr> faces;
    std::map<std::pair<int, int>, FunctorPtr> degeneracies;
    std::once_flag degenerate_once;
    std::vector<bool> degenerate;
    std::map<std::string, std::shared_ptr<const void>> extras;
  };
  std::shared_ptr<const void> memo_erased(const std::string& key,
                                          const std::function<std::shared_ptr<const void>()>& make) const;
  std::shared_ptr<const LevelGenerator> generator_;
  std::shared_ptr<Cache> cache_;
};

// Composite of faces applied to one object.
ObjectId apply_face(const TruncatedSimplicialGroupoid& X, int n, int i, ObjectId x);
// Principal edges of an n-simplex, in order (edge i joins vertices i-1 and i).
std::vector<ObjectId> principal_edges(const TruncatedSimplicialGroupoid& X, int n, ObjectId sigma);
// The long edge d_1^{n-1} sigma (for n = 0 this is s_0 sigma).
ObjectId long_edge(const TruncatedSimplicialGroupoid& X, int n, ObjectId sigma);
// Iterated face map d_1^{n-1} : X_n -> X_1 as a functor (n >= 1).
FunctorPtr long_edge_functor(const TruncatedSimplicialGroupoid& X, int n);
bool all_edges_nondegenerate(const TruncatedSimplicialGroupoid& X, int n, ObjectId sigma);

// Full subgroupoid X_w of X_n for a word w over {'0', '1', 'a'}: '0' edges are
// degenerate, 'a' edges nondegenerate, '1' edges arbitrary.
struct WordGroupoid {
  groupoid::Subgroupoid sub;
  FunctorPtr inclusion;
};
WordGroupoid word_groupoid(const TruncatedSimplicialGroupoid& X, const std::string& word);
// The groupoid of nondegenerate n-simplices (word a^n); requires X complete.
WordGroupoid nondegenerate_simplices(const TruncatedSimplicialGroupoid& X, int n);

// ---------------------------------------------------------------------------

class SimplicialMap {
 public:
  using LevelFn = std::function<FunctorPtr(int)>;
  SimplicialMap(TruncatedSimplicialGroupoid source, TruncatedSimplicialGroupoid target, LevelFn fn,
                std::string name = "f");

  const TruncatedSimplicialGroupoid& source() const { return source_; }
  const TruncatedSimplicialGroupoid& target() const { return target_; }
  const std::string& name() const { return name_; }
  int max_level() const { return std::min(source_.max_level(), target_.max_level()); }
  FunctorPtr at(int n) const;

 private:
  TruncatedSimplicialGroupoid source_;
  TruncatedSimplicialGroupoid target_;
  LevelFn fn_;
  std::string name_;
  struct Cache {
    std::mutex mutex;
    std::map<int, FunctorPtr> levels;
  };
  std::shared_ptr<Cache> cache_;
};

// ---------------------------------------------------------------------------
// Axiom checks

enum class Profile { Identities, Segal, Decomposition, Complete };
std::string to_string(Profile p);
std::optional<Profile> parse_profile(const std::string& s);

struct CheckItem {
  std::string name;
  bool passed = true;
  std::optional<groupoid::Witness> witness;
};

struct AxiomReport {
  std::string subject;
  std::string profile;
  int n_max = 0;
  int top_level = 0;  // highest simplicial level inspected
  std::vector<CheckItem> items;

  bool passed() const;
  const CheckItem* first_failure() const;
};

// Attaches the grade truncation of the corners A = XA_na, B = XB_nb and
// C = XC_nc when all three instances are truncated; the bound is the smallest.
void truncate_square(groupoid::Square& sq, const TruncatedSimplicialGroupoid& XA, int na,
                     const TruncatedSimplicialGroupoid& XB, int nb, const TruncatedSimplicialGroupoid& XC, int nc);

// Segal square (n >= 1): X_{n+1} -> X_n by d_0 and d_{n+1}, over X_{n-1}.
groupoid::Square segal_square(const TruncatedSimplicialGroupoid& X, int n);
// The four decomposition squares for given n and 0 <= k <= n, in the order
// (s_{k+1}, d_0), (d_{k+2}, d_0), (s_k, d_top), (d_{k+1}, d_top).
std::vector<groupoid::Square> decomposition_squares(const TruncatedSimplicialGroupoid& X, int n,
                                                    int k);

// Segal checks levels up to n_max + 1; decomposition checks the degeneracy
// squares for n <= n_max and the face squares for n <= n_max - 1, so it
// inspects levels up to n_max + 2; identities are checked up to n_max + 1.
AxiomReport check_axioms(const TruncatedSimplicialGroupoid& X, Profile profile, int n_max);

// Cartesian on all codegeneracy squares (n <= n_max) and inner coface squares
// (levels up to n_max + 1).
AxiomReport is_culf(const SimplicialMap& f, int n_max);
// Single square: f cartesian on the face d_i : X_{n+1} -> X_n.
groupoid::CheckResult cartesian_on_face(const SimplicialMap& f, int n, int i);

// ---------------------------------------------------------------------------
// Decalage and pointed comodules

enum class Side { Left, Right };

// A simplicial groupoid C over a base Y, augmented by C_0 -> C_{-1} and
// pointed by sections C_{n-1} -> C_n. For the right side the coaction is
// C_0 <-d_0- C_1 -(d_1, f)-> C_0 x Y_1; for the left side it is
// C_0 <-d_1- C_1 -(f, d_0)-> Y_1 x C_0.
struct ComoduleConfiguration {
  Side side = Side::Right;
  TruncatedSimplicialGroupoid comodule;
  TruncatedSimplicialGroupoid base;
  std::shared_ptr<const SimplicialMap> map;
  GroupoidPtr augmented;                       // C_{-1}
  FunctorPtr augmentation;                     // C_0 -> C_{-1}
  std::function<FunctorPtr(int)> pointing;     // n >= 0 : C_{n-1} -> C_n
  // additive grade on C_0 bounding the length of comodule simplices
  std::function<std::optional<std::uint32_t>(ObjectId)> grade;
  std::optional<int> length_bound;
};

// Dec_bottom (side Right) deletes X_0, d_0, s_0: level n is X_{n+1} with faces
// d_{i+1}; the comparison map is d_0, the augmentation d_1 : X_1 -> X_0 and the
// pointing s_0. Dec_top (side Left) deletes the top face and degeneracy.
ComoduleConfiguration decalage(const TruncatedSimplicialGroupoid& X, Side side);

// The simplicial groupoid with the given objects of level n removed, together
// with every higher simplex having one of them as an iterated face.
TruncatedSimplicialGroupoid drop_simplices(const TruncatedSimplicialGroupoid& X, int n,
                                           const std::vector<ObjectId>& objects);

}  // namespace moebius::simplicial
