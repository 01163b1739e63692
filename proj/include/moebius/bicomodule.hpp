#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "moebius/incidence.hpp"
#include "moebius/simplicial.hpp"

namespace moebius::bicomodule {

using groupoid::ClassId;
using groupoid::FunctorPtr;
using groupoid::GroupoidPtr;
using groupoid::ObjectId;
using incidence::Functional;
using simplicial::ComoduleConfiguration;
using simplicial::Side;
using simplicial::TensorTerm;
using simplicial::TruncatedSimplicialGroupoid;

// Levels B_{i,j}, -1 <= i, j (not both -1). Horizontal operators act on j,
// vertical ones on i; the augmentations are the faces leaving index 0:
// u = d_0 : B_{i,0} -> B_{i,-1} and v = e_0 : B_{0,j} -> B_{-1,j}.
class BisimplicialGenerator {
 public:
  virtual ~BisimplicialGenerator() = default;
  virtual std::string name() const = 0;
  virtual int max_i() const = 0;
  virtual int max_j() const = 0;
  virtual GroupoidPtr level(int i, int j) const = 0;
  // d_k : B_{i,j} -> B_{i,j-1}, 0 <= k <= j
  virtual FunctorPtr d(int i, int j, int k) const = 0;
  // e_l : B_{i,j} -> B_{i-1,j}, 0 <= l <= i
  virtual FunctorPtr e(int i, int j, int l) const = 0;
  // s_k : B_{i,j} -> B_{i,j+1}, 0 <= k <= j
  virtual FunctorPtr s(int i, int j, int k) const = 0;
  // t_l : B_{i,j} -> B_{i+1,j}, 0 <= l <= i
  virtual FunctorPtr t(int i, int j, int l) const = 0;
  // s_{-1} : B_{i,j-1} -> B_{i,j}, or null when there is no right pointing
  virtual FunctorPtr right_pointing(int, int) const { return nullptr; }
  // t_{top+1} : B_{i-1,j} -> B_{i,j}, or null
  virtual FunctorPtr left_pointing(int, int) const { return nullptr; }
  // additive grade on B_{0,0}, X_1 = B_{1,-1} and Y_1 = B_{-1,1}
  virtual bool graded() const { return false; }
  virtual std::optional<std::uint32_t> grade(int, int, ObjectId) const { return std::nullopt; }
  // Levels truncated at an additive grade on every B_{i,j}, if any.
  virtual std::optional<std::uint32_t> truncation_grade() const { return std::nullopt; }
  virtual std::uint32_t simplex_grade(int, int, ObjectId) const { return 0; }
  // Borders as simplicial groupoids with their own fast paths, if any. They
  // must return exactly the groupoids level(i, -1) and level(-1, j).
  virtual std::optional<TruncatedSimplicialGroupoid> left_border() const { return std::nullopt; }
  virtual std::optional<TruncatedSimplicialGroupoid> right_border() const { return std::nullopt; }
};

class AugmentedBisimplicialGroupoid;
using BisimplicialPtr = std::shared_ptr<const AugmentedBisimplicialGroupoid>;

class AugmentedBisimplicialGroupoid : public std::enable_shared_from_this<AugmentedBisimplicialGroupoid> {
 public:
  static BisimplicialPtr make(std::shared_ptr<const BisimplicialGenerator> generator);

  std::string name() const { return generator_->name(); }
  int max_i() const { return generator_->max_i(); }
  int max_j() const { return generator_->max_j(); }
  const BisimplicialGenerator& generator() const { return *generator_; }

  GroupoidPtr level(int i, int j) const;
  FunctorPtr d(int i, int j, int k) const;
  FunctorPtr e(int i, int j, int l) const;
  FunctorPtr s(int i, int j, int k) const;
  FunctorPtr t(int i, int j, int l) const;
  FunctorPtr u(int i) const { return d(i, 0, 0); }
  FunctorPtr v(int j) const { return e(0, j, 0); }
  FunctorPtr right_pointing(int i, int j) const;
  FunctorPtr left_pointing(int i, int j) const;
  bool graded() const { return generator_->graded(); }
  std::optional<std::uint32_t> grade(ObjectId m) const { return generator_->grade(0, 0, m); }

  // X = B_{., -1}, Y = B_{-1, .}, row i = B_{i, .} (levels j >= 0) and column j = B_{., j}.
  const TruncatedSimplicialGroupoid& X() const { return *X_; }
  const TruncatedSimplicialGroupoid& Y() const { return *Y_; }
  TruncatedSimplicialGroupoid row(int i) const;
  TruncatedSimplicialGroupoid column(int j) const;
  // Row 0 over Y by v, augmented by u, pointed by s_{-1}.
  ComoduleConfiguration right_comodule() const;
  // Column 0 over X by u, augmented by v, pointed by t_{top+1}.
  ComoduleConfiguration left_comodule() const;

  void require(int i, int j) const;

 private:
  explicit AugmentedBisimplicialGroupoid(std::shared_ptr<const BisimplicialGenerator> generator);
  using Key = std::tuple<char, int, int, int>;
  std::shared_ptr<const BisimplicialGenerator> generator_;
  mutable std::mutex mutex_;
  mutable std::map<std::pair<int, int>, GroupoidPtr> levels_;
  mutable std::map<Key, FunctorPtr> maps_;
  std::optional<TruncatedSimplicialGroupoid> X_, Y_;
  mutable std::map<std::pair<char, int>, TruncatedSimplicialGroupoid> lines_;
  FunctorPtr cached(const Key& key, const std::function<FunctorPtr()>& make) const;
};

// ---------------------------------------------------------------------------
// Comodules

// Right: C_0 <-d_0- C_1 -(d_1, f)-> C_0 x Y_1 (first in C_0, second in Y_1).
// Left:  D_0 <-d_1- D_1 -(f, d_0)-> X_1 x D_0 (first in X_1, second in D_0).
std::vector<TensorTerm> coact(const ComoduleConfiguration& c, ObjectId m);
// |fibre of the pointing C_{-1} -> C_0 over m|; throws unless the pointing is a monomorphism.
Functional pointing_delta(const ComoduleConfiguration& c);
// Right: (theta *_r beta)(m), theta on C_0 and beta on Y_1. Left: (alpha *_l theta)(m).
Rational convolve_action(const ComoduleConfiguration& c, const Functional& outer, const Functional& inner,
                         ObjectId m);
// Fibre over m of the long edge on n-simplices whose bottom vertex lies outside
// the pointing image and whose image in the base has nondegenerate principal
// edges; n = -1 gives pointing_delta.
Rational phi_comodule(const ComoduleConfiguration& c, ObjectId m, int n);
Functional zeta_comodule(const ComoduleConfiguration& c);

struct ComoduleCheckItem {
  ClassId cls;
  std::string label;
  std::string identity;  // which identity failed
  Rational lhs, rhs;
};
struct ComoduleMobiusReport {
  std::size_t checked = 0;
  std::vector<ComoduleCheckItem> failures;
  bool passed() const { return failures.empty(); }
};
// Per n: zeta *_r Phi_n = Phi^R_{n-1} + Phi^R_n (left mirrored), and the summed
// inversion zeta *_r mu = delta^R (mu *_l zeta = delta^L). A supplied phi table
// replaces the comodule Phi values, for negative controls.
using PhiOverride = std::function<std::optional<Rational>(ClassId, int)>;
ComoduleMobiusReport comodule_mobius_check(const ComoduleConfiguration& c, const std::vector<ClassId>& sample,
                                           const PhiOverride& override_phi = nullptr);
// Classes of C_0 of grade at most the bound.
std::vector<ClassId> comodule_classes(const ComoduleConfiguration& c, std::uint32_t bound);

// ---------------------------------------------------------------------------
// Bicomodules

struct ValidationReport {
  std::vector<simplicial::AxiomReport> sections;
  bool passed() const;
  const simplicial::CheckItem* first_failure() const;
};
// Rows 0, 1 and columns 0, 1 Segal up to n_max, the two stability squares on
// B_{1,1} (or the whole family when full_stability), u and v culf, the
// borders decomposition spaces, and completeness of the pointings present.
ValidationReport validate_configuration(const AugmentedBisimplicialGroupoid& B, int n_max,
                                        bool full_stability = false);

std::vector<TensorTerm> coact(const AugmentedBisimplicialGroupoid& B, Side side, ObjectId m);
Rational convolve_action(const AugmentedBisimplicialGroupoid& B, Side side, const Functional& outer,
                         const Functional& inner, ObjectId m);
Functional pointing_delta(const AugmentedBisimplicialGroupoid& B, Side side);

struct AssociativityFailure {
  int trial;
  ClassId cls;
  std::string label;
  Rational lhs, rhs;
};
struct AssociativityReport {
  int trials = 0;
  std::size_t evaluations = 0;
  std::vector<AssociativityFailure> failures;
  bool passed() const { return failures.empty(); }
};
// alpha *_l (theta *_r beta) = (alpha *_l theta) *_r beta for random integer
// functionals on every class of B_{0,0} of grade at most the bound.
AssociativityReport check_associativity(const AugmentedBisimplicialGroupoid& B, int trials, std::uint32_t seed,
                                        std::optional<std::uint32_t> grade_bound = std::nullopt);

struct RotaValues {
  Rational lhs;  // (mu^X *_l delta^R)(m)
  Rational rhs;  // (delta^L *_r mu^Y)(m)
};
RotaValues rota_evaluate(const AugmentedBisimplicialGroupoid& B, ObjectId m);

// B_{i,j} = X_{i+j+1}, split after vertex i; both pointings are degeneracies.
BisimplicialPtr total_decalage(const TruncatedSimplicialGroupoid& X);

// Removes the iso classes of the given objects of B_{i0,j0}, with everything
// above them, and drops the pointings that no longer restrict.
BisimplicialPtr drop_objects(const BisimplicialPtr& B, int i0, int j0, const std::vector<ObjectId>& objects);

}  // namespace moebius::bicomodule
