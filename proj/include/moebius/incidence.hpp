#pragma once

#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "moebius/rational.hpp"
#include "moebius/simplicial.hpp"

namespace moebius::incidence {

using groupoid::ClassId;
using groupoid::GroupoidPtr;
using groupoid::ObjectId;
using simplicial::TensorTerm;
using simplicial::TruncatedSimplicialGroupoid;

// A map from the iso classes of a groupoid to the rationals, given by a rule
// evaluated on demand (and memoised) or by a finite table.
class Functional {
 public:
  using Rule = std::function<Rational(ClassId)>;
  Functional(GroupoidPtr carrier, Rule rule, std::string name = "functional");
  // Classes missing from the table evaluate to zero; zero entries are dropped.
  static Functional from_table(GroupoidPtr carrier, const std::map<ClassId, Rational>& table,
                               std::string name = "table");

  const GroupoidPtr& carrier() const { return carrier_; }
  const std::string& name() const { return name_; }
  Rational operator()(ClassId c) const;
  Rational at_object(ObjectId x) const { return (*this)(carrier_->classes().class_of[x]); }
  // The finite-support table, if constructed from one.
  const std::optional<std::map<ClassId, Rational>>& table() const { return table_; }

 private:
  GroupoidPtr carrier_;
  Rule rule_;
  std::string name_;
  std::optional<std::map<ClassId, Rational>> table_;
  struct Memo {
    std::mutex mutex;
    std::map<ClassId, Rational> values;
  };
  std::shared_ptr<Memo> memo_;
};

// Fibre computations either count structures directly when the generator
// provides shortcuts (Auto) or always go through the simplicial levels.
enum class Route { Auto, Intrinsic };

// Sum over classes of 2-simplices sigma with d_1 sigma ~ f of |Aut f| / |Aut sigma|,
// collected by the classes of (d_2 sigma, d_0 sigma).
std::vector<TensorTerm> comultiply(const TruncatedSimplicialGroupoid& X, ObjectId f, Route route = Route::Auto);
// |fibre of s_0 : X_0 -> X_1 over f|
Rational counit(const TruncatedSimplicialGroupoid& X, ObjectId f);

Functional zeta(const TruncatedSimplicialGroupoid& X);
Functional delta(const TruncatedSimplicialGroupoid& X);
// (a * b)(f) = sum over comultiply(f) of weight * a(first) * b(second)
Functional convolve(const TruncatedSimplicialGroupoid& X, const Functional& a, const Functional& b,
                    Route route = Route::Auto);

// |fibre of the long edge map on the nondegenerate n-simplices over f|; n = 0 gives the counit.
Rational phi(const TruncatedSimplicialGroupoid& X, ObjectId f, int n, Route route = Route::Auto);
// Length beyond which phi vanishes at f: grade(f) for graded X, else the
// uniform length bound; throws CertificateError when neither exists.
int length_certificate(const TruncatedSimplicialGroupoid& X, ObjectId f);
Rational mobius(const TruncatedSimplicialGroupoid& X, ObjectId f, Route route = Route::Auto);
Functional mobius_functional(const TruncatedSimplicialGroupoid& X, Route route = Route::Auto);

struct InversionFailure {
  ClassId cls;
  std::string label;
  Rational zeta_mu, mu_zeta, delta;
};
struct InversionReport {
  std::size_t checked = 0;
  std::vector<InversionFailure> failures;
  bool passed() const { return failures.empty(); }
};
// Checks zeta * mu = delta = mu * zeta on the given classes of X_1, using mu
// if supplied (e.g. a deliberately corrupted table) and mobius_functional otherwise.
InversionReport verify_inversion(const TruncatedSimplicialGroupoid& X, const std::vector<ClassId>& classes,
                                 const std::optional<Functional>& mu = std::nullopt, Route route = Route::Auto);

// Classes of X_1 whose grade is at most the bound (all classes if X is ungraded).
std::vector<ClassId> classes_up_to_grade(const TruncatedSimplicialGroupoid& X, std::uint32_t bound);

}  // namespace moebius::incidence
