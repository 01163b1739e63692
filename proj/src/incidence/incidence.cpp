#include "moebius/incidence.hpp"

#include <map>

#include "moebius/errors.hpp"

namespace moebius::incidence {

Functional::Functional(GroupoidPtr carrier, Rule rule, std::string name)
    : carrier_(std::move(carrier)), rule_(std::move(rule)), name_(std::move(name)), memo_(std::make_shared<Memo>()) {}

Functional Functional::from_table(GroupoidPtr carrier, const std::map<ClassId, Rational>& table, std::string name) {
  std::map<ClassId, Rational> clean;
  for (const auto& [c, v] : table) {
    if (c >= carrier->classes().size()) throw DomainError("functional table names a class outside its carrier");
    if (v != 0) clean.emplace(c, v);
  }
  Functional f(std::move(carrier), [clean](ClassId c) {
    auto it = clean.find(c);
    return it == clean.end() ? Rational(0) : it->second;
  }, std::move(name));
  f.table_ = clean;
  return f;
}

Rational Functional::operator()(ClassId c) const {
  if (c >= carrier_->classes().size()) throw DomainError(name_ + ": class outside the carrier");
  {
    std::lock_guard<std::mutex> lock(memo_->mutex);
    auto it = memo_->values.find(c);
    if (it != memo_->values.end()) return it->second;
  }
  Rational v = rule_(c);
  std::lock_guard<std::mutex> lock(memo_->mutex);
  return memo_->values.emplace(c, v).first->second;
}

namespace {

using ComultTable = std::vector<std::vector<TensorTerm>>;
using PhiTable = std::vector<Rational>;

void require_edge(const TruncatedSimplicialGroupoid& X, ObjectId f) {
  if (f >= X.level(1)->object_count()) throw DomainError("no edge " + std::to_string(f) + " in " + X.name());
}

void require_complete(const TruncatedSimplicialGroupoid& X) {
  auto complete = X.memo<bool>("incidence:complete", [&] {
    return std::make_shared<const bool>(groupoid::is_monomorphism(*X.degeneracy(0, 0)).ok);
  });
  if (!*complete) throw DomainError(X.name() + " is not complete: s_0 is not a monomorphism");
}

std::shared_ptr<const ComultTable> comult_table(const TruncatedSimplicialGroupoid& X) {
  return X.memo<ComultTable>("incidence:comultiply", [&] {
    const auto X1 = X.level(1), X2 = X.level(2);
    const auto d0 = X.face(2, 0), d1 = X.face(2, 1), d2 = X.face(2, 2);
    const auto& c1 = X1->classes();
    const auto& c2 = X2->classes();
    std::vector<std::map<std::pair<ClassId, ClassId>, Rational>> acc(c1.size());
    for (ClassId s = 0; s < c2.size(); ++s) {
      const ObjectId sigma = c2.representative[s];
      const ClassId c = c1.class_of[(*d1)(sigma)];
      acc[c][{c1.class_of[(*d2)(sigma)], c1.class_of[(*d0)(sigma)]}] +=
          Rational(c1.aut_order[c]) / Rational(c2.aut_order[s]);
    }
    auto table = std::make_shared<ComultTable>(c1.size());
    for (ClassId c = 0; c < c1.size(); ++c)
      for (auto& [k, w] : acc[c]) (*table)[c].push_back({k.first, k.second, w});
    return std::shared_ptr<const ComultTable>(table);
  });
}

std::shared_ptr<const PhiTable> phi_table(const TruncatedSimplicialGroupoid& X, int n) {
  return X.memo<PhiTable>("incidence:phi:" + std::to_string(n), [&] {
    const auto X1 = X.level(1);
    const auto& c1 = X1->classes();
    auto table = std::make_shared<PhiTable>(c1.size(), Rational(0));
    const auto Xn = X.level(n);
    const auto& cn = Xn->classes();
    const auto L = simplicial::long_edge_functor(X, n);
    for (ClassId s = 0; s < cn.size(); ++s) {
      const ObjectId sigma = cn.representative[s];
      if (!simplicial::all_edges_nondegenerate(X, n, sigma)) continue;
      const ClassId c = c1.class_of[(*L)(sigma)];
      (*table)[c] += Rational(c1.aut_order[c]) / Rational(cn.aut_order[s]);
    }
    return std::shared_ptr<const PhiTable>(table);
  });
}

std::vector<TensorTerm> merge_terms(std::vector<TensorTerm> terms) {
  std::map<std::pair<ClassId, ClassId>, Rational> acc;
  for (const auto& t : terms) acc[{t.first, t.second}] += t.weight;
  std::vector<TensorTerm> out;
  for (auto& [k, w] : acc)
    if (w != 0) out.push_back({k.first, k.second, w});
  return out;
}

}  // namespace

std::vector<TensorTerm> comultiply(const TruncatedSimplicialGroupoid& X, ObjectId f, Route route) {
  require_edge(X, f);
  if (route == Route::Auto && X.shortcuts())
    if (auto terms = X.shortcuts()->comultiply(f)) return merge_terms(std::move(*terms));
  X.require_level(2);
  return (*comult_table(X))[X.level(1)->classes().class_of[f]];
}

Rational counit(const TruncatedSimplicialGroupoid& X, ObjectId f) {
  require_edge(X, f);
  return groupoid::fiber_cardinality(*X.degeneracy(0, 0), f);
}

Functional zeta(const TruncatedSimplicialGroupoid& X) {
  return Functional(X.level(1), [](ClassId) { return Rational(1); }, "zeta");
}

Functional delta(const TruncatedSimplicialGroupoid& X) {
  const auto X1 = X.level(1);
  return Functional(X1, [X, X1](ClassId c) { return counit(X, X1->classes().representative[c]); }, "delta");
}

Functional convolve(const TruncatedSimplicialGroupoid& X, const Functional& a, const Functional& b, Route route) {
  const auto X1 = X.level(1);
  if (a.carrier() != X1 || b.carrier() != X1) throw DomainError("convolution: functionals are not on X_1");
  return Functional(X1, [X, X1, a, b, route](ClassId c) {
    Rational v = 0;
    for (const auto& t : comultiply(X, X1->classes().representative[c], route)) v += t.weight * a(t.first) * b(t.second);
    return v;
  }, a.name() + "*" + b.name());
}

Rational phi(const TruncatedSimplicialGroupoid& X, ObjectId f, int n, Route route) {
  require_edge(X, f);
  if (n < 0) throw DomainError("phi needs n >= 0");
  require_complete(X);
  if (n == 0) return counit(X, f);
  const auto& cls = X.level(1)->classes();
  if (n == 1) return X.degenerate_edge_classes()[cls.class_of[f]] ? 0 : 1;
  if (route == Route::Auto && X.shortcuts())
    if (auto v = X.shortcuts()->phi(f, n)) return *v;
  X.require_level(n);
  return (*phi_table(X, n))[cls.class_of[f]];
}

int length_certificate(const TruncatedSimplicialGroupoid& X, ObjectId f) {
  if (X.graded())
    if (auto g = X.grade(f)) return static_cast<int>(*g);
  if (auto b = X.length_bound()) return *b;
  throw CertificateError(X.name() + " has no finite-length certificate at " + X.level(1)->object_label(f) +
                         ": locally finite length cannot be certified without a grading or a length bound");
}

Rational mobius(const TruncatedSimplicialGroupoid& X, ObjectId f, Route route) {
  const int bound = length_certificate(X, f);
  Rational mu = 0;
  for (int n = 0; n <= bound; ++n) mu += (n % 2 ? -1 : 1) * phi(X, f, n, route);
  return mu;
}

Functional mobius_functional(const TruncatedSimplicialGroupoid& X, Route route) {
  const auto X1 = X.level(1);
  return Functional(X1, [X, X1, route](ClassId c) { return mobius(X, X1->classes().representative[c], route); },
                    "mu");
}

InversionReport verify_inversion(const TruncatedSimplicialGroupoid& X, const std::vector<ClassId>& classes,
                                 const std::optional<Functional>& mu_in, Route route) {
  const auto X1 = X.level(1);
  const Functional mu = mu_in ? *mu_in : mobius_functional(X, route);
  const Functional z = zeta(X), d = delta(X);
  const Functional zm = convolve(X, z, mu, route), mz = convolve(X, mu, z, route);
  InversionReport r;
  for (ClassId c : classes) {
    ++r.checked;
    const Rational a = zm(c), b = mz(c), e = d(c);
    if (a != e || b != e)
      r.failures.push_back({c, X1->object_label(X1->classes().representative[c]), a, b, e});
  }
  return r;
}

std::vector<ClassId> classes_up_to_grade(const TruncatedSimplicialGroupoid& X, std::uint32_t bound) {
  const auto& cls = X.level(1)->classes();
  std::vector<ClassId> out;
  for (ClassId c = 0; c < cls.size(); ++c) {
    if (X.graded()) {
      auto g = X.grade(cls.representative[c]);
      if (g && *g > bound) continue;
    }
    out.push_back(c);
  }
  return out;
}

}  // namespace moebius::incidence
