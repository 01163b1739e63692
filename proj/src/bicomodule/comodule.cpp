#include <map>

#include "moebius/bicomodule.hpp"
#include "moebius/errors.hpp"

namespace moebius::bicomodule {

namespace {

using Table = std::vector<std::vector<TensorTerm>>;
using Values = std::vector<Rational>;

std::string side_key(const ComoduleConfiguration& c) {
  return std::string(c.side == Side::Right ? "right" : "left") + ":" + c.map->name();
}

void require_object(const ComoduleConfiguration& c, ObjectId m) {
  if (m >= c.comodule.level(0)->object_count()) throw DomainError("no object " + std::to_string(m) + " in C_0");
}

std::shared_ptr<const Table> coaction_table(const ComoduleConfiguration& c) {
  return c.comodule.memo<Table>("coact:" + side_key(c), [&] {
    const auto& C = c.comodule;
    const bool right = c.side == Side::Right;
    const auto C1 = C.level(1);
    const auto p = C.face(1, right ? 0 : 1);
    const auto inner = C.face(1, right ? 1 : 0);
    const auto outer = c.map->at(1);
    const auto& c0 = C.level(0)->classes();
    const auto& c1 = C1->classes();
    const auto& b1 = c.base.level(1)->classes();
    std::vector<std::map<std::pair<ClassId, ClassId>, Rational>> acc(c0.size());
    for (ClassId s = 0; s < c1.size(); ++s) {
      const ObjectId sigma = c1.representative[s];
      const ClassId m = c0.class_of[(*p)(sigma)];
      const ClassId a = c0.class_of[(*inner)(sigma)];
      const ClassId b = b1.class_of[(*outer)(sigma)];
      const auto key = right ? std::make_pair(a, b) : std::make_pair(b, a);
      acc[m][key] += Rational(c0.aut_order[m]) / Rational(c1.aut_order[s]);
    }
    auto table = std::make_shared<Table>(c0.size());
    for (ClassId m = 0; m < c0.size(); ++m)
      for (auto& [k, w] : acc[m]) (*table)[m].push_back({k.first, k.second, w});
    return std::shared_ptr<const Table>(table);
  });
}

// classes of C_0 hit by the pointing C_{-1} -> C_0
std::shared_ptr<const std::vector<bool>> pointed_classes(const ComoduleConfiguration& c) {
  return c.comodule.memo<std::vector<bool>>("pointed:" + side_key(c), [&] {
    const auto P = c.pointing ? c.pointing(0) : nullptr;
    if (!P) throw DomainError(c.comodule.name() + " has no pointing on this side");
    if (!groupoid::is_monomorphism(*P).ok)
      throw DomainError(c.comodule.name() + " is not complete: the pointing is not a monomorphism");
    const auto& c0 = c.comodule.level(0)->classes();
    auto hit = std::make_shared<std::vector<bool>>(c0.size(), false);
    for (ObjectId x = 0; x < P->source->object_count(); ++x) (*hit)[c0.class_of[(*P)(x)]] = true;
    return std::shared_ptr<const std::vector<bool>>(hit);
  });
}

std::shared_ptr<const Values> phi_table(const ComoduleConfiguration& c, int n) {
  return c.comodule.memo<Values>("phi:" + side_key(c) + ":" + std::to_string(n), [&] {
    const auto& C = c.comodule;
    const bool right = c.side == Side::Right;
    const auto& pointed = *pointed_classes(c);
    const auto& c0 = C.level(0)->classes();
    const auto& cn = C.level(n)->classes();
    const auto f = c.map->at(n);
    auto table = std::make_shared<Values>(c0.size(), Rational(0));
    for (ClassId s = 0; s < cn.size(); ++s) {
      const ObjectId sigma = cn.representative[s];
      ObjectId bottom = sigma, top = sigma;
      for (int k = n; k >= 1; --k) {
        bottom = simplicial::apply_face(C, k, right ? k : 0, bottom);
        top = simplicial::apply_face(C, k, right ? 0 : k, top);
      }
      if (pointed[c0.class_of[bottom]]) continue;
      if (!simplicial::all_edges_nondegenerate(c.base, n, (*f)(sigma))) continue;
      const ClassId m = c0.class_of[top];
      (*table)[m] += Rational(c0.aut_order[m]) / Rational(cn.aut_order[s]);
    }
    return std::shared_ptr<const Values>(table);
  });
}

int comodule_certificate(const ComoduleConfiguration& c, ObjectId m) {
  if (c.grade)
    if (auto g = c.grade(m)) return static_cast<int>(*g);
  if (c.length_bound) return *c.length_bound;
  throw CertificateError(c.comodule.name() + " has no finite-length certificate at " +
                         c.comodule.level(0)->object_label(m) + ": every edge must have a finite length");
}

}  // namespace

std::vector<TensorTerm> coact(const ComoduleConfiguration& c, ObjectId m) {
  require_object(c, m);
  return (*coaction_table(c))[c.comodule.level(0)->classes().class_of[m]];
}

Functional pointing_delta(const ComoduleConfiguration& c) {
  const auto C0 = c.comodule.level(0);
  const auto pointed = pointed_classes(c);
  const auto P = c.pointing(0);
  return Functional(C0, [C0, P](ClassId k) { return groupoid::fiber_cardinality(*P, C0->classes().representative[k]); },
                    c.side == Side::Right ? "delta^R" : "delta^L");
}

Functional zeta_comodule(const ComoduleConfiguration& c) {
  return Functional(c.comodule.level(0), [](ClassId) { return Rational(1); }, "zeta^C");
}

Rational convolve_action(const ComoduleConfiguration& c, const Functional& outer, const Functional& inner,
                         ObjectId m) {
  if (inner.carrier() != c.comodule.level(0) || outer.carrier() != c.base.level(1))
    throw DomainError("convolve_action: functional carriers do not match the configuration");
  Rational v = 0;
  for (const auto& t : coact(c, m))
    v += c.side == Side::Right ? t.weight * inner(t.first) * outer(t.second) : t.weight * outer(t.first) * inner(t.second);
  return v;
}

Rational phi_comodule(const ComoduleConfiguration& c, ObjectId m, int n) {
  require_object(c, m);
  if (n < -1) throw DomainError("phi_comodule needs n >= -1");
  const auto C0 = c.comodule.level(0);
  if (n == -1) return pointing_delta(c).at_object(m);
  const ClassId k = C0->classes().class_of[m];
  if (n == 0) return (*pointed_classes(c))[k] ? 0 : 1;
  c.comodule.require_level(n);
  return (*phi_table(c, n))[k];
}

ComoduleMobiusReport comodule_mobius_check(const ComoduleConfiguration& c, const std::vector<ClassId>& sample,
                                           const PhiOverride& override_phi) {
  const bool right = c.side == Side::Right;
  const auto C0 = c.comodule.level(0);
  const auto& c0 = C0->classes();
  const Functional delta_c = pointing_delta(c);
  const Functional mu_base = incidence::mobius_functional(c.base);
  const auto& b1 = c.base.level(1)->classes();
  auto phi_c = [&](ClassId k, int n) -> Rational {
    if (override_phi)
      if (auto v = override_phi(k, n)) return *v;
    return phi_comodule(c, c0.representative[k], n);
  };
  ComoduleMobiusReport r;
  const std::string side = right ? "R" : "L";
  for (ClassId k : sample) {
    ++r.checked;
    const ObjectId m = c0.representative[k];
    const int bound = comodule_certificate(c, m);
    const auto terms = coact(c, m);
    for (int n = 0; n <= bound; ++n) {
      Rational lhs = 0;
      for (const auto& t : terms)
        lhs += t.weight * incidence::phi(c.base, b1.representative[right ? t.second : t.first], n);
      const Rational rhs = phi_c(k, n - 1) + phi_c(k, n);
      if (lhs != rhs)
        r.failures.push_back({k, C0->object_label(m),
                              "zeta * Phi_" + std::to_string(n) + " = Phi^" + side + "_" + std::to_string(n - 1) +
                                  " + Phi^" + side + "_" + std::to_string(n),
                              lhs, rhs});
    }
    Rational lhs = 0;
    for (const auto& t : terms) lhs += t.weight * mu_base(right ? t.second : t.first);
    const Rational rhs = delta_c(k);
    if (lhs != rhs)
      r.failures.push_back({k, C0->object_label(m), right ? "zeta *_r mu = delta^R" : "mu *_l zeta = delta^L", lhs, rhs});
  }
  return r;
}

std::vector<ClassId> comodule_classes(const ComoduleConfiguration& c, std::uint32_t bound) {
  const auto& c0 = c.comodule.level(0)->classes();
  std::vector<ClassId> out;
  for (ClassId k = 0; k < c0.size(); ++k) {
    if (c.grade) {
      auto g = c.grade(c0.representative[k]);
      if (g && *g > bound) continue;
    }
    out.push_back(k);
  }
  return out;
}

}  // namespace moebius::bicomodule
