#include <map>
#include <mutex>

#include "chains.hpp"
#include "moebius/bicomodule.hpp"
#include "moebius/catposet.hpp"
#include "moebius/errors.hpp"

namespace moebius::catposet {

void CorrespondenceCat::validate() const {
  if (labels.size() != category->object_count()) throw StructuralError("one label per object is needed");
  for (int l : labels)
    if (l != 0 && l != 1) throw StructuralError("correspondence labels must be 0 or 1");
  for (Index m = 0; m < category->morphism_count(); ++m)
    if (labels[category->source(m)] == 1 && labels[category->target(m)] == 0)
      throw StructuralError("morphism " + category->morphism(m).label + " goes from the 1-side to the 0-side");
}

FibrationReport fibration_report(const CorrespondenceCat& M) {
  M.validate();
  const FinCategory& C = *M.category;
  const std::size_t n = C.object_count();
  FibrationReport r;
  r.cocartesian.assign(n, std::nullopt);
  r.cartesian.assign(n, std::nullopt);
  r.all_cocartesian = r.all_cartesian = true;
  for (Index a = 0; a < n; ++a) {
    if (M.labels[a] != 0) continue;
    for (Index t = 0; t < n && !r.cocartesian[a]; ++t) {
      if (M.labels[t] != 1) continue;
      for (Index phi : C.hom(a, t)) {
        bool ok = true;
        for (Index d = 0; d < n && ok; ++d) {
          if (M.labels[d] != 1) continue;
          if (C.hom(t, d).size() != C.hom(a, d).size()) {
            ok = false;
            break;
          }
          std::vector<char> hit(C.morphism_count(), 0);
          for (Index k : C.hom(t, d)) {
            const Index c = C.compose(k, phi);
            if (hit[c]) ok = false;
            hit[c] = 1;
          }
        }
        if (ok) {
          r.cocartesian[a] = phi;
          break;
        }
      }
    }
    if (!r.cocartesian[a]) r.all_cocartesian = false;
  }
  for (Index d = 0; d < n; ++d) {
    if (M.labels[d] != 1) continue;
    for (Index s = 0; s < n && !r.cartesian[d]; ++s) {
      if (M.labels[s] != 0) continue;
      for (Index phi : C.hom(s, d)) {
        bool ok = true;
        for (Index c = 0; c < n && ok; ++c) {
          if (M.labels[c] != 0) continue;
          if (C.hom(c, s).size() != C.hom(c, d).size()) {
            ok = false;
            break;
          }
          std::vector<char> hit(C.morphism_count(), 0);
          for (Index k : C.hom(c, s)) {
            const Index g = C.compose(phi, k);
            if (hit[g]) ok = false;
            hit[g] = 1;
          }
        }
        if (ok) {
          r.cartesian[d] = phi;
          break;
        }
      }
    }
    if (!r.cartesian[d]) r.all_cartesian = false;
  }
  return r;
}

namespace {

// Object and morphism name prefixes for the two ends of a cylinder.
std::pair<std::string, std::string> cylinder_prefixes(const FinCategory& C, const FinCategory& D) {
  if (C.name() == D.name()) return {C.name() + "0.", D.name() + "1."};
  return {C.name() + ".", D.name() + "."};
}

}  // namespace

MappingCylinder mapping_cylinder(const CatFunctor& F) {
  F.validate();
  const FinCategory& C = *F.source;
  const FinCategory& D = *F.target;
  const auto [cp, dp] = cylinder_prefixes(C, D);
  CategoryBuilder b("Cyl(" + C.name() + "->" + D.name() + ")");
  for (Index x = 0; x < C.object_count(); ++x) b.add_object(cp + C.object_label(x));
  for (Index y = 0; y < D.object_count(); ++y) b.add_object(dp + D.object_label(y));
  auto c_label = [&](Index a) {
    return C.is_identity(a) ? "id_" + cp + C.object_label(C.source(a)) : cp + C.morphism(a).label;
  };
  auto d_label = [&](Index h) {
    return D.is_identity(h) ? "id_" + dp + D.object_label(D.source(h)) : dp + D.morphism(h).label;
  };
  auto mixed_label = [&](Index x, Index h) { return cp + C.object_label(x) + ">" + D.morphism(h).label; };
  for (Index a = 0; a < C.morphism_count(); ++a)
    if (!C.is_identity(a)) b.add_morphism(c_label(a), cp + C.object_label(C.source(a)), cp + C.object_label(C.target(a)));
  for (Index h = 0; h < D.morphism_count(); ++h)
    if (!D.is_identity(h)) b.add_morphism(d_label(h), dp + D.object_label(D.source(h)), dp + D.object_label(D.target(h)));
  for (Index x = 0; x < C.object_count(); ++x)
    for (Index h = 0; h < D.morphism_count(); ++h)
      if (D.source(h) == F.on_objects[x]) b.add_morphism(mixed_label(x, h), cp + C.object_label(x), dp + D.object_label(D.target(h)));
  // composites of non-identity pairs
  for (Index a = 0; a < C.morphism_count(); ++a) {
    if (C.is_identity(a)) continue;
    for (Index a2 = 0; a2 < C.morphism_count(); ++a2)
      if (!C.is_identity(a2) && C.source(a2) == C.target(a))
        b.set_composite(c_label(a2), c_label(a), c_label(C.compose(a2, a)));
    for (Index h = 0; h < D.morphism_count(); ++h)
      if (D.source(h) == F.on_objects[C.target(a)])
        b.set_composite(mixed_label(C.target(a), h), c_label(a), mixed_label(C.source(a), D.compose(h, F.on_morphisms[a])));
  }
  for (Index h = 0; h < D.morphism_count(); ++h) {
    if (D.is_identity(h)) continue;
    for (Index h2 = 0; h2 < D.morphism_count(); ++h2)
      if (!D.is_identity(h2) && D.source(h2) == D.target(h))
        b.set_composite(d_label(h2), d_label(h), d_label(D.compose(h2, h)));
    for (Index x = 0; x < C.object_count(); ++x)
      for (Index g = 0; g < D.morphism_count(); ++g)
        if (D.source(g) == F.on_objects[x] && D.target(g) == D.source(h))
          b.set_composite(d_label(h), mixed_label(x, g), mixed_label(x, D.compose(h, g)));
  }
  MappingCylinder cyl;
  cyl.correspondence.category = b.build();
  const auto& M = *cyl.correspondence.category;
  for (Index x = 0; x < C.object_count(); ++x) {
    cyl.source_object.push_back(*M.find_object(cp + C.object_label(x)));
    cyl.correspondence.labels.push_back(0);
  }
  for (Index y = 0; y < D.object_count(); ++y) {
    cyl.target_object.push_back(*M.find_object(dp + D.object_label(y)));
    cyl.correspondence.labels.push_back(1);
  }
  cyl.mixed.assign(C.object_count(), std::vector<Index>(D.morphism_count(), kNone));
  for (Index x = 0; x < C.object_count(); ++x)
    for (Index h = 0; h < D.morphism_count(); ++h)
      if (D.source(h) == F.on_objects[x]) cyl.mixed[x][h] = *M.find_morphism(mixed_label(x, h));
  cyl.report = fibration_report(cyl.correspondence);
  return cyl;
}

std::optional<CatFunctor> right_adjoint_from_lifts(const CatFunctor& F, const MappingCylinder& cyl) {
  if (!cyl.report.all_cartesian) return std::nullopt;
  const FinCategory& C = *F.source;
  const FinCategory& D = *F.target;
  const FinCategory& M = *cyl.correspondence.category;
  const auto [cp, dp] = cylinder_prefixes(C, D);
  std::vector<Index> back(M.object_count(), kNone);
  for (Index x = 0; x < C.object_count(); ++x) back[cyl.source_object[x]] = x;
  CatFunctor G{F.target, F.source, {}, {}};
  std::vector<Index> lift(D.object_count());
  for (Index y = 0; y < D.object_count(); ++y) {
    lift[y] = *cyl.report.cartesian[cyl.target_object[y]];
    G.on_objects.push_back(back[M.source(lift[y])]);
  }
  // morphism of M for b : y -> y' in D
  auto in_M = [&](Index b) {
    const std::string label = D.is_identity(b) ? "id_" + dp + D.object_label(D.source(b)) : dp + D.morphism(b).label;
    return *M.find_morphism(label);
  };
  auto in_M_c = [&](Index a) {
    const std::string label = C.is_identity(a) ? "id_" + cp + C.object_label(C.source(a)) : cp + C.morphism(a).label;
    return *M.find_morphism(label);
  };
  for (Index b = 0; b < D.morphism_count(); ++b) {
    const Index y = D.source(b), y2 = D.target(b);
    const Index want = M.compose(in_M(b), lift[y]);
    Index found = kNone;
    for (Index a : C.hom(G.on_objects[y], G.on_objects[y2]))
      if (M.compose(lift[y2], in_M_c(a)) == want) found = a;
    if (found == kNone) return std::nullopt;
    G.on_morphisms.push_back(found);
  }
  G.validate();
  return G;
}

namespace {

class CorrespondenceGenerator : public bicomodule::BisimplicialGenerator {
 public:
  CorrespondenceGenerator(CorrespondenceCat M, int max_level)
      : M_(std::move(M)), max_level_(max_level), report_(fibration_report(M_)), heights_(object_heights(*M_.category)) {}

  std::string name() const override { return "B(" + M_.category->name() + ")"; }
  int max_i() const override { return max_level_; }
  int max_j() const override { return max_level_; }
  groupoid::GroupoidPtr level(int i, int j) const override { return chain_level(i, j).groupoid; }
  groupoid::FunctorPtr d(int i, int j, int k) const override {
    return map(i, j, i, j - 1, [&](const chains::Chain& c) { return chains::delete_vertex(C(), c, i + 1 + k); });
  }
  groupoid::FunctorPtr e(int i, int j, int l) const override {
    return map(i, j, i - 1, j, [&](const chains::Chain& c) { return chains::delete_vertex(C(), c, l); });
  }
  groupoid::FunctorPtr s(int i, int j, int k) const override {
    return map(i, j, i, j + 1, [&](const chains::Chain& c) { return chains::insert_identity(C(), c, i + 1 + k); });
  }
  groupoid::FunctorPtr t(int i, int j, int l) const override {
    return map(i, j, i + 1, j, [&](const chains::Chain& c) { return chains::insert_identity(C(), c, l); });
  }
  // insert the cocartesian lift of v_i, refactoring the arrow into w_0
  groupoid::FunctorPtr right_pointing(int i, int j) const override {
    if (!report_.all_cocartesian || i < 0) return nullptr;
    return map(i, j - 1, i, j, [&](const chains::Chain& c) {
      const Index vi = chains::vertex(C(), c, i);
      const Index phi = *report_.cocartesian[vi];
      chains::Chain out(c.begin(), c.begin() + i + 1);
      out.push_back(phi);
      if (j - 1 >= 0) out.push_back(factor_through_cocartesian(phi, c[i + 1]));
      out.insert(out.end(), c.begin() + std::min(c.size(), static_cast<std::size_t>(i + 2)), c.end());
      return out;
    });
  }
  // insert the cartesian lift of w_0, refactoring the arrow out of v_{i-1}
  groupoid::FunctorPtr left_pointing(int i, int j) const override {
    if (!report_.all_cartesian || j < 0) return nullptr;
    return map(i - 1, j, i, j, [&](const chains::Chain& c) {
      const Index w0 = chains::vertex(C(), c, i);
      const Index psi = *report_.cartesian[w0];
      chains::Chain out;
      if (i == 0) {
        out.push_back(C().source(psi));
      } else {
        out.assign(c.begin(), c.begin() + i);
        out.push_back(factor_through_cartesian(psi, c[i]));
      }
      out.push_back(psi);
      out.insert(out.end(), c.begin() + i + 1, c.end());
      return out;
    });
  }
  ChainView view(int i, int j, groupoid::ObjectId m) const {
    const auto& c = chain_level(i, j).chains.at(m);
    ChainView v;
    v.objects.push_back(c[0]);
    for (std::size_t k = 1; k < c.size(); ++k) {
      v.morphisms.push_back(c[k]);
      v.objects.push_back(C().target(c[k]));
    }
    return v;
  }
  bool graded() const override { return heights_.has_value(); }
  std::optional<std::uint32_t> grade(int i, int j, groupoid::ObjectId m) const override {
    if (!heights_) return std::nullopt;
    const auto& c = chain_level(i, j).chains[m];
    return (*heights_)[chains::vertex(C(), c, chains::length(c))] - (*heights_)[c[0]];
  }

 private:
  const FinCategory& C() const { return *M_.category; }

  Index factor_through_cocartesian(Index phi, Index h) const {
    for (Index k : C().hom(C().target(phi), C().target(h)))
      if (C().compose(k, phi) == h) return k;
    throw StructuralError("cocartesian factorization missing");
  }
  Index factor_through_cartesian(Index psi, Index g) const {
    for (Index k : C().hom(C().source(g), C().source(psi)))
      if (C().compose(psi, k) == g) return k;
    throw StructuralError("cartesian factorization missing");
  }

  const chains::ChainLevel& chain_level(int i, int j) const {
    std::lock_guard<std::mutex> lock(mutex_);
    auto it = levels_.find({i, j});
    if (it != levels_.end()) return it->second;
    auto list = chains::enumerate(C(), static_cast<std::size_t>(i + j + 1), [&](std::size_t p, Index x) {
      return M_.labels[x] == (static_cast<int>(p) <= i ? 0 : 1);
    });
    const std::string name = "B_{" + std::to_string(i) + "," + std::to_string(j) + "}";
    return levels_.emplace(std::make_pair(i, j), chains::make_level(C(), std::move(list), name)).first->second;
  }

  groupoid::FunctorPtr map(int i, int j, int i2, int j2, const std::function<chains::Chain(const chains::Chain&)>& fn) const {
    return chains::chain_functor(chain_level(i, j), chain_level(i2, j2), fn);
  }

  CorrespondenceCat M_;
  int max_level_;
  FibrationReport report_;
  std::optional<std::vector<std::uint32_t>> heights_;
  mutable std::mutex mutex_;
  mutable std::map<std::pair<int, int>, chains::ChainLevel> levels_;
};

}  // namespace

ChainView correspondence_chain(const bicomodule::AugmentedBisimplicialGroupoid& B, int i, int j,
                               groupoid::ObjectId m) {
  const auto* gen = dynamic_cast<const CorrespondenceGenerator*>(&B.generator());
  if (!gen) throw DomainError(B.name() + " is not the nerve of a correspondence");
  B.require(i, j);
  return gen->view(i, j, m);
}

std::shared_ptr<const bicomodule::AugmentedBisimplicialGroupoid> correspondence_bisimplicial(
    const CorrespondenceCat& M, int max_level) {
  M.validate();
  return bicomodule::AugmentedBisimplicialGroupoid::make(std::make_shared<CorrespondenceGenerator>(M, max_level));
}

}  // namespace moebius::catposet
