#include <stdexcept>

#include "layered_core.hpp"
#include "moebius/errors.hpp"
#include "moebius/examples.hpp"

namespace moebius::examples {

namespace {

using detail::Shape;

class SetsPosetsGenerator final : public bicomodule::BisimplicialGenerator {
 public:
  SetsPosetsGenerator(std::shared_ptr<const detail::LayeredFamily> family, int max_level)
      : family_(std::move(family)),
        max_level_(max_level),
        sets_(detail::make_layered(family_, true, max_level)),
        posets_(detail::make_layered(family_, false, max_level)) {}

  static Shape shape(int i, int j) { return {i + j + 1, std::max(i, 0)}; }
  const detail::LayeredFamily& family() const { return *family_; }

  std::string name() const override { return "sets-posets"; }
  int max_i() const override { return max_level_; }
  int max_j() const override { return max_level_; }
  groupoid::GroupoidPtr level(int i, int j) const override {
    if (j == -1) return sets_.level(i);
    if (i == -1) return posets_.level(j);
    return family_->level(shape(i, j)).groupoid;
  }
  groupoid::FunctorPtr d(int i, int j, int k) const override {
    if (i == -1) return posets_.face(j, k);
    if (k == j) return family_->delete_layer(shape(i, j), i + j, shape(i, j - 1));
    return family_->join_layers(shape(i, j), i + k, shape(i, j - 1));
  }
  groupoid::FunctorPtr e(int i, int j, int l) const override {
    if (j == -1) return sets_.face(i, l);
    if (l == 0) return family_->delete_layer(shape(i, j), 0, shape(i - 1, j));
    return family_->join_layers(shape(i, j), l - 1, shape(i - 1, j));
  }
  groupoid::FunctorPtr s(int i, int j, int k) const override {
    if (i == -1) return posets_.degeneracy(j, k);
    return family_->insert_layer(shape(i, j), i + k + 1, shape(i, j + 1));
  }
  groupoid::FunctorPtr t(int i, int j, int l) const override {
    if (j == -1) return sets_.degeneracy(i, l);
    return family_->insert_layer(shape(i, j), l, shape(i + 1, j));
  }
  // empty first poset layer
  groupoid::FunctorPtr right_pointing(int i, int j) const override {
    if (i < 0) return nullptr;
    return family_->insert_layer(shape(i, j - 1), i, shape(i, j));
  }
  // empty layer in front of a layered poset; inserting one at i >= 1 would
  // turn the old first poset layer into a set layer
  groupoid::FunctorPtr left_pointing(int i, int j) const override {
    if (i != 0 || j < 0) return nullptr;
    return family_->insert_layer(shape(-1, j), 0, shape(0, j));
  }
  bool graded() const override { return true; }
  std::optional<std::uint32_t> grade(int i, int j, ObjectId m) const override { return simplex_grade(i, j, m); }
  std::optional<std::uint32_t> truncation_grade() const override { return family_->grade_bound(); }
  std::uint32_t simplex_grade(int i, int j, ObjectId m) const override {
    const auto& keys = (i == -1 || j == -1) ? family_->level(i == -1 ? Shape{j, 0} : Shape{i, i}).keys
                                            : family_->level(shape(i, j)).keys;
    return static_cast<std::uint32_t>(detail::unpack(keys[m]).k);
  }
  std::optional<TruncatedSimplicialGroupoid> left_border() const override { return sets_; }
  std::optional<TruncatedSimplicialGroupoid> right_border() const override { return posets_; }

 private:
  std::shared_ptr<const detail::LayeredFamily> family_;
  int max_level_;
  TruncatedSimplicialGroupoid sets_, posets_;
};

const SetsPosetsGenerator& generator_of(const bicomodule::AugmentedBisimplicialGroupoid& B, int i, int j) {
  const auto* gen = dynamic_cast<const SetsPosetsGenerator*>(&B.generator());
  if (!gen) throw DomainError(B.name() + " is not the sets-posets bicomodule");
  B.require(i, j);
  return *gen;
}

}  // namespace

SetsPosets sets_posets_bicomodule(std::uint32_t grade_bound, int max_level) {
  if (grade_bound > static_cast<std::uint32_t>(kMaxElements))
    throw DomainError("layered instances support at most 6 elements");
  const int levels = max_level >= 0 ? max_level : static_cast<int>(grade_bound) + 3;
  auto family = std::make_shared<detail::LayeredFamily>(grade_bound);
  auto gen = std::make_shared<SetsPosetsGenerator>(family, levels);
  auto B = bicomodule::AugmentedBisimplicialGroupoid::make(gen);
  return {*gen->left_border(), *gen->right_border(), B};
}

LayeredPoset decode(const bicomodule::AugmentedBisimplicialGroupoid& B, int i, int j, ObjectId m) {
  const auto& gen = generator_of(B, i, j);
  const auto& lvl = gen.family().level(SetsPosetsGenerator::shape(i, j));
  if (m >= lvl.keys.size()) throw DomainError("no object " + std::to_string(m) + " in this level");
  return detail::to_layered(detail::unpack(lvl.keys[m]), lvl.shape.layers);
}

std::optional<ObjectId> encode(const bicomodule::AugmentedBisimplicialGroupoid& B, int i, int j,
                               const FinPoset& P, const std::vector<int>& layer) {
  const auto& gen = generator_of(B, i, j);
  const auto& lvl = gen.family().level(SetsPosetsGenerator::shape(i, j));
  auto s = detail::from_layered(P, layer, lvl.shape.layers);
  if (!s) return std::nullopt;
  auto it = lvl.index.find(detail::pack(*s));
  if (it == lvl.index.end()) return std::nullopt;
  return it->second;
}

std::optional<ObjectId> poset_edge(const bicomodule::AugmentedBisimplicialGroupoid& B, const FinPoset& P) {
  return encode(B, 0, 0, P, std::vector<int>(P.size(), 0));
}

Rational mu_posets(const SetsPosets& instance, const FinPoset& P, MuRoute route) {
  if (route == MuRoute::Direct) {
    auto f = poset_edge(instance.posets, P);
    if (!f) throw DomainError("the layered-posets instance does not cover a poset with " + std::to_string(P.size()) + " elements");
    return incidence::mobius(instance.posets, *f);
  }
  auto m = poset_edge(*instance.bicomodule, P);
  if (!m) throw DomainError("the sets-posets instance does not cover a poset with " + std::to_string(P.size()) + " elements");
  const auto sides = bicomodule::rota_evaluate(*instance.bicomodule, *m);
  if (sides.lhs != sides.rhs)
    throw std::logic_error("Rota sides disagree at " + instance.bicomodule->level(0, 0)->object_label(*m) + ": " +
                           moebius::to_string(sides.lhs) + " vs " + moebius::to_string(sides.rhs));
  return sides.lhs;
}

Rational mu_posets(const FinPoset& P, MuRoute route) {
  const auto grade = static_cast<std::uint32_t>(P.size());
  if (route == MuRoute::Direct) {
    const SetsPosets instance{layered_sets(0), layered_posets(grade), nullptr};
    return mu_posets(instance, P, route);
  }
  return mu_posets(sets_posets_bicomodule(grade), P, route);
}

}  // namespace moebius::examples
