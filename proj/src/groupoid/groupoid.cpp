#include "moebius/groupoid.hpp"

#include <deque>

#include "moebius/errors.hpp"

namespace moebius::groupoid {

FiniteGroupoid::FiniteGroupoid(Data data) : data_(std::move(data)) {
  const std::size_t n = data_.object_labels.size();
  const std::size_t m = data_.source.size();
  if (data_.out_offset.size() != n + 1 || data_.out_offset[n] != m || data_.target.size() != m ||
      data_.identity.size() != n || data_.inverse.size() != m || !data_.rule)
    throw StructuralError("groupoid '" + data_.name + "': inconsistent storage");
  for (ObjectId x = 0; x < n; ++x) {
    for (MorphismId f = out_begin(x); f < out_end(x); ++f)
      if (data_.source[f] != x)
        throw StructuralError("groupoid '" + data_.name + "': morphisms not grouped by source");
    if (data_.identity[x] < out_begin(x) || data_.identity[x] >= out_end(x) ||
        data_.target[data_.identity[x]] != x)
      throw StructuralError("groupoid '" + data_.name + "': bad identity at object " +
                            data_.object_labels[x]);
  }
}

MorphismId FiniteGroupoid::compose(MorphismId g, MorphismId f) const {
  if (target(f) != source(g))
    throw DomainError("cannot compose " + morphism_label(g) + " after " + morphism_label(f));
  return compose_unchecked(g, f);
}

std::vector<MorphismId> FiniteGroupoid::hom(ObjectId a, ObjectId b) const {
  std::vector<MorphismId> out;
  for (MorphismId m = out_begin(a); m < out_end(a); ++m)
    if (target(m) == b) out.push_back(m);
  return out;
}

std::string FiniteGroupoid::morphism_label(MorphismId m) const {
  if (is_identity(m)) return "id_" + object_label(source(m));
  if (data_.morphism_labeler) return data_.morphism_labeler(m);
  return object_label(source(m)) + "->" + object_label(target(m)) + "#" +
         std::to_string(out_position(m));
}

std::optional<ObjectId> FiniteGroupoid::find_object(const std::string& label) const {
  std::call_once(labels_once_, [this] {
    label_index_ = std::make_unique<std::unordered_map<std::string, ObjectId>>();
    for (ObjectId x = 0; x < object_count(); ++x) label_index_->emplace(data_.object_labels[x], x);
  });
  auto it = label_index_->find(label);
  if (it == label_index_->end()) return std::nullopt;
  return it->second;
}

std::optional<MorphismId> FiniteGroupoid::find_morphism(const std::string& label) const {
  for (MorphismId m = 0; m < morphism_count(); ++m)
    if (morphism_label(m) == label) return m;
  return std::nullopt;
}

void FiniteGroupoid::validate() const {
  const auto fail = [this](const std::string& what) {
    throw StructuralError("groupoid '" + name() + "': " + what);
  };
  for (MorphismId f = 0; f < morphism_count(); ++f) {
    const ObjectId a = source(f), b = target(f);
    if (compose_unchecked(f, identity(a)) != f || compose_unchecked(identity(b), f) != f)
      fail("identity law fails at " + morphism_label(f));
    const MorphismId fi = inverse(f);
    if (source(fi) != b || target(fi) != a || compose_unchecked(fi, f) != identity(a) ||
        compose_unchecked(f, fi) != identity(b))
      fail(morphism_label(f) + " has no inverse");
    for (MorphismId g = out_begin(b); g < out_end(b); ++g) {
      const MorphismId gf = compose_unchecked(g, f);
      if (gf >= morphism_count() || source(gf) != a || target(gf) != target(g))
        fail("composite of " + morphism_label(g) + " and " + morphism_label(f) + " is ill-typed");
      for (MorphismId h = out_begin(target(g)); h < out_end(target(g)); ++h)
        if (compose_unchecked(h, gf) != compose_unchecked(compose_unchecked(h, g), f))
          fail("associativity fails at (" + morphism_label(h) + ", " + morphism_label(g) + ", " +
               morphism_label(f) + ")");
    }
  }
}

const IsoClassTable& FiniteGroupoid::classes() const {
  std::call_once(classes_once_, [this] {
    auto t = std::make_unique<IsoClassTable>();
    const std::size_t n = object_count();
    t->class_of.assign(n, kNone);
    t->to_rep.assign(n, kNone);
    std::deque<ObjectId> queue;
    for (ObjectId x = 0; x < n; ++x) {
      if (t->class_of[x] != kNone) continue;
      const auto c = static_cast<ClassId>(t->representative.size());
      t->representative.push_back(x);
      t->class_of[x] = c;
      t->to_rep[x] = identity(x);
      std::uint32_t size = 0;
      queue.push_back(x);
      while (!queue.empty()) {
        const ObjectId y = queue.front();
        queue.pop_front();
        ++size;
        for (MorphismId m = out_begin(y); m < out_end(y); ++m) {
          const ObjectId z = target(m);
          if (t->class_of[z] != kNone) continue;
          t->class_of[z] = c;
          t->to_rep[z] = compose_unchecked(t->to_rep[y], inverse(m));
          queue.push_back(z);
        }
      }
      t->class_size.push_back(size);
      t->aut_order.push_back(out_degree(x) / size);
    }
    classes_ = std::move(t);
  });
  return *classes_;
}

Rational cardinality(const FiniteGroupoid& G) {
  Rational total = 0;
  for (std::uint64_t aut : G.classes().aut_order) total += Rational(1, static_cast<unsigned long>(aut));
  return total;
}

std::string to_string(Witness::Kind kind) {
  switch (kind) {
    case Witness::Kind::MissingClass: return "missing-class";
    case Witness::Kind::ClassCollision: return "class-collision";
    case Witness::Kind::NotFaithful: return "not-faithful";
    case Witness::Kind::NotFull: return "not-full";
    case Witness::Kind::NotEssentiallySurjective: return "not-essentially-surjective";
  }
  return "unknown";
}

}  // namespace moebius::groupoid
