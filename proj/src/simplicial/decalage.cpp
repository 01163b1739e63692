#include <map>

#include "moebius/errors.hpp"
#include "moebius/simplicial.hpp"

namespace moebius::simplicial {

namespace {

// Level n of Dec is level n+1 of X. Right (Dec_bottom) shifts every operator
// index by one; Left (Dec_top) keeps indices and forgets the top operators.
class DecGenerator : public LevelGenerator {
 public:
  DecGenerator(TruncatedSimplicialGroupoid X, Side side) : X_(std::move(X)), side_(side) {}

  std::string name() const override {
    return (side_ == Side::Right ? "Dec_bottom(" : "Dec_top(") + X_.name() + ")";
  }
  int max_level() const override { return X_.max_level() - 1; }
  GroupoidPtr level(const TruncatedSimplicialGroupoid&, int n) const override { return X_.level(n + 1); }
  FunctorPtr face(const TruncatedSimplicialGroupoid&, int n, int i) const override {
    return X_.face(n + 1, side_ == Side::Right ? i + 1 : i);
  }
  FunctorPtr degeneracy(const TruncatedSimplicialGroupoid&, int n, int i) const override {
    return X_.degeneracy(n + 1, side_ == Side::Right ? i + 1 : i);
  }
  std::optional<std::uint32_t> grade(const TruncatedSimplicialGroupoid&, ObjectId edge) const override {
    if (!X_.graded()) return std::nullopt;
    return X_.grade(apply_face(X_, 2, side_ == Side::Right ? 0 : 2, edge));
  }
  bool graded() const override { return X_.graded(); }
  std::optional<int> length_bound() const override { return X_.length_bound(); }
  std::optional<std::uint32_t> truncation_grade() const override { return X_.truncation_grade(); }
  std::uint32_t simplex_grade(const TruncatedSimplicialGroupoid&, int n, ObjectId x) const override {
    return X_.simplex_grade(n + 1, x);
  }

 private:
  TruncatedSimplicialGroupoid X_;
  Side side_;
};

// X with the iso classes of some level-n objects removed, along with every
// simplex above them.
class DropGenerator : public LevelGenerator {
 public:
  DropGenerator(TruncatedSimplicialGroupoid X, int n, std::vector<ObjectId> objects)
      : X_(std::move(X)), n_(n), objects_(std::move(objects)) {}

  std::string name() const override { return X_.name() + "-dropped"; }
  int max_level() const override { return X_.max_level(); }
  GroupoidPtr level(const TruncatedSimplicialGroupoid&, int k) const override { return sub(k).groupoid; }
  FunctorPtr face(const TruncatedSimplicialGroupoid&, int k, int i) const override {
    return groupoid::restrict_functor(*X_.face(k, i), sub(k), sub(k - 1));
  }
  FunctorPtr degeneracy(const TruncatedSimplicialGroupoid&, int k, int i) const override {
    return groupoid::restrict_functor(*X_.degeneracy(k, i), sub(k), sub(k + 1));
  }
  std::optional<std::uint32_t> grade(const TruncatedSimplicialGroupoid&, ObjectId edge) const override {
    return X_.grade(sub(1).parent_object[edge]);
  }
  bool graded() const override { return X_.graded(); }
  std::optional<int> length_bound() const override { return X_.length_bound(); }
  std::optional<std::uint32_t> truncation_grade() const override { return X_.truncation_grade(); }
  std::uint32_t simplex_grade(const TruncatedSimplicialGroupoid&, int k, ObjectId x) const override {
    return X_.simplex_grade(k, sub(k).parent_object[x]);
  }

 private:
  const groupoid::Subgroupoid& sub(int k) const {
    std::lock_guard<std::mutex> lock(mutex_);
    return sub_locked(k);
  }

  const groupoid::Subgroupoid& sub_locked(int k) const {
    auto it = subs_.find(k);
    if (it != subs_.end()) return it->second;
    const auto Xk = X_.level(k);
    std::vector<bool> keep(Xk->object_count(), true);
    if (k == n_) {
      const auto& cls = Xk->classes();
      std::vector<bool> dropped(cls.size(), false);
      for (ObjectId x : objects_) {
        if (x >= Xk->object_count()) throw DomainError("no object " + std::to_string(x) + " on level " + std::to_string(k));
        dropped[cls.class_of[x]] = true;
      }
      for (ObjectId x = 0; x < keep.size(); ++x) keep[x] = !dropped[cls.class_of[x]];
      if (k > 0)
        for (int i = 0; i < k; ++i) {
          const auto s = X_.degeneracy(k - 1, i);
          for (ObjectId y = 0; y < s->source->object_count(); ++y)
            if (!keep[(*s)(y)]) throw DomainError("cannot drop a degenerate simplex");
        }
    } else if (k > n_) {
      const auto& below = sub_locked(k - 1);
      for (int i = 0; i <= k; ++i) {
        const auto d = X_.face(k, i);
        for (ObjectId x = 0; x < keep.size(); ++x)
          if (below.local_object[(*d)(x)] == groupoid::kNone) keep[x] = false;
      }
    }
    return subs_.emplace(k, groupoid::full_subgroupoid(Xk, keep, Xk->name())).first->second;
  }

  TruncatedSimplicialGroupoid X_;
  int n_;
  std::vector<ObjectId> objects_;
  mutable std::mutex mutex_;
  mutable std::map<int, groupoid::Subgroupoid> subs_;
};

}  // namespace

ComoduleConfiguration decalage(const TruncatedSimplicialGroupoid& X, Side side) {
  X.require_level(2);
  ComoduleConfiguration c{side, TruncatedSimplicialGroupoid(std::make_shared<DecGenerator>(X, side)), X,
                          nullptr, X.level(0), nullptr, nullptr, nullptr, X.length_bound()};
  const bool right = side == Side::Right;
  c.map = std::make_shared<SimplicialMap>(
      c.comodule, X, [X, right](int n) { return X.face(n + 1, right ? 0 : n + 1); },
      right ? "d_bottom" : "d_top");
  c.augmentation = X.face(1, right ? 1 : 0);
  c.pointing = [X, right](int n) { return X.degeneracy(n, right ? 0 : n); };
  if (X.graded()) c.grade = [X](ObjectId m) { return X.grade(m); };
  return c;
}

TruncatedSimplicialGroupoid drop_simplices(const TruncatedSimplicialGroupoid& X, int n,
                                           const std::vector<ObjectId>& objects) {
  X.require_level(n);
  return TruncatedSimplicialGroupoid(std::make_shared<DropGenerator>(X, n, objects));
}

}  // namespace moebius::simplicial
