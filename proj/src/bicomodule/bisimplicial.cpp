#include <unordered_map>

#include "moebius/bicomodule.hpp"
#include "moebius/errors.hpp"

namespace moebius::bicomodule {

namespace {

// A row (Horizontal, fixed i) or column (Vertical, fixed j) of B as a
// simplicial groupoid; index -1 gives the borders X and Y.
class LineGenerator : public simplicial::LevelGenerator {
 public:
  enum class Dir { Horizontal, Vertical };
  LineGenerator(std::shared_ptr<const BisimplicialGenerator> B, Dir dir, int fixed)
      : B_(std::move(B)), dir_(dir), fixed_(fixed) {}

  std::string name() const override {
    if (fixed_ == -1) return (dir_ == Dir::Horizontal ? "Y(" : "X(") + B_->name() + ")";
    return B_->name() + (dir_ == Dir::Horizontal ? "_row" : "_col") + std::to_string(fixed_);
  }
  int max_level() const override { return dir_ == Dir::Horizontal ? B_->max_j() : B_->max_i(); }
  GroupoidPtr level(const TruncatedSimplicialGroupoid&, int n) const override {
    return dir_ == Dir::Horizontal ? B_->level(fixed_, n) : B_->level(n, fixed_);
  }
  FunctorPtr face(const TruncatedSimplicialGroupoid&, int n, int k) const override {
    return dir_ == Dir::Horizontal ? B_->d(fixed_, n, k) : B_->e(n, fixed_, k);
  }
  FunctorPtr degeneracy(const TruncatedSimplicialGroupoid&, int n, int k) const override {
    return dir_ == Dir::Horizontal ? B_->s(fixed_, n, k) : B_->t(n, fixed_, k);
  }
  bool graded() const override { return fixed_ == -1 && B_->graded(); }
  std::optional<std::uint32_t> grade(const TruncatedSimplicialGroupoid&, ObjectId edge) const override {
    if (fixed_ != -1) return std::nullopt;
    return dir_ == Dir::Horizontal ? B_->grade(-1, 1, edge) : B_->grade(1, -1, edge);
  }
  std::optional<std::uint32_t> truncation_grade() const override { return B_->truncation_grade(); }
  std::uint32_t simplex_grade(const TruncatedSimplicialGroupoid&, int n, ObjectId x) const override {
    return dir_ == Dir::Horizontal ? B_->simplex_grade(fixed_, n, x) : B_->simplex_grade(n, fixed_, x);
  }

 private:
  std::shared_ptr<const BisimplicialGenerator> B_;
  Dir dir_;
  int fixed_;
};

}  // namespace

AugmentedBisimplicialGroupoid::AugmentedBisimplicialGroupoid(std::shared_ptr<const BisimplicialGenerator> generator)
    : generator_(std::move(generator)) {
  X_ = generator_->left_border();
  if (!X_)
    X_ = TruncatedSimplicialGroupoid(
        std::make_shared<LineGenerator>(generator_, LineGenerator::Dir::Vertical, -1));
  Y_ = generator_->right_border();
  if (!Y_)
    Y_ = TruncatedSimplicialGroupoid(
        std::make_shared<LineGenerator>(generator_, LineGenerator::Dir::Horizontal, -1));
}

BisimplicialPtr AugmentedBisimplicialGroupoid::make(std::shared_ptr<const BisimplicialGenerator> generator) {
  return BisimplicialPtr(new AugmentedBisimplicialGroupoid(std::move(generator)));
}

void AugmentedBisimplicialGroupoid::require(int i, int j) const {
  if (i < -1 || j < -1 || (i == -1 && j == -1)) throw DomainError("no level B_{" + std::to_string(i) + "," + std::to_string(j) + "}");
  if (i > max_i()) throw InsufficientLevels(i, max_i());
  if (j > max_j()) throw InsufficientLevels(j, max_j());
}

GroupoidPtr AugmentedBisimplicialGroupoid::level(int i, int j) const {
  require(i, j);
  if (i == -1) return Y_->level(j);
  if (j == -1) return X_->level(i);
  {
    std::lock_guard<std::mutex> lock(mutex_);
    auto it = levels_.find({i, j});
    if (it != levels_.end()) return it->second;
  }
  auto built = generator_->level(i, j);
  std::lock_guard<std::mutex> lock(mutex_);
  return levels_.emplace(std::make_pair(i, j), built).first->second;
}

FunctorPtr AugmentedBisimplicialGroupoid::cached(const Key& key, const std::function<FunctorPtr()>& make) const {
  {
    std::lock_guard<std::mutex> lock(mutex_);
    auto it = maps_.find(key);
    if (it != maps_.end()) return it->second;
  }
  auto built = make();
  std::lock_guard<std::mutex> lock(mutex_);
  return maps_.emplace(key, built).first->second;
}

FunctorPtr AugmentedBisimplicialGroupoid::d(int i, int j, int k) const {
  require(i, j);
  require(i, j - 1);
  if (k < 0 || k > j) throw DomainError("d_" + std::to_string(k) + " undefined on B_{" + std::to_string(i) + "," + std::to_string(j) + "}");
  if (i == -1) return Y_->face(j, k);
  return cached({'d', i, j, k}, [&] { return generator_->d(i, j, k); });
}

FunctorPtr AugmentedBisimplicialGroupoid::e(int i, int j, int l) const {
  require(i, j);
  require(i - 1, j);
  if (l < 0 || l > i) throw DomainError("e_" + std::to_string(l) + " undefined on B_{" + std::to_string(i) + "," + std::to_string(j) + "}");
  if (j == -1) return X_->face(i, l);
  return cached({'e', i, j, l}, [&] { return generator_->e(i, j, l); });
}

FunctorPtr AugmentedBisimplicialGroupoid::s(int i, int j, int k) const {
  require(i, j + 1);
  if (j < 0 || k < 0 || k > j) throw DomainError("s_" + std::to_string(k) + " undefined on B_{" + std::to_string(i) + "," + std::to_string(j) + "}");
  if (i == -1) return Y_->degeneracy(j, k);
  return cached({'s', i, j, k}, [&] { return generator_->s(i, j, k); });
}

FunctorPtr AugmentedBisimplicialGroupoid::t(int i, int j, int l) const {
  require(i + 1, j);
  if (i < 0 || l < 0 || l > i) throw DomainError("t_" + std::to_string(l) + " undefined on B_{" + std::to_string(i) + "," + std::to_string(j) + "}");
  if (j == -1) return X_->degeneracy(i, l);
  return cached({'t', i, j, l}, [&] { return generator_->t(i, j, l); });
}

FunctorPtr AugmentedBisimplicialGroupoid::right_pointing(int i, int j) const {
  require(i, j);
  require(i, j - 1);
  return cached({'r', i, j, 0}, [&] { return generator_->right_pointing(i, j); });
}

FunctorPtr AugmentedBisimplicialGroupoid::left_pointing(int i, int j) const {
  require(i, j);
  require(i - 1, j);
  return cached({'l', i, j, 0}, [&] { return generator_->left_pointing(i, j); });
}

TruncatedSimplicialGroupoid AugmentedBisimplicialGroupoid::row(int i) const {
  if (i == -1) return *Y_;
  std::lock_guard<std::mutex> lock(mutex_);
  auto it = lines_.find({'r', i});
  if (it != lines_.end()) return it->second;
  TruncatedSimplicialGroupoid line(std::make_shared<LineGenerator>(generator_, LineGenerator::Dir::Horizontal, i));
  return lines_.emplace(std::make_pair('r', i), line).first->second;
}

TruncatedSimplicialGroupoid AugmentedBisimplicialGroupoid::column(int j) const {
  if (j == -1) return *X_;
  std::lock_guard<std::mutex> lock(mutex_);
  auto it = lines_.find({'c', j});
  if (it != lines_.end()) return it->second;
  TruncatedSimplicialGroupoid line(std::make_shared<LineGenerator>(generator_, LineGenerator::Dir::Vertical, j));
  return lines_.emplace(std::make_pair('c', j), line).first->second;
}

ComoduleConfiguration AugmentedBisimplicialGroupoid::right_comodule() const {
  std::weak_ptr<const AugmentedBisimplicialGroupoid> self = weak_from_this();
  auto lock = [self] {
    auto B = self.lock();
    if (!B) throw DomainError("bisimplicial groupoid no longer exists");
    return B;
  };
  ComoduleConfiguration c{Side::Right, row(0), *Y_, nullptr, level(0, -1), u(0), nullptr, nullptr, std::nullopt};
  c.map = std::make_shared<simplicial::SimplicialMap>(c.comodule, c.base, [lock](int n) { return lock()->v(n); }, "v");
  c.pointing = [lock](int n) { return lock()->right_pointing(0, n); };
  if (graded()) c.grade = [lock](ObjectId m) { return lock()->grade(m); };
  return c;
}

ComoduleConfiguration AugmentedBisimplicialGroupoid::left_comodule() const {
  std::weak_ptr<const AugmentedBisimplicialGroupoid> self = weak_from_this();
  auto lock = [self] {
    auto B = self.lock();
    if (!B) throw DomainError("bisimplicial groupoid no longer exists");
    return B;
  };
  ComoduleConfiguration c{Side::Left, column(0), *X_, nullptr, level(-1, 0), v(0), nullptr, nullptr, std::nullopt};
  c.map = std::make_shared<simplicial::SimplicialMap>(c.comodule, c.base, [lock](int n) { return lock()->u(n); }, "u");
  c.pointing = [lock](int n) { return lock()->left_pointing(n, 0); };
  if (graded()) c.grade = [lock](ObjectId m) { return lock()->grade(m); };
  return c;
}

// ---------------------------------------------------------------------------

namespace {

class TotalDecalage : public BisimplicialGenerator {
 public:
  explicit TotalDecalage(TruncatedSimplicialGroupoid X) : X_(std::move(X)) {}
  std::string name() const override { return "Dec(" + X_.name() + ")"; }
  int max_i() const override { return X_.max_level() - 1; }
  int max_j() const override { return X_.max_level() - 1; }
  GroupoidPtr level(int i, int j) const override { return X_.level(i + j + 1); }
  FunctorPtr d(int i, int j, int k) const override { return X_.face(i + j + 1, i + 1 + k); }
  FunctorPtr e(int i, int j, int l) const override { return X_.face(i + j + 1, l); }
  FunctorPtr s(int i, int j, int k) const override { return X_.degeneracy(i + j + 1, i + 1 + k); }
  FunctorPtr t(int i, int j, int l) const override { return X_.degeneracy(i + j + 1, l); }
  FunctorPtr right_pointing(int i, int j) const override { return X_.degeneracy(i + j, i); }
  FunctorPtr left_pointing(int i, int j) const override { return X_.degeneracy(i + j, i); }
  bool graded() const override { return X_.graded(); }
  std::optional<std::uint32_t> grade(int, int, ObjectId m) const override { return X_.grade(m); }
  std::optional<std::uint32_t> truncation_grade() const override { return X_.truncation_grade(); }
  std::uint32_t simplex_grade(int i, int j, ObjectId x) const override { return X_.simplex_grade(i + j + 1, x); }
  std::optional<TruncatedSimplicialGroupoid> left_border() const override { return X_; }
  std::optional<TruncatedSimplicialGroupoid> right_border() const override { return X_; }

 private:
  TruncatedSimplicialGroupoid X_;
};

// Restriction of a functor to full subgroupoids, either end possibly unrestricted.
FunctorPtr restrict_ends(const FunctorPtr& F, const groupoid::Subgroupoid* src, const groupoid::Subgroupoid* tgt) {
  if (!src && !tgt) return F;
  auto R = std::make_shared<groupoid::GroupoidFunctor>();
  R->source = src ? src->groupoid : F->source;
  R->target = tgt ? tgt->groupoid : F->target;
  const std::size_t n_obj = src ? src->parent_object.size() : F->source->object_count();
  for (ObjectId x = 0; x < n_obj; ++x) {
    const ObjectId px = src ? src->parent_object[x] : x;
    const ObjectId y = tgt ? tgt->local_object[(*F)(px)] : (*F)(px);
    if (y == groupoid::kNone) throw StructuralError("restriction leaves the target at " + F->source->object_label(px));
    R->on_objects.push_back(y);
  }
  std::unordered_map<groupoid::MorphismId, groupoid::MorphismId> local;
  if (tgt)
    for (groupoid::MorphismId m = 0; m < tgt->parent_morphism.size(); ++m) local[tgt->parent_morphism[m]] = m;
  const std::size_t n_mor = src ? src->parent_morphism.size() : F->source->morphism_count();
  for (groupoid::MorphismId m = 0; m < n_mor; ++m) {
    const auto Fm = F->map(src ? src->parent_morphism[m] : m);
    R->on_morphisms.push_back(tgt ? local.at(Fm) : Fm);
  }
  return R;
}

class DropGenerator : public BisimplicialGenerator {
 public:
  DropGenerator(BisimplicialPtr B, int i0, int j0, std::vector<ObjectId> objects)
      : B_(std::move(B)), i0_(i0), j0_(j0), objects_(std::move(objects)) {}

  std::string name() const override { return B_->name() + "-dropped"; }
  int max_i() const override { return B_->max_i(); }
  int max_j() const override { return B_->max_j(); }
  GroupoidPtr level(int i, int j) const override {
    const auto* S = sub(i, j);
    return S ? S->groupoid : B_->level(i, j);
  }
  FunctorPtr d(int i, int j, int k) const override { return restrict_ends(B_->d(i, j, k), sub(i, j), sub(i, j - 1)); }
  FunctorPtr e(int i, int j, int l) const override { return restrict_ends(B_->e(i, j, l), sub(i, j), sub(i - 1, j)); }
  FunctorPtr s(int i, int j, int k) const override { return restrict_ends(B_->s(i, j, k), sub(i, j), sub(i, j + 1)); }
  FunctorPtr t(int i, int j, int l) const override { return restrict_ends(B_->t(i, j, l), sub(i, j), sub(i + 1, j)); }
  FunctorPtr right_pointing(int i, int j) const override {
    auto P = B_->right_pointing(i, j);
    if (!P) return nullptr;
    try {
      return restrict_ends(P, sub(i, j - 1), sub(i, j));
    } catch (const StructuralError&) {
      return nullptr;
    }
  }
  FunctorPtr left_pointing(int i, int j) const override {
    auto P = B_->left_pointing(i, j);
    if (!P) return nullptr;
    try {
      return restrict_ends(P, sub(i - 1, j), sub(i, j));
    } catch (const StructuralError&) {
      return nullptr;
    }
  }
  bool graded() const override { return B_->graded(); }
  std::optional<std::uint32_t> grade(int i, int j, ObjectId m) const override {
    const auto* S = sub(i, j);
    return B_->generator().grade(i, j, S ? S->parent_object[m] : m);
  }
  std::optional<std::uint32_t> truncation_grade() const override { return B_->generator().truncation_grade(); }
  std::uint32_t simplex_grade(int i, int j, ObjectId m) const override {
    const auto* S = sub(i, j);
    return B_->generator().simplex_grade(i, j, S ? S->parent_object[m] : m);
  }
  std::optional<TruncatedSimplicialGroupoid> left_border() const override { return B_->X(); }
  std::optional<TruncatedSimplicialGroupoid> right_border() const override { return B_->Y(); }

 private:
  // null when the level is untouched
  const groupoid::Subgroupoid* sub(int i, int j) const {
    if (i < i0_ || j < j0_) return nullptr;
    std::lock_guard<std::mutex> lock(mutex_);
    return &sub_locked(i, j);
  }

  const groupoid::Subgroupoid& sub_locked(int i, int j) const {
    auto it = subs_.find({i, j});
    if (it != subs_.end()) return it->second;
    const auto G = B_->level(i, j);
    std::vector<bool> keep(G->object_count(), true);
    if (i == i0_ && j == j0_) {
      const auto& cls = G->classes();
      std::vector<bool> dropped(cls.size(), false);
      for (ObjectId x : objects_) {
        if (x >= G->object_count()) throw DomainError("no such object to drop");
        dropped[cls.class_of[x]] = true;
      }
      for (ObjectId x = 0; x < keep.size(); ++x) keep[x] = !dropped[cls.class_of[x]];
      auto reject_degenerate = [&](const FunctorPtr& F) {
        for (ObjectId y = 0; y < F->source->object_count(); ++y)
          if (!keep[(*F)(y)]) throw DomainError("cannot drop a degenerate object");
      };
      if (j >= 1)
        for (int k = 0; k < j; ++k) reject_degenerate(B_->s(i, j - 1, k));
      if (i >= 1)
        for (int l = 0; l < i; ++l) reject_degenerate(B_->t(i - 1, j, l));
    } else {
      if (j - 1 >= j0_) {
        const auto& below = sub_locked(i, j - 1);
        for (int k = 0; k <= j; ++k) {
          const auto F = B_->d(i, j, k);
          for (ObjectId x = 0; x < keep.size(); ++x)
            if (below.local_object[(*F)(x)] == groupoid::kNone) keep[x] = false;
        }
      }
      if (i - 1 >= i0_) {
        const auto& below = sub_locked(i - 1, j);
        for (int l = 0; l <= i; ++l) {
          const auto F = B_->e(i, j, l);
          for (ObjectId x = 0; x < keep.size(); ++x)
            if (below.local_object[(*F)(x)] == groupoid::kNone) keep[x] = false;
        }
      }
    }
    return subs_.emplace(std::make_pair(i, j), groupoid::full_subgroupoid(G, keep, G->name())).first->second;
  }

  BisimplicialPtr B_;
  int i0_, j0_;
  std::vector<ObjectId> objects_;
  mutable std::mutex mutex_;
  mutable std::map<std::pair<int, int>, groupoid::Subgroupoid> subs_;
};

}  // namespace

BisimplicialPtr total_decalage(const TruncatedSimplicialGroupoid& X) {
  X.require_level(2);
  return AugmentedBisimplicialGroupoid::make(std::make_shared<TotalDecalage>(X));
}

BisimplicialPtr drop_objects(const BisimplicialPtr& B, int i0, int j0, const std::vector<ObjectId>& objects) {
  if (i0 < 0 || j0 < 0) throw DomainError("drop_objects works on levels with i, j >= 0");
  B->require(i0, j0);
  return AugmentedBisimplicialGroupoid::make(std::make_shared<DropGenerator>(B, i0, j0, objects));
}

}  // namespace moebius::bicomodule
