#include "moebius/simplicial.hpp"

#include "moebius/errors.hpp"

namespace moebius::simplicial {

TruncatedSimplicialGroupoid::TruncatedSimplicialGroupoid(std::shared_ptr<const LevelGenerator> generator)
    : generator_(std::move(generator)), cache_(std::make_shared<Cache>()) {}

void TruncatedSimplicialGroupoid::require_level(int n) const {
  if (n > max_level()) throw InsufficientLevels(n, max_level());
  if (n < 0) throw DomainError("negative simplicial level " + std::to_string(n));
}

// Lookups release the lock while generating, since generators recursively ask
// for lower levels; a concurrent duplicate build is discarded on insertion.
GroupoidPtr TruncatedSimplicialGroupoid::level(int n) const {
  require_level(n);
  {
    std::lock_guard<std::mutex> lock(cache_->mutex);
    auto it = cache_->levels.find(n);
    if (it != cache_->levels.end()) return it->second;
  }
  GroupoidPtr built = generator_->level(*this, n);
  std::lock_guard<std::mutex> lock(cache_->mutex);
  return cache_->levels.emplace(n, built).first->second;
}

FunctorPtr TruncatedSimplicialGroupoid::face(int n, int i) const {
  require_level(n);
  if (n < 1 || i < 0 || i > n)
    throw DomainError("face d_" + std::to_string(i) + " is undefined on level " + std::to_string(n));
  {
    std::lock_guard<std::mutex> lock(cache_->mutex);
    auto it = cache_->faces.find({n, i});
    if (it != cache_->faces.end()) return it->second;
  }
  FunctorPtr built = generator_->face(*this, n, i);
  std::lock_guard<std::mutex> lock(cache_->mutex);
  return cache_->faces.emplace(std::make_pair(n, i), built).first->second;
}

FunctorPtr TruncatedSimplicialGroupoid::degeneracy(int n, int i) const {
  require_level(n + 1);
  if (n < 0 || i < 0 || i > n)
    throw DomainError("degeneracy s_" + std::to_string(i) + " is undefined on level " +
                      std::to_string(n));
  {
    std::lock_guard<std::mutex> lock(cache_->mutex);
    auto it = cache_->degeneracies.find({n, i});
    if (it != cache_->degeneracies.end()) return it->second;
  }
  FunctorPtr built = generator_->degeneracy(*this, n, i);
  std::lock_guard<std::mutex> lock(cache_->mutex);
  return cache_->degeneracies.emplace(std::make_pair(n, i), built).first->second;
}

std::shared_ptr<const void> TruncatedSimplicialGroupoid::memo_erased(
    const std::string& key, const std::function<std::shared_ptr<const void>()>& make) const {
  {
    std::lock_guard<std::mutex> lock(cache_->mutex);
    auto it = cache_->extras.find(key);
    if (it != cache_->extras.end()) return it->second;
  }
  auto built = make();
  std::lock_guard<std::mutex> lock(cache_->mutex);
  return cache_->extras.emplace(key, built).first->second;
}

const std::vector<bool>& TruncatedSimplicialGroupoid::degenerate_edge_classes() const {
  std::call_once(cache_->degenerate_once, [this] {
    const auto X1 = level(1);
    const auto s0 = degeneracy(0, 0);
    std::vector<bool> deg(X1->classes().size(), false);
    for (ObjectId x = 0; x < s0->source->object_count(); ++x) deg[X1->classes().class_of[(*s0)(x)]] = true;
    cache_->degenerate = std::move(deg);
  });
  return cache_->degenerate;
}

ObjectId apply_face(const TruncatedSimplicialGroupoid& X, int n, int i, ObjectId x) {
  return (*X.face(n, i))(x);
}

std::vector<ObjectId> principal_edges(const TruncatedSimplicialGroupoid& X, int n, ObjectId sigma) {
  std::vector<ObjectId> edges;
  for (int i = 1; i <= n; ++i) {
    ObjectId s = sigma;
    for (int k = n; k > i; --k) s = apply_face(X, k, k, s);  // keep vertices 0..i
    for (int k = i; k > 1; --k) s = apply_face(X, k, 0, s);  // keep vertices i-1, i
    edges.push_back(s);
  }
  return edges;
}

ObjectId long_edge(const TruncatedSimplicialGroupoid& X, int n, ObjectId sigma) {
  if (n == 0) return (*X.degeneracy(0, 0))(sigma);
  for (int k = n; k > 1; --k) sigma = apply_face(X, k, 1, sigma);
  return sigma;
}

FunctorPtr long_edge_functor(const TruncatedSimplicialGroupoid& X, int n) {
  if (n == 0) return X.degeneracy(0, 0);
  if (n == 1) return groupoid::identity_functor(X.level(1));
  FunctorPtr F = X.face(n, 1);
  for (int k = n - 1; k > 1; --k) F = groupoid::compose(*X.face(k, 1), *F);
  return F;
}

bool all_edges_nondegenerate(const TruncatedSimplicialGroupoid& X, int n, ObjectId sigma) {
  const auto& deg = X.degenerate_edge_classes();
  const auto& cls = X.level(1)->classes();
  for (ObjectId e : principal_edges(X, n, sigma))
    if (deg[cls.class_of[e]]) return false;
  return true;
}

WordGroupoid word_groupoid(const TruncatedSimplicialGroupoid& X, const std::string& word) {
  const int n = static_cast<int>(word.size());
  for (char c : word)
    if (c != '0' && c != '1' && c != 'a') throw DomainError("word letters must be 0, 1 or a");
  const auto Xn = X.level(n);
  const auto& deg = X.degenerate_edge_classes();
  const auto& cls = X.level(1)->classes();
  std::vector<bool> keep(Xn->object_count(), true);
  for (ObjectId s = 0; s < Xn->object_count(); ++s) {
    const auto edges = principal_edges(X, n, s);
    for (int i = 0; i < n && keep[s]; ++i) {
      const bool d = deg[cls.class_of[edges[i]]];
      if ((word[i] == '0' && !d) || (word[i] == 'a' && d)) keep[s] = false;
    }
  }
  WordGroupoid w;
  w.sub = groupoid::full_subgroupoid(Xn, keep, X.name() + "_" + word);
  auto inc = std::make_shared<groupoid::GroupoidFunctor>();
  inc->source = w.sub.groupoid;
  inc->target = Xn;
  inc->on_objects = w.sub.parent_object;
  inc->on_morphisms = w.sub.parent_morphism;
  w.inclusion = inc;
  return w;
}

WordGroupoid nondegenerate_simplices(const TruncatedSimplicialGroupoid& X, int n) {
  if (!groupoid::is_monomorphism(*X.degeneracy(0, 0)))
    throw DomainError(X.name() + " is not complete: s_0 is not a monomorphism");
  return word_groupoid(X, std::string(static_cast<std::size_t>(n), 'a'));
}

// ---------------------------------------------------------------------------

SimplicialMap::SimplicialMap(TruncatedSimplicialGroupoid source, TruncatedSimplicialGroupoid target,
                             LevelFn fn, std::string name)
    : source_(std::move(source)),
      target_(std::move(target)),
      fn_(std::move(fn)),
      name_(std::move(name)),
      cache_(std::make_shared<Cache>()) {}

FunctorPtr SimplicialMap::at(int n) const {
  if (n > max_level()) throw InsufficientLevels(n, max_level());
  {
    std::lock_guard<std::mutex> lock(cache_->mutex);
    auto it = cache_->levels.find(n);
    if (it != cache_->levels.end()) return it->second;
  }
  FunctorPtr built = fn_(n);
  std::lock_guard<std::mutex> lock(cache_->mutex);
  return cache_->levels.emplace(n, built).first->second;
}

}  // namespace moebius::simplicial
