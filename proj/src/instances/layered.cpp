#include <algorithm>
#include <array>

#include "layered_core.hpp"
#include "moebius/errors.hpp"
#include "moebius/examples.hpp"

namespace moebius::examples {

namespace detail {

Key pack(const Structure& s) {
  Key key = static_cast<Key>(s.k) | (s.rel << 3);
  for (int a = 0; a < s.k; ++a) key |= static_cast<Key>(s.layer[a]) << (39 + 4 * a);
  return key;
}

Structure unpack(Key key) {
  Structure s;
  s.k = static_cast<int>(key & 7u);
  s.rel = (key >> 3) & ((std::uint64_t{1} << 36) - 1);
  for (int a = 0; a < s.k; ++a) s.layer[a] = static_cast<std::uint8_t>((key >> (39 + 4 * a)) & 15u);
  return s;
}

namespace {

// Extends every order on k - 1 elements by a new element k - 1 with strict
// down-set D and up-set U; with natural = true only maximal new elements.
std::vector<std::uint64_t> extend(const std::vector<std::uint64_t>& smaller, int k, bool natural) {
  const int m = k - 1;
  std::vector<std::uint64_t> out;
  for (std::uint64_t rel : smaller) {
    std::vector<std::uint32_t> down, up;
    for (std::uint32_t S = 0; S < (1u << m); ++S) {
      bool is_down = true, is_up = true;
      for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b)
          if (below(rel, a, b)) {
            if ((S >> b & 1u) && !(S >> a & 1u)) is_down = false;
            if ((S >> a & 1u) && !(S >> b & 1u)) is_up = false;
          }
      if (is_down) down.push_back(S);
      if (is_up && (!natural || S == 0)) up.push_back(S);
    }
    for (std::uint32_t D : down)
      for (std::uint32_t U : up) {
        if (D & U) continue;
        bool ok = true;
        for (int d = 0; d < m && ok; ++d)
          for (int u = 0; u < m && ok; ++u)
            if ((D >> d & 1u) && (U >> u & 1u) && !below(rel, d, u)) ok = false;
        if (!ok) continue;
        std::uint64_t r = rel;
        for (int a = 0; a < m; ++a) {
          if (D >> a & 1u) r |= relation_bit(a, m);
          if (U >> a & 1u) r |= relation_bit(m, a);
        }
        out.push_back(r);
      }
  }
  return out;
}

const std::vector<std::uint64_t>& poset_list(int k, bool natural) {
  if (k < 0 || k > kMaxElements) throw DomainError("posets are supported on at most 6 elements");
  static std::array<std::once_flag, 2 * (kMaxElements + 1)> once;
  static std::array<std::vector<std::uint64_t>, 2 * (kMaxElements + 1)> lists;
  const int slot = k + (natural ? kMaxElements + 1 : 0);
  std::call_once(once[slot], [&] {
    lists[slot] = k == 0 ? std::vector<std::uint64_t>{0} : extend(poset_list(k - 1, natural), k, natural);
  });
  return lists[slot];
}

}  // namespace

const std::vector<std::uint64_t>& labelled_posets(int k) { return poset_list(k, false); }
const std::vector<std::uint64_t>& naturally_labelled_posets(int k) { return poset_list(k, true); }

std::uint64_t permute_relation(std::uint64_t rel, int k, const Perm& p) {
  std::uint64_t out = 0;
  for (int a = 0; a < k; ++a)
    for (int b = 0; b < k; ++b)
      if (below(rel, a, b)) out |= relation_bit(p[a], p[b]);
  return out;
}

std::uint64_t surjective_layerings(int k, std::uint64_t rel, int n) {
  if (n <= 0) return k == 0 ? 1 : 0;
  if (n > k) return 0;
  std::array<int, kMaxElements> layer{};
  std::uint64_t count = 0;
  std::function<void(int)> go = [&](int a) {
    if (a == k) {
      std::uint32_t used = 0;
      for (int b = 0; b < k; ++b) used |= 1u << layer[b];
      if (used == (1u << n) - 1) ++count;
      return;
    }
    for (int l = 0; l < n; ++l) {
      bool ok = true;
      for (int b = 0; b < a && ok; ++b)
        if ((below(rel, b, a) && layer[b] > l) || (below(rel, a, b) && l > layer[b])) ok = false;
      if (!ok) continue;
      layer[a] = l;
      go(a + 1);
    }
  };
  go(0);
  return count;
}

Structure restrict_to(int k, std::uint64_t rel, std::uint32_t mask) {
  std::array<int, kMaxElements> to{};
  Structure s;
  for (int a = 0; a < k; ++a) to[a] = (mask >> a & 1u) ? s.k++ : -1;
  for (int a = 0; a < k; ++a)
    for (int b = 0; b < k; ++b)
      if (to[a] >= 0 && to[b] >= 0 && below(rel, a, b)) s.rel |= relation_bit(to[a], to[b]);
  return s;
}

std::string LayeredFamily::label(const Structure& s, Shape shape) const {
  std::string out = "[";
  for (int l = 0; l < shape.layers; ++l) {
    if (l > 0) out += (l == shape.antichain && shape.antichain < shape.layers) ? ";" : "|";
    for (int a = 0; a < s.k; ++a)
      if (s.layer[a] == l) out += static_cast<char>('a' + a);
  }
  out += "]";
  bool first = true;
  for (int a = 0; a < s.k; ++a)
    for (int b = 0; b < s.k; ++b) {
      if (!below(s.rel, a, b)) continue;
      bool cover = true;
      for (int c = 0; c < s.k && cover; ++c)
        if (below(s.rel, a, c) && below(s.rel, c, b)) cover = false;
      if (!cover) continue;
      out += first ? " " : ",";
      out += static_cast<char>('a' + a);
      out += '<';
      out += static_cast<char>('a' + b);
      first = false;
    }
  return out;
}

const LayeredLevel& LayeredFamily::level(Shape shape) const {
  std::lock_guard<std::mutex> lock(mutex_);
  auto it = levels_.find(shape);
  if (it != levels_.end()) return *it->second;
  auto lvl = std::make_unique<LayeredLevel>();
  lvl->shape = shape;
  const int L = shape.layers, A = shape.antichain;
  const int kmax = static_cast<int>(std::min<std::uint32_t>(grade_bound_, kMaxElements));
  for (int k = 0; k <= kmax; ++k) {
    static const std::vector<std::uint64_t> only_empty{0};
    const auto& rels = A >= L ? only_empty : labelled_posets(k);
    for (std::uint64_t rel : rels) {
      Structure s;
      s.k = k;
      s.rel = rel;
      std::function<void(int)> go = [&](int a) {
        if (a == k) {
          lvl->index.emplace(pack(s), static_cast<groupoid::ObjectId>(lvl->keys.size()));
          lvl->keys.push_back(pack(s));
          return;
        }
        for (int l = 0; l < L; ++l) {
          bool ok = true;
          for (int b = 0; b < a && ok; ++b) {
            if (below(rel, b, a) && (s.layer[b] > l || l < A)) ok = false;
            if (below(rel, a, b) && (l > s.layer[b] || s.layer[b] < A)) ok = false;
          }
          if (!ok) continue;
          s.layer[a] = static_cast<std::uint8_t>(l);
          go(a + 1);
        }
      };
      go(0);
    }
  }
  groupoid::ActionData data;
  data.name = "L(" + std::to_string(L) + "," + std::to_string(A) + ")";
  for (Key key : lvl->keys) {
    const Structure s = unpack(key);
    data.labels.push_back(label(s, shape));
    data.group_of.push_back(&SymmetricGroup::of(s.k).group());
  }
  data.act = [&](groupoid::ObjectId x, std::uint32_t g) {
    const Structure s = unpack(lvl->keys[x]);
    const Perm& p = SymmetricGroup::of(s.k).element(g);
    Structure t;
    t.k = s.k;
    t.rel = permute_relation(s.rel, s.k, p);
    for (int a = 0; a < s.k; ++a) t.layer[p[a]] = s.layer[a];
    return lvl->index.at(pack(t));
  };
  data.morphism_labeler = [keys = lvl->keys](groupoid::ObjectId x, std::uint32_t g) {
    return perm_to_string(SymmetricGroup::of(unpack(keys[x]).k).element(g));
  };
  lvl->groupoid = groupoid::action_groupoid(std::move(data));
  return *levels_.emplace(shape, std::move(lvl)).first->second;
}

groupoid::FunctorPtr LayeredFamily::transport(Shape from, Shape to,
                                              const std::function<Moved(const Structure&)>& op) const {
  const LayeredLevel& src = level(from);
  const LayeredLevel& dst = level(to);
  const auto& G = *src.groupoid;
  const auto& H = *dst.groupoid;
  std::vector<Moved> moved(src.keys.size());
  auto F = std::make_shared<groupoid::GroupoidFunctor>();
  F->source = src.groupoid;
  F->target = dst.groupoid;
  F->on_objects.resize(src.keys.size());
  for (groupoid::ObjectId x = 0; x < src.keys.size(); ++x) {
    moved[x] = op(unpack(src.keys[x]));
    auto it = dst.index.find(pack(moved[x].s));
    if (it == dst.index.end()) throw DomainError("layered structure map leaves the target level " + H.name());
    F->on_objects[x] = it->second;
  }
  F->on_morphisms.resize(G.morphism_count());
  for (groupoid::ObjectId x = 0; x < src.keys.size(); ++x) {
    const int k = unpack(src.keys[x]).k;
    const int k2 = moved[x].s.k;
    const auto& Sk = SymmetricGroup::of(k);
    const auto& Sk2 = SymmetricGroup::of(k2);
    for (groupoid::MorphismId m = G.out_begin(x); m < G.out_end(x); ++m) {
      const std::uint32_t g = G.out_position(m);
      std::uint32_t g2 = g;
      if (k2 != k) {
        const Perm& p = Sk.element(g);
        const auto& ty = moved[G.target(m)].to;
        Perm q(static_cast<std::size_t>(k2));
        for (int a = 0; a < k; ++a)
          if (moved[x].to[a] >= 0) q[moved[x].to[a]] = static_cast<std::uint8_t>(ty[p[a]]);
        g2 = Sk2.rank(q);
      }
      F->on_morphisms[m] = H.out_begin(F->on_objects[x]) + g2;
    }
  }
  return F;
}

groupoid::FunctorPtr LayeredFamily::delete_layer(Shape from, int p, Shape to) const {
  return transport(from, to, [p](const Structure& s) {
    Moved r;
    for (int a = 0; a < s.k; ++a) {
      if (s.layer[a] == p) {
        r.to[a] = -1;
        continue;
      }
      r.to[a] = r.s.k;
      r.s.layer[r.s.k++] = static_cast<std::uint8_t>(s.layer[a] > p ? s.layer[a] - 1 : s.layer[a]);
    }
    for (int a = 0; a < s.k; ++a)
      for (int b = 0; b < s.k; ++b)
        if (r.to[a] >= 0 && r.to[b] >= 0 && below(s.rel, a, b)) r.s.rel |= relation_bit(r.to[a], r.to[b]);
    return r;
  });
}

groupoid::FunctorPtr LayeredFamily::join_layers(Shape from, int p, Shape to) const {
  return transport(from, to, [p](const Structure& s) {
    Moved r;
    r.s = s;
    for (int a = 0; a < s.k; ++a) {
      r.to[a] = a;
      if (s.layer[a] > p) --r.s.layer[a];
    }
    return r;
  });
}

groupoid::FunctorPtr LayeredFamily::insert_layer(Shape from, int p, Shape to) const {
  return transport(from, to, [p](const Structure& s) {
    Moved r;
    r.s = s;
    for (int a = 0; a < s.k; ++a) {
      r.to[a] = a;
      if (s.layer[a] >= p) ++r.s.layer[a];
    }
    return r;
  });
}

namespace {

class LayeredShortcuts final : public simplicial::FiberShortcuts {
 public:
  LayeredShortcuts(const LayeredFamily* family, Shape edge) : family_(family), edge_(edge) {}

  // 2-layerings of the fixed edge, collected by the classes of their layers
  std::optional<std::vector<simplicial::TensorTerm>> comultiply(groupoid::ObjectId f) const override {
    const LayeredLevel& E = family_->level(edge_);
    const auto& cls = E.groupoid->classes();
    const Structure s = unpack(E.keys[f]);
    std::vector<simplicial::TensorTerm> terms;
    const std::uint32_t all = (1u << s.k) - 1;
    for (std::uint32_t lower = 0; lower <= all; ++lower) {
      bool monotone = true;
      for (int a = 0; a < s.k && monotone; ++a)
        for (int b = 0; b < s.k && monotone; ++b)
          if (below(s.rel, a, b) && !(lower >> a & 1u) && (lower >> b & 1u)) monotone = false;
      if (!monotone) continue;
      const auto first = cls.class_of[E.index.at(pack(restrict_to(s.k, s.rel, lower)))];
      const auto second = cls.class_of[E.index.at(pack(restrict_to(s.k, s.rel, all & ~lower)))];
      terms.push_back({first, second, Rational(1)});
    }
    return terms;
  }

  std::optional<Rational> phi(groupoid::ObjectId f, int n) const override {
    if (n < 1) return std::nullopt;
    const Structure s = unpack(family_->level(edge_).keys[f]);
    return Rational(static_cast<unsigned long>(surjective_layerings(s.k, s.rel, n)));
  }

 private:
  const LayeredFamily* family_;
  Shape edge_;
};

class LayeredGenerator final : public simplicial::LevelGenerator {
 public:
  LayeredGenerator(std::shared_ptr<const LayeredFamily> family, bool sets, int max_level)
      : family_(std::move(family)), sets_(sets), max_level_(max_level), shortcuts_(family_.get(), shape(1)) {}

  Shape shape(int n) const { return {n, sets_ ? n : 0}; }
  const LayeredFamily& family() const { return *family_; }

  std::string name() const override { return sets_ ? "layered-sets" : "layered-posets"; }
  int max_level() const override { return max_level_; }
  groupoid::GroupoidPtr level(const simplicial::TruncatedSimplicialGroupoid&, int n) const override {
    return family_->level(shape(n)).groupoid;
  }
  groupoid::FunctorPtr face(const simplicial::TruncatedSimplicialGroupoid&, int n, int i) const override {
    if (i == 0) return family_->delete_layer(shape(n), 0, shape(n - 1));
    if (i == n) return family_->delete_layer(shape(n), n - 1, shape(n - 1));
    return family_->join_layers(shape(n), i - 1, shape(n - 1));
  }
  groupoid::FunctorPtr degeneracy(const simplicial::TruncatedSimplicialGroupoid&, int n, int i) const override {
    return family_->insert_layer(shape(n), i, shape(n + 1));
  }
  std::optional<std::uint32_t> grade(const simplicial::TruncatedSimplicialGroupoid&,
                                     groupoid::ObjectId edge) const override {
    return static_cast<std::uint32_t>(unpack(family_->level(shape(1)).keys[edge]).k);
  }
  bool graded() const override { return true; }
  const simplicial::FiberShortcuts* shortcuts() const override { return &shortcuts_; }
  std::optional<std::uint32_t> truncation_grade() const override { return family_->grade_bound(); }
  std::uint32_t simplex_grade(const simplicial::TruncatedSimplicialGroupoid&, int n, groupoid::ObjectId x) const override {
    return static_cast<std::uint32_t>(unpack(family_->level(shape(n)).keys[x]).k);
  }

 private:
  std::shared_ptr<const LayeredFamily> family_;
  bool sets_;
  int max_level_;
  LayeredShortcuts shortcuts_;
};

}  // namespace

simplicial::TruncatedSimplicialGroupoid make_layered(std::shared_ptr<const LayeredFamily> family, bool sets,
                                                     int max_level) {
  return simplicial::TruncatedSimplicialGroupoid(std::make_shared<LayeredGenerator>(std::move(family), sets, max_level));
}

std::pair<const LayeredFamily*, Shape> layered_level(const simplicial::TruncatedSimplicialGroupoid& X, int n) {
  const auto* gen = dynamic_cast<const LayeredGenerator*>(&X.generator());
  if (!gen) throw DomainError(X.name() + " is not a layered-sets or layered-posets instance");
  X.require_level(n);
  return {&gen->family(), gen->shape(n)};
}

LayeredPoset to_layered(const Structure& s, int layers) {
  LayeredPoset out;
  std::vector<std::string> labels;
  std::vector<std::pair<catposet::Index, catposet::Index>> rel;
  for (int a = 0; a < s.k; ++a) {
    labels.push_back(std::string(1, static_cast<char>('a' + a)));
    out.layer.push_back(s.layer[a]);
    for (int b = 0; b < s.k; ++b)
      if (below(s.rel, a, b)) rel.emplace_back(a, b);
  }
  out.poset = FinPoset(std::move(labels), rel);
  out.layers = layers;
  return out;
}

std::optional<Structure> from_layered(const FinPoset& P, const std::vector<int>& layer, int layers) {
  if (P.size() > static_cast<std::size_t>(kMaxElements) || layer.size() != P.size()) return std::nullopt;
  Structure s;
  s.k = static_cast<int>(P.size());
  for (auto [a, b] : P.strict_relations()) s.rel |= relation_bit(static_cast<int>(a), static_cast<int>(b));
  for (int a = 0; a < s.k; ++a) {
    if (layer[a] < 0 || layer[a] >= layers) return std::nullopt;
    s.layer[a] = static_cast<std::uint8_t>(layer[a]);
  }
  return s;
}

}  // namespace detail

namespace {
int default_levels(std::uint32_t grade_bound, int max_level) {
  if (grade_bound > static_cast<std::uint32_t>(kMaxElements))
    throw DomainError("layered instances support at most 6 elements");
  return max_level >= 0 ? max_level : static_cast<int>(grade_bound) + 3;
}
}  // namespace

TruncatedSimplicialGroupoid layered_sets(std::uint32_t grade_bound, int max_level) {
  const int levels = default_levels(grade_bound, max_level);
  return detail::make_layered(std::make_shared<detail::LayeredFamily>(grade_bound), true, levels);
}

TruncatedSimplicialGroupoid layered_posets(std::uint32_t grade_bound, int max_level) {
  const int levels = default_levels(grade_bound, max_level);
  return detail::make_layered(std::make_shared<detail::LayeredFamily>(grade_bound), false, levels);
}

LayeredPoset decode(const TruncatedSimplicialGroupoid& X, int n, ObjectId x) {
  auto [family, shape] = detail::layered_level(X, n);
  const auto& lvl = family->level(shape);
  if (x >= lvl.keys.size()) throw DomainError("no object " + std::to_string(x) + " on level " + std::to_string(n));
  return detail::to_layered(detail::unpack(lvl.keys[x]), shape.layers);
}

std::optional<ObjectId> encode(const TruncatedSimplicialGroupoid& X, int n, const FinPoset& P,
                               const std::vector<int>& layer) {
  auto [family, shape] = detail::layered_level(X, n);
  auto s = detail::from_layered(P, layer, shape.layers);
  if (!s) return std::nullopt;
  const auto& lvl = family->level(shape);
  auto it = lvl.index.find(detail::pack(*s));
  if (it == lvl.index.end()) return std::nullopt;
  return it->second;
}

std::optional<ObjectId> poset_edge(const TruncatedSimplicialGroupoid& C, const FinPoset& P) {
  return encode(C, 1, P, std::vector<int>(P.size(), 0));
}

}  // namespace moebius::examples
