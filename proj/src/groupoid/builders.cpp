#include <algorithm>

#include "moebius/errors.hpp"
#include "moebius/groupoid.hpp"

namespace moebius::groupoid {

namespace {

std::uint64_t pair_key(std::uint32_t a, std::uint32_t b) { return (std::uint64_t(a) << 32) | b; }

class TableRule final : public CompositionRule {
 public:
  explicit TableRule(std::unordered_map<std::uint64_t, MorphismId> table) : table_(std::move(table)) {}
  MorphismId compose(const FiniteGroupoid& G, MorphismId g, MorphismId f) const override {
    if (G.is_identity(f)) return g;
    if (G.is_identity(g)) return f;
    auto it = table_.find(pair_key(g, f));
    if (it == table_.end())
      throw StructuralError("no composite recorded for " + G.morphism_label(g) + " o " +
                            G.morphism_label(f));
    return it->second;
  }

 private:
  std::unordered_map<std::uint64_t, MorphismId> table_;
};

class DiscreteRule final : public CompositionRule {
 public:
  MorphismId compose(const FiniteGroupoid&, MorphismId, MorphismId f) const override { return f; }
};

class ActionRule final : public CompositionRule {
 public:
  explicit ActionRule(std::vector<const FiniteGroup*> groups) : groups_(std::move(groups)) {}
  MorphismId compose(const FiniteGroupoid& G, MorphismId g, MorphismId f) const override {
    const ObjectId x = G.source(f);
    return G.out_begin(x) + groups_[x]->multiply(G.out_position(g), G.out_position(f));
  }

 private:
  std::vector<const FiniteGroup*> groups_;
};

class TupleRule final : public CompositionRule {
 public:
  TupleRule(std::vector<GroupoidPtr> factors, std::vector<std::vector<ObjectId>> components)
      : factors_(std::move(factors)), components_(std::move(components)) {}

  // Decode the component morphisms of m (mixed radix over out-degrees).
  void decode(const FiniteGroupoid& G, MorphismId m, std::vector<MorphismId>& out) const {
    const ObjectId x = G.source(m);
    std::uint32_t pos = G.out_position(m);
    out.resize(factors_.size());
    for (std::size_t t = factors_.size(); t-- > 0;) {
      const ObjectId xt = components_[x][t];
      const std::uint32_t d = factors_[t]->out_degree(xt);
      out[t] = factors_[t]->out_begin(xt) + pos % d;
      pos /= d;
    }
  }

  MorphismId encode(const FiniteGroupoid& G, ObjectId x, const std::vector<MorphismId>& ms) const {
    std::uint32_t pos = 0;
    for (std::size_t t = 0; t < factors_.size(); ++t) {
      const ObjectId xt = components_[x][t];
      pos = pos * factors_[t]->out_degree(xt) + factors_[t]->out_position(ms[t]);
    }
    return G.out_begin(x) + pos;
  }

  MorphismId compose(const FiniteGroupoid& G, MorphismId g, MorphismId f) const override {
    std::vector<MorphismId> fs, gs;
    decode(G, f, fs);
    decode(G, g, gs);
    for (std::size_t t = 0; t < fs.size(); ++t) fs[t] = factors_[t]->compose_unchecked(gs[t], fs[t]);
    return encode(G, G.source(f), fs);
  }

 private:
  std::vector<GroupoidPtr> factors_;
  std::vector<std::vector<ObjectId>> components_;
};

class SubRule final : public CompositionRule {
 public:
  SubRule(GroupoidPtr parent, std::vector<MorphismId> to_parent)
      : parent_(std::move(parent)), to_parent_(std::move(to_parent)) {
    to_local_.assign(parent_->morphism_count(), kNone);
    for (MorphismId m = 0; m < to_parent_.size(); ++m) to_local_[to_parent_[m]] = m;
  }
  MorphismId compose(const FiniteGroupoid&, MorphismId g, MorphismId f) const override {
    const MorphismId r = to_local_[parent_->compose_unchecked(to_parent_[g], to_parent_[f])];
    if (r == kNone) throw StructuralError("subgroupoid is not closed under composition");
    return r;
  }

 private:
  GroupoidPtr parent_;
  std::vector<MorphismId> to_parent_;
  std::vector<MorphismId> to_local_;
};

}  // namespace

// ---------------------------------------------------------------------------

ObjectId GroupoidBuilder::add_object(const std::string& label) {
  if (std::find(objects_.begin(), objects_.end(), label) != objects_.end())
    throw StructuralError("duplicate object label '" + label + "'");
  objects_.push_back(label);
  return static_cast<ObjectId>(objects_.size() - 1);
}

MorphismId GroupoidBuilder::add_morphism(const std::string& label, ObjectId source,
                                         ObjectId target) {
  if (source >= objects_.size() || target >= objects_.size())
    throw StructuralError("morphism '" + label + "' has an unknown endpoint");
  for (const auto& g : morphisms_)
    if (g.label == label) throw StructuralError("duplicate morphism label '" + label + "'");
  morphisms_.push_back({label, source, target});
  return static_cast<MorphismId>(morphisms_.size() - 1);
}

MorphismId GroupoidBuilder::add_morphism(const std::string& label, const std::string& source,
                                         const std::string& target) {
  const auto find = [this](const std::string& o) {
    auto it = std::find(objects_.begin(), objects_.end(), o);
    if (it == objects_.end()) throw StructuralError("unknown object '" + o + "'");
    return static_cast<ObjectId>(it - objects_.begin());
  };
  return add_morphism(label, find(source), find(target));
}

MorphismId GroupoidBuilder::lookup(const std::string& label) const {
  for (MorphismId m = 0; m < morphisms_.size(); ++m)
    if (morphisms_[m].label == label) return m;
  throw StructuralError("unknown morphism '" + label + "'");
}

void GroupoidBuilder::set_composite(MorphismId g, MorphismId f, MorphismId gf) {
  if (morphisms_.at(f).target != morphisms_.at(g).source)
    throw StructuralError("composite of non-composable pair " + morphisms_[g].label + " o " +
                          morphisms_[f].label);
  composites_[pair_key(g, f)] = {false, gf};
}

void GroupoidBuilder::set_composite(const std::string& g, const std::string& f,
                                    const std::string& gf) {
  // identities are written id_<object>
  const auto id_of = [this](const std::string& label) -> std::optional<ObjectId> {
    if (label.rfind("id_", 0) != 0) return std::nullopt;
    auto it = std::find(objects_.begin(), objects_.end(), label.substr(3));
    if (it == objects_.end()) return std::nullopt;
    return static_cast<ObjectId>(it - objects_.begin());
  };
  if (id_of(g) || id_of(f)) return;  // determined by the unit laws
  if (auto x = id_of(gf)) {
    const MorphismId gi = lookup(g), fi = lookup(f);
    if (morphisms_[fi].source != *x) throw StructuralError("identity composite has wrong type");
    composites_[pair_key(gi, fi)] = {true, *x};
    return;
  }
  set_composite(lookup(g), lookup(f), lookup(gf));
}

GroupoidPtr GroupoidBuilder::build() const {
  const std::size_t n = objects_.size();
  FiniteGroupoid::Data d;
  d.name = name_;
  d.object_labels = objects_;
  d.identity.resize(n);
  d.out_offset.assign(n + 1, 0);
  std::vector<MorphismId> new_id(morphisms_.size());
  std::vector<std::string> labels;
  for (ObjectId x = 0; x < n; ++x) {
    d.out_offset[x] = static_cast<std::uint32_t>(d.source.size());
    d.identity[x] = static_cast<MorphismId>(d.source.size());
    d.source.push_back(x);
    d.target.push_back(x);
    labels.push_back("id_" + objects_[x]);
    for (MorphismId m = 0; m < morphisms_.size(); ++m) {
      if (morphisms_[m].source != x) continue;
      new_id[m] = static_cast<MorphismId>(d.source.size());
      d.source.push_back(x);
      d.target.push_back(morphisms_[m].target);
      labels.push_back(morphisms_[m].label);
    }
  }
  d.out_offset[n] = static_cast<std::uint32_t>(d.source.size());

  std::unordered_map<std::uint64_t, MorphismId> table;
  for (const auto& [key, value] : composites_) {
    const MorphismId g = new_id[key >> 32], f = new_id[key & 0xffffffffu];
    const MorphismId r = value.identity ? d.identity[value.id] : new_id[value.id];
    if (d.source[r] != d.source[f] || d.target[r] != d.target[g])
      throw StructuralError("composite " + labels[g] + " o " + labels[f] + " = " + labels[r] +
                            " is ill-typed");
    table[pair_key(g, f)] = r;
  }
  for (MorphismId f = 0; f < d.source.size(); ++f) {
    if (d.identity[d.source[f]] == f) continue;
    const ObjectId b = d.target[f];
    for (MorphismId g = d.out_offset[b]; g < d.out_offset[b + 1]; ++g) {
      if (d.identity[b] == g) continue;
      if (!table.count(pair_key(g, f)))
        throw StructuralError("composition table has no entry for " + labels[g] + " o " + labels[f]);
    }
  }
  d.rule = std::make_shared<TableRule>(table);

  d.inverse.assign(d.source.size(), kNone);
  for (MorphismId f = 0; f < d.source.size(); ++f) {
    if (d.identity[d.source[f]] == f) {
      d.inverse[f] = f;
      continue;
    }
    const ObjectId b = d.target[f];
    for (MorphismId g = d.out_offset[b]; g < d.out_offset[b + 1]; ++g) {
      if (d.identity[b] == g || d.target[g] != d.source[f]) continue;
      auto it = table.find(pair_key(g, f));
      if (it != table.end() && it->second == d.identity[d.source[f]]) {
        d.inverse[f] = g;
        break;
      }
    }
    if (d.inverse[f] == kNone) throw StructuralError("morphism '" + labels[f] + "' has no inverse");
  }
  d.morphism_labeler = [labels](MorphismId m) { return labels[m]; };
  auto G = std::make_shared<FiniteGroupoid>(std::move(d));
  G->validate();
  return G;
}

GroupoidPtr discrete_groupoid(std::vector<std::string> labels, std::string name) {
  FiniteGroupoid::Data d;
  d.name = std::move(name);
  const auto n = static_cast<std::uint32_t>(labels.size());
  d.object_labels = std::move(labels);
  for (ObjectId x = 0; x < n; ++x) {
    d.source.push_back(x);
    d.target.push_back(x);
    d.identity.push_back(x);
    d.inverse.push_back(x);
    d.out_offset.push_back(x);
  }
  d.out_offset.push_back(n);
  d.rule = std::make_shared<DiscreteRule>();
  return std::make_shared<FiniteGroupoid>(std::move(d));
}

GroupoidPtr action_groupoid(ActionData a) {
  FiniteGroupoid::Data d;
  d.name = a.name;
  const auto n = static_cast<std::uint32_t>(a.labels.size());
  if (a.group_of.size() != n) throw StructuralError("action groupoid: one group per object needed");
  d.object_labels = std::move(a.labels);
  std::size_t total = 0;
  for (ObjectId x = 0; x < n; ++x) total += a.group_of[x]->order;
  d.source.reserve(total);
  d.target.reserve(total);
  d.out_offset.reserve(n + 1);
  for (ObjectId x = 0; x < n; ++x) {
    d.out_offset.push_back(static_cast<std::uint32_t>(d.source.size()));
    d.identity.push_back(static_cast<MorphismId>(d.source.size()));
    for (std::uint32_t g = 0; g < a.group_of[x]->order; ++g) {
      const ObjectId y = a.act(x, g);
      if (y >= n || a.group_of[y] != a.group_of[x])
        throw StructuralError("action groupoid: action leaves the object set or changes group");
      d.source.push_back(x);
      d.target.push_back(y);
    }
  }
  d.out_offset.push_back(static_cast<std::uint32_t>(d.source.size()));
  d.inverse.resize(d.source.size());
  for (ObjectId x = 0; x < n; ++x)
    for (std::uint32_t g = 0; g < a.group_of[x]->order; ++g) {
      const ObjectId y = d.target[d.out_offset[x] + g];
      d.inverse[d.out_offset[x] + g] = d.out_offset[y] + a.group_of[x]->inverse(g);
    }
  if (a.morphism_labeler) {
    auto labeler = a.morphism_labeler;
    auto offsets = d.out_offset;
    auto sources = d.source;
    d.morphism_labeler = [labeler, offsets, sources](MorphismId m) {
      return labeler(sources[m], m - offsets[sources[m]]);
    };
  }
  d.rule = std::make_shared<ActionRule>(std::move(a.group_of));
  return std::make_shared<FiniteGroupoid>(std::move(d));
}

GroupoidPtr tuple_groupoid(TupleData t) {
  FiniteGroupoid::Data d;
  d.name = t.name;
  const auto n = static_cast<std::uint32_t>(t.components.size());
  const std::size_t r = t.factors.size();
  if (t.labels.size() != n) throw StructuralError("tuple groupoid: one label per object needed");
  d.object_labels = std::move(t.labels);
  std::vector<MorphismId> ms(r);
  // targets of identity-tuples and inverse-tuples are computed after all offsets exist
  for (ObjectId x = 0; x < n; ++x) {
    d.out_offset.push_back(static_cast<std::uint32_t>(d.source.size()));
    std::uint32_t count = 1;
    for (std::size_t k = 0; k < r; ++k) count *= t.factors[k]->out_degree(t.components[x][k]);
    for (std::uint32_t pos = 0; pos < count; ++pos) {
      std::uint32_t p = pos;
      for (std::size_t k = r; k-- > 0;) {
        const ObjectId xk = t.components[x][k];
        const std::uint32_t deg = t.factors[k]->out_degree(xk);
        ms[k] = t.factors[k]->out_begin(xk) + p % deg;
        p /= deg;
      }
      d.source.push_back(x);
      d.target.push_back(t.target(x, ms));
    }
  }
  d.out_offset.push_back(static_cast<std::uint32_t>(d.source.size()));
  auto rule = std::make_shared<TupleRule>(t.factors, t.components);
  const auto encode = [&](ObjectId x, const std::vector<MorphismId>& comps) {
    std::uint32_t pos = 0;
    for (std::size_t k = 0; k < r; ++k) {
      const ObjectId xk = t.components[x][k];
      pos = pos * t.factors[k]->out_degree(xk) + t.factors[k]->out_position(comps[k]);
    }
    return d.out_offset[x] + pos;
  };
  for (ObjectId x = 0; x < n; ++x) {
    for (std::size_t k = 0; k < r; ++k) ms[k] = t.factors[k]->identity(t.components[x][k]);
    d.identity.push_back(encode(x, ms));
  }
  d.inverse.resize(d.source.size());
  for (ObjectId x = 0; x < n; ++x) {
    for (MorphismId m = d.out_offset[x]; m < d.out_offset[x + 1]; ++m) {
      std::uint32_t p = m - d.out_offset[x];
      for (std::size_t k = r; k-- > 0;) {
        const ObjectId xk = t.components[x][k];
        const std::uint32_t deg = t.factors[k]->out_degree(xk);
        ms[k] = t.factors[k]->inverse(t.factors[k]->out_begin(xk) + p % deg);
        p /= deg;
      }
      d.inverse[m] = encode(d.target[m], ms);
    }
  }
  d.rule = rule;
  return std::make_shared<FiniteGroupoid>(std::move(d));
}

Subgroupoid full_subgroupoid(const GroupoidPtr& G, const std::vector<bool>& keep, std::string name) {
  Subgroupoid s;
  s.local_object.assign(G->object_count(), kNone);
  for (ObjectId x = 0; x < G->object_count(); ++x)
    if (keep[x]) {
      s.local_object[x] = static_cast<ObjectId>(s.parent_object.size());
      s.parent_object.push_back(x);
    }
  FiniteGroupoid::Data d;
  d.name = name.empty() ? G->name() + "|sub" : std::move(name);
  std::vector<MorphismId> local_morphism(G->morphism_count(), kNone);
  for (ObjectId lx = 0; lx < s.parent_object.size(); ++lx) {
    const ObjectId x = s.parent_object[lx];
    d.object_labels.push_back(G->object_label(x));
    d.out_offset.push_back(static_cast<std::uint32_t>(d.source.size()));
    for (MorphismId m = G->out_begin(x); m < G->out_end(x); ++m) {
      const ObjectId y = s.local_object[G->target(m)];
      if (y == kNone) continue;
      local_morphism[m] = static_cast<MorphismId>(d.source.size());
      d.source.push_back(lx);
      d.target.push_back(y);
      s.parent_morphism.push_back(m);
    }
  }
  d.out_offset.push_back(static_cast<std::uint32_t>(d.source.size()));
  for (ObjectId x : s.parent_object) d.identity.push_back(local_morphism[G->identity(x)]);
  for (MorphismId m : s.parent_morphism) d.inverse.push_back(local_morphism[G->inverse(m)]);
  auto parent_morphism = s.parent_morphism;
  d.morphism_labeler = [G, parent_morphism](MorphismId m) {
    return G->morphism_label(parent_morphism[m]);
  };
  d.rule = std::make_shared<SubRule>(G, s.parent_morphism);
  s.groupoid = std::make_shared<FiniteGroupoid>(std::move(d));
  return s;
}

Skeleton skeleton(const GroupoidPtr& G) {
  const IsoClassTable& t = G->classes();
  FiniteGroupoid::Data d;
  d.name = G->name() + "|skeleton";
  std::vector<MorphismId> to_parent;
  std::vector<MorphismId> local(G->morphism_count(), kNone);
  for (ClassId c = 0; c < t.size(); ++c) {
    const ObjectId x = t.representative[c];
    d.object_labels.push_back(G->object_label(x));
    d.out_offset.push_back(static_cast<std::uint32_t>(d.source.size()));
    for (MorphismId m = G->out_begin(x); m < G->out_end(x); ++m) {
      if (G->target(m) != x) continue;
      local[m] = static_cast<MorphismId>(d.source.size());
      d.source.push_back(c);
      d.target.push_back(c);
      to_parent.push_back(m);
    }
  }
  d.out_offset.push_back(static_cast<std::uint32_t>(d.source.size()));
  for (ClassId c = 0; c < t.size(); ++c) d.identity.push_back(local[G->identity(t.representative[c])]);
  for (MorphismId m : to_parent) d.inverse.push_back(local[G->inverse(m)]);
  d.morphism_labeler = [G, to_parent](MorphismId m) { return G->morphism_label(to_parent[m]); };
  d.rule = std::make_shared<SubRule>(G, to_parent);
  Skeleton s;
  s.groupoid = std::make_shared<FiniteGroupoid>(std::move(d));

  auto collapse = std::make_shared<GroupoidFunctor>();
  collapse->source = G;
  collapse->target = s.groupoid;
  collapse->on_objects.assign(t.class_of.begin(), t.class_of.end());
  collapse->on_morphisms.resize(G->morphism_count());
  for (MorphismId m = 0; m < G->morphism_count(); ++m) {
    // to_rep[y] o m o to_rep[x]^-1 is an automorphism of the representative
    const ObjectId x = G->source(m), y = G->target(m);
    const MorphismId a =
        G->compose_unchecked(G->compose_unchecked(t.to_rep[y], m), G->inverse(t.to_rep[x]));
    collapse->on_morphisms[m] = local[a];
  }
  auto inclusion = std::make_shared<GroupoidFunctor>();
  inclusion->source = s.groupoid;
  inclusion->target = G;
  inclusion->on_objects.assign(t.representative.begin(), t.representative.end());
  inclusion->on_morphisms = to_parent;
  s.collapse = collapse;
  s.inclusion = inclusion;
  return s;
}

GroupoidPtr bijection_groupoid(const std::vector<std::vector<std::string>>& sets, std::string name) {
  GroupoidBuilder b(name);
  const auto set_label = [](const std::vector<std::string>& s) {
    std::string out = "{";
    for (std::size_t i = 0; i < s.size(); ++i) out += (i ? "," : "") + s[i];
    return out + "}";
  };
  for (const auto& s : sets) b.add_object(set_label(s));
  // a bijection S_i -> S_j is stored as the permutation of positions
  struct Bij {
    std::size_t from, to;
    Perm p;
    std::string label;
    MorphismId id;
  };
  std::vector<Bij> all;
  for (std::size_t i = 0; i < sets.size(); ++i)
    for (std::size_t j = 0; j < sets.size(); ++j) {
      if (sets[i].size() != sets[j].size()) continue;
      const auto& S = SymmetricGroup::of(static_cast<int>(sets[i].size()));
      for (std::uint32_t e = 0; e < S.order(); ++e) {
        if (i == j && e == 0) continue;  // identity is automatic
        std::string label = set_label(sets[i]) + "->" + set_label(sets[j]) + ":";
        for (std::size_t k = 0; k < sets[i].size(); ++k)
          label += (k ? "," : "") + sets[i][k] + ">" + sets[j][S.element(e)[k]];
        all.push_back({i, j, S.element(e), label, 0});
      }
    }
  for (auto& m : all) m.id = b.add_morphism(m.label, set_label(sets[m.from]), set_label(sets[m.to]));
  const auto find = [&](std::size_t from, std::size_t to, const Perm& p) -> const Bij* {
    for (const auto& m : all)
      if (m.from == from && m.to == to && m.p == p) return &m;
    return nullptr;
  };
  for (const auto& f : all)
    for (const auto& g : all) {
      if (g.from != f.to) continue;
      Perm gp(f.p.size());
      for (std::size_t k = 0; k < gp.size(); ++k) gp[k] = g.p[f.p[k]];
      if (const Bij* h = find(f.from, g.to, gp))
        b.set_composite(g.label, f.label, h->label);
      else
        b.set_composite(g.label, f.label, "id_" + set_label(sets[f.from]));
    }
  return b.build();
}

}  // namespace moebius::groupoid
