#include <fstream>
#include <map>
#include <sstream>

#include "moebius/errors.hpp"
#include "moebius/io.hpp"

namespace moebius::io {

using catposet::CategoryBuilder;
using catposet::CategoryPtr;
using catposet::CatFunctor;
using catposet::FinPoset;
using catposet::Index;

std::string to_string(Kind k) {
  switch (k) {
    case Kind::Poset: return "poset";
    case Kind::Category: return "category";
    case Kind::Adjunction: return "adjunction";
    case Kind::Correspondence: return "correspondence";
  }
  return "unknown";
}

namespace {

[[noreturn]] void fail(const std::string& what) { throw StructuralError(what); }

const json& field(const json& doc, const char* key, const std::string& where) {
  if (!doc.is_object() || !doc.contains(key)) fail(where + ": missing \"" + key + "\"");
  return doc.at(key);
}

std::string name_of(const json& v, const std::string& where) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_integer()) return std::to_string(v.get<long long>());
  fail(where + ": expected a string or integer name, got " + v.dump());
}

const json& array_field(const json& doc, const char* key, const std::string& where) {
  const json& a = field(doc, key, where);
  if (!a.is_array()) fail(where + ": \"" + key + "\" must be an array");
  return a;
}

CategoryPtr category_from_json(const json& doc, const std::string& name) {
  CategoryBuilder b(name);
  try {
    for (const auto& o : array_field(doc, "objects", name)) b.add_object(name_of(o, name));
    if (doc.contains("morphisms"))
      for (const auto& m : array_field(doc, "morphisms", name))
        b.add_morphism(name_of(field(m, "name", name), name), name_of(field(m, "source", name), name),
                       name_of(field(m, "target", name), name));
    if (doc.contains("compositions"))
      for (const auto& c : array_field(doc, "compositions", name)) {
        if (!c.is_array() || c.size() != 3) fail(name + ": a composition is [g, f, g o f]");
        b.set_composite(name_of(c[0], name), name_of(c[1], name), name_of(c[2], name));
      }
    return b.build();
  } catch (const DomainError& e) {
    fail(name + ": " + e.what());
  }
}

// A side of an adjunction: a poset or a category document.
struct Side {
  CategoryPtr category;
  bool poset = false;
};

Side side_from_json(const json& doc, const std::string& name) {
  const std::string kind = doc.is_object() && doc.contains("kind") ? name_of(doc["kind"], name) : "";
  if (kind == "poset") return {catposet::category_of(poset_from_json(doc), name), true};
  if (kind == "category") return {category_from_json(doc, name), false};
  fail(name + ": expected a poset or category document");
}

CatFunctor functor_from_json(const json& doc, const Side& src, const Side& tgt, const std::string& name) {
  const json& objs = field(doc, "objects", name);
  if (!objs.is_object()) fail(name + ": \"objects\" must map object names to object names");
  std::vector<Index> on_objects(src.category->object_count(), catposet::kNone);
  for (const auto& [k, v] : objs.items()) {
    auto x = src.category->find_object(k);
    auto y = tgt.category->find_object(name_of(v, name));
    if (!x) fail(name + ": unknown source object " + k);
    if (!y) fail(name + ": unknown target object " + v.dump());
    on_objects[*x] = *y;
  }
  for (Index x = 0; x < on_objects.size(); ++x)
    if (on_objects[x] == catposet::kNone) fail(name + ": no image for object " + src.category->object_label(x));
  if (!doc.contains("morphisms")) {
    if (!src.poset || !tgt.poset) fail(name + ": a functor between categories needs a \"morphisms\" map");
    return catposet::monotone_functor(src.category, tgt.category, std::move(on_objects));
  }
  const json& mors = doc["morphisms"];
  if (!mors.is_object()) fail(name + ": \"morphisms\" must map morphism names to morphism names");
  CatFunctor F{src.category, tgt.category, on_objects, std::vector<Index>(src.category->morphism_count(), catposet::kNone)};
  for (Index x = 0; x < src.category->object_count(); ++x)
    F.on_morphisms[src.category->identity(x)] = tgt.category->identity(on_objects[x]);
  for (const auto& [k, v] : mors.items()) {
    auto f = src.category->find_morphism(k);
    auto g = tgt.category->find_morphism(name_of(v, name));
    if (!f) fail(name + ": unknown source morphism " + k);
    if (!g) fail(name + ": unknown target morphism " + v.dump());
    F.on_morphisms[*f] = *g;
  }
  for (Index f = 0; f < F.on_morphisms.size(); ++f)
    if (F.on_morphisms[f] == catposet::kNone) fail(name + ": no image for morphism " + src.category->morphism(f).label);
  F.validate();
  return F;
}

}  // namespace

FinPoset poset_from_json(const json& doc) {
  std::vector<std::string> labels;
  for (const auto& e : array_field(doc, "elements", "poset")) labels.push_back(name_of(e, "poset"));
  std::vector<std::pair<std::string, std::string>> rel;
  if (doc.contains("relations"))
    for (const auto& r : array_field(doc, "relations", "poset")) {
      if (!r.is_array() || r.size() != 2) fail("poset: a relation is a pair [a, b] meaning a <= b");
      rel.emplace_back(name_of(r[0], "poset"), name_of(r[1], "poset"));
    }
  try {
    return FinPoset::from_labels(std::move(labels), rel);
  } catch (const DomainError& e) {
    fail(std::string("poset: ") + e.what());
  }
}

json poset_to_json(const FinPoset& P) {
  json doc;
  doc["kind"] = "poset";
  doc["elements"] = P.labels();
  json rel = json::array();
  for (auto [a, b] : P.strict_relations()) rel.push_back({P.label(a), P.label(b)});
  doc["relations"] = rel;
  return doc;
}

json category_to_json(const catposet::FinCategory& C) {
  json doc;
  doc["kind"] = "category";
  json objs = json::array(), mors = json::array(), comps = json::array();
  for (Index x = 0; x < C.object_count(); ++x) objs.push_back(C.object_label(x));
  for (Index m = 0; m < C.morphism_count(); ++m)
    if (!C.is_identity(m))
      mors.push_back({{"name", C.morphism(m).label},
                      {"source", C.object_label(C.source(m))},
                      {"target", C.object_label(C.target(m))}});
  for (Index f = 0; f < C.morphism_count(); ++f)
    for (Index g = 0; g < C.morphism_count(); ++g)
      if (!C.is_identity(f) && !C.is_identity(g) && C.target(f) == C.source(g))
        comps.push_back({C.morphism(g).label, C.morphism(f).label, C.morphism(C.compose(g, f)).label});
  doc["objects"] = objs;
  doc["morphisms"] = mors;
  doc["compositions"] = comps;
  return doc;
}

Instance parse_instance(const json& doc, const std::string& name) {
  const std::string kind = name_of(field(doc, "kind", name), name);
  Instance inst;
  inst.name = name;
  if (kind == "poset") {
    inst.kind = Kind::Poset;
    inst.poset = poset_from_json(doc);
    inst.category = catposet::category_of(*inst.poset, name);
  } else if (kind == "category") {
    inst.kind = Kind::Category;
    inst.category = category_from_json(doc, name);
  } else if (kind == "adjunction") {
    inst.kind = Kind::Adjunction;
    const Side X = side_from_json(field(doc, "left", name), "left");
    const Side Y = side_from_json(field(doc, "right", name), "right");
    inst.adjunction = catposet::Adjunction{functor_from_json(field(doc, "F", name), X, Y, "F"),
                                           functor_from_json(field(doc, "G", name), Y, X, "G")};
  } else if (kind == "correspondence") {
    inst.kind = Kind::Correspondence;
    if (doc.contains("mapping_cylinder")) {
      const json& mc = doc["mapping_cylinder"];
      const Side C = side_from_json(field(mc, "source", name), "source");
      const Side D = side_from_json(field(mc, "target", name), "target");
      inst.correspondence = catposet::mapping_cylinder(functor_from_json(field(mc, "F", name), C, D, "F")).correspondence;
    } else {
      catposet::CorrespondenceCat M{category_from_json(field(doc, "category", name), name), {}};
      const json& labels = field(doc, "labels", name);
      if (!labels.is_object()) fail(name + ": \"labels\" must map objects to 0 or 1");
      M.labels.assign(M.category->object_count(), -1);
      for (const auto& [k, v] : labels.items()) {
        auto x = M.category->find_object(k);
        if (!x) fail(name + ": unknown object " + k);
        if (!v.is_number_integer()) fail(name + ": label of " + k + " must be 0 or 1");
        M.labels[*x] = v.get<int>();
      }
      M.validate();
      inst.correspondence = M;
    }
    inst.category = inst.correspondence->category;
  } else {
    fail(name + ": unknown kind \"" + kind + "\"");
  }
  return inst;
}

Instance load_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  json doc;
  try {
    doc = json::parse(ss.str());
  } catch (const json::exception& e) {
    fail(path + ": " + e.what());
  }
  std::string stem = path.substr(path.find_last_of('/') + 1);
  stem = stem.substr(0, stem.find('.'));
  return parse_instance(doc, stem);
}

}  // namespace moebius::io
