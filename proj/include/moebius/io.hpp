#pragma once

#include <json.hpp>

#include <optional>
#include <string>

#include "moebius/bicomodule.hpp"
#include "moebius/catposet.hpp"
#include "moebius/incidence.hpp"
#include "moebius/simplicial.hpp"

namespace moebius::io {

using json = nlohmann::ordered_json;

// Instance files:
//   {"kind": "poset", "elements": [...], "relations": [[a, b], ...]}
//   {"kind": "category", "objects": [...],
//    "morphisms": [{"name": f, "source": a, "target": b}, ...],
//    "compositions": [[g, f, gf], ...]}
//   {"kind": "adjunction", "left": <poset|category>, "right": <poset|category>,
//    "F": {"objects": {x: y, ...}, "morphisms": {...}}, "G": {...}}
//   {"kind": "correspondence", "category": <category>, "labels": {x: 0|1, ...}}
//   {"kind": "correspondence", "mapping_cylinder": {"source": ..., "target": ..., "F": {...}}}
// Element and object names may be strings or integers. Morphism maps may be
// omitted when both sides are posets. Schema violations throw StructuralError.
enum class Kind { Poset, Category, Adjunction, Correspondence };
std::string to_string(Kind k);

struct Instance {
  Kind kind = Kind::Poset;
  std::string name;
  std::optional<catposet::FinPoset> poset;
  catposet::CategoryPtr category;  // the poset's category for kind Poset
  std::optional<catposet::Adjunction> adjunction;
  std::optional<catposet::CorrespondenceCat> correspondence;
};

Instance parse_instance(const json& doc, const std::string& name = "instance");
// Reads and parses a file; IO and JSON syntax errors also throw StructuralError.
Instance load_instance(const std::string& path);

catposet::FinPoset poset_from_json(const json& doc);
json poset_to_json(const catposet::FinPoset& P);
json category_to_json(const catposet::FinCategory& C);

json to_json(const groupoid::Witness& w);
json to_json(const simplicial::AxiomReport& r);
json to_json(const bicomodule::ValidationReport& r);
json to_json(const incidence::InversionReport& r);
json to_json(const bicomodule::ComoduleMobiusReport& r);
json to_json(const bicomodule::AssociativityReport& r);

}  // namespace moebius::io
