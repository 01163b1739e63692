#include "moebius/io.hpp"

namespace moebius::io {

json to_json(const groupoid::Witness& w) {
  return {{"kind", groupoid::to_string(w.kind)}, {"description", w.description}};
}

json to_json(const simplicial::AxiomReport& r) {
  json items = json::array();
  for (const auto& it : r.items) {
    json j = {{"check", it.name}, {"passed", it.passed}};
    if (it.witness) j["witness"] = to_json(*it.witness);
    items.push_back(std::move(j));
  }
  return {{"subject", r.subject}, {"profile", r.profile},    {"n_max", r.n_max},
          {"top_level", r.top_level}, {"passed", r.passed()}, {"items", items}};
}

json to_json(const bicomodule::ValidationReport& r) {
  json sections = json::array();
  for (const auto& s : r.sections) sections.push_back(to_json(s));
  return {{"passed", r.passed()}, {"sections", sections}};
}

json to_json(const incidence::InversionReport& r) {
  json failures = json::array();
  for (const auto& f : r.failures)
    failures.push_back({{"class", f.label},
                        {"zeta*mu", moebius::to_string(f.zeta_mu)},
                        {"mu*zeta", moebius::to_string(f.mu_zeta)},
                        {"delta", moebius::to_string(f.delta)}});
  return {{"checked", r.checked}, {"passed", r.passed()}, {"failures", failures}};
}

json to_json(const bicomodule::ComoduleMobiusReport& r) {
  json failures = json::array();
  for (const auto& f : r.failures)
    failures.push_back(
        {{"class", f.label}, {"identity", f.identity}, {"lhs", moebius::to_string(f.lhs)}, {"rhs", moebius::to_string(f.rhs)}});
  return {{"checked", r.checked}, {"passed", r.passed()}, {"failures", failures}};
}

json to_json(const bicomodule::AssociativityReport& r) {
  json failures = json::array();
  for (const auto& f : r.failures)
    failures.push_back(
        {{"trial", f.trial}, {"class", f.label}, {"lhs", moebius::to_string(f.lhs)}, {"rhs", moebius::to_string(f.rhs)}});
  return {{"trials", r.trials}, {"evaluations", r.evaluations}, {"passed", r.passed()}, {"failures", failures}};
}

}  // namespace moebius::io
