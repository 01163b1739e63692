#include <CLI11.hpp>

#include <algorithm>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "moebius/errors.hpp"
#include "moebius/examples.hpp"
#include "moebius/io.hpp"

using namespace moebius;
using catposet::FinPoset;
using catposet::Index;
using groupoid::ClassId;
using groupoid::ObjectId;
using io::json;
using simplicial::TruncatedSimplicialGroupoid;

namespace {

constexpr int kPass = 0;
constexpr int kFail = 1;
constexpr int kInputError = 2;

// Input error: reported on stderr, exit code 2.
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// Tables

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> notes;  // text-only trailer lines
  bool passed = true;
};

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) out += c == '"' ? std::string("\"\"") : std::string(1, c);
  return out + "\"";
}

void print(const Table& t, const std::string& format, json extra = json::object()) {
  if (format == "csv") {
    for (std::size_t i = 0; i < t.columns.size(); ++i) std::cout << (i ? "," : "") << csv_field(t.columns[i]);
    std::cout << "\n";
    for (const auto& r : t.rows) {
      for (std::size_t i = 0; i < r.size(); ++i) std::cout << (i ? "," : "") << csv_field(r[i]);
      std::cout << "\n";
    }
  } else if (format == "json") {
    json rows = json::array();
    for (const auto& r : t.rows) {
      json o = json::object();
      for (std::size_t i = 0; i < r.size(); ++i) o[t.columns[i]] = r[i];
      rows.push_back(std::move(o));
    }
    extra["passed"] = t.passed;
    extra["rows"] = rows;
    std::cout << extra.dump(2) << "\n";
  } else {
    std::vector<std::size_t> w(t.columns.size());
    for (std::size_t i = 0; i < w.size(); ++i) w[i] = t.columns[i].size();
    for (const auto& r : t.rows)
      for (std::size_t i = 0; i < r.size(); ++i) w[i] = std::max(w[i], r[i].size());
    auto line = [&](const std::vector<std::string>& r) {
      std::string s;
      for (std::size_t i = 0; i < r.size(); ++i) {
        s += r[i];
        if (i + 1 < r.size()) s += std::string(w[i] - r[i].size() + 2, ' ');
      }
      std::cout << s << "\n";
    };
    line(t.columns);
    for (const auto& r : t.rows) line(r);
    for (const auto& n : t.notes) std::cout << n << "\n";
  }
}

// ---------------------------------------------------------------------------
// Inputs

struct Input {
  std::string name;
  std::optional<io::Instance> file;
  std::string builtin;  // empty for files
};

const std::vector<std::string>& builtin_names() {
  static const std::vector<std::string> names = {"posets", "layered-posets", "sets", "layered-sets", "sets-posets",
                                                 "chain-adjunction"};
  return names;
}

Input load(const std::string& arg) {
  Input in;
  if (arg.rfind("builtin:", 0) == 0) {
    in.builtin = arg.substr(8);
    if (std::find(builtin_names().begin(), builtin_names().end(), in.builtin) == builtin_names().end()) {
      std::string known;
      for (const auto& n : builtin_names()) known += " " + n;
      throw InputError("unknown builtin '" + in.builtin + "'; known:" + known);
    }
    if (in.builtin == "posets") in.builtin = "layered-posets";
    if (in.builtin == "sets") in.builtin = "layered-sets";
    in.name = in.builtin;
    return in;
  }
  in.file = io::load_instance(arg);
  in.name = in.file->name;
  return in;
}

bool layered(const Input& in) { return in.builtin == "layered-posets" || in.builtin == "layered-sets"; }

TruncatedSimplicialGroupoid layered_instance(const Input& in, std::uint32_t grade, int max_level = -1) {
  return in.builtin == "layered-posets" ? examples::layered_posets(grade, max_level)
                                        : examples::layered_sets(grade, max_level);
}

std::optional<catposet::Adjunction> adjunction_of(const Input& in) {
  if (in.builtin == "chain-adjunction") return examples::chain_adjunction();
  if (in.file && in.file->adjunction) return in.file->adjunction;
  return std::nullopt;
}

// The bisimplicial groupoid behind an adjunction, correspondence or sets-posets input.
bicomodule::BisimplicialPtr bisimplicial_of(const Input& in, std::uint32_t grade, int levels) {
  if (in.builtin == "sets-posets") return examples::sets_posets_bicomodule(grade, levels).bicomodule;
  if (auto adj = adjunction_of(in))
    return catposet::correspondence_bisimplicial(catposet::mapping_cylinder(adj->F).correspondence, levels);
  if (in.file && in.file->correspondence)
    return catposet::correspondence_bisimplicial(*in.file->correspondence, levels);
  return nullptr;
}

std::string adjunction_failure(const catposet::Adjunction& adj) {
  const auto rep = catposet::check_adjunction(adj.F, adj.G);
  if (rep.ok) return {};
  std::string w = rep.witness;
  if (rep.pair)
    w += " (x = " + adj.F.source->object_label(rep.pair->first) +
         ", y = " + adj.F.target->object_label(rep.pair->second) + ")";
  return w;
}

// ---------------------------------------------------------------------------
// check

struct CheckOptions {
  std::string input;
  std::string profile;
  int n_max = 2;
  std::uint32_t grade = 3;
  std::string format = "text";
};

void print_report(const simplicial::AxiomReport& r, bool verbose) {
  std::size_t failed = 0;
  for (const auto& it : r.items) failed += !it.passed;
  std::cout << r.subject << " " << r.profile << " (n_max " << r.n_max << ", levels to " << r.top_level
            << "): " << (r.passed() ? "PASS" : "FAIL") << ", " << r.items.size() - failed << "/" << r.items.size()
            << " checks\n";
  for (const auto& it : r.items) {
    if (it.passed && !verbose) continue;
    std::cout << "  " << (it.passed ? "ok    " : "FAIL  ") << it.name << "\n";
    if (it.witness)
      std::cout << "        witness (" << groupoid::to_string(it.witness->kind) << "): " << it.witness->description
                << "\n";
  }
}

int cmd_check(const CheckOptions& o) {
  const Input in = load(o.input);
  std::vector<simplicial::AxiomReport> reports;

  const bool bisimplicial = in.builtin == "sets-posets" || in.builtin == "chain-adjunction" ||
                            (in.file && (in.file->adjunction || in.file->correspondence));
  if (bisimplicial) {
    if (!o.profile.empty() && o.profile != "bicomodule")
      throw InputError("profile '" + o.profile + "' needs a simplicial input; use --profile bicomodule");
    if (auto adj = adjunction_of(in)) {
      const std::string w = adjunction_failure(*adj);
      simplicial::AxiomReport r;
      r.subject = in.name;
      r.profile = "adjunction";
      r.items.push_back({"F left adjoint to G", w.empty(),
                         w.empty() ? std::nullopt
                                   : std::optional<groupoid::Witness>(
                                         groupoid::Witness{groupoid::Witness::Kind::MissingClass, w})});
      reports.push_back(std::move(r));
    }
    const auto B = bisimplicial_of(in, o.grade, std::max(o.n_max + 2, static_cast<int>(o.grade) + 3));
    const auto v = bicomodule::validate_configuration(*B, o.n_max);
    for (const auto& s : v.sections) reports.push_back(s);
  } else {
    const auto profile = o.profile.empty() ? std::string("all") : o.profile;
    std::vector<simplicial::Profile> profiles;
    bool culf = false;
    if (profile == "all")
      profiles = {simplicial::Profile::Identities, simplicial::Profile::Segal, simplicial::Profile::Decomposition,
                  simplicial::Profile::Complete};
    else if (profile == "culf")
      culf = true;
    else if (auto p = simplicial::parse_profile(profile))
      profiles = {*p};
    else
      throw InputError("unknown profile '" + profile +
                       "' (identities, segal, decomposition, complete, culf, bicomodule, all)");
    const int levels = o.n_max + 3;
    const TruncatedSimplicialGroupoid X =
        layered(in) ? layered_instance(in, o.grade, std::max(levels, static_cast<int>(o.grade) + 3))
                    : catposet::nerve(in.file->category, levels);
    for (auto p : profiles) reports.push_back(simplicial::check_axioms(X, p, o.n_max));
    if (culf) {
      const auto D = simplicial::decalage(X, simplicial::Side::Right);
      reports.push_back(simplicial::check_axioms(D.comodule, simplicial::Profile::Segal, o.n_max));
      auto r = simplicial::is_culf(*D.map, o.n_max);
      r.subject = "Dec_bottom(" + X.name() + ") -> " + X.name();
      reports.push_back(std::move(r));
    }
  }

  const bool passed = std::all_of(reports.begin(), reports.end(), [](const auto& r) { return r.passed(); });
  if (o.format == "json") {
    json arr = json::array();
    for (const auto& r : reports) arr.push_back(io::to_json(r));
    std::cout << json{{"input", in.name}, {"passed", passed}, {"reports", arr}}.dump(2) << "\n";
  } else if (o.format == "csv") {
    Table t{{"subject", "profile", "check", "passed", "witness"}, {}, {}, passed};
    for (const auto& r : reports)
      for (const auto& it : r.items)
        t.rows.push_back({r.subject, r.profile, it.name, it.passed ? "true" : "false",
                          it.witness ? it.witness->description : ""});
    print(t, "csv");
  } else {
    for (const auto& r : reports) print_report(r, true);
    std::cout << (passed ? "PASS" : "FAIL") << "\n";
  }
  return passed ? kPass : kFail;
}

// ---------------------------------------------------------------------------
// mobius

struct MobiusOptions {
  std::string input;
  std::optional<int> n;
  std::vector<std::string> interval;
  std::string at;
  std::uint32_t bound = 4;
  std::string route = "direct";
  std::string format = "text";
};

std::string str(const Rational& q) { return moebius::to_string(q); }

int cmd_mobius(const MobiusOptions& o) {
  const Input in = load(o.input);
  Table t;
  if (layered(in)) {
    const bool posets = in.builtin == "layered-posets";
    if (o.route != "direct" && o.route != "rota") throw InputError("--route is direct or rota");
    if (o.route == "rota" && !posets) throw InputError("the rota route applies to builtin:posets");
    const int lo = o.n ? *o.n : 0, hi = o.n ? *o.n : static_cast<int>(o.bound);
    if (lo < 0 || hi > examples::kMaxElements)
      throw InputError("sizes are limited to 0.." + std::to_string(examples::kMaxElements));
    std::optional<examples::SetsPosets> sp;
    if (o.route == "rota") sp = examples::sets_posets_bicomodule(static_cast<std::uint32_t>(std::max(hi, 1)));
    t.columns = {posets ? "poset" : "set", "size", "mu"};
    for (int n = lo; n <= hi; ++n) {
      if (!posets) {
        const auto I = examples::layered_sets(static_cast<std::uint32_t>(std::max(n, 1)));
        const auto& cls = I.level(1)->classes();
        for (ClassId c = 0; c < cls.size(); ++c) {
          const ObjectId f = cls.representative[c];
          if (*I.grade(f) != static_cast<std::uint32_t>(n)) continue;
          t.rows.push_back({I.level(1)->object_label(f), std::to_string(n), str(incidence::mobius(I, f))});
        }
        continue;
      }
      for (const auto& pc : examples::enumerate_posets(n)) {
        const Rational mu = sp ? examples::mu_posets(*sp, pc.poset, examples::MuRoute::Rota)
                               : examples::mu_posets(pc.poset, examples::MuRoute::Direct);
        t.rows.push_back({pc.canonical, std::to_string(n), str(mu)});
      }
    }
    print(t, o.format, {{"input", in.name}, {"route", o.route}});
    return kPass;
  }
  if (!in.file || !in.file->category || in.file->correspondence)
    throw InputError("mobius needs a poset or category file, or builtin:posets / builtin:sets");

  const auto& C = in.file->category;
  const auto cert = catposet::is_mobius_category(*C);
  if (!cert.ok) {
    std::cerr << "not of locally finite length: " << cert.witness << "\n";
    return kFail;
  }
  const auto N = catposet::nerve(C, std::max(cert.max_length, 1) + 1);
  const auto& L = *N.level(1);
  std::vector<ObjectId> edge_of(C->morphism_count());
  for (ObjectId e = 0; e < L.object_count(); ++e) edge_of[catposet::nerve_chain(N, 1, e).morphisms[0]] = e;
  std::vector<Index> edges;
  if (!o.interval.empty()) {
    if (!in.file->poset) throw InputError("--interval needs a poset file");
    const auto& P = *in.file->poset;
    const auto a = P.index(o.interval[0]), b = P.index(o.interval[1]);
    if (!a || !b) throw InputError("unknown element in --interval");
    if (!P.leq(*a, *b)) throw InputError("not an interval: " + o.interval[0] + " is not below " + o.interval[1]);
    edges.push_back(C->hom(*a, *b).front());
  } else if (!o.at.empty()) {
    const auto f = C->find_morphism(o.at);
    if (!f) throw InputError("unknown morphism '" + o.at + "'");
    edges.push_back(*f);
  } else {
    for (Index f = 0; f < C->morphism_count(); ++f) edges.push_back(f);
  }
  t.columns = {"morphism", "source", "target", "mu"};
  for (Index f : edges)
    t.rows.push_back({C->morphism(f).label, C->object_label(C->source(f)), C->object_label(C->target(f)),
                      str(incidence::mobius(N, edge_of[f]))});
  print(t, o.format, {{"input", in.name}});
  return kPass;
}

// ---------------------------------------------------------------------------
// rota

struct RotaOptions {
  std::string input;
  std::vector<std::string> at;
  std::uint32_t grade = 4;
  std::string format = "text";
};

int cmd_rota(const RotaOptions& o) {
  const Input in = load(o.input);
  Table t;
  if (auto adj = adjunction_of(in)) {
    if (const std::string w = adjunction_failure(*adj); !w.empty())
      throw InputError("not an adjunction: " + w);
    const auto& X = *adj->F.source;
    const auto& Y = *adj->F.target;
    std::vector<std::pair<Index, Index>> points;
    if (o.at.size() == 1) throw InputError("--at takes x y for an adjunction");
    if (!o.at.empty()) {
      const auto x = X.find_object(o.at[0]), y = Y.find_object(o.at[1]);
      if (!x || !y) throw InputError("unknown object in --at");
      points.emplace_back(*x, *y);
    } else {
      for (Index x = 0; x < X.object_count(); ++x)
        for (Index y = 0; y < Y.object_count(); ++y) points.emplace_back(x, y);
    }
    t.columns = {"x", "y", "lhs", "rhs", "equal"};
    for (auto [x, y] : points) {
      const auto s = catposet::rota_direct(*adj, x, y);
      t.passed = t.passed && s.lhs == s.rhs;
      t.rows.push_back({X.object_label(x), Y.object_label(y), str(s.lhs), str(s.rhs), s.lhs == s.rhs ? "yes" : "no"});
    }
    // the same values through the nerve of the mapping cylinder, one mixed arrow per point
    const auto cyl = catposet::mapping_cylinder(adj->F);
    const auto B = catposet::correspondence_bisimplicial(cyl.correspondence, 4);
    std::size_t agreed = 0, total = 0;
    for (ObjectId m = 0; m < B->level(0, 0)->object_count(); ++m) {
      const auto v = catposet::correspondence_chain(*B, 0, 0, m);
      const auto x = static_cast<Index>(
          std::find(cyl.source_object.begin(), cyl.source_object.end(), v.objects[0]) - cyl.source_object.begin());
      const auto y = static_cast<Index>(
          std::find(cyl.target_object.begin(), cyl.target_object.end(), v.objects[1]) - cyl.target_object.begin());
      const auto a = bicomodule::rota_evaluate(*B, m);
      const auto d = catposet::rota_direct(*adj, x, y);
      ++total;
      agreed += a.lhs == d.lhs && a.rhs == d.rhs && a.lhs == a.rhs;
    }
    t.passed = t.passed && agreed == total;
    t.notes.push_back("cylinder nerve agrees on " + std::to_string(agreed) + "/" + std::to_string(total) +
                      " mixed arrows");
    t.notes.push_back(t.passed ? "EQUAL" : "NOT EQUAL");
    print(t, o.format, {{"input", in.name}, {"nerve_agreement", std::to_string(agreed) + "/" + std::to_string(total)}});
    return t.passed ? kPass : kFail;
  }

  const auto B = bisimplicial_of(in, o.grade, static_cast<int>(o.grade) + 3);
  if (!B) throw InputError("rota needs an adjunction, a correspondence or builtin:sets-posets");
  if (in.file && in.file->correspondence) {
    const auto v = bicomodule::validate_configuration(*B, 2);
    if (const auto* f = v.first_failure())
      throw InputError("correspondence nerve is not a bicomodule configuration: " + f->name +
                       (f->witness ? ": " + f->witness->description : ""));
  }
  const auto& L = *B->level(0, 0);
  const auto& cls = L.classes();
  struct Row {
    std::string key;
    ObjectId m;
  };
  std::vector<Row> sorted;
  const bool sets_posets = in.builtin == "sets-posets";
  for (ClassId c = 0; c < cls.size(); ++c) {
    const ObjectId m = cls.representative[c];
    if (B->graded())
      if (auto g = B->grade(m); g && *g > o.grade) continue;
    std::string key = L.object_label(m);
    if (sets_posets) {
      const auto P = examples::decode(*B, 0, 0, m).poset;
      key = examples::canonical_form(P);
    }
    if (!o.at.empty() && key != o.at.front() && L.object_label(m) != o.at.front()) continue;
    sorted.push_back({key, m});
  }
  std::sort(sorted.begin(), sorted.end(), [](const Row& a, const Row& b) {
    return a.key.size() != b.key.size() ? a.key.size() < b.key.size() : a.key < b.key;
  });
  t.columns = {"class", "lhs", "rhs", "equal"};
  for (const auto& r : sorted) {
    const auto s = bicomodule::rota_evaluate(*B, r.m);
    t.passed = t.passed && s.lhs == s.rhs;
    t.rows.push_back({r.key, str(s.lhs), str(s.rhs), s.lhs == s.rhs ? "yes" : "no"});
  }
  t.notes.push_back(std::to_string(t.rows.size()) + " classes, " + (t.passed ? "EQUAL" : "NOT EQUAL"));
  print(t, o.format, {{"input", in.name}});
  return t.passed ? kPass : kFail;
}

// ---------------------------------------------------------------------------
// verify, catalog

int cmd_verify(const std::string& fault_name, const std::string& format) {
  const auto fault = examples::parse_fault(fault_name);
  if (!fault)
    throw InputError("unknown fault '" + fault_name +
                     "' (dropped-simplex, corrupted-phi, non-adjunction, unstable-bicomodule)");
  const auto r = examples::run_fault(*fault);
  if (format == "json") {
    std::cout << json{{"fault", fault_name}, {"check", r.check}, {"detected", r.detected}, {"witness", r.witness}}.dump(2)
              << "\n";
  } else {
    std::cout << fault_name << ": " << (r.detected ? "detected by " : "NOT detected by ") << r.check << "\n";
    if (r.detected) std::cout << "  witness: " << r.witness << "\n";
  }
  return r.detected ? kFail : kPass;
}

int cmd_catalog(int n, const std::string& format) {
  if (n < 0 || n > examples::kMaxElements)
    throw InputError("sizes are limited to 0.." + std::to_string(examples::kMaxElements));
  const auto classes = examples::enumerate_posets(n);
  if (format == "json") {
    json arr = json::array();
    for (const auto& pc : classes) {
      json j = io::poset_to_json(pc.poset);
      j["canonical"] = pc.canonical;
      j["automorphisms"] = pc.aut_order;
      arr.push_back(std::move(j));
    }
    std::cout << arr.dump(2) << "\n";
    return kPass;
  }
  Table t{{"canonical", "automorphisms"}, {}, {}, true};
  for (const auto& pc : classes) t.rows.push_back({pc.canonical, std::to_string(pc.aut_order)});
  t.notes.push_back(std::to_string(classes.size()) + " classes");
  print(t, format);
  return kPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Incidence algebras, Mobius functions and Rota formulas of finite decomposition spaces"};
  app.require_subcommand(1);
  const std::vector<std::string> formats = {"text", "csv", "json"};
  const std::string input_help = "instance file (JSON) or builtin:NAME";

  CheckOptions check;
  auto* c = app.add_subcommand("check", "run axiom checks and print every square");
  c->add_option("input", check.input, input_help)->required();
  c->add_option("--profile", check.profile,
                "identities, segal, decomposition, complete, culf, all (simplicial inputs) or bicomodule");
  c->add_option("--max-level", check.n_max, "n_max for the checks")->check(CLI::Range(1, 8));
  c->add_option("--grade", check.grade, "grade bound for builtin instances")->check(CLI::Range(0, 6));
  c->add_option("--format", check.format)->check(CLI::IsMember(formats));

  MobiusOptions mob;
  auto* m = app.add_subcommand("mobius", "tabulate the Mobius function");
  m->add_option("input", mob.input, input_help)->required();
  m->add_option("--n", mob.n, "only classes of this size (builtins)");
  m->add_option("--interval", mob.interval, "poset interval [a, b]")->expected(2);
  m->add_option("--at", mob.at, "a single morphism of a category file");
  m->add_option("--bound", mob.bound, "largest size listed (builtins)")->check(CLI::Range(0, 6));
  m->add_option("--route", mob.route, "direct or rota (builtin:posets)");
  m->add_option("--format", mob.format)->check(CLI::IsMember(formats));

  RotaOptions rota;
  auto* r = app.add_subcommand("rota", "compare both sides of the Rota formula");
  r->add_option("input", rota.input, input_help)->required();
  r->add_option("--at", rota.at, "x y for an adjunction, or a class for a bicomodule")->expected(1, 2);
  r->add_option("--grade,--bound", rota.grade, "grade bound (sets-posets)")->check(CLI::Range(0, 6));
  r->add_option("--format", rota.format)->check(CLI::IsMember(formats));

  std::string fault, verify_format = "text";
  auto* v = app.add_subcommand("verify", "run a negative control; exits 1 when the fault is caught");
  v->add_option("--inject-fault", fault, "dropped-simplex, corrupted-phi, non-adjunction, unstable-bicomodule")
      ->required();
  v->add_option("--format", verify_format)->check(CLI::IsMember(formats));

  int catalog_n = 4;
  std::string catalog_format = "text";
  auto* cat = app.add_subcommand("catalog", "list poset iso classes of a given size");
  cat->add_option("--n", catalog_n, "number of elements")->required();
  cat->add_option("--format", catalog_format)->check(CLI::IsMember(formats));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kPass : kInputError;
  }

  try {
    if (*c) return cmd_check(check);
    if (*m) return cmd_mobius(mob);
    if (*r) return cmd_rota(rota);
    if (*v) return cmd_verify(fault, verify_format);
    if (*cat) return cmd_catalog(catalog_n, catalog_format);
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const StructuralError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const InsufficientLevels& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const CertificateError& e) {
    std::cerr << "not of locally finite length: " << e.what() << "\n";
    return kFail;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  }
  return kInputError;
}
