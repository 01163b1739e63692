#include <algorithm>

#include "moebius/errors.hpp"
#include "moebius/parallel.hpp"
#include "moebius/simplicial.hpp"

namespace moebius::simplicial {

using groupoid::CheckResult;
using groupoid::Square;

std::string to_string(Profile p) {
  switch (p) {
    case Profile::Identities: return "identities";
    case Profile::Segal: return "segal";
    case Profile::Decomposition: return "decomposition";
    case Profile::Complete: return "complete";
  }
  return "unknown";
}

std::optional<Profile> parse_profile(const std::string& s) {
  for (Profile p : {Profile::Identities, Profile::Segal, Profile::Decomposition, Profile::Complete})
    if (to_string(p) == s) return p;
  return std::nullopt;
}

bool AxiomReport::passed() const { return first_failure() == nullptr; }

const CheckItem* AxiomReport::first_failure() const {
  for (const auto& item : items)
    if (!item.passed) return &item;
  return nullptr;
}

namespace {

std::string d(int i) { return "d_" + std::to_string(i); }
std::string s(int i) { return "s_" + std::to_string(i); }
std::string X(int n) { return "X_" + std::to_string(n); }

std::vector<CheckItem> run_squares(const std::vector<Square>& squares) {
  std::vector<CheckItem> items(squares.size());
  parallel_for(squares.size(), [&](std::size_t i) {
    const CheckResult r = groupoid::is_pullback_square(squares[i]);
    items[i] = CheckItem{squares[i].description, r.ok, r.witness};
  });
  return items;
}

bool is_identity(const groupoid::GroupoidFunctor& F) {
  if (F.source != F.target) return false;
  for (ObjectId x = 0; x < F.on_objects.size(); ++x)
    if (F.on_objects[x] != x) return false;
  for (MorphismId m = 0; m < F.on_morphisms.size(); ++m)
    if (F.on_morphisms[m] != m) return false;
  return true;
}

CheckItem equal_item(const std::string& name, const groupoid::GroupoidFunctor& a,
                     const groupoid::GroupoidFunctor& b) {
  CheckItem item{name, a.same_as(b), std::nullopt};
  if (!item.passed) {
    std::string where;
    for (ObjectId x = 0; x < a.on_objects.size() && where.empty(); ++x)
      if (a.on_objects[x] != b.on_objects[x]) where = "object " + a.source->object_label(x);
    if (where.empty()) where = "morphisms";
    item.witness = groupoid::Witness{groupoid::Witness::Kind::MissingClass,
                                     name + " fails at " + where};
  }
  return item;
}

std::vector<CheckItem> check_identities(const TruncatedSimplicialGroupoid& Xs, int top) {
  std::vector<CheckItem> items;
  using groupoid::compose;
  for (int n = 2; n <= top; ++n)
    for (int j = 1; j <= n; ++j)
      for (int i = 0; i < j; ++i)
        items.push_back(equal_item(d(i) + d(j) + " = " + d(j - 1) + d(i) + " on " + X(n),
                                   *compose(*Xs.face(n - 1, i), *Xs.face(n, j)),
                                   *compose(*Xs.face(n - 1, j - 1), *Xs.face(n, i))));
  for (int n = 0; n + 1 <= top; ++n)
    for (int j = 0; j <= n; ++j)
      for (int i = 0; i <= n + 1; ++i) {
        const auto lhs = compose(*Xs.face(n + 1, i), *Xs.degeneracy(n, j));
        const std::string name = d(i) + s(j) + " on " + X(n);
        if (i == j || i == j + 1) {
          CheckItem item{name + " = id", is_identity(*lhs), std::nullopt};
          if (!item.passed)
            item.witness = groupoid::Witness{groupoid::Witness::Kind::MissingClass,
                                             name + " is not the identity"};
          items.push_back(item);
        } else if (i < j) {
          items.push_back(equal_item(name + " = " + s(j - 1) + d(i), *lhs,
                                     *compose(*Xs.degeneracy(n - 1, j - 1), *Xs.face(n, i))));
        } else {
          items.push_back(equal_item(name + " = " + s(j) + d(i - 1), *lhs,
                                     *compose(*Xs.degeneracy(n - 1, j), *Xs.face(n, i - 1))));
        }
      }
  for (int n = 0; n + 2 <= top; ++n)
    for (int j = 0; j <= n; ++j)
      for (int i = 0; i <= j; ++i)
        items.push_back(equal_item(s(i) + s(j) + " = " + s(j + 1) + s(i) + " on " + X(n),
                                   *compose(*Xs.degeneracy(n + 1, i), *Xs.degeneracy(n, j)),
                                   *compose(*Xs.degeneracy(n + 1, j + 1), *Xs.degeneracy(n, i))));
  return items;
}

}  // namespace

void truncate_square(Square& sq, const TruncatedSimplicialGroupoid& XA, int na, const TruncatedSimplicialGroupoid& XB,
                     int nb, const TruncatedSimplicialGroupoid& XC, int nc) {
  const auto ta = XA.truncation_grade(), tb = XB.truncation_grade(), tc = XC.truncation_grade();
  if (!ta || !tb || !tc) return;
  sq.truncation = groupoid::Truncation{std::min({*ta, *tb, *tc}),
                                       [XA, na](ObjectId x) { return XA.simplex_grade(na, x); },
                                       [XB, nb](ObjectId x) { return XB.simplex_grade(nb, x); },
                                       [XC, nc](ObjectId x) { return XC.simplex_grade(nc, x); }};
}

Square segal_square(const TruncatedSimplicialGroupoid& Xs, int n) {
  Square sq{Xs.face(n + 1, 0), Xs.face(n + 1, n + 1), Xs.face(n, n), Xs.face(n, 0),
            "segal n=" + std::to_string(n) + ": " + X(n + 1) + " -> " + X(n) + " x_" + X(n - 1) + " " + X(n)};
  truncate_square(sq, Xs, n, Xs, n, Xs, n - 1);
  return sq;
}

std::vector<Square> decomposition_squares(const TruncatedSimplicialGroupoid& Xs, int n, int k) {
  std::vector<Square> out;
  const std::string tag = " (n=" + std::to_string(n) + ", k=" + std::to_string(k) + ")";
  const bool faces = n + 3 <= Xs.max_level();
  auto add = [&](Square sq, int nb) {
    truncate_square(sq, Xs, n + 2, Xs, nb, Xs, n + 1);
    out.push_back(std::move(sq));
  };
  add(Square{Xs.degeneracy(n + 1, k + 1), Xs.face(n + 1, 0), Xs.face(n + 2, 0), Xs.degeneracy(n, k),
             s(k + 1) + " along d_bottom" + tag},
      n);
  if (faces)
    add(Square{Xs.face(n + 3, k + 2), Xs.face(n + 3, 0), Xs.face(n + 2, 0), Xs.face(n + 2, k + 1),
               d(k + 2) + " along d_bottom" + tag},
        n + 2);
  add(Square{Xs.degeneracy(n + 1, k), Xs.face(n + 1, n + 1), Xs.face(n + 2, n + 2), Xs.degeneracy(n, k),
             s(k) + " along d_top" + tag},
      n);
  if (faces)
    add(Square{Xs.face(n + 3, k + 1), Xs.face(n + 3, n + 3), Xs.face(n + 2, n + 2), Xs.face(n + 2, k + 1),
               d(k + 1) + " along d_top" + tag},
        n + 2);
  return out;
}

AxiomReport check_axioms(const TruncatedSimplicialGroupoid& Xs, Profile profile, int n_max) {
  if (n_max < 1) throw DomainError("n_max must be at least 1");
  AxiomReport report;
  report.subject = Xs.name();
  report.profile = to_string(profile);
  report.n_max = n_max;
  switch (profile) {
    case Profile::Identities: {
      report.top_level = n_max + 1;
      Xs.require_level(report.top_level);
      report.items = check_identities(Xs, report.top_level);
      break;
    }
    case Profile::Segal: {
      report.top_level = n_max + 1;
      Xs.require_level(report.top_level);
      std::vector<Square> squares;
      for (int n = 1; n <= n_max; ++n) squares.push_back(segal_square(Xs, n));
      report.items = run_squares(squares);
      break;
    }
    case Profile::Decomposition: {
      report.top_level = n_max + 2;
      Xs.require_level(report.top_level);
      std::vector<Square> squares;
      for (int n = 0; n <= n_max; ++n)
        for (int k = 0; k <= n; ++k)
          for (auto& sq : decomposition_squares(Xs, n, k)) squares.push_back(std::move(sq));
      report.items = run_squares(squares);
      break;
    }
    case Profile::Complete: {
      report.top_level = 1;
      Xs.require_level(1);
      const CheckResult r = groupoid::is_monomorphism(*Xs.degeneracy(0, 0));
      report.items.push_back(CheckItem{"s_0 : X_0 -> X_1 is a monomorphism", r.ok, r.witness});
      break;
    }
  }
  return report;
}

AxiomReport is_culf(const SimplicialMap& f, int n_max) {
  const auto& Xs = f.source();
  const auto& Ys = f.target();
  AxiomReport report;
  report.subject = f.name();
  report.profile = "culf";
  report.n_max = n_max;
  report.top_level = n_max + 1;
  Xs.require_level(n_max + 1);
  Ys.require_level(n_max + 1);
  std::vector<Square> squares;
  for (int n = 0; n <= n_max; ++n)
    for (int i = 0; i <= n; ++i) {
      Square sq{Xs.degeneracy(n, i), f.at(n), f.at(n + 1), Ys.degeneracy(n, i),
                "conservative at " + s(i) + " on level " + std::to_string(n)};
      truncate_square(sq, Xs, n + 1, Ys, n, Ys, n + 1);
      squares.push_back(std::move(sq));
    }
  for (int n = 0; n + 2 <= n_max + 1; ++n)
    for (int i = 0; i <= n; ++i) {
      Square sq{Xs.face(n + 2, i + 1), f.at(n + 2), f.at(n + 1), Ys.face(n + 2, i + 1),
                "ulf at " + d(i + 1) + " on level " + std::to_string(n + 2)};
      truncate_square(sq, Xs, n + 1, Ys, n + 2, Ys, n + 1);
      squares.push_back(std::move(sq));
    }
  report.items = run_squares(squares);
  return report;
}

CheckResult cartesian_on_face(const SimplicialMap& f, int n, int i) {
  const auto& Xs = f.source();
  const auto& Ys = f.target();
  Square sq{Xs.face(n + 1, i), f.at(n + 1), f.at(n), Ys.face(n + 1, i), d(i) + " on level " + std::to_string(n + 1)};
  truncate_square(sq, Xs, n, Ys, n + 1, Ys, n);
  return groupoid::is_pullback_square(sq);
}

}  // namespace moebius::simplicial
