#include <array>
#include <random>

#include "moebius/bicomodule.hpp"
#include "moebius/errors.hpp"
#include "moebius/parallel.hpp"

namespace moebius::bicomodule {

using groupoid::CheckResult;
using groupoid::Square;
using simplicial::AxiomReport;
using simplicial::CheckItem;

bool ValidationReport::passed() const { return first_failure() == nullptr; }

const CheckItem* ValidationReport::first_failure() const {
  for (const auto& s : sections)
    if (auto* f = s.first_failure()) return f;
  return nullptr;
}

namespace {

std::string B(int i, int j) { return "B_{" + std::to_string(i) + "," + std::to_string(j) + "}"; }

AxiomReport square_report(const std::string& subject, const std::string& profile, const std::vector<Square>& squares) {
  AxiomReport r;
  r.subject = subject;
  r.profile = profile;
  r.items.resize(squares.size());
  parallel_for(squares.size(), [&](std::size_t k) {
    const CheckResult c = groupoid::is_pullback_square(squares[k]);
    r.items[k] = CheckItem{squares[k].description, c.ok, c.witness};
  });
  return r;
}

// Corners A = B_{ia,ja}, B = B_{ib,jb}, C = B_{ic,jc}.
void truncate(Square& sq, const AugmentedBisimplicialGroupoid& Bs, std::array<int, 6> corners) {
  const auto bound = Bs.generator().truncation_grade();
  if (!bound) return;
  const BisimplicialGenerator* gen = &Bs.generator();
  auto grade = [gen](int i, int j) {
    return [gen, i, j](ObjectId x) { return gen->simplex_grade(i, j, x); };
  };
  sq.truncation = groupoid::Truncation{*bound, grade(corners[0], corners[1]), grade(corners[2], corners[3]),
                                       grade(corners[4], corners[5])};
}

AxiomReport stability(const AugmentedBisimplicialGroupoid& Bs, bool full) {
  std::vector<Square> squares;
  auto face_square = [&](int i, int j, int k, int l) {
    squares.push_back(Square{Bs.d(i, j, k), Bs.e(i, j, l), Bs.e(i, j - 1, l), Bs.d(i - 1, j, k),
                             "d_" + std::to_string(k) + " along e_" + std::to_string(l) + " on " + B(i, j)});
    truncate(squares.back(), Bs, {i, j - 1, i - 1, j, i - 1, j - 1});
  };
  if (!full) {
    face_square(1, 1, 0, 0);
    face_square(1, 1, 1, 1);
  } else {
    const int I = std::min(2, Bs.max_i()), J = std::min(2, Bs.max_j());
    for (int i = 1; i <= I; ++i)
      for (int j = 1; j <= J; ++j) {
        for (int k = 0; k <= j; ++k)
          for (int l = 0; l <= i; ++l) {
            if ((k == 0 && l == i) || (k == j && l == 0)) continue;
            face_square(i, j, k, l);
          }
        for (int k = 0; k < j; ++k)
          for (int l = 0; l <= i; ++l)
            squares.push_back(Square{Bs.s(i, j - 1, k), Bs.e(i, j - 1, l), Bs.e(i, j, l), Bs.s(i - 1, j - 1, k),
                                     "s_" + std::to_string(k) + " along e_" + std::to_string(l) + " into " + B(i, j)});
            truncate(squares.back(), Bs, {i, j, i - 1, j - 1, i - 1, j});
        for (int k = 0; k <= j; ++k)
          for (int l = 0; l < i; ++l)
            squares.push_back(Square{Bs.t(i - 1, j, l), Bs.d(i - 1, j, k), Bs.d(i, j, k), Bs.t(i - 1, j - 1, l),
                                     "t_" + std::to_string(l) + " along d_" + std::to_string(k) + " into " + B(i, j)});
            truncate(squares.back(), Bs, {i, j, i - 1, j - 1, i, j - 1});
        for (int k = 0; k < j; ++k)
          for (int l = 0; l < i; ++l)
            squares.push_back(Square{Bs.s(i - 1, j - 1, k), Bs.t(i - 1, j - 1, l), Bs.t(i - 1, j, l), Bs.s(i, j - 1, k),
                                     "s_" + std::to_string(k) + " along t_" + std::to_string(l) + " into " + B(i, j)});
            truncate(squares.back(), Bs, {i - 1, j, i, j - 1, i, j});
      }
  }
  return square_report(Bs.name(), full ? "stability (full family)" : "stability", squares);
}

AxiomReport completeness(const std::string& what, const FunctorPtr& P) {
  AxiomReport r;
  r.subject = what;
  r.profile = "complete";
  const CheckResult c = groupoid::is_monomorphism(*P);
  r.items.push_back(CheckItem{what + " is a monomorphism", c.ok, c.witness});
  return r;
}

}  // namespace

ValidationReport validate_configuration(const AugmentedBisimplicialGroupoid& Bs, int n_max, bool full_stability) {
  if (Bs.max_i() < 2 || Bs.max_j() < 2) throw InsufficientLevels(2, std::min(Bs.max_i(), Bs.max_j()));
  ValidationReport r;
  using simplicial::Profile;
  for (int i = 0; i <= 1; ++i) {
    auto rep = simplicial::check_axioms(Bs.row(i), Profile::Segal, n_max);
    rep.subject = "row " + std::to_string(i);
    r.sections.push_back(std::move(rep));
  }
  for (int j = 0; j <= 1; ++j) {
    auto rep = simplicial::check_axioms(Bs.column(j), Profile::Segal, n_max);
    rep.subject = "column " + std::to_string(j);
    r.sections.push_back(std::move(rep));
  }
  r.sections.push_back(stability(Bs, full_stability));
  const auto right = Bs.right_comodule();
  const auto left = Bs.left_comodule();
  auto u = simplicial::is_culf(*left.map, n_max);
  u.subject = "u : B_{.,0} -> X";
  r.sections.push_back(std::move(u));
  auto v = simplicial::is_culf(*right.map, n_max);
  v.subject = "v : B_{0,.} -> Y";
  r.sections.push_back(std::move(v));
  auto X = simplicial::check_axioms(Bs.X(), Profile::Decomposition, n_max);
  X.subject = "X";
  r.sections.push_back(std::move(X));
  auto Y = simplicial::check_axioms(Bs.Y(), Profile::Decomposition, n_max);
  Y.subject = "Y";
  r.sections.push_back(std::move(Y));
  if (auto P = Bs.right_pointing(0, 0)) r.sections.push_back(completeness("s_{-1} : B_{0,-1} -> B_{0,0}", P));
  if (auto P = Bs.left_pointing(0, 0)) r.sections.push_back(completeness("t_{top+1} : B_{-1,0} -> B_{0,0}", P));
  return r;
}

std::vector<TensorTerm> coact(const AugmentedBisimplicialGroupoid& Bs, Side side, ObjectId m) {
  return coact(side == Side::Right ? Bs.right_comodule() : Bs.left_comodule(), m);
}

Rational convolve_action(const AugmentedBisimplicialGroupoid& Bs, Side side, const Functional& outer,
                         const Functional& inner, ObjectId m) {
  return convolve_action(side == Side::Right ? Bs.right_comodule() : Bs.left_comodule(), outer, inner, m);
}

Functional pointing_delta(const AugmentedBisimplicialGroupoid& Bs, Side side) {
  return pointing_delta(side == Side::Right ? Bs.right_comodule() : Bs.left_comodule());
}

namespace {

Functional random_functional(const GroupoidPtr& G, std::mt19937& rng, const std::string& name) {
  std::uniform_int_distribution<int> num(-6, 6), den(1, 4);
  std::map<ClassId, Rational> table;
  for (ClassId c = 0; c < G->classes().size(); ++c) table[c] = rational(num(rng), den(rng));
  return Functional::from_table(G, table, name);
}

}  // namespace

AssociativityReport check_associativity(const AugmentedBisimplicialGroupoid& Bs, int trials, std::uint32_t seed,
                                        std::optional<std::uint32_t> grade_bound) {
  const auto right = Bs.right_comodule();
  const auto left = Bs.left_comodule();
  const auto B00 = Bs.level(0, 0);
  const auto& c00 = B00->classes();
  std::vector<ClassId> sample;
  for (ClassId k = 0; k < c00.size(); ++k) {
    if (grade_bound && Bs.graded()) {
      auto g = Bs.grade(c00.representative[k]);
      if (g && *g > *grade_bound) continue;
    }
    sample.push_back(k);
  }
  std::mt19937 rng(seed);
  AssociativityReport r;
  r.trials = trials;
  for (int trial = 0; trial < trials; ++trial) {
    const Functional alpha = random_functional(Bs.X().level(1), rng, "alpha");
    const Functional theta = random_functional(B00, rng, "theta");
    const Functional beta = random_functional(Bs.Y().level(1), rng, "beta");
    const Functional theta_beta(B00, [&](ClassId k) { return convolve_action(right, beta, theta, c00.representative[k]); });
    const Functional alpha_theta(B00, [&](ClassId k) { return convolve_action(left, alpha, theta, c00.representative[k]); });
    for (ClassId k : sample) {
      ++r.evaluations;
      const ObjectId m = c00.representative[k];
      const Rational lhs = convolve_action(left, alpha, theta_beta, m);
      const Rational rhs = convolve_action(right, beta, alpha_theta, m);
      if (lhs != rhs) r.failures.push_back({trial, k, B00->object_label(m), lhs, rhs});
    }
  }
  return r;
}

RotaValues rota_evaluate(const AugmentedBisimplicialGroupoid& Bs, ObjectId m) {
  const auto right = Bs.right_comodule();
  const auto left = Bs.left_comodule();
  const Functional mu_x = incidence::mobius_functional(Bs.X());
  const Functional mu_y = incidence::mobius_functional(Bs.Y());
  const Functional delta_r = pointing_delta(right);
  const Functional delta_l = pointing_delta(left);
  return {convolve_action(left, mu_x, delta_r, m), convolve_action(right, mu_y, delta_l, m)};
}

}  // namespace moebius::bicomodule
