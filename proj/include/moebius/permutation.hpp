#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace moebius {

// A finite group given by its multiplication table. Element 0 is the unit.
struct FiniteGroup {
  std::uint32_t order = 1;
  std::vector<std::uint32_t> table;    // table[a * order + b] = a * b
  std::vector<std::uint32_t> inverses;

  std::uint32_t multiply(std::uint32_t a, std::uint32_t b) const { return table[a * order + b]; }
  std::uint32_t inverse(std::uint32_t a) const { return inverses[a]; }

  static FiniteGroup trivial();
  static FiniteGroup cyclic(std::uint32_t n);
  // Checks closure, associativity, unit and inverses; throws StructuralError.
  void validate() const;
};

using Perm = std::vector<std::uint8_t>;  // perm[i] is the image of i

// Symmetric group S_k, elements ranked lexicographically (rank 0 = identity).
// Products are composites: multiply(a, b) applies b first.
class SymmetricGroup {
 public:
  static constexpr int kMaxDegree = 6;
  static const SymmetricGroup& of(int k);

  int degree() const { return degree_; }
  std::uint32_t order() const { return group_.order; }
  const Perm& element(std::uint32_t idx) const { return elements_[idx]; }
  std::uint32_t rank(const Perm& p) const;
  const FiniteGroup& group() const { return group_; }

 private:
  explicit SymmetricGroup(int k);
  int degree_;
  std::vector<Perm> elements_;
  FiniteGroup group_;
};

std::string perm_to_string(const Perm& p);

}  // namespace moebius
