#pragma once

// Labelled posets on at most six elements with a layering, packed into one
// word: element count (3 bits), strict relation (bit 6a+b means a < b, 36
// bits) and four bits of layer index per element.

#include <array>
#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <unordered_map>
#include <vector>

#include "moebius/groupoid.hpp"
#include "moebius/examples.hpp"
#include "moebius/simplicial.hpp"

namespace moebius::examples::detail {

constexpr int kMaxElements = 6;
using Key = std::uint64_t;

struct Structure {
  int k = 0;
  std::uint64_t rel = 0;
  std::array<std::uint8_t, kMaxElements> layer{};
};

inline bool below(std::uint64_t rel, int a, int b) { return (rel >> (a * kMaxElements + b)) & 1u; }
inline std::uint64_t relation_bit(int a, int b) { return std::uint64_t{1} << (a * kMaxElements + b); }

Key pack(const Structure& s);
Structure unpack(Key key);

// All transitively closed strict orders on {0..k-1}, k <= 6.
const std::vector<std::uint64_t>& labelled_posets(int k);
// Orders whose labelling is a linear extension (one per labelled shape up to
// relabelling, several per iso class).
const std::vector<std::uint64_t>& naturally_labelled_posets(int k);
// Relation of the relabelled poset: p(a) < p(b) iff a < b.
std::uint64_t permute_relation(std::uint64_t rel, int k, const Perm& p);

// A level: `layers` layers of which the first `antichain` hold pairwise
// incomparable elements.
struct Shape {
  int layers;
  int antichain;
  auto operator<=>(const Shape&) const = default;
};

struct LayeredLevel {
  Shape shape;
  groupoid::GroupoidPtr groupoid;
  std::vector<Key> keys;
  std::unordered_map<Key, groupoid::ObjectId> index;
};

// Result of an elementary operation: the new structure and, per old element,
// its new index (or -1 when deleted).
struct Moved {
  Structure s;
  std::array<int, kMaxElements> to{};
};

class LayeredFamily {
 public:
  explicit LayeredFamily(std::uint32_t grade_bound) : grade_bound_(grade_bound) {}
  std::uint32_t grade_bound() const { return grade_bound_; }

  const LayeredLevel& level(Shape s) const;
  groupoid::FunctorPtr delete_layer(Shape from, int p, Shape to) const;
  // joins layers p and p + 1
  groupoid::FunctorPtr join_layers(Shape from, int p, Shape to) const;
  groupoid::FunctorPtr insert_layer(Shape from, int p, Shape to) const;

  std::string label(const Structure& s, Shape shape) const;

 private:
  groupoid::FunctorPtr transport(Shape from, Shape to, const std::function<Moved(const Structure&)>& op) const;
  std::uint32_t grade_bound_;
  mutable std::mutex mutex_;
  mutable std::map<Shape, std::unique_ptr<LayeredLevel>> levels_;
};

// Counting helpers on a fixed structure, ignoring its own layering.
// Monotone n-layerings of the poset with every layer nonempty.
std::uint64_t surjective_layerings(int k, std::uint64_t rel, int n);
// Restriction of the poset to the elements picked by mask, as a 1-layered structure.
Structure restrict_to(int k, std::uint64_t rel, std::uint32_t mask);

// Layered sets (antichain = layers) or layered posets (antichain = 0) over a shared family.
simplicial::TruncatedSimplicialGroupoid make_layered(std::shared_ptr<const LayeredFamily> family, bool sets,
                                                     int max_level);
// The family and shape behind level n of a layered instance; throws DomainError otherwise.
std::pair<const LayeredFamily*, Shape> layered_level(const simplicial::TruncatedSimplicialGroupoid& X, int n);

LayeredPoset to_layered(const Structure& s, int layers);
// nullopt when P is too large or a layer index is out of range
std::optional<Structure> from_layered(const FinPoset& P, const std::vector<int>& layer, int layers);

}  // namespace moebius::examples::detail
