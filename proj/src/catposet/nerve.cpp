#include <map>
#include <mutex>

#include "chains.hpp"
#include "moebius/catposet.hpp"
#include "moebius/errors.hpp"

namespace moebius::catposet {

namespace {

class NerveGenerator : public simplicial::LevelGenerator {
 public:
  NerveGenerator(CategoryPtr C, int max_level) : C_(std::move(C)), max_level_(max_level) {
    heights_ = object_heights(*C_);
    const auto report = is_mobius_category(*C_);
    if (report.ok) bound_ = report.max_length;
  }

  std::string name() const override { return "N(" + C_->name() + ")"; }
  int max_level() const override { return max_level_; }
  groupoid::GroupoidPtr level(const simplicial::TruncatedSimplicialGroupoid&, int n) const override {
    return chain_level(n).groupoid;
  }
  groupoid::FunctorPtr face(const simplicial::TruncatedSimplicialGroupoid&, int n, int i) const override {
    return chains::chain_functor(chain_level(n), chain_level(n - 1),
                                 [&](const chains::Chain& c) { return chains::delete_vertex(*C_, c, i); });
  }
  groupoid::FunctorPtr degeneracy(const simplicial::TruncatedSimplicialGroupoid&, int n, int i) const override {
    return chains::chain_functor(chain_level(n), chain_level(n + 1),
                                 [&](const chains::Chain& c) { return chains::insert_identity(*C_, c, i); });
  }
  bool graded() const override { return heights_.has_value(); }
  std::optional<std::uint32_t> grade(const simplicial::TruncatedSimplicialGroupoid&,
                                     groupoid::ObjectId edge) const override {
    if (!heights_) return std::nullopt;
    const auto& c = chain_level(1).chains[edge];
    return (*heights_)[C_->target(c[1])] - (*heights_)[C_->source(c[1])];
  }
  std::optional<int> length_bound() const override { return bound_; }

  const chains::ChainLevel& chain_level(int n) const {
    std::lock_guard<std::mutex> lock(mutex_);
    auto it = levels_.find(n);
    if (it != levels_.end()) return it->second;
    auto chains = chains::enumerate(*C_, static_cast<std::size_t>(n), [](std::size_t, Index) { return true; });
    return levels_.emplace(n, chains::make_level(*C_, std::move(chains), name() + "_" + std::to_string(n)))
        .first->second;
  }

  const FinCategory& category() const { return *C_; }

 private:
  CategoryPtr C_;
  int max_level_;
  std::optional<std::vector<std::uint32_t>> heights_;
  std::optional<int> bound_;
  mutable std::mutex mutex_;
  mutable std::map<int, chains::ChainLevel> levels_;
};

}  // namespace

simplicial::TruncatedSimplicialGroupoid nerve(const CategoryPtr& C, int max_level) {
  if (max_level < 1) throw DomainError("nerve needs max_level >= 1");
  return simplicial::TruncatedSimplicialGroupoid(std::make_shared<NerveGenerator>(C, max_level));
}

ChainView nerve_chain(const simplicial::TruncatedSimplicialGroupoid& N, int n, groupoid::ObjectId sigma) {
  const auto* gen = dynamic_cast<const NerveGenerator*>(&N.generator());
  if (!gen) throw DomainError(N.name() + " is not a category nerve");
  const auto& c = gen->chain_level(n).chains.at(sigma);
  ChainView v;
  for (std::size_t k = 0; k < c.size(); ++k) v.objects.push_back(chains::vertex(gen->category(), c, k));
  v.morphisms.assign(c.begin() + 1, c.end());
  return v;
}

}  // namespace moebius::catposet
