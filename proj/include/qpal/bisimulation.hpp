#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "qpal/formula.hpp"
#include "qpal/model.hpp"

namespace qpal {

inline constexpr std::size_t kDefaultBlockCap = 24;

/// Signature refinement from the Q-valuation partition. stages[k] is the coarsest
/// Q-k-bisimulation on the domain; the last stage is the coarsest Q-bisimulation.
/// Consecutive stages differ, so there are at most |domain| stages.
struct Refinement {
  std::vector<Partition> stages;

  const Partition& stable() const { return stages.back(); }
  /// Stage n, or the stable partition once refinement has stopped.
  const Partition& at(std::size_t n) const {
    return n < stages.size() ? stages[n] : stages.back();
  }
};

Refinement refine(const Model& m, const StateSet& domain, const AtomSet& q);

/// Coarsest Q-bisimulation on all of `m`.
Partition quotient(const Model& m, const AtomSet& q);
/// Coarsest bisimulation over the declared vocabulary.
Partition quotient(const Model& m);

/// Q-bisimilarity (depth == nullopt) or Q-n-bisimilarity, decided on the disjoint union.
/// Throws ModelError when the agent lists differ.
bool bisimilar(const PointedModel& left, const PointedModel& right, const AtomSet& q,
               std::optional<std::size_t> depth = std::nullopt);

/// True when `x` is a union of blocks of `p`.
bool is_block_closed(const Partition& p, const StateSet& x);

/// Every nonempty union of blocks, once each, in Gray-code order over block masks.
class ClosedSetEnumerator {
 public:
  /// Throws ResourceError when the partition has more than `cap` blocks.
  ClosedSetEnumerator(const Partition& blocks, std::size_t universe,
                      std::size_t cap = kDefaultBlockCap);

  /// Advances to the next set; false once every set has been produced.
  bool next();
  const StateSet& current() const { return current_; }
  std::uint64_t total() const { return (std::uint64_t{1} << blocks_->size()) - 1; }

 private:
  const Partition* blocks_;
  StateSet current_;
  std::uint64_t step_ = 0;
};

/// All nonempty closed sets of the quotient of `m` over `q`, in enumeration order.
std::vector<StateSet> closed_sets(const Model& m, const AtomSet& q,
                                  std::size_t cap = kDefaultBlockCap);

/// An epistemic formula over `q` whose extension in `m` is exactly `x`.
/// Built from per-block formulas refined once per refinement stage. Throws ModelError if `x`
/// is not a union of quotient(m, q) blocks.
Formula characteristic_formula(const Model& m, const StateSet& x, const AtomSet& q);

/// A kept set together with an epistemic formula defining it.
struct Certificate {
  StateSet kept;
  Formula defining_formula;
};

}  // namespace qpal
