#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "qpal/formula.hpp"
#include "qpal/state_set.hpp"

namespace qpal {

/// Disjoint nonempty blocks over a set of states. States outside every block map to npos.
struct Partition {
  std::vector<StateSet> blocks;
  std::vector<std::size_t> block_of;

  std::size_t size() const { return blocks.size(); }
  const StateSet& block_containing(std::size_t state) const { return blocks[block_of[state]]; }

  /// Builds the index from a list of blocks over `universe` states.
  static Partition from_blocks(std::size_t universe, std::vector<StateSet> blocks);
  static Partition identity(std::size_t universe);

  friend bool operator==(const Partition&, const Partition&) = default;
};

/// Finite epistemic model. Every relation is an equivalence relation stored as a partition.
class Model {
 public:
  /// Blocks of labels.
  using BlockList = std::vector<std::vector<std::string>>;
  /// Pairs of labels. Reflexive pairs are implied; symmetry and transitivity are not.
  using EdgeList = std::vector<std::pair<std::string, std::string>>;
  using RelationSpec = std::variant<BlockList, EdgeList>;

  struct Spec {
    std::vector<std::string> states;
    std::vector<std::string> agents;
    /// Agents without an entry get the identity relation.
    std::map<std::string, RelationSpec> relations;
    std::map<std::string, std::vector<std::string>> valuation;
    /// Atoms declared in addition to the valuation keys.
    std::vector<std::string> extra_vocabulary;
  };

  /// Validates and builds. Throws ModelError.
  static Model build(const Spec& spec);

  std::size_t size() const { return labels_.size(); }
  StateSet all_states() const { return StateSet::full(size()); }
  StateSet empty_set() const { return StateSet(size()); }

  const std::vector<std::string>& labels() const { return labels_; }
  const std::string& label(std::size_t s) const { return labels_[s]; }
  std::optional<std::size_t> find_state(const std::string& label) const;
  /// Throws ModelError for an unknown label.
  std::size_t state(const std::string& label) const;

  const std::vector<AgentId>& agents() const { return agents_; }
  std::optional<std::size_t> agent_index(const AgentId& a) const;
  /// Throws EvalError for an agent the model does not declare.
  const Partition& relation(const AgentId& a) const;
  const Partition& relation(std::size_t agent_index) const { return relations_[agent_index]; }

  /// Extension of an atom; empty for undeclared atoms.
  StateSet valuation(const Atom& p) const;
  const std::map<Atom, StateSet>& valuations() const { return valuation_; }
  const AtomSet& vocabulary() const { return vocabulary_; }

  /// Label set rendered as {s0,t1}.
  std::string describe(const StateSet& s) const;

  friend bool operator==(const Model&, const Model&) = default;

 private:
  friend Model restrict(const Model&, const StateSet&);
  friend Model disjoint_union(const Model&, const Model&);
  friend Model quotient_model(const Model&, const Partition&);

  std::vector<std::string> labels_;
  std::vector<AgentId> agents_;
  std::vector<Partition> relations_;
  std::map<Atom, StateSet> valuation_;
  AtomSet vocabulary_;
};

struct PointedModel {
  Model model;
  std::size_t point = 0;

  PointedModel() = default;
  PointedModel(Model m, std::size_t p);
  PointedModel(Model m, const std::string& point_label);

  const std::string& point_label() const { return model.label(point); }
};

/// Submodel on `keep`, re-indexed in increasing original order with labels preserved.
/// Throws ModelError when `keep` is empty.
Model restrict(const Model& m, const StateSet& keep);

/// Map from original indices to indices in restrict(m, keep); npos for dropped states.
std::vector<std::size_t> restriction_index(const StateSet& keep);

/// States of `a` followed by states of `b`; labels are prefixed "1:" and "2:".
/// Throws ModelError when the agent lists differ as sets.
Model disjoint_union(const Model& a, const Model& b);

/// One state per block, labelled by the block's first member. Relations and valuation are
/// the images of the original ones; meaningful when `blocks` is a bisimulation.
Model quotient_model(const Model& m, const Partition& blocks);

/// The four-world model with agents a and b, pointed at s0.
PointedModel example1_model();

/// Finite prefix of the infinite root-and-stem model: s_0..s_N, t_0..t_2N, u_0..u_2N,
/// atoms x and p1..p{2N}, pointed at s_0. Throws ModelError for N == 0.
PointedModel truncation(std::size_t n);

/// The three-stem model drawn in the refutation figure, listed world by world.
PointedModel figure2_model();

}  // namespace qpal
