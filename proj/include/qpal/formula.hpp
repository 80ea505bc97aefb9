#pragma once

#include <compare>
#include <cstddef>
#include <memory>
#include <set>
#include <string>
#include <vector>

namespace qpal {

/// Agent name. Lowercase-initial identifier, compared by value.
class AgentId {
 public:
  AgentId() = default;
  explicit AgentId(std::string name);
  const std::string& name() const { return name_; }
  friend auto operator<=>(const AgentId&, const AgentId&) = default;
  friend bool operator==(const AgentId&, const AgentId&) = default;

 private:
  std::string name_;
};

/// Propositional variable name.
class Atom {
 public:
  Atom() = default;
  explicit Atom(std::string name);
  const std::string& name() const { return name_; }
  friend auto operator<=>(const Atom&, const Atom&) = default;
  friend bool operator==(const Atom&, const Atom&) = default;

 private:
  std::string name_;
};

using AgentGroup = std::set<AgentId>;
using AtomSet = std::set<Atom>;

bool is_identifier(const std::string& s);
bool is_reserved_word(const std::string& s);

enum class Op {
  Atom,
  Top,
  Bot,
  Not,
  And,
  Or,
  Imp,
  Know,
  Announce,
  ArbBox,
  GroupBox,
  CoalBox,
  // Derived constructors; expand_duals rewrites them into the primitives above.
  MaybeKnow,
  DiaAnnounce,
  ArbDia,
  GroupDia,
  CoalDia,
};

bool is_quantifier(Op op);
bool is_derived(Op op);

/// Immutable formula tree. Copies share structure.
class Formula {
 public:
  Formula();  // Top

  Op op() const { return node_->op; }
  /// Atom symbol; only for Op::Atom.
  const Atom& atom() const;
  /// Agent; only for Know and MaybeKnow.
  const AgentId& agent() const;
  /// Group; only for the group and coalition quantifiers.
  const AgentGroup& group() const;

  std::size_t arity() const { return node_->children.size(); }
  const Formula& child(std::size_t i) const { return node_->children[i]; }
  /// First operand (the announcement for Announce/DiaAnnounce).
  const Formula& lhs() const { return node_->children.front(); }
  /// Last operand (the body for unary operators and announcements).
  const Formula& rhs() const { return node_->children.back(); }

  /// Node identity; equal ids imply structural equality, not conversely.
  const void* identity() const { return node_.get(); }

  friend bool operator==(const Formula& a, const Formula& b);

  // Constructors.
  friend Formula atom(Atom p);
  friend Formula top();
  friend Formula bot();
  friend Formula neg(Formula f);
  friend Formula conj(Formula f, Formula g);
  friend Formula disj(Formula f, Formula g);
  friend Formula imp(Formula f, Formula g);
  friend Formula know(AgentId a, Formula f);
  friend Formula maybe(AgentId a, Formula f);
  friend Formula announce(Formula announced, Formula body);
  friend Formula dia_announce(Formula announced, Formula body);
  friend Formula box(Formula f);
  friend Formula dia(Formula f);
  friend Formula group_box(AgentGroup g, Formula f);
  friend Formula group_dia(AgentGroup g, Formula f);
  friend Formula coal_box(AgentGroup g, Formula f);
  friend Formula coal_dia(AgentGroup g, Formula f);

 private:
  struct Node {
    Op op;
    Atom atom;
    AgentId agent;
    AgentGroup group;
    std::vector<Formula> children;
  };
  explicit Formula(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  static Formula make(Op op, std::vector<Formula> children, Atom p = {}, AgentId a = {},
                      AgentGroup g = {});

  std::shared_ptr<const Node> node_;
};

Formula atom(Atom p);
inline Formula atom(const std::string& p) { return atom(Atom(p)); }
Formula top();
Formula bot();
Formula neg(Formula f);
Formula conj(Formula f, Formula g);
Formula disj(Formula f, Formula g);
Formula imp(Formula f, Formula g);
Formula know(AgentId a, Formula f);
inline Formula know(const std::string& a, Formula f) { return know(AgentId(a), std::move(f)); }
Formula maybe(AgentId a, Formula f);
inline Formula maybe(const std::string& a, Formula f) { return maybe(AgentId(a), std::move(f)); }
Formula announce(Formula announced, Formula body);
Formula dia_announce(Formula announced, Formula body);
Formula box(Formula f);
Formula dia(Formula f);
Formula group_box(AgentGroup g, Formula f);
Formula group_dia(AgentGroup g, Formula f);
Formula coal_box(AgentGroup g, Formula f);
Formula coal_dia(AgentGroup g, Formula f);

/// Conjunction of a list, left-nested; the empty list is Top.
Formula conj_all(const std::vector<Formula>& fs);
/// Disjunction of a list, left-nested; the empty list is Bot.
Formula disj_all(const std::vector<Formula>& fs);

AgentGroup make_group(std::initializer_list<const char*> names);

/// Rewrites every derived constructor into its abbreviation:
/// M_a f = ~K_a ~f, <f>g = ~[f]~g, dia f = ~box ~f, <G>f = ~[G]~f, <[G]>f = ~[<G>]~f.
Formula expand_duals(const Formula& f);

struct Measures {
  AtomSet vars;
  std::size_t modal_depth = 0;       // d
  std::size_t quantifier_depth = 0;  // D
};

/// var, d and D. d([f]g) = d(f) + d(g).
Measures measures(const Formula& f);

/// True when f contains no quantifier (announcements allowed).
bool is_quantifier_free(const Formula& f);
/// True when f is in the epistemic fragment: no announcements and no quantifiers.
bool is_epistemic(const Formula& f);

/// Membership in the group-announcement language for G: a conjunction with exactly one
/// conjunct K_i f_i per agent i of G, each f_i epistemic. For the empty group only Top.
bool is_group_announcement(const Formula& f, const AgentGroup& group);

/// Number of nodes in the tree (shared subtrees counted once per occurrence).
std::size_t formula_size(const Formula& f);

}  // namespace qpal
