#include "qpal/formula.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>

namespace qpal {

bool is_identifier(const std::string& s) {
  if (s.empty()) return false;
  if (!(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
  return std::all_of(s.begin(), s.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
  });
}

bool is_reserved_word(const std::string& s) {
  return s == "true" || s == "false" || s == "K" || s == "M" || s == "box" || s == "dia";
}

AgentId::AgentId(std::string name) : name_(std::move(name)) {
  if (!is_identifier(name_) || is_reserved_word(name_) ||
      !std::islower(static_cast<unsigned char>(name_[0])))
    throw std::invalid_argument("invalid agent name '" + name_ + "'");
}

Atom::Atom(std::string name) : name_(std::move(name)) {
  if (!is_identifier(name_) || is_reserved_word(name_))
    throw std::invalid_argument("invalid atom name '" + name_ + "'");
}

bool is_quantifier(Op op) {
  switch (op) {
    case Op::ArbBox:
    case Op::ArbDia:
    case Op::GroupBox:
    case Op::GroupDia:
    case Op::CoalBox:
    case Op::CoalDia:
      return true;
    default:
      return false;
  }
}

bool is_derived(Op op) {
  switch (op) {
    case Op::MaybeKnow:
    case Op::DiaAnnounce:
    case Op::ArbDia:
    case Op::GroupDia:
    case Op::CoalDia:
      return true;
    default:
      return false;
  }
}

Formula Formula::make(Op op, std::vector<Formula> children, Atom p, AgentId a, AgentGroup g) {
  return Formula(std::make_shared<const Node>(
      Node{op, std::move(p), std::move(a), std::move(g), std::move(children)}));
}

Formula::Formula() : node_(top().node_) {}

const Atom& Formula::atom() const {
  if (op() != Op::Atom) throw std::logic_error("Formula::atom on non-atom");
  return node_->atom;
}

const AgentId& Formula::agent() const {
  if (op() != Op::Know && op() != Op::MaybeKnow)
    throw std::logic_error("Formula::agent on non-knowledge formula");
  return node_->agent;
}

const AgentGroup& Formula::group() const {
  switch (op()) {
    case Op::GroupBox:
    case Op::GroupDia:
    case Op::CoalBox:
    case Op::CoalDia:
      return node_->group;
    default:
      throw std::logic_error("Formula::group on non-group formula");
  }
}

bool operator==(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return true;
  const auto& x = *a.node_;
  const auto& y = *b.node_;
  if (x.op != y.op || x.atom != y.atom || x.agent != y.agent || x.group != y.group ||
      x.children.size() != y.children.size())
    return false;
  for (std::size_t i = 0; i < x.children.size(); ++i)
    if (!(x.children[i] == y.children[i])) return false;
  return true;
}

Formula atom(Atom p) { return Formula::make(Op::Atom, {}, std::move(p)); }

Formula top() {
  static const Formula t = Formula::make(Op::Top, {});
  return t;
}

Formula bot() {
  static const Formula b = Formula::make(Op::Bot, {});
  return b;
}

Formula neg(Formula f) { return Formula::make(Op::Not, {std::move(f)}); }
Formula conj(Formula f, Formula g) { return Formula::make(Op::And, {std::move(f), std::move(g)}); }
Formula disj(Formula f, Formula g) { return Formula::make(Op::Or, {std::move(f), std::move(g)}); }
Formula imp(Formula f, Formula g) { return Formula::make(Op::Imp, {std::move(f), std::move(g)}); }

Formula know(AgentId a, Formula f) { return Formula::make(Op::Know, {std::move(f)}, {}, std::move(a)); }
Formula maybe(AgentId a, Formula f) {
  return Formula::make(Op::MaybeKnow, {std::move(f)}, {}, std::move(a));
}

Formula announce(Formula announced, Formula body) {
  return Formula::make(Op::Announce, {std::move(announced), std::move(body)});
}
Formula dia_announce(Formula announced, Formula body) {
  return Formula::make(Op::DiaAnnounce, {std::move(announced), std::move(body)});
}

Formula box(Formula f) { return Formula::make(Op::ArbBox, {std::move(f)}); }
Formula dia(Formula f) { return Formula::make(Op::ArbDia, {std::move(f)}); }

Formula group_box(AgentGroup g, Formula f) {
  return Formula::make(Op::GroupBox, {std::move(f)}, {}, {}, std::move(g));
}
Formula group_dia(AgentGroup g, Formula f) {
  return Formula::make(Op::GroupDia, {std::move(f)}, {}, {}, std::move(g));
}
Formula coal_box(AgentGroup g, Formula f) {
  return Formula::make(Op::CoalBox, {std::move(f)}, {}, {}, std::move(g));
}
Formula coal_dia(AgentGroup g, Formula f) {
  return Formula::make(Op::CoalDia, {std::move(f)}, {}, {}, std::move(g));
}

Formula conj_all(const std::vector<Formula>& fs) {
  if (fs.empty()) return top();
  Formula acc = fs.front();
  for (std::size_t i = 1; i < fs.size(); ++i) acc = conj(acc, fs[i]);
  return acc;
}

Formula disj_all(const std::vector<Formula>& fs) {
  if (fs.empty()) return bot();
  Formula acc = fs.front();
  for (std::size_t i = 1; i < fs.size(); ++i) acc = disj(acc, fs[i]);
  return acc;
}

AgentGroup make_group(std::initializer_list<const char*> names) {
  AgentGroup g;
  for (const char* n : names) g.insert(AgentId(n));
  return g;
}

Formula expand_duals(const Formula& f) {
  switch (f.op()) {
    case Op::Atom:
    case Op::Top:
    case Op::Bot:
      return f;
    case Op::Not:
      return neg(expand_duals(f.rhs()));
    case Op::And:
      return conj(expand_duals(f.lhs()), expand_duals(f.rhs()));
    case Op::Or:
      return disj(expand_duals(f.lhs()), expand_duals(f.rhs()));
    case Op::Imp:
      return imp(expand_duals(f.lhs()), expand_duals(f.rhs()));
    case Op::Know:
      return know(f.agent(), expand_duals(f.rhs()));
    case Op::Announce:
      return announce(expand_duals(f.lhs()), expand_duals(f.rhs()));
    case Op::ArbBox:
      return box(expand_duals(f.rhs()));
    case Op::GroupBox:
      return group_box(f.group(), expand_duals(f.rhs()));
    case Op::CoalBox:
      return coal_box(f.group(), expand_duals(f.rhs()));
    case Op::MaybeKnow:
      return neg(know(f.agent(), neg(expand_duals(f.rhs()))));
    case Op::DiaAnnounce:
      return neg(announce(expand_duals(f.lhs()), neg(expand_duals(f.rhs()))));
    case Op::ArbDia:
      return neg(box(neg(expand_duals(f.rhs()))));
    case Op::GroupDia:
      return neg(group_box(f.group(), neg(expand_duals(f.rhs()))));
    case Op::CoalDia:
      return neg(coal_box(f.group(), neg(expand_duals(f.rhs()))));
  }
  throw std::logic_error("expand_duals: unknown operator");
}

namespace {

void measure_into(const Formula& f, Measures& out, std::size_t& d, std::size_t& D) {
  switch (f.op()) {
    case Op::Atom:
      out.vars.insert(f.atom());
      d = 0;
      D = 0;
      return;
    case Op::Top:
    case Op::Bot:
      d = 0;
      D = 0;
      return;
    default:
      break;
  }
  if (f.arity() == 1) {
    measure_into(f.rhs(), out, d, D);
    if (f.op() == Op::Know || f.op() == Op::MaybeKnow) ++d;
    if (is_quantifier(f.op())) ++D;
    return;
  }
  std::size_t d1 = 0, D1 = 0, d2 = 0, D2 = 0;
  measure_into(f.lhs(), out, d1, D1);
  measure_into(f.rhs(), out, d2, D2);
  D = std::max(D1, D2);
  if (f.op() == Op::Announce || f.op() == Op::DiaAnnounce)
    d = d1 + d2;
  else
    d = std::max(d1, d2);
}

}  // namespace

Measures measures(const Formula& f) {
  Measures m;
  measure_into(f, m, m.modal_depth, m.quantifier_depth);
  return m;
}

bool is_quantifier_free(const Formula& f) {
  if (is_quantifier(f.op())) return false;
  for (std::size_t i = 0; i < f.arity(); ++i)
    if (!is_quantifier_free(f.child(i))) return false;
  return true;
}

bool is_epistemic(const Formula& f) {
  if (is_quantifier(f.op()) || f.op() == Op::Announce || f.op() == Op::DiaAnnounce) return false;
  for (std::size_t i = 0; i < f.arity(); ++i)
    if (!is_epistemic(f.child(i))) return false;
  return true;
}

namespace {

void flatten_and(const Formula& f, std::vector<Formula>& out) {
  if (f.op() == Op::And) {
    flatten_and(f.lhs(), out);
    flatten_and(f.rhs(), out);
  } else {
    out.push_back(f);
  }
}

}  // namespace

bool is_group_announcement(const Formula& f, const AgentGroup& group) {
  if (group.empty()) return f.op() == Op::Top;
  std::vector<Formula> conjuncts;
  flatten_and(f, conjuncts);
  if (conjuncts.size() != group.size()) return false;
  AgentGroup seen;
  for (const auto& c : conjuncts) {
    if (c.op() != Op::Know || !group.contains(c.agent()) || !is_epistemic(c.rhs())) return false;
    if (!seen.insert(c.agent()).second) return false;
  }
  return true;
}

std::size_t formula_size(const Formula& f) {
  std::size_t n = 1;
  for (std::size_t i = 0; i < f.arity(); ++i) n += formula_size(f.child(i));
  return n;
}

}  // namespace qpal
