#include "qpal/checker.hpp"

#include <algorithm>
#include <map>
#include <tuple>
#include <unordered_map>
#include <unordered_set>

#include "qpal/errors.hpp"
#include "qpal/library.hpp"
#include "qpal/semantics.hpp"

namespace qpal {

bool GroupExtensionFamily::contains(const StateSet& s) const {
  return std::find(sets.begin(), sets.end(), s) != sets.end();
}

std::string AnnouncementMode::name() const {
  std::string g;
  for (const auto& a : group) g += (g.empty() ? "" : ",") + a.name();
  switch (kind) {
    case Kind::Arbitrary:
      return "apal";
    case Kind::Group:
      return "group{" + g + "}";
    case Kind::Coalition:
      return "coalition{" + g + "}";
  }
  return "?";
}

namespace {

// Duals are compiled away; Top/Bot/Or/Imp stay primitive.
enum class COp { Atom, Top, Bot, Not, And, Or, Imp, Know, Announce, Box, GroupBox, CoalBox };

struct CNode {
  COp op = COp::Top;
  std::size_t agent = 0;                    // Know
  std::vector<std::size_t> group;           // GroupBox, CoalBox: agent indices, sorted
  std::vector<std::size_t> complement;      // CoalBox: the other agents
  StateSet valuation;                       // Atom
  std::size_t lhs = 0, rhs = 0;
  bool quantified = false;                  // a quantifier occurs at or below this node
};

CNode make_node(COp op) {
  CNode n;
  n.op = op;
  return n;
}

struct MemoKey {
  std::size_t node;
  StateSet domain;
  friend bool operator==(const MemoKey&, const MemoKey&) = default;
};

struct MemoKeyHash {
  std::size_t operator()(const MemoKey& k) const {
    return k.domain.hash() ^ (k.node * 0x9e3779b97f4a7c15ULL);
  }
};

}  // namespace

struct Checker::Impl {
  Model model;
  CheckOptions opts;
  std::vector<CNode> nodes;
  std::map<std::tuple<int, std::string, std::vector<std::size_t>, std::size_t, std::size_t>,
           std::size_t>
      interned;
  std::unordered_map<MemoKey, StateSet, MemoKeyHash> memo;
  std::size_t quantifier_depth = 0;

  Impl(Model m, CheckOptions o) : model(std::move(m)), opts(o) {}

  std::size_t agent_index(const AgentId& a) const {
    auto i = model.agent_index(a);
    if (!i) throw EvalError("unknown agent '" + a.name() + "'");
    return *i;
  }

  std::vector<std::size_t> group_indices(const AgentGroup& g) const {
    std::vector<std::size_t> out;
    for (const auto& a : g) out.push_back(agent_index(a));
    std::sort(out.begin(), out.end());
    return out;
  }

  std::size_t intern(CNode n, const std::string& symbol = {}) {
    auto key = std::make_tuple(static_cast<int>(n.op), symbol,
                               n.op == COp::Know ? std::vector<std::size_t>{n.agent} : n.group,
                               n.lhs, n.rhs);
    if (auto it = interned.find(key); it != interned.end()) return it->second;
    switch (n.op) {
      case COp::Box:
      case COp::GroupBox:
      case COp::CoalBox:
        n.quantified = true;
        break;
      case COp::Not:
      case COp::Know:
        n.quantified = nodes[n.rhs].quantified;
        break;
      case COp::And:
      case COp::Or:
      case COp::Imp:
      case COp::Announce:
        n.quantified = nodes[n.lhs].quantified || nodes[n.rhs].quantified;
        break;
      default:
        break;
    }
    nodes.push_back(std::move(n));
    interned.emplace(std::move(key), nodes.size() - 1);
    return nodes.size() - 1;
  }

  std::size_t unary(COp op, std::size_t child) {
    CNode n = make_node(op);
    n.rhs = child;
    return intern(std::move(n));
  }

  std::size_t binary(COp op, std::size_t l, std::size_t r) {
    CNode n = make_node(op);
    n.lhs = l;
    n.rhs = r;
    return intern(std::move(n));
  }

  std::size_t negate(std::size_t child) {
    if (nodes[child].op == COp::Not) return nodes[child].rhs;
    return unary(COp::Not, child);
  }

  std::size_t knows(std::size_t agent, std::size_t child) {
    CNode n = make_node(COp::Know);
    n.agent = agent;
    n.rhs = child;
    return intern(std::move(n));
  }

  std::size_t grouped(COp op, const AgentGroup& g, std::size_t child) {
    CNode n = make_node(op);
    n.group = group_indices(g);
    if (op == COp::CoalBox)
      for (std::size_t a = 0; a < model.agents().size(); ++a)
        if (!std::binary_search(n.group.begin(), n.group.end(), a)) n.complement.push_back(a);
    n.rhs = child;
    return intern(std::move(n));
  }

  std::size_t compile(const Formula& f) {
    switch (f.op()) {
      case Op::Atom: {
        CNode n = make_node(COp::Atom);
        n.valuation = model.valuation(f.atom());
        return intern(std::move(n), f.atom().name());
      }
      case Op::Top:
        return intern(make_node(COp::Top));
      case Op::Bot:
        return intern(make_node(COp::Bot));
      case Op::Not:
        return negate(compile(f.rhs()));
      case Op::And:
        return binary(COp::And, compile(f.lhs()), compile(f.rhs()));
      case Op::Or:
        return binary(COp::Or, compile(f.lhs()), compile(f.rhs()));
      case Op::Imp:
        return binary(COp::Imp, compile(f.lhs()), compile(f.rhs()));
      case Op::Know:
        return knows(agent_index(f.agent()), compile(f.rhs()));
      case Op::MaybeKnow:
        return negate(knows(agent_index(f.agent()), negate(compile(f.rhs()))));
      case Op::Announce:
        return binary(COp::Announce, compile(f.lhs()), compile(f.rhs()));
      case Op::DiaAnnounce:
        return negate(binary(COp::Announce, compile(f.lhs()), negate(compile(f.rhs()))));
      case Op::ArbBox:
        return unary(COp::Box, compile(f.rhs()));
      case Op::ArbDia:
        return negate(unary(COp::Box, negate(compile(f.rhs()))));
      case Op::GroupBox:
        return grouped(COp::GroupBox, f.group(), compile(f.rhs()));
      case Op::GroupDia:
        return negate(grouped(COp::GroupBox, f.group(), negate(compile(f.rhs()))));
      case Op::CoalBox:
        return grouped(COp::CoalBox, f.group(), compile(f.rhs()));
      case Op::CoalDia:
        return negate(grouped(COp::CoalBox, f.group(), negate(compile(f.rhs()))));
    }
    throw std::logic_error("Checker: unknown operator");
  }

  Partition quotient_of(const StateSet& domain) const {
    return refine(model, domain, model.vocabulary()).stable();
  }

  Partition capped_quotient(const StateSet& domain) const {
    Partition p = quotient_of(domain);
    if (p.size() > opts.block_cap)
      throw ResourceError("quotient of " + model.describe(domain) + " has " +
                          std::to_string(p.size()) + " blocks, above the cap of " +
                          std::to_string(opts.block_cap) + " (quantifier depth " +
                          std::to_string(quantifier_depth) + ")");
    return p;
  }

  StateSet kernel(std::size_t agent, const StateSet& domain, const StateSet& x) const {
    return kernel_within(model.relation(agent), domain, x);
  }

  StateSet eval(const StateSet& dom, std::size_t id) {
    const CNode& n = nodes[id];
    switch (n.op) {
      case COp::Atom:
        return n.valuation & dom;
      case COp::Top:
        return dom;
      case COp::Bot:
        return StateSet(dom.universe());
      case COp::Not:
        return dom - eval(dom, n.rhs);
      case COp::And: {
        StateSet l = eval(dom, n.lhs);
        if (l.empty()) return l;
        return l & eval(dom, n.rhs);
      }
      case COp::Or:
        return eval(dom, n.lhs) | eval(dom, n.rhs);
      case COp::Imp:
        return (dom - eval(dom, n.lhs)) | eval(dom, n.rhs);
      case COp::Know:
        return kernel(n.agent, dom, eval(dom, n.rhs));
      case COp::Announce: {
        std::size_t body = n.rhs;
        StateSet announced = eval(dom, n.lhs);
        if (announced.empty()) return dom;
        return (dom - announced) | eval(announced, body);
      }
      case COp::Box:
      case COp::GroupBox:
      case COp::CoalBox:
        return quantified(dom, id);
    }
    throw std::logic_error("Checker: unknown compiled operator");
  }

  // Truth at a state only depends on its connected component, so each component is
  // evaluated (and memoised) on its own.
  StateSet quantified(const StateSet& dom, std::size_t id) {
    MemoKey key{id, dom};
    if (auto it = memo.find(key); it != memo.end()) return it->second;
    std::vector<StateSet> parts = components(dom);
    StateSet result(dom.universe());
    if (parts.size() > 1) {
      for (const auto& part : parts) result |= quantified(part, id);
    } else {
      ++quantifier_depth;
      const CNode& n = nodes[id];
      switch (n.op) {
        case COp::Box:
          result = eval_box(dom, n.rhs);
          break;
        case COp::GroupBox:
          result = eval_group_box(dom, n.group, n.rhs);
          break;
        default:
          result = eval_coalition_box(dom, n.group, n.complement, n.rhs);
          break;
      }
      --quantifier_depth;
    }
    memo.emplace(std::move(key), result);
    return result;
  }

  // Quantifier bodies are evaluated on the same submodels over and over.
  StateSet body_at(const StateSet& dom, std::size_t body) {
    MemoKey key{body, dom};
    if (auto it = memo.find(key); it != memo.end()) return it->second;
    StateSet result = eval(dom, body);
    memo.emplace(std::move(key), result);
    return result;
  }

  std::vector<StateSet> components(const StateSet& dom) const {
    std::vector<StateSet> out;
    StateSet rest = dom;
    while (!rest.empty()) {
      StateSet comp(dom.universe());
      comp.insert(rest.first());
      StateSet frontier = comp;
      while (!frontier.empty()) {
        StateSet reach(dom.universe());
        frontier.for_each([&](std::size_t s) {
          for (std::size_t a = 0; a < model.agents().size(); ++a)
            reach |= model.relation(a).block_containing(s);
        });
        reach &= dom;
        frontier = reach - comp;
        comp |= reach;
      }
      rest -= comp;
      out.push_back(std::move(comp));
    }
    return out;
  }

  // A state fails box f when some closed set containing it, once announced, falsifies f there.
  StateSet eval_box(const StateSet& dom, std::size_t body) {
    Partition blocks = capped_quotient(dom);
    ClosedSetEnumerator e(blocks, dom.universe(), opts.block_cap);
    StateSet bad(dom.universe());
    while (e.next()) {
      const StateSet& kept = e.current();
      bad |= kept - body_at(kept, body);
    }
    return dom - bad;
  }

  StateSet eval_group_box(const StateSet& dom, const std::vector<std::size_t>& group,
                          std::size_t body) {
    GroupExtensionFamily fam = family(dom, group);
    StateSet bad(dom.universe());
    for (const auto& kept : fam.sets)
      if (!kept.empty()) bad |= kept - body_at(kept, body);
    return dom - bad;
  }

  // For each announcement of the group, every state it keeps must have some simultaneous
  // counter-announcement of the other agents that keeps it and makes the body true.
  StateSet eval_coalition_box(const StateSet& dom, const std::vector<std::size_t>& group,
                              const std::vector<std::size_t>& others, std::size_t body) {
    GroupExtensionFamily own = family(dom, group);
    GroupExtensionFamily counter = family(dom, others);
    StateSet bad(dom.universe());
    for (const auto& mine : own.sets) {
      if (mine.empty()) continue;
      StateSet rescued(dom.universe());
      for (const auto& theirs : counter.sets) {
        StateSet joint = mine & theirs;
        if (joint.empty()) continue;
        rescued |= joint & body_at(joint, body);
      }
      bad |= mine - rescued;
    }
    return dom - bad;
  }

  GroupExtensionFamily family(const StateSet& dom, const std::vector<std::size_t>& group) {
    GroupExtensionFamily fam;
    for (std::size_t a : group) fam.group.insert(model.agents()[a]);
    fam.sets.push_back(dom);
    fam.generators.emplace_back();
    if (group.empty()) return fam;

    Partition blocks = capped_quotient(dom);
    std::vector<StateSet> closed{StateSet(dom.universe())};
    {
      ClosedSetEnumerator e(blocks, dom.universe(), opts.block_cap);
      while (e.next()) closed.push_back(e.current());
    }

    for (std::size_t a : group) {
      // Distinct kernels with the first closed set producing each.
      std::unordered_map<StateSet, StateSet> kernels;
      std::vector<StateSet> order;
      for (const auto& x : closed) {
        StateSet k = kernel(a, dom, x);
        if (kernels.try_emplace(k, x).second) order.push_back(k);
      }
      GroupExtensionFamily next;
      next.group = fam.group;
      std::unordered_set<StateSet> seen;
      for (std::size_t i = 0; i < fam.sets.size(); ++i) {
        for (const auto& k : order) {
          StateSet meet = fam.sets[i] & k;
          if (!seen.insert(meet).second) continue;
          auto gens = fam.generators[i];
          gens.push_back(kernels.at(k));
          next.sets.push_back(std::move(meet));
          next.generators.push_back(std::move(gens));
        }
      }
      fam.sets = std::move(next.sets);
      fam.generators = std::move(next.generators);
    }
    return fam;
  }
};

Checker::Checker(Model m, CheckOptions opts) : impl_(std::make_unique<Impl>(std::move(m), opts)) {}
Checker::~Checker() = default;
Checker::Checker(Checker&&) noexcept = default;
Checker& Checker::operator=(Checker&&) noexcept = default;

const Model& Checker::model() const { return impl_->model; }

StateSet Checker::extension(const Formula& f) {
  return extension_within(impl_->model.all_states(), f);
}

StateSet Checker::extension_within(const StateSet& domain, const Formula& f) {
  if (domain.universe() != impl_->model.size())
    throw ModelError("domain does not belong to this model");
  if (domain.empty()) return domain;
  std::size_t id = impl_->compile(f);
  return impl_->eval(domain, id);
}

bool Checker::holds(std::size_t state, const Formula& f) { return extension(f).contains(state); }

Partition Checker::quotient_of(const StateSet& domain) const { return impl_->quotient_of(domain); }

GroupExtensionFamily Checker::group_extensions(const StateSet& domain, const AgentGroup& g) {
  return impl_->family(domain, impl_->group_indices(g));
}

std::size_t Checker::memo_size() const { return impl_->memo.size(); }

namespace {

AgentGroup complement_group(const Model& m, const AgentGroup& g) {
  AgentGroup out;
  for (const auto& a : m.agents())
    if (!g.contains(a)) out.insert(a);
  return out;
}

}  // namespace

bool Checker::verify_witness(std::size_t point, const Formula& body, const AnnouncementMode& mode,
                             const StateSet& kept) {
  if (!kept.contains(point)) return false;
  if (mode.kind != AnnouncementMode::Kind::Coalition)
    return extension_within(kept, body).contains(point);
  GroupExtensionFamily counter =
      group_extensions(impl_->model.all_states(), complement_group(impl_->model, mode.group));
  for (const auto& theirs : counter.sets) {
    StateSet joint = kept & theirs;
    if (!joint.contains(point)) continue;
    if (!extension_within(joint, body).contains(point)) return false;
  }
  return true;
}

std::optional<Certificate> Checker::diamond_witness(std::size_t point, const Formula& body,
                                                    const AnnouncementMode& mode) {
  const Model& m = impl_->model;
  StateSet all = m.all_states();
  if (point >= m.size()) throw ModelError("point out of range");

  std::vector<StateSet> candidates;
  std::vector<std::vector<StateSet>> generators;
  if (mode.kind == AnnouncementMode::Kind::Arbitrary) {
    Partition blocks = impl_->capped_quotient(all);
    ClosedSetEnumerator e(blocks, m.size(), impl_->opts.block_cap);
    while (e.next())
      if (e.current().contains(point)) candidates.push_back(e.current());
  } else {
    GroupExtensionFamily fam = group_extensions(all, mode.group);
    for (std::size_t i = 0; i < fam.sets.size(); ++i)
      if (fam.sets[i].contains(point)) {
        candidates.push_back(fam.sets[i]);
        generators.push_back(fam.generators[i]);
      }
  }
  std::vector<std::size_t> order(candidates.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
    return witness_order(candidates[i], candidates[j]);
  });

  for (std::size_t i : order) {
    const StateSet& kept = candidates[i];
    if (!verify_witness(point, body, mode, kept)) continue;

    Formula defining;
    if (mode.kind == AnnouncementMode::Kind::Arbitrary) {
      defining = characteristic_formula(m, kept, m.vocabulary());
    } else {
      std::vector<Formula> parts;
      std::size_t j = 0;
      for (const auto& a : mode.group)
        parts.push_back(know(a, characteristic_formula(m, generators[i][j++], m.vocabulary())));
      defining = conj_all(parts);
    }
    // Independent route: the plain evaluator must agree that the formula defines the set.
    if (!(qpal::extension(m, defining) == kept))
      throw std::logic_error("diamond_witness: defining formula does not define the kept set");
    return Certificate{kept, defining};
  }
  return std::nullopt;
}

bool check(const PointedModel& pm, const Formula& f, CheckOptions opts) {
  Checker c(pm.model, opts);
  return c.holds(pm.point, f);
}

std::optional<Certificate> diamond_witness(const PointedModel& pm, const Formula& body,
                                           const AnnouncementMode& mode, CheckOptions opts) {
  Checker c(pm.model, opts);
  return c.diamond_witness(pm.point, body, mode);
}

GroupExtensionFamily group_extensions(const Model& m, const AgentGroup& g, CheckOptions opts) {
  Checker c(m, opts);
  return c.group_extensions(m.all_states(), g);
}

FmpReport check_fmp_suite(const PointedModel& pm, CheckOptions opts) {
  using library::Flavor;
  const Model& m = pm.model;
  AgentGroup all(m.agents().begin(), m.agents().end());
  Checker c(m, opts);

  FmpReport report;
  report.point = pm.point;
  report.root = c.holds(pm.point, library::root());
  report.stem = c.holds(pm.point, library::stem());

  const std::pair<Flavor, AnnouncementMode> flavors[] = {
      {Flavor::Arbitrary, AnnouncementMode::arbitrary()},
      {Flavor::Group, AnnouncementMode::of_group(all)},
      {Flavor::Coalition, AnnouncementMode::coalition(all)},
  };
  const char* names[] = {"apal", "gal", "cal"};
  for (std::size_t v = 0; v < 3; ++v) {
    auto [flavor, mode] = flavors[v];
    FmpReport::Variant var;
    var.name = names[v];
    for (int k = 0; k < 3; ++k)
      var.conjunct[k] = c.holds(pm.point, library::fmp_conjunct(k + 1, flavor, all));
    var.fmp = c.holds(pm.point, library::fmp(flavor, all));

    Formula root = library::root(flavor, all);
    Formula stem = library::stem(flavor, all);
    Formula tier = library::tier();
    StateSet root_ext = c.extension(root);
    StateSet stem_ext = c.extension(stem);
    const StateSet& alternatives = m.relation(AgentId("b")).block_containing(pm.point);
    alternatives.for_each([&](std::size_t w) {
      if (stem_ext.contains(w))
        var.witnesses.push_back({"stem escape", w,
                                 c.diamond_witness(w, conj(tier, know("b", stem)), mode)});
      if (root_ext.contains(w))
        var.witnesses.push_back(
            {"root refutation", w, c.diamond_witness(w, conj(tier, know("b", neg(stem))), mode)});
    });
    report.variants.push_back(std::move(var));
  }
  return report;
}

}  // namespace qpal
