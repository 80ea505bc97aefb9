#include "qpal/semantics.hpp"

#include <unordered_map>

#include "qpal/errors.hpp"
#include "qpal/parser.hpp"

namespace qpal {

StateSet kernel_within(const Partition& rel, const StateSet& domain, const StateSet& x) {
  StateSet out(domain.universe());
  for (const auto& cls : rel.blocks) {
    StateSet live = cls & domain;
    if (!live.empty() && live.is_subset_of(x)) out |= live;
  }
  return out;
}

namespace {

struct MemoKey {
  const void* node;
  StateSet domain;
  friend bool operator==(const MemoKey&, const MemoKey&) = default;
};

struct MemoKeyHash {
  std::size_t operator()(const MemoKey& k) const {
    return k.domain.hash() ^ (std::hash<const void*>{}(k.node) * 31);
  }
};

class Evaluator {
 public:
  explicit Evaluator(const Model& m) : m_(m) {}

  StateSet eval(const StateSet& dom, const Formula& f) {
    switch (f.op()) {
      case Op::Atom:
        return m_.valuation(f.atom()) & dom;
      case Op::Top:
        return dom;
      case Op::Bot:
        return StateSet(dom.universe());
      case Op::Not:
        return dom - eval(dom, f.rhs());
      case Op::And:
        return eval(dom, f.lhs()) & eval(dom, f.rhs());
      case Op::Or:
        return eval(dom, f.lhs()) | eval(dom, f.rhs());
      case Op::Imp:
        return (dom - eval(dom, f.lhs())) | eval(dom, f.rhs());
      case Op::Know:
        return kernel_within(m_.relation(f.agent()), dom, eval(dom, f.rhs()));
      case Op::MaybeKnow: {
        StateSet inner = dom - eval(dom, f.rhs());
        return dom - kernel_within(m_.relation(f.agent()), dom, inner);
      }
      case Op::Announce:
      case Op::DiaAnnounce:
        return announcement(dom, f);
      default:
        throw EvalError("quantifier in the quantifier-free evaluator; use the quantified checker");
    }
  }

 private:
  // [f]g holds where f fails or g holds after restricting to f;
  // <f>g holds where f holds and g holds after restricting to f.
  StateSet announcement(const StateSet& dom, const Formula& f) {
    MemoKey key{f.identity(), dom};
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    StateSet announced = eval(dom, f.lhs());
    StateSet after = announced.empty() ? announced : eval(announced, f.rhs());
    StateSet result = f.op() == Op::Announce ? (dom - announced) | after : after;
    memo_.emplace(std::move(key), result);
    return result;
  }

  const Model& m_;
  std::unordered_map<MemoKey, StateSet, MemoKeyHash> memo_;
};

}  // namespace

StateSet extension_within(const Model& m, const StateSet& domain, const Formula& f) {
  if (domain.universe() != m.size()) throw ModelError("domain does not belong to this model");
  if (!is_quantifier_free(f))
    throw EvalError("quantifier in the quantifier-free evaluator; use the quantified checker");
  return Evaluator(m).eval(domain, f);
}

StateSet extension(const Model& m, const Formula& f) {
  return extension_within(m, m.all_states(), f);
}

bool holds(const PointedModel& pm, const Formula& f) {
  return extension(pm.model, f).contains(pm.point);
}

Model update(const Model& m, const Formula& f) {
  StateSet keep = extension(m, f);
  if (keep.empty()) throw ModelError("announcement '" + render(f) + "' holds nowhere");
  return restrict(m, keep);
}

}  // namespace qpal
