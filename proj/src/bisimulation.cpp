#include "qpal/bisimulation.hpp"

#include <bit>
#include <map>

#include "qpal/errors.hpp"

namespace qpal {

namespace {

Partition valuation_partition(const Model& m, const StateSet& domain, const AtomSet& q) {
  std::vector<StateSet> exts;
  for (const auto& p : q) exts.push_back(m.valuation(p));
  std::map<std::vector<bool>, StateSet> groups;
  domain.for_each([&](std::size_t s) {
    std::vector<bool> sig;
    sig.reserve(exts.size());
    for (const auto& e : exts) sig.push_back(e.contains(s));
    auto [it, inserted] = groups.try_emplace(std::move(sig), StateSet(m.size()));
    it->second.insert(s);
  });
  std::vector<StateSet> blocks;
  for (auto& [sig, b] : groups) blocks.push_back(std::move(b));
  return Partition::from_blocks(m.size(), std::move(blocks));
}

Partition refine_once(const Model& m, const StateSet& domain, const Partition& current) {
  std::size_t n = m.size();
  std::size_t agents = m.agents().size();
  // successor_blocks[a][s]: blocks met by the a-class of s.
  std::vector<std::vector<StateSet>> successor_blocks(agents);
  for (std::size_t a = 0; a < agents; ++a) {
    successor_blocks[a].assign(n, StateSet());
    for (const auto& cls : m.relation(a).blocks) {
      StateSet live = cls & domain;
      if (live.empty()) continue;
      StateSet met(current.size());
      live.for_each([&](std::size_t s) { met.insert(current.block_of[s]); });
      live.for_each([&](std::size_t s) { successor_blocks[a][s] = met; });
    }
  }
  std::map<std::vector<std::size_t>, StateSet> groups;
  domain.for_each([&](std::size_t s) {
    std::vector<std::size_t> sig{current.block_of[s]};
    for (std::size_t a = 0; a < agents; ++a) {
      sig.push_back(StateSet::npos);
      successor_blocks[a][s].for_each([&](std::size_t b) { sig.push_back(b); });
    }
    auto [it, inserted] = groups.try_emplace(std::move(sig), StateSet(n));
    it->second.insert(s);
  });
  std::vector<StateSet> blocks;
  for (auto& [sig, b] : groups) blocks.push_back(std::move(b));
  return Partition::from_blocks(n, std::move(blocks));
}

}  // namespace

Refinement refine(const Model& m, const StateSet& domain, const AtomSet& q) {
  Refinement r;
  r.stages.push_back(valuation_partition(m, domain, q));
  while (true) {
    Partition next = refine_once(m, domain, r.stages.back());
    if (next.size() == r.stages.back().size()) break;
    r.stages.push_back(std::move(next));
  }
  return r;
}

Partition quotient(const Model& m, const AtomSet& q) {
  return refine(m, m.all_states(), q).stable();
}

Partition quotient(const Model& m) { return quotient(m, m.vocabulary()); }

bool bisimilar(const PointedModel& left, const PointedModel& right, const AtomSet& q,
               std::optional<std::size_t> depth) {
  Model u = disjoint_union(left.model, right.model);
  Refinement r = refine(u, u.all_states(), q);
  const Partition& p = depth ? r.at(*depth) : r.stable();
  return p.block_of[left.point] == p.block_of[left.model.size() + right.point];
}

bool is_block_closed(const Partition& p, const StateSet& x) {
  for (const auto& b : p.blocks)
    if (b.intersects(x) && !b.is_subset_of(x)) return false;
  return true;
}

ClosedSetEnumerator::ClosedSetEnumerator(const Partition& blocks, std::size_t universe,
                                         std::size_t cap)
    : blocks_(&blocks), current_(universe) {
  if (blocks.size() > cap || blocks.size() > 62)
    throw ResourceError("quotient has " + std::to_string(blocks.size()) +
                        " blocks, above the cap of " + std::to_string(cap));
}

bool ClosedSetEnumerator::next() {
  if (step_ == total()) return false;
  ++step_;
  current_ ^= blocks_->blocks[static_cast<std::size_t>(std::countr_zero(step_))];
  return true;
}

std::vector<StateSet> closed_sets(const Model& m, const AtomSet& q, std::size_t cap) {
  Partition p = quotient(m, q);
  ClosedSetEnumerator e(p, m.size(), cap);
  std::vector<StateSet> out;
  out.reserve(e.total());
  while (e.next()) out.push_back(e.current());
  return out;
}

namespace {

Formula and_simplified(const Formula& f, const Formula& g) {
  if (f.op() == Op::Top) return g;
  if (g.op() == Op::Top) return f;
  return conj(f, g);
}

}  // namespace

Formula characteristic_formula(const Model& m, const StateSet& x, const AtomSet& q) {
  StateSet all = m.all_states();
  Refinement r = refine(m, all, q);
  const Partition& stable = r.stable();
  if (x.universe() != m.size() || !is_block_closed(stable, x))
    throw ModelError("characteristic_formula: " + m.describe(x) + " is not a union of blocks");

  // The first stage at which x is already a union of blocks is enough.
  std::size_t last = 0;
  while (!is_block_closed(r.stages[last], x)) ++last;

  // Stage 0: the Q-literals of a representative, skipping atoms constant on the model.
  std::vector<Formula> chi;
  for (const auto& b : r.stages[0].blocks) {
    std::size_t rep = b.first();
    Formula lits = top();
    for (const auto& p : q) {
      StateSet v = m.valuation(p);
      if (v.empty() || v == all) continue;
      lits = and_simplified(lits, m.valuation(p).contains(rep) ? atom(p) : neg(atom(p)));
    }
    chi.push_back(lits);
  }

  for (std::size_t k = 1; k <= last; ++k) {
    const Partition& prev = r.stages[k - 1];
    std::vector<Formula> next;
    for (const auto& b : r.stages[k].blocks) {
      std::size_t rep = b.first();
      Formula f = chi[prev.block_of[rep]];
      for (std::size_t a = 0; a < m.agents().size(); ++a) {
        StateSet met(prev.size());
        m.relation(a).block_containing(rep).for_each(
            [&](std::size_t t) { met.insert(prev.block_of[t]); });
        std::vector<Formula> options;
        met.for_each([&](std::size_t c) {
          options.push_back(chi[c]);
          if (chi[c].op() != Op::Top) f = and_simplified(f, maybe(m.agents()[a], chi[c]));
        });
        Formula any = disj_all(options);
        bool trivial = std::any_of(options.begin(), options.end(),
                                   [](const Formula& o) { return o.op() == Op::Top; });
        if (!trivial) f = and_simplified(f, know(m.agents()[a], any));
      }
      next.push_back(f);
    }
    chi = std::move(next);
  }

  std::vector<Formula> inside, outside;
  const Partition& used = r.stages[last];
  for (std::size_t b = 0; b < used.size(); ++b)
    (used.blocks[b].is_subset_of(x) ? inside : outside).push_back(chi[b]);
  if (outside.empty()) return top();
  if (inside.empty()) return bot();
  if (outside.size() < inside.size()) return neg(disj_all(outside));
  return disj_all(inside);
}

}  // namespace qpal
