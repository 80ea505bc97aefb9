#pragma once

// Random generators and brute-force reference implementations used as test oracles.
// Nothing here calls the library's evaluators, partitions or enumerators.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "qpal/formula.hpp"
#include "qpal/model.hpp"

namespace oracle {

using qpal::Formula;
using qpal::Op;

struct FormulaShape {
  std::vector<std::string> atoms{"x", "p1", "p2"};
  std::vector<std::string> agents{"a", "b"};
  bool announcements = true;
  bool quantifiers = false;
  bool derived = true;
};

inline Formula random_formula(std::mt19937_64& rng, int depth, const FormulaShape& shape = {}) {
  auto pick = [&](std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng); };
  auto agent = [&] { return qpal::AgentId(shape.agents[pick(shape.agents.size())]); };
  auto group = [&] {
    qpal::AgentGroup g;
    for (const auto& a : shape.agents)
      if (pick(2) == 0) g.insert(qpal::AgentId(a));
    return g;
  };
  if (depth <= 0 || pick(5) == 0) {
    std::size_t k = pick(shape.atoms.size() + 2);
    if (k == shape.atoms.size()) return qpal::top();
    if (k == shape.atoms.size() + 1) return qpal::bot();
    return qpal::atom(shape.atoms[k]);
  }
  auto sub = [&] { return random_formula(rng, depth - 1, shape); };
  std::vector<int> ops{0, 1, 2, 3, 4};
  if (shape.derived) ops.push_back(5);
  if (shape.announcements) {
    ops.push_back(6);
    if (shape.derived) ops.push_back(7);
  }
  if (shape.quantifiers) {
    for (int q : {8, 9, 10}) ops.push_back(q);
    if (shape.derived)
      for (int q : {11, 12, 13}) ops.push_back(q);
  }
  switch (ops[pick(ops.size())]) {
    case 0: return qpal::neg(sub());
    case 1: return qpal::conj(sub(), sub());
    case 2: return qpal::disj(sub(), sub());
    case 3: return qpal::imp(sub(), sub());
    case 4: return qpal::know(agent(), sub());
    case 5: return qpal::maybe(agent(), sub());
    case 6: return qpal::announce(sub(), sub());
    case 7: return qpal::dia_announce(sub(), sub());
    case 8: return qpal::box(sub());
    case 9: return qpal::group_box(group(), sub());
    case 10: return qpal::coal_box(group(), sub());
    case 11: return qpal::dia(sub());
    case 12: return qpal::group_dia(group(), sub());
    default: return qpal::coal_dia(group(), sub());
  }
}

// Measures, straight from the inductive clauses. Duals are read through their abbreviations,
// which add one negation each and change no measure.
struct NaiveMeasures {
  std::set<std::string> vars;
  int d = 0;
  int D = 0;
};

inline NaiveMeasures naive_measures(const Formula& f) {
  NaiveMeasures m;
  switch (f.op()) {
    case Op::Atom:
      m.vars.insert(f.atom().name());
      return m;
    case Op::Top:
    case Op::Bot:
      return m;
    case Op::Not:
      return naive_measures(f.rhs());
    case Op::And:
    case Op::Or:
    case Op::Imp: {
      NaiveMeasures l = naive_measures(f.lhs()), r = naive_measures(f.rhs());
      l.vars.insert(r.vars.begin(), r.vars.end());
      l.d = std::max(l.d, r.d);
      l.D = std::max(l.D, r.D);
      return l;
    }
    case Op::Know:
    case Op::MaybeKnow: {
      m = naive_measures(f.rhs());
      m.d += 1;
      return m;
    }
    case Op::Announce:
    case Op::DiaAnnounce: {
      NaiveMeasures l = naive_measures(f.lhs()), r = naive_measures(f.rhs());
      l.vars.insert(r.vars.begin(), r.vars.end());
      l.d = l.d + r.d;
      l.D = std::max(l.D, r.D);
      return l;
    }
    default: {
      m = naive_measures(f.rhs());
      m.D += 1;
      return m;
    }
  }
}

// A model as explicit relation matrices over 0..n-1.
struct Kripke {
  std::size_t n = 0;
  std::vector<std::string> agents;
  std::vector<std::vector<std::vector<bool>>> rel;  // rel[a][s][t]
  std::map<std::string, std::vector<bool>> val;
  std::vector<std::string> vocab;

  bool holds_atom(const std::string& p, std::size_t s) const {
    auto it = val.find(p);
    return it != val.end() && it->second[s];
  }
};

inline Kripke to_kripke(const qpal::Model& m) {
  Kripke k;
  k.n = m.size();
  for (const auto& a : m.agents()) k.agents.push_back(a.name());
  for (std::size_t a = 0; a < m.agents().size(); ++a) {
    std::vector<std::vector<bool>> r(k.n, std::vector<bool>(k.n, false));
    for (std::size_t s = 0; s < k.n; ++s)
      for (std::size_t t = 0; t < k.n; ++t)
        r[s][t] = m.relation(a).block_containing(s).contains(t);
    k.rel.push_back(std::move(r));
  }
  for (const auto& p : m.vocabulary()) {
    k.vocab.push_back(p.name());
    std::vector<bool> v(k.n);
    for (std::size_t s = 0; s < k.n; ++s) v[s] = m.valuation(p).contains(s);
    k.val[p.name()] = v;
  }
  return k;
}

using Alive = std::vector<bool>;

// Greatest Q-bisimulation on the alive part, as a relation matrix, by fixpoint iteration on
// pairs. With `rounds` set, stops after that many refinement rounds (n-bisimilarity).
inline std::vector<std::vector<bool>> naive_bisim(const Kripke& k, const Alive& alive,
                                                  const std::vector<std::string>& q,
                                                  int rounds = -1) {
  std::size_t n = k.n;
  std::vector<std::vector<bool>> z(n, std::vector<bool>(n, false));
  for (std::size_t s = 0; s < n; ++s)
    for (std::size_t t = 0; t < n; ++t) {
      if (!alive[s] || !alive[t]) continue;
      bool same = true;
      for (const auto& p : q) same = same && k.holds_atom(p, s) == k.holds_atom(p, t);
      z[s][t] = same;
    }
  for (int round = 0; rounds < 0 || round < rounds; ++round) {
    auto next = z;
    bool changed = false;
    for (std::size_t s = 0; s < n; ++s)
      for (std::size_t t = 0; t < n; ++t) {
        if (!z[s][t]) continue;
        bool ok = true;
        for (std::size_t a = 0; a < k.agents.size() && ok; ++a) {
          for (std::size_t s2 = 0; s2 < n && ok; ++s2) {
            if (!alive[s2] || !k.rel[a][s][s2]) continue;
            bool found = false;
            for (std::size_t t2 = 0; t2 < n; ++t2)
              if (alive[t2] && k.rel[a][t][t2] && z[s2][t2]) found = true;
            ok = found;
          }
          for (std::size_t t2 = 0; t2 < n && ok; ++t2) {
            if (!alive[t2] || !k.rel[a][t][t2]) continue;
            bool found = false;
            for (std::size_t s2 = 0; s2 < n; ++s2)
              if (alive[s2] && k.rel[a][s][s2] && z[s2][t2]) found = true;
            ok = found;
          }
        }
        if (!ok) {
          next[s][t] = false;
          changed = true;
        }
      }
    z = std::move(next);
    if (!changed) break;
  }
  return z;
}

inline std::vector<Alive> naive_closed_sets(const Kripke& k, const Alive& alive,
                                            bool with_empty) {
  auto z = naive_bisim(k, alive, k.vocab);
  std::vector<std::size_t> states;
  for (std::size_t s = 0; s < k.n; ++s)
    if (alive[s]) states.push_back(s);
  std::vector<Alive> out;
  for (std::uint64_t mask = with_empty ? 0 : 1; mask < (std::uint64_t{1} << states.size());
       ++mask) {
    Alive x(k.n, false);
    for (std::size_t i = 0; i < states.size(); ++i)
      if ((mask >> i) & 1U) x[states[i]] = true;
    bool closed = true;
    for (std::size_t s : states)
      for (std::size_t t : states)
        if (z[s][t] && x[s] != x[t]) closed = false;
    if (closed) out.push_back(x);
  }
  return out;
}

inline Alive naive_kernel(const Kripke& k, std::size_t a, const Alive& alive, const Alive& x) {
  Alive out(k.n, false);
  for (std::size_t s = 0; s < k.n; ++s) {
    if (!alive[s]) continue;
    bool all = true;
    for (std::size_t t = 0; t < k.n; ++t)
      if (alive[t] && k.rel[a][s][t] && !x[t]) all = false;
    out[s] = all;
  }
  return out;
}

inline Alive meet(const Alive& x, const Alive& y) {
  Alive out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = x[i] && y[i];
  return out;
}

inline std::size_t agent_index(const Kripke& k, const qpal::AgentId& a) {
  auto it = std::find(k.agents.begin(), k.agents.end(), a.name());
  return static_cast<std::size_t>(it - k.agents.begin());
}

// Every joint announcement extension of the group: all choices of one closed set per agent.
inline std::vector<Alive> naive_family(const Kripke& k, const Alive& alive,
                                       const qpal::AgentGroup& g) {
  std::vector<Alive> fam{alive};
  auto closed = naive_closed_sets(k, alive, true);
  for (const auto& a : g) {
    std::size_t ai = agent_index(k, a);
    std::vector<Alive> next;
    for (const auto& e : fam)
      for (const auto& x : closed) {
        Alive m = meet(e, naive_kernel(k, ai, alive, x));
        if (std::find(next.begin(), next.end(), m) == next.end()) next.push_back(m);
      }
    fam = std::move(next);
  }
  return fam;
}

inline bool any(const Alive& x) { return std::find(x.begin(), x.end(), true) != x.end(); }

// Truth at s of the submodel on `alive`, straight from the semantic clauses.
inline bool naive_holds(const Kripke& k, const Alive& alive, std::size_t s, const Formula& f) {
  auto all_of_states = [&](const Formula& g) {
    Alive out(k.n, false);
    for (std::size_t t = 0; t < k.n; ++t) out[t] = alive[t] && naive_holds(k, alive, t, g);
    return out;
  };
  switch (f.op()) {
    case Op::Atom:
      return k.holds_atom(f.atom().name(), s);
    case Op::Top:
      return true;
    case Op::Bot:
      return false;
    case Op::Not:
      return !naive_holds(k, alive, s, f.rhs());
    case Op::And:
      return naive_holds(k, alive, s, f.lhs()) && naive_holds(k, alive, s, f.rhs());
    case Op::Or:
      return naive_holds(k, alive, s, f.lhs()) || naive_holds(k, alive, s, f.rhs());
    case Op::Imp:
      return !naive_holds(k, alive, s, f.lhs()) || naive_holds(k, alive, s, f.rhs());
    case Op::Know:
    case Op::MaybeKnow: {
      std::size_t a = agent_index(k, f.agent());
      bool box = f.op() == Op::Know;
      for (std::size_t t = 0; t < k.n; ++t) {
        if (!alive[t] || !k.rel[a][s][t]) continue;
        bool v = naive_holds(k, alive, t, f.rhs());
        if (box && !v) return false;
        if (!box && v) return true;
      }
      return box;
    }
    case Op::Announce:
    case Op::DiaAnnounce: {
      bool pre = naive_holds(k, alive, s, f.lhs());
      if (!pre) return f.op() == Op::Announce;
      return naive_holds(k, all_of_states(f.lhs()), s, f.rhs());
    }
    case Op::ArbBox:
    case Op::ArbDia: {
      bool box = f.op() == Op::ArbBox;
      for (const auto& x : naive_closed_sets(k, alive, false)) {
        if (!x[s]) continue;
        bool v = naive_holds(k, x, s, f.rhs());
        if (box && !v) return false;
        if (!box && v) return true;
      }
      return box;
    }
    case Op::GroupBox:
    case Op::GroupDia: {
      bool box = f.op() == Op::GroupBox;
      for (const auto& x : naive_family(k, alive, f.group())) {
        if (!x[s]) continue;
        bool v = naive_holds(k, x, s, f.rhs());
        if (box && !v) return false;
        if (!box && v) return true;
      }
      return box;
    }
    case Op::CoalBox:
    case Op::CoalDia: {
      // [<G>]f: every G-announcement true at s has a simultaneous counter making f true.
      // <[G]>f: some G-announcement true at s makes f true against every counter.
      qpal::AgentGroup others;
      for (const auto& a : k.agents)
        if (!f.group().contains(qpal::AgentId(a))) others.insert(qpal::AgentId(a));
      auto own = naive_family(k, alive, f.group());
      auto counter = naive_family(k, alive, others);
      bool box = f.op() == Op::CoalBox;
      for (const auto& e : own) {
        if (!e[s]) continue;
        bool some = false, every = true;
        for (const auto& c : counter) {
          Alive w = meet(e, c);
          if (!w[s]) continue;
          bool v = naive_holds(k, w, s, f.rhs());
          some = some || v;
          every = every && v;
        }
        if (box && !some) return false;
        if (!box && every) return true;
      }
      return box;
    }
  }
  return false;
}

inline std::vector<std::size_t> naive_extension(const qpal::Model& m, const Formula& f) {
  Kripke k = to_kripke(m);
  Alive all(k.n, true);
  std::vector<std::size_t> out;
  for (std::size_t s = 0; s < k.n; ++s)
    if (naive_holds(k, all, s, f)) out.push_back(s);
  return out;
}

// Every epistemic formula over `atoms` and `agents` up to modal depth `depth`, using
// literals, K, M, and binary conjunction/disjunction of smaller pieces (bounded by `limit`).
inline std::vector<Formula> small_formulas(const std::vector<std::string>& atoms,
                                           const std::vector<std::string>& agents, int depth,
                                           std::size_t limit) {
  std::vector<Formula> level;
  for (const auto& p : atoms) {
    level.push_back(qpal::atom(p));
    level.push_back(qpal::neg(qpal::atom(p)));
  }
  std::vector<Formula> all = level;
  for (int d = 1; d <= depth; ++d) {
    std::vector<Formula> next;
    for (const auto& f : all)
      for (const auto& a : agents) {
        next.push_back(qpal::know(a, f));
        next.push_back(qpal::maybe(a, f));
      }
    std::vector<Formula> combos;
    for (std::size_t i = 0; i < all.size() && combos.size() < limit; ++i)
      for (std::size_t j = i + 1; j < all.size() && combos.size() < limit; ++j) {
        combos.push_back(qpal::conj(all[i], all[j]));
        combos.push_back(qpal::disj(all[i], all[j]));
      }
    for (const auto& c : combos)
      for (const auto& a : agents) {
        if (next.size() > 4 * limit) break;
        next.push_back(qpal::maybe(a, c));
        next.push_back(qpal::know(a, c));
      }
    all.insert(all.end(), next.begin(), next.end());
  }
  return all;
}

}  // namespace oracle
