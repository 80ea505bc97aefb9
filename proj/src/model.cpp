#include "qpal/model.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>
#include <unordered_map>

#include "qpal/errors.hpp"

namespace qpal {

Partition Partition::from_blocks(std::size_t universe, std::vector<StateSet> blocks) {
  std::sort(blocks.begin(), blocks.end(),
            [](const StateSet& x, const StateSet& y) { return x.first() < y.first(); });
  Partition p;
  p.block_of.assign(universe, StateSet::npos);
  for (std::size_t b = 0; b < blocks.size(); ++b)
    blocks[b].for_each([&](std::size_t s) { p.block_of[s] = b; });
  p.blocks = std::move(blocks);
  return p;
}

Partition Partition::identity(std::size_t universe) {
  std::vector<StateSet> blocks;
  blocks.reserve(universe);
  for (std::size_t s = 0; s < universe; ++s) blocks.push_back(StateSet::of(universe, {s}));
  return from_blocks(universe, std::move(blocks));
}

namespace {

Partition partition_from_blocks(const Model::BlockList& list, const std::string& agent,
                                const std::unordered_map<std::string, std::size_t>& index,
                                const std::vector<std::string>& state_labels) {
  std::size_t n = state_labels.size();
  std::vector<StateSet> blocks;
  StateSet covered(n);
  for (const auto& labels : list) {
    if (labels.empty()) throw ModelError("relation for agent '" + agent + "' has an empty block");
    StateSet block(n);
    for (const auto& l : labels) {
      auto it = index.find(l);
      if (it == index.end())
        throw ModelError("relation for agent '" + agent + "' mentions unknown state '" + l + "'");
      if (covered.contains(it->second))
        throw ModelError("relation for agent '" + agent + "' is not a partition: state '" + l +
                         "' appears twice");
      covered.insert(it->second);
      block.insert(it->second);
    }
    blocks.push_back(block);
  }
  if (covered.count() != n) {
    std::size_t missing = covered.complement().first();
    throw ModelError("relation for agent '" + agent + "' is not a partition: state '" +
                     state_labels[missing] + "' is in no block");
  }
  return Partition::from_blocks(n, std::move(blocks));
}

Partition partition_from_edges(const Model::EdgeList& edges, const std::string& agent,
                               const std::unordered_map<std::string, std::size_t>& index,
                               const std::vector<std::string>& labels) {
  std::size_t n = labels.size();
  std::vector<StateSet> succ(n, StateSet(n));
  for (std::size_t s = 0; s < n; ++s) succ[s].insert(s);
  for (const auto& [from, to] : edges) {
    auto f = index.find(from);
    auto t = index.find(to);
    if (f == index.end() || t == index.end())
      throw ModelError("relation for agent '" + agent + "' mentions unknown state '" +
                       (f == index.end() ? from : to) + "'");
    succ[f->second].insert(t->second);
  }
  for (std::size_t s = 0; s < n; ++s) {
    std::string bad;
    succ[s].for_each([&](std::size_t t) {
      if (!bad.empty()) return;
      if (!succ[t].contains(s))
        bad = "not symmetric: (" + labels[s] + "," + labels[t] + ") without (" + labels[t] +
              "," + labels[s] + ")";
      else if (!(succ[t] == succ[s]))
        bad = "not transitive at (" + labels[s] + "," + labels[t] + ")";
    });
    if (!bad.empty())
      throw ModelError("relation for agent '" + agent + "' is not an equivalence relation: " + bad);
  }
  std::vector<StateSet> blocks;
  StateSet seen(n);
  for (std::size_t s = 0; s < n; ++s) {
    if (seen.contains(s)) continue;
    blocks.push_back(succ[s]);
    seen |= succ[s];
  }
  return Partition::from_blocks(n, std::move(blocks));
}

}  // namespace

Model Model::build(const Spec& spec) {
  if (spec.states.empty()) throw ModelError("a model needs at least one state");
  Model m;
  std::size_t n = spec.states.size();
  std::unordered_map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < n; ++i) {
    if (spec.states[i].empty()) throw ModelError("state labels must be nonempty");
    if (!index.emplace(spec.states[i], i).second)
      throw ModelError("duplicate state label '" + spec.states[i] + "'");
  }
  m.labels_ = spec.states;

  std::set<std::string> agent_names;
  for (const auto& a : spec.agents) {
    try {
      m.agents_.emplace_back(a);
    } catch (const std::invalid_argument& e) {
      throw ModelError(e.what());
    }
    if (!agent_names.insert(a).second) throw ModelError("duplicate agent '" + a + "'");
  }
  for (const auto& [agent, rel] : spec.relations)
    if (!agent_names.contains(agent))
      throw ModelError("relation given for undeclared agent '" + agent + "'");

  for (const auto& a : spec.agents) {
    auto it = spec.relations.find(a);
    if (it == spec.relations.end()) {
      m.relations_.push_back(Partition::identity(n));
    } else if (const auto* blocks = std::get_if<BlockList>(&it->second)) {
      m.relations_.push_back(partition_from_blocks(*blocks, a, index, spec.states));
    } else {
      m.relations_.push_back(
          partition_from_edges(std::get<EdgeList>(it->second), a, index, spec.states));
    }
  }

  try {
    for (const auto& [name, labels] : spec.valuation) {
      Atom p(name);
      StateSet ext(n);
      for (const auto& l : labels) {
        auto it = index.find(l);
        if (it == index.end())
          throw ModelError("valuation of '" + name + "' mentions unknown state '" + l + "'");
        ext.insert(it->second);
      }
      m.valuation_.emplace(p, ext);
      m.vocabulary_.insert(p);
    }
    for (const auto& name : spec.extra_vocabulary) m.vocabulary_.insert(Atom(name));
  } catch (const std::invalid_argument& e) {
    throw ModelError(e.what());
  }
  return m;
}

std::optional<std::size_t> Model::find_state(const std::string& label) const {
  auto it = std::find(labels_.begin(), labels_.end(), label);
  if (it == labels_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - labels_.begin());
}

std::size_t Model::state(const std::string& label) const {
  auto s = find_state(label);
  if (!s) throw ModelError("unknown state '" + label + "'");
  return *s;
}

std::optional<std::size_t> Model::agent_index(const AgentId& a) const {
  auto it = std::find(agents_.begin(), agents_.end(), a);
  if (it == agents_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - agents_.begin());
}

const Partition& Model::relation(const AgentId& a) const {
  auto i = agent_index(a);
  if (!i) throw EvalError("unknown agent '" + a.name() + "'");
  return relations_[*i];
}

StateSet Model::valuation(const Atom& p) const {
  auto it = valuation_.find(p);
  if (it == valuation_.end()) return StateSet(size());
  return it->second;
}

std::string Model::describe(const StateSet& s) const {
  std::string out = "{";
  bool first = true;
  s.for_each([&](std::size_t i) {
    if (!first) out += ',';
    first = false;
    out += labels_[i];
  });
  return out + "}";
}

PointedModel::PointedModel(Model m, std::size_t p) : model(std::move(m)), point(p) {
  if (point >= model.size()) throw ModelError("point out of range");
}

PointedModel::PointedModel(Model m, const std::string& point_label)
    : model(std::move(m)), point(model.state(point_label)) {}

std::vector<std::size_t> restriction_index(const StateSet& keep) {
  std::vector<std::size_t> index(keep.universe(), StateSet::npos);
  std::size_t next = 0;
  keep.for_each([&](std::size_t s) { index[s] = next++; });
  return index;
}

Model restrict(const Model& m, const StateSet& keep) {
  if (keep.empty()) throw ModelError("cannot restrict a model to the empty set");
  auto index = restriction_index(keep);
  std::size_t n = keep.count();
  auto map_set = [&](const StateSet& s) {
    StateSet out(n);
    (s & keep).for_each([&](std::size_t i) { out.insert(index[i]); });
    return out;
  };

  Model r;
  keep.for_each([&](std::size_t s) { r.labels_.push_back(m.labels_[s]); });
  r.agents_ = m.agents_;
  for (const auto& rel : m.relations_) {
    std::vector<StateSet> blocks;
    for (const auto& b : rel.blocks) {
      StateSet mapped = map_set(b);
      if (!mapped.empty()) blocks.push_back(std::move(mapped));
    }
    r.relations_.push_back(Partition::from_blocks(n, std::move(blocks)));
  }
  for (const auto& [p, ext] : m.valuation_) r.valuation_.emplace(p, map_set(ext));
  r.vocabulary_ = m.vocabulary_;
  return r;
}

Model disjoint_union(const Model& a, const Model& b) {
  AgentGroup ga(a.agents_.begin(), a.agents_.end());
  AgentGroup gb(b.agents_.begin(), b.agents_.end());
  if (ga != gb) throw ModelError("models declare different agents");

  std::size_t na = a.size(), n = a.size() + b.size();
  auto lift = [&](const StateSet& s, std::size_t offset) {
    StateSet out(n);
    s.for_each([&](std::size_t i) { out.insert(i + offset); });
    return out;
  };

  Model u;
  for (const auto& l : a.labels_) u.labels_.push_back("1:" + l);
  for (const auto& l : b.labels_) u.labels_.push_back("2:" + l);
  u.agents_ = a.agents_;
  for (std::size_t i = 0; i < a.agents_.size(); ++i) {
    const Partition& pb = b.relation(a.agents_[i]);
    std::vector<StateSet> blocks;
    for (const auto& blk : a.relations_[i].blocks) blocks.push_back(lift(blk, 0));
    for (const auto& blk : pb.blocks) blocks.push_back(lift(blk, na));
    u.relations_.push_back(Partition::from_blocks(n, std::move(blocks)));
  }
  u.vocabulary_ = a.vocabulary_;
  u.vocabulary_.insert(b.vocabulary_.begin(), b.vocabulary_.end());
  for (const auto& p : u.vocabulary_) {
    StateSet ext = lift(a.valuation(p), 0) | lift(b.valuation(p), na);
    if (a.valuation_.contains(p) || b.valuation_.contains(p)) u.valuation_.emplace(p, ext);
  }
  return u;
}

Model quotient_model(const Model& m, const Partition& blocks) {
  std::size_t k = blocks.size();
  Model q;
  for (const auto& b : blocks.blocks) q.labels_.push_back(m.labels_[b.first()]);
  q.agents_ = m.agents_;
  for (const auto& rel : m.relations_) {
    // Blocks whose members share an agent class end up together.
    std::vector<StateSet> images;
    StateSet seen(k);
    for (const auto& cls : rel.blocks) {
      StateSet image(k);
      cls.for_each([&](std::size_t s) { image.insert(blocks.block_of[s]); });
      if (image.intersects(seen)) {
        for (auto& prev : images)
          if (prev.intersects(image)) {
            if (!(prev == image)) throw ModelError("quotient_model: blocks are not a bisimulation");
          }
        continue;
      }
      seen |= image;
      images.push_back(image);
    }
    q.relations_.push_back(Partition::from_blocks(k, std::move(images)));
  }
  for (const auto& [p, ext] : m.valuation_) {
    StateSet image(k);
    for (std::size_t b = 0; b < k; ++b)
      if (ext.contains(blocks.blocks[b].first())) image.insert(b);
    q.valuation_.emplace(p, image);
  }
  q.vocabulary_ = m.vocabulary_;
  return q;
}

PointedModel example1_model() {
  Model::Spec spec;
  spec.states = {"s0", "s1", "t0", "t1"};
  spec.agents = {"a", "b"};
  spec.relations["a"] = Model::BlockList{{"s0", "t0"}, {"s1", "t1"}};
  spec.relations["b"] = Model::BlockList{{"s0", "s1"}, {"t0", "t1"}};
  spec.valuation["p"] = {"s0", "t0"};
  spec.valuation["q"] = {"s0", "s1"};
  return PointedModel(Model::build(spec), "s0");
}

PointedModel truncation(std::size_t n) {
  if (n == 0) throw ModelError("truncation needs N >= 1");
  auto s = [](std::size_t i) { return "s" + std::to_string(i); };
  auto t = [](std::size_t i) { return "t" + std::to_string(i); };
  auto u = [](std::size_t i) { return "u" + std::to_string(i); };

  Model::Spec spec;
  for (std::size_t i = 0; i <= n; ++i) spec.states.push_back(s(i));
  for (std::size_t k = 0; k <= 2 * n; ++k) spec.states.push_back(t(k));
  for (std::size_t k = 0; k <= 2 * n; ++k) spec.states.push_back(u(k));
  spec.agents = {"a", "b"};

  Model::BlockList a_blocks{{s(0), t(0)}};
  for (std::size_t i = 1; i <= n; ++i) a_blocks.push_back({s(i), t(2 * i - 1), t(2 * i)});
  for (std::size_t k = 0; k <= 2 * n; ++k) a_blocks.push_back({u(k)});
  spec.relations["a"] = a_blocks;

  Model::BlockList b_blocks(1);
  for (std::size_t i = 0; i <= n; ++i) b_blocks[0].push_back(s(i));
  for (std::size_t k = 0; k <= 2 * n; ++k) b_blocks.push_back({t(k), u(k)});
  spec.relations["b"] = b_blocks;

  auto& x = spec.valuation["x"];
  for (std::size_t i = 0; i <= n; ++i) x.push_back(s(i));
  for (std::size_t k = 0; k <= 2 * n; ++k) x.push_back(u(k));
  for (std::size_t j = 1; j <= 2 * n; ++j) {
    auto& pj = spec.valuation["p" + std::to_string(j)];
    for (std::size_t k = 1; k <= j; ++k) pj.push_back(u(k));
  }
  return PointedModel(Model::build(spec), "s0");
}

PointedModel figure2_model() {
  Model::Spec spec;
  spec.states = {"s0", "s1", "s2", "t0", "t1", "t2", "t3", "t4", "u0", "u1", "u2", "u3", "u4"};
  spec.agents = {"a", "b"};
  // Dashed edges of the figure, plus the transitive pairs of each triangle.
  spec.relations["a"] = Model::EdgeList{
      {"t0", "s0"}, {"s0", "t0"},
      {"t1", "t2"}, {"t2", "t1"}, {"t2", "s1"}, {"s1", "t2"}, {"t1", "s1"}, {"s1", "t1"},
      {"t3", "t4"}, {"t4", "t3"}, {"t4", "s2"}, {"s2", "t4"}, {"t3", "s2"}, {"s2", "t3"},
  };
  spec.relations["b"] = Model::EdgeList{
      {"s0", "s1"}, {"s1", "s0"}, {"s1", "s2"}, {"s2", "s1"}, {"s0", "s2"}, {"s2", "s0"},
      {"t0", "u0"}, {"u0", "t0"}, {"t1", "u1"}, {"u1", "t1"}, {"t2", "u2"}, {"u2", "t2"},
      {"t3", "u3"}, {"u3", "t3"}, {"t4", "u4"}, {"u4", "t4"},
  };
  spec.valuation["x"] = {"s0", "s1", "s2", "u0", "u1", "u2", "u3", "u4"};
  spec.valuation["p1"] = {"u1"};
  spec.valuation["p2"] = {"u1", "u2"};
  spec.valuation["p3"] = {"u1", "u2", "u3"};
  spec.valuation["p4"] = {"u1", "u2", "u3", "u4"};
  return PointedModel(Model::build(spec), "s0");
}

}  // namespace qpal
