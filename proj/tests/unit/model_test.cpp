#include <doctest.h>

#include <random>

#include "qpal/errors.hpp"
#include "qpal/model.hpp"
#include "qpal/model_json.hpp"
#include "qpal/random_model.hpp"

using namespace qpal;

namespace {

Model::Spec example1_spec() {
  Model::Spec spec;
  spec.states = {"s0", "s1", "t0", "t1"};
  spec.agents = {"a", "b"};
  spec.relations["a"] = Model::BlockList{{"s0", "t0"}, {"s1", "t1"}};
  spec.relations["b"] = Model::BlockList{{"s0", "s1"}, {"t0", "t1"}};
  spec.valuation["p"] = {"s0", "t0"};
  spec.valuation["q"] = {"s0", "s1"};
  return spec;
}

StateSet labels(const Model& m, std::initializer_list<const char*> ls) {
  StateSet s(m.size());
  for (const char* l : ls) s.insert(m.state(l));
  return s;
}

void check_partition(const Partition& p, std::size_t n) {
  StateSet seen(n);
  for (std::size_t b = 0; b < p.size(); ++b) {
    CHECK_FALSE(p.blocks[b].empty());
    CHECK_FALSE(seen.intersects(p.blocks[b]));
    seen |= p.blocks[b];
    p.blocks[b].for_each([&](std::size_t s) { CHECK(p.block_of[s] == b); });
  }
  CHECK(seen == StateSet::full(n));
}

}  // namespace

TEST_CASE("StateSet basics") {
  for (std::size_t n : {0u, 1u, 5u, 63u, 64u, 65u, 130u}) {
    StateSet full = StateSet::full(n);
    CHECK(full.count() == n);
    CHECK(full.complement().empty());
    CHECK(StateSet(n).complement() == full);
    if (n > 3) {
      StateSet s = StateSet::of(n, {0, 2, n - 1});
      CHECK(s.members() == std::vector<std::size_t>{0, 2, n - 1});
      CHECK(s.next(1) == 2);
      CHECK(s.next(n - 1) == n - 1);
      CHECK((s - StateSet::of(n, {2})).count() == 2);
      CHECK((s & s.complement()).empty());
      CHECK((s | s.complement()) == full);
      CHECK(s.is_subset_of(full));
      CHECK_FALSE(full.is_subset_of(s));
    }
  }
  CHECK(witness_order(StateSet::of(4, {3}), StateSet::of(4, {0, 1})));
  CHECK(witness_order(StateSet::of(4, {0, 1}), StateSet::of(4, {0, 2})));
  CHECK_FALSE(witness_order(StateSet::of(4, {0, 2}), StateSet::of(4, {0, 2})));
}

TEST_CASE("build the example1 model") {
  Model m = Model::build(example1_spec());
  CHECK(m.size() == 4);
  CHECK(m.valuation(Atom("q")) == labels(m, {"s0", "s1"}));
  CHECK(m.relation(AgentId("b")).block_containing(m.state("s0")) == labels(m, {"s0", "s1"}));
  CHECK(m.relation(AgentId("b")).block_containing(m.state("t1")) == labels(m, {"t0", "t1"}));
  CHECK(m.vocabulary() == AtomSet{Atom("p"), Atom("q")});
  CHECK(m.valuation(Atom("zzz")).empty());
  CHECK_THROWS_AS(m.relation(AgentId("c")), EvalError);

  PointedModel pm = example1_model();
  CHECK(pm.point_label() == "s0");
  CHECK(pm.model == m);
}

TEST_CASE("single state with no relations") {
  Model::Spec spec;
  spec.states = {"w"};
  spec.agents = {"a"};
  Model m = Model::build(spec);
  CHECK(m.relation(AgentId("a")).size() == 1);
  CHECK(m.vocabulary().empty());
}

TEST_CASE("edge lists must already be equivalence relations") {
  Model::Spec spec;
  spec.states = {"s0", "t0", "u"};
  spec.agents = {"a"};
  spec.relations["a"] = Model::EdgeList{{"s0", "t0"}};
  CHECK_THROWS_AS(Model::build(spec), ModelError);
  try {
    Model::build(spec);
  } catch (const ModelError& e) {
    CHECK(std::string(e.what()).find("symmetric") != std::string::npos);
  }

  spec.relations["a"] = Model::EdgeList{{"s0", "t0"}, {"t0", "s0"}};
  Model m = Model::build(spec);
  CHECK(m.relation(AgentId("a")).size() == 2);

  spec.relations["a"] = Model::EdgeList{{"s0", "t0"}, {"t0", "s0"}, {"t0", "u"}, {"u", "t0"}};
  CHECK_THROWS_AS(Model::build(spec), ModelError);
}

TEST_CASE("build rejects malformed specs") {
  Model::Spec spec = example1_spec();
  spec.states.clear();
  CHECK_THROWS_AS(Model::build(spec), ModelError);

  spec = example1_spec();
  spec.states.push_back("s0");
  CHECK_THROWS_AS(Model::build(spec), ModelError);

  spec = example1_spec();
  spec.valuation["p"].push_back("nowhere");
  CHECK_THROWS_AS(Model::build(spec), ModelError);

  spec = example1_spec();
  spec.relations["a"] = Model::BlockList{{"s0", "t0"}, {"t0", "s1", "t1"}};
  CHECK_THROWS_AS(Model::build(spec), ModelError);

  spec = example1_spec();
  spec.relations["a"] = Model::BlockList{{"s0", "t0"}, {"s1"}};
  CHECK_THROWS_AS(Model::build(spec), ModelError);

  spec = example1_spec();
  spec.relations["c"] = Model::BlockList{{"s0", "t0", "s1", "t1"}};
  CHECK_THROWS_AS(Model::build(spec), ModelError);
}

TEST_CASE("restrict matches the example1 updates") {
  PointedModel pm = example1_model();
  const Model& m = pm.model;

  Model mid = restrict(m, labels(m, {"s0", "t0", "t1"}));
  CHECK(mid.labels() == std::vector<std::string>{"s0", "t0", "t1"});
  CHECK(mid.relation(AgentId("a")).size() == 2);
  CHECK(mid.relation(AgentId("b")).block_containing(mid.state("t0")) ==
        labels(mid, {"t0", "t1"}));
  CHECK(mid.valuation(Atom("q")) == labels(mid, {"s0"}));
  CHECK(mid.vocabulary() == m.vocabulary());

  Model right = restrict(m, labels(m, {"s0", "t0"}));
  CHECK(right.size() == 2);
  CHECK(right.relation(AgentId("a")).size() == 1);
  CHECK(right.relation(AgentId("b")).size() == 2);

  CHECK(restrict(m, m.all_states()) == m);
  CHECK_THROWS_AS(restrict(m, m.empty_set()), ModelError);
}

TEST_CASE("restrict keeps partitions valid and composes") {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 200; ++i) {
    PointedModel pm = random_model(rng);
    const Model& m = pm.model;
    for (const auto& a : m.agents()) check_partition(m.relation(a), m.size());

    std::uniform_int_distribution<std::uint64_t> mask(1, (std::uint64_t{1} << m.size()) - 1);
    StateSet x(m.size()), y(m.size());
    std::uint64_t mx = mask(rng), my = mask(rng);
    for (std::size_t s = 0; s < m.size(); ++s) {
      if ((mx >> s) & 1U) x.insert(s);
      if ((my >> s) & 1U) y.insert(s);
    }
    Model rx = restrict(m, x);
    for (const auto& a : rx.agents()) check_partition(rx.relation(a), rx.size());
    if (!(x & y).empty()) {
      auto index = restriction_index(x);
      StateSet y_in_x(rx.size());
      (x & y).for_each([&](std::size_t s) { y_in_x.insert(index[s]); });
      CHECK(restrict(rx, y_in_x) == restrict(m, x & y));
    }
  }
}

TEST_CASE("truncation shapes") {
  for (std::size_t n = 1; n <= 5; ++n) {
    PointedModel pm = truncation(n);
    const Model& m = pm.model;
    CHECK(m.size() == 5 * n + 3);
    CHECK(pm.point_label() == "s0");
    CHECK(m.vocabulary().size() == 2 * n + 1);
    const Partition& a = m.relation(AgentId("a"));
    const Partition& b = m.relation(AgentId("b"));
    for (std::size_t s = 0; s < m.size(); ++s)
      CHECK((a.block_containing(s) & b.block_containing(s)).count() == 1);
    CHECK(a.block_containing(m.state("s0")) == labels(m, {"s0", "t0"}));
    for (std::size_t i = 1; i <= n; ++i) {
      StateSet blk(m.size());
      blk.insert(m.state("s" + std::to_string(i)));
      blk.insert(m.state("t" + std::to_string(2 * i - 1)));
      blk.insert(m.state("t" + std::to_string(2 * i)));
      CHECK(a.block_containing(m.state("s" + std::to_string(i))) == blk);
    }
    for (std::size_t k = 0; k <= 2 * n; ++k) {
      std::string t = "t" + std::to_string(k), u = "u" + std::to_string(k);
      CHECK(b.block_containing(m.state(t)) == labels(m, {t.c_str(), u.c_str()}));
      CHECK(a.block_containing(m.state(u)).count() == 1);
    }
    CHECK(b.block_containing(m.state("s0")).count() == n + 1);
  }
  CHECK_THROWS_AS(truncation(0), ModelError);
}

TEST_CASE("truncation valuation") {
  Model m = truncation(1).model;
  CHECK(m.valuation(Atom("p1")) == labels(m, {"u1"}));
  CHECK(m.valuation(Atom("p2")) == labels(m, {"u1", "u2"}));
  CHECK(m.valuation(Atom("x")) == labels(m, {"s0", "s1", "u0", "u1", "u2"}));
  CHECK(m.valuation(Atom("p3")).empty());
}

TEST_CASE("the hand-listed figure model is truncation(2)") {
  PointedModel fig = figure2_model();
  PointedModel t = truncation(2);
  CHECK(fig.model == t.model);
  CHECK(fig.point == t.point);
  CHECK(fig.model.size() == 13);
}

TEST_CASE("disjoint union") {
  Model m = example1_model().model;
  Model u = disjoint_union(m, m);
  CHECK(u.size() == 8);
  CHECK(u.label(0) == "1:s0");
  CHECK(u.label(4) == "2:s0");
  CHECK(u.valuation(Atom("p")).count() == 4);
  CHECK(u.relation(AgentId("a")).size() == 4);

  Model::Spec other;
  other.states = {"w"};
  other.agents = {"c"};
  CHECK_THROWS_AS(disjoint_union(m, Model::build(other)), ModelError);
}

TEST_CASE("JSON round trip and validation") {
  for (const PointedModel& pm : {example1_model(), truncation(2)}) {
    nlohmann::json j = to_json(pm);
    PointedModel back = pointed_model_from_json(j);
    CHECK(back.model == pm.model);
    CHECK(back.point == pm.point);
  }

  auto j = nlohmann::json::parse(R"({"agents":["a","b"], "states":["s0","s1"],
      "relations":{"a":[["s0"],["s1"]],"b":[["s0","s1"]]},
      "valuation":{"p":["s0"]}, "vocabulary":["p","q"], "point":"s1"})");
  PointedModel pm = pointed_model_from_json(j);
  CHECK(pm.point_label() == "s1");
  CHECK(pm.model.vocabulary() == AtomSet{Atom("p"), Atom("q")});

  auto bad = j;
  bad["colour"] = "red";
  CHECK_THROWS_AS(pointed_model_from_json(bad), ModelError);
  bad = j;
  bad["point"] = "s9";
  CHECK_THROWS_AS(pointed_model_from_json(bad), ModelError);
  bad = j;
  bad["relations"]["a"] = nlohmann::json::parse(R"([["s0","s1"],["s1"]])");
  CHECK_THROWS_AS(pointed_model_from_json(bad), ModelError);
  bad = j;
  bad.erase("states");
  CHECK_THROWS_AS(pointed_model_from_json(bad), ModelError);
  CHECK_THROWS_AS(load_pointed_model("/nonexistent/model.json"), ModelError);
}

TEST_CASE("quotient model of example1 is itself") {
  Model m = example1_model().model;
  Partition id = Partition::identity(m.size());
  CHECK(quotient_model(m, id) == m);
}
