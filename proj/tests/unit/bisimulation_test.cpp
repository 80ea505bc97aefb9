#include <doctest.h>

#include <random>
#include <set>

#include "../support/oracles.hpp"
#include "qpal/bisimulation.hpp"
#include "qpal/checker.hpp"
#include "qpal/errors.hpp"
#include "qpal/library.hpp"
#include "qpal/parser.hpp"
#include "qpal/random_model.hpp"
#include "qpal/semantics.hpp"

using namespace qpal;

namespace {

std::size_t st(const Model& m, const char* l) { return m.state(l); }

std::vector<std::string> names(const AtomSet& q) {
  std::vector<std::string> out;
  for (const auto& p : q) out.push_back(p.name());
  return out;
}

bool same_block(const Partition& p, std::size_t s, std::size_t t) {
  return p.block_of[s] == p.block_of[t];
}

}  // namespace

TEST_CASE("quotient examples") {
  Model e = example1_model().model;
  CHECK(quotient(e, e.vocabulary()).size() == 4);

  Model::Spec spec;
  spec.states = {"v", "w"};
  spec.agents = {"a"};
  spec.relations["a"] = Model::BlockList{{"v", "w"}};
  CHECK(quotient(Model::build(spec), AtomSet{}).size() == 1);

  Model t = truncation(2).model;
  Partition q = quotient(t, AtomSet{Atom("x"), Atom("p1")});
  CHECK(same_block(q, st(t, "s0"), st(t, "s2")));
  CHECK_FALSE(same_block(q, st(t, "s0"), st(t, "s1")));
  CHECK(quotient(t).size() == 13);
}

TEST_CASE("refinement stages on truncation(2)") {
  Model t = truncation(2).model;
  Refinement r = refine(t, t.all_states(), t.vocabulary());
  REQUIRE(r.stages.size() == 3);
  CHECK(r.stages[0].size() == 6);
  CHECK(r.stages[1].size() == 11);
  CHECK(r.stages[2].size() == 13);
  CHECK(r.at(10) == r.stable());
}

TEST_CASE("bisimilar examples") {
  PointedModel e = example1_model();
  CHECK(bisimilar(e, e, e.model.vocabulary()));
  CHECK_FALSE(bisimilar(e, PointedModel(e.model, "s1"), e.model.vocabulary(), 0));

  PointedModel t3 = truncation(3);
  AtomSet q{Atom("x"), Atom("p1")};
  CHECK(bisimilar(t3, PointedModel(t3.model, "s2"), q));
  CHECK(bisimilar(t3, PointedModel(t3.model, "s3"), q));
  CHECK_FALSE(bisimilar(t3, PointedModel(t3.model, "s1"), q));

  Model::Spec other;
  other.states = {"w"};
  other.agents = {"c"};
  CHECK_THROWS_AS(bisimilar(e, PointedModel(Model::build(other), 0), AtomSet{}), ModelError);
}

TEST_CASE("bisimilarity across two models") {
  // A model and the same model with every state duplicated are bisimilar point by point.
  PointedModel e = example1_model();
  Model doubled = disjoint_union(e.model, e.model);
  for (std::size_t s = 0; s < e.model.size(); ++s) {
    CHECK(bisimilar(PointedModel(e.model, s), PointedModel(doubled, s + e.model.size()),
                    e.model.vocabulary()));
  }
}

TEST_CASE("refinement agrees with the pairwise fixpoint") {
  std::mt19937_64 rng(31);
  for (int i = 0; i < 200; ++i) {
    PointedModel pm = random_model(rng);
    const Model& m = pm.model;
    oracle::Kripke k = oracle::to_kripke(m);
    oracle::Alive all(m.size(), true);
    for (const AtomSet& q : {m.vocabulary(), AtomSet{Atom("x")}, AtomSet{}}) {
      Refinement r = refine(m, m.all_states(), q);
      for (int n = 0; n <= static_cast<int>(m.size()); ++n) {
        auto z = oracle::naive_bisim(k, all, names(q), n);
        const Partition& p = r.at(static_cast<std::size_t>(n));
        for (std::size_t s = 0; s < m.size(); ++s)
          for (std::size_t t = 0; t < m.size(); ++t) CHECK(same_block(p, s, t) == z[s][t]);
      }
      auto z = oracle::naive_bisim(k, all, names(q));
      for (std::size_t s = 0; s < m.size(); ++s)
        for (std::size_t t = 0; t < m.size(); ++t)
          CHECK(same_block(r.stable(), s, t) == z[s][t]);
    }
  }
}

TEST_CASE("refinement is monotone and stops when stable") {
  std::mt19937_64 rng(32);
  for (int i = 0; i < 200; ++i) {
    Model m = random_model(rng).model;
    Refinement r = refine(m, m.all_states(), m.vocabulary());
    CHECK(r.stages.size() <= m.size());
    for (std::size_t k = 1; k < r.stages.size(); ++k) {
      CHECK(r.stages[k].size() > r.stages[k - 1].size());
      for (const auto& b : r.stages[k].blocks)
        CHECK(b.is_subset_of(r.stages[k - 1].block_containing(b.first())));
    }
  }
}

TEST_CASE("closed set enumeration") {
  Model::Spec spec;
  spec.states = {"w"};
  Model one = Model::build(spec);
  auto sets = closed_sets(one, one.vocabulary());
  REQUIRE(sets.size() == 1);
  CHECK(sets[0] == one.all_states());

  Model e = example1_model().model;
  CHECK(closed_sets(e, e.vocabulary()).size() == 15);

  Model t = truncation(2).model;
  Partition q = quotient(t);
  ClosedSetEnumerator en(q, t.size());
  std::set<std::vector<std::size_t>> seen;
  std::size_t count = 0;
  while (en.next()) {
    ++count;
    CHECK(is_block_closed(q, en.current()));
    seen.insert(en.current().members());
  }
  CHECK(count == 8191);
  CHECK(seen.size() == 8191);
  CHECK(en.total() == 8191);

  CHECK_THROWS_AS(ClosedSetEnumerator(q, t.size(), 12), ResourceError);
  CHECK_THROWS_AS(closed_sets(truncation(5).model, truncation(5).model.vocabulary()),
                  ResourceError);
}

TEST_CASE("characteristic formula examples") {
  Model e = example1_model().model;
  StateSet x = StateSet::of(4, {st(e, "s0"), st(e, "t0")});
  Formula f = characteristic_formula(e, x, e.vocabulary());
  CHECK(is_epistemic(f));
  CHECK(extension(e, f) == x);
  CHECK(extension(e, characteristic_formula(e, e.all_states(), e.vocabulary())) ==
        e.all_states());
  CHECK(characteristic_formula(e, e.all_states(), e.vocabulary()) == top());

  Model t1 = truncation(1).model;
  StateSet kept = extension(t1, library::stem_witness(1));
  Formula g = characteristic_formula(t1, kept, t1.vocabulary());
  CHECK(extension(t1, g) == kept);

  Model t = truncation(2).model;
  Partition q = quotient(t, AtomSet{Atom("x"), Atom("p1")});
  StateSet open_set = StateSet::of(t.size(), {st(t, "s0")});
  CHECK_THROWS_AS(characteristic_formula(t, open_set, AtomSet{Atom("x"), Atom("p1")}),
                  ModelError);
}

TEST_CASE("characteristic formulas define every closed set") {
  std::mt19937_64 rng(33);
  std::vector<Model> corpus{example1_model().model, truncation(1).model};
  for (int i = 0; i < 60; ++i) corpus.push_back(random_model(rng).model);
  for (const Model& m : corpus) {
    Partition q = quotient(m);
    if (q.size() > 6) continue;
    for (const StateSet& x : closed_sets(m, m.vocabulary())) {
      Formula f = characteristic_formula(m, x, m.vocabulary());
      CHECK(is_epistemic(f));
      for (const auto& p : measures(f).vars) CHECK(m.vocabulary().contains(p));
      CHECK(extension(m, f) == x);
    }
  }
}

TEST_CASE("epistemic extensions are block closed") {
  std::mt19937_64 rng(34);
  oracle::FormulaShape shape;
  shape.announcements = false;
  for (int i = 0; i < 1000; ++i) {
    Model m = random_model(rng).model;
    Formula f = oracle::random_formula(rng, 4, shape);
    AtomSet q = m.vocabulary();
    for (const auto& p : measures(f).vars) q.insert(p);
    CHECK(is_block_closed(quotient(m, q), extension(m, f)));
  }
}

TEST_CASE("n-bisimilar points agree on formulas of depth at most n") {
  std::mt19937_64 rng(35);
  std::vector<std::string> atoms{"x", "p1"};
  std::vector<std::string> agents{"a", "b"};
  auto corpus = oracle::small_formulas(atoms, agents, 2, 40);
  REQUIRE(corpus.size() > 300);
  RandomModelOptions opts;
  opts.max_states = 4;
  opts.atoms = {"x", "p1"};
  std::size_t compared = 0;
  for (int i = 0; i < 40; ++i) {
    Model m = random_model(rng, opts).model;
    Refinement r = refine(m, m.all_states(), m.vocabulary());
    std::vector<StateSet> ext;
    for (const auto& f : corpus) ext.push_back(extension(m, f));
    for (std::size_t n = 0; n <= 2; ++n) {
      const Partition& p = r.at(n);
      for (std::size_t s = 0; s < m.size(); ++s)
        for (std::size_t t = s + 1; t < m.size(); ++t) {
          if (!same_block(p, s, t)) continue;
          for (std::size_t j = 0; j < corpus.size(); ++j) {
            if (measures(corpus[j]).modal_depth > n) continue;
            ++compared;
            CHECK(ext[j].contains(s) == ext[j].contains(t));
          }
        }
    }
  }
  CHECK(compared > 0);
}

TEST_CASE("n-bisimilarity does not preserve quantified formulas") {
  // Search truncation models for two points that are Q-n-bisimilar yet differ on a quantified
  // formula over Q whose modal depth is at most n.
  struct Found {
    std::size_t trunc, depth;
    std::string q, s, t, formula;
  };
  std::optional<Found> found;
  const std::pair<std::string, Formula> candidates[] = {{"stem", library::stem()},
                                                        {"root", library::root()}};
  for (std::size_t n = 1; n <= 2 && !found; ++n) {
    PointedModel pm = truncation(n);
    const Model& m = pm.model;
    Checker c(m);
    const std::pair<std::string, AtomSet> vocabularies[] = {
        {"vocabulary", m.vocabulary()}, {"x", AtomSet{Atom("x")}},
        {"x,p1", AtomSet{Atom("x"), Atom("p1")}}};
    for (const auto& [qname, q] : vocabularies) {
      Refinement r = refine(m, m.all_states(), q);
      for (std::size_t depth = 1; depth <= 3 && !found; ++depth) {
        const Partition& p = r.at(depth);
        for (const auto& [fname, f] : candidates) {
          Measures ms = measures(f);
          if (ms.modal_depth > depth) continue;
          bool within = true;
          for (const auto& v : ms.vars) within = within && q.contains(v);
          if (!within) continue;
          StateSet e = c.extension(f);
          for (std::size_t s = 0; s < m.size() && !found; ++s)
            for (std::size_t t = s + 1; t < m.size() && !found; ++t)
              if (same_block(p, s, t) && e.contains(s) != e.contains(t))
                found = Found{n, depth, qname, m.label(s), m.label(t), fname};
        }
      }
      if (found) break;
    }
  }
  REQUIRE(found.has_value());
  MESSAGE("truncation(" << found->trunc << "): " << found->s << " and " << found->t << " are {"
                        << found->q << "}-" << found->depth << "-bisimilar but differ on "
                        << found->formula);
  CHECK_FALSE(bisimilar(PointedModel(truncation(found->trunc).model, found->s),
                        PointedModel(truncation(found->trunc).model, found->t),
                        truncation(found->trunc).model.vocabulary()));
}
