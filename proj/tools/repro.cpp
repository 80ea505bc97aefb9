#include "repro.hpp"

#include <chrono>
#include <functional>
#include <iomanip>
#include <random>
#include <sstream>

#include "qpal/library.hpp"
#include "qpal/parser.hpp"
#include "qpal/random_model.hpp"

namespace qpal::repro {

using nlohmann::json;

bool Report::passed() const {
  for (const auto& c : claims)
    if (!c.pass()) return false;
  return true;
}

json Report::to_json(bool timing) const {
  json out;
  out["suite"] = suite;
  out["passed"] = passed();
  out["claims"] = json::array();
  for (const auto& c : claims) {
    json j;
    j["id"] = c.id;
    j["description"] = c.description;
    j["expected"] = c.expected;
    j["computed"] = c.computed;
    j["pass"] = c.pass();
    if (c.kept) {
      j["certificate"] = {{"kept", *c.kept}, {"formula", c.formula.value_or("")}};
    } else {
      j["certificate"] = nullptr;
    }
    if (timing) j["elapsed_ms"] = c.elapsed_ms;
    out["claims"].push_back(std::move(j));
  }
  return out;
}

std::string Report::to_table(bool timing) const {
  std::size_t width = 5;
  for (const auto& c : claims) width = std::max(width, c.id.size());
  std::ostringstream os;
  os << suite << "\n";
  for (const auto& c : claims) {
    os << "  " << (c.pass() ? "ok  " : "FAIL") << "  " << std::left << std::setw(int(width))
       << c.id << "  expected " << std::setw(6) << c.expected.dump() << " computed "
       << std::setw(6) << c.computed.dump();
    if (timing) os << "  " << std::fixed << std::setprecision(1) << c.elapsed_ms << " ms";
    os << "  " << c.description << "\n";
    if (c.kept) {
      os << "        kept {";
      for (std::size_t i = 0; i < c.kept->size(); ++i) os << (i ? "," : "") << (*c.kept)[i];
      os << "}";
      if (c.formula) os << " by " << *c.formula;
      os << "\n";
    }
  }
  std::size_t failed = 0;
  for (const auto& c : claims) failed += !c.pass();
  os << (failed == 0 ? "all " + std::to_string(claims.size()) + " claims pass"
                     : std::to_string(failed) + " of " + std::to_string(claims.size()) +
                           " claims FAIL")
     << "\n";
  return os.str();
}

namespace {

std::vector<std::string> labels_of(const Model& m, const StateSet& s) {
  std::vector<std::string> out;
  s.for_each([&](std::size_t i) { out.push_back(m.label(i)); });
  return out;
}

/// Runs `compute` and records its result and running time.
Claim timed(std::string id, std::string description, json expected,
            const std::function<json(Claim&)>& compute) {
  Claim c;
  c.id = std::move(id);
  c.description = std::move(description);
  c.expected = std::move(expected);
  auto start = std::chrono::steady_clock::now();
  c.computed = compute(c);
  c.elapsed_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return c;
}

void attach(Claim& c, const Model& m, const Certificate& cert) {
  c.kept = labels_of(m, cert.kept);
  c.formula = render(cert.defining_formula);
}

Report bundle(const PointedModel& pm, std::size_t n, CheckOptions opts, std::string suite) {
  const Model& m = pm.model;
  Report r;
  r.suite = std::move(suite);
  Checker c(m, opts);
  std::size_t s0 = m.state("s0");

  r.claims.push_back(timed("relations.identity", "a and b relations intersect in the identity",
                           true, [&](Claim&) {
                             const Partition& a = m.relation(AgentId("a"));
                             const Partition& b = m.relation(AgentId("b"));
                             for (std::size_t s = 0; s < m.size(); ++s)
                               if ((a.block_containing(s) & b.block_containing(s)).count() != 1)
                                 return false;
                             return true;
                           }));

  r.claims.push_back(timed("root.s0", "root holds at s0", true,
                           [&](Claim&) { return c.holds(s0, library::root()); }));
  for (std::size_t i = 1; i <= n; ++i) {
    std::string s = "s" + std::to_string(i);
    r.claims.push_back(timed("stem." + s, "stem holds at " + s, true,
                             [&](Claim&) { return c.holds(m.state(s), library::stem()); }));
  }
  r.claims.push_back(timed("stem.complement", "stem holds exactly where root fails", true,
                           [&](Claim&) {
                             return c.extension(library::stem()) ==
                                    c.extension(library::root()).complement();
                           }));

  FmpReport fmp;
  r.claims.push_back(timed("apal.conjunct1", "tier & M b root & M b stem at s0", true,
                           [&](Claim&) {
                             fmp = check_fmp_suite(pm, opts);
                             return fmp.variants[0].conjunct[0];
                           }));
  r.claims.push_back(timed("apal.conjunct2", "K b (stem -> dia (tier & K b stem)) at s0", true,
                           [&](Claim&) { return fmp.variants[0].conjunct[1]; }));
  r.claims.push_back(timed("apal.conjunct3", "K b (root -> box (tier -> M b stem)) at s0",
                           false, [&](Claim& cl) {
                             for (const auto& w : fmp.variants[0].witnesses)
                               if (w.role == "root refutation" && w.certificate) {
                                 attach(cl, m, *w.certificate);
                                 break;
                               }
                             return fmp.variants[0].conjunct[2];
                           }));
  for (std::size_t v = 0; v < fmp.variants.size(); ++v) {
    const auto& var = fmp.variants[v];
    std::string name = v == 0 ? "fmp" : "fmp_" + var.name;
    r.claims.push_back(timed(var.name + ".fmp", name + " fails at s0", false,
                             [&](Claim&) { return var.fmp; }));
  }

  Formula refuter = library::root_refuter(2 * n);
  Formula refuted = conj(library::tier(), know("b", neg(library::stem())));
  StateSet refuter_ext = c.extension(refuter);
  std::vector<std::string> expected_ext{"s0", "t0"};
  for (std::size_t k = 0; k <= 2 * n; ++k) expected_ext.push_back("u" + std::to_string(k));
  std::sort(expected_ext.begin(), expected_ext.end(),
            [&](const std::string& x, const std::string& y) { return m.state(x) < m.state(y); });
  r.claims.push_back(timed("refuter.extension", "states where " + render(refuter) + " holds",
                           expected_ext,
                           [&](Claim&) { return labels_of(m, refuter_ext); }));
  r.claims.push_back(timed("refuter.valid",
                           "announcing it makes tier & K b ~stem true at s0", true,
                           [&](Claim& cl) {
                             cl.kept = labels_of(m, refuter_ext);
                             cl.formula = render(refuter);
                             return c.verify_witness(s0, refuted, AnnouncementMode::arbitrary(),
                                                     refuter_ext);
                           }));

  Formula escaped = conj(library::tier(), know("b", library::stem()));
  for (std::size_t i = 1; i <= n; ++i) {
    std::string s = "s" + std::to_string(i);
    Formula w = library::stem_witness(i);
    r.claims.push_back(timed("stem_witness." + std::to_string(i),
                             "<" + render(w) + "> (tier & K b stem) at " + s, true,
                             [&](Claim& cl) {
                               cl.kept = labels_of(m, c.extension(w));
                               cl.formula = render(w);
                               return c.holds(m.state(s), dia_announce(w, escaped));
                             }));
  }

  AtomSet q{Atom("x"), Atom("p1")};
  for (std::size_t i = 1; i <= n; ++i) {
    std::string s = "s" + std::to_string(i);
    r.claims.push_back(timed("bisim.x,p1.s0~" + s, "s0 and " + s + " are {x,p1}-bisimilar",
                             i >= 2, [&](Claim&) {
                               return bisimilar(pm, PointedModel(m, s), q);
                             }));
  }
  return r;
}

}  // namespace

Report example1(CheckOptions opts) {
  PointedModel pm = example1_model();
  Checker c(pm.model, opts);
  Report r;
  r.suite = "example1";
  auto claim = [&](std::string id, const std::string& text, bool expected,
                   AnnouncementMode mode) {
    Formula f = parse(text);
    r.claims.push_back(timed(std::move(id), text + " at s0", expected, [&](Claim& cl) {
      bool value = c.holds(pm.point, f);
      if (value) {
        if (auto cert = c.diamond_witness(pm.point, f.rhs(), mode)) attach(cl, pm.model, *cert);
      }
      return value;
    }));
  };
  AgentGroup a = make_group({"a"});
  claim("dia.phi", "dia (M a K b p & M a M b ~p)", true, AnnouncementMode::arbitrary());
  claim("group.a.phi", "<{a}> (M a K b p & M a M b ~p)", false, AnnouncementMode::of_group(a));
  claim("group.a.chi", "<{a}> (K b q & ~K a q)", true, AnnouncementMode::of_group(a));
  claim("coalition.a.chi", "<[{a}]> (K b q & ~K a q)", false, AnnouncementMode::coalition(a));
  return r;
}

Report truncation(std::size_t n, CheckOptions opts, const std::string& suite) {
  return bundle(qpal::truncation(n), n, opts,
                suite.empty() ? "truncation " + std::to_string(n) : suite);
}

Report fig2(CheckOptions opts) { return bundle(figure2_model(), 2, opts, "fig2"); }

Report random_sweep(std::size_t models, std::size_t max_states, std::uint64_t seed,
                    CheckOptions opts) {
  std::mt19937_64 rng(seed);
  RandomModelOptions ropts;
  ropts.max_states = max_states;
  std::vector<PointedModel> corpus;
  for (std::size_t k = 0; k < models; ++k) corpus.push_back(random_model(rng, ropts));

  Report r;
  r.suite = "random-sweep " + std::to_string(models) + " " + std::to_string(max_states);
  const std::pair<const char*, Formula> formulas[] = {
      {"fmp", library::fmp()}, {"fmp_gal", library::fmp_gal()}, {"fmp_cal", library::fmp_cal()}};
  for (const auto& [name, f] : formulas) {
    r.claims.push_back(timed(std::string(name) + ".satisfying",
                             std::string("states satisfying ") + name, 0, [&](Claim& cl) {
                               std::size_t found = 0;
                               for (std::size_t k = 0; k < corpus.size(); ++k) {
                                 Checker c(corpus[k].model, opts);
                                 StateSet ext = c.extension(f);
                                 if (!ext.empty() && !cl.kept) {
                                   cl.kept = labels_of(corpus[k].model, ext);
                                   cl.formula = "model " + std::to_string(k);
                                 }
                                 found += ext.count();
                               }
                               return found;
                             }));
  }
  r.claims.push_back(timed("stem.complement.mismatches",
                           "models where stem is not the complement of root", 0, [&](Claim&) {
                             std::size_t bad = 0;
                             for (const auto& pm : corpus) {
                               Checker c(pm.model, opts);
                               bad += !(c.extension(library::stem()) ==
                                        c.extension(library::root()).complement());
                             }
                             return bad;
                           }));
  return r;
}

}  // namespace qpal::repro
