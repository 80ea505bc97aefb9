// qpal: model checking for quantified public announcement logics.

#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "qpal/checker.hpp"
#include "qpal/errors.hpp"
#include "qpal/library.hpp"
#include "qpal/model_json.hpp"
#include "qpal/parser.hpp"
#include "qpal/semantics.hpp"
#include "repro.hpp"

using namespace qpal;
using nlohmann::json;

namespace {

enum Exit { kOk = 0, kMismatch = 1, kInput = 2, kResource = 3 };

struct Common {
  std::optional<std::size_t> cap;
  bool json = false;
  bool timing = false;

  CheckOptions options() const {
    CheckOptions o;
    if (cap) {
      o.block_cap = *cap;
    } else if (const char* env = std::getenv("QPAL_CAP")) {
      try {
        o.block_cap = std::stoul(env);
      } catch (const std::exception&) {
        throw ModelError(std::string("QPAL_CAP is not a number: '") + env + "'");
      }
    }
    return o;
  }
};

std::vector<std::string> labels_of(const Model& m, const StateSet& s) {
  std::vector<std::string> out;
  s.for_each([&](std::size_t i) { out.push_back(m.label(i)); });
  return out;
}

Formula formula_from(const std::string& text, const std::string& name) {
  if (!name.empty()) {
    if (!text.empty()) throw ModelError("give either a formula or --formula, not both");
    auto f = library::named(name);
    if (!f) throw ModelError("unknown formula name '" + name + "'");
    return *f;
  }
  if (text.empty()) throw ModelError("no formula given");
  return parse(text);
}

AtomSet parse_vocab(const std::string& list) {
  AtomSet q;
  std::size_t start = 0;
  while (start <= list.size()) {
    std::size_t end = list.find(',', start);
    if (end == std::string::npos) end = list.size();
    std::string p = list.substr(start, end - start);
    if (!p.empty()) {
      if (!is_identifier(p) || is_reserved_word(p)) throw ModelError("bad atom '" + p + "'");
      q.insert(Atom(p));
    }
    start = end + 1;
  }
  return q;
}

AgentGroup parse_group(const std::string& list) {
  AgentGroup g;
  for (const auto& p : parse_vocab(list)) g.insert(AgentId(p.name()));
  return g;
}

json certificate_json(const Model& m, const Certificate& c) {
  return {{"kept", labels_of(m, c.kept)}, {"formula", render(c.defining_formula)}};
}

void print_certificate(const Model& m, const Certificate& c, const std::string& indent = "") {
  std::cout << indent << "kept " << m.describe(c.kept) << "\n"
            << indent << "announce " << render(c.defining_formula) << "\n";
}

/// Diamond mode and body when `f` is a quantified diamond or the negation of a quantified box.
std::optional<std::pair<AnnouncementMode, Formula>> diamond_of(const Formula& f) {
  switch (f.op()) {
    case Op::ArbDia:
      return std::pair{AnnouncementMode::arbitrary(), f.rhs()};
    case Op::GroupDia:
      return std::pair{AnnouncementMode::of_group(f.group()), f.rhs()};
    case Op::CoalDia:
      return std::pair{AnnouncementMode::coalition(f.group()), f.rhs()};
    default:
      return std::nullopt;
  }
}

std::optional<std::pair<AnnouncementMode, Formula>> refuting_diamond_of(const Formula& f) {
  switch (f.op()) {
    case Op::ArbBox:
      return std::pair{AnnouncementMode::arbitrary(), neg(f.rhs())};
    case Op::GroupBox:
      return std::pair{AnnouncementMode::of_group(f.group()), neg(f.rhs())};
    default:
      return std::nullopt;
  }
}

int print_fmp(const PointedModel& pm, const std::string& name, const Common& common) {
  FmpReport r = check_fmp_suite(pm, common.options());
  std::string wanted = name == "fmp" ? "apal" : name.substr(4);
  const Model& m = pm.model;
  const FmpReport::Variant* var = nullptr;
  for (const auto& v : r.variants)
    if (v.name == wanted) var = &v;

  if (common.json) {
    json out;
    out["formula"] = name;
    out["state"] = pm.point_label();
    out["value"] = var->fmp;
    out["root"] = r.root;
    out["stem"] = r.stem;
    out["conjuncts"] = {var->conjunct[0], var->conjunct[1], var->conjunct[2]};
    out["witnesses"] = json::array();
    for (const auto& w : var->witnesses)
      out["witnesses"].push_back(
          {{"role", w.role},
           {"world", m.label(w.world)},
           {"certificate", w.certificate ? certificate_json(m, *w.certificate) : json(nullptr)}});
    std::cout << out.dump(2) << "\n";
    return kOk;
  }
  std::cout << (var->fmp ? "true" : "false") << "\n";
  for (int k = 0; k < 3; ++k)
    std::cout << "  conjunct " << k + 1 << ": " << (var->conjunct[k] ? "true" : "false") << "\n";
  for (const auto& w : var->witnesses) {
    std::cout << "  " << w.role << " at " << m.label(w.world) << ": ";
    if (!w.certificate) {
      std::cout << "none\n";
      continue;
    }
    std::cout << "\n";
    print_certificate(m, *w.certificate, "    ");
  }
  if (!var->conjunct[2]) {
    for (const auto& w : var->witnesses)
      if (w.role == "root refutation" && w.certificate) {
        std::cout << "  conjunct 3 fails: announcing the kept set at " << m.label(w.world)
                  << " makes tier & K b ~stem true\n";
        break;
      }
  }
  return kOk;
}

int cmd_check(const std::string& file, const std::string& text, const std::string& name,
              const std::string& state, bool witness, bool all_states, const Common& common) {
  PointedModel pm = load_pointed_model(file);
  if (!state.empty()) pm = PointedModel(pm.model, state);
  if (name == "fmp" || name == "fmp_gal" || name == "fmp_cal") return print_fmp(pm, name, common);

  Formula f = formula_from(text, name);
  const Model& m = pm.model;
  Checker c(m, common.options());
  StateSet ext = c.extension(f);
  bool value = ext.contains(pm.point);

  std::optional<Certificate> cert;
  std::string cert_kind;
  if (witness) {
    if (auto d = diamond_of(f); d && value) {
      cert = c.diamond_witness(pm.point, d->second, d->first);
      cert_kind = "witness";
    } else if (auto b = refuting_diamond_of(f); b && !value) {
      cert = c.diamond_witness(pm.point, b->second, b->first);
      cert_kind = "counter-witness";
    }
  }

  if (common.json) {
    json out{{"state", pm.point_label()}, {"formula", render(f)}, {"value", value}};
    if (all_states) out["extension"] = labels_of(m, ext);
    if (witness) out["certificate"] = cert ? certificate_json(m, *cert) : json(nullptr);
    std::cout << out.dump(2) << "\n";
    return kOk;
  }
  std::cout << (value ? "true" : "false") << "\n";
  if (all_states) std::cout << "extension " << m.describe(ext) << "\n";
  if (witness) {
    if (cert) {
      std::cout << cert_kind << "\n";
      print_certificate(m, *cert, "  ");
    } else {
      std::cout << "no certificate\n";
    }
  }
  return kOk;
}

int cmd_update(const std::string& file, const std::string& text, const std::string& name,
               const Common& common) {
  PointedModel pm = load_pointed_model(file);
  Formula f = formula_from(text, name);
  Checker c(pm.model, common.options());
  StateSet ext = c.extension(f);
  if (ext.empty()) throw ModelError("announcement " + render(f) + " holds nowhere");
  Model updated = restrict(pm.model, ext);
  std::size_t point = 0;
  if (ext.contains(pm.point)) point = restriction_index(ext)[pm.point];
  std::cout << to_json(PointedModel(std::move(updated), point)).dump(2) << "\n";
  return kOk;
}

int cmd_bisim(const std::string& file, const std::string& s, const std::string& t,
              const std::optional<std::string>& vocab, std::optional<std::size_t> depth,
              const Common& common) {
  PointedModel pm = load_pointed_model(file);
  AtomSet q = vocab ? parse_vocab(*vocab) : pm.model.vocabulary();
  bool value = bisimilar(PointedModel(pm.model, s), PointedModel(pm.model, t), q, depth);
  if (common.json) {
    json out{{"left", s}, {"right", t}, {"value", value}};
    std::vector<std::string> qs;
    for (const auto& p : q) qs.push_back(p.name());
    out["vocabulary"] = qs;
    out["depth"] = depth ? json(*depth) : json(nullptr);
    std::cout << out.dump(2) << "\n";
  } else {
    std::cout << (value ? "true" : "false") << "\n";
  }
  return kOk;
}

int cmd_quotient(const std::string& file, const std::optional<std::string>& vocab,
                 std::optional<std::size_t> depth, const Common& common) {
  PointedModel pm = load_pointed_model(file);
  const Model& m = pm.model;
  AtomSet q = vocab ? parse_vocab(*vocab) : m.vocabulary();
  Refinement r = refine(m, m.all_states(), q);
  const Partition& p = depth ? r.at(*depth) : r.stable();
  if (common.json) {
    json out;
    out["stages"] = r.stages.size();
    out["blocks"] = json::array();
    for (const auto& b : p.blocks) out["blocks"].push_back(labels_of(m, b));
    if (!depth) {
      Model qm = quotient_model(m, p);
      out["model"] = to_json(PointedModel(qm, p.block_of[pm.point]));
    }
    std::cout << out.dump(2) << "\n";
    return kOk;
  }
  std::cout << p.size() << " blocks";
  if (!depth) std::cout << ", stable after " << r.stages.size() - 1 << " refinement stages";
  std::cout << "\n";
  for (const auto& b : p.blocks) std::cout << "  " << m.describe(b) << "\n";
  return kOk;
}

int cmd_witness(const std::string& file, const std::string& text, const std::string& name,
                const std::string& state, const std::string& mode_name,
                const std::string& group, const Common& common) {
  PointedModel pm = load_pointed_model(file);
  if (!state.empty()) pm = PointedModel(pm.model, state);
  Formula body = formula_from(text, name);
  AnnouncementMode mode;
  if (mode_name == "apal") {
    mode = AnnouncementMode::arbitrary();
  } else if (mode_name == "group") {
    mode = AnnouncementMode::of_group(parse_group(group));
  } else if (mode_name == "coalition") {
    mode = AnnouncementMode::coalition(parse_group(group));
  } else {
    throw ModelError("unknown mode '" + mode_name + "'");
  }
  Checker c(pm.model, common.options());
  auto cert = c.diamond_witness(pm.point, body, mode);
  if (common.json) {
    json out{{"state", pm.point_label()}, {"mode", mode.name()}, {"body", render(body)}};
    out["certificate"] = cert ? certificate_json(pm.model, *cert) : json(nullptr);
    std::cout << out.dump(2) << "\n";
  } else if (cert) {
    print_certificate(pm.model, *cert);
  } else {
    std::cout << "none\n";
  }
  return kOk;
}

int cmd_repro(const std::vector<std::string>& args, std::uint64_t seed, const Common& common) {
  if (args.empty()) throw ModelError("repro needs a suite: example1, fig2, truncation N, random-sweep K N");
  auto number = [&](std::size_t i) -> std::size_t {
    if (i >= args.size()) throw ModelError("repro " + args[0] + " needs more arguments");
    try {
      std::size_t pos = 0;
      unsigned long v = std::stoul(args[i], &pos);
      if (pos != args[i].size()) throw std::invalid_argument(args[i]);
      return v;
    } catch (const std::exception&) {
      throw ModelError("'" + args[i] + "' is not a number");
    }
  };
  CheckOptions opts = common.options();
  repro::Report report;
  const std::string& suite = args[0];
  std::size_t expected_args = 1;
  if (suite == "example1") {
    report = repro::example1(opts);
  } else if (suite == "fig2") {
    report = repro::fig2(opts);
  } else if (suite == "truncation") {
    std::size_t n = number(1);
    expected_args = 2;
    if (n == 0) throw ModelError("truncation needs N >= 1");
    bool explicit_cap = common.cap || std::getenv("QPAL_CAP");
    if (n > 3 && !(explicit_cap && 5 * n + 3 <= opts.block_cap))
      throw ResourceError("truncation " + std::to_string(n) +
                          " is beyond the default limit of 3; raise --cap to at least " +
                          std::to_string(5 * n + 3) + " to run it");
    report = repro::truncation(n, opts);
  } else if (suite == "random-sweep") {
    std::size_t k = number(1), n = number(2);
    expected_args = 3;
    if (n == 0) throw ModelError("random-sweep needs at least one state per model");
    report = repro::random_sweep(k, n, seed, opts);
  } else {
    throw ModelError("unknown repro suite '" + suite + "'");
  }
  if (args.size() != expected_args) throw ModelError("too many arguments for repro " + suite);

  if (common.json) {
    std::cout << report.to_json(common.timing).dump(2) << "\n";
  } else {
    std::cout << report.to_table(common.timing);
  }
  return report.passed() ? kOk : kMismatch;
}

int cmd_parse(const std::string& text, const std::string& name, bool expand,
              const Common& common) {
  Formula f = formula_from(text, name);
  if (expand) f = expand_duals(f);
  Measures ms = measures(f);
  if (common.json) {
    std::vector<std::string> vars;
    for (const auto& p : ms.vars) vars.push_back(p.name());
    json out{{"formula", render(f)},
             {"vars", vars},
             {"modal_depth", ms.modal_depth},
             {"quantifier_depth", ms.quantifier_depth}};
    std::cout << out.dump(2) << "\n";
  } else {
    std::cout << render(f) << "\n";
    std::cout << "var {";
    bool first = true;
    for (const auto& p : ms.vars) {
      std::cout << (first ? "" : ",") << p.name();
      first = false;
    }
    std::cout << "}  d " << ms.modal_depth << "  D " << ms.quantifier_depth << "\n";
  }
  return kOk;
}

int cmd_model(const std::vector<std::string>& args) {
  if (args.empty()) throw ModelError("model needs a name: example1, fig2, truncation N");
  PointedModel pm;
  if (args[0] == "example1" && args.size() == 1) {
    pm = example1_model();
  } else if (args[0] == "fig2" && args.size() == 1) {
    pm = figure2_model();
  } else if (args[0] == "truncation" && args.size() == 2) {
    pm = truncation(std::stoul(args[1]));
  } else {
    throw ModelError("unknown built-in model");
  }
  std::cout << to_json(pm).dump(2) << "\n";
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact model checking for APAL, GAL and CAL on finite epistemic models"};
  app.require_subcommand(1);
  Common common;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--cap", common.cap, "Largest quotient a quantifier may enumerate (QPAL_CAP)");
    sub->add_flag("--json", common.json, "Machine-readable output");
  };

  std::string file, text, name, state, s, t, mode = "apal", group;
  std::optional<std::string> vocab;
  std::optional<std::size_t> depth;
  bool witness = false, all_states = false, expand = false;
  std::vector<std::string> args;
  std::uint64_t seed = 1;

  auto* check = app.add_subcommand("check", "Evaluate a formula at a state");
  check->add_option("model", file, "Model JSON file")->required();
  check->add_option("text", text, "Formula text");
  check->add_option("--formula", name, "Built-in formula: fmp, fmp_gal, fmp_cal, root, stem, tier, stem_witness:I");
  check->add_option("--state", state, "State label (default: the model's point)");
  check->add_flag("--witness", witness, "Print a certificate for a quantified diamond or box");
  check->add_flag("--all-states", all_states, "Print the extension");
  add_common(check);

  auto* update = app.add_subcommand("update", "Announce a formula and print the updated model");
  update->add_option("model", file, "Model JSON file")->required();
  update->add_option("text", text, "Formula text");
  update->add_option("--formula", name, "Built-in formula");
  add_common(update);

  auto* bisim = app.add_subcommand("bisim", "Decide (bounded) bisimilarity of two states");
  bisim->add_option("model", file, "Model JSON file")->required();
  bisim->add_option("s", s, "First state")->required();
  bisim->add_option("t", t, "Second state")->required();
  bisim->add_option("--vocab", vocab, "Comma-separated atoms (default: declared vocabulary)");
  bisim->add_option("--depth", depth, "Bound n for n-bisimilarity");
  add_common(bisim);

  auto* quot = app.add_subcommand("quotient", "Print the bisimulation quotient");
  quot->add_option("model", file, "Model JSON file")->required();
  quot->add_option("--vocab", vocab, "Comma-separated atoms (default: declared vocabulary)");
  quot->add_option("--depth", depth, "Refinement stage to print");
  add_common(quot);

  auto* wit = app.add_subcommand("witness", "Find an announcement making a formula true");
  wit->add_option("model", file, "Model JSON file")->required();
  wit->add_option("text", text, "Formula text");
  wit->add_option("--formula", name, "Built-in formula");
  wit->add_option("--state", state, "State label (default: the model's point)");
  wit->add_option("--mode", mode, "apal, group or coalition")
      ->check(CLI::IsMember({"apal", "group", "coalition"}));
  wit->add_option("--group", group, "Comma-separated agents for group and coalition modes");
  add_common(wit);

  auto* rep = app.add_subcommand("repro", "Run a claim bundle: example1, fig2, truncation N, random-sweep K N");
  rep->add_option("suite", args, "Suite and its arguments")->required();
  rep->add_option("--seed", seed, "Seed for random-sweep");
  rep->add_flag("--timing", common.timing, "Report running time per claim");
  add_common(rep);

  auto* par = app.add_subcommand("parse", "Parse, print and measure a formula");
  par->add_option("text", text, "Formula text");
  par->add_option("--formula", name, "Built-in formula");
  par->add_flag("--expand", expand, "Expand derived connectives");
  add_common(par);

  auto* mod = app.add_subcommand("model", "Print a built-in model as JSON: example1, fig2, truncation N");
  mod->add_option("name", args, "Model name and arguments")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kOk : kInput;
  }

  try {
    if (*check) return cmd_check(file, text, name, state, witness, all_states, common);
    if (*update) return cmd_update(file, text, name, common);
    if (*bisim) return cmd_bisim(file, s, t, vocab, depth, common);
    if (*quot) return cmd_quotient(file, vocab, depth, common);
    if (*wit) return cmd_witness(file, text, name, state, mode, group, common);
    if (*rep) return cmd_repro(args, seed, common);
    if (*par) return cmd_parse(text, name, expand, common);
    if (*mod) return cmd_model(args);
  } catch (const ResourceError& e) {
    std::cerr << "qpal: resource limit: " << e.what() << "\n";
    return kResource;
  } catch (const ParseError& e) {
    std::cerr << "qpal: parse error: " << e.what() << "\n";
    return kInput;
  } catch (const std::exception& e) {
    std::cerr << "qpal: " << e.what() << "\n";
    return kInput;
  }
  return kInput;
}
