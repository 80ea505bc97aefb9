#include "qpal/library.hpp"

#include <regex>
#include <stdexcept>

namespace qpal::library {

namespace {

Formula x() { return atom("x"); }
Formula nx() { return neg(atom("x")); }

Formula root_body() {
  return imp(maybe("a", conj(nx(), know("b", nx()))), know("a", imp(nx(), know("b", nx()))));
}

Formula stem_body() {
  return conj(maybe("a", conj(nx(), know("b", nx()))), maybe("a", conj(nx(), maybe("b", x()))));
}

}  // namespace

const AgentGroup& default_agents() {
  static const AgentGroup ab = make_group({"a", "b"});
  return ab;
}

Formula substitute_quantifiers(const Formula& f, Flavor flavor, const AgentGroup& all) {
  auto sub = [&](const Formula& g) { return substitute_quantifiers(g, flavor, all); };
  switch (f.op()) {
    case Op::Atom:
    case Op::Top:
    case Op::Bot:
      return f;
    case Op::Not:
      return neg(sub(f.rhs()));
    case Op::And:
      return conj(sub(f.lhs()), sub(f.rhs()));
    case Op::Or:
      return disj(sub(f.lhs()), sub(f.rhs()));
    case Op::Imp:
      return imp(sub(f.lhs()), sub(f.rhs()));
    case Op::Know:
      return know(f.agent(), sub(f.rhs()));
    case Op::MaybeKnow:
      return maybe(f.agent(), sub(f.rhs()));
    case Op::Announce:
      return announce(sub(f.lhs()), sub(f.rhs()));
    case Op::DiaAnnounce:
      return dia_announce(sub(f.lhs()), sub(f.rhs()));
    case Op::ArbBox:
      switch (flavor) {
        case Flavor::Arbitrary:
          return box(sub(f.rhs()));
        case Flavor::Group:
          return group_box(all, sub(f.rhs()));
        case Flavor::Coalition:
          return coal_box(all, sub(f.rhs()));
      }
      break;
    case Op::ArbDia:
      switch (flavor) {
        case Flavor::Arbitrary:
          return dia(sub(f.rhs()));
        case Flavor::Group:
          return group_dia(all, sub(f.rhs()));
        case Flavor::Coalition:
          return coal_dia(all, sub(f.rhs()));
      }
      break;
    case Op::GroupBox:
      return group_box(f.group(), sub(f.rhs()));
    case Op::GroupDia:
      return group_dia(f.group(), sub(f.rhs()));
    case Op::CoalBox:
      return coal_box(f.group(), sub(f.rhs()));
    case Op::CoalDia:
      return coal_dia(f.group(), sub(f.rhs()));
  }
  throw std::logic_error("substitute_quantifiers: unknown operator");
}

Formula root(Flavor flavor, const AgentGroup& all) {
  return substitute_quantifiers(box(root_body()), flavor, all);
}

Formula stem(Flavor flavor, const AgentGroup& all) {
  return substitute_quantifiers(dia(stem_body()), flavor, all);
}

Formula tier() {
  return know("b", conj(conj(x(), maybe("a", nx())), know("a", imp(nx(), maybe("b", x())))));
}

namespace {

Formula apal_conjunct(int which) {
  Formula r = root(), s = stem(), t = tier();
  switch (which) {
    case 1:
      return conj(conj(t, maybe("b", r)), maybe("b", s));
    case 2:
      return know("b", imp(s, dia(conj(t, know("b", s)))));
    case 3:
      return know("b", imp(r, box(imp(t, maybe("b", s)))));
    default:
      throw std::out_of_range("fmp has three conjuncts");
  }
}

}  // namespace

Formula fmp_conjunct(int which, Flavor flavor, const AgentGroup& all) {
  return substitute_quantifiers(apal_conjunct(which), flavor, all);
}

Formula fmp(Flavor flavor, const AgentGroup& all) {
  Formula apal = conj(conj(apal_conjunct(1), apal_conjunct(2)), apal_conjunct(3));
  return substitute_quantifiers(apal, flavor, all);
}

Formula fmp_gal(const AgentGroup& all) { return fmp(Flavor::Group, all); }
Formula fmp_cal(const AgentGroup& all) { return fmp(Flavor::Coalition, all); }

Formula stem_witness(std::size_t i) {
  return maybe("a", maybe("b", atom("p" + std::to_string(2 * i))));
}

Formula root_refuter(std::size_t j) {
  return know("a", imp(nx(), know("b", imp(x(), know("a", neg(atom("p" + std::to_string(j))))))));
}

std::optional<Formula> named(const std::string& name, const AgentGroup& all) {
  if (name == "fmp") return fmp(Flavor::Arbitrary, all);
  if (name == "fmp_gal") return fmp_gal(all);
  if (name == "fmp_cal") return fmp_cal(all);
  if (name == "root") return root(Flavor::Arbitrary, all);
  if (name == "stem") return stem(Flavor::Arbitrary, all);
  if (name == "tier") return tier();
  static const std::regex witness(R"(stem_witness\s*(?::|\s|\()\s*(\d+)\s*\)?)");
  std::smatch m;
  if (std::regex_match(name, m, witness)) return stem_witness(std::stoul(m[1].str()));
  return std::nullopt;
}

}  // namespace qpal::library
