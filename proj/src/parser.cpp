#include "qpal/parser.hpp"

#include <cctype>
#include <stdexcept>
#include <vector>

#include "qpal/errors.hpp"

namespace qpal {

namespace {

enum class Tok {
  Ident,
  True,
  False,
  Not,
  Know,
  Maybe,
  Box,
  Dia,
  And,
  Or,
  Imp,
  LParen,
  RParen,
  LBracket,        // [
  RBracket,        // ]
  LAngle,          // <
  RAngle,          // >
  GroupBoxOpen,    // [{
  GroupBoxClose,   // }]
  GroupDiaOpen,    // <{
  GroupDiaClose,   // }>
  CoalBoxOpen,     // [<{
  CoalBoxClose,    // }>]
  CoalDiaOpen,     // <[{
  CoalDiaClose,    // }]>
  Comma,
  End,
};

struct Token {
  Tok kind;
  std::string text;
  std::size_t pos;
};

std::string describe(const Token& t) {
  if (t.kind == Tok::End) return "end of input";
  return "'" + t.text + "'";
}

std::vector<Token> lex(std::string_view in) {
  std::vector<Token> out;
  std::size_t i = 0;
  auto starts = [&](std::string_view s) { return in.substr(i, s.size()) == s; };
  while (i < in.size()) {
    char c = in[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    std::size_t start = i;
    auto emit = [&](Tok k, std::size_t len) {
      out.push_back({k, std::string(in.substr(start, len)), start});
      i += len;
    };
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < in.size() &&
             (std::isalnum(static_cast<unsigned char>(in[j])) || in[j] == '_'))
        ++j;
      std::string word(in.substr(i, j - i));
      Tok k = Tok::Ident;
      if (word == "true") k = Tok::True;
      else if (word == "false") k = Tok::False;
      else if (word == "K") k = Tok::Know;
      else if (word == "M") k = Tok::Maybe;
      else if (word == "box") k = Tok::Box;
      else if (word == "dia") k = Tok::Dia;
      emit(k, j - i);
      continue;
    }
    if (starts("[<{")) emit(Tok::CoalBoxOpen, 3);
    else if (starts("<[{")) emit(Tok::CoalDiaOpen, 3);
    else if (starts("}>]")) emit(Tok::CoalBoxClose, 3);
    else if (starts("}]>")) emit(Tok::CoalDiaClose, 3);
    else if (starts("[{")) emit(Tok::GroupBoxOpen, 2);
    else if (starts("<{")) emit(Tok::GroupDiaOpen, 2);
    else if (starts("}]")) emit(Tok::GroupBoxClose, 2);
    else if (starts("}>")) emit(Tok::GroupDiaClose, 2);
    else if (starts("->")) emit(Tok::Imp, 2);
    else if (c == '~') emit(Tok::Not, 1);
    else if (c == '&') emit(Tok::And, 1);
    else if (c == '|') emit(Tok::Or, 1);
    else if (c == '(') emit(Tok::LParen, 1);
    else if (c == ')') emit(Tok::RParen, 1);
    else if (c == '[') emit(Tok::LBracket, 1);
    else if (c == ']') emit(Tok::RBracket, 1);
    else if (c == '<') emit(Tok::LAngle, 1);
    else if (c == '>') emit(Tok::RAngle, 1);
    else if (c == ',') emit(Tok::Comma, 1);
    else throw ParseError("unknown token '" + std::string(1, c) + "'", i);
  }
  out.push_back({Tok::End, "", in.size()});
  return out;
}

class Parser {
 public:
  explicit Parser(std::string_view text) : tokens_(lex(text)) {}

  Formula parse_all() {
    Formula f = implication();
    if (peek().kind != Tok::End) fail("unexpected " + describe(peek()));
    return f;
  }

 private:
  const Token& peek() const { return tokens_[pos_]; }
  Token take() { return tokens_[pos_++]; }

  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, peek().pos); }

  void expect(Tok k, const char* what) {
    if (peek().kind != k) fail(std::string("expected ") + what + ", found " + describe(peek()));
    ++pos_;
  }

  Formula implication() {
    Formula lhs = disjunction();
    if (peek().kind == Tok::Imp) {
      take();
      return imp(lhs, implication());
    }
    return lhs;
  }

  Formula disjunction() {
    Formula acc = conjunction();
    while (peek().kind == Tok::Or) {
      take();
      acc = disj(acc, conjunction());
    }
    return acc;
  }

  Formula conjunction() {
    Formula acc = unary();
    while (peek().kind == Tok::And) {
      take();
      acc = conj(acc, unary());
    }
    return acc;
  }

  AgentId agent_name() {
    if (peek().kind != Tok::Ident) fail("expected agent name, found " + describe(peek()));
    const Token& t = peek();
    if (!std::islower(static_cast<unsigned char>(t.text[0])))
      fail("agent names must start with a lowercase letter, found " + describe(t));
    ++pos_;
    return AgentId(t.text);
  }

  AgentGroup group(Tok close, const char* close_text) {
    AgentGroup g;
    if (peek().kind != close) {
      while (true) {
        std::size_t at = peek().pos;
        AgentId a = agent_name();
        if (!g.insert(a).second)
          throw ParseError("duplicate agent '" + a.name() + "' in group", at);
        if (peek().kind != Tok::Comma) break;
        take();
      }
    }
    expect(close, close_text);
    return g;
  }

  Formula unary() {
    const Token& t = peek();
    switch (t.kind) {
      case Tok::Not:
        take();
        return neg(unary());
      case Tok::Know: {
        take();
        AgentId a = agent_name();
        return know(a, unary());
      }
      case Tok::Maybe: {
        take();
        AgentId a = agent_name();
        return maybe(a, unary());
      }
      case Tok::Box:
        take();
        return box(unary());
      case Tok::Dia:
        take();
        return dia(unary());
      case Tok::LBracket: {
        take();
        Formula announced = implication();
        expect(Tok::RBracket, "']'");
        return announce(announced, unary());
      }
      case Tok::LAngle: {
        take();
        Formula announced = implication();
        expect(Tok::RAngle, "'>'");
        return dia_announce(announced, unary());
      }
      case Tok::GroupBoxOpen: {
        take();
        AgentGroup g = group(Tok::GroupBoxClose, "'}]'");
        return group_box(g, unary());
      }
      case Tok::GroupDiaOpen: {
        take();
        AgentGroup g = group(Tok::GroupDiaClose, "'}>'");
        return group_dia(g, unary());
      }
      case Tok::CoalBoxOpen: {
        take();
        AgentGroup g = group(Tok::CoalBoxClose, "'}>]'");
        return coal_box(g, unary());
      }
      case Tok::CoalDiaOpen: {
        take();
        AgentGroup g = group(Tok::CoalDiaClose, "'}]>'");
        return coal_dia(g, unary());
      }
      default:
        return primary();
    }
  }

  Formula primary() {
    const Token& t = peek();
    switch (t.kind) {
      case Tok::True:
        take();
        return top();
      case Tok::False:
        take();
        return bot();
      case Tok::Ident: {
        Token id = take();
        return atom(Atom(id.text));
      }
      case Tok::LParen: {
        take();
        Formula f = implication();
        expect(Tok::RParen, "')'");
        return f;
      }
      case Tok::End:
        fail("missing operand at end of input");
      default:
        fail("expected a formula, found " + describe(t));
    }
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
};

// Binding strength of the outermost operator.
enum Prec { kImp = 1, kOr = 2, kAnd = 3, kUnary = 4 };

int precedence(const Formula& f) {
  switch (f.op()) {
    case Op::Imp:
      return kImp;
    case Op::Or:
      return kOr;
    case Op::And:
      return kAnd;
    default:
      return kUnary;
  }
}

std::string group_text(const AgentGroup& g) {
  std::string s;
  for (const auto& a : g) {
    if (!s.empty()) s += ',';
    s += a.name();
  }
  return s;
}

void render_into(const Formula& f, int min_prec, std::string& out);

// A bracket opener immediately followed by '<' or '[' could lex as a longer opener.
void render_bracketed(const Formula& f, std::string& out) {
  std::string inner;
  render_into(f, kImp, inner);
  if (!inner.empty() && (inner[0] == '<' || inner[0] == '[')) out += ' ';
  out += inner;
}

void render_into(const Formula& f, int min_prec, std::string& out) {
  bool parens = precedence(f) < min_prec;
  if (parens) out += '(';
  switch (f.op()) {
    case Op::Atom:
      out += f.atom().name();
      break;
    case Op::Top:
      out += "true";
      break;
    case Op::Bot:
      out += "false";
      break;
    case Op::Not:
      out += '~';
      render_into(f.rhs(), kUnary, out);
      break;
    case Op::And:
      render_into(f.lhs(), kAnd, out);
      out += " & ";
      render_into(f.rhs(), kUnary, out);
      break;
    case Op::Or:
      render_into(f.lhs(), kOr, out);
      out += " | ";
      render_into(f.rhs(), kAnd, out);
      break;
    case Op::Imp:
      render_into(f.lhs(), kOr, out);
      out += " -> ";
      render_into(f.rhs(), kImp, out);
      break;
    case Op::Know:
    case Op::MaybeKnow:
      out += f.op() == Op::Know ? "K " : "M ";
      out += f.agent().name();
      out += ' ';
      render_into(f.rhs(), kUnary, out);
      break;
    case Op::Announce:
    case Op::DiaAnnounce:
      out += f.op() == Op::Announce ? '[' : '<';
      render_bracketed(f.lhs(), out);
      out += f.op() == Op::Announce ? "] " : "> ";
      render_into(f.rhs(), kUnary, out);
      break;
    case Op::ArbBox:
      out += "box ";
      render_into(f.rhs(), kUnary, out);
      break;
    case Op::ArbDia:
      out += "dia ";
      render_into(f.rhs(), kUnary, out);
      break;
    case Op::GroupBox:
      out += "[{" + group_text(f.group()) + "}] ";
      render_into(f.rhs(), kUnary, out);
      break;
    case Op::GroupDia:
      out += "<{" + group_text(f.group()) + "}> ";
      render_into(f.rhs(), kUnary, out);
      break;
    case Op::CoalBox:
      out += "[<{" + group_text(f.group()) + "}>] ";
      render_into(f.rhs(), kUnary, out);
      break;
    case Op::CoalDia:
      out += "<[{" + group_text(f.group()) + "}]> ";
      render_into(f.rhs(), kUnary, out);
      break;
  }
  if (parens) out += ')';
}

}  // namespace

Formula parse(std::string_view text) { return Parser(text).parse_all(); }

std::string render(const Formula& f) {
  std::string out;
  render_into(f, kImp, out);
  return out;
}

}  // namespace qpal
