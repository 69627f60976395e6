#include "wkb/text.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>

namespace wkb {

namespace {

enum class TokenKind {
  Identifier,
  Integer,
  LParen,
  RParen,
  LBrace,
  RBrace,
  Comma,
  Dot,
  Colon,
  ColonEq,
  Question,
  End,
};

struct Token {
  TokenKind kind;
  std::string text;
  std::size_t line;
  std::size_t column;
};

class Lexer {
 public:
  explicit Lexer(const std::string& text) : text_(text) { advance(); }

  const Token& peek() const { return current_; }
  Token take() {
    Token t = current_;
    advance();
    return t;
  }

 private:
  void advance() {
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (c == '#') {
        while (pos_ < text_.size() && text_[pos_] != '\n') ++pos_;
        continue;
      }
      if (c == '\n') {
        ++line_;
        col_ = 1;
        ++pos_;
        continue;
      }
      if (std::isspace(static_cast<unsigned char>(c))) {
        ++col_;
        ++pos_;
        continue;
      }
      break;
    }
    std::size_t line = line_, col = col_;
    if (pos_ >= text_.size()) {
      current_ = {TokenKind::End, "", line, col};
      return;
    }
    char c = text_[pos_];
    auto single = [&](TokenKind kind) {
      current_ = {kind, std::string(1, c), line, col};
      ++pos_;
      ++col_;
    };
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
        ++pos_;
      current_ = {TokenKind::Identifier, text_.substr(start, pos_ - start), line, col};
      col_ += pos_ - start;
      return;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      current_ = {TokenKind::Integer, text_.substr(start, pos_ - start), line, col};
      col_ += pos_ - start;
      return;
    }
    switch (c) {
      case '(':
        return single(TokenKind::LParen);
      case ')':
        return single(TokenKind::RParen);
      case '{':
        return single(TokenKind::LBrace);
      case '}':
        return single(TokenKind::RBrace);
      case ',':
        return single(TokenKind::Comma);
      case '.':
        return single(TokenKind::Dot);
      case '?':
        return single(TokenKind::Question);
      case ':':
        if (pos_ + 1 < text_.size() && text_[pos_ + 1] == '=') {
          current_ = {TokenKind::ColonEq, ":=", line, col};
          pos_ += 2;
          col_ += 2;
          return;
        }
        return single(TokenKind::Colon);
      default:
        throw ParseError(line, col, std::string("unexpected character '") + c + "'");
    }
  }

  const std::string& text_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t col_ = 1;
  Token current_{TokenKind::End, "", 1, 1};
};

const std::set<std::string> kReserved = {"tbox", "abox", "SubClassOf", "Top", "Bot",
                                         "not",  "some", "only",       "and", "or",
                                         "inf"};

[[noreturn]] void fail(const Token& t, const std::string& message) {
  throw ParseError(t.line, t.column, message + " (got '" + (t.text.empty() ? "<end>" : t.text) +
                                         "')");
}

class Parser {
 public:
  explicit Parser(const std::string& text) : lex_(text) {}

  Lexer& lexer() { return lex_; }

  std::string expect_name(const std::string& what) {
    Token t = lex_.take();
    if (t.kind != TokenKind::Identifier) fail(t, "expected " + what);
    if (kReserved.count(t.text)) fail(t, "reserved word used as " + what);
    return t.text;
  }

  void expect(TokenKind kind, const std::string& what) {
    Token t = lex_.take();
    if (t.kind != kind) fail(t, "expected " + what);
  }

  bool peek_keyword(const std::string& kw) const {
    return lex_.peek().kind == TokenKind::Identifier && lex_.peek().text == kw;
  }

  void expect_keyword(const std::string& kw) {
    Token t = lex_.take();
    if (t.kind != TokenKind::Identifier || t.text != kw) fail(t, "expected '" + kw + "'");
  }

  Weight parse_weight() {
    Token t = lex_.take();
    if (t.kind == TokenKind::Identifier && t.text == "inf") return Weight::infinite();
    if (t.kind != TokenKind::Integer) fail(t, "expected a weight (positive integer or 'inf')");
    if (t.text.size() > 20) throw ParseError(t.line, t.column, "weight exceeds 64-bit range");
    BigInt value(t.text);
    if (value == 0) throw ParseError(t.line, t.column, "weight must be positive");
    if (value > BigInt(UINT64_MAX))
      throw ParseError(t.line, t.column, "weight exceeds 64-bit range");
    return Weight::finite(static_cast<std::uint64_t>(value));
  }

  Concept parse_concept() { return parse_or(); }

  Concept parse_or() {
    Concept left = parse_and();
    while (peek_keyword("or")) {
      lex_.take();
      left = Concept::disj(std::move(left), parse_and());
    }
    return left;
  }

  Concept parse_and() {
    Concept left = parse_unary();
    while (peek_keyword("and")) {
      lex_.take();
      left = Concept::conj(std::move(left), parse_unary());
    }
    return left;
  }

  Concept parse_unary() {
    if (peek_keyword("not")) {
      lex_.take();
      return Concept::negation(parse_unary());
    }
    if (peek_keyword("some") || peek_keyword("only")) {
      bool existential = lex_.take().text == "some";
      std::string role = expect_name("a role name");
      expect(TokenKind::Dot, "'.' after the role name");
      Concept arg = parse_unary();
      return existential ? Concept::exists(std::move(role), std::move(arg))
                         : Concept::forall(std::move(role), std::move(arg));
    }
    return parse_primary();
  }

  Concept parse_primary() {
    const Token& t = lex_.peek();
    if (t.kind == TokenKind::LParen) {
      lex_.take();
      Concept inner = parse_concept();
      expect(TokenKind::RParen, "')'");
      return inner;
    }
    if (t.kind == TokenKind::LBrace) {
      lex_.take();
      std::string ind = expect_name("an individual name");
      expect(TokenKind::RBrace, "'}'");
      return Concept::nominal(std::move(ind));
    }
    if (t.kind == TokenKind::Identifier) {
      if (t.text == "Top") {
        lex_.take();
        return Concept::top();
      }
      if (t.text == "Bot") {
        lex_.take();
        return Concept::bot();
      }
      return Concept::name(expect_name("a concept name"));
    }
    fail(t, "expected a concept");
  }

 private:
  Lexer lex_;
};

}  // namespace

WeightedKB parse_wkb(const std::string& text) {
  Parser p(text);
  WeightedKB kb;
  enum class Section { None, TBox, ABox } section = Section::None;
  while (true) {
    const Token& t = p.lexer().peek();
    if (t.kind == TokenKind::End) break;
    if (t.kind == TokenKind::Identifier && (t.text == "tbox" || t.text == "abox")) {
      section = t.text == "tbox" ? Section::TBox : Section::ABox;
      p.lexer().take();
      p.expect(TokenKind::Colon, "':' after section name");
      continue;
    }
    if (section == Section::None) fail(t, "expected 'tbox:' or 'abox:'");
    Weight weight = p.parse_weight();
    p.expect(TokenKind::Colon, "':' after the weight");
    if (section == Section::TBox) {
      Concept lhs = p.parse_concept();
      p.expect_keyword("SubClassOf");
      Concept rhs = p.parse_concept();
      kb.add_axiom(std::move(lhs), std::move(rhs), weight);
    } else {
      std::string predicate = p.expect_name("a concept or role name");
      p.expect(TokenKind::LParen, "'('");
      std::string first = p.expect_name("an individual name");
      if (p.lexer().peek().kind == TokenKind::Comma) {
        p.lexer().take();
        std::string second = p.expect_name("an individual name");
        p.expect(TokenKind::RParen, "')'");
        kb.add_assertion(Assertion::role_assertion(predicate, first, second), weight);
      } else {
        p.expect(TokenKind::RParen, "')'");
        kb.add_assertion(Assertion::concept_assertion(predicate, first), weight);
      }
    }
  }
  return kb;
}

namespace {

// precedence levels: or = 0, and = 1, unary = 2, primary = 3
int level_of(const Concept& c) {
  switch (c.kind()) {
    case ConceptKind::Or:
      return 0;
    case ConceptKind::And:
      return 1;
    case ConceptKind::Not:
    case ConceptKind::Exists:
    case ConceptKind::Forall:
      return 2;
    default:
      return 3;
  }
}

void render(const Concept& c, int min_level, std::string& out) {
  bool parens = level_of(c) < min_level;
  if (parens) out += "(";
  switch (c.kind()) {
    case ConceptKind::Name:
      out += c.text();
      break;
    case ConceptKind::Nominal:
      out += "{" + c.text() + "}";
      break;
    case ConceptKind::Top:
      out += "Top";
      break;
    case ConceptKind::Bot:
      out += "Bot";
      break;
    case ConceptKind::And:
      render(c.left(), 1, out);
      out += " and ";
      render(c.right(), 2, out);
      break;
    case ConceptKind::Or:
      render(c.left(), 0, out);
      out += " or ";
      render(c.right(), 1, out);
      break;
    case ConceptKind::Not:
      out += "not ";
      render(c.child(), 2, out);
      break;
    case ConceptKind::Exists:
      out += "some " + c.role() + ".";
      render(c.child(), 2, out);
      break;
    case ConceptKind::Forall:
      out += "only " + c.role() + ".";
      render(c.child(), 2, out);
      break;
  }
  if (parens) out += ")";
}

std::string weight_text(const Weight& w) {
  return w.is_infinite() ? "inf" : std::to_string(w.value());
}

}  // namespace

Concept parse_concept(const std::string& text) {
  Parser p(text);
  Concept c = p.parse_concept();
  const Token& t = p.lexer().peek();
  if (t.kind != TokenKind::End) fail(t, "trailing input after concept");
  return c;
}

std::string serialize_concept(const Concept& c) {
  std::string out;
  render(c, 0, out);
  return out;
}

std::string serialize_wkb(const WeightedKB& kb) {
  std::ostringstream out;
  out << "tbox:\n";
  for (const auto& ax : kb.tbox)
    out << weight_text(ax.weight) << ": " << serialize_concept(ax.inclusion.lhs)
        << " SubClassOf " << serialize_concept(ax.inclusion.rhs) << "\n";
  out << "abox:\n";
  for (const auto& wa : kb.abox) {
    out << weight_text(wa.weight) << ": " << wa.assertion.predicate << "("
        << wa.assertion.subject;
    if (wa.assertion.kind == AssertionKind::Role) out << ", " << wa.assertion.object;
    out << ")\n";
  }
  return out.str();
}

Query parse_query(const std::string& text) {
  Parser p(text);
  Query q;
  Token head = p.lexer().take();
  if (head.kind != TokenKind::Identifier || head.text != "q")
    fail(head, "queries start with 'q('");
  p.expect(TokenKind::LParen, "'('");
  std::set<std::string> declared;
  if (p.lexer().peek().kind != TokenKind::RParen) {
    while (true) {
      std::string var = p.expect_name("an answer variable");
      if (!declared.insert(var).second)
        throw ParseError(head.line, head.column, "duplicate answer variable " + var);
      q.answer_vars.push_back(std::move(var));
      if (p.lexer().peek().kind != TokenKind::Comma) break;
      p.lexer().take();
    }
  }
  p.expect(TokenKind::RParen, "')'");
  p.expect(TokenKind::ColonEq, "':='");

  auto parse_term = [&]() -> Term {
    if (p.lexer().peek().kind == TokenKind::Question) {
      p.lexer().take();
      return Term::variable(p.expect_name("a variable name"));
    }
    std::string name = p.expect_name("a term");
    if (declared.count(name)) return Term::variable(name);
    return Term::individual(name);
  };

  while (true) {
    std::string predicate = p.expect_name("a concept or role name");
    p.expect(TokenKind::LParen, "'('");
    Term first = parse_term();
    if (p.lexer().peek().kind == TokenKind::Comma) {
      p.lexer().take();
      Term second = parse_term();
      p.expect(TokenKind::RParen, "')'");
      q.atoms.push_back(QueryAtom::role_atom(predicate, first, second));
    } else {
      p.expect(TokenKind::RParen, "')'");
      q.atoms.push_back(QueryAtom::concept_atom(predicate, first));
    }
    if (p.lexer().peek().kind != TokenKind::Comma) break;
    p.lexer().take();
  }
  const Token& tail = p.lexer().peek();
  if (tail.kind != TokenKind::End) fail(tail, "trailing input after query");

  std::set<std::string> used;
  for (const auto& atom : q.atoms) {
    if (atom.first.is_variable) used.insert(atom.first.text);
    if (atom.is_role && atom.second.is_variable) used.insert(atom.second.text);
  }
  for (const auto& var : q.answer_vars)
    if (!used.count(var)) throw UndeclaredAnswerVariableError(var);
  return q;
}

std::string serialize_query(const Query& query) {
  std::ostringstream out;
  out << "q(";
  for (std::size_t i = 0; i < query.answer_vars.size(); ++i) {
    if (i) out << ", ";
    out << query.answer_vars[i];
  }
  out << ") := ";
  std::set<std::string> declared(query.answer_vars.begin(), query.answer_vars.end());
  auto term = [&](const Term& t) -> std::string {
    if (!t.is_variable) return t.text;
    return declared.count(t.text) ? t.text : "?" + t.text;
  };
  for (std::size_t i = 0; i < query.atoms.size(); ++i) {
    if (i) out << ", ";
    const QueryAtom& atom = query.atoms[i];
    out << atom.predicate << "(" << term(atom.first);
    if (atom.is_role) out << ", " << term(atom.second);
    out << ")";
  }
  return out.str();
}

}  // namespace wkb
