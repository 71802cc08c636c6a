#include "ccal/formula.hpp"

#include <cctype>
#include <functional>
#include <sstream>

namespace ccal {

namespace {
size_t combine(size_t a, size_t b) { return a * 1000003u ^ (b + 0x9e3779b9u + (a << 6)); }
}  // namespace

Formula::Node::Node(Kind k, Atom a, std::shared_ptr<const Node> l,
                    std::shared_ptr<const Node> r)
    : kind(k), atom(std::move(a)), lhs(std::move(l)), rhs(std::move(r)) {
  hash = static_cast<size_t>(kind);
  if (kind == Kind::Atom) {
    hash = combine(hash, AtomHash()(atom));
  } else {
    hash = combine(hash, lhs ? lhs->hash : 0);
    hash = combine(hash, rhs ? rhs->hash : 0);
  }
}

Formula::Node::Node(Kind k) : kind(k) { hash = combine(static_cast<size_t>(kind), 17u); }

Formula Formula::top() {
  static const auto n = std::make_shared<const Node>(Kind::Top);
  return Formula(n);
}

Formula Formula::bot() {
  static const auto n = std::make_shared<const Node>(Kind::Bot);
  return Formula(n);
}

Formula Formula::atom(Atom a) {
  return Formula(std::make_shared<const Node>(Kind::Atom, std::move(a), nullptr, nullptr));
}

Formula Formula::atom(std::string pred, std::vector<Identifier> args) {
  return atom(Atom{std::move(pred), std::move(args)});
}

Formula Formula::conj(Formula l, Formula r) {
  return Formula(std::make_shared<const Node>(Kind::And, Atom{}, l.node_, r.node_));
}

Formula Formula::disj(Formula l, Formula r) {
  return Formula(std::make_shared<const Node>(Kind::Or, Atom{}, l.node_, r.node_));
}

Formula Formula::impl(Formula l, Formula r) {
  return Formula(std::make_shared<const Node>(Kind::Imp, Atom{}, l.node_, r.node_));
}

Formula Formula::cimpl(Formula l, Formula r) {
  return Formula(std::make_shared<const Node>(Kind::CImp, Atom{}, l.node_, r.node_));
}

Formula Formula::conj_all(const std::vector<Formula>& fs) {
  if (fs.empty()) return top();
  Formula acc = fs.back();
  for (size_t i = fs.size() - 1; i-- > 0;) acc = conj(fs[i], acc);
  return acc;
}

bool Formula::is_positive() const {
  switch (kind()) {
    case Kind::Top:
    case Kind::Bot:
    case Kind::Atom:
      return true;
    case Kind::And:
    case Kind::Or:
      return lhs().is_positive() && rhs().is_positive();
    default:
      return false;
  }
}

Formula Formula::substitute(const Subst& s) const {
  if (s.empty()) return *this;
  switch (kind()) {
    case Kind::Top:
    case Kind::Bot:
      return *this;
    case Kind::Atom: {
      Atom a = as_atom();
      bool changed = false;
      for (auto& arg : a.args) {
        const Identifier& to = s(arg);
        if (to != arg) {
          arg = to;
          changed = true;
        }
      }
      return changed ? atom(std::move(a)) : *this;
    }
    case Kind::And:
      return conj(lhs().substitute(s), rhs().substitute(s));
    case Kind::Or:
      return disj(lhs().substitute(s), rhs().substitute(s));
    case Kind::Imp:
      return impl(lhs().substitute(s), rhs().substitute(s));
    case Kind::CImp:
      return cimpl(lhs().substitute(s), rhs().substitute(s));
  }
  return *this;
}

void Formula::collect_identifiers(std::set<Identifier>& out) const {
  switch (kind()) {
    case Kind::Top:
    case Kind::Bot:
      return;
    case Kind::Atom:
      for (const auto& a : as_atom().args) out.insert(a);
      return;
    default:
      lhs().collect_identifiers(out);
      rhs().collect_identifiers(out);
  }
}

std::set<Identifier> Formula::identifiers() const {
  std::set<Identifier> out;
  collect_identifiers(out);
  return out;
}

void Formula::collect_atoms(std::vector<Atom>& out) const {
  switch (kind()) {
    case Kind::Top:
    case Kind::Bot:
      return;
    case Kind::Atom:
      out.push_back(as_atom());
      return;
    default:
      lhs().collect_atoms(out);
      rhs().collect_atoms(out);
  }
}

std::string Formula::text() const {
  std::ostringstream os;
  switch (kind()) {
    case Kind::Top:
      return "top";
    case Kind::Bot:
      return "bot";
    case Kind::Atom: {
      const Atom& a = as_atom();
      os << a.pred;
      if (!a.args.empty()) {
        os << "(";
        for (size_t i = 0; i < a.args.size(); ++i) {
          if (i) os << ",";
          os << a.args[i].label;
        }
        os << ")";
      }
      return os.str();
    }
    case Kind::And:
      os << "(" << lhs().text() << " /\\ " << rhs().text() << ")";
      return os.str();
    case Kind::Or:
      os << "(" << lhs().text() << " \\/ " << rhs().text() << ")";
      return os.str();
    case Kind::Imp:
      os << "(" << lhs().text() << " -> " << rhs().text() << ")";
      return os.str();
    case Kind::CImp:
      os << "(" << lhs().text() << " ->> " << rhs().text() << ")";
      return os.str();
  }
  return "";
}

bool operator==(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return true;
  if (a.hash() != b.hash()) return false;
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case Formula::Kind::Top:
    case Formula::Kind::Bot:
      return true;
    case Formula::Kind::Atom:
      return a.as_atom() == b.as_atom();
    default:
      return a.lhs() == b.lhs() && a.rhs() == b.rhs();
  }
}

bool operator<(const Formula& a, const Formula& b) {
  if (a == b) return false;
  return a.text() < b.text();
}

ParseError::ParseError(const std::string& msg, size_t line_, size_t col_)
    : std::runtime_error(msg + " at line " + std::to_string(line_) + ", column " +
                         std::to_string(col_)),
      line(line_),
      col(col_) {}

namespace {

// Shared by the formula parser and (via parser.cpp) the program parser.
struct FormulaLexer {
  const std::string& s;
  size_t pos = 0, line = 1, col = 1;

  explicit FormulaLexer(const std::string& text) : s(text) {}

  void skip_ws() {
    while (pos < s.size()) {
      char c = s[pos];
      if (c == '#') {
        while (pos < s.size() && s[pos] != '\n') advance();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else {
        break;
      }
    }
  }

  void advance() {
    if (s[pos] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
    ++pos;
  }

  bool eat(const std::string& tok) {
    skip_ws();
    if (s.compare(pos, tok.size(), tok) == 0) {
      for (size_t i = 0; i < tok.size(); ++i) advance();
      return true;
    }
    return false;
  }

  bool peek(const std::string& tok) {
    skip_ws();
    return s.compare(pos, tok.size(), tok) == 0;
  }

  std::string ident() {
    skip_ws();
    if (pos >= s.size() ||
        !(std::isalpha(static_cast<unsigned char>(s[pos])) || s[pos] == '_'))
      throw ParseError("expected identifier", line, col);
    size_t start = pos;
    while (pos < s.size() &&
           (std::isalnum(static_cast<unsigned char>(s[pos])) || s[pos] == '_'))
      advance();
    return s.substr(start, pos - start);
  }

  [[noreturn]] void fail(const std::string& msg) { throw ParseError(msg, line, col); }
};

using Resolver = std::function<Identifier(const std::string&)>;

Formula parse_arrows(FormulaLexer& lx, const Resolver& resolve);

Formula parse_primary(FormulaLexer& lx, const Resolver& resolve) {
  lx.skip_ws();
  if (lx.eat("(")) {
    Formula f = parse_arrows(lx, resolve);
    if (!lx.eat(")")) lx.fail("expected ')'");
    return f;
  }
  std::string name = lx.ident();
  if (name == "top") return Formula::top();
  if (name == "bot") return Formula::bot();
  std::vector<Identifier> args;
  if (lx.eat("(")) {
    if (!lx.eat(")")) {
      do {
        args.push_back(resolve(lx.ident()));
      } while (lx.eat(","));
      if (!lx.eat(")")) lx.fail("expected ')'");
    }
  }
  return Formula::atom(std::move(name), std::move(args));
}

Formula parse_conj(FormulaLexer& lx, const Resolver& resolve) {
  Formula f = parse_primary(lx, resolve);
  while (lx.eat("/\\")) f = Formula::conj(f, parse_primary(lx, resolve));
  return f;
}

Formula parse_disj(FormulaLexer& lx, const Resolver& resolve) {
  Formula f = parse_conj(lx, resolve);
  while (lx.eat("\\/")) f = Formula::disj(f, parse_conj(lx, resolve));
  return f;
}

Formula parse_arrows(FormulaLexer& lx, const Resolver& resolve) {
  Formula f = parse_disj(lx, resolve);
  // right-associative; `->>` must be tried before `->`
  if (lx.eat("->>")) return Formula::cimpl(f, parse_arrows(lx, resolve));
  if (lx.eat("->")) return Formula::impl(f, parse_arrows(lx, resolve));
  return f;
}

}  // namespace

Formula parse_formula(const std::string& text, const Resolver& resolve) {
  FormulaLexer lx(text);
  Formula f = parse_arrows(lx, resolve);
  lx.skip_ws();
  if (lx.pos != text.size()) lx.fail("unexpected trailing input");
  return f;
}

Formula parse_formula(const std::string& text) {
  return parse_formula(text, [](const std::string& l) { return Identifier::name(l); });
}

}  // namespace ccal
