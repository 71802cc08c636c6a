#include "ccal/parser.hpp"

#include <cctype>
#include <functional>

namespace ccal {

namespace {

const char* kPrefixKeywords[] = {"tau", "tell", "ask", "check", "fuse", "join"};

bool is_prefix_keyword(const std::string& s) {
  for (const char* k : kPrefixKeywords)
    if (s == k) return true;
  return false;
}

struct Lexer {
  const std::string& s;
  size_t pos = 0, line = 1, col = 1;

  explicit Lexer(const std::string& text) : s(text) {}

  void advance() {
    if (s[pos] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
    ++pos;
  }

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

  bool eof() {
    skip_ws();
    return pos >= s.size();
  }

  bool eat(const std::string& tok) {
    skip_ws();
    if (s.compare(pos, tok.size(), tok) == 0) {
      // avoid eating a keyword that is a prefix of an identifier
      if (std::isalpha(static_cast<unsigned char>(tok[0])) && pos + tok.size() < s.size()) {
        char next = s[pos + tok.size()];
        if (std::isalnum(static_cast<unsigned char>(next)) || next == '_') return false;
      }
      for (size_t i = 0; i < tok.size(); ++i) advance();
      return true;
    }
    return false;
  }

  bool peek(const std::string& tok) {
    skip_ws();
    if (s.compare(pos, tok.size(), tok) != 0) return false;
    if (std::isalpha(static_cast<unsigned char>(tok[0])) && pos + tok.size() < s.size()) {
      char next = s[pos + tok.size()];
      if (std::isalnum(static_cast<unsigned char>(next)) || next == '_') return false;
    }
    return true;
  }

  bool peek_ident() {
    skip_ws();
    return pos < s.size() &&
           (std::isalpha(static_cast<unsigned char>(s[pos])) || s[pos] == '_');
  }

  std::string ident() {
    skip_ws();
    if (!peek_ident()) fail("expected identifier");
    size_t start = pos;
    while (pos < s.size() &&
           (std::isalnum(static_cast<unsigned char>(s[pos])) || s[pos] == '_'))
      advance();
    return s.substr(start, pos - start);
  }

  /// Consumes up to the ')' matching an already-consumed '('.
  std::string balanced_until_close() {
    size_t start = pos;
    int depth = 1;
    while (pos < s.size()) {
      char c = s[pos];
      if (c == '(') ++depth;
      if (c == ')') {
        --depth;
        if (depth == 0) {
          std::string inner = s.substr(start, pos - start);
          advance();
          return inner;
        }
      }
      advance();
    }
    fail("unbalanced parenthesis");
  }

  [[noreturn]] void fail(const std::string& msg) { throw ParseError(msg, line, col); }
};

class ProgramParser {
 public:
  explicit ProgramParser(const std::string& text) : lx_(text) {}

  Program parse() {
    Program prog;
    for (;;) {
      if (lx_.eof()) lx_.fail("expected 'main' process");
      if (lx_.eat("main")) break;
      parse_definition(prog.defs);
    }
    prog.main = parse_process();
    if (!lx_.eof()) lx_.fail("unexpected trailing input");
    validate_program(prog.defs, prog.main);
    return prog;
  }

  Process parse_fragment(const DefinitionSet& defs) {
    Process p = parse_process();
    if (!lx_.eof()) lx_.fail("unexpected trailing input");
    validate_program(defs, p);
    return p;
  }

 private:
  Lexer lx_;
  std::vector<Identifier> scope_;

  Identifier resolve(const std::string& label) {
    for (auto it = scope_.rbegin(); it != scope_.rend(); ++it)
      if (it->label == label) return *it;
    return Identifier::name(label);
  }

  Formula parse_formula_arg() {
    std::string inner = lx_.balanced_until_close();
    try {
      return parse_formula(inner, [this](const std::string& l) { return resolve(l); });
    } catch (const ParseError& e) {
      lx_.fail(std::string("in formula: ") + e.what());
    }
  }

  void parse_definition(DefinitionSet& defs) {
    std::string name = lx_.ident();
    if (is_prefix_keyword(name) || name == "new" || name == "main")
      lx_.fail("'" + name + "' cannot be used as a constant name");
    if (!lx_.eat("(")) lx_.fail("expected '(' after constant name");
    Definition d;
    if (!lx_.eat(")")) {
      do {
        d.params.push_back(Identifier::variable(lx_.ident()));
      } while (lx_.eat(","));
      if (!lx_.eat(")")) lx_.fail("expected ')'");
    }
    if (!lx_.eat(":=")) lx_.fail("expected ':=' in definition");
    size_t base = scope_.size();
    for (const auto& p : d.params) scope_.push_back(p);
    d.body = parse_process();
    scope_.resize(base);
    if (defs.defs.count(name)) lx_.fail("duplicate definition of " + name);
    defs.defs.emplace(name, std::move(d));
  }

  Process parse_process() {  // '||' level, loosest
    Process p = parse_sum();
    while (lx_.eat("||")) p = Process::par(p, parse_sum());
    return p;
  }

  Process parse_sum() {
    Process p = parse_term();
    while (lx_.eat("+")) {
      Process q = parse_term();
      if (p.kind() != Process::Kind::Sum || q.kind() != Process::Kind::Sum)
        lx_.fail("operands of '+' must be guarded sums");
      std::vector<Process::SumBranch> branches = p.branches();
      for (const auto& b : q.branches()) branches.push_back(b);
      p = Process::sum(std::move(branches));
    }
    return p;
  }

  Process parse_term() {
    lx_.skip_ws();
    if (lx_.eat("0")) return Process::nil();
    if (lx_.eat("{")) {
      size_t start = lx_.pos;
      int depth = 1;  // formulas contain no braces; scan to the closing one
      while (lx_.pos < lx_.s.size() && depth > 0) {
        if (lx_.s[lx_.pos] == '{') ++depth;
        if (lx_.s[lx_.pos] == '}') --depth;
        if (depth > 0) lx_.advance();
      }
      if (lx_.pos >= lx_.s.size()) lx_.fail("unclosed '{'");
      std::string inner = lx_.s.substr(start, lx_.pos - start);
      lx_.advance();  // '}'
      try {
        return Process::constraint(
            parse_formula(inner, [this](const std::string& l) { return resolve(l); }));
      } catch (const ParseError& e) {
        lx_.fail(std::string("in constraint: ") + e.what());
      }
    }
    if (lx_.peek("(")) return parse_paren();
    // prefix or call
    std::string name = lx_.ident();
    if (name == "tau") return parse_prefixed(Prefix::tau());
    if (name == "tell") {
      if (!lx_.eat("(")) lx_.fail("expected '(' after tell");
      return parse_prefixed(Prefix::tell(parse_formula_arg()));
    }
    if (name == "ask") {
      if (!lx_.eat("(")) lx_.fail("expected '(' after ask");
      Formula f = parse_formula_arg();
      if (!f.is_positive()) lx_.fail("ask goal must be a positive formula");
      return parse_prefixed(Prefix::ask(std::move(f)));
    }
    if (name == "check") {
      if (!lx_.eat("(")) lx_.fail("expected '(' after check");
      std::vector<Literal> lits;
      if (!lx_.eat(")")) {
        do {
          Literal lit;
          lit.negated = lx_.eat("!");
          lit.atom = parse_literal_atom();
        lits.push_back(std::move(lit));
        } while (lx_.eat(","));
        if (!lx_.eat(")")) lx_.fail("expected ')'");
      }
      return parse_prefixed(Prefix::check(std::move(lits)));
    }
    if (name == "fuse" || name == "join") {
      bool is_fuse = name == "fuse";
      if (!lx_.eat("(")) lx_.fail("expected '(' after " + name);
      Identifier subject = resolve(lx_.ident());
      if (!subject.is_variable())
        lx_.fail(name + " subject must be a delimited variable or a parameter");
      if (!lx_.eat(",")) lx_.fail("expected ',' in " + name);
      Formula f = parse_formula_arg();
      if (!f.is_positive()) lx_.fail(name + " goal must be a positive formula");
      return parse_prefixed(is_fuse ? Prefix::fuse(subject, std::move(f))
                                    : Prefix::join(subject, std::move(f)));
    }
    if (name == "new" || name == "main") lx_.fail("unexpected keyword '" + name + "'");
    // constant call
    if (!lx_.eat("(")) lx_.fail("expected '(' after constant " + name);
    std::vector<Identifier> args;
    if (!lx_.eat(")")) {
      do {
        args.push_back(resolve(lx_.ident()));
      } while (lx_.eat(","));
      if (!lx_.eat(")")) lx_.fail("expected ')'");
    }
    return Process::call(name, std::move(args));
  }

  Atom parse_literal_atom() {
    Atom a;
    a.pred = lx_.ident();
    if (lx_.eat("(")) {
      if (!lx_.eat(")")) {
        do {
          a.args.push_back(resolve(lx_.ident()));
        } while (lx_.eat(","));
        if (!lx_.eat(")")) lx_.fail("expected ')'");
      }
    }
    return a;
  }

  Process parse_prefixed(Prefix p) {
    if (!lx_.eat(".")) lx_.fail("expected '.' after prefix");
    Process cont = parse_term();
    return Process::prefixed(std::move(p), std::move(cont));
  }

  Process parse_paren() {
    lx_.eat("(");
    if (lx_.eat("new")) {
      Identifier binder = Identifier::name(lx_.ident());
      if (!lx_.eat(")")) lx_.fail("expected ')' after delimited name");
      scope_.push_back(binder);
      Process body = parse_term();
      scope_.pop_back();
      return Process::delim(binder, body);
    }
    // `(x)` followed by a process start is a variable delimitation
    size_t save_pos = lx_.pos, save_line = lx_.line, save_col = lx_.col;
    if (lx_.peek_ident()) {
      std::string label = lx_.ident();
      if (lx_.eat(")")) {
        Identifier binder = Identifier::variable(label);
        scope_.push_back(binder);
        Process body = parse_term();
        scope_.pop_back();
        return Process::delim(binder, body);
      }
      lx_.pos = save_pos;
      lx_.line = save_line;
      lx_.col = save_col;
    }
    Process p = parse_process();
    if (!lx_.eat(")")) lx_.fail("expected ')'");
    return p;
  }
};

}  // namespace

Program parse_program(const std::string& text) { return ProgramParser(text).parse(); }

Process parse_process_fragment(const std::string& text, const DefinitionSet& defs) {
  return ProgramParser(text).parse_fragment(defs);
}

std::vector<Formula> parse_theory(const std::string& text) {
  // strip comments, then split on '.'
  std::string clean;
  for (size_t i = 0; i < text.size(); ++i) {
    if (text[i] == '#') {
      while (i < text.size() && text[i] != '\n') ++i;
      if (i < text.size()) clean += '\n';
    } else {
      clean += text[i];
    }
  }
  std::vector<Formula> out;
  size_t start = 0;
  for (size_t i = 0; i <= clean.size(); ++i) {
    if (i == clean.size() || clean[i] == '.') {
      std::string part = clean.substr(start, i - start);
      bool blank = true;
      for (char c : part)
        if (!std::isspace(static_cast<unsigned char>(c))) blank = false;
      if (!blank) out.push_back(parse_formula(part));
      start = i + 1;
    }
  }
  return out;
}

}  // namespace ccal
