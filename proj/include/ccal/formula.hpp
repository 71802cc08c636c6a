#ifndef CCAL_FORMULA_HPP
#define CCAL_FORMULA_HPP

#include <map>
#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "ccal/ident.hpp"

namespace ccal {

struct Atom {
  std::string pred;
  std::vector<Identifier> args;

  friend bool operator==(const Atom& a, const Atom& b) {
    return a.pred == b.pred && a.args == b.args;
  }
  friend bool operator!=(const Atom& a, const Atom& b) { return !(a == b); }
  friend bool operator<(const Atom& a, const Atom& b) {
    if (a.pred != b.pred) return a.pred < b.pred;
    return a.args < b.args;
  }
};

struct AtomHash {
  size_t operator()(const Atom& a) const {
    size_t h = std::hash<std::string>()(a.pred);
    IdentifierHash ih;
    for (const auto& id : a.args) h = h * 1000003u + ih(id);
    return h;
  }
};

/// Substitution over identifiers. Formulas contain no binders, so plain
/// homomorphic application is capture-free.
class Subst {
 public:
  Subst() = default;
  explicit Subst(std::map<Identifier, Identifier> m) : map_(std::move(m)) {}

  static Subst single(Identifier from, Identifier to) {
    Subst s;
    s.set(from, to);
    return s;
  }

  void set(const Identifier& from, const Identifier& to) { map_[from] = to; }
  void erase(const Identifier& from) { map_.erase(from); }
  bool empty() const { return map_.empty(); }

  const Identifier& operator()(const Identifier& id) const {
    auto it = map_.find(id);
    return it == map_.end() ? id : it->second;
  }

  bool maps(const Identifier& id) const { return map_.count(id) != 0; }
  bool hits_target(const Identifier& id) const {
    for (const auto& [k, v] : map_)
      if (v == id) return true;
    return false;
  }
  const std::map<Identifier, Identifier>& entries() const { return map_; }

 private:
  std::map<Identifier, Identifier> map_;
};

/// Immutable PCL constraint formula. `CImp` is the contractual implication
/// connective; everything else is intuitionistic.
class Formula {
 public:
  enum class Kind { Top, Bot, Atom, And, Or, Imp, CImp };

  Formula() : Formula(top()) {}

  static Formula top();
  static Formula bot();
  static Formula atom(Atom a);
  static Formula atom(std::string pred, std::vector<Identifier> args = {});
  static Formula conj(Formula l, Formula r);
  static Formula disj(Formula l, Formula r);
  static Formula impl(Formula l, Formula r);
  static Formula cimpl(Formula l, Formula r);
  static Formula conj_all(const std::vector<Formula>& fs);  // top() when empty

  Kind kind() const { return node_->kind; }
  const Atom& as_atom() const { return node_->atom; }
  Formula lhs() const { return Formula(node_->lhs); }
  Formula rhs() const { return Formula(node_->rhs); }
  size_t hash() const { return node_->hash; }

  bool is_positive() const;  // only Top/Bot/Atom/And/Or

  Formula substitute(const Subst& s) const;
  void collect_identifiers(std::set<Identifier>& out) const;
  std::set<Identifier> identifiers() const;
  void collect_atoms(std::vector<Atom>& out) const;

  std::string text() const;

  friend bool operator==(const Formula& a, const Formula& b);
  friend bool operator!=(const Formula& a, const Formula& b) { return !(a == b); }
  friend bool operator<(const Formula& a, const Formula& b);

 private:
  struct Node {
    Kind kind;
    Atom atom;
    std::shared_ptr<const Node> lhs;  // null for leaves
    std::shared_ptr<const Node> rhs;
    size_t hash = 0;
    Node(Kind k, Atom a, std::shared_ptr<const Node> l, std::shared_ptr<const Node> r);
    explicit Node(Kind k);
  };

  explicit Formula(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

struct FormulaHash {
  size_t operator()(const Formula& f) const { return f.hash(); }
};

/// Parses the concrete formula syntax: atoms `p(a,b)`, `/\`, `\/`, `->`,
/// `->>`, `top`, `bot`. Arrow connectives are right-associative and bind
/// loosest; `\/` binds looser than `/\`.
/// `resolve` maps an identifier label to a bound Identifier; unresolved
/// labels become free names.
Formula parse_formula(const std::string& text);
Formula parse_formula(const std::string& text,
                      const std::function<Identifier(const std::string&)>& resolve);

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& msg, size_t line, size_t col);
  size_t line, col;
};

}  // namespace ccal

#endif
