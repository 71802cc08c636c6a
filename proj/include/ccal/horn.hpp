#ifndef CCAL_HORN_HPP
#define CCAL_HORN_HPP

#include <stdexcept>
#include <string>
#include <vector>

#include "ccal/formula.hpp"

namespace ccal {

struct Literal {
  Atom atom;
  bool negated = false;

  friend bool operator==(const Literal& a, const Literal& b) {
    return a.negated == b.negated && a.atom == b.atom;
  }
  friend bool operator<(const Literal& a, const Literal& b) {
    if (a.negated != b.negated) return a.negated < b.negated;
    return a.atom < b.atom;
  }
};

class NonHornError : public std::runtime_error {
 public:
  explicit NonHornError(const std::string& what) : std::runtime_error(what) {}
};

class ArityError : public std::runtime_error {
 public:
  explicit ArityError(const std::string& what) : std::runtime_error(what) {}
};

/// One clause of the Horn fragment: a guarded positive premise implying a
/// conjunction of atoms (or bottom). Facts are plain clauses with premise
/// `top`. Contractual clauses may discharge their premise circularly.
struct HornClause {
  Formula premise = Formula::top();  // positive: top, atoms, /\, \/
  std::vector<Atom> heads;
  bool head_bottom = false;
  bool contractual = false;

  HornClause substitute(const Subst& s) const;
  Formula to_formula() const;
  std::string text() const;

  friend bool operator==(const HornClause& a, const HornClause& b) {
    return a.contractual == b.contractual && a.head_bottom == b.head_bottom &&
           a.premise == b.premise && a.heads == b.heads;
  }
  friend bool operator<(const HornClause& a, const HornClause& b);
};

struct Theory {
  std::vector<HornClause> clauses;

  void add(const HornClause& c) { clauses.push_back(c); }
  void add(const Theory& t) {
    clauses.insert(clauses.end(), t.clauses.begin(), t.clauses.end());
  }
  Theory substitute(const Subst& s) const;

  /// Checks the fixed-arity-per-predicate invariant; throws ArityError.
  void check_arities() const;
};

/// Splits a constraint into Horn clauses, distributing top-level conjunction.
/// Accepted shapes: facts (conjunctions of atoms), `P -> heads`,
/// `P ->> heads`, and guarded contracts `G -> (P ->> heads)` which fold the
/// guard into the contractual premise. Throws NonHornError otherwise.
std::vector<HornClause> normalize_constraint(const Formula& f);

/// Convenience: normalize many formulas into one theory.
Theory to_theory(const std::vector<Formula>& formulas);

}  // namespace ccal

#endif
