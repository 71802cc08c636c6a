#ifndef CCAL_ENTAIL_HPP
#define CCAL_ENTAIL_HPP

#include <unordered_set>
#include <vector>

#include "ccal/horn.hpp"

namespace ccal {

using AtomSet = std::unordered_set<Atom, AtomHash>;

/// The saturation reached by the fixpoint: derivable atoms plus an
/// inconsistency flag (bottom derived, everything follows).
struct Saturation {
  AtomSet atoms;
  bool bottom = false;

  bool holds(const Atom& a) const { return bottom || atoms.count(a) != 0; }
};

/// Decides the Horn-fragment consequence relation.
///
/// Plain clauses saturate forward; contractual clauses are resolved by a
/// greatest fixpoint: start from all of them firing, repeatedly drop the
/// ones whose premise is unsupported, and answer against the stable set.
/// This realizes the circular assume-guarantee reading of `->>`.
Saturation saturate(const Theory& t);

/// True iff the theory proves the goal. Positive goals are evaluated against
/// the saturation (disjunction distributes); implication goals go through the
/// deduction theorem; `a ->> b` goals are proved by weakening from `b` or by
/// chaining through a contractual hypothesis. Engine clients only pass
/// positive goals.
bool entails(const Theory& t, const Formula& goal);

/// The contractual clauses retained by the fixpoint (those that fired).
std::vector<HornClause> fired_contractual(const Theory& t);

/// True iff the theory extended with the positive literals neither proves
/// bottom nor proves any negated literal. Negation is non-derivability; it
/// exists only here.
bool consistent(const Theory& t, const std::vector<Literal>& extra);

}  // namespace ccal

#endif
