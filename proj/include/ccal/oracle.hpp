#ifndef CCAL_ORACLE_HPP
#define CCAL_ORACLE_HPP

#include <vector>

#include "ccal/horn.hpp"

namespace ccal {

enum class OracleResult { Proved, NotProvedWithinDepth };

/// Depth-bounded backward proof search over the intuitionistic rules plus
/// the contractual-implication axiom schemata, instantiated over the
/// subformula closure of hypotheses and goal. Independent of the fixpoint
/// engine; used only as a cross-check. "Proved" is sound; the converse is
/// bounded by the depth.
OracleResult oracle_prove(const std::vector<Formula>& hypotheses, const Formula& goal,
                          int depth);
OracleResult oracle_prove(const Theory& t, const Formula& goal, int depth);

}  // namespace ccal

#endif
