#ifndef CCAL_PARSER_HPP
#define CCAL_PARSER_HPP

#include <string>

#include "ccal/process.hpp"

namespace ccal {

struct Program {
  DefinitionSet defs;
  Process main;
};

/// Program grammar:
///   NAME(params) := PROCESS ...  main PROCESS
/// Process syntax: `0`, `{FORMULA}` active constraint, prefixes `tau`,
/// `tell(F)`, `ask(F)`, `check(l, !l, ...)`, `fuse(x, F)`, `join(x, F)`,
/// `.` prefixing, `+` sums, `||` parallel, `(x) P` variable delimitation,
/// `(new n) P` name delimitation, calls `NAME(a, b)`, `#` line comments.
/// Identifiers bound by `(x)` are variables; free identifiers are names.
Program parse_program(const std::string& text);

/// Parses a process fragment against existing definitions (used to re-read
/// serialized states).
Process parse_process_fragment(const std::string& text, const DefinitionSet& defs);

/// A theory file: formulas separated by `.` (with `#` comments).
std::vector<Formula> parse_theory(const std::string& text);

}  // namespace ccal

#endif
