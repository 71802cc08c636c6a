#ifndef CCAL_PROCESS_HPP
#define CCAL_PROCESS_HPP

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "ccal/horn.hpp"

namespace ccal {

/// Guard prefix. `fuse`/`join` carry a variable subject at construction;
/// substituting a name for the subject degenerates them into `ask`.
struct Prefix {
  enum class Kind { Tau, Tell, Ask, Check, Join, Fuse };

  Kind kind = Kind::Tau;
  Formula formula;                // Tell/Ask/Join/Fuse payload
  Identifier subject;             // Join/Fuse
  std::vector<Literal> literals;  // Check

  static Prefix tau() { return Prefix{}; }
  static Prefix tell(Formula f);
  static Prefix ask(Formula f);
  static Prefix check(std::vector<Literal> lits);
  static Prefix join(Identifier subject, Formula f);
  static Prefix fuse(Identifier subject, Formula f);

  std::string text() const;
};

/// Immutable process term: active constraint, guarded sum (empty sum is 0),
/// parallel composition, delimitation, or constant call.
class Process {
 public:
  enum class Kind { Constraint, Sum, Par, Delim, Call };

  struct SumBranch {
    Prefix prefix;
    Process cont;
  };

  Process();  // 0

  static Process constraint(Formula f);
  static Process sum(std::vector<SumBranch> branches);
  static Process nil() { return sum({}); }
  static Process prefixed(Prefix p, Process cont);
  static Process par(Process l, Process r);
  static Process par_all(const std::vector<Process>& ps);  // nil when empty
  static Process delim(Identifier binder, Process body);
  static Process delim_all(const std::vector<Identifier>& binders, Process body);
  static Process call(std::string name, std::vector<Identifier> args);

  Kind kind() const;
  const Formula& as_constraint() const;
  const std::vector<SumBranch>& branches() const;
  Process left() const;
  Process right() const;
  const Identifier& binder() const;
  Process body() const;
  const std::string& call_name() const;
  const std::vector<Identifier>& call_args() const;

  bool is_nil() const { return kind() == Kind::Sum && branches().empty(); }

  /// All identifiers occurring free (delimitation binds; call args are free).
  std::set<Identifier> free_identifiers() const;
  /// Every label occurring anywhere, bound or free (for freshness pools).
  void collect_labels(std::set<std::string>& out) const;

  std::string text() const;

  friend bool operator==(const Process& a, const Process& b);
  friend bool operator!=(const Process& a, const Process& b) { return !(a == b); }

 private:
  struct Node;
  explicit Process(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

struct Definition {
  std::vector<Identifier> params;  // variables
  Process body;
};

struct DefinitionSet {
  std::map<std::string, Definition> defs;

  bool has(const std::string& name) const { return defs.count(name) != 0; }
  const Definition& at(const std::string& name) const;
  /// Instantiates the body; throws if unknown or wrong arity.
  Process unfold(const std::string& name, const std::vector<Identifier>& args) const;
};

class UnguardedRecursionError : public std::runtime_error {
 public:
  explicit UnguardedRecursionError(const std::string& w) : std::runtime_error(w) {}
};

/// Capture-avoiding substitution. Renames delimited binders away from the
/// substitution range when needed; a fuse/join whose subject is mapped to a
/// name becomes an ask of the substituted body.
Process substitute(const Process& p, const Subst& s);

/// Validates guardedness (every call in every body behind a prefix) and call
/// arities across the definitions and the main process.
void validate_program(const DefinitionSet& defs, const Process& main);

Prefix substitute(const Prefix& p, const Subst& s, bool& degenerated);

}  // namespace ccal

#endif
