#include "ccal/process.hpp"

#include <sstream>

namespace ccal {

Prefix Prefix::tell(Formula f) {
  Prefix p;
  p.kind = Kind::Tell;
  p.formula = std::move(f);
  return p;
}

Prefix Prefix::ask(Formula f) {
  Prefix p;
  p.kind = Kind::Ask;
  p.formula = std::move(f);
  return p;
}

Prefix Prefix::check(std::vector<Literal> lits) {
  Prefix p;
  p.kind = Kind::Check;
  p.literals = std::move(lits);
  return p;
}

Prefix Prefix::join(Identifier subject, Formula f) {
  Prefix p;
  p.kind = Kind::Join;
  p.subject = std::move(subject);
  p.formula = std::move(f);
  return p;
}

Prefix Prefix::fuse(Identifier subject, Formula f) {
  Prefix p;
  p.kind = Kind::Fuse;
  p.subject = std::move(subject);
  p.formula = std::move(f);
  return p;
}

std::string Prefix::text() const {
  std::ostringstream os;
  switch (kind) {
    case Kind::Tau:
      return "tau";
    case Kind::Tell:
      os << "tell(" << formula.text() << ")";
      return os.str();
    case Kind::Ask:
      os << "ask(" << formula.text() << ")";
      return os.str();
    case Kind::Check: {
      os << "check(";
      for (size_t i = 0; i < literals.size(); ++i) {
        if (i) os << ", ";
        if (literals[i].negated) os << "!";
        os << Formula::atom(literals[i].atom).text();
      }
      os << ")";
      return os.str();
    }
    case Kind::Join:
      os << "join(" << subject.label << ", " << formula.text() << ")";
      return os.str();
    case Kind::Fuse:
      os << "fuse(" << subject.label << ", " << formula.text() << ")";
      return os.str();
  }
  return "";
}

struct Process::Node {
  Kind kind;
  Formula formula;                  // Constraint
  std::vector<SumBranch> branches;  // Sum
  std::shared_ptr<const Node> left, right;  // Par
  Identifier binder;                // Delim
  std::shared_ptr<const Node> body; // Delim
  std::string name;                 // Call
  std::vector<Identifier> args;     // Call
};

Process::Process() : Process(nil()) {}

Process Process::constraint(Formula f) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Constraint;
  n->formula = std::move(f);
  return Process(std::move(n));
}

Process Process::sum(std::vector<SumBranch> branches) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Sum;
  n->branches = std::move(branches);
  return Process(std::move(n));
}

Process Process::prefixed(Prefix p, Process cont) {
  return sum({SumBranch{std::move(p), std::move(cont)}});
}

Process Process::par(Process l, Process r) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Par;
  n->left = l.node_;
  n->right = r.node_;
  return Process(std::move(n));
}

Process Process::par_all(const std::vector<Process>& ps) {
  if (ps.empty()) return nil();
  Process acc = ps.back();
  for (size_t i = ps.size() - 1; i-- > 0;) acc = par(ps[i], acc);
  return acc;
}

Process Process::delim(Identifier binder, Process body) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Delim;
  n->binder = std::move(binder);
  n->body = body.node_;
  return Process(std::move(n));
}

Process Process::delim_all(const std::vector<Identifier>& binders, Process body) {
  Process acc = std::move(body);
  for (size_t i = binders.size(); i-- > 0;) acc = delim(binders[i], acc);
  return acc;
}

Process Process::call(std::string name, std::vector<Identifier> args) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Call;
  n->name = std::move(name);
  n->args = std::move(args);
  return Process(std::move(n));
}

Process::Kind Process::kind() const { return node_->kind; }
const Formula& Process::as_constraint() const { return node_->formula; }
const std::vector<Process::SumBranch>& Process::branches() const { return node_->branches; }
Process Process::left() const { return Process(node_->left); }
Process Process::right() const { return Process(node_->right); }
const Identifier& Process::binder() const { return node_->binder; }
Process Process::body() const { return Process(node_->body); }
const std::string& Process::call_name() const { return node_->name; }
const std::vector<Identifier>& Process::call_args() const { return node_->args; }

namespace {

void free_ids(const Process& p, std::set<Identifier>& bound, std::set<Identifier>& out) {
  auto add = [&](const Identifier& id) {
    if (!bound.count(id)) out.insert(id);
  };
  switch (p.kind()) {
    case Process::Kind::Constraint:
      for (const auto& id : p.as_constraint().identifiers()) add(id);
      return;
    case Process::Kind::Sum:
      for (const auto& b : p.branches()) {
        const Prefix& pf = b.prefix;
        if (pf.kind == Prefix::Kind::Tell || pf.kind == Prefix::Kind::Ask ||
            pf.kind == Prefix::Kind::Join || pf.kind == Prefix::Kind::Fuse)
          for (const auto& id : pf.formula.identifiers()) add(id);
        if (pf.kind == Prefix::Kind::Join || pf.kind == Prefix::Kind::Fuse) add(pf.subject);
        for (const auto& lit : pf.literals)
          for (const auto& id : lit.atom.args) add(id);
        free_ids(b.cont, bound, out);
      }
      return;
    case Process::Kind::Par:
      free_ids(p.left(), bound, out);
      free_ids(p.right(), bound, out);
      return;
    case Process::Kind::Delim: {
      bool fresh = bound.insert(p.binder()).second;
      free_ids(p.body(), bound, out);
      if (fresh) bound.erase(p.binder());
      return;
    }
    case Process::Kind::Call:
      for (const auto& id : p.call_args()) add(id);
      return;
  }
}

}  // namespace

std::set<Identifier> Process::free_identifiers() const {
  std::set<Identifier> bound, out;
  free_ids(*this, bound, out);
  return out;
}

void Process::collect_labels(std::set<std::string>& out) const {
  switch (kind()) {
    case Kind::Constraint:
      for (const auto& id : as_constraint().identifiers()) out.insert(id.label);
      return;
    case Kind::Sum:
      for (const auto& b : branches()) {
        const Prefix& pf = b.prefix;
        for (const auto& id : pf.formula.identifiers()) out.insert(id.label);
        if (pf.kind == Prefix::Kind::Join || pf.kind == Prefix::Kind::Fuse)
          out.insert(pf.subject.label);
        for (const auto& lit : pf.literals)
          for (const auto& id : lit.atom.args) out.insert(id.label);
        b.cont.collect_labels(out);
      }
      return;
    case Kind::Par:
      left().collect_labels(out);
      right().collect_labels(out);
      return;
    case Kind::Delim:
      out.insert(binder().label);
      body().collect_labels(out);
      return;
    case Kind::Call:
      for (const auto& id : call_args()) out.insert(id.label);
      return;
  }
}

std::string Process::text() const {
  std::ostringstream os;
  switch (kind()) {
    case Kind::Constraint:
      os << "{" << as_constraint().text() << "}";
      return os.str();
    case Kind::Sum: {
      if (branches().empty()) return "0";
      for (size_t i = 0; i < branches().size(); ++i) {
        if (i) os << " + ";
        const auto& b = branches()[i];
        os << b.prefix.text() << ". ";
        Process c = b.cont;
        bool paren = c.kind() == Kind::Par || (c.kind() == Kind::Sum && c.branches().size() > 1);
        if (paren) os << "( ";
        os << c.text();
        if (paren) os << " )";
      }
      return os.str();
    }
    case Kind::Par: {
      auto side = [](const Process& q) {
        bool paren = q.kind() == Kind::Sum && !q.branches().empty();
        return paren ? "( " + q.text() + " )" : q.text();
      };
      os << side(left()) << " || " << side(right());
      return os.str();
    }
    case Kind::Delim: {
      if (binder().is_name())
        os << "(new " << binder().label << ") ";
      else
        os << "(" << binder().label << ") ";
      Process b = body();
      bool paren = b.kind() == Kind::Par || (b.kind() == Kind::Sum && b.branches().size() > 1);
      if (paren) os << "( " << b.text() << " )";
      else os << b.text();
      return os.str();
    }
    case Kind::Call: {
      os << call_name() << "(";
      for (size_t i = 0; i < call_args().size(); ++i) {
        if (i) os << ", ";
        os << call_args()[i].label;
      }
      os << ")";
      return os.str();
    }
  }
  return "";
}

bool operator==(const Process& a, const Process& b) {
  if (a.node_ == b.node_) return true;
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case Process::Kind::Constraint:
      return a.as_constraint() == b.as_constraint();
    case Process::Kind::Sum: {
      if (a.branches().size() != b.branches().size()) return false;
      for (size_t i = 0; i < a.branches().size(); ++i) {
        const auto& x = a.branches()[i];
        const auto& y = b.branches()[i];
        if (x.prefix.kind != y.prefix.kind || x.prefix.formula != y.prefix.formula ||
            x.prefix.subject != y.prefix.subject || !(x.prefix.literals == y.prefix.literals) ||
            x.cont != y.cont)
          return false;
      }
      return true;
    }
    case Process::Kind::Par:
      return a.left() == b.left() && a.right() == b.right();
    case Process::Kind::Delim:
      return a.binder() == b.binder() && a.body() == b.body();
    case Process::Kind::Call:
      return a.call_name() == b.call_name() && a.call_args() == b.call_args();
  }
  return false;
}

const Definition& DefinitionSet::at(const std::string& name) const {
  auto it = defs.find(name);
  if (it == defs.end()) throw std::runtime_error("unknown process constant: " + name);
  return it->second;
}

Process DefinitionSet::unfold(const std::string& name,
                              const std::vector<Identifier>& args) const {
  const Definition& d = at(name);
  if (d.params.size() != args.size())
    throw ArityError("call " + name + " expects " + std::to_string(d.params.size()) +
                     " arguments, got " + std::to_string(args.size()));
  Subst s;
  for (size_t i = 0; i < args.size(); ++i) s.set(d.params[i], args[i]);
  return substitute(d.body, s);
}

Prefix substitute(const Prefix& p, const Subst& s, bool& degenerated) {
  Prefix out = p;
  degenerated = false;
  out.formula = p.formula.substitute(s);
  for (auto& lit : out.literals)
    for (auto& arg : lit.atom.args) arg = s(arg);
  if (p.kind == Prefix::Kind::Join || p.kind == Prefix::Kind::Fuse) {
    const Identifier& target = s(p.subject);
    if (target != p.subject) {
      if (target.is_name()) {
        // fuse/join on an instantiated subject behaves as a plain ask
        out = Prefix::ask(out.formula);
        degenerated = true;
      } else {
        out.subject = target;
      }
    }
  }
  return out;
}

namespace {

std::string fresh_label(const std::string& base, const std::set<std::string>& taken) {
  if (!taken.count(base)) return base;
  for (int i = 1;; ++i) {
    std::string cand = base + "_" + std::to_string(i);
    if (!taken.count(cand)) return cand;
  }
}

Process subst_rec(const Process& p, const Subst& s) {
  if (s.empty()) return p;
  switch (p.kind()) {
    case Process::Kind::Constraint:
      return Process::constraint(p.as_constraint().substitute(s));
    case Process::Kind::Sum: {
      std::vector<Process::SumBranch> out;
      out.reserve(p.branches().size());
      for (const auto& b : p.branches()) {
        bool deg = false;
        out.push_back({substitute(b.prefix, s, deg), subst_rec(b.cont, s)});
      }
      return Process::sum(std::move(out));
    }
    case Process::Kind::Par:
      return Process::par(subst_rec(p.left(), s), subst_rec(p.right(), s));
    case Process::Kind::Delim: {
      Identifier binder = p.binder();
      Subst inner = s;
      inner.erase(binder);
      if (inner.empty()) return p;
      if (inner.hits_target(binder)) {
        // binder would capture an incoming identifier: alpha-rename it
        std::set<std::string> taken;
        p.body().collect_labels(taken);
        for (const auto& [k, v] : inner.entries()) {
          taken.insert(k.label);
          taken.insert(v.label);
        }
        Identifier renamed{binder.kind, fresh_label(binder.label, taken)};
        Process body = subst_rec(p.body(), Subst::single(binder, renamed));
        return Process::delim(renamed, subst_rec(body, inner));
      }
      return Process::delim(binder, subst_rec(p.body(), inner));
    }
    case Process::Kind::Call: {
      std::vector<Identifier> args = p.call_args();
      for (auto& a : args) a = s(a);
      return Process::call(p.call_name(), std::move(args));
    }
  }
  return p;
}

void check_guarded(const Process& p, bool guarded, const DefinitionSet& defs,
                   const std::string& where) {
  switch (p.kind()) {
    case Process::Kind::Constraint:
      return;
    case Process::Kind::Sum:
      for (const auto& b : p.branches()) check_guarded(b.cont, true, defs, where);
      return;
    case Process::Kind::Par:
      check_guarded(p.left(), guarded, defs, where);
      check_guarded(p.right(), guarded, defs, where);
      return;
    case Process::Kind::Delim:
      check_guarded(p.body(), guarded, defs, where);
      return;
    case Process::Kind::Call: {
      const Definition& d = defs.at(p.call_name());
      if (d.params.size() != p.call_args().size())
        throw ArityError("call " + p.call_name() + " in " + where + " expects " +
                         std::to_string(d.params.size()) + " arguments, got " +
                         std::to_string(p.call_args().size()));
      if (!guarded)
        throw UnguardedRecursionError("call " + p.call_name() + " in " + where +
                                      " is not guarded by a prefix");
      return;
    }
  }
}

}  // namespace

Process substitute(const Process& p, const Subst& s) { return subst_rec(p, s); }

void validate_program(const DefinitionSet& defs, const Process& main) {
  for (const auto& [name, d] : defs.defs) check_guarded(d.body, false, defs, name);
  // top-level calls in main are fine: one unfolding exposes guarded bodies
  check_guarded(main, true, defs, "main");
}

}  // namespace ccal
