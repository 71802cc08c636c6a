#include "ccal/horn.hpp"

#include <map>
#include <sstream>

namespace ccal {

HornClause HornClause::substitute(const Subst& s) const {
  HornClause out = *this;
  out.premise = premise.substitute(s);
  for (auto& a : out.heads)
    for (auto& arg : a.args) arg = s(arg);
  return out;
}

Formula HornClause::to_formula() const {
  Formula head = head_bottom ? Formula::bot() : Formula::top();
  if (!head_bottom) {
    std::vector<Formula> hs;
    hs.reserve(heads.size());
    for (const auto& a : heads) hs.push_back(Formula::atom(a));
    head = Formula::conj_all(hs);
  }
  if (!contractual && premise == Formula::top()) return head;
  return contractual ? Formula::cimpl(premise, head) : Formula::impl(premise, head);
}

std::string HornClause::text() const { return to_formula().text(); }

bool operator<(const HornClause& a, const HornClause& b) { return a.text() < b.text(); }

Theory Theory::substitute(const Subst& s) const {
  Theory out;
  out.clauses.reserve(clauses.size());
  for (const auto& c : clauses) out.clauses.push_back(c.substitute(s));
  return out;
}

void Theory::check_arities() const {
  std::map<std::string, size_t> arity;
  auto visit = [&](const Atom& a) {
    auto [it, fresh] = arity.emplace(a.pred, a.args.size());
    if (!fresh && it->second != a.args.size())
      throw ArityError("predicate '" + a.pred + "' used with arities " +
                       std::to_string(it->second) + " and " + std::to_string(a.args.size()));
  };
  std::vector<Atom> atoms;
  for (const auto& c : clauses) {
    atoms.clear();
    c.premise.collect_atoms(atoms);
    for (const auto& a : atoms) visit(a);
    for (const auto& a : c.heads) visit(a);
  }
}

namespace {

bool positive_no_bottom(const Formula& f) {
  switch (f.kind()) {
    case Formula::Kind::Top:
    case Formula::Kind::Atom:
      return true;
    case Formula::Kind::And:
    case Formula::Kind::Or:
      return positive_no_bottom(f.lhs()) && positive_no_bottom(f.rhs());
    default:
      return false;
  }
}

// heads: conjunction of atoms, or a lone bottom
void collect_heads(const Formula& f, std::vector<Atom>& heads, bool& bottom) {
  switch (f.kind()) {
    case Formula::Kind::Atom:
      heads.push_back(f.as_atom());
      return;
    case Formula::Kind::And:
      collect_heads(f.lhs(), heads, bottom);
      collect_heads(f.rhs(), heads, bottom);
      return;
    case Formula::Kind::Bot:
      bottom = true;
      return;
    case Formula::Kind::Top:
      return;
    case Formula::Kind::Or:
      throw NonHornError("disjunction is not allowed in a clause conclusion: " + f.text());
    default:
      throw NonHornError("implication nested in a clause conclusion: " + f.text());
  }
}

HornClause make_clause(const Formula& premise, const Formula& conclusion, bool contractual) {
  if (!positive_no_bottom(premise))
    throw NonHornError("clause premise must be a positive formula: " + premise.text());
  HornClause c;
  c.premise = premise;
  c.contractual = contractual;
  collect_heads(conclusion, c.heads, c.head_bottom);
  if (c.head_bottom && !c.heads.empty())
    throw NonHornError("bottom mixed with atoms in a conclusion");
  return c;
}

void normalize_into(const Formula& f, std::vector<HornClause>& out) {
  switch (f.kind()) {
    case Formula::Kind::Top:
      return;  // empty theory
    case Formula::Kind::Bot: {
      HornClause c;
      c.head_bottom = true;
      out.push_back(c);
      return;
    }
    case Formula::Kind::Atom: {
      HornClause c;
      c.heads.push_back(f.as_atom());
      out.push_back(c);
      return;
    }
    case Formula::Kind::And:
      normalize_into(f.lhs(), out);
      normalize_into(f.rhs(), out);
      return;
    case Formula::Kind::Or:
      throw NonHornError("top-level disjunction is not Horn: " + f.text());
    case Formula::Kind::CImp:
      out.push_back(make_clause(f.lhs(), f.rhs(), true));
      return;
    case Formula::Kind::Imp: {
      // Plain implication; a contractual body folds its guard into the
      // premise, as used by the one-shot constraint bundles.
      Formula guard = f.lhs();
      Formula body = f.rhs();
      while (body.kind() == Formula::Kind::Imp) {
        guard = Formula::conj(guard, body.lhs());
        body = body.rhs();
      }
      if (body.kind() == Formula::Kind::CImp) {
        Formula prem = body.lhs() == Formula::top() ? guard : Formula::conj(guard, body.lhs());
        out.push_back(make_clause(prem, body.rhs(), true));
      } else {
        out.push_back(make_clause(guard, body, false));
      }
      return;
    }
  }
}

}  // namespace

std::vector<HornClause> normalize_constraint(const Formula& f) {
  std::vector<HornClause> out;
  normalize_into(f, out);
  return out;
}

Theory to_theory(const std::vector<Formula>& formulas) {
  Theory t;
  for (const auto& f : formulas)
    for (auto& c : normalize_constraint(f)) t.add(c);
  return t;
}

}  // namespace ccal
