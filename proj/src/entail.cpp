#include "ccal/entail.hpp"

namespace ccal {

namespace {

bool eval_positive(const Formula& f, const Saturation& s) {
  if (s.bottom) return true;
  switch (f.kind()) {
    case Formula::Kind::Top:
      return true;
    case Formula::Kind::Bot:
      return false;
    case Formula::Kind::Atom:
      return s.atoms.count(f.as_atom()) != 0;
    case Formula::Kind::And:
      return eval_positive(f.lhs(), s) && eval_positive(f.rhs(), s);
    case Formula::Kind::Or:
      return eval_positive(f.lhs(), s) || eval_positive(f.rhs(), s);
    default:
      return false;  // premises never contain implications
  }
}

// Forward closure under the plain clauses, seeded with the assumed
// contractual conclusions.
Saturation inner_closure(const Theory& t, const std::vector<char>& assumed) {
  Saturation s;
  for (size_t i = 0; i < t.clauses.size(); ++i) {
    const HornClause& c = t.clauses[i];
    if (c.contractual && assumed[i]) {
      if (c.head_bottom) s.bottom = true;
      for (const auto& a : c.heads) s.atoms.insert(a);
    }
  }
  bool changed = true;
  while (changed && !s.bottom) {
    changed = false;
    for (const auto& c : t.clauses) {
      if (c.contractual) continue;
      if (!eval_positive(c.premise, s)) continue;
      if (c.head_bottom) {
        if (!s.bottom) {
          s.bottom = true;
          changed = true;
        }
        continue;
      }
      for (const auto& a : c.heads)
        if (s.atoms.insert(a).second) changed = true;
    }
  }
  return s;
}

Saturation saturate_with(const Theory& t, std::vector<char>& retained) {
  retained.assign(t.clauses.size(), 1);
  for (;;) {
    Saturation s = inner_closure(t, retained);
    bool changed = false;
    for (size_t i = 0; i < t.clauses.size(); ++i) {
      const HornClause& c = t.clauses[i];
      if (!c.contractual || !retained[i]) continue;
      if (!eval_positive(c.premise, s)) {
        retained[i] = 0;
        changed = true;
      }
    }
    if (!changed) return s;
  }
}

bool eval_goal(const Theory& t, const Saturation& s, const Formula& g);

// a ->> b as a goal: weakening (b alone suffices), or chain through a
// contractual hypothesis p ->> q with  T |- a -> p  and  T |- q -> b.
bool prove_cimpl_goal(const Theory& t, const Saturation& s, const Formula& g) {
  if (eval_goal(t, s, g.rhs())) return true;
  for (const auto& c : t.clauses) {
    if (!c.contractual) continue;
    bool ok_left = false;
    try {
      Theory left = t;
      for (auto& cl : normalize_constraint(g.lhs())) left.add(cl);
      ok_left = entails(left, c.premise);
    } catch (const NonHornError&) {
      continue;
    }
    if (!ok_left) continue;
    Theory right = t;
    HornClause fact;
    fact.heads = c.heads;
    fact.head_bottom = c.head_bottom;
    right.add(fact);
    if (entails(right, g.rhs())) return true;
  }
  return false;
}

bool eval_goal(const Theory& t, const Saturation& s, const Formula& g) {
  if (s.bottom) return true;
  switch (g.kind()) {
    case Formula::Kind::Top:
      return true;
    case Formula::Kind::Bot:
      return false;
    case Formula::Kind::Atom:
      return s.atoms.count(g.as_atom()) != 0;
    case Formula::Kind::And:
      return eval_goal(t, s, g.lhs()) && eval_goal(t, s, g.rhs());
    case Formula::Kind::Or:
      return eval_goal(t, s, g.lhs()) || eval_goal(t, s, g.rhs());
    case Formula::Kind::Imp: {
      try {
        Theory ext = t;
        for (auto& c : normalize_constraint(g.lhs())) ext.add(c);
        return entails(ext, g.rhs());
      } catch (const NonHornError&) {
        return false;
      }
    }
    case Formula::Kind::CImp:
      return prove_cimpl_goal(t, s, g);
  }
  return false;
}

}  // namespace

Saturation saturate(const Theory& t) {
  std::vector<char> retained;
  return saturate_with(t, retained);
}

bool entails(const Theory& t, const Formula& goal) {
  Saturation s = saturate(t);
  return eval_goal(t, s, goal);
}

std::vector<HornClause> fired_contractual(const Theory& t) {
  std::vector<char> retained;
  saturate_with(t, retained);
  std::vector<HornClause> out;
  for (size_t i = 0; i < t.clauses.size(); ++i)
    if (t.clauses[i].contractual && retained[i]) out.push_back(t.clauses[i]);
  return out;
}

bool consistent(const Theory& t, const std::vector<Literal>& extra) {
  Theory ext = t;
  for (const auto& lit : extra) {
    if (lit.negated) continue;
    HornClause fact;
    fact.heads.push_back(lit.atom);
    ext.add(fact);
  }
  Saturation s = saturate(ext);
  if (s.bottom) return false;
  for (const auto& lit : extra)
    if (lit.negated && s.atoms.count(lit.atom) != 0) return false;
  return true;
}

}  // namespace ccal
