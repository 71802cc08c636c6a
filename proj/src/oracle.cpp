#include "ccal/oracle.hpp"

#include <map>
#include <set>
#include <string>

namespace ccal {

namespace {

using HypSet = std::set<Formula>;

struct SearchCtx {
  std::vector<Formula> cimp_candidates;  // contractual subformulas, for the
                                         // transitivity axiom schema
  std::set<std::pair<std::string, std::string>> proved;
  std::map<std::pair<std::string, std::string>, int> failed_at;
  long nodes = 0;
  static constexpr long kNodeBudget = 4000000;
};

void subformulas(const Formula& f, std::set<Formula>& out) {
  if (!out.insert(f).second) return;
  switch (f.kind()) {
    case Formula::Kind::And:
    case Formula::Kind::Or:
    case Formula::Kind::Imp:
    case Formula::Kind::CImp:
      subformulas(f.lhs(), out);
      subformulas(f.rhs(), out);
      break;
    default:
      break;
  }
}

std::string hyps_key(const HypSet& hyps) {
  std::string k;
  for (const auto& h : hyps) {
    k += h.text();
    k += ';';
  }
  return k;
}

bool prove(SearchCtx& ctx, const HypSet& hyps, const Formula& g, int d);

bool prove_from(SearchCtx& ctx, HypSet hyps, const Formula& extra, const Formula& g, int d) {
  hyps.insert(extra);
  return prove(ctx, hyps, g, d);
}

bool prove(SearchCtx& ctx, const HypSet& hyps, const Formula& g, int d) {
  using K = Formula::Kind;
  // zero-cost discharges
  if (g.kind() == K::Top) return true;
  if (hyps.count(Formula::bot())) return true;
  if (hyps.count(g)) return true;
  if (g.kind() == K::Imp && (hyps.count(g.rhs()) || g.lhs() == g.rhs())) return true;
  if (g.kind() == K::CImp && (g.rhs() == Formula::top() || hyps.count(g.rhs()))) return true;

  if (d <= 0) return false;
  if (++ctx.nodes > SearchCtx::kNodeBudget) return false;

  auto key = std::make_pair(hyps_key(hyps), g.text());
  if (ctx.proved.count(key)) return true;
  auto it = ctx.failed_at.find(key);
  if (it != ctx.failed_at.end() && it->second >= d) return false;

  bool ok = false;
  switch (g.kind()) {
    case K::And:
      ok = prove(ctx, hyps, g.lhs(), d) && prove(ctx, hyps, g.rhs(), d);
      break;
    case K::Or:
      ok = prove(ctx, hyps, g.lhs(), d) || prove(ctx, hyps, g.rhs(), d);
      break;
    case K::Imp:
      ok = prove_from(ctx, hyps, g.lhs(), g.rhs(), d - 1);
      break;
    case K::CImp:
      // weakening:  b  implies  a ->> b
      ok = prove(ctx, hyps, g.rhs(), d - 1);
      // transitivity schema: (a -> p) -> (p ->> q) -> (q -> b) -> (a ->> b)
      for (size_t i = 0; !ok && i < ctx.cimp_candidates.size(); ++i) {
        const Formula& c = ctx.cimp_candidates[i];
        if (c == g) continue;
        ok = prove(ctx, hyps, c, d - 1) &&
             prove(ctx, hyps, Formula::impl(g.lhs(), c.lhs()), d - 1) &&
             prove(ctx, hyps, Formula::impl(c.rhs(), g.rhs()), d - 1);
      }
      break;
    default:
      break;
  }

  // fixpoint schema: (g ->> g) -> g
  if (!ok && g.kind() != K::CImp)
    ok = prove(ctx, hyps, Formula::cimpl(g, g), d - 1);

  if (!ok) {
    for (const auto& h : hyps) {
      if (ok) break;
      switch (h.kind()) {
        case K::Imp:
        case K::CImp:
          // contractual hypotheses may also be consumed as implications
          if (!hyps.count(h.rhs()))
            ok = prove(ctx, hyps, h.lhs(), d - 1) && prove_from(ctx, hyps, h.rhs(), g, d - 1);
          break;
        case K::And:
          if (!hyps.count(h.lhs()) || !hyps.count(h.rhs())) {
            HypSet ext = hyps;
            ext.insert(h.lhs());
            ext.insert(h.rhs());
            ok = prove(ctx, ext, g, d - 1);
          }
          break;
        case K::Or:
          if (!hyps.count(h.lhs()) && !hyps.count(h.rhs()))
            ok = prove_from(ctx, hyps, h.lhs(), g, d - 1) &&
                 prove_from(ctx, hyps, h.rhs(), g, d - 1);
          break;
        default:
          break;
      }
    }
  }

  if (ok)
    ctx.proved.insert(key);
  else if (it == ctx.failed_at.end() || it->second < d)
    ctx.failed_at[key] = d;
  return ok;
}

}  // namespace

OracleResult oracle_prove(const std::vector<Formula>& hypotheses, const Formula& goal,
                          int depth) {
  SearchCtx ctx;
  std::set<Formula> closure;
  subformulas(goal, closure);
  HypSet hyps;
  for (const auto& h : hypotheses) {
    hyps.insert(h);
    subformulas(h, closure);
  }
  for (const auto& f : closure)
    if (f.kind() == Formula::Kind::CImp) ctx.cimp_candidates.push_back(f);
  return prove(ctx, hyps, goal, depth) ? OracleResult::Proved
                                       : OracleResult::NotProvedWithinDepth;
}

OracleResult oracle_prove(const Theory& t, const Formula& goal, int depth) {
  std::vector<Formula> hyps;
  hyps.reserve(t.clauses.size());
  for (const auto& c : t.clauses) hyps.push_back(c.to_formula());
  return oracle_prove(hyps, goal, depth);
}

}  // namespace ccal
