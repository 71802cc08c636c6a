#include "ccal/normal_form.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace ccal {

Theory NormalForm::store_theory() const {
  Theory t;
  for (const auto& f : store)
    for (auto& c : normalize_constraint(f)) t.add(c);
  return t;
}

namespace {

std::string fresh_label(const std::string& base, const std::set<std::string>& taken) {
  if (!taken.count(base)) return base;
  for (int i = 1;; ++i) {
    std::string cand = base + "_" + std::to_string(i);
    if (!taken.count(cand)) return cand;
  }
}

struct Decomposer {
  const DefinitionSet& defs;
  std::set<std::string> used_labels;
  NormalForm nf;
  int unfolds = 0;

  void run(const Process& p) {
    switch (p.kind()) {
      case Process::Kind::Par:
        run(p.left());
        run(p.right());
        return;
      case Process::Kind::Constraint:
        nf.store.push_back(p.as_constraint());
        return;
      case Process::Kind::Sum:
        if (!p.branches().empty()) nf.agents.push_back(p);
        return;
      case Process::Kind::Call: {
        if (++unfolds > 100000)
          throw UnguardedRecursionError("unfolding of " + p.call_name() + " does not converge");
        run(defs.unfold(p.call_name(), p.call_args()));
        return;
      }
      case Process::Kind::Delim: {
        Identifier binder = p.binder();
        Process body = p.body();
        if (used_labels.count(binder.label)) {
          Identifier renamed{binder.kind, fresh_label(binder.label, used_labels)};
          body = substitute(body, Subst::single(binder, renamed));
          binder = renamed;
        }
        used_labels.insert(binder.label);
        nf.binders.push_back(binder);
        run(body);
        return;
      }
    }
  }
};

// ---- canonical serialization ----------------------------------------------

using Env = std::map<Identifier, std::string>;

std::string show_id(const Identifier& id, const Env& env) {
  auto it = env.find(id);
  return it == env.end() ? id.label : it->second;
}

std::string show_formula(const Formula& f, const Env& env) {
  switch (f.kind()) {
    case Formula::Kind::Top:
      return "top";
    case Formula::Kind::Bot:
      return "bot";
    case Formula::Kind::Atom: {
      const Atom& a = f.as_atom();
      std::string out = a.pred;
      if (!a.args.empty()) {
        out += "(";
        for (size_t i = 0; i < a.args.size(); ++i) {
          if (i) out += ",";
          out += show_id(a.args[i], env);
        }
        out += ")";
      }
      return out;
    }
    case Formula::Kind::And:
      return "(" + show_formula(f.lhs(), env) + " /\\ " + show_formula(f.rhs(), env) + ")";
    case Formula::Kind::Or:
      return "(" + show_formula(f.lhs(), env) + " \\/ " + show_formula(f.rhs(), env) + ")";
    case Formula::Kind::Imp:
      return "(" + show_formula(f.lhs(), env) + " -> " + show_formula(f.rhs(), env) + ")";
    case Formula::Kind::CImp:
      return "(" + show_formula(f.lhs(), env) + " ->> " + show_formula(f.rhs(), env) + ")";
  }
  return "";
}

std::string show_prefix(const Prefix& p, const Env& env) {
  switch (p.kind) {
    case Prefix::Kind::Tau:
      return "tau";
    case Prefix::Kind::Tell:
      return "tell(" + show_formula(p.formula, env) + ")";
    case Prefix::Kind::Ask:
      return "ask(" + show_formula(p.formula, env) + ")";
    case Prefix::Kind::Check: {
      std::string out = "check(";
      std::vector<std::string> parts;
      for (const auto& lit : p.literals) {
        std::string t = lit.negated ? "!" : "";
        parts.push_back(t + show_formula(Formula::atom(lit.atom), env));
      }
      std::sort(parts.begin(), parts.end());
      for (size_t i = 0; i < parts.size(); ++i) {
        if (i) out += ", ";
        out += parts[i];
      }
      return out + ")";
    }
    case Prefix::Kind::Join:
      return "join(" + show_id(p.subject, env) + ", " + show_formula(p.formula, env) + ")";
    case Prefix::Kind::Fuse:
      return "fuse(" + show_id(p.subject, env) + ", " + show_formula(p.formula, env) + ")";
  }
  return "";
}

// Serializes with parallel components and sum branches as sorted multisets
// and nested binders as depth-indexed placeholders.
std::string show_process(const Process& p, const Env& env, int depth) {
  switch (p.kind()) {
    case Process::Kind::Constraint:
      return "{" + show_formula(p.as_constraint(), env) + "}";
    case Process::Kind::Sum: {
      if (p.branches().empty()) return "0";
      std::vector<std::string> parts;
      for (const auto& b : p.branches()) {
        std::string cont = show_process(b.cont, env, depth);
        bool paren = b.cont.kind() == Process::Kind::Par ||
                     (b.cont.kind() == Process::Kind::Sum && b.cont.branches().size() > 1);
        parts.push_back(show_prefix(b.prefix, env) + ". " +
                        (paren ? "( " + cont + " )" : cont));
      }
      std::sort(parts.begin(), parts.end());
      std::string out;
      for (size_t i = 0; i < parts.size(); ++i) {
        if (i) out += " + ";
        out += parts[i];
      }
      return out;
    }
    case Process::Kind::Par: {
      std::vector<Process> leaves;
      std::vector<Process> stack = {p};
      while (!stack.empty()) {
        Process q = stack.back();
        stack.pop_back();
        if (q.kind() == Process::Kind::Par) {
          stack.push_back(q.right());
          stack.push_back(q.left());
        } else if (!q.is_nil()) {
          leaves.push_back(q);
        }
      }
      if (leaves.empty()) return "0";
      std::vector<std::string> parts;
      for (const auto& q : leaves) {
        std::string t = show_process(q, env, depth);
        bool paren = q.kind() == Process::Kind::Sum && !q.branches().empty();
        parts.push_back(paren ? "( " + t + " )" : t);
      }
      std::sort(parts.begin(), parts.end());
      std::string out;
      for (size_t i = 0; i < parts.size(); ++i) {
        if (i) out += " || ";
        out += parts[i];
      }
      return out;
    }
    case Process::Kind::Delim: {
      std::string token = "_d" + std::to_string(depth);
      Env inner = env;
      inner[p.binder()] = token;
      std::string head =
          p.binder().is_name() ? "(new " + token + ") " : "(" + token + ") ";
      Process b = p.body();
      std::string body = show_process(b, inner, depth + 1);
      bool paren = b.kind() == Process::Kind::Par ||
                   (b.kind() == Process::Kind::Sum && b.branches().size() > 1);
      return head + (paren ? "( " + body + " )" : body);
    }
    case Process::Kind::Call: {
      std::string out = p.call_name() + "(";
      for (size_t i = 0; i < p.call_args().size(); ++i) {
        if (i) out += ", ";
        out += show_id(p.call_args()[i], env);
      }
      return out + ")";
    }
  }
  return "";
}

std::vector<std::string> item_texts(const NormalForm& nf, const Env& env) {
  std::vector<std::string> items;
  items.reserve(nf.store.size() + nf.agents.size());
  for (const auto& f : nf.store) items.push_back("{" + show_formula(f, env) + "}");
  for (const auto& a : nf.agents) {
    std::string t = show_process(a, env, 0);
    bool paren = a.kind() == Process::Kind::Sum && !a.branches().empty();
    items.push_back(paren ? "( " + t + " )" : t);
  }
  std::sort(items.begin(), items.end());
  return items;
}

std::string assemble(const NormalForm& nf, const std::vector<size_t>& order) {
  Env env;
  std::string head;
  for (size_t i = 0; i < order.size(); ++i) {
    const Identifier& b = nf.binders[order[i]];
    std::string token = "_b" + std::to_string(i);
    env[b] = token;
    head += b.is_name() ? "(new " + token + ") " : "(" + token + ") ";
  }
  auto items = item_texts(nf, env);
  if (items.empty()) return head.empty() ? "0" : head + "0";
  std::string body;
  for (size_t i = 0; i < items.size(); ++i) {
    if (i) body += " || ";
    body += items[i];
  }
  if (nf.binders.empty() && items.size() == 1) return body;
  return head + "( " + body + " )";
}

// Colour refinement over binders; signatures are the item texts seen with
// the binder individualized. Branch on the first non-singleton class and
// take the lexicographically least serialization.
struct Canonicalizer {
  const NormalForm& nf;
  size_t k;

  explicit Canonicalizer(const NormalForm& n) : nf(n), k(n.binders.size()) {}

  std::vector<int> refine(std::vector<int> color) {
    for (;;) {
      std::vector<std::pair<std::pair<int, std::string>, size_t>> keyed(k);
      for (size_t i = 0; i < k; ++i) {
        Env env;
        for (size_t j = 0; j < k; ++j)
          env[nf.binders[j]] = j == i ? "_self" : "_c" + std::to_string(color[j]);
        std::string sig;
        for (const auto& t : item_texts(nf, env)) {
          sig += t;
          sig += '\n';
        }
        keyed[i] = {{color[i], sig}, i};
      }
      std::sort(keyed.begin(), keyed.end());
      std::vector<int> next(k);
      int c = 0;
      for (size_t i = 0; i < k; ++i) {
        if (i > 0 && keyed[i].first != keyed[i - 1].first) ++c;
        next[keyed[i].second] = c;
      }
      if (next == color) return color;
      color = std::move(next);
    }
  }

  void search(std::vector<int> color, std::string& best) {
    color = refine(std::move(color));
    // find first non-singleton class
    std::map<int, std::vector<size_t>> classes;
    for (size_t i = 0; i < k; ++i) classes[color[i]].push_back(i);
    for (const auto& [c, members] : classes) {
      if (members.size() > 1) {
        for (size_t m : members) {
          std::vector<int> forced = color;
          for (size_t j = 0; j < k; ++j) forced[j] = 2 * color[j] + 1;
          forced[m] = 2 * c;  // individualize m below its class
          search(std::move(forced), best);
        }
        return;
      }
    }
    // discrete: order binders by colour
    std::vector<size_t> order(k);
    for (size_t i = 0; i < k; ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](size_t a, size_t b) { return color[a] < color[b]; });
    std::string text = assemble(nf, order);
    if (best.empty() || text < best) best = std::move(text);
  }
};

}  // namespace

NormalForm to_normal_form(const Process& p, const DefinitionSet& defs) {
  Decomposer d{defs, {}, {}, 0};
  for (const auto& id : p.free_identifiers()) d.used_labels.insert(id.label);
  for (const auto& [name, def] : defs.defs)
    for (const auto& id : def.body.free_identifiers()) d.used_labels.insert(id.label);
  d.run(p);
  std::sort(d.nf.store.begin(), d.nf.store.end());
  std::sort(d.nf.agents.begin(), d.nf.agents.end(),
            [](const Process& a, const Process& b) { return a.text() < b.text(); });
  return std::move(d.nf);
}

Process nf_to_process(const NormalForm& nf) {
  std::vector<Process> items;
  items.reserve(nf.store.size() + nf.agents.size());
  for (const auto& f : nf.store) items.push_back(Process::constraint(f));
  for (const auto& a : nf.agents) items.push_back(a);
  return Process::delim_all(nf.binders, Process::par_all(items));
}

std::string canonical_text(const NormalForm& nf) {
  if (nf.binders.empty()) {
    std::vector<size_t> order;
    return assemble(nf, order);
  }
  Canonicalizer c(nf);
  std::string best;
  std::vector<int> init(nf.binders.size());
  for (size_t i = 0; i < nf.binders.size(); ++i)
    init[i] = nf.binders[i].is_name() ? 0 : 1;
  c.search(std::move(init), best);
  return best;
}

bool struct_equiv(const Process& a, const Process& b, const DefinitionSet& defs) {
  return canonical_text(to_normal_form(a, defs)) == canonical_text(to_normal_form(b, defs));
}

}  // namespace ccal
