#include <vector>

#include "ccal/entail.hpp"
#include "ccal/oracle.hpp"
#include "doctest.h"

using namespace ccal;

namespace {

Theory theory_of(const std::vector<std::string>& formulas) {
  std::vector<Formula> fs;
  for (const auto& s : formulas) fs.push_back(parse_formula(s));
  return to_theory(fs);
}

bool proves(const std::vector<std::string>& theory, const std::string& goal) {
  return entails(theory_of(theory), parse_formula(goal));
}

}  // namespace

TEST_CASE("formula parsing and printing") {
  Formula f = parse_formula("order(x) /\\ (pay(x) \\/ insurance(x)) ->> ship(x)");
  CHECK(f.kind() == Formula::Kind::CImp);
  CHECK(f.lhs().kind() == Formula::Kind::And);
  CHECK(parse_formula(f.text()) == f);

  // precedence: /\ over \/ over arrows; arrows right-associative
  Formula g = parse_formula("a /\\ b \\/ c -> d -> e");
  CHECK(g.kind() == Formula::Kind::Imp);
  CHECK(g.lhs().kind() == Formula::Kind::Or);
  CHECK(g.rhs().kind() == Formula::Kind::Imp);

  CHECK_THROWS_AS(parse_formula("p("), ParseError);
  CHECK_THROWS_AS(parse_formula("p(a) q"), ParseError);
}

TEST_CASE("normalize_constraint") {
  CHECK(normalize_constraint(parse_formula("top")).empty());

  auto cs = normalize_constraint(parse_formula("order(x) /\\ (pay(x) \\/ insurance(x)) ->> ship(x)"));
  REQUIRE(cs.size() == 1);
  CHECK(cs[0].contractual);
  CHECK(cs[0].heads.size() == 1);
  CHECK(cs[0].heads[0].pred == "ship");

  // conjunction of facts distributes
  auto facts = normalize_constraint(parse_formula("order(x) /\\ pay(x)"));
  CHECK(facts.size() == 2);
  CHECK_FALSE(facts[0].contractual);

  CHECK_THROWS_AS(normalize_constraint(parse_formula("(a ->> b) ->> c")), NonHornError);
  CHECK_THROWS_AS(normalize_constraint(parse_formula("a ->> (b \\/ c)")), NonHornError);
  CHECK_THROWS_AS(normalize_constraint(parse_formula("a \\/ b")), NonHornError);

  // guarded contract folds into the contractual premise
  auto guarded = normalize_constraint(parse_formula("r(o,z) -> (a ->> b)"));
  REQUIRE(guarded.size() == 1);
  CHECK(guarded[0].contractual);
  CHECK(guarded[0].premise.kind() == Formula::Kind::And);
}

TEST_CASE("entailment: circular assume-guarantee") {
  CHECK(proves({"b ->> a", "a ->> b"}, "a /\\ b"));
  CHECK(proves({"a ->> a"}, "a"));
  CHECK_FALSE(proves({"a ->> b"}, "b"));
  CHECK_FALSE(proves({"a ->> b"}, "a"));
  // implication alone does not close the circle
  CHECK_FALSE(proves({"b -> a", "a -> b"}, "a"));
  // but a contract against an implication does
  CHECK(proves({"a ->> b", "b -> a"}, "a /\\ b"));
}

TEST_CASE("entailment: three-party agreement") {
  std::vector<std::string> t = {"(b(n) /\\ c(n)) ->> a(n)", "(a(n) /\\ c(n)) ->> b(n)",
                                "(a(n) /\\ b(n)) ->> c(n)"};
  CHECK(proves(t, "a(n) /\\ b(n) /\\ c(n)"));
  // two parties are not enough
  CHECK_FALSE(proves({"(b(n) /\\ c(n)) ->> a(n)", "(a(n) /\\ c(n)) ->> b(n)"}, "a(n)"));
}

TEST_CASE("entailment: reflexivity, monotonicity, explosion") {
  CHECK(proves({"p(a)"}, "p(a)"));
  CHECK(proves({"p", "q -> r"}, "p"));
  // explosion
  CHECK(proves({"a", "a -> bot"}, "q"));
  CHECK(proves({"a", "a -> bot"}, "bot"));
  CHECK_FALSE(proves({"a"}, "bot"));
  // monotonicity spot check
  CHECK(proves({"a ->> b", "b ->> a", "x(k)"}, "a /\\ b"));
}

TEST_CASE("entailment: disjunction distributes at goals") {
  CHECK(proves({"a"}, "a \\/ b"));
  CHECK_FALSE(proves({}, "a \\/ b"));
  CHECK(proves({"(a \\/ b) -> c", "b"}, "c"));
  CHECK(proves({"(a \\/ b) ->> a"}, "a"));
  CHECK_FALSE(proves({"(a /\\ b) ->> a"}, "a"));
}

TEST_CASE("entailment: implication and contractual goals") {
  CHECK(proves({}, "top ->> top"));
  CHECK(proves({"p ->> p"}, "p"));
  CHECK(proves({"p2 -> p", "p ->> q", "q -> q2"}, "p2 ->> q2"));
  CHECK(proves({}, "a -> a"));
  CHECK(proves({"b"}, "a ->> b"));
  CHECK_FALSE(proves({"a -> b"}, "a ->> b"));
}

TEST_CASE("consistent") {
  Theory paid = theory_of({"paid(n)"});
  CHECK_FALSE(consistent(paid, {Literal{Atom{"paid", {Identifier::name("n")}}, true}}));
  CHECK(consistent(theory_of({}), {Literal{Atom{"paid", {Identifier::name("n")}}, true}}));
  // judge scenario: obligations derivable, no sent fact
  Theory judge = theory_of({"send(n) ->> pay(n)", "pay(n) ->> send(n)", "paid(n)", "dispute(n)"});
  CHECK(entails(judge, parse_formula("send(n) /\\ pay(n)")));
  CHECK(consistent(judge, {Literal{Atom{"sent", {Identifier::name("n")}}, true}}));
  CHECK_FALSE(consistent(judge, {Literal{Atom{"paid", {Identifier::name("n")}}, true}}));
  // positive literals join the store before the check
  CHECK_FALSE(consistent(theory_of({"a -> bot"}), {Literal{Atom{"a", {}}, false}}));
}

TEST_CASE("apply_substitution on formulas") {
  Subst s = Subst::single(Identifier::variable("x"), Identifier::name("n"));
  Formula f = parse_formula("(b(x) /\\ c(x)) ->> a(x)",
                            [](const std::string& l) { return Identifier::variable(l); });
  Formula g = f.substitute(s);
  CHECK(g.text() == "((b(n) /\\ c(n)) ->> a(n))");
  // off-domain identity
  Formula h = Formula::atom("a", {Identifier::variable("y")});
  CHECK(h.substitute(s) == h);
}

TEST_CASE("oracle: axiom schemata") {
  CHECK(oracle_prove(std::vector<Formula>{}, parse_formula("top ->> top"), 2) ==
        OracleResult::Proved);
  CHECK(oracle_prove(std::vector<Formula>{}, parse_formula("(p ->> p) -> p"), 4) ==
        OracleResult::Proved);
  CHECK(oracle_prove(std::vector<Formula>{},
                     parse_formula("(p2 -> p) -> (p ->> q) -> (q -> q2) -> (p2 ->> q2)"), 6) ==
        OracleResult::Proved);
  CHECK(oracle_prove(std::vector<Formula>{}, parse_formula("p"), 10) ==
        OracleResult::NotProvedWithinDepth);
  CHECK(oracle_prove(std::vector<Formula>{parse_formula("b ->> a"), parse_formula("a ->> b")},
                     parse_formula("a /\\ b"), 8) == OracleResult::Proved);
  CHECK(oracle_prove(std::vector<Formula>{parse_formula("a ->> b")}, parse_formula("b"), 8) ==
        OracleResult::NotProvedWithinDepth);
}

TEST_CASE("oracle agrees with the fixpoint on a pool of small theories") {
  // the exhaustive gate lives in the acceptance suite; this is a smoke version
  std::vector<std::string> pool = {"a",      "b",      "a -> b",  "b -> c",  "a ->> b",
                                   "b ->> a", "c ->> a", "(a \\/ b) ->> c", "(a /\\ b) ->> c",
                                   "a -> bot"};
  std::vector<std::string> goals = {"a", "b", "c", "a /\\ b", "a \\/ c"};
  for (size_t i = 0; i < pool.size(); ++i)
    for (size_t j = i; j < pool.size(); ++j) {
      Theory t = theory_of({pool[i], pool[j]});
      for (const auto& g : goals) {
        bool fix = entails(t, parse_formula(g));
        bool orc = oracle_prove(t, parse_formula(g), 8) == OracleResult::Proved;
        INFO(pool[i], " ; ", pool[j], " |- ", g);
        CHECK(fix == orc);
      }
    }
}

TEST_CASE("theory arity checking") {
  Theory t = theory_of({"p(a)", "p(a,b) -> q"});
  CHECK_THROWS_AS(t.check_arities(), ArityError);
}
