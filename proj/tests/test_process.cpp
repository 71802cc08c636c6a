#include "ccal/normal_form.hpp"
#include "ccal/parser.hpp"
#include "doctest.h"

using namespace ccal;

namespace {

Program parse(const std::string& text) { return parse_program(text); }

}  // namespace

TEST_CASE("parse basic programs") {
  Program p = parse("main (x)( tell(ca(x)). fuse(x, a(x)). 0 )");
  CHECK(p.main.kind() == Process::Kind::Delim);
  CHECK(p.main.binder().is_variable());
  Process body = p.main.body();
  REQUIRE(body.kind() == Process::Kind::Sum);
  REQUIRE(body.branches().size() == 1);
  CHECK(body.branches()[0].prefix.kind == Prefix::Kind::Tell);

  CHECK(parse("main 0").main.is_nil());

  Program rec = parse("X() := tau. X()  main X()");
  CHECK(rec.defs.has("X"));

  CHECK_THROWS_AS(parse("X() := X() main 0"), UnguardedRecursionError);
  CHECK_THROWS_AS(parse("X(a) := tau.X(a) main X()"), ArityError);
  CHECK_THROWS_AS(parse("main tell(a)"), ParseError);       // missing '.'
  CHECK_THROWS_AS(parse("main fuse(n, a(n)). 0"), ParseError);  // free subject
}

TEST_CASE("grammar shapes") {
  // sums, parallel, name delimitation, constraints, checks
  Program p = parse(
      "main (new n) ( {c(n)} || tau. 0 + ask(c(n)). 0 || check(!paid(n), ok(n)). 0 )");
  NormalForm nf = to_normal_form(p.main, p.defs);
  CHECK(nf.binders.size() == 1);
  CHECK(nf.binders[0].is_name());
  CHECK(nf.store.size() == 1);
  CHECK(nf.agents.size() == 2);

  // + binds tighter than ||
  Program q = parse("main tau. 0 + tau. 0 || tau. 0");
  CHECK(q.main.kind() == Process::Kind::Par);
}

TEST_CASE("free identifiers") {
  Program p = parse("main (x) fuse(x, p(x)). 0");
  CHECK(p.main.free_identifiers().empty());

  Program q = parse("main tell(msg(y,b)). 0");
  auto free_q = q.main.free_identifiers();
  CHECK(free_q.size() == 2);
  CHECK(free_q.count(Identifier::name("y")));
  CHECK(free_q.count(Identifier::name("b")));

  Program r = parse("main (new n)( {c(n)} || {d(m)} )");
  auto free_r = r.main.free_identifiers();
  CHECK(free_r.size() == 1);
  CHECK(free_r.count(Identifier::name("m")));
}

TEST_CASE("substitution degenerates fuse and join into ask") {
  Program p = parse("X() := tau.X() main (x) fuse(x, p(x)). X()");
  Process inner = p.main.body();
  Process after = substitute(inner, Subst::single(Identifier::variable("x"),
                                                  Identifier::name("n")));
  REQUIRE(after.kind() == Process::Kind::Sum);
  CHECK(after.branches()[0].prefix.kind == Prefix::Kind::Ask);
  CHECK(after.branches()[0].prefix.formula.text() == "p(n)");

  Program q = parse("main (y) join(y, q(y)). 0");
  Process qa = substitute(q.main.body(), Subst::single(Identifier::variable("y"),
                                                       Identifier::name("n")));
  CHECK(qa.branches()[0].prefix.kind == Prefix::Kind::Ask);

  // substitution under an unrelated delimitation leaves the binder alone
  Program r = parse("main (new n) {c(n)}");
  Process rs = substitute(r.main, Subst::single(Identifier::name("m"), Identifier::name("k")));
  CHECK(rs == r.main);

  // capture avoidance: binder renamed when the incoming name collides
  Program s = parse("main (new n) {c(n,z)}");
  Process ss = substitute(s.main, Subst::single(Identifier::name("z"), Identifier::name("n")));
  CHECK(ss.binder().label != "n");
  DefinitionSet none;
  CHECK(ss.free_identifiers().count(Identifier::name("n")));
  CHECK_FALSE(struct_equiv(ss, s.main, none));
}

TEST_CASE("normal forms") {
  DefinitionSet none;

  // binders in first-occurrence order, store gathered, 0 dropped
  Program p = parse("main (new n) {c(n)} || {d} || 0");
  NormalForm nf = to_normal_form(p.main, none);
  CHECK(nf.binders.size() == 1);
  CHECK(nf.store.size() == 2);
  CHECK(nf.agents.empty());

  // one unfolding of a top-level call
  Program q = parse("X() := tau. 0 main X()");
  NormalForm qn = to_normal_form(q.main, q.defs);
  CHECK(qn.binders.empty());
  REQUIRE(qn.agents.size() == 1);
  CHECK(qn.agents[0].branches()[0].prefix.kind == Prefix::Kind::Tau);

  // colliding binder labels are renamed apart
  Program r = parse("main (x) {p(x)} || (x) {q(x)}");
  NormalForm rn = to_normal_form(r.main, none);
  REQUIRE(rn.binders.size() == 2);
  CHECK(rn.binders[0].label != rn.binders[1].label);

  // idempotence through the canonical re-reading
  std::string text = canonical_text(rn);
  Process back = parse_process_fragment(text, none);
  CHECK(canonical_text(to_normal_form(back, none)) == text);
}

TEST_CASE("struct_equiv: the congruence axioms") {
  DefinitionSet none;
  auto eq = [&](const std::string& a, const std::string& b) {
    return struct_equiv(parse("main " + a).main, parse("main " + b).main, none);
  };

  CHECK(eq("ask(a). 0 || 0", "ask(a). 0"));
  CHECK(eq("{c} || ask(a). 0", "ask(a). 0 || {c}"));
  CHECK(eq("({a} || {b}) || {c}", "{a} || ({b} || {c})"));
  CHECK(eq("tau. 0 + tell(c). 0", "tell(c). 0 + tau. 0"));
  CHECK(eq("(x) (y) {r(x,y)}", "(y) (x) {r(y,x)}"));
  CHECK(eq("(x)( {p(x)} || {q} )", "{q} || (x) {p(x)}"));  // scope extrusion
  CHECK_FALSE(eq("tell(c). 0", "tau. 0"));
  CHECK_FALSE(eq("(x) {p(x)}", "(new x) {p(x)}"));  // variable vs name binder

  // alpha-equivalence with symmetric stores
  CHECK(eq("(x) (y) ( {q(x)} || {q(y)} || {r(x,y)} )",
           "(x) (y) ( {q(x)} || {q(y)} || {r(y,x)} )"));
  CHECK_FALSE(eq("(x) (y) ( {q(x)} || {r(x,y)} )", "(x) (y) ( {q(y)} || {r(x,y)} )"));
}

TEST_CASE("definition unfolding respects alpha-conversion") {
  // X's body mentions the global name m; delimiting m around the call must
  // not capture it
  Program p = parse("X() := tell(c(m)). 0 main (new m) ( {d(m)} || X() )");
  NormalForm nf = to_normal_form(p.main, p.defs);
  REQUIRE(nf.binders.size() == 1);
  CHECK(nf.binders[0].label != "m");
  CHECK(nf.agents.size() == 1);
  // the agent's formula still says c(m) with m free
  auto free_ids = nf_to_process(nf).free_identifiers();
  CHECK(free_ids.count(Identifier::name("m")));
}

TEST_CASE("canonical text round-trips through the parser") {
  Program p = parse(
      "X(v) := tau. X(v) "
      "main (new n) (x) ( {c(n,x)} || fuse(x, c(n,x)). X(x) + tau. 0 )");
  NormalForm nf = to_normal_form(p.main, p.defs);
  std::string text = canonical_text(nf);
  Process back = parse_process_fragment(text, p.defs);
  CHECK(struct_equiv(back, p.main, p.defs));
}
