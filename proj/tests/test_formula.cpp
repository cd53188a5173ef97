#include "doctest.h"

#include "bcfind/solver.hpp"
#include "bcfind/trace_formula.hpp"
#include "support.hpp"

using namespace bcfind;

TEST_SUITE_BEGIN("formula");

TEST_CASE("parse builds the expected tree") {
  FormulaRef f = parse("G (h -> X p)");
  REQUIRE(f->op() == Op::Globally);
  FormulaRef imp = f->lhs();
  REQUIRE(imp->op() == Op::Implies);
  CHECK(imp->lhs() == Formula::atom("h"));
  REQUIRE(imp->rhs()->op() == Op::Next);
  CHECK(imp->rhs()->lhs() == Formula::atom("p"));
}

TEST_CASE("U binds tighter than &") {
  FormulaRef f = parse("a U b & c");
  REQUIRE(f->op() == Op::And);
  CHECK(f->lhs() == Formula::until(Formula::atom("a"), Formula::atom("b")));
  CHECK(f->rhs() == Formula::atom("c"));
}

TEST_CASE("precedence and associativity") {
  CHECK(parse("a -> b -> c") ==
        Formula::implies(Formula::atom("a"),
                         Formula::implies(Formula::atom("b"),
                                          Formula::atom("c"))));
  CHECK(parse("a | b & c") ==
        Formula::disj(Formula::atom("a"),
                      Formula::conj(Formula::atom("b"), Formula::atom("c"))));
  CHECK(parse("a U b U c") ==
        Formula::until(Formula::atom("a"),
                       Formula::until(Formula::atom("b"), Formula::atom("c"))));
  CHECK(parse("! X a") == Formula::negation(Formula::next(Formula::atom("a"))));
  CHECK(parse("  G\n( h->X p )\t") == parse("G (h -> X p)"));
}

TEST_CASE("syntax errors carry a position") {
  CHECK_THROWS_AS(parse("(!x"), ParseError);
  try {
    parse("(!x");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("end of input") != std::string::npos);
  }
  CHECK_THROWS_AS(parse(""), ParseError);
  CHECK_THROWS_AS(parse("a &"), ParseError);
  CHECK_THROWS_AS(parse("a b"), ParseError);
  CHECK_THROWS_AS(parse("a # b"), ParseError);
}

TEST_CASE("print canonical forms") {
  CHECK(print(parse("G (h -> X p)")) == "G (h -> (X p))");
  CHECK(print(Formula::conj(Formula::atom("a"),
                            Formula::disj(Formula::atom("b"),
                                          Formula::atom("c")))) ==
        "a & (b | c)");
  CHECK(print(Formula::tt()) == "true");
  CHECK(print(parse("!a")) == "!a");
  CHECK(print(parse("!!a")) == "!(!a)");
}

TEST_CASE("parse(print(f)) is the identity on random formulas") {
  bcfind::testing::FormulaGen gen(42, 3);
  for (int i = 0; i < 300; ++i) {
    FormulaRef f = gen.formula(12);
    CHECK(parse(print(f)) == f);
  }
}

TEST_CASE("nnf rewrites") {
  FormulaRef a = Formula::atom("a");
  FormulaRef b = Formula::atom("b");
  CHECK(nnf(Formula::negation(Formula::until(a, b))) ==
        Formula::release(Formula::negation(a), Formula::negation(b)));
  CHECK(nnf(Formula::negation(Formula::next(a))) ==
        Formula::next(Formula::negation(a)));
  CHECK(nnf(Formula::negation(Formula::negation(a))) == a);
  CHECK(nnf(Formula::globally(a)) == Formula::release(Formula::ff(), a));
  CHECK(nnf(Formula::finally(a)) == Formula::until(Formula::tt(), a));
}

namespace {

bool in_nnf(FormulaRef f) {
  switch (f->op()) {
    case Op::Implies:
    case Op::Globally:
    case Op::Finally:
      return false;
    case Op::Not:
      return f->lhs()->op() == Op::Atom;
    case Op::True:
    case Op::False:
    case Op::Atom:
      return true;
    default:
      return in_nnf(f->lhs()) && (!f->rhs() || in_nnf(f->rhs()));
  }
}

}  // namespace

TEST_CASE("nnf is sound and negation-normal on random formulas") {
  bcfind::testing::FormulaGen gen(7, 3);
  SatSolver solver;
  for (int i = 0; i < 60; ++i) {
    FormulaRef f = gen.formula(10);
    FormulaRef n = nnf(f);
    CHECK(in_nnf(n));
    CHECK(solver.equiv(f, n));
  }
}

TEST_CASE("formula_size counts desugared nodes") {
  CHECK(formula_size(Formula::atom("a")) == 1);
  CHECK(formula_size(parse("a & b")) == 3);
  CHECK(formula_size(parse("G a")) == 3);
  CHECK(formula_size(parse("false R a")) == 3);
  CHECK(formula_size(parse("a -> b")) == 4);  // !a | b
}

TEST_CASE("trace_formula_to_ltl matches the expected shapes") {
  Cube hm;
  hm.insert("h", true);
  hm.insert("m", true);
  CHECK(trace_formula_to_ltl(TraceFormula{{hm}, Cube()}) ==
        parse("(h & m) & X (G true)"));

  Cube not_atfloor;
  not_atfloor.insert("atfloor", false);
  Cube call;
  call.insert("call", true);
  Cube loop;
  loop.insert("call", false);
  loop.insert("open", false);
  CHECK(trace_formula_to_ltl(TraceFormula{{not_atfloor, call}, loop}) ==
        parse("(!atfloor) & X call & X X (G (!call & !open))"));

  Cube just_a;
  just_a.insert("a", true);
  CHECK(trace_formula_to_ltl(TraceFormula{{}, just_a}) == parse("G a"));
}

namespace {

// The trace-formula fragment: literals, ∧, X, G only.
bool in_trace_fragment(FormulaRef f) {
  switch (f->op()) {
    case Op::True:
    case Op::Atom:
      return true;
    case Op::Not:
      return f->lhs()->op() == Op::Atom;
    case Op::And:
      return in_trace_fragment(f->lhs()) && in_trace_fragment(f->rhs());
    case Op::Next:
    case Op::Globally:
      return in_trace_fragment(f->lhs());
    default:
      return false;
  }
}

Cube random_cube(std::mt19937& rng) {
  Cube c;
  static const char* names[] = {"a", "b", "c"};
  for (const char* name : names) {
    switch (rng() % 3) {
      case 0: c.insert(name, true); break;
      case 1: c.insert(name, false); break;
      default: break;
    }
  }
  return c;
}

}  // namespace

TEST_CASE("trace formulas stay in the restricted fragment and round-trip") {
  std::mt19937 rng(11);
  for (int i = 0; i < 100; ++i) {
    TraceFormula t;
    std::size_t len = rng() % 4;
    for (std::size_t j = 0; j < len; ++j) t.prefix.push_back(random_cube(rng));
    t.loop = random_cube(rng);
    FormulaRef f = trace_formula_to_ltl(t);
    CHECK(in_trace_fragment(f));
    auto back = trace_formula_from_ltl(f);
    REQUIRE(back.has_value());
    CHECK(*back == t);
  }
  CHECK(!trace_formula_from_ltl(parse("a | b")).has_value());
  CHECK(!trace_formula_from_ltl(parse("G a & X a")).has_value());
}

TEST_CASE("parser never crashes on garbage") {
  std::mt19937 rng(8888);
  const std::string alphabet = "abXUGF!&|->() \ttrue";
  for (int i = 0; i < 500; ++i) {
    std::string text;
    std::size_t len = rng() % 24;
    for (std::size_t j = 0; j < len; ++j) {
      text += alphabet[rng() % alphabet.size()];
    }
    try {
      FormulaRef f = parse(text);
      CHECK(parse(print(f)) == f);
    } catch (const ParseError&) {
      // rejected input; fine
    }
  }
}

TEST_CASE("negated_root_form exposes the root and keeps sugar") {
  FormulaRef g2 = parse("G (m -> X !p)");
  FormulaRef c = negated_root_form(g2);
  REQUIRE(c->op() == Op::Finally);
  CHECK(c->lhs() == Formula::negation(parse("m -> X !p")));
  CHECK(negated_root_form(parse("!a")) == Formula::atom("a"));
  CHECK(negated_root_form(parse("a & b")) == parse("!a | !b"));
  CHECK(negated_root_form(parse("a U b")) == parse("!a R !b"));
}

TEST_SUITE_END();
