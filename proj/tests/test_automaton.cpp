#include <algorithm>
#include <sstream>

#include "doctest.h"

#include "bcfind/product.hpp"
#include "bcfind/solver.hpp"
#include "support.hpp"

using namespace bcfind;

TEST_SUITE_BEGIN("automaton");

namespace {

const char* kMpcGoals = "G (h -> X p) & G (m -> X !p)";

}  // namespace

TEST_CASE("translate basics") {
  CHECK(is_empty(translate(Formula::ff())));
  CHECK(!is_empty(translate(parse(kMpcGoals))));
  CHECK(is_empty(translate(parse(std::string("(h & m) & ") + kMpcGoals))));
}

TEST_CASE("emptiness returns usable witnesses") {
  CHECK(!accepting_lasso(translate(Formula::ff())).has_value());

  auto w = accepting_lasso(translate(parse("G a")));
  REQUIRE(w.has_value());
  CHECK(w->stem.empty());
  REQUIRE(w->loop.size() == 1);
  CHECK(w->loop[0].polarity("a") == 1);

  auto v = accepting_lasso(translate(parse("F (h & m)")));
  REQUIRE(v.has_value());
  CHECK(lasso_eval(*v, parse("F (h & m)")));
}

TEST_CASE("accepts on concrete lassos") {
  BuchiAutomaton ga = translate(parse("G a"));
  Cube a = *Cube::make({{"a", true}});
  Cube na = *Cube::make({{"a", false}});
  CHECK(accepts(ga, LassoTrace{{}, {a}}));
  CHECK(!accepts(ga, LassoTrace{{na}, {a}}));

  BuchiAutomaton mpc = translate(parse(kMpcGoals));
  Cube hm = *Cube::make({{"h", true}, {"m", true}});
  CHECK(!accepts(mpc, LassoTrace{{hm}, {Cube()}}));
}

TEST_CASE("state cap raises a resource error") {
  TranslateOptions opt;
  opt.state_cap = 2;
  CHECK_THROWS_AS(translate(parse("F (a & X (b & X c))"), opt), ResourceError);
}

TEST_CASE("dot export shape") {
  BuchiAutomaton top;
  top.atoms = {};
  top.num_states = 1;
  top.initial = 0;
  top.accepting = {true};
  top.edges.push_back(Edge{0, 0, Cube(), EdgeKind::Normal, {}});
  std::string dot = export_dot(top);
  CHECK(dot.find("digraph") != std::string::npos);
  CHECK(dot.find("label=\"true\"") != std::string::npos);
  CHECK(dot.find("doublecircle") != std::string::npos);

  // Fusion edges carry the conflict atom in the label.
  BuchiAutomaton a1 = top;
  a1.atoms = {"p"};
  a1.edges[0].label = *Cube::make({{"p", true}});
  BuchiAutomaton a2 = top;
  a2.atoms = {"p"};
  a2.edges[0].label = *Cube::make({{"p", false}});
  BuchiAutomaton prod = synthesis_product(a1, a2, {"p"});
  std::string prod_dot = export_dot(prod);
  CHECK(prod_dot.find("fuse:p") != std::string::npos);

  // Minimal well-formedness: balanced braces, every edge line parses.
  CHECK(std::count(prod_dot.begin(), prod_dot.end(), '{') == 1);
  CHECK(std::count(prod_dot.begin(), prod_dot.end(), '}') == 1);
  std::istringstream lines(prod_dot);
  std::string line;
  while (std::getline(lines, line)) {
    if (line.find("->") == std::string::npos) continue;
    CHECK(line.back() == ';');
  }
}

TEST_CASE("translation is sound and complete on bounded random formulas") {
  bcfind::testing::FormulaGen gen(1234, 3);
  for (int i = 0; i < 120; ++i) {
    FormulaRef f = gen.formula(10);
    BuchiAutomaton aut = translate(f);
    auto witness = accepting_lasso(aut);
    if (witness) {
      CHECK_MESSAGE(lasso_eval(*witness, f), "unsound witness for ", print(f));
    }
    if (auto found = bounded_sat_search(f, 6)) {
      CHECK_MESSAGE(witness.has_value(), "missed model of ", print(f));
    }
  }
}

TEST_CASE("bounded language agreement between automaton and evaluator") {
  // Over two atoms, every lasso with |stem|+|loop| <= 3 must be accepted
  // exactly when the evaluator says it models the formula. This catches
  // both over- and under-acceptance of the translation within the bound.
  std::vector<Cube> letters;
  for (int bits = 0; bits < 4; ++bits) {
    Cube c;
    c.insert("a", bits & 1);
    c.insert("b", bits & 2);
    letters.push_back(c);
  }
  std::vector<LassoTrace> lassos;
  for (int n = 1; n <= 3; ++n) {
    for (int stem_len = 0; stem_len < n; ++stem_len) {
      std::vector<std::size_t> word(static_cast<std::size_t>(n), 0);
      while (true) {
        LassoTrace w;
        for (int i = 0; i < stem_len; ++i) w.stem.push_back(letters[word[i]]);
        for (int i = stem_len; i < n; ++i) w.loop.push_back(letters[word[i]]);
        lassos.push_back(std::move(w));
        int pos = n - 1;
        while (pos >= 0 && word[pos] + 1 == letters.size()) {
          word[pos] = 0;
          --pos;
        }
        if (pos < 0) break;
        ++word[pos];
      }
    }
  }

  bcfind::testing::FormulaGen gen(60050, 2);
  for (int i = 0; i < 25; ++i) {
    FormulaRef f = gen.formula(9);
    BuchiAutomaton aut = translate(f);
    for (const LassoTrace& w : lassos) {
      bool modeled = lasso_eval(w, f);
      bool accepted = accepts(aut, w);
      CHECK_MESSAGE(modeled == accepted, "bounded disagreement on ", print(f));
      if (modeled != accepted) return;  // one counterexample is enough
    }
  }
}

TEST_CASE("accepts agrees with lasso_eval on translated automata") {
  bcfind::testing::FormulaGen gen(5150, 2);
  std::mt19937 rng(99);
  for (int i = 0; i < 80; ++i) {
    FormulaRef f = gen.formula(8);
    BuchiAutomaton aut = translate(f);
    LassoTrace w;
    std::size_t stem_len = rng() % 3;
    std::size_t loop_len = 1 + rng() % 2;
    auto rand_letter = [&] {
      Cube c;
      if (rng() % 2) c.insert("a", rng() % 2 == 0);
      if (rng() % 2) c.insert("b", rng() % 2 == 0);
      return c;
    };
    for (std::size_t j = 0; j < stem_len; ++j) w.stem.push_back(rand_letter());
    for (std::size_t j = 0; j < loop_len; ++j) w.loop.push_back(rand_letter());
    CHECK_MESSAGE(accepts(aut, w) == lasso_eval(w, f), "disagreement on ",
                  print(f));
  }
}

TEST_SUITE_END();
