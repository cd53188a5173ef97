#include "doctest.h"

#include "bcfind/semanticbc.hpp"
#include "support.hpp"

using namespace bcfind;
using bcfind::testing::enumerate_models;
using bcfind::testing::load_fixture;

TEST_SUITE_BEGIN("semanticbc");

namespace {

Cube cube(std::initializer_list<Literal> lits) {
  return *Cube::make(std::vector<Literal>(lits));
}

bool equiv_any(SatSolver& solver, const std::vector<BoundaryCondition>& bcs,
               FormulaRef target) {
  return bcfind::testing::equiv_any_impl(solver, bcs, target);
}

}  // namespace

TEST_CASE("fuse drops exactly one conflicting atom") {
  auto r = fuse(cube({{"h", true}, {"p", true}}),
                cube({{"m", true}, {"p", false}}));
  REQUIRE(r.has_value());
  CHECK(r->conflict_atom == "p");
  CHECK(r->cube == cube({{"h", true}, {"m", true}}));

  CHECK(!fuse(cube({{"a", true}, {"b", true}}),
              cube({{"a", false}, {"b", false}}))
             .has_value());

  auto top = fuse(cube({{"p", true}}), cube({{"p", false}}));
  REQUIRE(top.has_value());
  CHECK(top->cube.is_true());
  CHECK(top->conflict_atom == "p");

  CHECK(!fuse(cube({{"a", true}}), cube({{"a", true}})).has_value());
  CHECK(!fuse(Cube(), Cube()).has_value());
}

TEST_CASE("synthesize_trace_formulas") {
  // The motivating fusion: m,p,(1)^ω with h,!p,(1)^ω.
  TraceFormula t1{{cube({{"m", true}}), cube({{"p", true}})}, Cube()};
  TraceFormula t2{{cube({{"h", true}}), cube({{"p", false}})}, Cube()};
  auto out = synthesize_trace_formulas(t1, t2);
  REQUIRE(out.size() == 1);
  CHECK(out[0].fuse_position == 1);
  CHECK(out[0].conflict_atom == "p");
  CHECK(out[0].trace ==
        TraceFormula{{cube({{"h", true}, {"m", true}}), Cube()}, Cube()});

  CHECK(synthesize_trace_formulas(t1, t1).empty());

  TraceFormula two1{{cube({{"a", true}, {"b", true}})}, cube({{"c", true}})};
  TraceFormula two2{{cube({{"a", false}, {"b", false}})}, cube({{"c", true}})};
  CHECK(synthesize_trace_formulas(two1, two2).empty());

  TraceFormula shorter{{}, Cube()};
  CHECK_THROWS_AS(synthesize_trace_formulas(t1, shorter),
                  std::invalid_argument);
}

TEST_CASE("synthesis product with no fusible atoms is the intersection") {
  // Identical factors produce no fusion edges even with a fusible atom:
  // fuse needs a complementary pair.
  BuchiAutomaton ga = translate(parse("G a"));
  BuchiAutomaton prod = synthesis_product(ga, ga, {"a"});
  for (const Edge& e : prod.edges) CHECK(e.kind == EdgeKind::Normal);
  CHECK(accepts(prod, LassoTrace{{}, {cube({{"a", true}})}}));
  CHECK(!accepts(prod, LassoTrace{{}, {Cube()}}));

  BuchiAutomaton left = translate(parse("a & X G b"));
  BuchiAutomaton right = translate(parse("!a & X G b"));
  CHECK(is_empty(synthesis_product(left, right, {})));
}

TEST_CASE("goal-pair products are empty without fusion") {
  Scene mpc = load_fixture("mpc.scene");
  FormulaRef side1 = parse("G (m -> X !p) & !(G (h -> X p))");
  FormulaRef side2 = parse("G (h -> X p) & !(G (m -> X !p))");
  BuchiAutomaton a1 = translate(side1);
  BuchiAutomaton a2 = translate(side2);
  CHECK(is_empty(synthesis_product(a1, a2, {})));

  // With p fusible the product carries an accepting single-fusion lasso
  // whose word opens with h ∧ m.
  BuchiAutomaton prod = synthesis_product(a1, a2, {"p"});
  auto runs = find_single_fusion_lassos(prod);
  REQUIRE(!runs.empty());
  bool found = false;
  for (const FusionRun& run : runs) {
    if (run.conflict_atom != "p") continue;
    const Cube& first =
        run.lasso.stem.empty() ? run.lasso.loop.front() : run.lasso.stem.front();
    if (first.polarity("h") == 1 && first.polarity("m") == 1) found = true;
  }
  CHECK(found);
}

TEST_CASE("find_single_fusion_lassos edge cases") {
  BuchiAutomaton plain = translate(parse("G a"));
  CHECK(find_single_fusion_lassos(plain).empty());

  // Two distinct fusion transitions on every accepting cycle: removing all
  // but one disconnects the run. States 0 -f1-> 1 -f2-> 0, accepting 0.
  BuchiAutomaton both;
  both.atoms = {"a"};
  both.num_states = 2;
  both.initial = 0;
  both.accepting = {true, false};
  Edge f1{0, 1, Cube(), EdgeKind::Fusion, "a", 0};
  Edge f2{1, 0, Cube(), EdgeKind::Fusion, "a", 1};
  both.edges = {f1, f2};
  CHECK(find_single_fusion_lassos(both).empty());
}

TEST_CASE("run_to_bc classification") {
  FusionRun stem_fusion;
  stem_fusion.lasso = LassoTrace{
      {cube({{"atfloor", false}}), cube({{"call", true}})},
      {cube({{"call", false}, {"open", false}})}};
  stem_fusion.conflict_atom = "open";
  stem_fusion.fusion_position = 1;
  BoundaryCondition bc = run_to_bc(stem_fusion, {"g1", "g2"});
  CHECK(bc.kind == BcKind::TraceFormula);
  CHECK(bc.formula == parse("(!atfloor) & X call & X X (G (!call & !open))"));
  CHECK(bc.conflict_atom == std::optional<std::string>("open"));
  CHECK(bc.scope == std::vector<std::string>{"g1", "g2"});

  // A counter-unrolled uniform cycle is still a single self-loop.
  FusionRun unrolled = stem_fusion;
  unrolled.lasso.loop.push_back(unrolled.lasso.loop.front());
  CHECK(run_to_bc(unrolled, {"g1", "g2"}).kind == BcKind::TraceFormula);
  CHECK(run_to_bc(unrolled, {"g1", "g2"}).formula == bc.formula);

  // Alternating cycles stay words.
  FusionRun alternating = stem_fusion;
  alternating.lasso.loop.push_back(cube({{"call", true}}));
  BoundaryCondition word = run_to_bc(alternating, {"g1", "g2"});
  CHECK(word.kind == BcKind::Word);
  CHECK(word.formula == nullptr);
  REQUIRE(word.word.has_value());

  // Trailing stem cubes equal to the loop cube are absorbed.
  FusionRun absorbed;
  absorbed.lasso = LassoTrace{
      {cube({{"h", true}, {"m", true}}), Cube()}, {Cube()}};
  absorbed.conflict_atom = "p";
  absorbed.fusion_position = 1;
  CHECK(run_to_bc(absorbed, {"g1", "g2"}).formula ==
        parse("(h & m) & X (G true)"));
}

TEST_CASE("semanticbc needs two goals") {
  Scene single = load_scene("[scene]\nname = \"s\"\natoms = [a]\n"
                            "[goals]\ng1 = \"G a\"\n");
  SatSolver solver;
  CHECK_THROWS_AS(semanticbc(single, solver), std::invalid_argument);
}

TEST_CASE("elevator: the two known trace BCs") {
  Scene elevator = load_fixture("elevator.scene");
  SatSolver solver;
  SemanticbcResult result = semanticbc(elevator, solver);
  REQUIRE(result.bcs.size() == 2);
  CHECK(result.scopes ==
        std::vector<std::pair<std::string, std::string>>{{"g1", "g2"}});
  for (const BoundaryCondition& bc : result.bcs) {
    CHECK(bc.kind == BcKind::TraceFormula);
    CHECK(bc.conflict_atom == std::optional<std::string>("open"));
    REQUIRE(bc.verdict.has_value());
    CHECK(bc.verdict->is_bc());
  }
  FormulaRef first = parse("!atfloor & X call & X X G (!call & !open)");
  FormulaRef second = parse("(!atfloor & call & !open) & X X G (!call & !open)");
  CHECK(equiv_any(solver, result.bcs, first));
  CHECK(equiv_any(solver, result.bcs, second));
}

TEST_CASE("atm: fusible gating matches the case study") {
  Scene atm = load_fixture("atm.scene");
  SatSolver solver;

  SemanticbcResult gated = semanticbc(atm, solver);
  CHECK(gated.bcs.empty());

  SemanticbcOptions all;
  all.all_fusible = true;
  SemanticbcResult full = semanticbc(atm, solver, all);
  bool passok_pair = false;
  for (const BoundaryCondition& bc : full.bcs) {
    if (bc.conflict_atom == std::optional<std::string>("passok") &&
        bc.scope == std::vector<std::string>{"g1", "g2"}) {
      passok_pair = true;
    }
  }
  CHECK(passok_pair);

  // Overriding the fusible set from the outside behaves like the scene
  // declaration.
  SemanticbcOptions override_opt;
  override_opt.fusible_override = std::vector<std::string>{"money", "lock"};
  CHECK(semanticbc(atm, solver, override_opt).bcs.empty());
}

TEST_CASE("language containment: models of a trace BC are product words") {
  Scene elevator = load_fixture("elevator.scene");
  SatSolver solver;
  FormulaRef side1 = Formula::conj(elevator.goals[1].formula,
                                   smart_neg(elevator.goals[0].formula));
  FormulaRef side2 = Formula::conj(elevator.goals[0].formula,
                                   smart_neg(elevator.goals[1].formula));
  BuchiAutomaton product = synthesis_product(
      solver.automaton(side1), solver.automaton(side2), {"open"});

  SemanticbcResult result = semanticbc(elevator, solver);
  for (const BoundaryCondition& bc : result.bcs) {
    if (!bc.formula) continue;
    for (const LassoTrace& w :
         enumerate_models(bc.formula, elevator.atoms, 4)) {
      CHECK(accepts(product, w));
    }
  }
}

TEST_CASE("empty-fusible products are intersections on random pairs") {
  bcfind::testing::FormulaGen gen(4242, 2);
  std::mt19937 rng(17);
  SatSolver solver;
  for (int i = 0; i < 40; ++i) {
    FormulaRef f = gen.formula(7);
    FormulaRef g = gen.formula(7);
    BuchiAutomaton af = translate(f);
    BuchiAutomaton ag = translate(g);
    BuchiAutomaton prod = synthesis_product(af, ag, {});
    LassoTrace w;
    auto rand_letter = [&] {
      Cube c;
      c.insert("a", rng() % 2 == 0);
      c.insert("b", rng() % 2 == 0);
      return c;
    };
    std::size_t stem_len = rng() % 2;
    for (std::size_t j = 0; j < stem_len; ++j) w.stem.push_back(rand_letter());
    std::size_t loop_len = 1 + rng() % 2;
    for (std::size_t j = 0; j < loop_len; ++j) w.loop.push_back(rand_letter());
    bool both = accepts(af, w) && accepts(ag, w);
    CHECK_MESSAGE(accepts(prod, w) == both, "intersection mismatch for ",
                  print(f), " with ", print(g));
  }
}

TEST_CASE("synthesis agrees with the product on embedded trace formulas") {
  // Two trace formulas over one fusible atom, embedded as automata; the
  // single-fusion lassos of the product are exactly the synthesis results.
  TraceFormula t1{{cube({{"m", true}}), cube({{"p", true}})}, Cube()};
  TraceFormula t2{{cube({{"h", true}}), cube({{"p", false}})}, Cube()};
  SatSolver solver;
  BuchiAutomaton a1 = translate(trace_formula_to_ltl(t1));
  BuchiAutomaton a2 = translate(trace_formula_to_ltl(t2));
  BuchiAutomaton prod = synthesis_product(a1, a2, {"p"});

  auto syntheses = synthesize_trace_formulas(t1, t2);
  REQUIRE(syntheses.size() == 1);
  FormulaRef expected = trace_formula_to_ltl(syntheses[0].trace);

  bool matched = false;
  for (const FusionRun& run : find_single_fusion_lassos(prod, 4)) {
    BoundaryCondition bc = run_to_bc(run, {"t1", "t2"});
    if (bc.formula && solver.equiv(bc.formula, expected)) matched = true;
  }
  CHECK(matched);
}

TEST_SUITE_END();
