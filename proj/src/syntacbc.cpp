#include "bcfind/syntacbc.hpp"

#include <algorithm>
#include <set>

namespace bcfind {

namespace {

// Conjunction that elides a `true` left operand, keeping template output
// like true ∧ X b readable as X b.
FormulaRef conj_simplified(FormulaRef a, FormulaRef b) {
  if (a->op() == Op::True) return b;
  if (b->op() == Op::True) return a;
  return Formula::conj(a, b);
}

// Alphabetically first atom of G₋ᵢ ∪ Dom that is not in gᵢ.
FormulaRef helper_atom(const Scene& scene, std::size_t goal_index) {
  std::set<std::string> pool;
  for (std::size_t j = 0; j < scene.goals.size(); ++j) {
    if (j == goal_index) continue;
    for (const std::string& a : collect_atoms(scene.goals[j].formula)) {
      pool.insert(a);
    }
  }
  for (const NamedFormula& d : scene.domain) {
    for (const std::string& a : collect_atoms(d.formula)) pool.insert(a);
  }
  for (const std::string& a :
       collect_atoms(scene.goals[goal_index].formula)) {
    pool.erase(a);
  }
  if (pool.empty()) return nullptr;
  return Formula::atom(*pool.begin());
}

}  // namespace

std::vector<FormulaRef> special_case_candidates(FormulaRef neg_goal,
                                                const Scene& scene,
                                                std::size_t goal_index) {
  FormulaRef f = neg_goal;
  FormulaRef p = helper_atom(scene, goal_index);
  auto with_p = [&](FormulaRef base) -> std::vector<FormulaRef> {
    if (!p) return {};
    return {Formula::conj(base, p)};
  };

  switch (f->op()) {
    case Op::True:
      return p ? std::vector<FormulaRef>{p} : std::vector<FormulaRef>{};
    case Op::Atom:
      return with_p(f);
    case Op::Not:
      return f->lhs()->op() == Op::Atom ? with_p(f) : std::vector<FormulaRef>{};
    case Op::And:
      return with_p(f);
    case Op::Or:
      return {f->lhs(), f->rhs()};
    case Op::Globally:
      return with_p(f);
    case Op::Finally:
      // true U b: special case b, fallback true ∧ X b.
      return {f->lhs(), Formula::next(f->lhs())};
    case Op::Until:
      if (f->lhs()->op() == Op::True) {
        return {f->rhs(), Formula::next(f->rhs())};
      }
      return {f->rhs(), conj_simplified(f->lhs(), Formula::next(f->rhs()))};
    case Op::Release:
      if (f->lhs()->op() == Op::False) {
        // false R b is G b.
        return with_p(f);
      }
      return {Formula::conj(f->rhs(), Formula::next(f->lhs())), f->lhs()};
    case Op::False:
    case Op::Next:
    case Op::Implies:
      return {};
  }
  return {};
}

FormulaRef special_case_by_template(FormulaRef neg_goal, const Scene& scene,
                                    std::size_t goal_index) {
  auto candidates = special_case_candidates(neg_goal, scene, goal_index);
  return candidates.empty() ? nullptr : candidates.front();
}

FormulaRef syntactic_substitution(const Scene& scene, std::size_t goal_index,
                                  FormulaRef sc) {
  std::vector<FormulaRef> disjuncts;
  for (std::size_t j = 0; j < scene.goals.size(); ++j) {
    disjuncts.push_back(j == goal_index
                            ? sc
                            : negated_root_form(scene.goals[j].formula));
  }
  return disj_all(disjuncts);
}

SyntacbcResult syntacbc(const Scene& scene, SatSolver& solver,
                        const SyntacbcOptions& options) {
  SyntacbcResult result;
  SceneAnalyzer analyzer(scene, solver);

  result.extra_goals = analyzer.find_extra_goals();
  if (!result.extra_goals.empty()) return result;

  FormulaRef dom = analyzer.dom_formula();
  std::vector<std::string> scope = scene.goal_names();

  for (std::size_t i = 0; i < scene.goals.size(); ++i) {
    FormulaRef neg_goal = negated_root_form(scene.goals[i].formula);
    for (FormulaRef sc : special_case_candidates(neg_goal, scene, i)) {
      FormulaRef guard =
          Formula::conj(sc, Formula::conj(dom, analyzer.goals_except(i)));
      if (!solver.is_sat(guard).sat) continue;

      FormulaRef candidate = syntactic_substitution(scene, i, sc);
      BoundaryCondition bc;
      bc.kind = BcKind::Syntactic;
      bc.formula = candidate;
      bc.scope = scope;
      if (options.validate) {
        BcVerdict verdict = analyzer.validate_bc(candidate);
        if (!verdict.is_bc()) break;  // degenerate scene; drop this goal
        bc.verdict = verdict;
      }
      result.bcs.push_back(std::move(bc));
      break;  // one BC per goal: fallback only on a failed guard
    }
  }

  if (options.reduce) result.bcs = analyzer.contrasty_reduce(result.bcs);
  return result;
}

}  // namespace bcfind
