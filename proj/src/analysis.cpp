#include "bcfind/analysis.hpp"

#include <algorithm>

namespace bcfind {

SceneAnalyzer::SceneAnalyzer(const Scene& scene, SatSolver& solver)
    : scene_(scene), solver_(solver) {}

FormulaRef SceneAnalyzer::dom_formula() const {
  return conj_all(scene_.domain_formulas());
}

FormulaRef SceneAnalyzer::goals_formula() const {
  return conj_all(scene_.goal_formulas());
}

FormulaRef SceneAnalyzer::goals_except(std::size_t i) const {
  std::vector<FormulaRef> rest;
  auto goals = scene_.goal_formulas();
  for (std::size_t j = 0; j < goals.size(); ++j) {
    if (j != i) rest.push_back(goals[j]);
  }
  return conj_all(rest);
}

FormulaRef SceneAnalyzer::ngd() const {
  std::vector<FormulaRef> all = scene_.domain_formulas();
  for (FormulaRef g : scene_.goal_formulas()) all.push_back(g);
  return Formula::negation(conj_all(all));
}

const BuchiAutomaton& SceneAnalyzer::aut_dom_goals() {
  return solver_.automaton(Formula::conj(dom_formula(), goals_formula()));
}

const BuchiAutomaton& SceneAnalyzer::aut_dom_goals_except(std::size_t i) {
  return solver_.automaton(Formula::conj(dom_formula(), goals_except(i)));
}

const BuchiAutomaton& SceneAnalyzer::aut_goals() {
  return solver_.automaton(goals_formula());
}

const BuchiAutomaton& SceneAnalyzer::aut_neg_goals() {
  return solver_.automaton(smart_neg(goals_formula()));
}

BcVerdict SceneAnalyzer::validate_bc(FormulaRef f) {
  for (const std::string& atom : collect_atoms(f)) {
    if (std::find(scene_.atoms.begin(), scene_.atoms.end(), atom) ==
        scene_.atoms.end()) {
      throw std::invalid_argument("validate_bc: undeclared atom '" + atom +
                                  "'");
    }
  }
  BcVerdict verdict;
  const BuchiAutomaton& af = solver_.automaton(f);

  verdict.logical_inconsistency = !solver_.sat_product(aut_dom_goals(), af);

  verdict.minimality.resize(scene_.goals.size());
  for (std::size_t i = 0; i < scene_.goals.size(); ++i) {
    verdict.minimality[i] = solver_.sat_product(aut_dom_goals_except(i), af);
  }

  // non-triviality: f ≢ ¬G, i.e. f∧G or ¬G∧¬f is satisfiable.
  if (solver_.sat_product(af, aut_goals())) {
    verdict.non_triviality = true;
  } else {
    const BuchiAutomaton& anf = solver_.automaton(smart_neg(f));
    verdict.non_triviality = solver_.sat_product(aut_neg_goals(), anf);
  }
  return verdict;
}

std::vector<std::string> SceneAnalyzer::find_extra_goals() {
  std::vector<std::string> extras;
  auto goals = scene_.goal_formulas();
  for (std::size_t i = 0; i < goals.size(); ++i) {
    // (Dom ∧ G₋ᵢ) ⇒ gᵢ ⟺ Dom ∧ G₋ᵢ ∧ ¬gᵢ unsatisfiable.
    const BuchiAutomaton& neg_goal = solver_.automaton(smart_neg(goals[i]));
    if (!solver_.sat_product(aut_dom_goals_except(i), neg_goal)) {
      extras.push_back(scene_.goals[i].name);
    }
  }
  return extras;
}

bool SceneAnalyzer::has_influential_dom() {
  if (scene_.domain.empty()) return false;
  const BuchiAutomaton& neg_dom = solver_.automaton(smart_neg(dom_formula()));
  return solver_.sat_product(aut_goals(), neg_dom);
}

bool SceneAnalyzer::is_witness(FormulaRef f, FormulaRef bc) {
  return !validate_bc(Formula::conj(bc, smart_neg(f))).is_bc();
}

std::vector<BoundaryCondition> SceneAnalyzer::contrasty_reduce(
    std::vector<BoundaryCondition> bcs) {
  std::stable_sort(bcs.begin(), bcs.end(),
                   [](const BoundaryCondition& a, const BoundaryCondition& b) {
                     auto ka = std::make_pair(formula_size(a.formula),
                                              print(a.formula));
                     auto kb = std::make_pair(formula_size(b.formula),
                                              print(b.formula));
                     return ka < kb;
                   });

  // Greedy pass in ascending size order, then prune anything one-way
  // witnessed by another survivor until stable.
  std::vector<BoundaryCondition> kept;
  for (const BoundaryCondition& candidate : bcs) {
    bool dominated = false;
    for (const BoundaryCondition& w : kept) {
      if (is_witness(w.formula, candidate.formula)) {
        dominated = true;
        break;
      }
    }
    if (!dominated) kept.push_back(candidate);
  }

  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < kept.size() && !changed; ++i) {
      for (std::size_t j = 0; j < kept.size(); ++j) {
        if (i == j) continue;
        if (is_witness(kept[j].formula, kept[i].formula) &&
            !is_witness(kept[i].formula, kept[j].formula)) {
          kept.erase(kept.begin() + static_cast<std::ptrdiff_t>(i));
          changed = true;
          break;
        }
      }
    }
  }
  return kept;
}

bool more_general(SatSolver& solver, FormulaRef f1, FormulaRef f2) {
  return solver.implies(f2, f1) && !solver.implies(f1, f2);
}

}  // namespace bcfind
