#pragma once

#include <map>
#include <memory>
#include <optional>

#include "bcfind/automaton.hpp"
#include "bcfind/scene.hpp"
#include "bcfind/solver.hpp"

namespace bcfind {

struct BcVerdict {
  bool logical_inconsistency = false;
  std::vector<bool> minimality;  // one entry per goal
  bool non_triviality = false;

  bool is_bc() const {
    if (!logical_inconsistency || !non_triviality) return false;
    for (bool m : minimality) {
      if (!m) return false;
    }
    return true;
  }
};

enum class BcKind { Syntactic, TraceFormula, Word };

struct BoundaryCondition {
  BcKind kind = BcKind::Syntactic;
  FormulaRef formula = nullptr;      // null exactly when kind == Word
  std::optional<LassoTrace> word;    // present exactly when kind == Word
  std::vector<std::string> scope;    // goal names it was computed for
  std::optional<std::string> conflict_atom;
  std::optional<BcVerdict> verdict;
};

/// Per-scene analysis backed by a SatSolver. Caches the translations of
/// Dom∧G, Dom∧G₋ᵢ, G, and ¬G so repeated validations on one scene pay for
/// one translation each and per-check products only.
class SceneAnalyzer {
public:
  SceneAnalyzer(const Scene& scene, SatSolver& solver);

  const Scene& scene() const { return scene_; }
  SatSolver& solver() { return solver_; }

  FormulaRef dom_formula() const;          // true when Dom is empty
  FormulaRef goals_formula() const;
  FormulaRef goals_except(std::size_t i) const;  // true when n == 1

  /// ¬(Dom ∧ G); with empty Dom this is ¬(g₁ ∧ ... ∧ gₙ).
  FormulaRef ngd() const;

  /// The three clauses of the boundary-condition definition, decided by
  /// emptiness of products against the cached scene automata.
  BcVerdict validate_bc(FormulaRef f);

  /// Goals gᵢ with (Dom ∧ G₋ᵢ) ⇒ gᵢ. A scene with one goal makes G₋₁ true.
  std::vector<std::string> find_extra_goals();

  /// Dom nonempty and G does not imply Dom.
  bool has_influential_dom();

  /// f is a witness of bc iff bc ∧ ¬f is not a boundary condition.
  bool is_witness(FormulaRef f, FormulaRef bc);

  /// Drops every BC witnessed one-way by a kept one; mutual witnesses keep
  /// the smaller formula (tie: lexicographically smaller print). Input BCs
  /// must carry formulas.
  std::vector<BoundaryCondition> contrasty_reduce(
      std::vector<BoundaryCondition> bcs);

private:
  const BuchiAutomaton& aut_dom_goals();
  const BuchiAutomaton& aut_dom_goals_except(std::size_t i);
  const BuchiAutomaton& aut_goals();
  const BuchiAutomaton& aut_neg_goals();

  const Scene& scene_;
  SatSolver& solver_;
};

/// φ₁ is strictly more general than φ₂: φ₂ ⇒ φ₁ and not φ₁ ⇒ φ₂.
bool more_general(SatSolver& solver, FormulaRef f1, FormulaRef f2);

}  // namespace bcfind
