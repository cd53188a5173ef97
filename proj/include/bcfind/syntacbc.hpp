#pragma once

#include "bcfind/analysis.hpp"

namespace bcfind {

/// Template-based special cases of a negated goal, in table order: the
/// first entry is the primary choice, a second entry (for ∨, U, R shapes)
/// is the fallback tried when the primary fails the satisfiability guard.
/// `neg_goal` is ¬gᵢ with the root operator exposed (negated_root_form).
/// Shapes needing a helper atom pick the alphabetically first atom of
/// G₋ᵢ ∪ Dom that does not occur in gᵢ; without one the shape yields
/// nothing. Returns an empty list when no template applies.
std::vector<FormulaRef> special_case_candidates(FormulaRef neg_goal,
                                                const Scene& scene,
                                                std::size_t goal_index);

/// Primary template result, or nullptr when no template applies.
FormulaRef special_case_by_template(FormulaRef neg_goal, const Scene& scene,
                                    std::size_t goal_index);

/// ¬g₁ ∨ ... ∨ sc ∨ ... ∨ ¬gₙ with sc in position `goal_index`; for a
/// single goal this is sc itself.
FormulaRef syntactic_substitution(const Scene& scene, std::size_t goal_index,
                                  FormulaRef sc);

struct SyntacbcOptions {
  bool reduce = true;    // contrasty reduction of the emitted set
  bool validate = true;  // defensive validate_bc on every emitted BC
};

struct SyntacbcResult {
  std::vector<BoundaryCondition> bcs;
  std::vector<std::string> extra_goals;  // nonempty ⇒ early exit, no BCs
};

/// Per-goal syntactical substitution guarded by one satisfiability check,
/// preceded by the extra-goal test (a scene with extra goals has no BC).
SyntacbcResult syntacbc(const Scene& scene, SatSolver& solver,
                        const SyntacbcOptions& options = {});

}  // namespace bcfind
