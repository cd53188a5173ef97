#pragma once

#include <optional>
#include <vector>

#include "bcfind/cube.hpp"

namespace bcfind {

/// A lasso-shaped formula: cube letters at positions 0..n followed by a
/// single self-loop cube, i.e. ⋀_{0≤i≤n} Xⁱ pᵢ ∧ Xⁿ⁺¹ G p_{n+1}.
/// The prefix may be empty, in which case the formula is G p₀.
struct TraceFormula {
  std::vector<Cube> prefix;
  Cube loop;

  bool operator==(const TraceFormula&) const = default;
};

FormulaRef trace_formula_to_ltl(const TraceFormula& t);

/// Inverse of trace_formula_to_ltl on its canonical output shape; nullopt
/// for formulas outside the fragment.
std::optional<TraceFormula> trace_formula_from_ltl(FormulaRef f);

}  // namespace bcfind
