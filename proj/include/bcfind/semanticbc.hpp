#pragma once

#include <functional>
#include <optional>
#include <utility>

#include "bcfind/analysis.hpp"
#include "bcfind/product.hpp"
#include "bcfind/trace_formula.hpp"

namespace bcfind {

struct SynthesizedTrace {
  TraceFormula trace;
  std::size_t fuse_position = 0;  // prefix index, or prefix size for loop
  std::string conflict_atom;
};

/// All syntheses of two equal-length trace formulas: one candidate per
/// position j where the cubes fuse, with every other position the
/// consistent conjunction. Throws on prefix length mismatch.
std::vector<SynthesizedTrace> synthesize_trace_formulas(
    const TraceFormula& t1, const TraceFormula& t2);

/// An accepting lasso of a synthesis product that fuses exactly one
/// position: a stem position, or the loop cube itself.
struct FusionRun {
  LassoTrace lasso;
  std::size_t edge_index = 0;  // representative edge in the product
  int fusion_group = -1;
  std::string conflict_atom;
  std::size_t fusion_position = 0;  // stem index of the fused cube
  bool fusion_is_loop = false;      // the fused cube is the loop
};

/// For each fused transition (fusion group): drop the other fusion edges
/// and search for an accepting lasso reading it exactly once — in the stem
/// with an all-normal accepting cycle, or as an accepting cycle made of the
/// fused transition alone. Shortest first, deterministic; at most
/// `max_runs_per_edge` distinct lassos are kept per transition.
std::vector<FusionRun> find_single_fusion_lassos(const BuchiAutomaton& product,
                                                 int max_runs_per_edge = 1);

/// A run whose accepting cycle is a single self-loop becomes a trace
/// formula (trailing ⊤ stem cubes merge into a ⊤ loop); anything else is
/// reported as a word.
BoundaryCondition run_to_bc(const FusionRun& run,
                            std::vector<std::string> scope);

struct SemanticbcOptions {
  std::optional<std::vector<std::string>> fusible_override;
  bool all_fusible = false;
  int max_runs_per_edge = 1;
  /// Called with the two goal names and the pair's synthesis product.
  std::function<void(const std::string&, const std::string&,
                     const BuchiAutomaton&)>
      on_product;
};

struct SemanticbcResult {
  std::vector<BoundaryCondition> bcs;
  /// Goal pairs that produced at least one BC.
  std::vector<std::pair<std::string, std::string>> scopes;
};

/// For every goal pair {gᵢ,gⱼ}: product of the automata of Dom∧G₋ᵢ∧¬gᵢ and
/// Dom∧G₋ⱼ∧¬gⱼ, single-fusion lassos, then conversion to BCs. Trace-formula
/// BCs are validated against the reduced scene (goals {gᵢ,gⱼ}, the rest of
/// G moved into Dom) and deduplicated up to equivalence per scope.
/// Requires at least two goals.
SemanticbcResult semanticbc(const Scene& scene, SatSolver& solver,
                            const SemanticbcOptions& options = {});

}  // namespace bcfind
