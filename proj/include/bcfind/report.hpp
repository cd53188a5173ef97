#pragma once

#include <string>

#include "json.hpp"

#include "bcfind/analysis.hpp"

namespace bcfind {

using Json = nlohmann::ordered_json;

/// Cubes serialize as sorted literal arrays like ["h", "!p"].
Json cube_to_json(const Cube& cube);
Json lasso_to_json(const LassoTrace& lasso);
Json verdict_to_json(const BcVerdict& verdict);
Json bc_to_json(const BoundaryCondition& bc);

/// Top-level report: { scene, algorithm, bcs, stats }. elapsed_ms is forced
/// to zero when stable is set so identical inputs produce identical bytes.
Json make_report(const std::string& scene_name, const std::string& algorithm,
                 const std::vector<BoundaryCondition>& bcs,
                 const SolverStats& stats, long long elapsed_ms, bool stable);

}  // namespace bcfind
