#include "bcfind/report.hpp"

namespace bcfind {

Json cube_to_json(const Cube& cube) {
  Json out = Json::array();
  for (const Literal& l : cube.literals()) {
    out.push_back(l.positive ? l.atom : "!" + l.atom);
  }
  return out;
}

Json lasso_to_json(const LassoTrace& lasso) {
  Json stem = Json::array();
  for (const Cube& c : lasso.stem) stem.push_back(cube_to_json(c));
  Json loop = Json::array();
  for (const Cube& c : lasso.loop) loop.push_back(cube_to_json(c));
  return Json{{"stem", stem}, {"loop", loop}};
}

Json verdict_to_json(const BcVerdict& verdict) {
  return Json{{"is_bc", verdict.is_bc()},
              {"logical_inconsistency", verdict.logical_inconsistency},
              {"minimality", verdict.minimality},
              {"non_triviality", verdict.non_triviality}};
}

Json bc_to_json(const BoundaryCondition& bc) {
  Json out;
  switch (bc.kind) {
    case BcKind::Syntactic: out["kind"] = "syntactic"; break;
    case BcKind::TraceFormula: out["kind"] = "trace_formula"; break;
    case BcKind::Word: out["kind"] = "word"; break;
  }
  if (bc.formula) out["formula"] = print(bc.formula);
  if (bc.word) out["word"] = lasso_to_json(*bc.word);
  out["scope"] = bc.scope;
  if (bc.conflict_atom) out["conflict_atom"] = *bc.conflict_atom;
  if (bc.verdict) out["verdict"] = verdict_to_json(*bc.verdict);
  return out;
}

Json make_report(const std::string& scene_name, const std::string& algorithm,
                 const std::vector<BoundaryCondition>& bcs,
                 const SolverStats& stats, long long elapsed_ms, bool stable) {
  Json list = Json::array();
  for (const BoundaryCondition& bc : bcs) list.push_back(bc_to_json(bc));
  return Json{{"scene", scene_name},
              {"algorithm", algorithm},
              {"bcs", list},
              {"stats",
               {{"sat_calls", stats.sat_calls},
                {"elapsed_ms", stable ? 0 : elapsed_ms}}}};
}

}  // namespace bcfind
