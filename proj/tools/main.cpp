#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"

#include "bcfind/report.hpp"
#include "bcfind/semanticbc.hpp"
#include "bcfind/syntacbc.hpp"

namespace {

using namespace bcfind;

constexpr int kExitPositive = 0;
constexpr int kExitNegative = 1;
constexpr int kExitError = 2;

struct GlobalOptions {
  bool stable = false;
  bool json = false;
  std::size_t state_cap = 100000;
  std::size_t transition_cap = 2000000;

  TranslateOptions translate_options() const {
    TranslateOptions opt;
    opt.state_cap = state_cap;
    opt.transition_cap = transition_cap;
    return opt;
  }
};

class Timer {
public:
  long long elapsed_ms() const {
    auto d = std::chrono::steady_clock::now() - start_;
    return std::chrono::duration_cast<std::chrono::milliseconds>(d).count();
  }

private:
  std::chrono::steady_clock::time_point start_ =
      std::chrono::steady_clock::now();
};

std::string lasso_text(const LassoTrace& w) {
  std::string out = "stem:";
  for (const Cube& c : w.stem) out += " (" + c.to_string() + ")";
  out += " loop:";
  for (const Cube& c : w.loop) out += " (" + c.to_string() + ")";
  return out;
}

int cmd_sat(const GlobalOptions& global, const std::string& formula_text) {
  Timer timer;
  SatSolver solver(global.translate_options());
  FormulaRef f = parse(formula_text);
  SatResult result = solver.is_sat(f);
  if (global.json) {
    Json out{{"formula", print(f)},
             {"result", result.sat ? "sat" : "unsat"},
             {"stats",
              {{"sat_calls", solver.stats().sat_calls},
               {"elapsed_ms", global.stable ? 0 : timer.elapsed_ms()}}}};
    if (result.witness) out["witness"] = lasso_to_json(*result.witness);
    std::cout << out.dump(2) << "\n";
  } else if (result.sat) {
    std::cout << "SAT " << lasso_text(*result.witness) << "\n";
  } else {
    std::cout << "UNSAT\n";
  }
  return result.sat ? kExitPositive : kExitNegative;
}

int cmd_validate(const GlobalOptions& global, const std::string& scene_path,
                 const std::string& bc_text) {
  Timer timer;
  SatSolver solver(global.translate_options());
  Scene scene = load_scene_file(scene_path);
  FormulaRef bc = parse(bc_text);
  SceneAnalyzer analyzer(scene, solver);
  BcVerdict verdict = analyzer.validate_bc(bc);

  Json out{{"scene", scene.name},
           {"algorithm", "validate"},
           {"bc", print(bc)},
           {"verdict", verdict_to_json(verdict)},
           {"stats",
            {{"sat_calls", solver.stats().sat_calls},
             {"elapsed_ms", global.stable ? 0 : timer.elapsed_ms()}}}};
  std::cout << out.dump(2) << "\n";
  return verdict.is_bc() ? kExitPositive : kExitNegative;
}

int cmd_syntacbc(const GlobalOptions& global, const std::string& scene_path,
                 bool no_reduce, bool no_validate) {
  Timer timer;
  SatSolver solver(global.translate_options());
  Scene scene = load_scene_file(scene_path);
  SyntacbcOptions options;
  options.reduce = !no_reduce;
  options.validate = !no_validate;
  SyntacbcResult result = syntacbc(scene, solver, options);

  Json out = make_report(scene.name, "syntacbc", result.bcs, solver.stats(),
                         timer.elapsed_ms(), global.stable);
  if (!result.extra_goals.empty()) {
    std::string reason = "extra goals: [";
    for (std::size_t i = 0; i < result.extra_goals.size(); ++i) {
      if (i) reason += ", ";
      reason += result.extra_goals[i];
    }
    reason += "]";
    out["reason"] = reason;
  }
  std::cout << out.dump(2) << "\n";
  return result.bcs.empty() ? kExitNegative : kExitPositive;
}

int cmd_semanticbc(const GlobalOptions& global, const std::string& scene_path,
                   const std::vector<std::string>& fusible, bool all_fusible,
                   int max_runs_per_edge, const std::string& dump_dir) {
  Timer timer;
  SatSolver solver(global.translate_options());
  Scene scene = load_scene_file(scene_path);

  SemanticbcOptions options;
  if (!fusible.empty()) options.fusible_override = fusible;
  options.all_fusible = all_fusible;
  options.max_runs_per_edge = max_runs_per_edge;
  if (!dump_dir.empty()) {
    std::filesystem::create_directories(dump_dir);
    options.on_product = [&](const std::string& g1, const std::string& g2,
                             const BuchiAutomaton& product) {
      std::ofstream file(dump_dir + "/product_" + g1 + "_" + g2 + ".dot");
      file << export_dot(product);
    };
  }
  SemanticbcResult result = semanticbc(scene, solver, options);

  long long bc_t = 0;
  long long bc_w = 0;
  for (const BoundaryCondition& bc : result.bcs) {
    (bc.kind == BcKind::Word ? bc_w : bc_t) += 1;
  }
  Json out = make_report(scene.name, "semanticbc", result.bcs, solver.stats(),
                         timer.elapsed_ms(), global.stable);
  out["bc_t"] = bc_t;
  out["bc_w"] = bc_w;
  Json scopes = Json::array();
  for (const auto& [g1, g2] : result.scopes) {
    scopes.push_back(Json::array({g1, g2}));
  }
  out["scopes"] = scopes;
  std::cout << out.dump(2) << "\n";
  return result.bcs.empty() ? kExitNegative : kExitPositive;
}

int cmd_translate(const GlobalOptions& global, const std::string& formula_text,
                  const std::string& dot_path) {
  FormulaRef f = parse(formula_text);
  BuchiAutomaton aut = translate(f, global.translate_options());
  std::string dot = export_dot(aut);
  if (dot_path.empty()) {
    std::cout << dot;
  } else {
    std::ofstream file(dot_path);
    if (!file) {
      std::cerr << "error: cannot write " << dot_path << "\n";
      return kExitError;
    }
    file << dot;
  }
  return kExitPositive;
}

int cmd_oracle(const GlobalOptions& global, const std::string& formula_text,
               int bound) {
  FormulaRef f = parse(formula_text);
  auto found = bounded_sat_search(f, bound);
  if (global.json) {
    Json out{{"formula", print(f)}, {"found", found.has_value()}};
    if (found) out["witness"] = lasso_to_json(*found);
    std::cout << out.dump(2) << "\n";
  } else if (found) {
    std::cout << "found " << lasso_text(*found) << "\n";
  } else {
    std::cout << "none\n";
  }
  return found ? kExitPositive : kExitNegative;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Boundary-condition identification for LTL requirement scenes"};
  app.require_subcommand(1);

  GlobalOptions global;
  app.add_flag("--stable", global.stable,
               "Deterministic output (zeroes elapsed times)");
  app.add_flag("--json", global.json, "JSON output where optional");
  app.add_option("--state-cap", global.state_cap,
                 "Automaton state cap (resource error past it)");
  app.add_option("--transition-cap", global.transition_cap,
                 "Automaton transition cap (resource error past it)");

  std::string formula_text;
  std::string scene_path;
  std::string bc_text;
  std::string dot_path;
  std::string dump_dir;
  std::vector<std::string> fusible;
  bool no_reduce = false;
  bool no_validate = false;
  bool all_fusible = false;
  int max_runs_per_edge = 1;
  int bound = 6;

  CLI::App* sat = app.add_subcommand("sat", "LTL satisfiability check");
  sat->add_option("formula", formula_text, "LTL formula")->required();

  CLI::App* validate =
      app.add_subcommand("validate", "Check the boundary-condition clauses");
  validate->add_option("scene", scene_path, "scene file")->required();
  validate->add_option("--bc", bc_text, "candidate formula")->required();

  CLI::App* syn = app.add_subcommand("syntacbc", "Syntax-driven BC search");
  syn->add_option("scene", scene_path, "scene file")->required();
  syn->add_flag("--no-reduce", no_reduce, "skip contrasty reduction");
  syn->add_flag("--no-validate", no_validate, "skip the defensive validation");

  CLI::App* sem = app.add_subcommand("semanticbc", "Automata-driven BC search");
  sem->add_option("scene", scene_path, "scene file")->required();
  sem->add_option("--fusible", fusible, "override the scene's fusible atoms")
      ->delimiter(',');
  sem->add_flag("--all-fusible", all_fusible, "treat every atom as fusible");
  sem->add_option("--max-runs-per-edge", max_runs_per_edge,
                  "lassos to keep per fusion edge");
  sem->add_option("--dump-product", dump_dir,
                  "write per-pair product automata as DOT files");

  CLI::App* translate_cmd =
      app.add_subcommand("translate", "LTL to Büchi automaton (DOT)");
  translate_cmd->add_option("formula", formula_text, "LTL formula")
      ->required();
  translate_cmd->add_option("--dot", dot_path, "output path (default stdout)");

  CLI::App* oracle =
      app.add_subcommand("oracle", "Bounded lasso enumeration oracle");
  oracle->add_option("formula", formula_text, "LTL formula")->required();
  oracle->add_option("--bound", bound, "max |stem|+|loop|");
  oracle->group("");  // hidden

  CLI11_PARSE(app, argc, argv);

  try {
    if (sat->parsed()) return cmd_sat(global, formula_text);
    if (validate->parsed()) return cmd_validate(global, scene_path, bc_text);
    if (syn->parsed()) {
      return cmd_syntacbc(global, scene_path, no_reduce, no_validate);
    }
    if (sem->parsed()) {
      return cmd_semanticbc(global, scene_path, fusible, all_fusible,
                            max_runs_per_edge, dump_dir);
    }
    if (translate_cmd->parsed()) {
      return cmd_translate(global, formula_text, dot_path);
    }
    if (oracle->parsed()) return cmd_oracle(global, formula_text, bound);
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << " (line " << e.line << ", column "
              << e.column << ")\n";
    return kExitError;
  } catch (const SceneError& e) {
    std::cerr << "error: " << e.what();
    if (e.line > 0) std::cerr << " (line " << e.line << ")";
    std::cerr << "\n";
    return kExitError;
  } catch (const ResourceError& e) {
    std::cerr << "resource error: " << e.what() << "\n";
    return kExitError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}
