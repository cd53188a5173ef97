#include "bcfind/semanticbc.hpp"

#include <algorithm>
#include <deque>
#include <set>

namespace bcfind {

std::vector<SynthesizedTrace> synthesize_trace_formulas(
    const TraceFormula& t1, const TraceFormula& t2) {
  if (t1.prefix.size() != t2.prefix.size()) {
    throw std::invalid_argument(
        "synthesize_trace_formulas requires equal prefix lengths");
  }
  const std::size_t positions = t1.prefix.size() + 1;
  auto cube_at = [](const TraceFormula& t, std::size_t i) -> const Cube& {
    return i < t.prefix.size() ? t.prefix[i] : t.loop;
  };

  std::vector<SynthesizedTrace> out;
  for (std::size_t j = 0; j < positions; ++j) {
    auto fused = fuse(cube_at(t1, j), cube_at(t2, j));
    if (!fused) continue;
    SynthesizedTrace cand;
    cand.fuse_position = j;
    cand.conflict_atom = fused->conflict_atom;
    bool consistent = true;
    for (std::size_t i = 0; i < positions && consistent; ++i) {
      Cube cube;
      if (i == j) {
        cube = fused->cube;
      } else {
        auto both = cube_at(t1, i).conjoin(cube_at(t2, i));
        if (!both) {
          consistent = false;
          break;
        }
        cube = *both;
      }
      if (i < t1.prefix.size()) cand.trace.prefix.push_back(std::move(cube));
      else cand.trace.loop = std::move(cube);
    }
    if (consistent) out.push_back(std::move(cand));
  }
  return out;
}

namespace {

// Shortest path from `from` to the first state satisfying `is_target`,
// using only edges with `allowed`; returns edge indices. Deterministic
// through edge storage order.
std::optional<std::vector<std::uint32_t>> restricted_path(
    const BuchiAutomaton& a,
    const std::vector<std::vector<std::uint32_t>>& adj, std::uint32_t from,
    auto&& is_target, auto&& allowed) {
  std::vector<int> parent(a.num_states, -1);
  std::vector<bool> visited(a.num_states, false);
  std::deque<std::uint32_t> queue;

  auto finish = [&](std::uint32_t t) {
    std::vector<std::uint32_t> path;
    for (std::uint32_t cur = t; cur != from;) {
      auto pe = static_cast<std::uint32_t>(parent[cur]);
      path.push_back(pe);
      cur = a.edges[pe].src;
    }
    std::reverse(path.begin(), path.end());
    return path;
  };

  visited[from] = true;
  if (is_target(from)) return finish(from);
  queue.push_back(from);
  while (!queue.empty()) {
    std::uint32_t v = queue.front();
    queue.pop_front();
    for (std::uint32_t ei : adj[v]) {
      const Edge& e = a.edges[ei];
      if (!allowed(ei) || visited[e.dst]) continue;
      visited[e.dst] = true;
      parent[e.dst] = static_cast<int>(ei);
      if (is_target(e.dst)) return finish(e.dst);
      queue.push_back(e.dst);
    }
  }
  return std::nullopt;
}

// Shortest nonempty cycle at `state` over edges with `allowed`.
std::optional<std::vector<std::uint32_t>> restricted_cycle(
    const BuchiAutomaton& a,
    const std::vector<std::vector<std::uint32_t>>& adj, std::uint32_t state,
    auto&& allowed) {
  std::vector<int> parent(a.num_states, -1);
  std::vector<bool> visited(a.num_states, false);
  std::deque<std::uint32_t> queue;
  visited[state] = true;
  queue.push_back(state);
  while (!queue.empty()) {
    std::uint32_t v = queue.front();
    queue.pop_front();
    for (std::uint32_t ei : adj[v]) {
      const Edge& e = a.edges[ei];
      if (!allowed(ei)) continue;
      if (e.dst == state) {
        std::vector<std::uint32_t> path{ei};
        for (std::uint32_t cur = v; cur != state;) {
          auto pe = static_cast<std::uint32_t>(parent[cur]);
          path.push_back(pe);
          cur = a.edges[pe].src;
        }
        std::reverse(path.begin(), path.end());
        return path;
      }
      if (!visited[e.dst]) {
        visited[e.dst] = true;
        parent[e.dst] = static_cast<int>(ei);
        queue.push_back(e.dst);
      }
    }
  }
  return std::nullopt;
}

std::vector<Cube> labels_of(const BuchiAutomaton& a,
                            const std::vector<std::uint32_t>& path) {
  std::vector<Cube> out;
  out.reserve(path.size());
  for (std::uint32_t ei : path) out.push_back(a.edges[ei].label);
  return out;
}

}  // namespace

std::vector<FusionRun> find_single_fusion_lassos(const BuchiAutomaton& product,
                                                 int max_runs_per_edge) {
  std::vector<FusionRun> out;
  auto adj = product.adjacency();

  auto is_normal = [&](std::uint32_t ei) {
    return product.edges[ei].kind == EdgeKind::Normal;
  };

  int group_count = 0;
  for (const Edge& e : product.edges) {
    group_count = std::max(group_count, e.fusion_group + 1);
  }

  for (int group = 0; group < group_count; ++group) {
    std::vector<std::uint32_t> group_edges;
    for (std::uint32_t ei = 0; ei < product.edges.size(); ++ei) {
      if (product.edges[ei].fusion_group == group) group_edges.push_back(ei);
    }
    if (group_edges.empty()) continue;
    auto in_group = [&](std::uint32_t ei) {
      return product.edges[ei].fusion_group == group;
    };
    const Edge& repr = product.edges[group_edges.front()];

    std::vector<FusionRun> candidates;

    // Fusion at a stem position: a normal path to the fused transition,
    // then a normal path into an accepting all-normal cycle.
    for (std::uint32_t ei : group_edges) {
      const Edge& t = product.edges[ei];
      auto stem1 = restricted_path(
          product, adj, product.initial,
          [&](std::uint32_t q) { return q == t.src; }, is_normal);
      if (!stem1) continue;
      for (std::uint32_t f = 0; f < product.num_states; ++f) {
        if (!product.accepting[f]) continue;
        auto reach = restricted_path(
            product, adj, t.dst, [&](std::uint32_t q) { return q == f; },
            is_normal);
        if (!reach) continue;
        auto cycle = restricted_cycle(product, adj, f, is_normal);
        if (!cycle) continue;
        FusionRun run;
        std::vector<Cube> stem = labels_of(product, *stem1);
        run.fusion_position = stem.size();
        stem.push_back(t.label);
        for (Cube& c : labels_of(product, *reach)) stem.push_back(std::move(c));
        run.lasso = LassoTrace{std::move(stem), labels_of(product, *cycle)};
        run.edge_index = ei;
        run.fusion_group = group;
        run.conflict_atom = t.conflict_atom;
        run.fusion_is_loop = false;
        candidates.push_back(std::move(run));
      }
    }

    // Fusion at the loop position: an accepting cycle made of this fused
    // transition only (one product edge per acceptance copy, all carrying
    // the fused label), entered by a normal stem at any of its states.
    for (std::uint32_t entry = 0; entry < product.num_states; ++entry) {
      auto cycle = restricted_cycle(product, adj, entry, in_group);
      if (!cycle) continue;
      bool touches_accepting = product.accepting[entry];
      for (std::uint32_t ei : *cycle) {
        if (product.accepting[product.edges[ei].dst]) touches_accepting = true;
      }
      if (!touches_accepting) continue;
      auto stem = restricted_path(product, adj, product.initial,
                                  [&](std::uint32_t q) { return q == entry; },
                                  is_normal);
      if (!stem) continue;
      FusionRun run;
      run.lasso = LassoTrace{labels_of(product, *stem),
                             labels_of(product, *cycle)};
      run.edge_index = group_edges.front();
      run.fusion_group = group;
      run.conflict_atom = repr.conflict_atom;
      run.fusion_position = run.lasso.stem.size();
      run.fusion_is_loop = true;
      candidates.push_back(std::move(run));
    }

    std::stable_sort(candidates.begin(), candidates.end(),
                     [](const FusionRun& a, const FusionRun& b) {
                       auto ka = a.lasso.stem.size() + a.lasso.loop.size();
                       auto kb = b.lasso.stem.size() + b.lasso.loop.size();
                       return ka < kb;
                     });

    int kept = 0;
    for (FusionRun& run : candidates) {
      if (kept >= max_runs_per_edge) break;
      bool duplicate = false;
      for (const FusionRun& prev : out) {
        if (prev.fusion_group == group && prev.lasso == run.lasso) {
          duplicate = true;
          break;
        }
      }
      if (duplicate) continue;
      out.push_back(std::move(run));
      ++kept;
    }
  }
  return out;
}

BoundaryCondition run_to_bc(const FusionRun& run,
                            std::vector<std::string> scope) {
  BoundaryCondition bc;
  bc.scope = std::move(scope);
  bc.conflict_atom = run.conflict_atom;

  // A cycle whose labels are all the same cube is a single self-loop on
  // that cube (the acceptance counter only unrolls it), so the run is a
  // trace formula. Anything else stays a word.
  bool uniform_loop = true;
  for (const Cube& c : run.lasso.loop) {
    if (!(c == run.lasso.loop.front())) {
      uniform_loop = false;
      break;
    }
  }
  if (uniform_loop && !run.lasso.loop.empty()) {
    TraceFormula trace{run.lasso.stem, run.lasso.loop.front()};
    // p ∧ X G p is G p: trailing stem cubes equal to the loop cube (the ⊤
    // self-loop case included) are absorbed into the loop.
    while (!trace.prefix.empty() && trace.prefix.back() == trace.loop) {
      trace.prefix.pop_back();
    }
    bc.kind = BcKind::TraceFormula;
    bc.formula = trace_formula_to_ltl(trace);
  } else {
    bc.kind = BcKind::Word;
    bc.word = run.lasso;
  }
  return bc;
}

SemanticbcResult semanticbc(const Scene& scene, SatSolver& solver,
                            const SemanticbcOptions& options) {
  if (scene.goals.size() < 2) {
    throw std::invalid_argument("semanticbc requires at least two goals");
  }

  std::set<std::string> fusible;
  if (options.all_fusible) {
    fusible.insert(scene.atoms.begin(), scene.atoms.end());
  } else if (options.fusible_override) {
    fusible.insert(options.fusible_override->begin(),
                   options.fusible_override->end());
  } else {
    fusible.insert(scene.fusible.begin(), scene.fusible.end());
  }

  SemanticbcResult result;
  std::vector<FormulaRef> dom = scene.domain_formulas();
  auto goals = scene.goal_formulas();

  for (std::size_t i = 0; i < goals.size(); ++i) {
    for (std::size_t j = i + 1; j < goals.size(); ++j) {
      auto side_formula = [&](std::size_t neg) {
        std::vector<FormulaRef> parts = dom;
        for (std::size_t g = 0; g < goals.size(); ++g) {
          if (g != neg) parts.push_back(goals[g]);
        }
        parts.push_back(smart_neg(goals[neg]));
        return conj_all(parts);
      };
      const BuchiAutomaton& a1 = solver.automaton(side_formula(i));
      const BuchiAutomaton& a2 = solver.automaton(side_formula(j));
      BuchiAutomaton product =
          synthesis_product(a1, a2, fusible, solver.options());
      if (options.on_product) {
        options.on_product(scene.goals[i].name, scene.goals[j].name, product);
      }

      // Reduced scene for validation: the other goals join the domain.
      Scene reduced;
      reduced.name = scene.name;
      reduced.atoms = scene.atoms;
      reduced.fusible = scene.fusible;
      reduced.domain = scene.domain;
      for (std::size_t g = 0; g < scene.goals.size(); ++g) {
        if (g != i && g != j) reduced.domain.push_back(scene.goals[g]);
      }
      reduced.goals = {scene.goals[i], scene.goals[j]};
      SceneAnalyzer reduced_analyzer(reduced, solver);

      std::vector<BoundaryCondition> trace_bcs;
      std::vector<BoundaryCondition> word_bcs;
      for (const FusionRun& run : find_single_fusion_lassos(
               product, options.max_runs_per_edge)) {
        BoundaryCondition bc = run_to_bc(
            run, {scene.goals[i].name, scene.goals[j].name});
        if (bc.kind == BcKind::TraceFormula) {
          BcVerdict verdict = reduced_analyzer.validate_bc(bc.formula);
          if (!verdict.is_bc()) continue;
          bc.verdict = verdict;
          trace_bcs.push_back(std::move(bc));
        } else {
          bool duplicate = false;
          for (const BoundaryCondition& prev : word_bcs) {
            if (*prev.word == *bc.word) {
              duplicate = true;
              break;
            }
          }
          if (!duplicate) word_bcs.push_back(std::move(bc));
        }
      }

      // Deduplicate up to generality within the scope, smallest first: a
      // candidate that only replays a kept divergence (possibly delayed,
      // b ⇒ ◇w) is redundant; equivalent formulas are the mutual case.
      std::stable_sort(trace_bcs.begin(), trace_bcs.end(),
                       [](const BoundaryCondition& a,
                          const BoundaryCondition& b) {
                         auto ka = std::make_pair(formula_size(a.formula),
                                                  print(a.formula));
                         auto kb = std::make_pair(formula_size(b.formula),
                                                  print(b.formula));
                         return ka < kb;
                       });
      std::vector<BoundaryCondition> kept;
      for (BoundaryCondition& bc : trace_bcs) {
        bool redundant = false;
        for (const BoundaryCondition& w : kept) {
          if (solver.implies(bc.formula, Formula::finally(w.formula))) {
            redundant = true;
            break;
          }
        }
        if (!redundant) kept.push_back(std::move(bc));
      }

      bool pair_hit = !kept.empty() || !word_bcs.empty();
      for (BoundaryCondition& bc : kept) result.bcs.push_back(std::move(bc));
      for (BoundaryCondition& bc : word_bcs) {
        result.bcs.push_back(std::move(bc));
      }
      if (pair_hit) {
        result.scopes.emplace_back(scene.goals[i].name, scene.goals[j].name);
      }
    }
  }
  return result;
}

}  // namespace bcfind
