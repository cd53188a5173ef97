#pragma once

#include <array>
#include <cstdio>
#include <memory>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "bcfind/scene.hpp"
#include "bcfind/solver.hpp"

namespace bcfind::testing {

inline std::string scene_path(const std::string& name) {
  return std::string(BCFIND_SCENE_DIR) + "/" + name;
}

inline Scene load_fixture(const std::string& name) {
  return load_scene_file(scene_path(name));
}

/// Seeded random LTL formulas over a small atom pool, sized by an AST
/// node budget.
class FormulaGen {
public:
  FormulaGen(std::uint32_t seed, int max_atoms)
      : rng_(seed), max_atoms_(max_atoms) {}

  FormulaRef formula(int budget) { return gen(budget); }

private:
  FormulaRef gen(int budget) {
    if (budget <= 1) return leaf();
    switch (pick(10)) {
      case 0: return leaf();
      case 1: return Formula::negation(gen(budget - 1));
      case 2: return Formula::next(gen(budget - 1));
      case 3: return Formula::globally(gen(budget - 2));
      case 4: return Formula::finally(gen(budget - 2));
      case 5: return binary(budget, Formula::conj);
      case 6: return binary(budget, Formula::disj);
      case 7: return binary(budget, Formula::implies);
      case 8: return binary(budget, Formula::until);
      default: return binary(budget, Formula::release);
    }
  }

  FormulaRef binary(int budget, FormulaRef (*make)(FormulaRef, FormulaRef)) {
    int left = 1 + pick(std::max(1, budget - 2));
    return make(gen(left), gen(budget - 1 - left));
  }

  FormulaRef leaf() {
    switch (pick(max_atoms_ + 2)) {
      case 0: return Formula::tt();
      case 1: return Formula::ff();
      default: {
        static const std::array<const char*, 4> names{"a", "b", "c", "d"};
        return Formula::atom(names[pick(max_atoms_)]);
      }
    }
  }

  int pick(int n) {
    return static_cast<int>(std::uniform_int_distribution<int>(0, n - 1)(rng_));
  }

  std::mt19937 rng_;
  int max_atoms_;
};

/// Random two-goal scenes over up to `max_atoms` atoms; all atoms fusible.
inline Scene random_scene(std::uint32_t seed, int max_atoms, int goal_budget) {
  FormulaGen gen(seed, max_atoms);
  Scene scene;
  scene.name = "random_" + std::to_string(seed);
  static const std::array<const char*, 4> names{"a", "b", "c", "d"};
  for (int i = 0; i < max_atoms; ++i) scene.atoms.push_back(names[i]);
  scene.fusible = scene.atoms;
  scene.goals.push_back(NamedFormula{"g1", gen.formula(goal_budget)});
  scene.goals.push_back(NamedFormula{"g2", gen.formula(goal_budget)});
  return scene;
}

struct CommandResult {
  int exit_code = -1;
  std::string output;
};

template <typename Bcs>
bool equiv_any_impl(SatSolver& solver, const Bcs& bcs, FormulaRef target) {
  for (const auto& bc : bcs) {
    if (bc.formula && solver.equiv(bc.formula, target)) return true;
  }
  return false;
}

/// Runs the CLI binary with the given arguments, capturing stdout.
inline CommandResult run_cli(const std::string& args) {
  std::string command = std::string(BCFIND_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(command.c_str(), "r");
  if (!pipe) throw std::runtime_error("popen failed");
  CommandResult result;
  char buffer[4096];
  std::size_t n = 0;
  while ((n = fread(buffer, 1, sizeof buffer, pipe)) > 0) {
    result.output.append(buffer, n);
  }
  int status = pclose(pipe);
  result.exit_code = WEXITSTATUS(status);
  return result;
}

/// All complete-letter lassos with |stem|+|loop| <= k over `atoms` that
/// satisfy f. Used for language-containment style checks.
inline std::vector<LassoTrace> enumerate_models(
    FormulaRef f, const std::vector<std::string>& atoms, int k) {
  std::vector<Cube> letters;
  std::size_t m = atoms.size();
  for (std::uint64_t bits = 0; bits < (1ULL << m); ++bits) {
    Cube letter;
    for (std::size_t j = 0; j < m; ++j) letter.insert(atoms[j], (bits >> j) & 1);
    letters.push_back(letter);
  }
  std::vector<LassoTrace> found;
  std::vector<std::size_t> word;
  for (int n = 1; n <= k; ++n) {
    for (int stem_len = 0; stem_len < n; ++stem_len) {
      word.assign(static_cast<std::size_t>(n), 0);
      while (true) {
        LassoTrace lasso;
        for (int i = 0; i < stem_len; ++i) lasso.stem.push_back(letters[word[i]]);
        for (int i = stem_len; i < n; ++i) lasso.loop.push_back(letters[word[i]]);
        if (lasso_eval(lasso, f)) found.push_back(lasso);
        int pos = n - 1;
        while (pos >= 0 && word[pos] + 1 == letters.size()) {
          word[pos] = 0;
          --pos;
        }
        if (pos < 0) break;
        ++word[pos];
      }
    }
  }
  return found;
}

}  // namespace bcfind::testing
