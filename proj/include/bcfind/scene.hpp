#pragma once

#include <string>
#include <vector>

#include "bcfind/formula.hpp"

namespace bcfind {

struct SceneError : std::runtime_error {
  SceneError(std::string message, int line)
      : std::runtime_error(std::move(message)), line(line) {}
  int line;
};

struct NamedFormula {
  std::string name;
  FormulaRef formula = nullptr;
};

/// A requirement scene: named domain properties and goals over a declared
/// atom set, plus the subset of atoms whose conflicts may be fused by the
/// semantic analysis. Immutable after loading.
struct Scene {
  std::string name;
  std::vector<std::string> atoms;
  std::vector<std::string> fusible;  // defaults to all atoms
  std::vector<NamedFormula> domain;
  std::vector<NamedFormula> goals;  // nonempty

  std::vector<FormulaRef> domain_formulas() const;
  std::vector<FormulaRef> goal_formulas() const;
  std::vector<std::string> goal_names() const;
};

/// Parses the scene file format:
///   # comment
///   [scene]
///   name = "mpc"
///   atoms = [h, m, p]
///   fusible = [p]          # optional, defaults to all atoms
///   [domain]
///   d1 = "G c"
///   [goals]
///   g1 = "G (h -> X p)"
/// Rejects undeclared atoms, duplicate names, and scenes without goals.
Scene load_scene(std::string_view text);

Scene load_scene_file(const std::string& path);

}  // namespace bcfind
