#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "bcfind/cube.hpp"

namespace bcfind {

struct ResourceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct TranslateOptions {
  std::size_t state_cap = 100000;
  std::size_t transition_cap = 2000000;
};

enum class EdgeKind : std::uint8_t { Normal, Fusion };

struct Edge {
  std::uint32_t src = 0;
  std::uint32_t dst = 0;
  Cube label;
  EdgeKind kind = EdgeKind::Normal;
  std::string conflict_atom;  // set only for fusion edges
  // Fusion edges arising from the same underlying transition pair of the
  // two factor automata share a group; the acceptance bookkeeping can
  // materialize one fused transition as several product edges. -1 for
  // normal edges.
  int fusion_group = -1;
  // Identity of the transition before degeneralization: edges that differ
  // only in the acceptance counter share it. Set by translate, -1 elsewhere.
  int base_id = -1;
};

/// Büchi automaton with cube-labeled transitions. A cube label stands for
/// every complete assignment that satisfies it.
struct BuchiAutomaton {
  std::vector<std::string> atoms;
  std::uint32_t num_states = 0;
  std::uint32_t initial = 0;
  std::vector<Edge> edges;
  std::vector<bool> accepting;  // indexed by state

  bool is_accepting(std::uint32_t q) const { return accepting[q]; }
  std::vector<std::vector<std::uint32_t>> adjacency() const;
};

/// An ultimately periodic word stem·loop^ω. For evaluation the cubes are
/// read as complete assignments with absent atoms false.
struct LassoTrace {
  std::vector<Cube> stem;
  std::vector<Cube> loop;  // nonempty

  bool operator==(const LassoTrace&) const = default;
};

/// Tableau translation: nnf, then closure expansion into a generalized
/// automaton with one promise set per Until subformula, degeneralized with
/// a counter. L(result) = L(f). Throws ResourceError past the caps.
BuchiAutomaton translate(FormulaRef f, const TranslateOptions& opt = {});

/// Shortest accepting lasso (SCC search + BFS extraction), or nullopt when
/// the language is empty.
std::optional<LassoTrace> accepting_lasso(const BuchiAutomaton& a);

inline bool is_empty(const BuchiAutomaton& a) {
  return !accepting_lasso(a).has_value();
}

/// Whether `a` accepts the concrete word denoted by `w` (absent atoms
/// false). Decided by product with the lasso automaton of `w`.
bool accepts(const BuchiAutomaton& a, const LassoTrace& w);

std::string export_dot(const BuchiAutomaton& a);

}  // namespace bcfind
