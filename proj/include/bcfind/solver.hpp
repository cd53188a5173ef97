#pragma once

#include <map>
#include <memory>
#include <optional>

#include "bcfind/automaton.hpp"

namespace bcfind {

/// Exact truth value of f on the ultimately periodic word stem·loop^ω
/// (absent atoms false), via per-position fixpoints around the loop:
/// least for U/F, greatest for R/G. Requires a nonempty loop.
bool lasso_eval(const LassoTrace& w, FormulaRef f);

/// Exhaustive enumeration of lassos over complete assignments of f's atoms
/// with |stem| + |loop| <= k; first lasso satisfying f under lasso_eval, or
/// nullopt. A nullopt result does not prove unsatisfiability. Independent
/// of the automaton pipeline; used as its differential-testing oracle.
std::optional<LassoTrace> bounded_sat_search(FormulaRef f, int k);

struct SatResult {
  bool sat = false;
  std::optional<LassoTrace> witness;  // verified against lasso_eval
};

struct SolverStats {
  long long sat_calls = 0;  // emptiness decisions
  long long translations = 0;
};

/// Automaton-backed LTL satisfiability with a translation cache and call
/// counting. Emptiness of products against cached automata goes through
/// sat_product so scene-level analyses reuse translations.
class SatSolver {
public:
  explicit SatSolver(TranslateOptions opt = {}) : opt_(opt) {}

  SatResult is_sat(FormulaRef f);
  bool implies(FormulaRef f, FormulaRef g);
  bool equiv(FormulaRef f, FormulaRef g);

  /// L(a) ∩ L(b) nonempty? Counts as one solver call.
  bool sat_product(const BuchiAutomaton& a, const BuchiAutomaton& b);

  /// Cached translation; the result stays valid for the solver's lifetime.
  const BuchiAutomaton& automaton(FormulaRef f);

  const TranslateOptions& options() const { return opt_; }
  const SolverStats& stats() const { return stats_; }
  void reset_stats() { stats_ = {}; }

private:
  TranslateOptions opt_;
  SolverStats stats_;
  std::map<FormulaRef, std::unique_ptr<BuchiAutomaton>> cache_;
};

}  // namespace bcfind
