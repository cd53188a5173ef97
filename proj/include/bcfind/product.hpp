#pragma once

#include <optional>
#include <set>
#include <string>

#include "bcfind/automaton.hpp"

namespace bcfind {

struct FuseResult {
  Cube cube;
  std::string conflict_atom;
};

/// Fuses two cubes that disagree on exactly one atom and are consistent
/// elsewhere: the conjunction with both literals of the conflicting atom
/// dropped. nullopt otherwise (in particular fuse(c, c) fails: no
/// complementary pair).
std::optional<FuseResult> fuse(const Cube& c1, const Cube& c2);

/// Degeneralized intersection product extended with fusion transitions.
/// States are (q1, q2, copy); the copy flips on leaving an accepting state
/// of the tracked side; accepting states are copy-2 states whose second
/// component is accepting. Every compatible transition pair contributes a
/// Normal edge labeled with the consistent conjunction, plus a Fusion edge
/// when fuse succeeds and its conflict atom is in `fusible`. Unreachable
/// states are pruned. With an empty fusible set this is the ordinary
/// language intersection.
BuchiAutomaton synthesis_product(const BuchiAutomaton& a1,
                                 const BuchiAutomaton& a2,
                                 const std::set<std::string>& fusible,
                                 const TranslateOptions& opt = {});

}  // namespace bcfind
