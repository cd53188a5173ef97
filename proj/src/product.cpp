#include "bcfind/product.hpp"

#include <algorithm>
#include <map>
#include <tuple>

namespace bcfind {

std::optional<FuseResult> fuse(const Cube& c1, const Cube& c2) {
  const std::string* conflict = nullptr;
  for (const Literal& l : c1.literals()) {
    int p2 = c2.polarity(l.atom);
    if (p2 != 0 && (p2 == 1) != l.positive) {
      if (conflict) return std::nullopt;  // more than one conflicting atom
      conflict = &l.atom;
    }
  }
  if (!conflict) return std::nullopt;

  FuseResult out;
  out.conflict_atom = *conflict;
  for (const Literal& l : c1.literals()) {
    if (l.atom != *conflict) out.cube.insert(l.atom, l.positive);
  }
  for (const Literal& l : c2.literals()) {
    if (l.atom != *conflict) out.cube.insert(l.atom, l.positive);
  }
  return out;
}

BuchiAutomaton synthesis_product(const BuchiAutomaton& a1,
                                 const BuchiAutomaton& a2,
                                 const std::set<std::string>& fusible,
                                 const TranslateOptions& opt) {
  BuchiAutomaton prod;
  prod.atoms = a1.atoms;
  for (const std::string& atom : a2.atoms) prod.atoms.push_back(atom);
  std::sort(prod.atoms.begin(), prod.atoms.end());
  prod.atoms.erase(std::unique(prod.atoms.begin(), prod.atoms.end()),
                   prod.atoms.end());

  auto adj1 = a1.adjacency();
  auto adj2 = a2.adjacency();

  using Key = std::tuple<std::uint32_t, std::uint32_t, int>;
  std::map<Key, std::uint32_t> index;
  std::vector<Key> worklist;
  std::map<std::pair<std::uint32_t, std::uint32_t>, int> fusion_groups;

  auto state_id = [&](std::uint32_t q1, std::uint32_t q2, int copy) {
    Key key{q1, q2, copy};
    auto it = index.find(key);
    if (it != index.end()) return it->second;
    auto id = static_cast<std::uint32_t>(index.size());
    if (index.size() >= opt.state_cap) {
      throw ResourceError("synthesis product exceeded the state cap");
    }
    index.emplace(key, id);
    worklist.push_back(key);
    return id;
  };

  if (a1.num_states == 0 || a2.num_states == 0) return prod;
  prod.initial = state_id(a1.initial, a2.initial, 1);

  for (std::size_t w = 0; w < worklist.size(); ++w) {
    auto [q1, q2, copy] = worklist[w];
    auto src = static_cast<std::uint32_t>(w);
    int next_copy = copy == 1 ? (a1.accepting[q1] ? 2 : 1)
                              : (a2.accepting[q2] ? 1 : 2);
    for (std::uint32_t e1i : adj1[q1]) {
      const Edge& e1 = a1.edges[e1i];
      for (std::uint32_t e2i : adj2[q2]) {
        const Edge& e2 = a2.edges[e2i];
        auto emit = [&](Cube label, EdgeKind kind, std::string conflict,
                        int group) {
          std::uint32_t dst = state_id(e1.dst, e2.dst, next_copy);
          prod.edges.push_back(Edge{src, dst, std::move(label), kind,
                                    std::move(conflict), group});
          if (prod.edges.size() > opt.transition_cap) {
            throw ResourceError("synthesis product exceeded the transition cap");
          }
        };
        if (auto both = e1.label.conjoin(e2.label)) {
          emit(std::move(*both), EdgeKind::Normal, {}, -1);
        }
        if (!fusible.empty()) {
          if (auto fused = fuse(e1.label, e2.label);
              fused && fusible.count(fused->conflict_atom)) {
            // Group by the underlying transitions: edges that differ only
            // in acceptance bookkeeping belong to one fused transition.
            auto key1 = e1.base_id >= 0 ? static_cast<std::uint32_t>(e1.base_id)
                                        : e1i + (1u << 30);
            auto key2 = e2.base_id >= 0 ? static_cast<std::uint32_t>(e2.base_id)
                                        : e2i + (1u << 30);
            auto [it, fresh] = fusion_groups.emplace(
                std::make_pair(key1, key2),
                static_cast<int>(fusion_groups.size()));
            (void)fresh;
            emit(std::move(fused->cube), EdgeKind::Fusion,
                 std::move(fused->conflict_atom), it->second);
          }
        }
      }
    }
  }

  prod.num_states = static_cast<std::uint32_t>(index.size());
  prod.accepting.assign(prod.num_states, false);
  for (const auto& [key, id] : index) {
    auto [q1, q2, copy] = key;
    if (copy == 2 && a2.accepting[q2]) prod.accepting[id] = true;
  }
  return prod;
}

}  // namespace bcfind
