#include <algorithm>
#include <deque>
#include <map>
#include <set>

#include "bcfind/automaton.hpp"

namespace bcfind {

namespace {

// --- language-preserving cleanup passes -----------------------------------

// Keeps only states that lie on some accepting run: reachable from the
// initial state and able to reach an accepting cycle.
BuchiAutomaton trim(const BuchiAutomaton& a) {
  if (a.num_states == 0) return a;
  std::vector<bool> reachable(a.num_states, false);
  std::deque<std::uint32_t> queue{a.initial};
  reachable[a.initial] = true;
  auto adj = a.adjacency();
  while (!queue.empty()) {
    std::uint32_t v = queue.front();
    queue.pop_front();
    for (std::uint32_t ei : adj[v]) {
      std::uint32_t w = a.edges[ei].dst;
      if (!reachable[w]) {
        reachable[w] = true;
        queue.push_back(w);
      }
    }
  }

  // Anchors: accepting states with a cycle back to themselves.
  std::vector<std::vector<std::uint32_t>> radj(a.num_states);
  for (const Edge& e : a.edges) radj[e.dst].push_back(e.src);
  std::vector<bool> live(a.num_states, false);
  for (std::uint32_t q = 0; q < a.num_states; ++q) {
    if (!reachable[q] || !a.accepting[q]) continue;
    // BFS from q; if q is re-entered the state is on a cycle.
    std::vector<bool> seen(a.num_states, false);
    std::deque<std::uint32_t> bfs{q};
    bool on_cycle = false;
    while (!bfs.empty() && !on_cycle) {
      std::uint32_t v = bfs.front();
      bfs.pop_front();
      for (std::uint32_t ei : adj[v]) {
        std::uint32_t w = a.edges[ei].dst;
        if (w == q) {
          on_cycle = true;
          break;
        }
        if (!seen[w]) {
          seen[w] = true;
          bfs.push_back(w);
        }
      }
    }
    if (on_cycle) live[q] = true;
  }
  // Everything that reaches an anchor is live.
  std::deque<std::uint32_t> back;
  for (std::uint32_t q = 0; q < a.num_states; ++q) {
    if (live[q]) back.push_back(q);
  }
  while (!back.empty()) {
    std::uint32_t v = back.front();
    back.pop_front();
    for (std::uint32_t p : radj[v]) {
      if (!live[p]) {
        live[p] = true;
        back.push_back(p);
      }
    }
  }

  if (!live[a.initial]) {
    // Empty language: a single initial state without edges.
    BuchiAutomaton out;
    out.atoms = a.atoms;
    out.num_states = 1;
    out.initial = 0;
    out.accepting.assign(1, false);
    return out;
  }

  std::vector<std::uint32_t> remap(a.num_states, 0);
  BuchiAutomaton out;
  out.atoms = a.atoms;
  for (std::uint32_t q = 0; q < a.num_states; ++q) {
    if (reachable[q] && live[q]) {
      remap[q] = out.num_states++;
      out.accepting.push_back(a.accepting[q]);
    }
  }
  out.initial = remap[a.initial];
  for (const Edge& e : a.edges) {
    if (reachable[e.src] && live[e.src] && reachable[e.dst] && live[e.dst]) {
      Edge copy = e;
      copy.src = remap[e.src];
      copy.dst = remap[e.dst];
      out.edges.push_back(std::move(copy));
    }
  }
  return out;
}

// Quotient by direct bisimulation: start from the acceptance split and
// refine by outgoing (label, class) signatures until stable.
BuchiAutomaton bisimulation_quotient(const BuchiAutomaton& a) {
  if (a.num_states == 0) return a;
  std::vector<std::uint32_t> cls(a.num_states);
  for (std::uint32_t q = 0; q < a.num_states; ++q) {
    cls[q] = a.accepting[q] ? 1 : 0;
  }
  auto adj = a.adjacency();

  while (true) {
    std::map<std::pair<std::uint32_t, std::set<std::pair<Cube, std::uint32_t>>>,
             std::uint32_t>
        signatures;
    std::vector<std::uint32_t> next(a.num_states);
    for (std::uint32_t q = 0; q < a.num_states; ++q) {
      std::set<std::pair<Cube, std::uint32_t>> sig;
      for (std::uint32_t ei : adj[q]) {
        sig.emplace(a.edges[ei].label, cls[a.edges[ei].dst]);
      }
      auto key = std::make_pair(cls[q], std::move(sig));
      auto it = signatures.find(key);
      if (it == signatures.end()) {
        it = signatures.emplace(std::move(key),
                                static_cast<std::uint32_t>(signatures.size()))
                 .first;
      }
      next[q] = it->second;
    }
    // `next` refines `cls` (signatures are keyed by the old class), so the
    // partitions coincide exactly when the class counts match.
    std::set<std::uint32_t> old_classes(cls.begin(), cls.end());
    bool stable = signatures.size() == old_classes.size();
    cls = std::move(next);
    if (stable) break;
  }

  // Renumber classes in order of first member for determinism.
  std::map<std::uint32_t, std::uint32_t> order;
  for (std::uint32_t q = 0; q < a.num_states; ++q) {
    order.emplace(cls[q], static_cast<std::uint32_t>(order.size()));
  }
  BuchiAutomaton out;
  out.atoms = a.atoms;
  out.num_states = static_cast<std::uint32_t>(order.size());
  out.accepting.assign(out.num_states, false);
  for (std::uint32_t q = 0; q < a.num_states; ++q) {
    if (a.accepting[q]) out.accepting[order[cls[q]]] = true;
  }
  out.initial = order[cls[a.initial]];
  std::set<std::tuple<std::uint32_t, std::uint32_t, Cube>> seen;
  for (const Edge& e : a.edges) {
    std::uint32_t s = order[cls[e.src]];
    std::uint32_t d = order[cls[e.dst]];
    if (seen.emplace(s, d, e.label).second) {
      Edge copy = e;
      copy.src = s;
      copy.dst = d;
      out.edges.push_back(std::move(copy));
    }
  }
  return out;
}

// Drops an edge when a parallel edge with a weaker label covers it.
BuchiAutomaton subsume_edges(const BuchiAutomaton& a) {
  auto weaker_or_equal = [](const Cube& weak, const Cube& strong) {
    for (const Literal& l : weak.literals()) {
      if (strong.polarity(l.atom) != (l.positive ? 1 : -1)) return false;
    }
    return true;
  };
  BuchiAutomaton out = a;
  out.edges.clear();
  for (std::size_t i = 0; i < a.edges.size(); ++i) {
    const Edge& e = a.edges[i];
    bool covered = false;
    for (std::size_t j = 0; j < a.edges.size() && !covered; ++j) {
      if (i == j) continue;
      const Edge& other = a.edges[j];
      if (other.src != e.src || other.dst != e.dst) continue;
      if (!weaker_or_equal(other.label, e.label)) continue;
      // Equal labels: keep the first occurrence only.
      covered = !(other.label == e.label) || j < i;
    }
    if (!covered) out.edges.push_back(e);
  }
  return out;
}

using FormulaSet = std::vector<FormulaRef>;  // sorted by id, unique

bool id_less(FormulaRef a, FormulaRef b) { return a->id() < b->id(); }

void sorted_insert(FormulaSet& set, FormulaRef f) {
  auto it = std::lower_bound(set.begin(), set.end(), f, id_less);
  if (it == set.end() || *it != f) set.insert(it, f);
}

// Obligation sets are conjunctions, so conjunctions are kept split; this
// makes the state after reading a stutter step coincide with the initial
// state instead of differing by an And spine.
void split_insert(FormulaSet& set, FormulaRef f) {
  if (f->op() == Op::And) {
    split_insert(set, f->lhs());
    split_insert(set, f->rhs());
  } else {
    sorted_insert(set, f);
  }
}

// One disjunct of the transition normal form of an obligation set:
// cube ∧ X(next), with the Until formulas postponed on this branch recorded
// as promises.
struct Branch {
  Cube cube;
  FormulaSet next;
  FormulaSet promises;

  bool operator==(const Branch&) const = default;
};

void collect_untils(FormulaRef f, FormulaSet& out, std::set<FormulaRef>& seen) {
  if (!seen.insert(f).second) return;
  if (f->op() == Op::Until) out.push_back(f);
  if (f->lhs()) collect_untils(f->lhs(), out, seen);
  if (f->rhs()) collect_untils(f->rhs(), out, seen);
}

class Tableau {
public:
  Tableau(FormulaRef f, const TranslateOptions& opt) : opt_(opt) {
    root_ = nnf(f);
    std::set<FormulaRef> seen;
    collect_untils(root_, untils_, seen);
  }

  BuchiAutomaton build() {
    BuchiAutomaton aut;
    const std::size_t k = untils_.size();

    // States are (obligation set, degeneralization level); accepting at
    // level k. BFS keeps the numbering deterministic.
    std::map<std::pair<const FormulaSet*, std::size_t>, std::uint32_t> index;
    std::vector<std::pair<const FormulaSet*, std::size_t>> worklist;

    auto state_id = [&](const FormulaSet& set, std::size_t level) {
      const FormulaSet* canon = canonical_set(set);
      auto key = std::make_pair(canon, level);
      auto it = index.find(key);
      if (it != index.end()) return it->second;
      auto id = static_cast<std::uint32_t>(index.size());
      if (index.size() >= opt_.state_cap) {
        throw ResourceError("translation exceeded the state cap");
      }
      index.emplace(key, id);
      worklist.push_back(key);
      return id;
    };

    FormulaSet init;
    split_insert(init, root_);
    aut.initial = state_id(init, 0);

    std::map<std::pair<const FormulaSet*, std::size_t>, int> base_ids;
    for (std::size_t w = 0; w < worklist.size(); ++w) {
      auto [set, level] = worklist[w];
      auto src = static_cast<std::uint32_t>(w);
      const auto& branches = expansion(*set);
      for (std::size_t b = 0; b < branches.size(); ++b) {
        const Branch& br = branches[b];
        std::size_t eff = (level == k) ? 0 : level;
        while (eff < k && !contains(br.promises, untils_[eff])) ++eff;
        std::uint32_t dst = state_id(br.next, eff);
        auto [bit, fresh] = base_ids.emplace(
            std::make_pair(set, b), static_cast<int>(base_ids.size()));
        (void)fresh;
        Edge edge{src, dst, br.cube, EdgeKind::Normal, {}};
        edge.base_id = bit->second;
        aut.edges.push_back(std::move(edge));
        if (aut.edges.size() > opt_.transition_cap) {
          throw ResourceError("translation exceeded the transition cap");
        }
      }
    }

    aut.num_states = static_cast<std::uint32_t>(index.size());
    aut.accepting.assign(aut.num_states, false);
    for (const auto& [key, id] : index) {
      if (key.second == k) aut.accepting[id] = true;
    }
    aut.atoms = collect_atoms(root_);
    return aut;
  }

private:
  static bool contains(const FormulaSet& set, FormulaRef f) {
    return std::binary_search(set.begin(), set.end(), f, id_less);
  }

  const FormulaSet* canonical_set(const FormulaSet& set) {
    return &*sets_.insert(set).first;
  }

  const std::vector<Branch>& expansion(const FormulaSet& set) {
    auto it = expansion_cache_.find(&set);
    if (it != expansion_cache_.end()) return it->second;
    std::vector<Branch> out;
    expand(set, 0, Branch{}, {}, out);
    // Merge duplicate branches, keeping first-found order.
    std::vector<Branch> unique;
    for (Branch& b : out) {
      if (std::find(unique.begin(), unique.end(), b) == unique.end()) {
        unique.push_back(std::move(b));
      }
    }
    return expansion_cache_.emplace(&set, std::move(unique)).first->second;
  }

  // Expands the conjunction of `todo[i..] ∪ rest of set` into branches.
  // `done` guards against expanding one formula twice on a branch.
  void expand(const FormulaSet& set, std::size_t pos, Branch current,
              std::set<FormulaRef> done, std::vector<Branch>& out) {
    std::vector<FormulaRef> todo(set.begin() + pos, set.end());
    expand_todo(std::move(todo), std::move(current), std::move(done), out);
  }

  void expand_todo(std::vector<FormulaRef> todo, Branch current,
                   std::set<FormulaRef> done, std::vector<Branch>& out) {
    while (!todo.empty()) {
      FormulaRef f = todo.back();
      todo.pop_back();
      if (!done.insert(f).second) continue;
      switch (f->op()) {
        case Op::True:
          break;
        case Op::False:
          return;  // branch dies
        case Op::Atom:
          if (!current.cube.insert(f->atom_name(), true)) return;
          break;
        case Op::Not:
          // NNF: negation sits over an atom.
          if (!current.cube.insert(f->lhs()->atom_name(), false)) return;
          break;
        case Op::And:
          todo.push_back(f->lhs());
          todo.push_back(f->rhs());
          break;
        case Op::Or: {
          auto left = todo;
          left.push_back(f->lhs());
          expand_todo(std::move(left), current, done, out);
          todo.push_back(f->rhs());
          break;
        }
        case Op::Next:
          split_insert(current.next, f->lhs());
          break;
        case Op::Until: {
          // b now (fulfilled), or a now with the obligation promised.
          auto fulfil = todo;
          fulfil.push_back(f->rhs());
          expand_todo(std::move(fulfil), current, done, out);
          todo.push_back(f->lhs());
          sorted_insert(current.next, f);
          sorted_insert(current.promises, f);
          break;
        }
        case Op::Release: {
          // b ∧ a now (released), or b now and the obligation carried over.
          auto release_now = todo;
          release_now.push_back(f->lhs());
          release_now.push_back(f->rhs());
          expand_todo(std::move(release_now), current, done, out);
          todo.push_back(f->rhs());
          sorted_insert(current.next, f);
          break;
        }
        case Op::Implies:
        case Op::Globally:
        case Op::Finally:
          // Desugared away by nnf.
          throw std::logic_error("sugar operator survived nnf");
      }
    }
    out.push_back(std::move(current));
  }

  TranslateOptions opt_;
  FormulaRef root_;
  FormulaSet untils_;
  std::set<FormulaSet> sets_;
  std::map<const FormulaSet*, std::vector<Branch>> expansion_cache_;
};

}  // namespace

BuchiAutomaton translate(FormulaRef f, const TranslateOptions& opt) {
  BuchiAutomaton aut = Tableau(f, opt).build();
  aut = trim(aut);
  aut = subsume_edges(aut);
  aut = bisimulation_quotient(aut);
  aut = subsume_edges(aut);
  aut = bisimulation_quotient(aut);
  return aut;
}

}  // namespace bcfind
