#include "bcfind/automaton.hpp"

#include <algorithm>
#include <deque>
#include <map>

#include "bcfind/product.hpp"

namespace bcfind {

std::vector<std::vector<std::uint32_t>> BuchiAutomaton::adjacency() const {
  std::vector<std::vector<std::uint32_t>> out(num_states);
  for (std::uint32_t i = 0; i < edges.size(); ++i) {
    out[edges[i].src].push_back(i);
  }
  return out;
}

namespace {

struct SccInfo {
  std::vector<int> component;  // -1 for unreachable states
  std::vector<bool> has_internal_edge;
};

// Iterative Tarjan over the states reachable from `initial`.
SccInfo strongly_connected_components(const BuchiAutomaton& a) {
  auto adj = a.adjacency();
  SccInfo info;
  info.component.assign(a.num_states, -1);

  std::vector<int> index(a.num_states, -1);
  std::vector<int> lowlink(a.num_states, 0);
  std::vector<bool> on_stack(a.num_states, false);
  std::vector<std::uint32_t> stack;
  int next_index = 0;
  int scc_count = 0;

  struct Frame {
    std::uint32_t state;
    std::size_t edge_pos;
  };
  std::vector<Frame> call_stack;

  if (a.num_states == 0) return info;
  call_stack.push_back({a.initial, 0});
  index[a.initial] = lowlink[a.initial] = next_index++;
  stack.push_back(a.initial);
  on_stack[a.initial] = true;

  while (!call_stack.empty()) {
    Frame& frame = call_stack.back();
    std::uint32_t v = frame.state;
    if (frame.edge_pos < adj[v].size()) {
      const Edge& e = a.edges[adj[v][frame.edge_pos++]];
      std::uint32_t w = e.dst;
      if (index[w] == -1) {
        index[w] = lowlink[w] = next_index++;
        stack.push_back(w);
        on_stack[w] = true;
        call_stack.push_back({w, 0});
      } else if (on_stack[w]) {
        lowlink[v] = std::min(lowlink[v], index[w]);
      }
    } else {
      if (lowlink[v] == index[v]) {
        while (true) {
          std::uint32_t w = stack.back();
          stack.pop_back();
          on_stack[w] = false;
          info.component[w] = scc_count;
          if (w == v) break;
        }
        ++scc_count;
      }
      call_stack.pop_back();
      if (!call_stack.empty()) {
        std::uint32_t parent = call_stack.back().state;
        lowlink[parent] = std::min(lowlink[parent], lowlink[v]);
      }
    }
  }

  info.has_internal_edge.assign(scc_count, false);
  for (const Edge& e : a.edges) {
    int c = info.component[e.src];
    if (c >= 0 && c == info.component[e.dst]) info.has_internal_edge[c] = true;
  }
  return info;
}

// Shortest path by edge count from `from` to `to`, restricted to edges
// where `allowed` holds; deterministic through edge storage order. The path
// must be nonempty when from == to. Returns edge indices, or nullopt.
std::optional<std::vector<std::uint32_t>> shortest_path(
    const BuchiAutomaton& a, const std::vector<std::vector<std::uint32_t>>& adj,
    std::uint32_t from, std::uint32_t to, auto&& allowed) {
  std::vector<int> parent_edge(a.num_states, -1);
  std::vector<bool> visited(a.num_states, false);
  std::deque<std::uint32_t> queue;
  visited[from] = true;
  queue.push_back(from);
  // Arrival is detected on the edge, not the state, so a nonempty cycle
  // back to `from` is found even though `from` is marked visited.
  while (!queue.empty()) {
    std::uint32_t v = queue.front();
    queue.pop_front();
    for (std::uint32_t ei : adj[v]) {
      const Edge& e = a.edges[ei];
      if (!allowed(e)) continue;
      if (e.dst == to) {
        // Reconstruct: path to v, then this edge.
        std::vector<std::uint32_t> path;
        path.push_back(ei);
        std::uint32_t cur = v;
        while (cur != from) {
          std::uint32_t pe = static_cast<std::uint32_t>(parent_edge[cur]);
          path.push_back(pe);
          cur = a.edges[pe].src;
        }
        std::reverse(path.begin(), path.end());
        return path;
      }
      if (!visited[e.dst]) {
        visited[e.dst] = true;
        parent_edge[e.dst] = static_cast<int>(ei);
        queue.push_back(e.dst);
      }
    }
  }
  return std::nullopt;
}

std::optional<std::vector<std::uint32_t>> shortest_path_to_any(
    const BuchiAutomaton& a, const std::vector<std::vector<std::uint32_t>>& adj,
    std::uint32_t from, auto&& is_target, auto&& allowed,
    std::uint32_t* reached = nullptr) {
  std::vector<int> parent_edge(a.num_states, -1);
  std::vector<bool> visited(a.num_states, false);
  std::deque<std::uint32_t> queue;

  auto finish = [&](std::uint32_t t) {
    std::vector<std::uint32_t> path;
    std::uint32_t cur = t;
    while (cur != from) {
      std::uint32_t pe = static_cast<std::uint32_t>(parent_edge[cur]);
      path.push_back(pe);
      cur = a.edges[pe].src;
    }
    std::reverse(path.begin(), path.end());
    if (reached) *reached = t;
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
      if (!allowed(e) || visited[e.dst]) continue;
      visited[e.dst] = true;
      parent_edge[e.dst] = static_cast<int>(ei);
      if (is_target(e.dst)) return finish(e.dst);
      queue.push_back(e.dst);
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

std::optional<LassoTrace> accepting_lasso(const BuchiAutomaton& a) {
  if (a.num_states == 0) return std::nullopt;
  auto adj = a.adjacency();
  SccInfo scc = strongly_connected_components(a);

  auto is_target = [&](std::uint32_t q) {
    int c = scc.component[q];
    return c >= 0 && a.accepting[q] && scc.has_internal_edge[c];
  };
  auto any_edge = [](const Edge&) { return true; };

  std::uint32_t target = 0;
  auto stem = shortest_path_to_any(a, adj, a.initial, is_target, any_edge,
                                   &target);
  if (!stem) return std::nullopt;

  int comp = scc.component[target];
  auto in_scc = [&](const Edge& e) {
    return scc.component[e.src] == comp && scc.component[e.dst] == comp;
  };
  auto cycle = shortest_path(a, adj, target, target, in_scc);
  if (!cycle) return std::nullopt;  // cannot happen: SCC has internal edges

  return LassoTrace{labels_of(a, *stem), labels_of(a, *cycle)};
}

namespace {

// The single-word automaton of w over `atoms`: complete letters, every
// state accepting.
BuchiAutomaton word_automaton(const LassoTrace& w,
                              const std::vector<std::string>& atoms) {
  BuchiAutomaton aut;
  aut.atoms = atoms;
  std::size_t stem = w.stem.size();
  std::size_t total = stem + w.loop.size();
  aut.num_states = static_cast<std::uint32_t>(total);
  aut.initial = 0;
  aut.accepting.assign(total, true);
  for (std::size_t i = 0; i < total; ++i) {
    const Cube& c = i < stem ? w.stem[i] : w.loop[i - stem];
    Cube letter;
    for (const std::string& atom : atoms) {
      letter.insert(atom, c.polarity(atom) == 1);
    }
    std::uint32_t dst =
        static_cast<std::uint32_t>(i + 1 == total ? stem : i + 1);
    aut.edges.push_back(Edge{static_cast<std::uint32_t>(i), dst, letter,
                             EdgeKind::Normal, {}});
  }
  return aut;
}

}  // namespace

bool accepts(const BuchiAutomaton& a, const LassoTrace& w) {
  std::vector<std::string> atoms = a.atoms;
  for (const auto& cubes : {w.stem, w.loop}) {
    for (const Cube& c : cubes) {
      for (const Literal& l : c.literals()) atoms.push_back(l.atom);
    }
  }
  std::sort(atoms.begin(), atoms.end());
  atoms.erase(std::unique(atoms.begin(), atoms.end()), atoms.end());

  BuchiAutomaton word = word_automaton(w, atoms);
  BuchiAutomaton prod = synthesis_product(word, a, {});
  return !is_empty(prod);
}

std::string export_dot(const BuchiAutomaton& a) {
  std::string out = "digraph buchi {\n  rankdir=LR;\n  node [shape=circle];\n";
  out += "  __init [shape=point, label=\"\"];\n";
  for (std::uint32_t q = 0; q < a.num_states; ++q) {
    out += "  s" + std::to_string(q);
    out += a.accepting[q] ? " [shape=doublecircle];\n" : ";\n";
  }
  out += "  __init -> s" + std::to_string(a.initial) + ";\n";
  for (const Edge& e : a.edges) {
    std::string label = e.label.to_string();
    std::string attrs;
    if (e.kind == EdgeKind::Fusion) {
      label += " [fuse:" + e.conflict_atom + "]";
      attrs = ", style=dashed, color=red";
    }
    out += "  s" + std::to_string(e.src) + " -> s" + std::to_string(e.dst) +
           " [label=\"" + label + "\"" + attrs + "];\n";
  }
  out += "}\n";
  return out;
}

}  // namespace bcfind
