#pragma once

#include <subsync/automaton.hpp>

#include <algorithm>
#include <set>
#include <utility>
#include <vector>

namespace subsync {

/// Strongly connected components of the transition graph.
struct Condensation {
  /// Components in topological order (arcs only go from lower to higher index).
  std::vector<std::vector<State>> components;
  /// component_of[s] = index into `components`.
  std::vector<std::size_t> component_of;
  /// Deduplicated arcs between distinct components.
  std::vector<std::pair<std::size_t, std::size_t>> dag_edges;

  std::size_t size() const { return components.size(); }
  bool is_source(std::size_t c) const {
    for (auto [from, to] : dag_edges)
      if (to == c) return false;
    return true;
  }
  bool is_sink(std::size_t c) const {
    for (auto [from, to] : dag_edges)
      if (from == c) return false;
    return true;
  }
};

namespace detail {

inline std::vector<std::vector<State>> adjacency(const Automaton& a,
                                                 std::span<const StatePair> extra = {}) {
  std::vector<std::vector<State>> adj(a.states());
  for (State s = 0; s < a.states(); ++s) {
    for (Letter x = 0; x < a.letters(); ++x)
      for (State t : a.successors(s, x)) adj[s].push_back(t);
  }
  for (const auto& p : extra) adj.at(p.from).push_back(p.to);
  for (auto& row : adj) {
    std::sort(row.begin(), row.end());
    row.erase(std::unique(row.begin(), row.end()), row.end());
  }
  return adj;
}

/// Iterative Tarjan; components come out in reverse topological order.
inline std::vector<std::vector<State>> tarjan(const std::vector<std::vector<State>>& adj) {
  const std::size_t n = adj.size();
  constexpr std::size_t unvisited = static_cast<std::size_t>(-1);
  std::vector<std::size_t> index(n, unvisited), low(n, 0);
  std::vector<bool> on_stack(n, false);
  std::vector<State> stack;
  std::vector<std::vector<State>> comps;
  std::size_t counter = 0;

  struct Frame {
    State v;
    std::size_t next_edge;
  };
  std::vector<Frame> call;
  for (State root = 0; root < n; ++root) {
    if (index[root] != unvisited) continue;
    call.push_back({root, 0});
    index[root] = low[root] = counter++;
    stack.push_back(root);
    on_stack[root] = true;
    while (!call.empty()) {
      auto& f = call.back();
      if (f.next_edge < adj[f.v].size()) {
        const State w = adj[f.v][f.next_edge++];
        if (index[w] == unvisited) {
          index[w] = low[w] = counter++;
          stack.push_back(w);
          on_stack[w] = true;
          call.push_back({w, 0});
        } else if (on_stack[w]) {
          low[f.v] = std::min(low[f.v], index[w]);
        }
        continue;
      }
      const State v = f.v;
      call.pop_back();
      if (!call.empty()) low[call.back().v] = std::min(low[call.back().v], low[v]);
      if (low[v] == index[v]) {
        std::vector<State> comp;
        State w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = false;
          comp.push_back(w);
        } while (w != v);
        std::sort(comp.begin(), comp.end());
        comps.push_back(std::move(comp));
      }
    }
  }
  return comps;
}

inline Condensation condense(const std::vector<std::vector<State>>& adj) {
  Condensation c;
  c.components = tarjan(adj);
  std::reverse(c.components.begin(), c.components.end());
  c.component_of.assign(adj.size(), 0);
  for (std::size_t i = 0; i < c.components.size(); ++i)
    for (State s : c.components[i]) c.component_of[s] = i;
  std::set<std::pair<std::size_t, std::size_t>> edges;
  for (State s = 0; s < adj.size(); ++s)
    for (State t : adj[s])
      if (c.component_of[s] != c.component_of[t])
        edges.insert({c.component_of[s], c.component_of[t]});
  c.dag_edges.assign(edges.begin(), edges.end());
  return c;
}

}  // namespace detail

/// An arc exists for every successor of every (state, letter).
inline Condensation scc_condensation(const Automaton& a) {
  return detail::condense(detail::adjacency(a));
}

inline bool strongly_connected(const Automaton& a) {
  return scc_condensation(a).size() == 1;
}

/// True iff adding the arcs r -> q makes the transition graph strongly
/// connected, i.e. the pairs witness membership in C_j with j = |pairs|.
inline bool verify_cj(const Automaton& a, std::span<const StatePair> pairs) {
  for (const auto& p : pairs)
    if (p.from >= a.states() || p.to >= a.states())
      throw Error("pair references invalid state");
  return detail::condense(detail::adjacency(a, pairs)).size() == 1;
}

/// Arcs whose addition makes the automaton strongly connected. Empty iff
/// already strongly connected; not minimal in general.
///
/// Sources s_1..s_q of the condensation are chained through sinks reachable
/// from them (t(s_i) -> s_{i+1}), and every remaining sink, together with
/// t(s_q), is linked back to s_1.
inline std::vector<StatePair> augmenting_pairs(const Automaton& a) {
  const auto c = scc_condensation(a);
  if (c.size() <= 1) return {};

  std::vector<std::vector<std::size_t>> out(c.size());
  for (auto [from, to] : c.dag_edges) out[from].push_back(to);

  std::vector<std::size_t> sources, sinks;
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (c.is_source(i)) sources.push_back(i);
    if (c.is_sink(i)) sinks.push_back(i);
  }

  auto reachable_sinks = [&](std::size_t from) {
    std::vector<bool> seen(c.size(), false);
    std::vector<std::size_t> todo{from};
    seen[from] = true;
    std::vector<std::size_t> found;
    while (!todo.empty()) {
      auto v = todo.back();
      todo.pop_back();
      if (out[v].empty()) found.push_back(v);
      for (auto w : out[v])
        if (!seen[w]) {
          seen[w] = true;
          todo.push_back(w);
        }
    }
    std::sort(found.begin(), found.end());
    return found;
  };

  auto rep = [&](std::size_t comp) { return c.components[comp].front(); };
  std::vector<bool> used(c.size(), false);
  std::vector<StatePair> pairs;
  auto pick_sink = [&](std::size_t source) {
    auto candidates = reachable_sinks(source);
    for (auto t : candidates)
      if (!used[t]) return t;
    return candidates.front();
  };

  for (std::size_t i = 0; i + 1 < sources.size(); ++i) {
    const auto t = pick_sink(sources[i]);
    used[t] = true;
    pairs.push_back({rep(t), rep(sources[i + 1])});
  }
  const auto last = pick_sink(sources.back());
  used[last] = true;
  pairs.push_back({rep(last), rep(sources.front())});
  for (auto t : sinks)
    if (!used[t]) pairs.push_back({rep(t), rep(sources.front())});
  return pairs;
}

}  // namespace subsync
