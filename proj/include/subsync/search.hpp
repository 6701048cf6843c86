#pragma once

#include <subsync/automaton.hpp>

#include <chrono>
#include <cstdint>
#include <optional>
#include <string_view>
#include <unordered_set>
#include <utility>
#include <vector>

namespace subsync {

enum class Status { found, blind, not_synchronizing, budget_exceeded };

inline std::string_view to_string(Status s) {
  switch (s) {
    case Status::found: return "found";
    case Status::blind: return "blind";
    case Status::not_synchronizing: return "not_synchronizing";
    case Status::budget_exceeded: return "budget_exceeded";
  }
  return "?";
}

struct SearchBudget {
  std::uint64_t max_nodes = 10'000'000;
  std::uint64_t max_length = 10'000'000;
  /// Advisory: checked against an estimate of table memory.
  std::uint64_t max_memory = std::uint64_t{8} << 30;
};

struct SearchResult {
  Status status = Status::not_synchronizing;
  std::size_t length = 0;
  Word witness;
  std::uint64_t explored = 0;
  std::chrono::nanoseconds elapsed{0};

  bool found() const { return status == Status::found; }
};

class BudgetExceeded : public Error {
 public:
  explicit BudgetExceeded(const std::string& what) : Error(what) {}
};

/// Breadth-first search with parent links over an implicit graph.
///
/// Nodes are expanded level by level; letters in ascending order; the first
/// discovery of a node fixes its parent. Combined with FIFO order this makes
/// every stored path the lexicographically least shortest one, so the first
/// goal node found yields the lexicographically least shortest witness.
///
/// `succ(node, letter) -> std::optional<Node>`, `goal(node) -> bool`,
/// `dead(node) -> bool` (never expanded, never a goal).
/// With `phantom_source` the source is neither a goal candidate nor recorded
/// as visited, so witnesses have length >= 1 and the source node may be
/// rediscovered at a later level.
template <typename Node, typename Hash, typename Succ, typename Goal, typename Dead>
SearchResult bfs_shortest(Node source, std::size_t letters, Succ&& succ, Goal&& goal,
                          Dead&& dead, const SearchBudget& budget,
                          std::size_t node_bytes, bool phantom_source = false) {
  const auto started = std::chrono::steady_clock::now();
  SearchResult result;
  auto finish = [&](Status status) {
    result.status = status;
    result.elapsed = std::chrono::steady_clock::now() - started;
    return result;
  };

  std::vector<Node> nodes;
  std::vector<std::uint32_t> parent;
  std::vector<Letter> via;
  struct IndexHash {
    const std::vector<Node>* nodes;
    std::size_t operator()(std::uint32_t i) const { return Hash{}((*nodes)[i]); }
  };
  struct IndexEq {
    const std::vector<Node>* nodes;
    bool operator()(std::uint32_t a, std::uint32_t b) const {
      return (*nodes)[a] == (*nodes)[b];
    }
  };
  std::unordered_set<std::uint32_t, IndexHash, IndexEq> visited(
      1024, IndexHash{&nodes}, IndexEq{&nodes});

  auto witness_of = [&](std::uint32_t i) {
    Word w;
    while (i != 0) {
      w.push_back(via[i]);
      i = parent[i];
    }
    return Word(w.rbegin(), w.rend());
  };

  const std::uint64_t per_node = node_bytes + sizeof(std::uint32_t) * 4 + sizeof(Letter) + 32;
  nodes.push_back(std::move(source));
  parent.push_back(0);
  via.push_back(0);
  result.explored = 1;
  if (!phantom_source) {
    visited.insert(0);
    if (goal(nodes[0]) && !dead(nodes[0])) return finish(Status::found);
  }

  std::size_t level_begin = 0, level_end = 1, level = 0;
  while (level_begin < level_end) {
    if (level + 1 > budget.max_length) return finish(Status::budget_exceeded);
    for (std::size_t i = level_begin; i < level_end; ++i) {
      if (!(phantom_source && i == 0) && dead(nodes[i])) continue;
      for (Letter x = 0; x < letters; ++x) {
        auto next = succ(nodes[i], x);
        if (!next) continue;
        nodes.push_back(std::move(*next));
        const auto idx = static_cast<std::uint32_t>(nodes.size() - 1);
        if (!visited.insert(idx).second) {
          nodes.pop_back();
          continue;
        }
        parent.push_back(static_cast<std::uint32_t>(i));
        via.push_back(x);
        ++result.explored;
        if (goal(nodes[idx]) && !dead(nodes[idx])) {
          result.witness = witness_of(idx);
          result.length = result.witness.size();
          return finish(Status::found);
        }
        if (result.explored > budget.max_nodes ||
            result.explored * per_node > budget.max_memory)
          return finish(Status::budget_exceeded);
      }
    }
    level_begin = level_end;
    level_end = nodes.size();
    ++level;
  }
  return finish(Status::not_synchronizing);
}

namespace detail {

/// Letter applicability for subset search: careful for dfa/pfa.
inline auto subset_successor(const Automaton& a) {
  return [&a](const StateSet& from, Letter x) { return careful_image(a, from, x); };
}

/// Sets containing two distinct sink states can never be merged.
inline auto two_sinks(const Automaton& a) {
  return [sinks = sink_states(a)](const StateSet& s) {
    StateSet both = s & sinks;
    return both.size() >= 2;
  };
}

inline void require_single_valued(const Automaton& a, std::string_view op) {
  if (!a.single_valued())
    throw Error(std::string(op) + " requires a dfa or pfa");
}

}  // namespace detail

/// Shortest word w with |δ(S, w)| = 1, where each letter must be defined on
/// every active state. sub(A, S) for dfa, csub(A, S) for pfa. Negative
/// outcome is `blind`.
inline SearchResult shortest_subset_reset(const Automaton& a, const StateSet& S,
                                          const SearchBudget& budget = {}) {
  detail::require_single_valued(a, "subset reset search");
  if (S.universe() != a.states()) throw Error("subset does not fit automaton");
  if (S.empty()) throw Error("subset must be nonempty");
  auto r = bfs_shortest<StateSet, StateSetHash>(
      S, a.letters(), detail::subset_successor(a),
      [](const StateSet& s) { return s.size() == 1; }, detail::two_sinks(a), budget,
      S.byte_size());
  if (r.status == Status::not_synchronizing) r.status = Status::blind;
  return r;
}

/// Shortest careful reset word of the whole automaton (car(A)).
inline SearchResult shortest_careful_reset(const Automaton& a, const SearchBudget& budget = {}) {
  detail::require_single_valued(a, "careful reset search");
  auto r = shortest_subset_reset(a, StateSet::full(a.states()), budget);
  if (r.status == Status::blind) r.status = Status::not_synchronizing;
  return r;
}

/// Shortest reset word of a dfa.
inline SearchResult shortest_reset(const Automaton& a, const SearchBudget& budget = {}) {
  if (a.kind() != Kind::dfa) throw Error("shortest_reset requires a dfa");
  return shortest_careful_reset(a, budget);
}

/// True iff S has no careful reset word. Throws BudgetExceeded when the
/// search cannot be completed.
inline bool is_blind(const Automaton& a, const StateSet& S, const SearchBudget& budget = {}) {
  auto r = shortest_subset_reset(a, S, budget);
  if (r.status == Status::budget_exceeded)
    throw BudgetExceeded("is_blind: budget exceeded after " + std::to_string(r.explored) + " nodes");
  return r.status == Status::blind;
}

/// The state that a reset word maps S to.
inline State sync_target(const Automaton& a, const StateSet& S, const Word& w) {
  auto end = careful_run(a, S, w);
  if (!end || end->size() != 1) throw Error("word does not carefully reset the subset");
  return end->first();
}

/// Materialized careful subset graph reachable from a source set.
struct SubsetGraph {
  std::vector<StateSet> nodes;
  /// edges[node * letters + x] = target node, or kNoEdge when x is not
  /// applicable (or the node was not expanded because it is dead).
  std::vector<std::uint32_t> edges;
  std::vector<std::uint32_t> parent;
  std::vector<Letter> via;
  std::size_t letters = 0;
  bool complete = true;

  static constexpr std::uint32_t kNoEdge = static_cast<std::uint32_t>(-1);

  std::uint32_t edge(std::uint32_t node, Letter x) const { return edges[node * letters + x]; }

  Word path_to(std::uint32_t i) const {
    Word w;
    while (i != 0) {
      w.push_back(via[i]);
      i = parent[i];
    }
    return Word(w.rbegin(), w.rend());
  }
};

/// Full forward exploration of the careful subset graph from `source`.
/// With `prune_dead`, sets holding two distinct sinks are not expanded.
inline SubsetGraph explore_subset_graph(const Automaton& a, const StateSet& source,
                                        const SearchBudget& budget = {}, bool prune_dead = true) {
  detail::require_single_valued(a, "subset graph exploration");
  SubsetGraph g;
  g.letters = a.letters();
  struct IndexHash {
    const std::vector<StateSet>* nodes;
    std::size_t operator()(std::uint32_t i) const { return (*nodes)[i].hash(); }
  };
  struct IndexEq {
    const std::vector<StateSet>* nodes;
    bool operator()(std::uint32_t x, std::uint32_t y) const { return (*nodes)[x] == (*nodes)[y]; }
  };
  std::unordered_set<std::uint32_t, IndexHash, IndexEq> visited(1024, IndexHash{&g.nodes},
                                                                 IndexEq{&g.nodes});
  auto dead = detail::two_sinks(a);
  g.nodes.push_back(source);
  g.parent.push_back(0);
  g.via.push_back(0);
  visited.insert(0);
  for (std::size_t i = 0; i < g.nodes.size(); ++i) {
    g.edges.resize((i + 1) * g.letters, SubsetGraph::kNoEdge);
    if (prune_dead && dead(g.nodes[i])) continue;
    for (Letter x = 0; x < g.letters; ++x) {
      auto next = careful_image(a, g.nodes[i], x);
      if (!next) continue;
      g.nodes.push_back(std::move(*next));
      auto idx = static_cast<std::uint32_t>(g.nodes.size() - 1);
      auto [it, inserted] = visited.insert(idx);
      if (!inserted) {
        g.nodes.pop_back();
        g.edges[i * g.letters + x] = *it;
        continue;
      }
      g.parent.push_back(static_cast<std::uint32_t>(i));
      g.via.push_back(x);
      g.edges[i * g.letters + x] = idx;
      if (g.nodes.size() > budget.max_nodes)
        throw BudgetExceeded("subset graph exceeds " + std::to_string(budget.max_nodes) + " nodes");
    }
  }
  return g;
}

}  // namespace subsync
