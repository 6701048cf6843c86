#pragma once

#include <subsync/search.hpp>

#include <string>
#include <vector>

namespace subsync {

/// The S-relevant part: states active along some prefix of some careful
/// reset word of S, and the automaton restricted to it.
struct RelevantPart {
  StateSet states;
  /// Restriction to `states`, renumbered densely; transitions leaving the
  /// relevant part are undefined. Always of kind pfa.
  Automaton automaton;
  /// original[i] = state of the source automaton behind restricted state i.
  std::vector<State> original;
  /// local[s] = restricted index of s, or Automaton::kNone.
  std::vector<State> local;

  StateSet to_local(const StateSet& s) const {
    StateSet out(original.size());
    s.for_each([&](State q) {
      if (local[q] == Automaton::kNone) throw Error("state outside the relevant part");
      out.insert(local[q]);
    });
    return out;
  }
  StateSet to_original(const StateSet& s) const {
    StateSet out(local.size());
    s.for_each([&](State q) { out.insert(original[q]); });
    return out;
  }
};

/// Nodes of the subset graph reachable from S that can still reach a
/// singleton, including the singletons themselves.
inline std::vector<bool> co_reachable_nodes(const SubsetGraph& g) {
  const std::size_t count = g.nodes.size();
  std::vector<std::vector<std::uint32_t>> reverse(count);
  for (std::uint32_t i = 0; i < count; ++i)
    for (Letter x = 0; x < g.letters; ++x) {
      auto t = g.edge(i, x);
      if (t != SubsetGraph::kNoEdge) reverse[t].push_back(i);
    }
  std::vector<bool> good(count, false);
  std::vector<std::uint32_t> todo;
  for (std::uint32_t i = 0; i < count; ++i)
    if (g.nodes[i].size() == 1) {
      good[i] = true;
      todo.push_back(i);
    }
  while (!todo.empty()) {
    auto v = todo.back();
    todo.pop_back();
    for (auto u : reverse[v])
      if (!good[u]) {
        good[u] = true;
        todo.push_back(u);
      }
  }
  return good;
}

inline RelevantPart relevant_part(const Automaton& a, const StateSet& S,
                                  const SearchBudget& budget = {}) {
  const auto graph = explore_subset_graph(a, S, budget);
  const auto good = co_reachable_nodes(graph);
  if (!good[0]) throw Error("relevant part undefined: the subset is blind");

  RelevantPart rel;
  rel.states = StateSet(a.states());
  for (std::size_t i = 0; i < graph.nodes.size(); ++i)
    if (good[i]) rel.states |= graph.nodes[i];
  rel.original = rel.states.members();
  rel.local.assign(a.states(), Automaton::kNone);
  for (std::size_t i = 0; i < rel.original.size(); ++i)
    rel.local[rel.original[i]] = static_cast<State>(i);

  AutomatonBuilder b(Kind::pfa, rel.original.size(), a.alphabet());
  for (State i = 0; i < rel.original.size(); ++i)
    for (Letter x = 0; x < a.letters(); ++x) {
      const State t = a.target(rel.original[i], x);
      if (t != Automaton::kNone && rel.local[t] != Automaton::kNone) b.set(i, x, rel.local[t]);
    }
  if (a.has_labels()) {
    std::vector<std::string> names;
    for (State s : rel.original) names.push_back(a.labels()[s]);
    b.labels(std::move(names));
  }
  rel.automaton = b.build();
  return rel;
}

/// Block index per state, or npos for uncovered states. Throws on overlap.
inline std::vector<std::size_t> block_index(std::size_t n, const std::vector<StateSet>& blocks) {
  std::vector<std::size_t> of(n, static_cast<std::size_t>(-1));
  for (std::size_t b = 0; b < blocks.size(); ++b)
    blocks[b].for_each([&](State s) {
      if (s >= n) throw Error("partition block does not fit automaton");
      if (of[s] != static_cast<std::size_t>(-1)) throw Error("partition blocks must be disjoint");
      of[s] = b;
    });
  return of;
}

/// True iff the partition is a congruence on which every letter acts
/// injectively, block by block.
inline bool verify_swap_congruence(const Automaton& a, const std::vector<StateSet>& partition) {
  if (a.kind() != Kind::dfa) throw Error("swap congruences are defined for dfa");
  const auto of = block_index(a.states(), partition);
  for (auto b : of)
    if (b == static_cast<std::size_t>(-1)) throw Error("partition must cover every state");
  for (const auto& block : partition) {
    const auto members = block.members();
    for (Letter x = 0; x < a.letters(); ++x) {
      StateSet images(a.states());
      std::size_t image_block = static_cast<std::size_t>(-1);
      for (State s : members) {
        const State t = a.target(s, x);
        if (images.contains(t)) return false;
        images.insert(t);
        if (image_block == static_cast<std::size_t>(-1))
          image_block = of[t];
        else if (of[t] != image_block)
          return false;
      }
    }
  }
  return true;
}

struct MpVerdict {
  bool ok = true;
  /// Counterexample: a word whose image violates the transversal property.
  Word word;
  StateSet subset;
  std::string reason;
};

/// Checks membership of <A, S> in M_P with the given blocks.
///
/// Blocks are intersected with the relevant part first; they must then be
/// |S| disjoint sets covering it. Every subset reachable from S inside the
/// relevant automaton must be a singleton or meet each block exactly once.
inline MpVerdict verify_mp(const Automaton& a, const StateSet& S,
                           const std::vector<StateSet>& partition,
                           const SearchBudget& budget = {}) {
  detail::require_single_valued(a, "verify_mp");
  const auto rel = relevant_part(a, S, budget);
  MpVerdict v;
  auto fail = [&](Word w, StateSet sub, std::string why) {
    v.ok = false;
    v.word = std::move(w);
    v.subset = std::move(sub);
    v.reason = std::move(why);
    return v;
  };

  std::vector<StateSet> blocks;
  StateSet covered(a.states());
  for (const auto& b : partition) {
    if (b.universe() != a.states()) throw Error("partition block does not fit automaton");
    blocks.push_back(b & rel.states);
    if (covered.intersects(blocks.back())) return fail({}, S, "blocks are not disjoint");
    covered |= blocks.back();
  }
  if (blocks.size() != S.size())
    return fail({}, S, "block count " + std::to_string(blocks.size()) + " differs from |S| = " +
                           std::to_string(S.size()));
  if (covered != rel.states) return fail({}, S, "blocks do not cover the relevant part");

  std::vector<StateSet> local_blocks;
  for (const auto& b : blocks) local_blocks.push_back(rel.to_local(b));
  const auto graph = explore_subset_graph(rel.automaton, rel.to_local(S), budget, false);
  for (std::uint32_t i = 0; i < graph.nodes.size(); ++i) {
    const auto& node = graph.nodes[i];
    if (node.size() == 1) continue;
    for (std::size_t b = 0; b < local_blocks.size(); ++b) {
      const auto hit = (node & local_blocks[b]).size();
      if (hit != 1)
        return fail(graph.path_to(i), rel.to_original(node),
                    "image meets block " + std::to_string(b) + " in " + std::to_string(hit) +
                        " states");
    }
  }
  return v;
}

}  // namespace subsync
