#pragma once

#include <subsync/search.hpp>

#include <string_view>

namespace subsync {

/// NFA synchronization variants:
///   d1: every start state ends in the same singleton {r};
///   d2: all per-start images are equal (possibly empty);
///   d3: some state r lies in every per-start image.
enum class Directing { d1, d2, d3 };

inline std::string_view to_string(Directing d) {
  switch (d) {
    case Directing::d1: return "d1";
    case Directing::d2: return "d2";
    case Directing::d3: return "d3";
  }
  return "?";
}

namespace detail {

/// Tuple of per-start images packed into one n*n bit vector; start s owns
/// bits [s*n, s*n + n).
struct ImageTuple {
  std::size_t n;

  StateSet image(const StateSet& packed, State start) const {
    StateSet out(n);
    for (State q = 0; q < n; ++q)
      if (packed.contains(static_cast<State>(start * n + q))) out.insert(q);
    return out;
  }

  StateSet source() const {
    StateSet packed(n * n);
    for (State s = 0; s < n; ++s) packed.insert(static_cast<State>(s * n + s));
    return packed;
  }
};

}  // namespace detail

/// Shortest directing word of the chosen kind, by BFS over tuples of
/// per-start image sets. Exponential in n*n; intended for n <= 8.
inline SearchResult directing_word(const Automaton& a, Directing mode,
                                   const SearchBudget& budget = {}) {
  const std::size_t n = a.states();
  const detail::ImageTuple tuple{n};

  auto succ = [&](const StateSet& packed, Letter x) -> std::optional<StateSet> {
    StateSet out(n * n);
    for (State s = 0; s < n; ++s)
      for (State q = 0; q < n; ++q)
        if (packed.contains(static_cast<State>(s * n + q)))
          for (State t : a.successors(q, x)) out.insert(static_cast<State>(s * n + t));
    return out;
  };
  auto goal = [&](const StateSet& packed) {
    const StateSet first = tuple.image(packed, 0);
    if (mode == Directing::d3) {
      StateSet common = first;
      for (State s = 1; s < n; ++s) common &= tuple.image(packed, s);
      return !common.empty();
    }
    if (mode == Directing::d1 && first.size() != 1) return false;
    for (State s = 1; s < n; ++s)
      if (tuple.image(packed, s) != first) return false;
    return true;
  };
  // Empty images stay empty, so d1 and d3 can never recover from one.
  auto dead = [&](const StateSet& packed) {
    if (mode == Directing::d2) return false;
    for (State s = 0; s < n; ++s)
      if (tuple.image(packed, s).empty()) return true;
    return false;
  };
  return bfs_shortest<StateSet, StateSetHash>(tuple.source(), a.letters(), succ, goal, dead,
                                              budget, (n * n + 63) / 64 * 8);
}

}  // namespace subsync
