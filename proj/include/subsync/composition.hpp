#pragma once

#include <subsync/search.hpp>

#include <cstdint>
#include <functional>
#include <vector>

namespace subsync {

/// A total function on {0, ..., n-1}; f[s] is the image of s.
using Transformation = std::vector<State>;

struct TransformationHash {
  std::size_t operator()(const Transformation& f) const {
    std::uint64_t h = 1469598103934665603ULL;
    for (State s : f) {
      h ^= s;
      h *= 1099511628211ULL;
    }
    return static_cast<std::size_t>(h);
  }
};

using TransformationPredicate = std::function<bool(const Transformation&)>;

inline TransformationPredicate constant_functions() {
  return [](const Transformation& f) {
    for (State s : f)
      if (s != f.front()) return false;
    return true;
  };
}

/// F_S: functions identifying all states of S.
inline TransformationPredicate merges(StateSet S) {
  return [S = std::move(S)](const Transformation& f) {
    std::optional<State> common;
    bool ok = true;
    S.for_each([&](State s) {
      if (!common)
        common = f[s];
      else if (f[s] != *common)
        ok = false;
    });
    return ok;
  };
}

/// The letter actions of a dfa as generators.
inline std::vector<Transformation> letter_transformations(const Automaton& a) {
  if (a.kind() != Kind::dfa) throw Error("letter transformations require a dfa");
  std::vector<Transformation> gens(a.letters(), Transformation(a.states()));
  for (Letter x = 0; x < a.letters(); ++x)
    for (State s = 0; s < a.states(); ++s) gens[x][s] = a.target(s, x);
  return gens;
}

/// Shortest k >= 1 and generator indices i_1..i_k such that
/// g_{i_1} ∘ ... ∘ g_{i_k} satisfies `target`; BFS over the generated
/// subsemigroup. The witness lists generator indices in composition order.
inline SearchResult composition_depth(std::size_t n, const std::vector<Transformation>& generators,
                                      const TransformationPredicate& target,
                                      const SearchBudget& budget = {}) {
  if (n == 0) throw Error("composition domain must be nonempty");
  if (generators.empty()) throw Error("need at least one generator");
  for (const auto& g : generators) {
    if (g.size() != n) throw Error("generator has wrong domain size");
    for (State s : g)
      if (s >= n) throw Error("generator leaves the domain");
  }
  Transformation identity(n);
  for (State s = 0; s < n; ++s) identity[s] = s;
  // h ↦ h ∘ g appends g to the composition sequence.
  auto succ = [&](const Transformation& h, Letter x) -> std::optional<Transformation> {
    const auto& g = generators[x];
    Transformation out(n);
    for (State s = 0; s < n; ++s) out[s] = h[g[s]];
    return out;
  };
  return bfs_shortest<Transformation, TransformationHash>(
      std::move(identity), generators.size(), succ, target,
      [](const Transformation&) { return false; }, budget, n * sizeof(State),
      /*phantom_source=*/true);
}

/// Evaluates g_{i_1} ∘ ... ∘ g_{i_k} for a witness sequence.
inline Transformation compose(std::size_t n, const std::vector<Transformation>& generators,
                              const Word& sequence) {
  Transformation f(n);
  for (State s = 0; s < n; ++s) f[s] = s;
  for (Letter i : sequence) {
    Transformation next(n);
    for (State s = 0; s < n; ++s) next[s] = f[generators.at(i)[s]];
    f = std::move(next);
  }
  return f;
}

}  // namespace subsync
