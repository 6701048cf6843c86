#pragma once

#include <subsync/automaton.hpp>

#include <cstdint>
#include <random>
#include <vector>

namespace subsync {

/// Seeded generator with platform-independent derived values
/// (std::mt19937_64 output is fully specified; distributions are not).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  /// Uniform-ish integer in [0, n).
  std::uint64_t below(std::uint64_t n) { return next() % n; }
  std::uint64_t between(std::uint64_t lo, std::uint64_t hi) { return lo + below(hi - lo + 1); }
  bool chance(unsigned percent) { return below(100) < percent; }

  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[below(i)]);
  }

 private:
  std::mt19937_64 engine_;
};

inline Alphabet small_alphabet(std::size_t k) {
  static const char* names[] = {"a", "b", "c", "d", "e", "f", "g", "h"};
  if (k == 0 || k > 8) throw Error("small alphabets have 1..8 letters");
  return Alphabet(std::vector<std::string>(names, names + k));
}

inline Automaton random_dfa(Rng& rng, std::size_t n, std::size_t k) {
  AutomatonBuilder b(Kind::dfa, n, small_alphabet(k));
  for (State s = 0; s < n; ++s)
    for (Letter x = 0; x < k; ++x) b.set(s, x, static_cast<State>(rng.below(n)));
  return b.build();
}

/// Each transition is undefined with the given percentage.
inline Automaton random_pfa(Rng& rng, std::size_t n, std::size_t k, unsigned undefined_percent) {
  AutomatonBuilder b(Kind::pfa, n, small_alphabet(k));
  for (State s = 0; s < n; ++s)
    for (Letter x = 0; x < k; ++x) {
      const State t = static_cast<State>(rng.below(n));
      if (!rng.chance(undefined_percent)) b.set(s, x, t);
    }
  return b.build();
}

/// Each (state, letter, target) arc is present with the given percentage.
inline Automaton random_nfa(Rng& rng, std::size_t n, std::size_t k, unsigned arc_percent) {
  AutomatonBuilder b(Kind::nfa, n, small_alphabet(k));
  for (State s = 0; s < n; ++s)
    for (Letter x = 0; x < k; ++x)
      for (State t = 0; t < n; ++t)
        if (rng.chance(arc_percent)) b.add(s, x, t);
  return b.build();
}

/// Nonempty subset of size in [lo, hi] (clamped to n).
inline StateSet random_subset(Rng& rng, std::size_t n, std::size_t lo, std::size_t hi) {
  hi = std::min(hi, n);
  lo = std::max<std::size_t>(1, std::min(lo, hi));
  std::vector<State> all(n);
  for (State s = 0; s < n; ++s) all[s] = s;
  rng.shuffle(all);
  const auto size = rng.between(lo, hi);
  StateSet out(n);
  for (std::size_t i = 0; i < size; ++i) out.insert(all[i]);
  return out;
}

/// Candidate for the block-transversal class: states split into `blocks`
/// groups, every letter but the last moves block b into block σ_x(b), and
/// the last letter sends a few states to one fixed collector state.
/// S takes one state per block. Callers filter with verify_mp.
inline Instance random_transversal_instance(Rng& rng, std::size_t n, std::size_t blocks,
                                            std::size_t k) {
  if (blocks < 1 || blocks > n || k < 2) throw Error("invalid transversal instance shape");
  std::vector<State> order(n);
  for (State s = 0; s < n; ++s) order[s] = s;
  rng.shuffle(order);
  std::vector<std::vector<State>> groups(blocks);
  for (std::size_t i = 0; i < n; ++i) groups[i < blocks ? i : rng.below(blocks)].push_back(order[i]);
  std::vector<std::size_t> group_of(n);
  for (std::size_t g = 0; g < blocks; ++g)
    for (State s : groups[g]) group_of[s] = g;

  AutomatonBuilder b(Kind::pfa, n, small_alphabet(k));
  for (Letter x = 0; x + 1 < k; ++x) {
    std::vector<std::size_t> sigma(blocks);
    for (std::size_t g = 0; g < blocks; ++g) sigma[g] = g;
    rng.shuffle(sigma);
    for (State s = 0; s < n; ++s) {
      if (rng.chance(15)) continue;
      const auto& dest = groups[sigma[group_of[s]]];
      b.set(s, x, dest[rng.below(dest.size())]);
    }
  }
  const State collector = static_cast<State>(rng.below(n));
  for (State s = 0; s < n; ++s)
    if (rng.chance(45)) b.set(s, static_cast<Letter>(k - 1), collector);

  Instance inst;
  inst.automaton = b.build();
  StateSet S(n);
  std::vector<StateSet> partition;
  for (const auto& g : groups) {
    S.insert(g[rng.below(g.size())]);
    partition.push_back(StateSet::of(n, g));
  }
  inst.subset = S;
  inst.partition = partition;
  return inst;
}

}  // namespace subsync
