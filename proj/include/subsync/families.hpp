#pragma once

#include <subsync/de_bruijn.hpp>
#include <subsync/automaton.hpp>

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace subsync {

/// Marks of a switch state, in index order.
enum class Mark : std::uint32_t { zero = 0, zero_down = 1, one = 2, one_down = 3, one_up = 4 };

inline constexpr std::array<const char*, 5> kMarkNames{"0", "0↓", "1", "1↓", "1↑"};

/// The extremal instance: switches (i, mark), the watch gadget C_0..C_k and
/// the sinks D (success) and D̄ (failure).
struct Lemma4Instance {
  Instance instance;
  std::size_t m = 0;
  unsigned k = 0;
  DeBruijnSeq xi;
  std::vector<std::uint32_t> pi;
  std::vector<StatePair> cj_pairs;
  std::vector<StatePair> cjr_pairs;

  static constexpr Letter kZero = 0, kOne = 1, kKappa = 2, kOmega = 3;

  State switch_state(std::size_t i, Mark b) const {
    return static_cast<State>(5 * (i % m) + static_cast<std::uint32_t>(b));
  }
  State c_state(unsigned i) const { return static_cast<State>(5 * m + i); }
  State d() const { return static_cast<State>(5 * m + k + 1); }
  State d_bar() const { return static_cast<State>(5 * m + k + 2); }
  const Automaton& automaton() const { return instance.automaton; }
  const StateSet& subset() const { return *instance.subset; }

  /// Integer encoded by an active set in which each switch is exactly in
  /// mark 0 or 1: sum of 2^pi(i) over switches i in mark 1.
  std::optional<std::uint64_t> counter_value(const StateSet& active) const {
    std::uint64_t value = 0;
    for (std::size_t i = 0; i < m; ++i) {
      const bool zero = active.contains(switch_state(i, Mark::zero));
      const bool one = active.contains(switch_state(i, Mark::one));
      for (Mark b : {Mark::zero_down, Mark::one_down, Mark::one_up})
        if (active.contains(switch_state(i, b))) return std::nullopt;
      if (zero == one) return std::nullopt;
      if (one) value |= std::uint64_t{1} << pi[i];
    }
    return value;
  }
};

/// log2 of m, or nullopt when m is not a power of two >= 2.
inline std::optional<unsigned> exact_log2(std::size_t m) {
  if (m < 2 || (m & (m - 1)) != 0) return std::nullopt;
  unsigned k = 0;
  while ((std::size_t{1} << k) != m) ++k;
  return k;
}

inline unsigned require_power_of_two(std::size_t m) {
  auto k = exact_log2(m);
  if (!k) throw Error("m must be a power of two >= 2, got " + std::to_string(m));
  return *k;
}

inline Lemma4Instance build_lemma4(std::size_t m, std::optional<DeBruijnSeq> xi_override = {}) {
  Lemma4Instance L;
  L.m = m;
  L.k = require_power_of_two(m);
  if (L.k > 20) throw Error("m too large");
  if (xi_override) {
    if (xi_override->k != L.k || !verify_de_bruijn(xi_override->bits, L.k))
      throw Error("xi override is not a de Bruijn sequence of order " + std::to_string(L.k));
    L.xi = *xi_override;
  } else {
    L.xi = de_bruijn(L.k);
  }
  L.pi = pi_permutation(L.xi);

  const unsigned k = L.k;
  const std::size_t n = 5 * m + k + 3;
  AutomatonBuilder b(Kind::dfa, n, Alphabet{"0", "1", "κ", "ω"});
  const State D = L.d(), Dbar = L.d_bar();
  for (State s = 0; s < n; ++s)
    for (Letter x = 0; x < 4; ++x) b.set(s, x, Dbar);

  auto sw = [&](std::size_t i, Mark mark) { return L.switch_state(i, mark); };
  const std::array<Mark, 5> kappa_mark{Mark::one, Mark::zero, Mark::one, Mark::one, Mark::zero};

  for (std::size_t i = 0; i < m; ++i) {
    const bool bit = L.xi.bits[i] == '1';
    const std::size_t next = (i + 1) % m;
    if (!bit) {
      b.set(sw(i, Mark::zero), L.kZero, sw(next, Mark::zero));
      b.set(sw(i, Mark::one), L.kZero, sw(next, Mark::one));
      b.set(sw(i, Mark::one), L.kOne, sw(next, Mark::one_up));
    } else {
      b.set(sw(i, Mark::zero), L.kZero, sw(next, Mark::zero_down));
      b.set(sw(i, Mark::zero), L.kOne, sw(next, Mark::zero));
      b.set(sw(i, Mark::one), L.kZero, sw(next, Mark::one_down));
      b.set(sw(i, Mark::one), L.kOne, sw(next, Mark::one));
    }
    for (Mark mark : {Mark::zero_down, Mark::one_down, Mark::one_up}) {
      b.set(sw(i, mark), L.kZero, sw(next, mark));
      b.set(sw(i, mark), L.kOne, sw(next, mark));
    }
    const std::size_t back = (i + m - k % m) % m;
    for (std::uint32_t r = 0; r < 5; ++r)
      b.set(sw(i, static_cast<Mark>(r)), L.kKappa, sw(back, kappa_mark[r]));
    b.set(sw(i, Mark::one), L.kOmega, D);
  }

  for (unsigned i = 0; i < k; ++i) {
    b.set(L.c_state(i), L.kZero, L.c_state(i + 1));
    b.set(L.c_state(i), L.kOne, L.c_state(i + 1));
  }
  b.set(L.c_state(k), L.kKappa, L.c_state(0));
  b.set(L.c_state(0), L.kOmega, D);
  for (Letter x = 0; x < 4; ++x) b.set(D, x, D);

  std::vector<std::string> labels(n);
  for (std::size_t i = 0; i < m; ++i)
    for (std::uint32_t r = 0; r < 5; ++r)
      labels[sw(i, static_cast<Mark>(r))] =
          "(" + std::to_string(i) + "," + kMarkNames[r] + ")";
  for (unsigned i = 0; i <= k; ++i) labels[L.c_state(i)] = "C_" + std::to_string(i);
  labels[D] = "D";
  labels[Dbar] = "D̄";
  b.labels(std::move(labels));

  L.instance.automaton = b.build();
  StateSet S(n);
  for (std::size_t i = 0; i < m; ++i) S.insert(sw(i, Mark::zero));
  S.insert(L.c_state(0));
  S.insert(D);
  L.instance.subset = S;

  std::vector<StateSet> blocks;
  for (std::size_t i = 0; i < m; ++i) {
    StateSet block(n);
    for (std::uint32_t r = 0; r < 5; ++r) block.insert(sw(i, static_cast<Mark>(r)));
    blocks.push_back(block);
  }
  blocks.push_back(StateSet(n, {D}));
  StateSet watch(n);
  for (unsigned i = 0; i <= k; ++i) watch.insert(L.c_state(i));
  blocks.push_back(watch);
  L.instance.partition = blocks;

  L.cj_pairs = {{D, L.c_state(0)}, {Dbar, sw(0, Mark::zero)}};
  L.cjr_pairs = {{D, L.c_state(0)}, {L.c_state(0), sw(0, Mark::zero)}};
  L.instance.pairs = L.cj_pairs;
  return L;
}

/// Number of trailing one bits of v.
inline unsigned trailing_ones(std::uint64_t v) {
  unsigned t = 0;
  while (v & 1) {
    v >>= 1;
    ++t;
  }
  return t;
}

/// v_{t_1} ... v_{t_d} ω with v_t = bin_k(t) κ and t_j the position of the
/// lowest zero bit of j - 1, for j = 1 .. 2^m - 1.
inline Word predicted_word(std::size_t m) {
  const unsigned k = require_power_of_two(m);
  if (m > 16) throw Error("predicted word for m > 16 is too long to materialize");
  const std::uint64_t d = (std::uint64_t{1} << m) - 1;
  Word w;
  w.reserve(d * (k + 1) + 1);
  for (std::uint64_t j = 1; j <= d; ++j) {
    const unsigned t = trailing_ones(j - 1);
    for (unsigned bit = k; bit-- > 0;) w.push_back((t >> bit) & 1 ? Lemma4Instance::kOne : Lemma4Instance::kZero);
    w.push_back(Lemma4Instance::kKappa);
  }
  w.push_back(Lemma4Instance::kOmega);
  return w;
}

/// Length of predicted_word(m) without materializing it.
inline std::uint64_t predicted_length(std::size_t m) {
  const unsigned k = require_power_of_two(m);
  if (m > 62) throw Error("predicted length overflows");
  return ((std::uint64_t{1} << m) - 1) * (k + 1) + 1;
}

/// Length bound stated with the lemma: 2^m (log m + 1) + 1.
inline std::uint64_t lemma4_formula(std::size_t m) {
  const unsigned k = require_power_of_two(m);
  if (m > 62) throw Error("formula value overflows");
  return (std::uint64_t{1} << m) * (k + 1) + 1;
}

/// Černý automaton: a = cyclic shift, b merges state 0 into state 1.
inline Instance cerny(std::size_t n) {
  if (n < 2) throw Error("cerny family needs n >= 2");
  AutomatonBuilder b(Kind::dfa, n, Alphabet{"a", "b"});
  for (State s = 0; s < n; ++s) {
    b.set(s, 0, static_cast<State>((s + 1) % n));
    b.set(s, 1, s == 0 ? 1 : s);
  }
  Instance inst;
  inst.automaton = b.build();
  inst.subset = StateSet::full(n);
  return inst;
}

}  // namespace subsync
