#pragma once

#include <subsync/graph.hpp>
#include <subsync/search.hpp>
#include <subsync/structure.hpp>
#include <subsync/text_format.hpp>

#include <optional>
#include <string>
#include <vector>

namespace subsync {

struct Check {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct ReductionReport {
  std::string name;
  Instance input;
  Instance output;
  std::string claimed_relation;
  std::vector<Check> checks;

  bool ok() const {
    for (const auto& c : checks)
      if (!c.passed) return false;
    return true;
  }
  void check(std::string what, bool passed, std::string detail = {}) {
    checks.push_back({std::move(what), passed, std::move(detail)});
  }
};

namespace detail {

inline std::vector<std::string> state_names(const Automaton& a) {
  std::vector<std::string> names(a.states());
  for (State s = 0; s < a.states(); ++s) names[s] = a.label(s);
  return names;
}

inline bool round_trips(const Instance& inst) {
  return parse_instance(serialize(inst)) == inst;
}

inline std::string count_detail(std::size_t got, std::size_t want) {
  return std::to_string(got) + " (expected " + std::to_string(want) + ")";
}

/// Shortest careful reset word of S; throws when S is blind or the budget
/// runs out.
inline SearchResult require_reset(const Automaton& a, const StateSet& S,
                                  const SearchBudget& budget) {
  auto r = shortest_subset_reset(a, S, budget);
  if (r.status == Status::blind) throw Error("subset is blind");
  if (r.status == Status::budget_exceeded)
    throw BudgetExceeded("reset search exceeded the budget after " + std::to_string(r.explored) +
                         " nodes");
  return r;
}

/// Lexicographically least shortest word moving `from` to `to` along
/// defined transitions, or nullopt.
inline std::optional<Word> state_path(const Automaton& a, State from, State to) {
  std::vector<State> parent(a.states(), Automaton::kNone);
  std::vector<Letter> via(a.states(), 0);
  std::vector<bool> seen(a.states(), false);
  std::vector<State> queue{from};
  seen[from] = true;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const State s = queue[head];
    if (s == to) {
      Word w;
      for (State v = to; v != from; v = parent[v]) w.push_back(via[v]);
      return Word(w.rbegin(), w.rend());
    }
    for (Letter x = 0; x < a.letters(); ++x)
      for (State t : a.successors(s, x))
        if (!seen[t]) {
          seen[t] = true;
          parent[t] = s;
          via[t] = x;
          queue.push_back(t);
        }
  }
  return std::nullopt;
}

inline const StateSet& require_subset(const Instance& in, const char* op) {
  if (!in.subset) throw Error(std::string(op) + " needs a subset");
  return *in.subset;
}

}  // namespace detail

// ---------------------------------------------------------------------------

/// Careful subset synchronization of a pfa into subset synchronization of a
/// dfa with two extra sinks and a letter ω.
struct SinkReduction {
  ReductionReport report;
  State r0 = 0;
  State d = 0, d_bar = 0;
  Letter omega = 0;
  Word source_witness;
  Word witness;

  Word lift(Word w) const {
    w.push_back(omega);
    return w;
  }
};

inline SinkReduction add_sinks_determinize(const Instance& in, const SearchBudget& budget = {}) {
  const Automaton& a = in.automaton;
  detail::require_single_valued(a, "add_sinks_determinize");
  const StateSet S = in.subset_or_all();
  const auto found = detail::require_reset(a, S, budget);

  SinkReduction out;
  out.source_witness = found.witness;
  out.r0 = sync_target(a, S, found.witness);
  const std::size_t n = a.states(), k = a.letters();
  out.d = static_cast<State>(n);
  out.d_bar = static_cast<State>(n + 1);
  out.omega = static_cast<Letter>(k);

  const Alphabet alphabet = a.alphabet().extended({a.alphabet().fresh("ω")});
  AutomatonBuilder b(Kind::dfa, n + 2, alphabet);
  for (State s = 0; s < n; ++s) {
    for (Letter x = 0; x < k; ++x) {
      const State t = a.target(s, x);
      b.set(s, x, t == Automaton::kNone ? out.d_bar : t);
    }
    b.set(s, out.omega, s == out.r0 ? out.d : out.d_bar);
  }
  for (Letter x = 0; x <= k; ++x) {
    b.set(out.d, x, out.d);
    b.set(out.d_bar, x, out.d_bar);
  }
  auto names = detail::state_names(a);
  names.push_back("D");
  names.push_back("D̄");
  b.labels(std::move(names));

  Instance result;
  result.automaton = b.build();
  StateSet SB(n + 2);
  S.for_each([&](State s) { SB.insert(s); });
  SB.insert(out.d);
  result.subset = SB;
  out.witness = out.lift(found.witness);

  auto& rep = out.report;
  rep.name = "add_sinks_determinize";
  rep.input = in;
  rep.output = result;
  rep.claimed_relation = "sub(B,S_B) = csub(A,S) + 1";
  const Automaton& B = result.automaton;
  rep.check("state count n+2", B.states() == n + 2, detail::count_detail(B.states(), n + 2));
  rep.check("letter count k+1", B.letters() == k + 1);
  rep.check("output is total", B.kind() == Kind::dfa);
  const auto sinks = sink_states(B);
  rep.check("D and D̄ are sinks", sinks.contains(out.d) && sinks.contains(out.d_bar));
  rep.check("wω resets S_B", is_careful_reset_word(B, SB, out.witness));
  rep.check("serialization round-trip", detail::round_trips(result));
  return out;
}

// ---------------------------------------------------------------------------

/// Adds one letter ψ_i per pair, defined only on r_i with image q_i.
struct StrongLift {
  ReductionReport report;
  std::vector<Letter> psi;
};

inline StrongLift sc_lift_careful(const Instance& in, const std::vector<StatePair>& pairs) {
  const Automaton& a = in.automaton;
  detail::require_single_valued(a, "sc_lift_careful");
  if (!verify_cj(a, pairs)) throw Error("pairs do not make the automaton strongly connected");
  const std::size_t k = a.letters();

  std::vector<std::string> extra;
  Alphabet grow = a.alphabet();
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    extra.push_back(grow.fresh("ψ" + std::to_string(i + 1)));
    grow = a.alphabet().extended(extra);
  }
  AutomatonBuilder b(pairs.empty() ? a.kind() : Kind::pfa, a.states(), grow);
  for (State s = 0; s < a.states(); ++s)
    for (Letter x = 0; x < k; ++x)
      for (State t : a.successors(s, x)) b.set(s, x, t);
  StrongLift out;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const auto x = static_cast<Letter>(k + i);
    b.set(pairs[i].from, x, pairs[i].to);
    out.psi.push_back(x);
  }
  if (a.has_labels()) b.labels(a.labels());

  Instance result;
  result.automaton = b.build();
  auto& rep = out.report;
  rep.name = "sc_lift_careful";
  rep.input = in;
  rep.output = result;
  rep.claimed_relation = "car(B) = car(A)";
  const Automaton& B = result.automaton;
  rep.check("state count unchanged", B.states() == a.states());
  rep.check("letter count k+j", B.letters() == k + pairs.size());
  rep.check("strongly connected", strongly_connected(B));
  rep.check("serialization round-trip", detail::round_trips(result));
  return out;
}

// ---------------------------------------------------------------------------

/// Doubles a dfa so that s and its copy s̄ form a swap congruence, adding
/// a state E (and Ē) to the subset; the result is strongly connected.
struct DoublingReduction {
  ReductionReport report;
  State r0 = 0;
  std::size_t chosen = 0;  // I, zero-based pair index
  Word source_witness;
  Word connector;  // u with δ(r0, u) = r_I
  Word witness;    // w u ψ_I
  State e = 0, e_bar = 0;
  std::vector<Letter> psi;
  std::vector<StateSet> classes;

  Word lift(const Word& w) const {
    Word out = w;
    out.insert(out.end(), connector.begin(), connector.end());
    out.push_back(psi[chosen]);
    return out;
  }
};

inline DoublingReduction sc_double_subset(const Instance& in, const std::vector<StatePair>& pairs,
                                          const SearchBudget& budget = {}) {
  const Automaton& a = in.automaton;
  if (a.kind() != Kind::dfa) throw Error("sc_double_subset requires a dfa");
  if (pairs.size() < 2) throw Error("sc_double_subset needs at least two pairs");
  if (!verify_cj(a, pairs)) throw Error("pairs do not make the automaton strongly connected");
  const StateSet& S = detail::require_subset(in, "sc_double_subset");
  const auto found = detail::require_reset(a, S, budget);

  DoublingReduction out;
  out.source_witness = found.witness;
  out.r0 = sync_target(a, S, found.witness);
  const std::size_t n = a.states(), k = a.letters(), j = pairs.size();

  std::optional<Word> u;
  for (std::size_t i = 0; i < j && !u; ++i) {
    u = detail::state_path(a, out.r0, pairs[i].from);
    if (u) out.chosen = i;
  }
  if (!u) throw Error("no pair source is reachable from the synchronization target");
  out.connector = *u;

  const State E = static_cast<State>(2 * n), Ebar = static_cast<State>(2 * n + 1);
  out.e = E;
  out.e_bar = Ebar;
  auto partner = [&](State s) -> State {
    if (s == E) return Ebar;
    if (s == Ebar) return E;
    return s < n ? static_cast<State>(s + n) : static_cast<State>(s - n);
  };

  std::vector<std::string> extra;
  for (std::size_t i = 0; i < j; ++i) {
    extra.push_back(a.alphabet().extended(extra).fresh("ψ" + std::to_string(i + 1)));
    out.psi.push_back(static_cast<Letter>(k + i));
  }
  const Alphabet alphabet = a.alphabet().extended(extra);
  AutomatonBuilder b(Kind::dfa, 2 * n + 2, alphabet);

  // Unbarred half and E; the barred half mirrors it through `partner`.
  auto define = [&](State s, Letter x, State t) {
    b.set(s, x, t);
    b.set(partner(s), x, partner(t));
  };
  for (State s = 0; s < n; ++s)
    for (Letter x = 0; x < k; ++x) define(s, x, a.target(s, x));
  for (Letter x = 0; x < k; ++x) define(E, x, E);
  for (std::size_t i = 0; i < j; ++i) {
    const Letter x = out.psi[i];
    const auto [r, q] = pairs[i];
    const bool main = i == out.chosen;
    for (State s = 0; s < n; ++s)
      define(s, x, s == r ? q : (main ? partner(q) : Ebar));
    define(E, x, main ? q : E);
  }

  auto names = detail::state_names(a);
  for (State s = 0; s < n; ++s) names.push_back(names[s] + "̄");
  names.push_back("E");
  names.push_back("Ē");
  b.labels(std::move(names));

  Instance result;
  result.automaton = b.build();
  StateSet SB(2 * n + 2);
  S.for_each([&](State s) { SB.insert(s); });
  SB.insert(E);
  result.subset = SB;
  for (State s = 0; s < n; ++s) out.classes.push_back(StateSet(2 * n + 2, {s, partner(s)}));
  out.classes.push_back(StateSet(2 * n + 2, {E, Ebar}));
  result.partition = out.classes;
  out.witness = out.lift(found.witness);

  auto& rep = out.report;
  rep.name = "sc_double_subset";
  rep.input = in;
  rep.output = result;
  rep.claimed_relation = "sub(B,S_B) >= sub(A,S) + 1";
  const Automaton& B = result.automaton;
  rep.check("state count 2n+2", B.states() == 2 * n + 2,
            detail::count_detail(B.states(), 2 * n + 2));
  rep.check("letter count k+j", B.letters() == k + j);
  rep.check("strongly connected", strongly_connected(B));
  rep.check("swap congruence", verify_swap_congruence(B, out.classes));
  rep.check("w u ψ_I resets S_B", is_careful_reset_word(B, SB, out.witness));
  rep.check("serialization round-trip", detail::round_trips(result));
  return out;
}

// ---------------------------------------------------------------------------

/// Restricts to the relevant part and adds a total letter α sending every
/// block to its unique state in S.
struct RelevantClosure {
  ReductionReport report;
  RelevantPart relevant;
  Letter alpha = 0;
  Word source_witness;
  Word witness;  // α w

  Word lift(const Word& w) const {
    Word out{alpha};
    out.insert(out.end(), w.begin(), w.end());
    return out;
  }
};

/// `relevant_pairs` are expressed in the original state indices and, when
/// given, are carried over to the output instance.
inline RelevantClosure mp_to_careful(const Instance& in,
                                     const std::optional<std::vector<StatePair>>& relevant_pairs = {},
                                     const SearchBudget& budget = {}) {
  const Automaton& a = in.automaton;
  detail::require_single_valued(a, "mp_to_careful");
  const StateSet& S = detail::require_subset(in, "mp_to_careful");
  if (!in.partition) throw Error("mp_to_careful needs a partition");
  const auto verdict = verify_mp(a, S, *in.partition, budget);
  if (!verdict.ok) throw Error("instance is not in M_P: " + verdict.reason);
  const auto found = detail::require_reset(a, S, budget);

  RelevantClosure out;
  out.relevant = relevant_part(a, S, budget);
  const auto& rel = out.relevant;
  const std::size_t n = rel.original.size(), k = a.letters();
  out.alpha = static_cast<Letter>(k);

  std::vector<State> target(a.states(), Automaton::kNone);
  for (const auto& block : *in.partition) {
    const StateSet hit = block & S;
    if (hit.size() != 1) continue;
    const State q = hit.first();
    block.for_each([&](State s) { target[s] = q; });
  }

  const Alphabet alphabet = a.alphabet().extended({a.alphabet().fresh("α")});
  AutomatonBuilder b(Kind::pfa, n, alphabet);
  for (State i = 0; i < n; ++i) {
    for (Letter x = 0; x < k; ++x) {
      const State t = rel.automaton.target(i, x);
      if (t != Automaton::kNone) b.set(i, x, t);
    }
    const State q = target[rel.original[i]];
    if (q == Automaton::kNone) throw Error("relevant state outside every block");
    b.set(i, out.alpha, rel.local[q]);
  }
  b.labels(detail::state_names(rel.automaton));

  Instance result;
  result.automaton = b.build();
  if (relevant_pairs) {
    std::vector<StatePair> mapped;
    for (const auto& p : *relevant_pairs) {
      if (rel.local.at(p.from) == Automaton::kNone || rel.local.at(p.to) == Automaton::kNone)
        throw Error("pair leaves the relevant part");
      mapped.push_back({rel.local[p.from], rel.local[p.to]});
    }
    result.pairs = mapped;
  }
  out.source_witness = found.witness;
  out.witness = out.lift(found.witness);

  auto& rep = out.report;
  rep.name = "mp_to_careful";
  rep.input = in;
  rep.output = result;
  rep.claimed_relation = "csub(A,S) <= car(B) <= csub(A,S) + 1";
  const Automaton& B = result.automaton;
  rep.check("state count |relevant part|", B.states() == rel.states.size());
  rep.check("letter count k+1", B.letters() == k + 1);
  rep.check("α is total", B.total_letter(out.alpha));
  const StateSet local_S = rel.to_local(S);
  bool fixes = true;
  local_S.for_each([&](State s) { fixes = fixes && B.target(s, out.alpha) == s; });
  rep.check("α fixes S", fixes);
  rep.check("αw carefully resets B",
            is_careful_reset_word(B, StateSet::full(B.states()), out.witness));
  if (result.pairs) rep.check("pairs strongly connect B", verify_cj(B, *result.pairs));
  rep.check("serialization round-trip", detail::round_trips(result));
  return out;
}

// ---------------------------------------------------------------------------

enum class BinarizeMode { subset, careful };

/// a_0 .. a_m are the source letters in `order`; a word a_{i1}..a_{id}
/// becomes (β^{i1} α) .. (β^{id} α).
inline constexpr Letter kAlpha = 0, kBeta = 1;

inline Word encode_word(const Word& w, const std::vector<Letter>& order) {
  std::vector<std::size_t> rank(order.size());
  for (std::size_t i = 0; i < order.size(); ++i) rank.at(order[i]) = i;
  Word out;
  for (Letter x : w) {
    out.insert(out.end(), rank.at(x), kBeta);
    out.push_back(kAlpha);
  }
  return out;
}

inline std::vector<Letter> identity_order(std::size_t k) {
  std::vector<Letter> order(k);
  for (Letter x = 0; x < k; ++x) order[x] = x;
  return order;
}

inline Word encode_word(const Word& w, std::size_t letters) {
  return encode_word(w, identity_order(letters));
}

/// Strict inverse of encode_word: the input must be a sequence of blocks
/// β^i α with i < |order|.
inline Word decode_word(const Word& w, const std::vector<Letter>& order) {
  Word out;
  std::size_t betas = 0;
  for (Letter y : w) {
    if (y == kBeta) {
      ++betas;
    } else if (y == kAlpha) {
      if (betas >= order.size()) throw Error("decode: block exceeds the source alphabet");
      out.push_back(order[betas]);
      betas = 0;
    } else {
      throw Error("decode: letter outside {α, β}");
    }
  }
  if (betas) throw Error("decode: trailing β without α");
  return out;
}

inline Word decode_word(const Word& w, std::size_t letters) {
  return decode_word(w, identity_order(letters));
}

struct Binarization {
  ReductionReport report;
  BinarizeMode mode = BinarizeMode::subset;
  /// order[i] = source letter playing the role of a_i.
  std::vector<Letter> order;

  State state(State s, std::size_t i) const { return static_cast<State>(s * order.size() + i); }
  Word encode(const Word& w) const { return encode_word(w, order); }
  Word decode(const Word& w) const { return decode_word(w, order); }
  /// Decodes a reset word of B. A trailing run of β carries no source letter
  /// (it only merges copies of one state, as for a 1-state source).
  Word decode_witness(Word w) const {
    while (!w.empty() && w.back() == kBeta) w.pop_back();
    return decode(w);
  }
  /// Image of a source reset word: encode(w), preceded by β^m α in careful mode.
  Word lift(const Word& w) const {
    Word out;
    if (mode == BinarizeMode::careful) {
      out.assign(order.size() - 1, kBeta);
      out.push_back(kAlpha);
    }
    const Word e = encode(w);
    out.insert(out.end(), e.begin(), e.end());
    return out;
  }
};

inline Binarization binarize(const Instance& in, BinarizeMode mode) {
  const Automaton& a = in.automaton;
  detail::require_single_valued(a, "binarize");
  const std::size_t n = a.states(), k = a.letters();

  Binarization out;
  out.mode = mode;
  out.order = identity_order(k);
  if (mode == BinarizeMode::careful && !a.total_letter(out.order.back())) {
    std::optional<Letter> total;
    for (Letter x = static_cast<Letter>(k); x-- > 0;)
      if (a.total_letter(x)) {
        total = x;
        break;
      }
    if (!total) throw Error("careful binarization needs a letter defined on every state");
    out.order.erase(out.order.begin() + *total);
    out.order.push_back(*total);
  }

  AutomatonBuilder b(a.kind(), n * k, Alphabet{"α", "β"});
  for (State s = 0; s < n; ++s)
    for (std::size_t i = 0; i < k; ++i) {
      const State t = a.target(s, out.order[i]);
      if (t != Automaton::kNone) b.set(out.state(s, i), kAlpha, out.state(t, 0));
      b.set(out.state(s, i), kBeta, out.state(s, i + 1 < k ? i + 1 : k - 1));
    }
  std::vector<std::string> names;
  for (State s = 0; s < n; ++s)
    for (std::size_t i = 0; i < k; ++i)
      names.push_back(a.label(s) + "@" + a.alphabet()[out.order[i]]);
  b.labels(std::move(names));

  Instance result;
  result.automaton = b.build();
  if (mode == BinarizeMode::subset) {
    StateSet SB(n * k);
    in.subset_or_all().for_each([&](State s) { SB.insert(out.state(s, 0)); });
    result.subset = SB;
  }

  auto& rep = out.report;
  rep.name = "binarize";
  rep.input = in;
  rep.output = result;
  rep.claimed_relation = mode == BinarizeMode::subset ? "sub(B,S_B) >= sub(A,S)"
                                                      : "car(B) >= car(A)";
  const Automaton& B = result.automaton;
  rep.check("state count k*n", B.states() == k * n, detail::count_detail(B.states(), k * n));
  rep.check("binary alphabet", B.letters() == 2);
  if (mode == BinarizeMode::careful) rep.check("last letter total", a.total_letter(out.order.back()));
  if (strongly_connected(a)) rep.check("strong connectivity preserved", strongly_connected(B));
  rep.check("serialization round-trip", detail::round_trips(result));
  return out;
}

}  // namespace subsync
