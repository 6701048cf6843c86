#pragma once

#include <subsync/state_set.hpp>

#include <algorithm>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace subsync {

/// Raised for contract violations on automata, instances and words.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using Word = std::vector<Letter>;

enum class Kind { dfa, pfa, nfa };

inline std::string_view to_string(Kind k) {
  switch (k) {
    case Kind::dfa: return "dfa";
    case Kind::pfa: return "pfa";
    case Kind::nfa: return "nfa";
  }
  return "?";
}

inline std::optional<Kind> kind_from_string(std::string_view s) {
  if (s == "dfa") return Kind::dfa;
  if (s == "pfa") return Kind::pfa;
  if (s == "nfa") return Kind::nfa;
  return std::nullopt;
}

/// Ordered list of distinct letter tokens; a letter is its position.
class Alphabet {
 public:
  Alphabet() = default;
  explicit Alphabet(std::vector<std::string> symbols) : symbols_(std::move(symbols)) {
    if (symbols_.empty()) throw Error("alphabet must be nonempty");
    for (std::size_t i = 0; i < symbols_.size(); ++i) {
      const auto& tok = symbols_[i];
      if (tok.empty() || tok == "-" ||
          tok.find_first_of(" \t\r\n#,:|=") != std::string::npos)
        throw Error("invalid letter token '" + tok + "'");
      for (std::size_t j = 0; j < i; ++j)
        if (symbols_[j] == tok) throw Error("duplicate letter token '" + tok + "'");
    }
  }
  Alphabet(std::initializer_list<std::string> symbols)
      : Alphabet(std::vector<std::string>(symbols)) {}

  std::size_t size() const { return symbols_.size(); }
  const std::string& operator[](Letter x) const { return symbols_.at(x); }
  const std::vector<std::string>& symbols() const { return symbols_; }

  std::optional<Letter> index_of(std::string_view tok) const {
    for (std::size_t i = 0; i < symbols_.size(); ++i)
      if (symbols_[i] == tok) return static_cast<Letter>(i);
    return std::nullopt;
  }
  bool contains(std::string_view tok) const { return index_of(tok).has_value(); }

  /// `base`, or `base` followed by primes until it does not clash.
  std::string fresh(std::string base) const {
    while (contains(base)) base += '\'';
    return base;
  }

  Alphabet extended(std::vector<std::string> extra) const {
    auto all = symbols_;
    all.insert(all.end(), extra.begin(), extra.end());
    return Alphabet(std::move(all));
  }

  bool operator==(const Alphabet&) const = default;

 private:
  std::vector<std::string> symbols_;
};

class AutomatonBuilder;

/// DFA, PFA or NFA over dense state indices 0..n-1.
///
/// Single-valued kinds keep a flat (state, letter) -> target table with
/// `kNone` for undefined entries; NFA keeps sorted successor lists.
class Automaton {
 public:
  static constexpr State kNone = std::numeric_limits<State>::max();

  Automaton() = default;

  Kind kind() const { return kind_; }
  std::size_t states() const { return n_; }
  std::size_t letters() const { return alphabet_.size(); }
  const Alphabet& alphabet() const { return alphabet_; }

  bool single_valued() const { return kind_ != Kind::nfa; }

  /// Target of a single-valued transition; kNone when undefined.
  State target(State s, Letter x) const {
    check(s, x);
    if (!single_valued()) throw Error("target() requires a dfa or pfa");
    return table_[s * letters() + x];
  }

  bool defined(State s, Letter x) const { return !successors(s, x).empty(); }

  std::span<const State> successors(State s, Letter x) const {
    check(s, x);
    const std::size_t cell = s * letters() + x;
    if (single_valued()) {
      const State* p = &table_[cell];
      return {p, *p == kNone ? std::size_t{0} : std::size_t{1}};
    }
    return {targets_.data() + offsets_[cell], offsets_[cell + 1] - offsets_[cell]};
  }

  /// Letter total on every state.
  bool total_letter(Letter x) const {
    for (State s = 0; s < n_; ++s)
      if (!defined(s, x)) return false;
    return true;
  }

  bool has_labels() const { return !labels_.empty(); }
  const std::vector<std::string>& labels() const { return labels_; }
  /// Label if set, otherwise the index as text.
  std::string label(State s) const {
    if (s < labels_.size() && !labels_[s].empty()) return labels_[s];
    return std::to_string(s);
  }
  std::optional<State> state_by_label(std::string_view name) const {
    for (std::size_t s = 0; s < labels_.size(); ++s)
      if (labels_[s] == name) return static_cast<State>(s);
    return std::nullopt;
  }

  Automaton with_labels(std::vector<std::string> labels) const {
    if (!labels.empty() && labels.size() != n_)
      throw Error("label count does not match state count");
    Automaton copy = *this;
    copy.labels_ = std::move(labels);
    return copy;
  }

  bool operator==(const Automaton&) const = default;

 private:
  friend class AutomatonBuilder;

  void check(State s, Letter x) const {
    if (s >= n_) throw Error("state " + std::to_string(s) + " out of range");
    if (x >= letters()) throw Error("letter " + std::to_string(x) + " out of range");
  }

  Kind kind_ = Kind::dfa;
  std::size_t n_ = 0;
  Alphabet alphabet_;
  std::vector<State> table_;
  std::vector<std::size_t> offsets_;
  std::vector<State> targets_;
  std::vector<std::string> labels_;
};

/// Mutable staging area; `build()` enforces the kind invariants.
class AutomatonBuilder {
 public:
  AutomatonBuilder(Kind kind, std::size_t n, Alphabet alphabet)
      : kind_(kind), n_(n), alphabet_(std::move(alphabet)),
        cells_(n * alphabet_.size()) {
    if (n == 0) throw Error("automaton needs at least one state");
  }

  std::size_t states() const { return n_; }
  std::size_t letters() const { return alphabet_.size(); }
  Kind kind() const { return kind_; }

  /// Replace the successor set of (s, x) with {t}.
  AutomatonBuilder& set(State s, Letter x, State t) {
    check(s, x);
    check_state(t);
    cells_[s * letters() + x] = {t};
    return *this;
  }
  /// Add t to the successor set of (s, x).
  AutomatonBuilder& add(State s, Letter x, State t) {
    check(s, x);
    check_state(t);
    auto& cell = cells_[s * letters() + x];
    if (std::find(cell.begin(), cell.end(), t) == cell.end()) cell.push_back(t);
    return *this;
  }
  AutomatonBuilder& clear(State s, Letter x) {
    check(s, x);
    cells_[s * letters() + x].clear();
    return *this;
  }
  const std::vector<State>& cell(State s, Letter x) const {
    check(s, x);
    return cells_[s * letters() + x];
  }
  AutomatonBuilder& labels(std::vector<std::string> names) {
    if (!names.empty() && names.size() != n_)
      throw Error("label count does not match state count");
    labels_ = std::move(names);
    return *this;
  }

  Automaton build() const {
    Automaton a;
    a.kind_ = kind_;
    a.n_ = n_;
    a.alphabet_ = alphabet_;
    a.labels_ = labels_;
    const std::size_t k = letters();
    if (kind_ == Kind::nfa) {
      a.offsets_.assign(n_ * k + 1, 0);
      for (std::size_t c = 0; c < cells_.size(); ++c) {
        auto sorted = cells_[c];
        std::sort(sorted.begin(), sorted.end());
        a.targets_.insert(a.targets_.end(), sorted.begin(), sorted.end());
        a.offsets_[c + 1] = a.targets_.size();
      }
      return a;
    }
    a.table_.assign(n_ * k, Automaton::kNone);
    for (std::size_t c = 0; c < cells_.size(); ++c) {
      const auto& cell = cells_[c];
      const State s = static_cast<State>(c / k);
      const Letter x = static_cast<Letter>(c % k);
      if (cell.size() > 1)
        throw Error(std::string(to_string(kind_)) + " must be single-valued at state " +
                    std::to_string(s) + ", letter " + alphabet_[x]);
      if (cell.empty()) {
        if (kind_ == Kind::dfa)
          throw Error("dfa must be total: state " + std::to_string(s) + ", letter " +
                      alphabet_[x] + " undefined");
        continue;
      }
      a.table_[c] = cell.front();
    }
    return a;
  }

 private:
  void check_state(State s) const {
    if (s >= n_) throw Error("state " + std::to_string(s) + " out of range");
  }
  void check(State s, Letter x) const {
    check_state(s);
    if (x >= letters()) throw Error("letter " + std::to_string(x) + " out of range");
  }

  Kind kind_;
  std::size_t n_;
  Alphabet alphabet_;
  std::vector<std::vector<State>> cells_;
  std::vector<std::string> labels_;
};

/// Copy of `a` into a builder, e.g. to derive a modified automaton.
inline AutomatonBuilder to_builder(const Automaton& a, std::optional<Kind> kind = {}) {
  AutomatonBuilder b(kind.value_or(a.kind()), a.states(), a.alphabet());
  for (State s = 0; s < a.states(); ++s)
    for (Letter x = 0; x < a.letters(); ++x)
      for (State t : a.successors(s, x)) b.add(s, x, t);
  if (a.has_labels()) b.labels(a.labels());
  return b;
}

inline void validate_word(const Automaton& a, const Word& w) {
  for (Letter x : w)
    if (x >= a.letters())
      throw Error("word letter " + std::to_string(x) + " out of range");
}

inline StateSet step(const Automaton& a, State s, Letter x) {
  return StateSet::of(a.states(), a.successors(s, x));
}

/// Image of one letter, dropping undefined branches and unioning NFA branches.
inline StateSet image(const Automaton& a, const StateSet& from, Letter x) {
  StateSet out(a.states());
  if (a.single_valued()) {
    from.for_each([&](State s) {
      const State t = a.target(s, x);
      if (t != Automaton::kNone) out.insert(t);
    });
  } else {
    from.for_each([&](State s) {
      for (State t : a.successors(s, x)) out.insert(t);
    });
  }
  return out;
}

inline StateSet run(const Automaton& a, StateSet start, const Word& w) {
  if (start.universe() != a.states()) throw Error("state set does not fit automaton");
  validate_word(a, w);
  for (Letter x : w) start = image(a, start, x);
  return start;
}

/// One careful step: nullopt when x is undefined on some member of `from`.
inline std::optional<StateSet> careful_image(const Automaton& a, const StateSet& from,
                                             Letter x) {
  if (!a.single_valued()) throw Error("careful application needs a dfa or pfa");
  StateSet out(a.states());
  bool ok = true;
  from.for_each([&](State s) {
    const State t = a.target(s, x);
    if (t == Automaton::kNone)
      ok = false;
    else
      out.insert(t);
  });
  if (!ok) return std::nullopt;
  return out;
}

/// Careful run: nullopt as soon as some prefix step is undefined on an
/// active state.
inline std::optional<StateSet> careful_run(const Automaton& a, StateSet start,
                                           const Word& w) {
  validate_word(a, w);
  for (Letter x : w) {
    auto next = careful_image(a, start, x);
    if (!next) return std::nullopt;
    start = std::move(*next);
  }
  return start;
}

/// True iff w carefully maps every state of S to one common state.
inline bool is_careful_reset_word(const Automaton& a, const StateSet& S, const Word& w) {
  auto end = careful_run(a, S, w);
  return end && end->size() == 1;
}

inline StateSet sink_states(const Automaton& a) {
  StateSet out(a.states());
  for (State s = 0; s < a.states(); ++s) {
    bool sink = true;
    for (Letter x = 0; x < a.letters() && sink; ++x) {
      auto succ = a.successors(s, x);
      sink = succ.size() == 1 && succ[0] == s;
    }
    if (sink) out.insert(s);
  }
  return out;
}

struct StatePair {
  State from = 0;
  State to = 0;
  bool operator==(const StatePair&) const = default;
};

/// An automaton with the optional metadata carried by the text format.
struct Instance {
  Automaton automaton;
  std::optional<StateSet> subset;
  std::optional<std::vector<StateSet>> partition;
  std::optional<std::vector<StatePair>> pairs;

  /// The designated subset, or all states when none is attached.
  StateSet subset_or_all() const {
    return subset ? *subset : StateSet::full(automaton.states());
  }

  void validate() const {
    const auto n = automaton.states();
    if (subset) {
      if (subset->universe() != n) throw Error("subset does not fit automaton");
      if (subset->empty()) throw Error("subset must be nonempty");
    }
    if (partition) {
      StateSet seen(n);
      for (const auto& block : *partition) {
        if (block.universe() != n) throw Error("partition block does not fit automaton");
        if (seen.intersects(block)) throw Error("partition blocks must be disjoint");
        seen |= block;
      }
    }
    if (pairs)
      for (const auto& p : *pairs)
        if (p.from >= n || p.to >= n) throw Error("pair references invalid state");
  }

  bool operator==(const Instance&) const = default;
};

inline std::string render_word(const Alphabet& alphabet, const Word& w) {
  // Concatenate when every token is a single code point, else space-separate.
  bool compact = true;
  for (const auto& tok : alphabet.symbols()) {
    std::size_t code_points = 0;
    for (unsigned char c : tok)
      if ((c & 0xC0) != 0x80) ++code_points;
    compact = compact && code_points == 1;
  }
  std::string out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (!compact && i) out += ' ';
    out += alphabet[w[i]];
  }
  return out;
}

/// Inverse of render_word for the compact form or space-separated tokens.
inline Word parse_word(const Alphabet& alphabet, std::string_view text) {
  Word w;
  std::size_t i = 0;
  while (i < text.size()) {
    if (text[i] == ' ') {
      ++i;
      continue;
    }
    // Longest token matching at position i.
    std::optional<Letter> best;
    std::size_t best_len = 0;
    for (Letter x = 0; x < alphabet.size(); ++x) {
      const auto& tok = alphabet[x];
      if (tok.size() > best_len && text.substr(i, tok.size()) == tok) {
        best = x;
        best_len = tok.size();
      }
    }
    if (!best) throw Error("unknown letter in word at offset " + std::to_string(i));
    w.push_back(*best);
    i += best_len;
  }
  return w;
}

}  // namespace subsync
