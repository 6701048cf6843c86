#pragma once

#include <subsync/search.hpp>

#include <chrono>
#include <optional>
#include <set>
#include <string_view>
#include <vector>

namespace subsync {

enum class Mode { classic, careful, subset, d1, d2, d3 };

inline std::string_view to_string(Mode m) {
  switch (m) {
    case Mode::classic: return "classic";
    case Mode::careful: return "careful";
    case Mode::subset: return "subset";
    case Mode::d1: return "d1";
    case Mode::d2: return "d2";
    case Mode::d3: return "d3";
  }
  return "?";
}

inline std::optional<Mode> mode_from_string(std::string_view s) {
  for (auto m : {Mode::classic, Mode::careful, Mode::subset, Mode::d1, Mode::d2, Mode::d3})
    if (to_string(m) == s) return m;
  return std::nullopt;
}

/// Exhaustive check of every word of length 0..max_len in length-then-
/// lexicographic order; the first word satisfying the mode is returned.
///
/// Deliberately shares no code with the subset-graph search: it simulates
/// with std::set directly on the successor lists. `not_synchronizing` here
/// means "no word up to max_len".
inline SearchResult brute_force_oracle(const Automaton& a, std::optional<StateSet> subset,
                                       Mode mode, std::size_t max_len) {
  const auto started = std::chrono::steady_clock::now();
  const std::size_t n = a.states();
  const std::size_t k = a.letters();
  if (mode == Mode::classic && a.kind() != Kind::dfa) throw Error("classic mode needs a dfa");
  if ((mode == Mode::careful || mode == Mode::subset || mode == Mode::classic) &&
      a.kind() == Kind::nfa)
    throw Error("careful and subset modes need a dfa or pfa");
  if (mode == Mode::subset && !subset) throw Error("subset mode needs a subset");

  using Set = std::set<State>;
  const bool per_start = mode == Mode::d1 || mode == Mode::d2 || mode == Mode::d3;
  const bool careful = !per_start;

  // Per-start images (d-modes) or a single active set (other modes).
  std::vector<Set> initial;
  if (per_start) {
    for (State s = 0; s < n; ++s) initial.push_back({s});
  } else {
    Set start;
    if (mode == Mode::subset)
      for (State s : subset->members()) start.insert(s);
    else
      for (State s = 0; s < n; ++s) start.insert(s);
    initial.push_back(start);
  }

  auto satisfied = [&](const std::vector<Set>& images) {
    if (!per_start) return images[0].size() == 1;
    if (mode == Mode::d3) {
      Set common = images[0];
      for (std::size_t i = 1; i < images.size(); ++i) {
        Set next;
        for (State q : common)
          if (images[i].count(q)) next.insert(q);
        common = std::move(next);
      }
      return !common.empty();
    }
    if (mode == Mode::d1 && images[0].size() != 1) return false;
    for (const auto& im : images)
      if (im != images[0]) return false;
    return true;
  };

  // Returns nullopt when a careful step is undefined on an active state.
  auto apply = [&](const std::vector<Set>& images, Letter x) -> std::optional<std::vector<Set>> {
    std::vector<Set> out(images.size());
    for (std::size_t i = 0; i < images.size(); ++i)
      for (State q : images[i]) {
        auto succ = a.successors(q, x);
        if (careful && succ.empty()) return std::nullopt;
        for (State t : succ) out[i].insert(t);
      }
    return out;
  };

  SearchResult result;
  auto done = [&](Status s) {
    result.status = s;
    result.elapsed = std::chrono::steady_clock::now() - started;
    return result;
  };

  // Depth-limited DFS per length; letters ascending gives lexicographic order.
  for (std::size_t len = 0; len <= max_len; ++len) {
    Word word;
    std::vector<std::vector<Set>> stack{initial};
    std::vector<Letter> next_letter{0};
    if (len == 0) {
      ++result.explored;
      if (satisfied(initial)) return done(Status::found);
      continue;
    }
    while (!stack.empty()) {
      if (next_letter.back() == k) {
        stack.pop_back();
        next_letter.pop_back();
        if (!word.empty()) word.pop_back();
        continue;
      }
      const Letter x = next_letter.back()++;
      auto next = apply(stack.back(), x);
      if (!next) continue;
      word.push_back(x);
      if (word.size() == len) {
        ++result.explored;
        if (satisfied(*next)) {
          result.witness = word;
          result.length = len;
          return done(Status::found);
        }
        word.pop_back();
        continue;
      }
      stack.push_back(std::move(*next));
      next_letter.push_back(0);
    }
  }
  return done(Status::not_synchronizing);
}

}  // namespace subsync
