#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace subsync {

using State = std::uint32_t;
using Letter = std::uint32_t;

/// A subset of {0, ..., universe-1}, stored as a packed bit vector.
///
/// Equality is extensional and includes the universe size, so two sets over
/// automata of different sizes never compare equal.
class StateSet {
 public:
  StateSet() = default;
  explicit StateSet(std::size_t universe)
      : universe_(universe), words_((universe + 63) / 64, 0) {}
  StateSet(std::size_t universe, std::initializer_list<State> members)
      : StateSet(universe) {
    for (State s : members) insert(s);
  }

  static StateSet full(std::size_t universe) {
    StateSet set(universe);
    for (std::size_t s = 0; s < universe; ++s) set.insert(static_cast<State>(s));
    return set;
  }

  template <typename Range>
  static StateSet of(std::size_t universe, const Range& members) {
    StateSet set(universe);
    for (auto s : members) set.insert(static_cast<State>(s));
    return set;
  }

  std::size_t universe() const { return universe_; }

  void insert(State s) {
    check(s);
    words_[s >> 6] |= std::uint64_t{1} << (s & 63);
  }
  void erase(State s) {
    check(s);
    words_[s >> 6] &= ~(std::uint64_t{1} << (s & 63));
  }
  bool contains(State s) const {
    return s < universe_ && (words_[s >> 6] >> (s & 63)) & 1;
  }

  std::size_t size() const {
    std::size_t count = 0;
    for (auto w : words_) count += static_cast<std::size_t>(std::popcount(w));
    return count;
  }
  bool empty() const {
    for (auto w : words_)
      if (w) return false;
    return true;
  }

  /// Smallest member; only meaningful when non-empty.
  State first() const {
    for (std::size_t i = 0; i < words_.size(); ++i)
      if (words_[i])
        return static_cast<State>(i * 64 + std::countr_zero(words_[i]));
    throw std::logic_error("StateSet::first on empty set");
  }

  template <typename F>
  void for_each(F&& f) const {
    for (std::size_t i = 0; i < words_.size(); ++i) {
      std::uint64_t w = words_[i];
      while (w) {
        f(static_cast<State>(i * 64 + std::countr_zero(w)));
        w &= w - 1;
      }
    }
  }

  std::vector<State> members() const {
    std::vector<State> out;
    for_each([&](State s) { out.push_back(s); });
    return out;
  }

  StateSet& operator|=(const StateSet& o) {
    same_universe(o);
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= o.words_[i];
    return *this;
  }
  StateSet& operator&=(const StateSet& o) {
    same_universe(o);
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= o.words_[i];
    return *this;
  }
  friend StateSet operator|(StateSet a, const StateSet& b) { return a |= b; }
  friend StateSet operator&(StateSet a, const StateSet& b) { return a &= b; }

  bool intersects(const StateSet& o) const {
    same_universe(o);
    for (std::size_t i = 0; i < words_.size(); ++i)
      if (words_[i] & o.words_[i]) return true;
    return false;
  }
  bool subset_of(const StateSet& o) const {
    same_universe(o);
    for (std::size_t i = 0; i < words_.size(); ++i)
      if (words_[i] & ~o.words_[i]) return false;
    return true;
  }

  bool operator==(const StateSet&) const = default;

  std::size_t hash() const {
    std::uint64_t h = 0x9e3779b97f4a7c15ULL ^ universe_;
    for (auto w : words_) {
      h ^= w + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
      h *= 0xff51afd7ed558ccdULL;
    }
    return static_cast<std::size_t>(h ^ (h >> 33));
  }

  std::size_t byte_size() const { return words_.size() * sizeof(std::uint64_t); }

  std::span<const std::uint64_t> words() const { return words_; }

  /// "{0,3,5}"
  std::string to_string() const {
    std::string out = "{";
    bool first_member = true;
    for_each([&](State s) {
      if (!first_member) out += ',';
      first_member = false;
      out += std::to_string(s);
    });
    return out + "}";
  }

 private:
  void check(State s) const {
    if (s >= universe_)
      throw std::out_of_range("state " + std::to_string(s) +
                              " outside universe of size " +
                              std::to_string(universe_));
  }
  void same_universe(const StateSet& o) const {
    if (o.universe_ != universe_)
      throw std::invalid_argument("StateSet universes differ");
  }

  std::size_t universe_ = 0;
  std::vector<std::uint64_t> words_;
};

struct StateSetHash {
  std::size_t operator()(const StateSet& s) const { return s.hash(); }
};

}  // namespace subsync

template <>
struct std::hash<subsync::StateSet> {
  std::size_t operator()(const subsync::StateSet& s) const { return s.hash(); }
};
