#include <subsync/subsync.hpp>

#include <gtest/gtest.h>

#include <map>
#include <set>

using namespace subsync;

namespace {

using Image = std::vector<State>;

/// States active on some prefix of some careful reset word of S, computed
/// by closing the reachable images under careful letters and keeping those
/// from which a singleton is still reachable.
std::set<State> relevant_states_by_closure(const Automaton& a, const StateSet& S) {
  std::map<Image, std::vector<Image>> succ;
  std::vector<Image> todo{S.members()};
  succ[todo[0]];
  while (!todo.empty()) {
    const Image cur = todo.back();
    todo.pop_back();
    for (Letter x = 0; x < a.letters(); ++x) {
      std::set<State> next;
      bool ok = true;
      for (State s : cur) {
        const State t = a.target(s, x);
        if (t == Automaton::kNone) {
          ok = false;
          break;
        }
        next.insert(t);
      }
      if (!ok) continue;
      Image img(next.begin(), next.end());
      succ[cur].push_back(img);
      if (succ.emplace(img, std::vector<Image>{}).second) todo.push_back(img);
    }
  }
  std::set<Image> good;
  for (const auto& [img, _] : succ)
    if (img.size() == 1) good.insert(img);
  for (bool changed = true; changed;) {
    changed = false;
    for (const auto& [img, next] : succ) {
      if (good.count(img)) continue;
      for (const auto& t : next)
        if (good.count(t)) {
          good.insert(img);
          changed = true;
          break;
        }
    }
  }
  std::set<State> out;
  for (const auto& img : good) out.insert(img.begin(), img.end());
  return out;
}

std::set<State> as_set(const StateSet& s) {
  const auto m = s.members();
  return {m.begin(), m.end()};
}

}  // namespace

TEST(RelevantPart, SingleStateAutomaton) {
  AutomatonBuilder b(Kind::dfa, 1, Alphabet{"a"});
  b.set(0, 0, 0);
  const auto rel = relevant_part(b.build(), StateSet(1, {0}));
  EXPECT_EQ(rel.states, StateSet(1, {0}));
}

TEST(RelevantPart, BlindSubsetHasNoRelevantPart) {
  AutomatonBuilder b(Kind::dfa, 2, Alphabet{"a"});
  b.set(0, 0, 1);
  b.set(1, 0, 0);
  EXPECT_THROW((void)relevant_part(b.build(), StateSet::full(2)), Error);
}

TEST(RelevantPart, Lemma4MatchesClosureOracle) {
  for (std::size_t m : {2, 4}) {
    const auto L = build_lemma4(m);
    const auto rel = relevant_part(L.automaton(), L.subset());
    EXPECT_EQ(as_set(rel.states), relevant_states_by_closure(L.automaton(), L.subset()))
        << "m=" << m;
    EXPECT_FALSE(rel.states.contains(L.d_bar()));
  }
}

TEST(RelevantPart, Lemma4AtTwoOmitsFourStates) {
  const auto L = build_lemma4(2);
  const auto rel = relevant_part(L.automaton(), L.subset());
  const std::set<State> omitted{L.switch_state(0, Mark::one_up), L.switch_state(1, Mark::zero_down),
                                L.switch_state(1, Mark::one_down), L.d_bar()};
  EXPECT_EQ(rel.states.size(), 10u);
  for (State s = 0; s < L.automaton().states(); ++s)
    EXPECT_EQ(rel.states.contains(s), !omitted.count(s)) << L.automaton().label(s);
  EXPECT_EQ(relevant_part(build_lemma4(4).automaton(), build_lemma4(4).subset()).states.size(),
            21u);
}

TEST(RelevantPart, RestrictionStaysInside) {
  const auto L = build_lemma4(4);
  const auto rel = relevant_part(L.automaton(), L.subset());
  EXPECT_EQ(rel.automaton.kind(), Kind::pfa);
  EXPECT_EQ(rel.automaton.states(), rel.states.size());
  for (State i = 0; i < rel.automaton.states(); ++i)
    for (Letter x = 0; x < rel.automaton.letters(); ++x) {
      const State t = rel.automaton.target(i, x);
      if (t == Automaton::kNone) {
        const State orig = L.automaton().target(rel.original[i], x);
        EXPECT_FALSE(rel.states.contains(orig));
      } else {
        EXPECT_EQ(rel.original[t], L.automaton().target(rel.original[i], x));
      }
    }
}

TEST(Properties, RelevantPartMatchesClosureOnRandomInstances) {
  Rng rng(41);
  int checked = 0;
  for (int trial = 0; trial < 400; ++trial) {
    const std::size_t n = rng.between(1, 7), k = rng.between(1, 3);
    const Automaton a = trial % 2 ? random_dfa(rng, n, k) : random_pfa(rng, n, k, 20);
    const StateSet S = random_subset(rng, n, 1, n);
    if (!shortest_subset_reset(a, S).found()) continue;
    ++checked;
    EXPECT_EQ(as_set(relevant_part(a, S).states), relevant_states_by_closure(a, S));
  }
  EXPECT_GT(checked, 100);
}

TEST(SwapCongruence, SingletonsAlwaysPass) {
  Rng rng(42);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = rng.between(1, 6);
    const auto a = random_dfa(rng, n, 2);
    std::vector<StateSet> singletons;
    for (State s = 0; s < n; ++s) singletons.push_back(StateSet(n, {s}));
    EXPECT_TRUE(verify_swap_congruence(a, singletons));
  }
}

TEST(SwapCongruence, CollidingBlockFails) {
  AutomatonBuilder b(Kind::dfa, 3, Alphabet{"a"});
  b.set(0, 0, 2);
  b.set(1, 0, 2);
  b.set(2, 0, 0);
  EXPECT_FALSE(verify_swap_congruence(b.build(), {StateSet(3, {0, 1}), StateSet(3, {2})}));
}

TEST(SwapCongruence, DoublingOutputPassesAndPairsAreBlind) {
  Rng rng(43);
  int checked = 0;
  for (int trial = 0; trial < 200 && checked < 20; ++trial) {
    const std::size_t n = rng.between(2, 5);
    Instance in;
    in.automaton = random_dfa(rng, n, 2);
    in.subset = random_subset(rng, n, 2, n);
    if (!shortest_subset_reset(in.automaton, *in.subset).found()) continue;
    auto pairs = augmenting_pairs(in.automaton);
    while (pairs.size() < 2) pairs.push_back({0, 0});
    const auto red = sc_double_subset(in, pairs);
    ++checked;
    const auto& B = red.report.output;
    EXPECT_TRUE(verify_swap_congruence(B.automaton, *B.partition));
    EXPECT_TRUE(strongly_connected(B.automaton));
    // A pair {s, s̄} never merges.
    const State s = static_cast<State>(rng.below(n));
    EXPECT_TRUE(is_blind(B.automaton, StateSet(B.automaton.states(), {s, static_cast<State>(s + n)})));
  }
  EXPECT_EQ(checked, 20);
}

TEST(MpVerdict, Lemma4PartitionPasses) {
  for (std::size_t m : {2, 4, 8}) {
    const auto L = build_lemma4(m);
    const auto v = verify_mp(L.automaton(), L.subset(), *L.instance.partition);
    EXPECT_TRUE(v.ok) << "m=" << m << ": " << v.reason;
  }
}

TEST(MpVerdict, MergedBlocksFail) {
  const auto L = build_lemma4(2);
  auto blocks = *L.instance.partition;
  blocks[0] |= blocks[1];
  blocks.erase(blocks.begin() + 1);
  const auto v = verify_mp(L.automaton(), L.subset(), blocks);
  EXPECT_FALSE(v.ok);
  EXPECT_FALSE(v.reason.empty());
}

TEST(MpVerdict, TransversalViolationReportsWord) {
  // Two shifts move S = {0,1} onto {2,3}, missing the first block.
  AutomatonBuilder b(Kind::dfa, 4, Alphabet{"a", "b"});
  for (State s = 0; s < 4; ++s) b.set(s, 0, static_cast<State>((s + 1) % 4));
  for (State s = 0; s < 4; ++s) b.set(s, 1, 0);
  const auto a = b.build();
  const StateSet S(4, {0, 1});
  const auto v = verify_mp(a, S, {StateSet(4, {0, 1}), StateSet(4, {2, 3})});
  ASSERT_FALSE(v.ok);
  EXPECT_EQ(run(a, S, v.word), v.subset);
  EXPECT_NE(v.subset.size(), 1u);
}

TEST(MpVerdict, SingleStateSubset) {
  const auto c = cerny(4);
  const auto v = verify_mp(c.automaton, StateSet(4, {2}), {StateSet::full(4)});
  EXPECT_TRUE(v.ok) << v.reason;
}
