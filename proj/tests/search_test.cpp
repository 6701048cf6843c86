#include <subsync/subsync.hpp>

#include <gtest/gtest.h>

using namespace subsync;

namespace {

Automaton permutation_dfa(std::size_t n) {
  AutomatonBuilder b(Kind::dfa, n, Alphabet{"a"});
  for (State s = 0; s < n; ++s) b.set(s, 0, static_cast<State>((s + 1) % n));
  return b.build();
}

/// Exhaustive check that no word shorter than `length` resets S.
bool no_shorter_word(const Automaton& a, const StateSet& S, std::size_t length) {
  std::vector<StateSet> level{S};
  for (std::size_t d = 0; d < length; ++d) {
    std::vector<StateSet> next;
    for (const auto& T : level) {
      if (T.size() == 1) return false;
      for (Letter x = 0; x < a.letters(); ++x)
        if (auto img = careful_image(a, T, x)) next.push_back(*img);
    }
    level = std::move(next);
  }
  return true;
}

}  // namespace

TEST(Search, CernyFourHasLengthNine) {
  const auto inst = cerny(4);
  const auto r = shortest_reset(inst.automaton);
  ASSERT_TRUE(r.found());
  EXPECT_EQ(r.length, 9u);
  EXPECT_EQ(run(inst.automaton, StateSet::full(4), r.witness).size(), 1u);
}

TEST(Search, SingleStateNeedsTheEmptyWord) {
  AutomatonBuilder b(Kind::dfa, 1, Alphabet{"a"});
  b.set(0, 0, 0);
  const auto r = shortest_reset(b.build());
  ASSERT_TRUE(r.found());
  EXPECT_EQ(r.length, 0u);
  EXPECT_TRUE(r.witness.empty());
  const auto L = build_lemma4(2);
  const auto single = shortest_subset_reset(L.automaton(), StateSet(14, {3}));
  EXPECT_TRUE(single.found());
  EXPECT_EQ(single.length, 0u);
}

TEST(Search, PermutationsNeverSynchronize) {
  for (std::size_t n = 2; n <= 5; ++n)
    EXPECT_EQ(shortest_reset(permutation_dfa(n)).status, Status::not_synchronizing);
}

TEST(Search, PfaWithoutTotalLetterIsNotCarefullySynchronizing) {
  AutomatonBuilder b(Kind::pfa, 3, Alphabet{"a", "b"});
  b.set(0, 0, 1);
  b.set(1, 0, 1);
  b.set(1, 1, 2);
  b.set(2, 1, 2);
  EXPECT_EQ(shortest_careful_reset(b.build()).status, Status::not_synchronizing);
}

TEST(Search, BlindSubset) {
  const auto a = permutation_dfa(3);
  const StateSet S(3, {0, 1});
  EXPECT_EQ(shortest_subset_reset(a, S).status, Status::blind);
  EXPECT_TRUE(is_blind(a, S));
  EXPECT_FALSE(is_blind(a, StateSet(3, {2})));
  EXPECT_FALSE(is_blind(cerny(4).automaton, StateSet(4, {0, 2})));
}

TEST(Search, ShortestResetRejectsPartialAutomata) {
  AutomatonBuilder b(Kind::pfa, 2, Alphabet{"a"});
  b.set(0, 0, 1);
  EXPECT_THROW((void)shortest_reset(b.build()), Error);
  Rng rng(1);
  EXPECT_THROW((void)shortest_careful_reset(random_nfa(rng, 3, 2, 40)), Error);
}

/// Cycle plus a transposition: the orbit of a half-size subset has
/// C(20,10) elements and none of them is a singleton.
Automaton symmetric_group_dfa(std::size_t n) {
  AutomatonBuilder b(Kind::dfa, n, Alphabet{"a", "b"});
  for (State s = 0; s < n; ++s) {
    b.set(s, 0, static_cast<State>((s + 1) % n));
    b.set(s, 1, s < 2 ? 1 - s : s);
  }
  return b.build();
}

StateSet first_half(std::size_t n) {
  StateSet S(n);
  for (State s = 0; s < n / 2; ++s) S.insert(s);
  return S;
}

TEST(Search, BudgetIsReported) {
  const auto a = symmetric_group_dfa(20);
  SearchBudget budget;
  budget.max_nodes = 1000;
  const auto r = shortest_subset_reset(a, first_half(20), budget);
  EXPECT_EQ(r.status, Status::budget_exceeded);
  EXPECT_LE(r.explored, 1001u);
  EXPECT_THROW((void)is_blind(a, first_half(20), budget), BudgetExceeded);
  budget.max_memory = 1;
  budget.max_nodes = 10'000'000;
  EXPECT_EQ(shortest_subset_reset(a, first_half(20), budget).status, Status::budget_exceeded);
}

TEST(Search, LengthBudgetIsReported) {
  SearchBudget budget;
  budget.max_length = 5;
  EXPECT_EQ(shortest_reset(cerny(4).automaton, budget).status, Status::budget_exceeded);
  budget.max_length = 9;
  EXPECT_TRUE(shortest_reset(cerny(4).automaton, budget).found());
}

TEST(Search, WitnessesAreDeterministic) {
  const auto L = build_lemma4(4);
  const auto a = shortest_subset_reset(L.automaton(), L.subset());
  const auto b = shortest_subset_reset(L.automaton(), L.subset());
  EXPECT_EQ(a.witness, b.witness);
  EXPECT_EQ(a.explored, b.explored);
}

TEST(Properties, FoundWitnessesAreValidAndMinimal) {
  Rng rng(32);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = rng.between(1, 6), k = rng.between(1, 3);
    const Automaton a = trial % 2 ? random_dfa(rng, n, k) : random_pfa(rng, n, k, 25);
    const StateSet S = random_subset(rng, n, 1, n);
    const auto r = shortest_subset_reset(a, S);
    ASSERT_NE(r.status, Status::budget_exceeded);
    if (!r.found()) continue;
    EXPECT_EQ(r.witness.size(), r.length);
    EXPECT_TRUE(is_careful_reset_word(a, S, r.witness));
    EXPECT_TRUE(no_shorter_word(a, S, r.length));
  }
}

TEST(Properties, CarefulLengthWithinExponentialBound) {
  Rng rng(33);
  int found = 0;
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = rng.between(1, 7), k = rng.between(1, 3);
    const auto a = random_pfa(rng, n, k, 15);
    const auto r = shortest_careful_reset(a);
    if (!r.found()) continue;
    ++found;
    EXPECT_LE(r.length, (std::uint64_t{1} << n) - n - 1);
  }
  EXPECT_GT(found, 0);
}

TEST(Properties, SubsetOfResettableSetIsResettable) {
  Rng rng(34);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = rng.between(2, 6), k = rng.between(1, 3);
    const auto a = random_dfa(rng, n, k);
    const auto full = shortest_reset(a);
    const StateSet S = random_subset(rng, n, 1, n);
    if (full.found()) {
      const auto sub = shortest_subset_reset(a, S);
      ASSERT_TRUE(sub.found());
      EXPECT_LE(sub.length, full.length);
    }
  }
}

TEST(Oracle, SmallExamples) {
  const auto c3 = cerny(3);
  const auto r = brute_force_oracle(c3.automaton, std::nullopt, Mode::classic, 10);
  ASSERT_TRUE(r.found());
  EXPECT_EQ(r.length, 4u);
  const auto single = brute_force_oracle(c3.automaton, StateSet(3, {1}), Mode::subset, 3);
  ASSERT_TRUE(single.found());
  EXPECT_EQ(single.length, 0u);
}

TEST(Oracle, AgreesWithSubsetSearchOnRandomDfa) {
  Rng rng(35);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = rng.between(1, 6), k = rng.between(1, 3);
    const auto a = random_dfa(rng, n, k);
    const StateSet S = random_subset(rng, n, 1, n);
    const auto e = shortest_subset_reset(a, S);
    const auto o = brute_force_oracle(a, S, Mode::subset, 10);
    EXPECT_TRUE(detail::agrees(e, o, 10)) << "trial " << trial;
  }
}

TEST(Directing, SingleStateNfa) {
  AutomatonBuilder b(Kind::nfa, 1, Alphabet{"a"});
  b.add(0, 0, 0);
  const auto a = b.build();
  for (auto mode : {Directing::d1, Directing::d2, Directing::d3}) {
    const auto r = directing_word(a, mode);
    ASSERT_TRUE(r.found());
    EXPECT_EQ(r.length, 0u);
  }
}

TEST(Directing, PfaModesMatchCarefulLength) {
  Rng rng(36);
  int checked = 0;
  for (int trial = 0; trial < 300 && checked < 40; ++trial) {
    const std::size_t n = rng.between(1, 6), k = rng.between(1, 3);
    const auto a = detail::random_careful_candidate(rng, n, k);
    const auto car = shortest_careful_reset(a);
    if (!car.found()) continue;
    ++checked;
    const auto d1 = directing_word(a, Directing::d1);
    const auto d2 = directing_word(a, Directing::d2);
    const auto d3 = directing_word(a, Directing::d3);
    ASSERT_TRUE(d1.found() && d2.found() && d3.found());
    EXPECT_EQ(d1.length, car.length);
    EXPECT_EQ(d3.length, car.length);
    EXPECT_LE(d2.length, d1.length);
  }
  EXPECT_EQ(checked, 40);
}

TEST(Directing, AgreesWithOracleOnRandomNfa) {
  Rng rng(37);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t n = rng.between(1, 5), k = rng.between(1, 2);
    const auto a = random_nfa(rng, n, k, 35);
    for (auto [d, m] : {std::pair{Directing::d1, Mode::d1}, std::pair{Directing::d2, Mode::d2},
                        std::pair{Directing::d3, Mode::d3}}) {
      const auto e = directing_word(a, d);
      const auto o = brute_force_oracle(a, std::nullopt, m, 8);
      EXPECT_TRUE(detail::agrees(e, o, 8)) << "trial " << trial << " " << to_string(d);
    }
  }
}

TEST(Composition, GeneratorInTargetGivesDepthOne) {
  const std::vector<Transformation> gens{{1, 2, 0}, {0, 0, 0}};
  const auto r = composition_depth(3, gens, constant_functions());
  ASSERT_TRUE(r.found());
  EXPECT_EQ(r.length, 1u);
  EXPECT_EQ(r.witness, Word{1});
}

TEST(Composition, CernyFourConstantsDepthNine) {
  const auto inst = cerny(4);
  const auto gens = letter_transformations(inst.automaton);
  const auto r = composition_depth(4, gens, constant_functions());
  ASSERT_TRUE(r.found());
  EXPECT_EQ(r.length, 9u);
  EXPECT_TRUE(constant_functions()(compose(4, gens, r.witness)));
}

TEST(Composition, MergesMatchSubsetReset) {
  Rng rng(38);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = rng.between(2, 5), k = rng.between(1, 3);
    const auto a = random_dfa(rng, n, k);
    const StateSet S = random_subset(rng, n, 2, n);
    const auto depth = composition_depth(n, letter_transformations(a), merges(S));
    const auto sub = shortest_subset_reset(a, S);
    ASSERT_EQ(depth.found(), sub.found());
    if (sub.found()) {
      EXPECT_EQ(depth.length, sub.length);
    }
  }
}

TEST(Composition, RejectsBadGenerators) {
  EXPECT_THROW((void)composition_depth(2, {{0, 2}}, constant_functions()), Error);
  EXPECT_THROW((void)composition_depth(2, {{0}}, constant_functions()), Error);
  EXPECT_THROW((void)composition_depth(2, {}, constant_functions()), Error);
}
