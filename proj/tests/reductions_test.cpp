#include <subsync/subsync.hpp>

#include <gtest/gtest.h>

using namespace subsync;

namespace {

Instance single_state_pfa() {
  AutomatonBuilder b(Kind::pfa, 1, Alphabet{"a"});
  b.set(0, 0, 0);
  Instance in;
  in.automaton = b.build();
  in.subset = StateSet(1, {0});
  return in;
}

/// Six-state dfa made of two 3-cycles, with a merging letter on each.
Instance two_cycles() {
  AutomatonBuilder b(Kind::dfa, 6, Alphabet{"a", "b"});
  for (State s = 0; s < 3; ++s) {
    b.set(s, 0, static_cast<State>((s + 1) % 3));
    b.set(s + 3, 0, static_cast<State>(3 + (s + 1) % 3));
    b.set(s, 1, s == 0 ? 1 : s);
    b.set(s + 3, 1, s == 0 ? 4 : s + 3);
  }
  Instance in;
  in.automaton = b.build();
  in.subset = StateSet(6, {0, 1, 2});
  return in;
}

Word random_word(Rng& rng, std::size_t letters, std::size_t max_len) {
  Word w(rng.below(max_len + 1));
  for (auto& x : w) x = static_cast<Letter>(rng.below(letters));
  return w;
}

void expect_all_checks(const ReductionReport& r) {
  for (const auto& c : r.checks) EXPECT_TRUE(c.passed) << r.name << ": " << c.name << " " << c.detail;
}

}  // namespace

TEST(SinkReduction, SingleState) {
  const auto red = add_sinks_determinize(single_state_pfa());
  const auto& B = red.report.output;
  EXPECT_EQ(B.automaton.states(), 3u);
  EXPECT_EQ(B.automaton.kind(), Kind::dfa);
  const auto r = shortest_subset_reset(B.automaton, *B.subset);
  ASSERT_TRUE(r.found());
  EXPECT_EQ(r.length, 1u);
  EXPECT_EQ(r.witness, Word{red.omega});
  expect_all_checks(red.report);
}

TEST(SinkReduction, CountsAndGap) {
  Rng rng(51);
  int checked = 0;
  for (int trial = 0; trial < 300 && checked < 30; ++trial) {
    const std::size_t n = rng.between(1, 6), k = rng.between(1, 3);
    Instance in;
    in.automaton = random_pfa(rng, n, k, 25);
    in.subset = random_subset(rng, n, 1, n);
    const auto a = shortest_subset_reset(in.automaton, *in.subset);
    if (!a.found()) continue;
    ++checked;
    const auto red = add_sinks_determinize(in);
    const auto& B = red.report.output;
    EXPECT_EQ(B.automaton.states(), n + 2);
    EXPECT_EQ(B.automaton.letters(), k + 1);
    EXPECT_EQ(sink_states(B.automaton), StateSet(n + 2, {red.d, red.d_bar}));
    const auto b = shortest_subset_reset(B.automaton, *B.subset);
    ASSERT_TRUE(b.found());
    EXPECT_EQ(b.length, a.length + 1);
    EXPECT_TRUE(is_careful_reset_word(B.automaton, *B.subset, red.lift(a.witness)));
    expect_all_checks(red.report);
  }
  EXPECT_EQ(checked, 30);
}

TEST(SinkReduction, RejectsBlindSource) {
  Instance in = two_cycles();
  in.subset = StateSet(6, {0, 3});
  EXPECT_THROW((void)add_sinks_determinize(in), Error);
}

TEST(StrongLift, NoPairsKeepsAutomaton) {
  const auto c = cerny(4);
  const auto red = sc_lift_careful(c, {});
  EXPECT_EQ(red.report.output.automaton, c.automaton);
}

TEST(StrongLift, AddsOneLetterPerPair) {
  const auto in = two_cycles();
  const auto pairs = augmenting_pairs(in.automaton);
  const auto red = sc_lift_careful(in, pairs);
  EXPECT_EQ(red.report.output.automaton.letters(), 2 + pairs.size());
  EXPECT_TRUE(strongly_connected(red.report.output.automaton));
  EXPECT_THROW((void)sc_lift_careful(in, {}), Error);
  expect_all_checks(red.report);
}

TEST(StrongLift, CarefulLengthUnchanged) {
  Rng rng(52);
  int checked = 0;
  for (int trial = 0; trial < 400 && checked < 30; ++trial) {
    const std::size_t n = rng.between(2, 6), k = rng.between(1, 3);
    Instance in;
    in.automaton = detail::random_careful_candidate(rng, n, k);
    const auto a = shortest_careful_reset(in.automaton);
    if (!a.found()) continue;
    ++checked;
    const auto red = sc_lift_careful(in, augmenting_pairs(in.automaton));
    const auto b = shortest_careful_reset(red.report.output.automaton);
    ASSERT_TRUE(b.found());
    EXPECT_EQ(b.length, a.length);
    EXPECT_TRUE(strongly_connected(red.report.output.automaton));
  }
  EXPECT_EQ(checked, 30);
}

TEST(Doubling, SixStateTwoCycleInstance) {
  const auto in = two_cycles();
  const auto pairs = augmenting_pairs(in.automaton);
  ASSERT_EQ(pairs.size(), 2u);
  const auto red = sc_double_subset(in, pairs);
  const auto& B = red.report.output;
  EXPECT_EQ(B.automaton.states(), 14u);
  EXPECT_EQ(B.automaton.kind(), Kind::dfa);
  EXPECT_TRUE(strongly_connected(B.automaton));
  EXPECT_TRUE(verify_swap_congruence(B.automaton, *B.partition));
  EXPECT_EQ(B.partition->size(), 7u);
  const auto a = shortest_subset_reset(in.automaton, *in.subset);
  const auto b = shortest_subset_reset(B.automaton, *B.subset);
  ASSERT_TRUE(a.found() && b.found());
  EXPECT_GE(b.length, a.length + 1);
  EXPECT_TRUE(is_careful_reset_word(B.automaton, *B.subset, red.witness));
  EXPECT_EQ(red.witness, red.lift(red.source_witness));
  expect_all_checks(red.report);
}

TEST(Doubling, Preconditions) {
  const auto in = two_cycles();
  const auto pairs = augmenting_pairs(in.automaton);
  EXPECT_THROW((void)sc_double_subset(in, {pairs[0]}), Error);
  EXPECT_THROW((void)sc_double_subset(in, {{0, 0}, {1, 1}}), Error);
  Instance no_subset = in;
  no_subset.subset.reset();
  EXPECT_THROW((void)sc_double_subset(no_subset, pairs), Error);
  Instance partial;
  partial.automaton = to_builder(in.automaton, Kind::pfa).build();
  partial.subset = in.subset;
  EXPECT_THROW((void)sc_double_subset(partial, pairs), Error);
}

TEST(Doubling, RandomGapAtLeastOne) {
  Rng rng(53);
  int checked = 0;
  for (int trial = 0; trial < 400 && checked < 30; ++trial) {
    const std::size_t n = rng.between(2, 6), k = rng.between(1, 3);
    Instance in;
    in.automaton = random_dfa(rng, n, k);
    in.subset = random_subset(rng, n, 2, n);
    const auto a = shortest_subset_reset(in.automaton, *in.subset);
    if (!a.found()) continue;
    auto pairs = augmenting_pairs(in.automaton);
    while (pairs.size() < 2) pairs.push_back({0, 0});
    ++checked;
    const auto red = sc_double_subset(in, pairs);
    const auto& B = red.report.output;
    EXPECT_EQ(B.automaton.states(), 2 * n + 2);
    const auto b = shortest_subset_reset(B.automaton, *B.subset);
    ASSERT_TRUE(b.found());
    EXPECT_GE(b.length, a.length + 1);
    expect_all_checks(red.report);
  }
  EXPECT_EQ(checked, 30);
}

TEST(RelevantClosure, Lemma4AtTwo) {
  const auto L = build_lemma4(2);
  const auto red = mp_to_careful(L.instance, L.cjr_pairs);
  const auto& B = red.report.output;
  const auto rel = relevant_part(L.automaton(), L.subset());
  EXPECT_EQ(B.automaton.states(), rel.states.size());
  EXPECT_EQ(B.automaton.letters(), L.automaton().letters() + 1);
  const auto csub = shortest_subset_reset(L.automaton(), L.subset());
  const auto car = shortest_careful_reset(B.automaton);
  ASSERT_TRUE(csub.found() && car.found());
  EXPECT_GE(car.length, csub.length);
  EXPECT_LE(car.length, csub.length + 1);
  EXPECT_TRUE(is_careful_reset_word(B.automaton, StateSet::full(B.automaton.states()), red.witness));
  const StateSet local_s = rel.to_local(L.subset());
  EXPECT_EQ(image(B.automaton, StateSet::full(B.automaton.states()), red.alpha), local_s);
  EXPECT_EQ(run(B.automaton, local_s, {red.alpha, red.alpha}), local_s);
  expect_all_checks(red.report);
}

TEST(RelevantClosure, RejectsNonTransversalInstance) {
  auto in = build_lemma4(2).instance;
  auto blocks = *in.partition;
  blocks[0] |= blocks[1];
  blocks.erase(blocks.begin() + 1);
  in.partition = blocks;
  EXPECT_THROW((void)mp_to_careful(in), Error);
}

TEST(Binarize, EncodingExamples) {
  EXPECT_TRUE(encode_word({}, 3).empty());
  EXPECT_EQ(encode_word({0}, 3), Word{kAlpha});
  EXPECT_EQ(encode_word({2, 0}, 3), (Word{kBeta, kBeta, kAlpha, kAlpha}));
  EXPECT_EQ(decode_word({kBeta, kBeta, kAlpha, kAlpha}, 3), (Word{2, 0}));
  EXPECT_THROW((void)decode_word({kBeta, kBeta, kBeta, kAlpha}, 3), Error);
  EXPECT_THROW((void)decode_word({kAlpha, kBeta}, 3), Error);
}

TEST(Binarize, RoundTripOnRandomWords) {
  Rng rng(54);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t k = rng.between(1, 5);
    const Word w = random_word(rng, k, 10);
    EXPECT_EQ(decode_word(encode_word(w, k), k), w);
  }
}

TEST(Binarize, FourLetterDfaOnFiveStates) {
  Rng rng(55);
  Instance in;
  in.automaton = random_dfa(rng, 5, 4);
  in.subset = StateSet::full(5);
  const auto bz = binarize(in, BinarizeMode::subset);
  EXPECT_EQ(bz.report.output.automaton.states(), 20u);
  EXPECT_EQ(bz.report.output.automaton.letters(), 2u);
  EXPECT_EQ(bz.report.output.automaton.kind(), Kind::dfa);
  expect_all_checks(bz.report);
}

TEST(Binarize, SubsetCorrespondenceOnRandomDfa) {
  Rng rng(56);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t n = rng.between(1, 5), k = rng.between(2, 4);
    Instance in;
    in.automaton = random_dfa(rng, n, k);
    in.subset = random_subset(rng, n, 1, n);
    const auto bz = binarize(in, BinarizeMode::subset);
    const auto& B = bz.report.output;
    for (int w_trial = 0; w_trial < 30; ++w_trial) {
      const Word w = random_word(rng, k, 8);
      EXPECT_EQ(is_careful_reset_word(in.automaton, *in.subset, w),
                is_careful_reset_word(B.automaton, *B.subset, bz.encode(w)));
    }
    const auto b = shortest_subset_reset(B.automaton, *B.subset);
    if (b.found()) {
      EXPECT_TRUE(is_careful_reset_word(in.automaton, *in.subset, bz.decode_witness(b.witness)));
    }
  }
}

TEST(Binarize, CarefulModeLiftsWitnesses) {
  Rng rng(57);
  int checked = 0;
  for (int trial = 0; trial < 400 && checked < 30; ++trial) {
    const std::size_t n = rng.between(1, 5), k = rng.between(2, 3);
    Instance in;
    in.automaton = detail::random_careful_candidate(rng, n, k);
    const auto a = shortest_careful_reset(in.automaton);
    if (!a.found()) continue;
    ++checked;
    const auto bz = binarize(in, BinarizeMode::careful);
    const auto& B = bz.report.output.automaton;
    EXPECT_EQ(B.states(), n * k);
    EXPECT_TRUE(is_careful_reset_word(B, StateSet::full(B.states()), bz.lift(a.witness)));
    const auto b = shortest_careful_reset(B);
    ASSERT_TRUE(b.found());
    EXPECT_TRUE(is_careful_reset_word(in.automaton, StateSet::full(n), bz.decode_witness(b.witness)));
  }
  EXPECT_EQ(checked, 30);
}

TEST(Binarize, CarefulModeNeedsATotalLetter) {
  AutomatonBuilder b(Kind::pfa, 2, Alphabet{"a", "b"});
  b.set(0, 0, 1);
  b.set(1, 1, 0);
  Instance in;
  in.automaton = b.build();
  EXPECT_THROW((void)binarize(in, BinarizeMode::careful), Error);
}

TEST(Chain, SubsetVariantAtTwo) {
  const auto chain = theorem1_chain(2, ChainVariant::subset);
  EXPECT_EQ(chain.final_instance.automaton.states(), 180u);
  EXPECT_EQ(subset_chain_states(2), 180u);
  EXPECT_TRUE(chain.ok());
  for (const auto& c : chain.checks) EXPECT_TRUE(c.passed) << c.name << ": " << c.detail;
}

TEST(Chain, SubsetVariantCountsFollowFormula) {
  for (std::size_t m : {4, 8}) {
    const auto chain = theorem1_chain(m, ChainVariant::subset);
    EXPECT_EQ(chain.final_instance.automaton.states(), subset_chain_states(m));
    EXPECT_TRUE(chain.ok()) << "m=" << m;
  }
}

TEST(Chain, CarefulVariantStructure) {
  const auto chain = theorem1_chain(2, ChainVariant::careful);
  const auto& B = chain.final_instance.automaton;
  const auto rel = relevant_part(build_lemma4(2).automaton(), build_lemma4(2).subset());
  // Binary encoding of the relevant closure with its single-state letters.
  EXPECT_EQ(B.states(), 7 * rel.states.size());
  EXPECT_EQ(B.letters(), 2u);
  EXPECT_TRUE(strongly_connected(B));
  EXPECT_TRUE(is_careful_reset_word(B, StateSet::full(B.states()), chain.witness));
  for (const auto& s : chain.stages) expect_all_checks(s);
}
