#pragma once

#include <subsync/families.hpp>
#include <subsync/reductions.hpp>

#include <string_view>
#include <vector>

namespace subsync {

enum class ChainVariant { subset, careful };

inline std::string_view to_string(ChainVariant v) {
  return v == ChainVariant::subset ? "subset" : "careful";
}

struct ChainResult {
  ChainVariant variant = ChainVariant::subset;
  std::size_t m = 0;
  std::vector<ReductionReport> stages;
  Instance final_instance;
  /// Reset word of the first stage carried through every reduction.
  Word witness;
  std::size_t expected_states = 0;
  std::vector<Check> checks;

  bool ok() const {
    for (const auto& c : checks)
      if (!c.passed) return false;
    for (const auto& s : stages)
      if (!s.ok()) return false;
    return true;
  }
};

/// Final state count of the subset chain: 60m + 12 log m + 48.
inline std::size_t subset_chain_states(std::size_t m) {
  return 60 * m + 12 * require_power_of_two(m) + 48;
}

/// Final state count of the careful chain: 35m + 7 log m + 21.
inline std::size_t careful_chain_states(std::size_t m) {
  return 35 * m + 7 * require_power_of_two(m) + 21;
}

inline ReductionReport lemma4_stage(const Lemma4Instance& L, const SearchBudget& budget) {
  ReductionReport rep;
  rep.name = "build_lemma4";
  rep.input = L.instance;
  rep.output = L.instance;
  rep.claimed_relation = "sub(A,S) >= length of the predicted word";
  const Automaton& a = L.automaton();
  const std::size_t n = 5 * L.m + L.k + 3;
  rep.check("state count 5m+log m+3", a.states() == n, detail::count_detail(a.states(), n));
  rep.check("|S| = m+2", L.subset().size() == L.m + 2);
  rep.check("pairs strongly connect A", verify_cj(a, L.cj_pairs));
  const auto verdict = verify_mp(a, L.subset(), *L.instance.partition, budget);
  rep.check("M_P partition", verdict.ok, verdict.reason);
  return rep;
}

inline ChainResult theorem1_chain(std::size_t m, ChainVariant variant,
                                  const SearchBudget& budget = {}) {
  const auto L = build_lemma4(m);
  ChainResult out;
  out.variant = variant;
  out.m = m;
  out.stages.push_back(lemma4_stage(L, budget));

  if (variant == ChainVariant::subset) {
    out.expected_states = subset_chain_states(m);
    auto doubled = sc_double_subset(L.instance, L.cj_pairs, budget);
    auto binary = binarize(doubled.report.output, BinarizeMode::subset);
    out.witness = binary.lift(doubled.witness);
    out.stages.push_back(std::move(doubled.report));
    out.final_instance = binary.report.output;
    out.stages.push_back(std::move(binary.report));
  } else {
    out.expected_states = careful_chain_states(m);
    auto closed = mp_to_careful(L.instance, L.cjr_pairs, budget);
    auto lifted = sc_lift_careful(closed.report.output, *closed.report.output.pairs);
    auto binary = binarize(lifted.report.output, BinarizeMode::careful);
    out.witness = binary.lift(closed.witness);
    out.stages.push_back(std::move(closed.report));
    out.stages.push_back(std::move(lifted.report));
    out.final_instance = binary.report.output;
    out.stages.push_back(std::move(binary.report));
  }

  const Automaton& B = out.final_instance.automaton;
  auto check = [&](std::string name, bool passed, std::string detail = {}) {
    out.checks.push_back({std::move(name), passed, std::move(detail)});
  };
  check(variant == ChainVariant::subset ? "state count 60m+12 log m+48"
                                        : "state count 35m+7 log m+21",
        B.states() == out.expected_states, detail::count_detail(B.states(), out.expected_states));
  check("binary alphabet", B.letters() == 2);
  check("strongly connected", strongly_connected(B));
  if (variant == ChainVariant::subset) {
    check("output is total", B.kind() == Kind::dfa);
    check("propagated witness resets the subset",
          is_careful_reset_word(B, *out.final_instance.subset, out.witness));
  } else {
    check("propagated witness carefully resets every state",
          is_careful_reset_word(B, StateSet::full(B.states()), out.witness));
  }
  return out;
}

}  // namespace subsync
