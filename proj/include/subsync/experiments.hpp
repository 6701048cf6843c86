#pragma once

#include <subsync/chain.hpp>
#include <subsync/composition.hpp>
#include <subsync/directing.hpp>
#include <subsync/families.hpp>
#include <subsync/oracle.hpp>
#include <subsync/random.hpp>
#include <subsync/reductions.hpp>

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace subsync {

struct ExperimentRow {
  std::optional<std::size_t> m;
  std::size_t n = 0;
  std::size_t letters = 0;
  std::string mode;
  std::string status;
  std::optional<std::uint64_t> length;
  std::optional<std::uint64_t> formula;
  std::optional<bool> match;
  std::uint64_t explored = 0;
  double elapsed_ms = 0;
  std::string note;
};

struct ExperimentReport {
  std::string suite;
  std::vector<ExperimentRow> rows;
  std::vector<Check> checks;
  std::vector<std::string> failures;

  bool ok() const {
    if (!failures.empty()) return false;
    for (const auto& c : checks)
      if (!c.passed) return false;
    return true;
  }
  void check(std::string name, bool passed, std::string detail = {}) {
    checks.push_back({std::move(name), passed, std::move(detail)});
  }
};

inline double to_ms(std::chrono::nanoseconds d) { return static_cast<double>(d.count()) / 1e6; }

// ---------------------------------------------------------------------------
// Lemma 4 invariants

/// Length of the shortest careful reset words of S and how many there are
/// (saturating at UINT64_MAX).
struct WitnessCount {
  std::optional<std::size_t> length;
  std::uint64_t count = 0;
};

inline WitnessCount count_shortest_witnesses(const Automaton& a, const StateSet& S,
                                             const SearchBudget& budget = {}) {
  const auto g = explore_subset_graph(a, S, budget);
  const std::size_t count = g.nodes.size();
  constexpr std::size_t unseen = static_cast<std::size_t>(-1);
  std::vector<std::size_t> dist(count, unseen);
  std::vector<std::uint64_t> ways(count, 0);
  std::vector<std::uint32_t> order{0};
  dist[0] = 0;
  ways[0] = 1;
  for (std::size_t head = 0; head < order.size(); ++head) {
    const auto u = order[head];
    if (g.nodes[u].size() == 1) continue;
    for (Letter x = 0; x < g.letters; ++x) {
      const auto t = g.edge(u, x);
      if (t == SubsetGraph::kNoEdge) continue;
      if (dist[t] == unseen) {
        dist[t] = dist[u] + 1;
        order.push_back(t);
      }
      if (dist[t] == dist[u] + 1) {
        const auto sum = ways[t] + ways[u];
        ways[t] = sum < ways[t] ? UINT64_MAX : sum;
      }
    }
  }
  WitnessCount out;
  for (std::uint32_t i = 0; i < count; ++i)
    if (g.nodes[i].size() == 1 && dist[i] != unseen && (!out.length || dist[i] < *out.length))
      out.length = dist[i];
  if (out.length)
    for (std::uint32_t i = 0; i < count; ++i)
      if (g.nodes[i].size() == 1 && dist[i] == *out.length) {
        const auto sum = out.count + ways[i];
        out.count = sum < out.count ? UINT64_MAX : sum;
      }
  return out;
}

/// True iff w lies in ({0,1}^k κ)* ω.
inline bool lemma4_shape(const Word& w, unsigned k) {
  if (w.empty() || w.back() != Lemma4Instance::kOmega) return false;
  unsigned bits = 0;
  for (std::size_t i = 0; i + 1 < w.size(); ++i) {
    const Letter x = w[i];
    if (x == Lemma4Instance::kZero || x == Lemma4Instance::kOne) {
      if (++bits > k) return false;
    } else if (x == Lemma4Instance::kKappa) {
      if (bits != k) return false;
      bits = 0;
    } else {
      return false;
    }
  }
  return bits == 0;
}

/// After the j-th κ of w the switches must encode j. Returns the first
/// block index at which the decoded value differs, or nullopt.
inline std::optional<std::size_t> counting_violation(const Lemma4Instance& L, const Word& w) {
  StateSet active = L.subset();
  std::size_t j = 0;
  if (L.counter_value(active) != std::uint64_t{0}) return 0;
  for (Letter x : w) {
    if (x == Lemma4Instance::kOmega) break;
    active = image(L.automaton(), active, x);
    if (x == Lemma4Instance::kKappa) {
      ++j;
      if (L.counter_value(active) != std::optional<std::uint64_t>{j}) return j;
    }
  }
  return std::nullopt;
}

/// Every prefix image before the final letter meets each block once.
inline bool transversal_along(const Lemma4Instance& L, const Word& w) {
  StateSet active = L.subset();
  for (std::size_t i = 0; i + 1 < w.size(); ++i) {
    for (const auto& block : *L.instance.partition)
      if ((active & block).size() != 1) return false;
    active = image(L.automaton(), active, w[i]);
  }
  for (const auto& block : *L.instance.partition)
    if ((active & block).size() != 1) return false;
  return true;
}

/// Rebuilds ξ from the transitions of the 0/1 letters at (i, 0).
inline std::optional<DeBruijnSeq> recover_xi(const Automaton& a) {
  if (a.letters() != 4 || a.kind() != Kind::dfa) return std::nullopt;
  const std::size_t n = a.states();
  for (std::size_t m = 2; 5 * m < n; m *= 2) {
    const unsigned k = require_power_of_two(m);
    if (5 * m + k + 3 != n) continue;
    DeBruijnSeq xi{k, std::string(m, '0')};
    for (std::size_t i = 0; i < m; ++i)
      xi.bits[i] = a.target(static_cast<State>(5 * i), Lemma4Instance::kOne) ==
                           static_cast<State>(5 * ((i + 1) % m))
                       ? '1'
                       : '0';
    return xi;
  }
  return std::nullopt;
}

/// The full invariant battery. With `exhaustive`, also runs the exact
/// subset search and counts shortest witnesses.
inline std::vector<Check> lemma4_battery(const Lemma4Instance& L, bool exhaustive,
                                         const SearchBudget& budget = {}) {
  std::vector<Check> out;
  auto check = [&](std::string name, bool passed, std::string detail = {}) {
    out.push_back({std::move(name), passed, std::move(detail)});
  };
  const Automaton& a = L.automaton();
  const std::size_t n = 5 * L.m + L.k + 3;
  check("state count 5m+log m+3", a.states() == n, detail::count_detail(a.states(), n));
  check("alphabet {0,1,κ,ω}", a.alphabet() == Alphabet{"0", "1", "κ", "ω"});
  check("total dfa", a.kind() == Kind::dfa);
  check("|S| = m+2", L.subset().size() == L.m + 2);
  check("sinks are D and D̄", sink_states(a) == StateSet(a.states(), {L.d(), L.d_bar()}));
  const StateSet omega_image = image(a, StateSet::full(a.states()), Lemma4Instance::kOmega);
  check("ω image within {D, D̄}",
        omega_image.subset_of(StateSet(a.states(), {L.d(), L.d_bar()})));
  auto sorted_pi = L.pi;
  std::sort(sorted_pi.begin(), sorted_pi.end());
  bool perm = true;
  for (std::size_t i = 0; i < sorted_pi.size(); ++i) perm = perm && sorted_pi[i] == i;
  check("π is a permutation", perm);
  check("ξ is de Bruijn", verify_de_bruijn(L.xi.bits, L.k));
  check("pairs strongly connect A", verify_cj(a, L.cj_pairs));

  const auto rel = relevant_part(a, L.subset(), budget);
  check("D̄ outside the relevant part", !rel.states.contains(L.d_bar()));
  std::vector<StatePair> local;
  bool inside = true;
  for (const auto& p : L.cjr_pairs) {
    inside = inside && rel.local[p.from] != Automaton::kNone && rel.local[p.to] != Automaton::kNone;
    if (inside) local.push_back({rel.local[p.from], rel.local[p.to]});
  }
  check("pairs strongly connect the relevant automaton", inside && verify_cj(rel.automaton, local));
  const auto mp = verify_mp(a, L.subset(), *L.instance.partition, budget);
  check("M_P partition", mp.ok, mp.reason);

  if (L.m <= 16) {
    const Word predicted = predicted_word(L.m);
    check("predicted word resets S", is_careful_reset_word(a, L.subset(), predicted),
          "length " + std::to_string(predicted.size()));
    check("predicted word shape", lemma4_shape(predicted, L.k));
    const auto bad = counting_violation(L, predicted);
    check("counting trace of the predicted word", !bad,
          bad ? "block " + std::to_string(*bad) : std::string{});
    check("transversal along the predicted word", transversal_along(L, predicted));

    if (exhaustive) {
      const auto r = shortest_subset_reset(a, L.subset(), budget);
      check("exact search completes", r.found(), std::string(to_string(r.status)));
      if (r.found()) {
        check("shortest length equals predicted", r.length == predicted.size(),
              detail::count_detail(r.length, predicted.size()));
        check("witness equals predicted word", r.witness == predicted);
        check("witness shape", lemma4_shape(r.witness, L.k));
        const auto bad_w = counting_violation(L, r.witness);
        check("counting trace of the witness", !bad_w,
              bad_w ? "block " + std::to_string(*bad_w) : std::string{});
        check("transversal along the witness", transversal_along(L, r.witness));
        const auto c = count_shortest_witnesses(a, L.subset(), budget);
        check("shortest witness is unique", c.count == 1,
              std::to_string(c.count) + " shortest witnesses");
      }
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Suites

inline ExperimentReport thresholds_suite(const std::vector<std::size_t>& ms,
                                         const std::vector<std::size_t>& cerny_ns,
                                         const SearchBudget& budget = {}) {
  ExperimentReport rep;
  rep.suite = "thresholds";
  for (std::size_t m : ms) {
    const auto L = build_lemma4(m);
    const auto r = shortest_subset_reset(L.automaton(), L.subset(), budget);
    ExperimentRow row;
    row.m = m;
    row.n = L.automaton().states();
    row.letters = L.automaton().letters();
    row.mode = "subset";
    row.status = std::string(to_string(r.status));
    row.formula = lemma4_formula(m);
    row.explored = r.explored;
    row.elapsed_ms = to_ms(r.elapsed);
    const auto predicted = predicted_length(m);
    if (r.found()) {
      row.length = r.length;
      row.match = r.length == *row.formula;
      if (*row.match)
        row.note = "agrees with the formula";
      else if (*row.formula - r.length == L.k + 1)
        row.note = "one counting block shorter than the formula: d = 2^m - 1";
      else
        row.note = "differs from the formula";
      rep.check("m=" + std::to_string(m) + ": length equals the predicted word",
                r.length == predicted, detail::count_detail(r.length, predicted));
      if (m <= 16)
        rep.check("m=" + std::to_string(m) + ": witness equals the predicted word",
                  r.witness == predicted_word(m));
    } else {
      rep.failures.push_back("m=" + std::to_string(m) + ": search ended with " + row.status);
    }
    rep.rows.push_back(row);
  }
  for (std::size_t n : cerny_ns) {
    const auto inst = cerny(n);
    const auto r = shortest_reset(inst.automaton, budget);
    ExperimentRow row;
    row.n = n;
    row.letters = 2;
    row.mode = "classic";
    row.status = std::string(to_string(r.status));
    row.formula = (n - 1) * (n - 1);
    row.explored = r.explored;
    row.elapsed_ms = to_ms(r.elapsed);
    row.note = "cerny";
    if (r.found()) {
      row.length = r.length;
      row.match = r.length == *row.formula;
    }
    rep.check("cerny n=" + std::to_string(n) + ": (n-1)^2", row.match.value_or(false),
              row.length ? std::to_string(*row.length) : row.status);
    rep.rows.push_back(row);
  }
  return rep;
}

namespace detail {

/// Random pfa that keeps letter 0 total half of the time, so that careful
/// synchronization is common.
inline Automaton random_careful_candidate(Rng& rng, std::size_t n, std::size_t k) {
  Automaton a = random_pfa(rng, n, k, 25);
  if (rng.chance(50)) {
    auto b = to_builder(a);
    for (State s = 0; s < n; ++s)
      if (b.cell(s, 0).empty()) b.set(s, 0, static_cast<State>(rng.below(n)));
    a = b.build();
  }
  return a;
}

inline bool mentions(const Word& w, const std::vector<Letter>& letters) {
  for (Letter x : w)
    if (std::find(letters.begin(), letters.end(), x) != letters.end()) return true;
  return false;
}

struct Tally {
  std::size_t instances = 0, attempts = 0, violations = 0;
  std::map<long long, std::size_t> gaps;
};

inline std::string gap_histogram(const Tally& t) {
  std::string out;
  for (auto [gap, count] : t.gaps)
    out += (out.empty() ? "" : " ") + std::to_string(gap) + ":" + std::to_string(count);
  return out;
}

}  // namespace detail

/// Reductions run forward on seeded random instances; both sides measured
/// by exact search. `per_lemma` instances are collected for each reduction.
inline ExperimentReport reduction_roundtrips_suite(std::uint64_t seed, std::size_t per_lemma = 50,
                                                   const SearchBudget& budget = {}) {
  ExperimentReport rep;
  rep.suite = "reduction-roundtrips";
  Rng rng(seed);
  const std::size_t max_attempts = per_lemma * 200;

  auto record = [&](const std::string& lemma, const Instance& in, const Instance& out,
                    std::uint64_t before, std::uint64_t after, bool ok, std::string note) {
    ExperimentRow row;
    row.n = in.automaton.states();
    row.letters = in.automaton.letters();
    row.mode = lemma;
    row.status = ok ? "pass" : "fail";
    row.length = after;
    row.formula = before;
    row.match = ok;
    row.note = "output " + std::to_string(out.automaton.states()) + " states" +
               (note.empty() ? "" : "; " + note);
    rep.rows.push_back(row);
    if (!ok) rep.failures.push_back(lemma + ": " + row.note);
  };
  auto summarize = [&](const std::string& lemma, const detail::Tally& t, const std::string& what) {
    rep.check(lemma + ": " + what, t.violations == 0 && t.instances >= per_lemma,
              std::to_string(t.instances) + " instances, " + std::to_string(t.violations) +
                  " violations" + (t.gaps.empty() ? "" : ", gaps " + detail::gap_histogram(t)));
  };

  {  // sinks and ω
    detail::Tally t;
    while (t.instances < per_lemma && t.attempts++ < max_attempts) {
      const std::size_t n = rng.between(1, 6), k = rng.between(1, 3);
      Instance in;
      in.automaton = random_pfa(rng, n, k, 25);
      in.subset = random_subset(rng, n, 1, n);
      const auto a = shortest_subset_reset(in.automaton, *in.subset, budget);
      if (!a.found()) continue;
      const auto red = add_sinks_determinize(in, budget);
      const auto b = shortest_subset_reset(red.report.output.automaton, *red.report.output.subset,
                                           budget);
      if (b.status == Status::budget_exceeded) continue;
      ++t.instances;
      const bool ok = b.found() && b.length == a.length + 1 && red.report.ok();
      t.violations += !ok;
      if (b.found()) ++t.gaps[static_cast<long long>(b.length) - static_cast<long long>(a.length)];
      record("lemma1", in, red.report.output, a.length, b.length, ok, {});
    }
    summarize("lemma1", t, "gap exactly +1");
  }

  {  // strong connectivity by single-state letters
    detail::Tally t;
    while (t.instances < per_lemma && t.attempts++ < max_attempts) {
      const std::size_t n = rng.between(2, 6), k = rng.between(1, 3);
      Instance in;
      in.automaton = detail::random_careful_candidate(rng, n, k);
      const auto a = shortest_careful_reset(in.automaton, budget);
      if (!a.found()) continue;
      const auto pairs = augmenting_pairs(in.automaton);
      const auto red = sc_lift_careful(in, pairs);
      const auto b = shortest_careful_reset(red.report.output.automaton, budget);
      if (b.status == Status::budget_exceeded) continue;
      ++t.instances;
      const bool psi_free = b.found() && !detail::mentions(b.witness, red.psi);
      const bool ok = b.found() && b.length == a.length && red.report.ok() && psi_free;
      t.violations += !ok;
      if (b.found()) ++t.gaps[static_cast<long long>(b.length) - static_cast<long long>(a.length)];
      record("lemma2", in, red.report.output, a.length, b.length, ok,
             psi_free ? "" : "witness uses a single-state letter");
    }
    summarize("lemma2", t, "car unchanged, strongly connected, witness avoids ψ");
  }

  {  // doubling with a swap congruence
    detail::Tally t;
    while (t.instances < per_lemma && t.attempts++ < max_attempts) {
      const std::size_t n = rng.between(2, 6), k = rng.between(1, 3);
      Instance in;
      in.automaton = random_dfa(rng, n, k);
      in.subset = random_subset(rng, n, 2, n);
      const auto a = shortest_subset_reset(in.automaton, *in.subset, budget);
      if (!a.found()) continue;
      auto pairs = augmenting_pairs(in.automaton);
      while (pairs.size() < 2)
        pairs.push_back({static_cast<State>(rng.below(n)), static_cast<State>(rng.below(n))});
      const auto red = sc_double_subset(in, pairs, budget);
      const auto b = shortest_subset_reset(red.report.output.automaton, *red.report.output.subset,
                                           budget);
      if (b.status == Status::budget_exceeded) continue;
      ++t.instances;
      const bool ok = b.found() && b.length >= a.length + 1 && red.report.ok();
      t.violations += !ok;
      if (b.found()) ++t.gaps[static_cast<long long>(b.length) - static_cast<long long>(a.length)];
      record("lemma3", in, red.report.output, a.length, b.length, ok, {});
    }
    summarize("lemma3", t, "gap at least +1, strongly connected, swap congruence");
  }

  {  // block transversal to careful synchronization
    detail::Tally t;
    auto run_one = [&](const Instance& in, const std::string& note) {
      const auto a = shortest_subset_reset(in.automaton, *in.subset, budget);
      const auto red = mp_to_careful(in, std::nullopt, budget);
      const auto b = shortest_careful_reset(red.report.output.automaton, budget);
      if (b.status == Status::budget_exceeded) return;
      ++t.instances;
      const bool ok = b.found() && b.length >= a.length && b.length <= a.length + 1 &&
                      red.report.ok();
      t.violations += !ok;
      if (b.found()) ++t.gaps[static_cast<long long>(b.length) - static_cast<long long>(a.length)];
      record("lemma5", in, red.report.output, a.length, b.length, ok, note);
    };
    run_one(build_lemma4(2).instance, "lemma4 m=2");
    while (t.instances < per_lemma && t.attempts++ < max_attempts) {
      const std::size_t n = rng.between(3, 6), blocks = rng.between(2, n - 1),
                        k = rng.between(2, 3);
      const Instance in = random_transversal_instance(rng, n, blocks, k);
      const auto a = shortest_subset_reset(in.automaton, *in.subset, budget);
      if (!a.found()) continue;
      if (!verify_mp(in.automaton, *in.subset, *in.partition, budget).ok) continue;
      run_one(in, {});
    }
    summarize("lemma5", t, "car(B) within [csub, csub+1]");
  }

  {  // binarization, subset form
    detail::Tally t;
    while (t.instances < per_lemma && t.attempts++ < max_attempts) {
      const std::size_t n = rng.between(1, 5), k = rng.between(2, 4);
      Instance in;
      in.automaton = random_dfa(rng, n, k);
      in.subset = random_subset(rng, n, 1, n);
      const auto bz = binarize(in, BinarizeMode::subset);
      const Automaton& B = bz.report.output.automaton;
      const StateSet& SB = *bz.report.output.subset;
      bool ok = bz.report.ok();
      for (int trial = 0; trial < 20; ++trial) {
        Word w(rng.below(7));
        for (auto& x : w) x = static_cast<Letter>(rng.below(k));
        ok = ok && is_careful_reset_word(in.automaton, *in.subset, w) ==
                       is_careful_reset_word(B, SB, bz.encode(w));
      }
      const auto a = shortest_subset_reset(in.automaton, *in.subset, budget);
      const auto b = shortest_subset_reset(B, SB, budget);
      if (b.status == Status::budget_exceeded || a.status == Status::budget_exceeded) continue;
      ++t.instances;
      ok = ok && a.found() == b.found();
      if (a.found()) ok = ok && is_careful_reset_word(B, SB, bz.encode(a.witness));
      if (b.found()) {
        try {
          ok = ok && is_careful_reset_word(in.automaton, *in.subset, bz.decode_witness(b.witness));
        } catch (const Error&) {
          ok = false;
        }
      }
      t.violations += !ok;
      record("lemma6-subset", in, bz.report.output, a.found() ? a.length : 0,
             b.found() ? b.length : 0, ok, a.found() ? "" : "blind on both sides");
    }
    summarize("lemma6-subset", t, "w resets S iff encode(w) resets S_B; decoded witness valid");
  }

  {  // binarization, careful form
    detail::Tally t;
    while (t.instances < per_lemma && t.attempts++ < max_attempts) {
      const std::size_t n = rng.between(1, 5), k = rng.between(2, 3);
      Instance in;
      in.automaton = detail::random_careful_candidate(rng, n, k);
      const auto a = shortest_careful_reset(in.automaton, budget);
      if (!a.found()) continue;
      const auto bz = binarize(in, BinarizeMode::careful);
      const Automaton& B = bz.report.output.automaton;
      const StateSet all = StateSet::full(B.states());
      const auto b = shortest_careful_reset(B, budget);
      if (b.status == Status::budget_exceeded) continue;
      ++t.instances;
      bool ok = bz.report.ok() && is_careful_reset_word(B, all, bz.lift(a.witness)) && b.found();
      if (b.found()) {
        try {
          ok = ok && is_careful_reset_word(in.automaton, StateSet::full(in.automaton.states()),
                                           bz.decode_witness(b.witness));
        } catch (const Error&) {
          ok = false;
        }
      }
      t.violations += !ok;
      record("lemma6-careful", in, bz.report.output, a.length, b.found() ? b.length : 0, ok, {});
    }
    summarize("lemma6-careful", t, "prefixed encoding resets B; decoded witness valid");
  }
  return rep;
}

namespace detail {

/// Engine and oracle agree when both find the same length, or when the
/// engine finds nothing within the oracle's horizon.
inline bool agrees(const SearchResult& engine, const SearchResult& oracle, std::size_t max_len) {
  if (engine.status == Status::budget_exceeded) return false;
  if (oracle.found()) return engine.found() && engine.length == oracle.length;
  return !engine.found() || engine.length > max_len;
}

inline SearchResult run_engine(const Automaton& a, const std::optional<StateSet>& S, Mode mode,
                               const SearchBudget& budget) {
  switch (mode) {
    case Mode::classic: return shortest_reset(a, budget);
    case Mode::careful: return shortest_careful_reset(a, budget);
    case Mode::subset: return shortest_subset_reset(a, *S, budget);
    case Mode::d1: return directing_word(a, Directing::d1, budget);
    case Mode::d2: return directing_word(a, Directing::d2, budget);
    case Mode::d3: return directing_word(a, Directing::d3, budget);
  }
  throw Error("unknown mode");
}

inline std::vector<Mode> modes_for(Kind kind) {
  switch (kind) {
    case Kind::dfa:
      return {Mode::classic, Mode::careful, Mode::subset, Mode::d1, Mode::d2, Mode::d3};
    case Kind::pfa: return {Mode::careful, Mode::subset, Mode::d1, Mode::d2, Mode::d3};
    case Kind::nfa: return {Mode::d1, Mode::d2, Mode::d3};
  }
  return {};
}

}  // namespace detail

/// Every engine mode applicable to each random instance against the
/// exhaustive oracle. An instance agrees when all its modes agree.
inline ExperimentReport oracle_cross_suite(std::uint64_t seed, std::size_t count = 100,
                                           std::size_t max_len = 10,
                                           const SearchBudget& budget = {}) {
  ExperimentReport rep;
  rep.suite = "oracle-cross";
  Rng rng(seed);
  std::size_t agreeing = 0, comparisons = 0;
  for (std::size_t i = 0; i < count; ++i) {
    const std::size_t n = rng.between(1, 6), k = rng.between(1, 3);
    const Kind kind = static_cast<Kind>(i % 3);
    Automaton a = kind == Kind::dfa   ? random_dfa(rng, n, k)
                  : kind == Kind::pfa ? random_pfa(rng, n, k, 20)
                                      : random_nfa(rng, n, k, 30);
    const StateSet S = random_subset(rng, n, 1, n);
    bool all = true;
    for (Mode mode : detail::modes_for(kind)) {
      const auto e = detail::run_engine(a, S, mode, budget);
      const auto o = brute_force_oracle(a, S, mode, max_len);
      const bool ok = detail::agrees(e, o, max_len);
      all = all && ok;
      ++comparisons;
      ExperimentRow row;
      row.n = n;
      row.letters = k;
      row.mode = std::string(to_string(kind)) + "/" + std::string(to_string(mode));
      row.status = std::string(to_string(e.status));
      if (e.found()) row.length = e.length;
      if (o.found()) row.formula = o.length;
      row.match = ok;
      row.explored = e.explored;
      row.elapsed_ms = to_ms(e.elapsed);
      row.note = "instance " + std::to_string(i);
      rep.rows.push_back(row);
      if (!ok)
        rep.failures.push_back("instance " + std::to_string(i) + " mode " +
                               std::string(to_string(mode)) + ": engine " +
                               std::string(to_string(e.status)) + " " + std::to_string(e.length) +
                               ", oracle " + std::string(to_string(o.status)) + " " +
                               std::to_string(o.length));
    }
    agreeing += all;
  }
  rep.check("instances in full agreement", agreeing == count,
            std::to_string(agreeing) + "/" + std::to_string(count) + " (" +
                std::to_string(comparisons) + " mode comparisons)");
  return rep;
}

/// Directing-word variants on carefully synchronizing pfa.
inline ExperimentReport nfa_modes_suite(std::uint64_t seed, std::size_t count = 50,
                                        const SearchBudget& budget = {}) {
  ExperimentReport rep;
  rep.suite = "nfa-modes";
  Rng rng(seed);
  std::size_t found = 0, equal = 0, d2_below = 0, bounded = 0, attempts = 0;
  while (found < count && attempts++ < count * 200) {
    const std::size_t n = rng.between(1, 6), k = rng.between(1, 3);
    const Automaton a = detail::random_careful_candidate(rng, n, k);
    const auto car = shortest_careful_reset(a, budget);
    if (!car.found()) continue;
    const auto d1 = directing_word(a, Directing::d1, budget);
    const auto d2 = directing_word(a, Directing::d2, budget);
    const auto d3 = directing_word(a, Directing::d3, budget);
    if (!d1.found() || !d2.found() || !d3.found()) {
      rep.failures.push_back("instance " + std::to_string(found) + ": a directing search failed");
      ++found;
      continue;
    }
    ++found;
    const bool eq = d1.length == car.length && d3.length == car.length;
    const bool below = d2.length <= d1.length;
    const std::uint64_t bound = (std::uint64_t{1} << n) - n - 1;
    const bool within = car.length <= bound;
    equal += eq;
    d2_below += below;
    bounded += within;
    ExperimentRow row;
    row.n = n;
    row.letters = k;
    row.mode = "pfa/careful";
    row.status = "found";
    row.length = car.length;
    row.formula = bound;
    row.match = eq && below && within;
    row.explored = car.explored;
    row.elapsed_ms = to_ms(car.elapsed);
    row.note = "d1=" + std::to_string(d1.length) + " d2=" + std::to_string(d2.length) +
               " d3=" + std::to_string(d3.length);
    rep.rows.push_back(row);
    if (!*row.match) rep.failures.push_back("instance " + std::to_string(found - 1) + ": " + row.note);
  }
  const std::string of = "/" + std::to_string(found);
  rep.check("instances collected", found >= count, std::to_string(found));
  rep.check("d1 = d3 = careful length", equal == found, std::to_string(equal) + of);
  rep.check("d2 <= d1", d2_below == found, std::to_string(d2_below) + of);
  rep.check("careful length <= 2^n - n - 1", bounded == found, std::to_string(bounded) + of);
  return rep;
}

/// Composition depth in the transformation semigroup against the
/// automaton searches it corresponds to.
inline ExperimentReport composition_suite(std::uint64_t seed, std::size_t count = 20,
                                          const SearchBudget& budget = {}) {
  ExperimentReport rep;
  rep.suite = "composition";
  {
    const auto inst = cerny(4);
    const auto gens = letter_transformations(inst.automaton);
    const auto r = composition_depth(4, gens, constant_functions(), budget);
    const auto reset = shortest_reset(inst.automaton, budget);
    ExperimentRow row;
    row.n = 4;
    row.letters = 2;
    row.mode = "constants";
    row.status = std::string(to_string(r.status));
    if (r.found()) row.length = r.length;
    row.formula = 9;
    row.match = r.found() && r.length == 9;
    row.explored = r.explored;
    row.elapsed_ms = to_ms(r.elapsed);
    row.note = "cerny-4";
    rep.rows.push_back(row);
    rep.check("cerny-4 constants depth = 9", *row.match,
              r.found() ? std::to_string(r.length) : row.status);
    rep.check("matches shortest reset", r.found() && reset.found() && r.length == reset.length);
  }
  Rng rng(seed);
  std::size_t agree = 0, tried = 0;
  for (std::size_t i = 0; i < count; ++i) {
    const std::size_t n = rng.between(2, 5), k = rng.between(1, 3);
    const Automaton a = random_dfa(rng, n, k);
    const StateSet S = random_subset(rng, n, 2, n);
    const auto gens = letter_transformations(a);
    const auto depth = composition_depth(n, gens, merges(S), budget);
    const auto sub = shortest_subset_reset(a, S, budget);
    ++tried;
    const bool ok = depth.found() == sub.found() && (!depth.found() || depth.length == sub.length);
    agree += ok;
    ExperimentRow row;
    row.n = n;
    row.letters = k;
    row.mode = "merges-S";
    row.status = std::string(to_string(depth.status));
    if (depth.found()) row.length = depth.length;
    if (sub.found()) row.formula = sub.length;
    row.match = ok;
    row.explored = depth.explored;
    row.elapsed_ms = to_ms(depth.elapsed);
    rep.rows.push_back(row);
    if (!ok) rep.failures.push_back("random instance " + std::to_string(i) + " disagrees");
  }
  rep.check("F_S depth equals subset reset length", agree == tried,
            std::to_string(agree) + "/" + std::to_string(tried));
  return rep;
}

}  // namespace subsync
