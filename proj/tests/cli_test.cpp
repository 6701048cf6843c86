#include <subsync/subsync.hpp>

#include <gtest/gtest.h>

#include "json.hpp"

#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace subsync;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  int code = -1;
  std::string out;
};

Outcome run_cli(const std::string& args, const std::string& env = {}) {
  const std::string cmd = env + (env.empty() ? "" : " ") + SUBSYNC_CLI + " " + args + " 2>/dev/null";
  Outcome o;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return o;
  char buf[4096];
  std::size_t got;
  while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) o.out.append(buf, got);
  const int status = pclose(pipe);
  o.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return o;
}

nlohmann::json run_json(const std::string& args, int expected_code) {
  const auto o = run_cli("--format json " + args);
  EXPECT_EQ(o.code, expected_code) << args << "\n" << o.out;
  return nlohmann::json::parse(o.out);
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("subsync_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }
  std::string write(const std::string& name, const Instance& inst) const {
    write_instance_file(path(name), inst);
    return path(name);
  }
  std::string write_text(const std::string& name, const std::string& text) const {
    std::ofstream(path(name)) << text;
    return path(name);
  }

  fs::path dir_;
};

Instance permutation_instance() {
  AutomatonBuilder b(Kind::dfa, 3, Alphabet{"a"});
  for (State s = 0; s < 3; ++s) b.set(s, 0, static_cast<State>((s + 1) % 3));
  Instance in;
  in.automaton = b.build();
  in.subset = StateSet(3, {0, 1});
  return in;
}

}  // namespace

TEST_F(Cli, ShortestOnLemma4) {
  const auto file = write("l4.txt", build_lemma4(2).instance);
  const auto j = run_json("shortest " + file + " --mode subset", 0);
  EXPECT_EQ(j["results"][0]["status"], "found");
  EXPECT_EQ(j["results"][0]["length"], 7);
  EXPECT_EQ(j["results"][0]["witness"]["text"], "0κ1κ0κω");
  EXPECT_EQ(j["instance"]["states"], 14);
  EXPECT_TRUE(j.contains("timing"));
  EXPECT_FALSE(j["results"][0].contains("elapsed_ms"));
}

TEST_F(Cli, WitnessAboveThresholdIsSummarized) {
  const auto file = write("l4.txt", build_lemma4(4).instance);
  const auto j = run_json("--witness-threshold 10 shortest " + file + " --mode subset", 0);
  const auto& w = j["results"][0]["witness"];
  EXPECT_EQ(w["length"], 46);
  EXPECT_FALSE(w.contains("text"));
  EXPECT_EQ(w["encoded"]["runs"][0][0], "00");
  const auto full = run_json("--witness-threshold 10 --full-witness shortest " + file, 0);
  EXPECT_EQ(full["results"][0]["witness"]["text"].get<std::string>().size() > 46, true);
}

TEST_F(Cli, NegativeAndUsageExitCodes) {
  const auto file = write("perm.txt", permutation_instance());
  EXPECT_EQ(run_cli("shortest " + file + " --mode classic").code, 2);
  EXPECT_EQ(run_cli("shortest " + file + " --mode subset").code, 2);
  EXPECT_EQ(run_cli("decide " + file + " --problem subset-sync").code, 2);
  EXPECT_EQ(run_cli("shortest " + path("missing.txt")).code, 1);
  EXPECT_EQ(run_cli("shortest " + file + " --mode nope").code, 1);
  EXPECT_EQ(run_cli("frobnicate").code, 1);
  const auto bad = write_text("bad.txt", "kind dfa\nstates 1\nletters a\n0 b 0\n");
  EXPECT_EQ(run_cli("shortest " + bad).code, 1);
  Instance pfa;
  AutomatonBuilder b(Kind::pfa, 2, Alphabet{"a"});
  b.set(0, 0, 1);
  pfa.automaton = b.build();
  const auto pfa_file = write("pfa.txt", pfa);
  EXPECT_EQ(run_cli("shortest " + pfa_file + " --mode classic").code, 1);
  EXPECT_EQ(run_cli("shortest " + pfa_file + " --mode subset").code, 1);
}

TEST_F(Cli, BudgetExceededExitCode) {
  AutomatonBuilder b(Kind::dfa, 20, Alphabet{"a", "b"});
  for (State s = 0; s < 20; ++s) {
    b.set(s, 0, static_cast<State>((s + 1) % 20));
    b.set(s, 1, s < 2 ? 1 - s : s);
  }
  Instance in;
  in.automaton = b.build();
  in.subset = StateSet(20, {0, 1, 2, 3, 4, 5, 6, 7, 8, 9});
  const auto file = write("big.txt", in);
  EXPECT_EQ(run_cli("--max-nodes 1000 shortest " + file + " --mode subset").code, 3);
  EXPECT_EQ(run_cli("shortest " + file + " --mode subset", "SUBSYNC_MAX_NODES=1000").code, 3);
  EXPECT_EQ(run_cli("--max-nodes 1000 decide " + file + " --problem subset-sync").code, 3);
}

TEST_F(Cli, DecideAnswers) {
  const auto l4 = write("l4.txt", build_lemma4(2).instance);
  EXPECT_EQ(run_json("decide " + l4 + " --problem subset-sync", 0)["results"][0]["answer"], "yes");
  Instance single = permutation_instance();
  single.subset = StateSet(3, {1});
  const auto one = write("one.txt", single);
  EXPECT_EQ(run_cli("decide " + one + " --problem subset-sync").code, 0);
  const auto cerny4 = write("c4.txt", cerny(4));
  EXPECT_EQ(run_cli("decide " + cerny4 + " --problem careful-sync").code, 0);
}

TEST_F(Cli, BuildFamilies) {
  ASSERT_EQ(run_cli("-o " + path("l4.txt") + " build lemma4 --m 4").code, 0);
  EXPECT_EQ(read_instance_file(path("l4.txt")).automaton.states(), 25u);
  ASSERT_EQ(run_cli("-o " + path("c5.txt") + " build cerny --n 5").code, 0);
  const auto c5 = read_instance_file(path("c5.txt"));
  EXPECT_EQ(c5.automaton.states(), 5u);
  EXPECT_EQ(c5.automaton.letters(), 2u);
  const auto stdout_build = run_cli("build cerny --n 3");
  EXPECT_EQ(stdout_build.code, 0);
  EXPECT_EQ(parse_instance(stdout_build.out), cerny(3));
  ASSERT_EQ(run_cli("-o " + path("db.txt") + " build debruijn --k 4").code, 0);
  EXPECT_EQ(run_cli("verify " + path("db.txt") + " --check debruijn").code, 0);
  EXPECT_EQ(run_cli("build lemma4 --m 3").code, 1);
}

TEST_F(Cli, CustomDeBruijnSequence) {
  ASSERT_EQ(run_cli("-o " + path("l8.txt") + " build lemma4 --m 8 --xi 00101110").code, 0);
  const auto j = run_json("verify " + path("l8.txt") + " --check lemma4 --skip-search", 0);
  EXPECT_TRUE(j["passed"].get<bool>());
  EXPECT_EQ(run_cli("build lemma4 --m 8 --xi 00101101").code, 1);
}

TEST_F(Cli, DeBruijnFileVerification) {
  EXPECT_EQ(run_cli("verify " + write_text("ok.txt", "k 3\nbits 00101110\n") + " --check debruijn").code, 0);
  EXPECT_EQ(run_cli("verify " + write_text("bad.txt", "k 3\nbits 00101101\n") + " --check debruijn").code, 2);
  EXPECT_EQ(run_cli("verify " + write_text("junk.txt", "k 3\nbitz 0\n") + " --check debruijn").code, 1);
}

TEST_F(Cli, ReduceLemmas) {
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
  const auto file = write("cycles.txt", in);
  ASSERT_EQ(run_cli("-o " + path("l3.txt") + " reduce " + file + " --lemma 3").code, 0);
  const auto doubled = read_instance_file(path("l3.txt"));
  EXPECT_EQ(doubled.automaton.states(), 14u);
  EXPECT_TRUE(strongly_connected(doubled.automaton));
  EXPECT_EQ(run_cli("verify " + path("l3.txt") + " --check swap").code, 0);
  EXPECT_EQ(run_cli("verify " + path("l3.txt") + " --check sc").code, 0);
  EXPECT_EQ(run_cli("verify " + file + " --check sc").code, 2);

  Rng rng(62);
  Instance four;
  four.automaton = random_dfa(rng, 5, 4);
  four.subset = StateSet::full(5);
  ASSERT_EQ(run_cli("-o " + path("l6.txt") + " reduce " + write("four.txt", four) + " --lemma 6").code, 0);
  EXPECT_EQ(read_instance_file(path("l6.txt")).automaton.states(), 20u);

  EXPECT_EQ(run_cli("reduce " + file + " --lemma 5").code, 2);
  EXPECT_EQ(run_cli("reduce " + write("perm.txt", permutation_instance()) + " --lemma 1").code, 2);
}

TEST_F(Cli, ReduceChainAndLemma5) {
  ASSERT_EQ(run_cli("-o " + path("chain.txt") + " reduce --lemma chain --m 2 --variant subset").code, 0);
  const auto chain = read_instance_file(path("chain.txt"));
  EXPECT_EQ(chain.automaton.states(), 180u);
  EXPECT_EQ(chain.automaton.letters(), 2u);
  const auto l4 = write("l4.txt", build_lemma4(2).instance);
  const auto j = run_json("reduce " + l4 + " --lemma 5", 0);
  EXPECT_EQ(j["relevant_states"], 10);
}

TEST_F(Cli, VerifyChecks) {
  const auto L = build_lemma4(2);
  const auto l4 = write("l4.txt", L.instance);
  const auto battery = run_json("verify " + l4 + " --check lemma4", 0);
  EXPECT_TRUE(battery["passed"].get<bool>());
  EXPECT_EQ(run_cli("verify " + l4 + " --check mp").code, 0);
  EXPECT_EQ(run_cli("verify " + l4 + " --check cj").code, 0);
  EXPECT_EQ(run_cli("verify " + l4 + " --check swap").code, 2);

  Instance corrupted = L.instance;
  auto blocks = *corrupted.partition;
  blocks[0] |= blocks[1];
  blocks.erase(blocks.begin() + 1);
  corrupted.partition = blocks;
  const auto mp = run_json("verify " + write("bad_mp.txt", corrupted) + " --check mp", 2);
  EXPECT_FALSE(mp["passed"].get<bool>());

  Instance no_pairs = L.instance;
  no_pairs.pairs.reset();
  EXPECT_EQ(run_cli("verify " + write("np.txt", no_pairs) + " --check cj").code, 1);
}

TEST_F(Cli, ExperimentFormats) {
  const auto j = run_json("experiment composition --count 5", 0);
  EXPECT_TRUE(j["passed"].get<bool>());
  EXPECT_EQ(j["rows"].size(), 6u);
  const auto csv = run_cli("--format csv experiment thresholds --m 2");
  EXPECT_EQ(csv.code, 0);
  std::istringstream lines(csv.out);
  std::string header, first;
  std::getline(lines, header);
  std::getline(lines, first);
  EXPECT_EQ(header, "m,n,letters,mode,status,length,formula_value,match,explored,elapsed_ms");
  EXPECT_EQ(first.rfind("2,14,4,subset,found,7,9,false,", 0), 0u) << first;
  const auto text = run_cli("--format text experiment thresholds --m 2");
  EXPECT_EQ(text.code, 0);
  EXPECT_NE(text.out.find("d = 2^m - 1"), std::string::npos);
}
