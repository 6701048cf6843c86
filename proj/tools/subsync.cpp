#include <subsync/subsync.hpp>

#include "CLI11.hpp"
#include "json.hpp"

#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

using namespace subsync;
using json = nlohmann::ordered_json;

namespace {

enum Exit { kOk = 0, kUsage = 1, kNegative = 2, kBudget = 3 };

struct Config {
  std::string format = "text";
  std::string determinism = "strict";
  std::uint64_t seed = 1;
  SearchBudget budget;
  std::size_t witness_threshold = 10000;
  bool full_witness = false;
  std::string output;
};

std::uint64_t fnv1a(std::string_view text) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

std::string hex_digest(std::string_view text) {
  std::ostringstream os;
  os << "fnv1a64:" << std::hex << std::setw(16) << std::setfill('0') << fnv1a(text);
  return os.str();
}

void apply_env(SearchBudget& b) {
  auto read = [](const char* name, std::uint64_t& field) {
    if (const char* v = std::getenv(name)) {
      try {
        field = std::stoull(v);
      } catch (const std::exception&) {
        throw Error(std::string("invalid value for ") + name);
      }
    }
  };
  read("SUBSYNC_MAX_NODES", b.max_nodes);
  read("SUBSYNC_MAX_LENGTH", b.max_length);
  read("SUBSYNC_MAX_MEMORY", b.max_memory);
}

// --- witness rendering -----------------------------------------------------

/// Runs of β^i α blocks, or nullopt when w does not have that shape.
std::optional<json> beta_alpha_runs(const Alphabet& alphabet, const Word& w) {
  auto a = alphabet.index_of("α"), b = alphabet.index_of("β");
  if (!a || !b || alphabet.size() != 2) return std::nullopt;
  json runs = json::array();
  std::size_t betas = 0;
  std::optional<std::size_t> last;
  std::size_t repeat = 0;
  auto flush = [&] {
    if (last) runs.push_back(json::array({*last, repeat}));
  };
  for (Letter x : w) {
    if (x == *b) {
      ++betas;
      continue;
    }
    if (last && *last == betas) {
      ++repeat;
    } else {
      flush();
      last = betas;
      repeat = 1;
    }
    betas = 0;
  }
  if (betas) return std::nullopt;
  flush();
  return json{{"structure", "beta^i alpha"}, {"runs", runs}};
}

/// Runs of bit-block κ segments followed by a final ω.
std::optional<json> bits_kappa_runs(const Alphabet& alphabet, const Word& w) {
  if (!(alphabet == Alphabet{"0", "1", "κ", "ω"})) return std::nullopt;
  if (w.empty() || w.back() != Lemma4Instance::kOmega) return std::nullopt;
  json runs = json::array();
  std::string block, last;
  std::size_t repeat = 0;
  bool have = false;
  for (std::size_t i = 0; i + 1 < w.size(); ++i) {
    const Letter x = w[i];
    if (x == Lemma4Instance::kZero || x == Lemma4Instance::kOne) {
      block += x == Lemma4Instance::kOne ? '1' : '0';
    } else if (x == Lemma4Instance::kKappa) {
      if (have && block == last) {
        ++repeat;
      } else {
        if (have) runs.push_back(json::array({last, repeat}));
        last = block;
        repeat = 1;
        have = true;
      }
      block.clear();
    } else {
      return std::nullopt;
    }
  }
  if (!block.empty()) return std::nullopt;
  if (have) runs.push_back(json::array({last, repeat}));
  return json{{"structure", "bin(t) kappa, then omega"}, {"runs", runs}};
}

json witness_json(const Alphabet& alphabet, const Word& w, const Config& cfg) {
  const std::string text = render_word(alphabet, w);
  json j{{"length", w.size()}, {"digest", hex_digest(text)}};
  if (cfg.full_witness || w.size() <= cfg.witness_threshold) {
    j["text"] = text;
    return j;
  }
  if (auto r = beta_alpha_runs(alphabet, w))
    j["encoded"] = *r;
  else if (auto r2 = bits_kappa_runs(alphabet, w))
    j["encoded"] = *r2;
  j["omitted"] = true;
  return j;
}

// --- report helpers ---------------------------------------------------------

json instance_json(const Instance& inst) {
  const Automaton& a = inst.automaton;
  json j{{"kind", to_string(a.kind())},
         {"states", a.states()},
         {"letters", a.letters()},
         {"alphabet", a.alphabet().symbols()}};
  if (inst.subset) j["subset_size"] = inst.subset->size();
  if (inst.partition) j["partition_blocks"] = inst.partition->size();
  if (inst.pairs) j["pairs"] = inst.pairs->size();
  j["digest"] = hex_digest(serialize(inst));
  return j;
}

json checks_json(const std::vector<Check>& checks) {
  json arr = json::array();
  for (const auto& c : checks) {
    json j{{"name", c.name}, {"passed", c.passed}};
    if (!c.detail.empty()) j["detail"] = c.detail;
    arr.push_back(j);
  }
  return arr;
}

bool all_passed(const std::vector<Check>& checks) {
  for (const auto& c : checks)
    if (!c.passed) return false;
  return true;
}

const char* const kCsvColumns =
    "m,n,letters,mode,status,length,formula_value,match,explored,elapsed_ms";

std::string csv_field(const json& v) {
  if (v.is_null()) return "";
  if (v.is_string()) {
    std::string s = v.get<std::string>();
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) out += c == '"' ? std::string("\"\"") : std::string(1, c);
    return out + "\"";
  }
  if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
  return v.dump();
}

void print_text(std::ostream& os, const json& j, int indent = 0) {
  const std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
  if (j.is_object()) {
    for (const auto& [key, value] : j.items()) {
      if (value.is_structured() && !value.empty()) {
        os << pad << key << ":\n";
        print_text(os, value, indent + 1);
      } else {
        os << pad << key << ": " << (value.is_string() ? value.get<std::string>() : value.dump())
           << "\n";
      }
    }
  } else if (j.is_array()) {
    for (const auto& item : j) {
      if (item.is_object()) {
        // One line per flat object, nested objects expanded below.
        std::string line;
        bool nested = false;
        for (const auto& [key, value] : item.items()) {
          if (value.is_structured()) {
            nested = true;
            continue;
          }
          line += (line.empty() ? "" : "  ") + key + "=" +
                  (value.is_string() ? value.get<std::string>() : value.dump());
        }
        os << pad << "- " << line << "\n";
        if (nested)
          for (const auto& [key, value] : item.items())
            if (value.is_structured()) {
              os << pad << "  " << key << ":\n";
              print_text(os, value, indent + 2);
            }
      } else {
        os << pad << "- " << (item.is_string() ? item.get<std::string>() : item.dump()) << "\n";
      }
    }
  } else {
    os << pad << (j.is_string() ? j.get<std::string>() : j.dump()) << "\n";
  }
}

/// Emits the report; CSV uses `rows` when present, else the check list.
void emit(const json& report, const Config& cfg, const json& timing) {
  if (cfg.format == "json") {
    json full = report;
    full["timing"] = timing;
    std::cout << full.dump(2) << "\n";
  } else if (cfg.format == "csv") {
    if (report.contains("rows")) {
      std::cout << kCsvColumns << "\n";
      const json* trows = timing.contains("rows") ? &timing["rows"] : nullptr;
      for (std::size_t i = 0; i < report["rows"].size(); ++i) {
        const auto& r = report["rows"][i];
        auto get = [&](const char* key) { return r.contains(key) ? r[key] : json(); };
        json elapsed = trows && i < trows->size() ? (*trows)[i] : json();
        std::cout << csv_field(get("m")) << "," << csv_field(get("n")) << ","
                  << csv_field(get("letters")) << "," << csv_field(get("mode")) << ","
                  << csv_field(get("status")) << "," << csv_field(get("length")) << ","
                  << csv_field(get("formula_value")) << "," << csv_field(get("match")) << ","
                  << csv_field(get("explored")) << "," << csv_field(elapsed) << "\n";
      }
    } else {
      std::cout << "name,passed,detail\n";
      if (report.contains("checks"))
        for (const auto& c : report["checks"])
          std::cout << csv_field(c["name"]) << "," << csv_field(c["passed"]) << ","
                    << csv_field(c.contains("detail") ? c["detail"] : json()) << "\n";
    }
  } else {
    print_text(std::cout, report);
    if (!timing.empty() && timing.contains("elapsed_ms"))
      std::cout << "elapsed_ms: " << timing["elapsed_ms"].dump() << "\n";
  }
}

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

json command_echo(const std::string& name, json args, const Config& cfg) {
  args["format"] = cfg.format;
  args["determinism"] = cfg.determinism;
  args["budget"] = {{"max_nodes", cfg.budget.max_nodes},
                    {"max_length", cfg.budget.max_length},
                    {"max_memory", cfg.budget.max_memory}};
  return {{"name", name}, {"args", args}};
}

int status_exit(Status s) {
  switch (s) {
    case Status::found: return kOk;
    case Status::budget_exceeded: return kBudget;
    default: return kNegative;
  }
}

json row_json(const ExperimentRow& r) {
  json j;
  j["m"] = r.m ? json(*r.m) : json();
  j["n"] = r.n;
  j["letters"] = r.letters;
  j["mode"] = r.mode;
  j["status"] = r.status;
  j["length"] = r.length ? json(*r.length) : json();
  j["formula_value"] = r.formula ? json(*r.formula) : json();
  j["match"] = r.match ? json(*r.match) : json();
  j["explored"] = r.explored;
  if (!r.note.empty()) j["note"] = r.note;
  return j;
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path);
  out << text;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// --- commands ----------------------------------------------------------------

int cmd_shortest(const std::string& file, const std::string& mode_name, const Config& cfg) {
  const auto start = Clock::now();
  const Instance inst = read_instance_file(file);
  const auto mode = mode_from_string(mode_name);
  if (!mode) throw CLI::ValidationError("--mode", "unknown mode " + mode_name);
  const Automaton& a = inst.automaton;
  if (*mode == Mode::classic && a.kind() != Kind::dfa)
    throw CLI::ValidationError("--mode", "classic mode needs a dfa");
  if ((*mode == Mode::careful || *mode == Mode::subset) && !a.single_valued())
    throw CLI::ValidationError("--mode", "careful and subset modes need a dfa or pfa");
  if (*mode == Mode::subset && !inst.subset)
    throw CLI::ValidationError("--mode", "subset mode needs a subset section");

  const auto r = detail::run_engine(a, inst.subset, *mode, cfg.budget);
  json result{{"mode", mode_name}, {"status", to_string(r.status)}};
  if (r.found()) {
    result["length"] = r.length;
    result["witness"] = witness_json(a.alphabet(), r.witness, cfg);
  }
  result["explored"] = r.explored;

  json report{{"command", command_echo("shortest", {{"file", file}, {"mode", mode_name}}, cfg)},
              {"instance", instance_json(inst)},
              {"results", json::array({result})}};
  json row{{"m", nullptr},          {"n", a.states()},      {"letters", a.letters()},
           {"mode", mode_name},     {"status", to_string(r.status)},
           {"length", r.found() ? json(r.length) : json()}, {"formula_value", nullptr},
           {"match", nullptr},      {"explored", r.explored}};
  if (cfg.format == "csv") report["rows"] = json::array({row});
  emit(report, cfg,
       {{"elapsed_ms", ms_since(start)}, {"search_ms", to_ms(r.elapsed)},
        {"rows", json::array({to_ms(r.elapsed)})}});
  return status_exit(r.status);
}

int cmd_decide(const std::string& file, const std::string& problem, const Config& cfg) {
  const auto start = Clock::now();
  const Instance inst = read_instance_file(file);
  const Automaton& a = inst.automaton;
  detail::require_single_valued(a, "decide");
  SearchResult r;
  if (problem == "subset-sync") {
    if (!inst.subset) throw CLI::ValidationError("--problem", "subset-sync needs a subset section");
    r = shortest_subset_reset(a, *inst.subset, cfg.budget);
  } else if (problem == "careful-sync") {
    r = shortest_careful_reset(a, cfg.budget);
  } else {
    throw CLI::ValidationError("--problem", "unknown problem " + problem);
  }
  const char* answer = r.found() ? "yes" : r.status == Status::budget_exceeded ? "unknown" : "no";
  json report{{"command", command_echo("decide", {{"file", file}, {"problem", problem}}, cfg)},
              {"instance", instance_json(inst)},
              {"results", json::array({{{"problem", problem},
                                        {"answer", answer},
                                        {"status", to_string(r.status)},
                                        {"explored", r.explored}}})}};
  emit(report, cfg, {{"elapsed_ms", ms_since(start)}});
  return status_exit(r.status);
}

json metadata_json(const Instance& inst) {
  json j;
  if (inst.subset) j["subset"] = inst.subset->to_string();
  if (inst.partition) {
    json blocks = json::array();
    for (const auto& b : *inst.partition) blocks.push_back(b.to_string());
    j["partition"] = blocks;
  }
  if (inst.pairs) {
    json pairs = json::array();
    for (const auto& p : *inst.pairs)
      pairs.push_back(std::to_string(p.from) + ":" + std::to_string(p.to));
    j["pairs"] = pairs;
  }
  return j;
}

int write_or_print(const Instance& inst, const std::string& family, json args, const Config& cfg,
                   json extra, Clock::time_point start) {
  const std::string text = serialize(inst);
  if (cfg.output.empty()) {
    std::cout << text;
    return kOk;
  }
  write_text_file(cfg.output, text);
  args["output"] = cfg.output;
  json report{{"command", command_echo("build", args, cfg)},
              {"family", family},
              {"instance", instance_json(inst)},
              {"metadata", metadata_json(inst)}};
  for (auto& [k, v] : extra.items()) report[k] = v;
  emit(report, cfg, {{"elapsed_ms", ms_since(start)}});
  return kOk;
}

int cmd_build(const std::string& family, std::size_t m, std::size_t n, unsigned k,
              const std::string& xi, const Config& cfg) {
  const auto start = Clock::now();
  if (family == "lemma4") {
    if (!exact_log2(m)) throw CLI::ValidationError("--m", "m must be a power of two >= 2");
    std::optional<DeBruijnSeq> override;
    if (!xi.empty()) override = DeBruijnSeq{*exact_log2(m), xi};
    const auto L = build_lemma4(m, override);
    json extra{{"m", m},
               {"k", L.k},
               {"xi", L.xi.bits},
               {"cj_pairs", json::array()},
               {"cjr_pairs", json::array()}};
    for (const auto& p : L.cj_pairs)
      extra["cj_pairs"].push_back(std::to_string(p.from) + ":" + std::to_string(p.to));
    for (const auto& p : L.cjr_pairs)
      extra["cjr_pairs"].push_back(std::to_string(p.from) + ":" + std::to_string(p.to));
    return write_or_print(L.instance, family, {{"family", family}, {"m", m}}, cfg, extra, start);
  }
  if (family == "cerny") {
    if (n < 2) throw CLI::ValidationError("--n", "n must be at least 2");
    return write_or_print(cerny(n), family, {{"family", family}, {"n", n}}, cfg, json::object(),
                          start);
  }
  if (family == "debruijn") {
    if (k < 1) throw CLI::ValidationError("--k", "k must be at least 1");
    const auto seq = de_bruijn(k);
    const std::string text = "k " + std::to_string(k) + "\nbits " + seq.bits + "\n";
    if (cfg.output.empty()) {
      std::cout << text;
      return kOk;
    }
    write_text_file(cfg.output, text);
    json report{{"command", command_echo("build", {{"family", family}, {"k", k}}, cfg)},
                {"family", family},
                {"k", k},
                {"length", seq.bits.size()},
                {"bits", seq.bits},
                {"verified", verify_de_bruijn(seq.bits, k)}};
    emit(report, cfg, {{"elapsed_ms", ms_since(start)}});
    return kOk;
  }
  throw CLI::ValidationError("family", "unknown family " + family);
}

json reduction_json(const ReductionReport& r) {
  return {{"reduction", r.name},
          {"claimed_relation", r.claimed_relation},
          {"input", instance_json(r.input)},
          {"output", instance_json(r.output)},
          {"checks", checks_json(r.checks)},
          {"passed", r.ok()}};
}

std::vector<StatePair> pairs_or_augmenting(const Instance& inst, std::size_t at_least) {
  std::vector<StatePair> pairs = inst.pairs ? *inst.pairs : augmenting_pairs(inst.automaton);
  if (!inst.pairs)
    while (pairs.size() < at_least) pairs.push_back({0, 0});
  return pairs;
}

int cmd_reduce(const std::string& file, const std::string& lemma, const std::string& variant,
               std::size_t m, const std::string& bin_mode, const Config& cfg) {
  const auto start = Clock::now();
  json args{{"lemma", lemma}};
  json report;
  Instance output;
  bool passed = false;

  if (lemma == "chain") {
    if (!exact_log2(m)) throw CLI::ValidationError("--m", "m must be a power of two >= 2");
    if (variant != "subset" && variant != "careful")
      throw CLI::ValidationError("--variant", "variant must be subset or careful");
    const auto v = variant == "subset" ? ChainVariant::subset : ChainVariant::careful;
    const auto chain = theorem1_chain(m, v, cfg.budget);
    args["m"] = m;
    args["variant"] = variant;
    json stages = json::array();
    for (const auto& s : chain.stages) stages.push_back(reduction_json(s));
    report = {{"command", command_echo("reduce", args, cfg)},
              {"stages", stages},
              {"final", instance_json(chain.final_instance)},
              {"expected_states", chain.expected_states},
              {"witness", witness_json(chain.final_instance.automaton.alphabet(), chain.witness, cfg)},
              {"checks", checks_json(chain.checks)},
              {"passed", chain.ok()}};
    output = chain.final_instance;
    passed = chain.ok();
  } else {
    if (file.empty()) throw CLI::ValidationError("file", "an input file is required");
    const Instance inst = read_instance_file(file);
    args["file"] = file;
    ReductionReport rep;
    json extra;
    try {
      if (lemma == "1") {
        const auto r = add_sinks_determinize(inst, cfg.budget);
        rep = r.report;
        extra = {{"r0", r.r0}, {"witness", witness_json(rep.output.automaton.alphabet(), r.witness, cfg)}};
      } else if (lemma == "2") {
        const auto r = sc_lift_careful(inst, pairs_or_augmenting(inst, 0));
        rep = r.report;
      } else if (lemma == "3") {
        const auto r = sc_double_subset(inst, pairs_or_augmenting(inst, 2), cfg.budget);
        rep = r.report;
        extra = {{"r0", r.r0},
                 {"I", r.chosen + 1},
                 {"witness", witness_json(rep.output.automaton.alphabet(), r.witness, cfg)}};
      } else if (lemma == "5") {
        const auto r = mp_to_careful(inst, std::nullopt, cfg.budget);
        rep = r.report;
        extra = {{"relevant_states", r.relevant.states.size()},
                 {"witness", witness_json(rep.output.automaton.alphabet(), r.witness, cfg)}};
      } else if (lemma == "6") {
        if (bin_mode != "subset" && bin_mode != "careful")
          throw CLI::ValidationError("--binarize-mode", "must be subset or careful");
        const auto r = binarize(inst, bin_mode == "subset" ? BinarizeMode::subset
                                                           : BinarizeMode::careful);
        rep = r.report;
        json order = json::array();
        for (Letter x : r.order) order.push_back(inst.automaton.alphabet()[x]);
        extra = {{"letter_order", order}};
        args["binarize_mode"] = bin_mode;
      } else {
        throw CLI::ValidationError("--lemma", "unknown lemma " + lemma);
      }
    } catch (const BudgetExceeded&) {
      throw;
    } catch (const CLI::Error&) {
      throw;
    } catch (const ParseError&) {
      throw;
    } catch (const Error& e) {
      report = {{"command", command_echo("reduce", args, cfg)},
                {"input", instance_json(inst)},
                {"checks", checks_json({{"precondition", false, e.what()}})},
                {"passed", false}};
      emit(report, cfg, {{"elapsed_ms", ms_since(start)}});
      return kNegative;
    }
    report = {{"command", command_echo("reduce", args, cfg)}};
    const json summary = reduction_json(rep);
    for (auto& [k, v] : summary.items()) report[k] = v;
    for (auto& [k, v] : extra.items()) report[k] = v;
    output = rep.output;
    passed = rep.ok();
  }
  if (!cfg.output.empty()) {
    write_text_file(cfg.output, serialize(output));
    report["written"] = cfg.output;
  }
  emit(report, cfg, {{"elapsed_ms", ms_since(start)}});
  return passed ? kOk : kNegative;
}

DeBruijnSeq read_debruijn_file(const std::string& path) {
  std::istringstream in(read_text_file(path));
  std::string line, key;
  std::optional<unsigned> k;
  std::optional<std::string> bits;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    if (!(ls >> key)) continue;
    if (key == "k") {
      unsigned v = 0;
      if (!(ls >> v)) throw ParseError(number, "expected k <order>");
      k = v;
    } else if (key == "bits") {
      std::string v;
      if (!(ls >> v)) throw ParseError(number, "expected bits <word>");
      bits = v;
    } else {
      throw ParseError(number, "unknown key '" + key + "'");
    }
  }
  if (!k || !bits) throw ParseError(number, "de Bruijn file needs k and bits lines");
  return {*k, *bits};
}

int cmd_verify(const std::string& file, const std::string& check, bool skip_search,
               const Config& cfg) {
  const auto start = Clock::now();
  std::vector<Check> checks;
  json report{{"command", command_echo("verify", {{"file", file}, {"check", check}}, cfg)}};
  auto missing = [&](const char* section) {
    throw CLI::ValidationError("file", std::string("check needs a ") + section + " section");
  };

  if (check == "debruijn") {
    const auto seq = read_debruijn_file(file);
    checks.push_back({"de Bruijn property", verify_de_bruijn(seq.bits, seq.k),
                      "k=" + std::to_string(seq.k) + " bits=" + seq.bits});
  } else {
    const Instance inst = read_instance_file(file);
    const Automaton& a = inst.automaton;
    report["instance"] = instance_json(inst);
    if (check == "sc") {
      const auto c = scc_condensation(a);
      checks.push_back({"strongly connected", c.size() == 1,
                        std::to_string(c.size()) + " components"});
    } else if (check == "swap") {
      if (!inst.partition) missing("partition");
      try {
        checks.push_back({"swap congruence", verify_swap_congruence(a, *inst.partition), {}});
      } catch (const Error& e) {
        checks.push_back({"swap congruence", false, e.what()});
      }
    } else if (check == "mp") {
      if (!inst.subset) missing("subset");
      if (!inst.partition) missing("partition");
      const auto v = verify_mp(a, *inst.subset, *inst.partition, cfg.budget);
      std::string detail = v.reason;
      if (!v.ok)
        detail += "; word '" + render_word(a.alphabet(), v.word) + "' reaches " +
                  v.subset.to_string();
      checks.push_back({"M_P partition", v.ok, detail});
      if (!v.ok) report["violation"] = {{"word", render_word(a.alphabet(), v.word)},
                                        {"subset", v.subset.to_string()},
                                        {"reason", v.reason}};
    } else if (check == "cj") {
      if (!inst.pairs) missing("pairs");
      checks.push_back({"pairs strongly connect the automaton", verify_cj(a, *inst.pairs),
                        std::to_string(inst.pairs->size()) + " pairs"});
    } else if (check == "lemma4") {
      const auto xi = recover_xi(a);
      if (!xi) throw CLI::ValidationError("file", "state count does not fit 5m + log m + 3");
      bool valid_xi = verify_de_bruijn(xi->bits, xi->k);
      checks.push_back({"transitions encode a de Bruijn sequence", valid_xi, xi->bits});
      if (valid_xi) {
        const auto L = build_lemma4(std::size_t{1} << xi->k, *xi);
        checks.push_back({"automaton matches the construction", L.automaton() == a, {}});
        checks.push_back({"subset matches the construction", inst.subset == L.instance.subset, {}});
        checks.push_back(
            {"partition matches the construction", inst.partition == L.instance.partition, {}});
        auto battery = lemma4_battery(L, !skip_search, cfg.budget);
        checks.insert(checks.end(), battery.begin(), battery.end());
        report["m"] = L.m;
      }
    } else {
      throw CLI::ValidationError("--check", "unknown check " + check);
    }
  }
  report["checks"] = checks_json(checks);
  report["passed"] = all_passed(checks);
  emit(report, cfg, {{"elapsed_ms", ms_since(start)}});
  return all_passed(checks) ? kOk : kNegative;
}

std::vector<std::size_t> parse_list(const std::string& text) {
  std::vector<std::size_t> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) out.push_back(std::stoul(item));
  return out;
}

int cmd_experiment(const std::string& suite, std::size_t count, const std::string& ms,
                   const Config& cfg) {
  const auto start = Clock::now();
  ExperimentReport rep;
  json args{{"suite", suite}, {"seed", cfg.seed}};
  if (suite == "thresholds") {
    rep = thresholds_suite(parse_list(ms), {3, 4, 5, 6, 7, 8}, cfg.budget);
    args["m"] = ms;
  } else if (suite == "reduction-roundtrips") {
    rep = reduction_roundtrips_suite(cfg.seed, count ? count : 50, cfg.budget);
  } else if (suite == "oracle-cross") {
    rep = oracle_cross_suite(cfg.seed, count ? count : 100, 10, cfg.budget);
  } else if (suite == "nfa-modes") {
    rep = nfa_modes_suite(cfg.seed, count ? count : 50, cfg.budget);
  } else if (suite == "composition") {
    rep = composition_suite(cfg.seed, count ? count : 20, cfg.budget);
  } else {
    throw CLI::ValidationError("suite", "unknown suite " + suite);
  }
  if (count) args["count"] = count;
  json rows = json::array(), times = json::array();
  for (const auto& r : rep.rows) {
    rows.push_back(row_json(r));
    times.push_back(r.elapsed_ms);
  }
  json report{{"command", command_echo("experiment", args, cfg)},
              {"suite", rep.suite},
              {"checks", checks_json(rep.checks)},
              {"failures", rep.failures},
              {"passed", rep.ok()},
              {"rows", rows}};
  emit(report, cfg, {{"elapsed_ms", ms_since(start)}, {"rows", times}});
  return rep.ok() ? kOk : kNegative;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact synchronizing-word search, extremal constructions and reductions"};
  app.require_subcommand(1);
  app.fallthrough();

  Config cfg;
  apply_env(cfg.budget);
  app.add_option("--format", cfg.format, "Report format")
      ->check(CLI::IsMember({"json", "csv", "text"}));
  app.add_option("--determinism", cfg.determinism, "Search scheduling")
      ->check(CLI::IsMember({"strict", "fast"}));
  app.add_option("--seed", cfg.seed, "Seed for random suites");
  app.add_option("--max-nodes", cfg.budget.max_nodes, "Node cap (env SUBSYNC_MAX_NODES)");
  app.add_option("--max-length", cfg.budget.max_length, "Word length cap (env SUBSYNC_MAX_LENGTH)");
  app.add_option("--max-memory", cfg.budget.max_memory, "Memory cap in bytes (env SUBSYNC_MAX_MEMORY)");
  app.add_option("--witness-threshold", cfg.witness_threshold,
                 "Longest witness printed in full");
  app.add_flag("--full-witness", cfg.full_witness, "Always print witnesses in full");
  app.add_option("-o,--output", cfg.output, "Write the produced instance to this file");

  std::string file, mode = "subset", problem = "subset-sync", family, lemma, variant = "subset",
                    bin_mode = "subset", check, suite, xi, ms = "2,4,8";
  std::size_t m = 2, n = 3, count = 0;
  unsigned k = 1;
  bool skip_search = false;

  auto* shortest = app.add_subcommand("shortest", "Shortest reset word of the chosen kind");
  shortest->add_option("file", file)->required();
  shortest->add_option("--mode", mode)
      ->check(CLI::IsMember({"classic", "careful", "subset", "d1", "d2", "d3"}));

  auto* decide = app.add_subcommand("decide", "Existence of a (careful) reset word");
  decide->add_option("file", file)->required();
  decide->add_option("--problem", problem)->check(CLI::IsMember({"subset-sync", "careful-sync"}));

  auto* build = app.add_subcommand("build", "Write a family member in the automaton format");
  build->add_option("family", family)->required()->check(CLI::IsMember({"lemma4", "cerny", "debruijn"}));
  build->add_option("--m", m, "Switch count (power of two)");
  build->add_option("--n", n, "State count");
  build->add_option("--k", k, "de Bruijn order");
  build->add_option("--xi", xi, "Explicit de Bruijn sequence for lemma4");

  auto* reduce = app.add_subcommand("reduce", "Apply a threshold reduction");
  reduce->add_option("file", file);
  reduce->add_option("--lemma", lemma)->required()->check(CLI::IsMember({"1", "2", "3", "5", "6", "chain"}));
  reduce->add_option("--variant", variant, "Chain variant: subset or careful");
  reduce->add_option("--m", m, "Chain parameter");
  reduce->add_option("--binarize-mode", bin_mode, "Binarization: subset or careful");

  auto* verify = app.add_subcommand("verify", "Structural verifiers");
  verify->add_option("file", file)->required();
  verify->add_option("--check", check)->required()->check(
      CLI::IsMember({"sc", "swap", "mp", "cj", "debruijn", "lemma4"}));
  verify->add_flag("--skip-search", skip_search, "lemma4: skip the exact search");

  auto* experiment = app.add_subcommand("experiment", "Run an experiment suite");
  experiment->add_option("suite", suite)->required()->check(CLI::IsMember(
      {"thresholds", "reduction-roundtrips", "oracle-cross", "nfa-modes", "composition"}));
  experiment->add_option("--count", count, "Instances per suite item");
  experiment->add_option("--m", ms, "Comma-separated m values for thresholds");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }

  try {
    if (*shortest) return cmd_shortest(file, mode, cfg);
    if (*decide) return cmd_decide(file, problem, cfg);
    if (*build) return cmd_build(family, m, n, k, xi, cfg);
    if (*reduce) return cmd_reduce(file, lemma, variant, m, bin_mode, cfg);
    if (*verify) return cmd_verify(file, check, skip_search, cfg);
    if (*experiment) return cmd_experiment(suite, count, ms, cfg);
  } catch (const BudgetExceeded& e) {
    std::cerr << "budget exceeded: " << e.what() << "\n";
    return kBudget;
  } catch (const ParseError& e) {
    std::cerr << file << ": " << e.what() << "\n";
    return kUsage;
  } catch (const CLI::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
