#pragma once

#include <subsync/automaton.hpp>

#include <charconv>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

// Line-oriented automaton format:
//
//   kind dfa|pfa|nfa
//   states <n>
//   letters <tok> <tok> ...
//   <src> <tok> <dst>[,<dst>...]      or      <src> <tok> -
//   subset <id> ...
//   partition <id,..>|<id,..>|...
//   pairs <r>:<q> ...
//   labels <id>=<name> ...
//
// `#` starts a comment. Omitted (state, letter) cells are undefined for
// pfa/nfa and an error for dfa.

namespace subsync {

class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

namespace detail {

inline std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    auto pos = s.find(sep, start);
    out.push_back(s.substr(start, pos == std::string_view::npos ? pos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

inline std::vector<std::string_view> tokens(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t' || s[i] == '\r')) ++i;
    std::size_t j = i;
    while (j < s.size() && s[j] != ' ' && s[j] != '\t' && s[j] != '\r') ++j;
    if (j > i) out.push_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

inline std::size_t parse_index(std::string_view s, std::size_t line, std::size_t bound,
                               std::string_view what) {
  std::size_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty())
    throw ParseError(line, "expected " + std::string(what) + ", got '" + std::string(s) + "'");
  if (v >= bound)
    throw ParseError(line, std::string(what) + " " + std::string(s) + " out of range");
  return v;
}

}  // namespace detail

inline Instance parse_instance(std::string_view text) {
  struct Line {
    std::size_t number;
    std::vector<std::string_view> toks;
  };
  std::vector<Line> lines;
  {
    std::size_t number = 0;
    for (auto raw : detail::split(text, '\n')) {
      ++number;
      auto hash = raw.find('#');
      if (hash != std::string_view::npos) raw = raw.substr(0, hash);
      auto toks = detail::tokens(raw);
      if (!toks.empty()) lines.push_back({number, std::move(toks)});
    }
  }
  auto header = [&](std::size_t i, std::string_view key) -> const Line& {
    if (i >= lines.size())
      throw ParseError(lines.empty() ? 1 : lines.back().number, "missing '" + std::string(key) + "' header");
    const auto& l = lines[i];
    if (l.toks[0] != key)
      throw ParseError(l.number, "malformed header: expected '" + std::string(key) + "'");
    return l;
  };

  const auto& kind_line = header(0, "kind");
  if (kind_line.toks.size() != 2) throw ParseError(kind_line.number, "malformed header: kind");
  auto kind = kind_from_string(kind_line.toks[1]);
  if (!kind) throw ParseError(kind_line.number, "unknown kind '" + std::string(kind_line.toks[1]) + "'");

  const auto& states_line = header(1, "states");
  if (states_line.toks.size() != 2) throw ParseError(states_line.number, "malformed header: states");
  const std::size_t n = detail::parse_index(states_line.toks[1], states_line.number,
                                            std::size_t{1} << 31, "state count");
  if (n == 0) throw ParseError(states_line.number, "automaton needs at least one state");

  const auto& letters_line = header(2, "letters");
  if (letters_line.toks.size() < 2) throw ParseError(letters_line.number, "malformed header: letters");
  Alphabet alphabet;
  try {
    alphabet = Alphabet(std::vector<std::string>(letters_line.toks.begin() + 1, letters_line.toks.end()));
  } catch (const Error& e) {
    throw ParseError(letters_line.number, e.what());
  }

  AutomatonBuilder builder(*kind, n, alphabet);
  std::vector<bool> seen(n * alphabet.size(), false);
  Instance inst;
  std::vector<std::string> labels;
  bool have_subset = false, have_partition = false, have_pairs = false, have_labels = false;
  auto once = [](bool& flag, const Line& l) {
    if (flag) throw ParseError(l.number, "duplicate '" + std::string(l.toks[0]) + "' section");
    flag = true;
  };

  for (std::size_t i = 3; i < lines.size(); ++i) {
    const auto& l = lines[i];
    const auto key = l.toks[0];
    if (key == "subset") {
      once(have_subset, l);
      StateSet s(n);
      for (std::size_t t = 1; t < l.toks.size(); ++t)
        s.insert(static_cast<State>(detail::parse_index(l.toks[t], l.number, n, "state")));
      if (s.empty()) throw ParseError(l.number, "subset must be nonempty");
      inst.subset = std::move(s);
    } else if (key == "partition") {
      once(have_partition, l);
      std::vector<StateSet> blocks;
      StateSet used(n);
      if (l.toks.size() > 2) throw ParseError(l.number, "partition blocks must not contain spaces");
      if (l.toks.size() == 2) {
        for (auto block_text : detail::split(l.toks[1], '|')) {
          StateSet block(n);
          for (auto id : detail::split(block_text, ','))
            block.insert(static_cast<State>(detail::parse_index(id, l.number, n, "state")));
          if (used.intersects(block)) throw ParseError(l.number, "partition blocks must be disjoint");
          used |= block;
          blocks.push_back(std::move(block));
        }
      }
      inst.partition = std::move(blocks);
    } else if (key == "pairs") {
      once(have_pairs, l);
      std::vector<StatePair> pairs;
      for (std::size_t t = 1; t < l.toks.size(); ++t) {
        auto parts = detail::split(l.toks[t], ':');
        if (parts.size() != 2) throw ParseError(l.number, "pair must be <r>:<q>");
        pairs.push_back({static_cast<State>(detail::parse_index(parts[0], l.number, n, "state")),
                         static_cast<State>(detail::parse_index(parts[1], l.number, n, "state"))});
      }
      inst.pairs = std::move(pairs);
    } else if (key == "labels") {
      once(have_labels, l);
      labels.assign(n, "");
      for (std::size_t t = 1; t < l.toks.size(); ++t) {
        auto eq = l.toks[t].find('=');
        if (eq == std::string_view::npos) throw ParseError(l.number, "label must be <id>=<name>");
        auto id = detail::parse_index(l.toks[t].substr(0, eq), l.number, n, "state");
        labels[id] = std::string(l.toks[t].substr(eq + 1));
      }
    } else if (key == "kind" || key == "states" || key == "letters") {
      throw ParseError(l.number, "malformed header: '" + std::string(key) + "' repeated");
    } else {
      if (l.toks.size() != 3) throw ParseError(l.number, "transition must be <src> <letter> <dst>");
      const auto src = static_cast<State>(detail::parse_index(l.toks[0], l.number, n, "state"));
      auto letter = alphabet.index_of(l.toks[1]);
      if (!letter) throw ParseError(l.number, "unknown letter '" + std::string(l.toks[1]) + "'");
      const std::size_t cell = src * alphabet.size() + *letter;
      if (seen[cell]) throw ParseError(l.number, "duplicate transition");
      seen[cell] = true;
      if (l.toks[2] == "-") continue;
      auto dsts = detail::split(l.toks[2], ',');
      if (*kind != Kind::nfa && dsts.size() != 1)
        throw ParseError(l.number, std::string(to_string(*kind)) + " transitions must be single-valued");
      for (auto d : dsts)
        builder.add(src, *letter, static_cast<State>(detail::parse_index(d, l.number, n, "state")));
    }
  }

  if (*kind == Kind::dfa) {
    for (std::size_t c = 0; c < seen.size(); ++c)
      if (builder.cell(static_cast<State>(c / alphabet.size()), static_cast<Letter>(c % alphabet.size())).empty())
        throw ParseError(lines.back().number,
                         "dfa must be total: state " + std::to_string(c / alphabet.size()) +
                             ", letter " + alphabet[static_cast<Letter>(c % alphabet.size())] + " undefined");
  }
  if (have_labels) builder.labels(labels);
  inst.automaton = builder.build();
  return inst;
}

/// Canonical text: states ascending, letters in declared order, successor
/// lists ascending, every cell listed.
inline std::string serialize(const Instance& inst) {
  const auto& a = inst.automaton;
  std::ostringstream out;
  out << "kind " << to_string(a.kind()) << '\n';
  out << "states " << a.states() << '\n';
  out << "letters";
  for (const auto& tok : a.alphabet().symbols()) out << ' ' << tok;
  out << '\n';
  for (State s = 0; s < a.states(); ++s) {
    for (Letter x = 0; x < a.letters(); ++x) {
      out << s << ' ' << a.alphabet()[x] << ' ';
      auto succ = a.successors(s, x);
      if (succ.empty()) out << '-';
      for (std::size_t i = 0; i < succ.size(); ++i) out << (i ? "," : "") << succ[i];
      out << '\n';
    }
  }
  if (inst.subset) {
    out << "subset";
    inst.subset->for_each([&](State s) { out << ' ' << s; });
    out << '\n';
  }
  if (inst.partition) {
    out << "partition";
    for (std::size_t b = 0; b < inst.partition->size(); ++b) {
      const auto& block = (*inst.partition)[b];
      if (block.empty()) throw Error("cannot serialize an empty partition block");
      out << (b ? "|" : " ");
      bool first = true;
      block.for_each([&](State s) {
        out << (first ? "" : ",") << s;
        first = false;
      });
    }
    out << '\n';
  }
  if (inst.pairs) {
    out << "pairs";
    for (const auto& p : *inst.pairs) out << ' ' << p.from << ':' << p.to;
    out << '\n';
  }
  if (a.has_labels()) {
    out << "labels";
    for (State s = 0; s < a.states(); ++s) {
      const auto& name = a.labels()[s];
      if (name.empty()) continue;
      if (name.find_first_of(" \t\r\n#") != std::string::npos)
        throw Error("label '" + name + "' contains whitespace or '#'");
      out << ' ' << s << '=' << name;
    }
    out << '\n';
  }
  return out.str();
}

inline Instance read_instance_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_instance(buf.str());
}

inline void write_instance_file(const std::string& path, const Instance& inst) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write '" + path + "'");
  out << serialize(inst);
}

}  // namespace subsync
