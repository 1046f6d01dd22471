#pragma once

// Text formats for nested words and automata, plus DOT and JSON emitters.
//
// Nested word:           Automaton:
//   word a b a c            alphabet a b
//   m1 (1,3)                states q0 q1
//   m2 (1,4) (2,3)          hier p
//                           initial q0
//                           final q1
//                           cc q0 a p p q1
//
// Lines whose first non-blank character is '#' are comments; '#' inside a
// line is an ordinary symbol.

#include <wavelang/automaton.hpp>
#include <wavelang/core.hpp>
#include <wavelang/grammar.hpp>

#include <json.hpp>

#include <cctype>
#include <charconv>
#include <istream>
#include <sstream>
#include <string>
#include <vector>

namespace wavelang::io {

namespace detail {

struct Token {
  std::string text;
  std::size_t column;  // 1-based
};

struct Line {
  std::size_t number;
  std::vector<Token> tokens;
};

inline std::vector<Line> tokenize(std::istream& in) {
  std::vector<Line> out;
  std::string raw;
  std::size_t number = 0;
  while (std::getline(in, raw)) {
    ++number;
    if (!raw.empty() && raw.back() == '\r') raw.pop_back();
    Line line{number, {}};
    std::size_t i = 0;
    while (i < raw.size()) {
      while (i < raw.size() && std::isspace(static_cast<unsigned char>(raw[i]))) ++i;
      if (i >= raw.size()) break;
      std::size_t j = i;
      while (j < raw.size() && !std::isspace(static_cast<unsigned char>(raw[j]))) ++j;
      line.tokens.push_back({raw.substr(i, j - i), i + 1});
      i = j;
    }
    if (line.tokens.empty() || line.tokens.front().text.front() == '#') continue;
    out.push_back(std::move(line));
  }
  return out;
}

inline std::size_t parse_number(const std::string& s, std::size_t line, std::size_t column) {
  std::size_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty()) {
    throw ParseError(line, column, "expected a position, got '" + s + "'");
  }
  return v;
}

inline Arch parse_arch(const Token& t, std::size_t line) {
  const auto& s = t.text;
  auto comma = s.find(',');
  if (s.size() < 5 || s.front() != '(' || s.back() != ')' || comma == std::string::npos) {
    throw ParseError(line, t.column, "expected an arch '(i,j)', got '" + s + "'");
  }
  return {parse_number(s.substr(1, comma - 1), line, t.column + 1),
          parse_number(s.substr(comma + 1, s.size() - comma - 2), line, t.column + comma + 1)};
}

inline const Line& expect_keyword(const std::vector<Line>& lines, std::size_t idx, const std::string& kw) {
  if (idx >= lines.size()) {
    std::size_t at = lines.empty() ? 1 : lines.back().number + 1;
    throw ParseError(at, 1, "missing '" + kw + "' line");
  }
  const auto& l = lines[idx];
  if (l.tokens.front().text != kw) {
    throw ParseError(l.number, l.tokens.front().column,
                     "expected '" + kw + "', got '" + l.tokens.front().text + "'");
  }
  return l;
}

inline Matching parse_matching(const Line& l, std::size_t n) {
  std::vector<Arch> arches;
  for (std::size_t i = 1; i < l.tokens.size(); ++i) arches.push_back(parse_arch(l.tokens[i], l.number));
  try {
    return Matching::make(std::move(arches), n);
  } catch (const MatchingError& e) {
    throw ParseError(l.number, l.tokens.front().column, e.what());
  }
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Nested words

inline NestedWord2 parse_nested_word(std::istream& in) {
  auto lines = detail::tokenize(in);
  const auto& wl = detail::expect_keyword(lines, 0, "word");
  std::vector<std::string> letters;
  for (std::size_t i = 1; i < wl.tokens.size(); ++i) letters.push_back(wl.tokens[i].text);
  const std::size_t n = letters.size();
  auto m1 = detail::parse_matching(detail::expect_keyword(lines, 1, "m1"), n);
  auto m2 = detail::parse_matching(detail::expect_keyword(lines, 2, "m2"), n);
  if (lines.size() > 3) {
    throw ParseError(lines[3].number, lines[3].tokens.front().column, "unexpected trailing line");
  }
  return NestedWord2(std::move(letters), std::move(m1), std::move(m2));
}

inline NestedWord2 parse_nested_word(const std::string& text) {
  std::istringstream in(text);
  return parse_nested_word(in);
}

inline std::string format_nested_word(const NestedWord2& w) {
  std::string out = "word";
  for (const auto& l : w.letters()) out += " " + l;
  for (int k = 1; k <= 2; ++k) {
    out += k == 1 ? "\nm1" : "\nm2";
    for (const auto& a : w.matching(k).arches()) out += " " + to_string(a);
  }
  return out + "\n";
}

// ---------------------------------------------------------------------------
// Automata

inline Automaton2NW parse_automaton(std::istream& in) {
  Automaton2NW a;
  for (const auto& line : detail::tokenize(in)) {
    const auto& head = line.tokens.front();
    auto rest = [&](auto&& f) {
      for (std::size_t i = 1; i < line.tokens.size(); ++i) f(line.tokens[i]);
    };
    auto state = [&](const detail::Token& t) {
      auto id = a.state_id(t.text);
      if (!id) throw ParseError(line.number, t.column, "undeclared state '" + t.text + "'");
      return *id;
    };
    auto hier = [&](const detail::Token& t) {
      auto id = a.hier_id(t.text);
      if (!id) throw ParseError(line.number, t.column, "undeclared hierarchical state '" + t.text + "'");
      return *id;
    };
    if (head.text == "alphabet") {
      rest([&](const detail::Token& t) { a.add_letter(t.text); });
    } else if (head.text == "states") {
      rest([&](const detail::Token& t) { a.add_state(t.text); });
    } else if (head.text == "hier") {
      rest([&](const detail::Token& t) { a.add_hier(t.text); });
    } else if (head.text == "initial") {
      rest([&](const detail::Token& t) { a.set_initial(state(t)); });
    } else if (head.text == "final") {
      rest([&](const detail::Token& t) { a.set_final(state(t)); });
    } else if (auto kind = parse_kind(head.text)) {
      const int ins = (kind->upper == Status::Return) + (kind->lower == Status::Return);
      const int outs = (kind->upper == Status::Call) + (kind->lower == Status::Call);
      const std::size_t want = 4 + ins + outs;
      if (line.tokens.size() != want) {
        throw ParseError(line.number, head.column,
                         "transition of kind " + head.text + " needs " + std::to_string(want - 1) +
                             " fields, got " + std::to_string(line.tokens.size() - 1));
      }
      const auto& tk = line.tokens;
      Transition t;
      t.kind = *kind;
      std::size_t i = 1;
      t.src = state(tk[i++]);
      if (kind->upper == Status::Return) t.in1 = hier(tk[i++]);
      if (kind->lower == Status::Return) t.in2 = hier(tk[i++]);
      auto letter = a.letter_id(tk[i].text);
      if (!letter) throw ParseError(line.number, tk[i].column, "letter '" + tk[i].text + "' not in alphabet");
      t.letter = *letter;
      ++i;
      if (kind->upper == Status::Call) t.out1 = hier(tk[i++]);
      if (kind->lower == Status::Call) t.out2 = hier(tk[i++]);
      t.dst = state(tk[i]);
      a.add_transition(t);
    } else {
      throw ParseError(line.number, head.column, "unknown directive '" + head.text + "'");
    }
  }
  return a;
}

inline Automaton2NW parse_automaton(const std::string& text) {
  std::istringstream in(text);
  return parse_automaton(in);
}

inline std::string format_transition(const Automaton2NW& a, const Transition& t) {
  std::string out = t.kind.name() + " " + a.states()[t.src];
  if (t.in1 != kNone) out += " " + a.hier()[t.in1];
  if (t.in2 != kNone) out += " " + a.hier()[t.in2];
  out += " " + a.alphabet()[t.letter];
  if (t.out1 != kNone) out += " " + a.hier()[t.out1];
  if (t.out2 != kNone) out += " " + a.hier()[t.out2];
  return out + " " + a.states()[t.dst];
}

inline std::string format_automaton(const Automaton2NW& a) {
  std::string out;
  auto list = [&](const char* kw, const std::vector<std::string>& names) {
    out += kw;
    for (const auto& n : names) out += " " + n;
    out += "\n";
  };
  auto names = [&](const std::vector<StateId>& ids) {
    std::vector<std::string> v;
    for (auto q : ids) v.push_back(a.states()[q]);
    return v;
  };
  list("alphabet", a.alphabet());
  list("states", a.states());
  list("hier", a.hier());
  list("initial", names(a.initial()));
  list("final", names(a.final_states()));
  for (std::size_t k = 0; k < 9; ++k)
    for (const auto& t : a.transitions(PositionKind::from_index(k))) out += format_transition(a, t) + "\n";
  return out;
}

// ---------------------------------------------------------------------------
// Runs

inline std::string format_run(const Automaton2NW& a, const NestedWord2& w, const Run& r) {
  std::string out = "linear";
  for (auto q : r.linear) out += " " + a.states()[q];
  out += "\nh1";
  for (Position p = 1; p <= w.size(); ++p)
    if (r.h1[p] != kNone) out += " " + std::to_string(p) + ":" + a.hier()[r.h1[p]];
  out += "\nh2";
  for (Position p = 1; p <= w.size(); ++p)
    if (r.h2[p] != kNone) out += " " + std::to_string(p) + ":" + a.hier()[r.h2[p]];
  return out + "\n";
}

inline nlohmann::json run_json(const Automaton2NW& a, const NestedWord2& w, const Run& r) {
  nlohmann::json j;
  j["linear"] = nlohmann::json::array();
  for (auto q : r.linear) j["linear"].push_back(a.states()[q]);
  for (int k = 1; k <= 2; ++k) {
    auto& h = j[k == 1 ? "h1" : "h2"] = nlohmann::json::object();
    const auto& labels = k == 1 ? r.h1 : r.h2;
    for (Position p = 1; p <= w.size(); ++p)
      if (labels[p] != kNone) h[std::to_string(p)] = a.hier()[labels[p]];
  }
  return j;
}

// ---------------------------------------------------------------------------
// JSON

inline nlohmann::json nested_word_json(const NestedWord2& w) {
  nlohmann::json j;
  j["word"] = w.letters();
  for (int k = 1; k <= 2; ++k) {
    auto arr = nlohmann::json::array();
    for (const auto& a : w.matching(k).arches()) arr.push_back({a.call, a.ret});
    j[k == 1 ? "m1" : "m2"] = arr;
  }
  return j;
}

inline nlohmann::json certificate_json(const WaveCertificate& c) {
  nlohmann::json j;
  j["wave"] = c.is_wave;
  auto ref = [](const ArchRef& r) { return nlohmann::json{{"matching", r.matching}, {"arch", {r.arch.call, r.arch.ret}}}; };
  j["covering"] = nlohmann::json::array();
  for (const auto& [r, wv] : c.covering) {
    auto e = ref(r);
    e["wave"] = {wv.i1, wv.i2, wv.i3, wv.i4};
    j["covering"].push_back(e);
  }
  j["uncovered"] = nlohmann::json::array();
  for (const auto& r : c.uncovered) j["uncovered"].push_back(ref(r));
  j["witness"] = c.witness ? ref(*c.witness) : nlohmann::json(nullptr);
  return j;
}

inline nlohmann::json derivation_json(const Derivation& d) {
  nlohmann::json j;
  j["rule"] = std::string(rule_name(d.rule));
  j["span"] = nlohmann::json::array();
  const int parts = is_w_rule(d.rule) ? 1 : 2;
  for (int i = 0; i < parts; ++i) j["span"].push_back({d.span[i].first, d.span[i].last});
  if (!d.boundary.empty()) {
    j["boundary"] = nlohmann::json::array();
    for (std::size_t i = 0; i < d.boundary.size(); ++i) {
      j["boundary"].push_back({{"position", d.boundary_positions[i]}, {"letter", to_string(d.boundary[i])}});
    }
  }
  j["children"] = nlohmann::json::array();
  for (const auto& c : d.children) j["children"].push_back(derivation_json(c));
  return j;
}

inline std::string format_certificate(const WaveCertificate& c) {
  std::string out = c.is_wave ? "wave word\n" : "not a wave word\n";
  for (const auto& [r, wv] : c.covering) {
    out += "  " + to_string(r) + " in wave (" + std::to_string(wv.i1) + "," + std::to_string(wv.i2) + "," +
           std::to_string(wv.i3) + "," + std::to_string(wv.i4) + ")\n";
  }
  for (const auto& r : c.uncovered) out += "  " + to_string(r) + " uncovered\n";
  if (c.witness) out += "witness " + to_string(*c.witness) + "\n";
  return out;
}

inline std::string format_derivation(const Derivation& d, int depth = 0) {
  std::string out(2 * depth, ' ');
  out += std::string(rule_name(d.rule)) + " [" + std::to_string(d.span[0].first) + "," +
         std::to_string(d.span[0].last) + "]";
  if (!is_w_rule(d.rule)) {
    out += " [" + std::to_string(d.span[1].first) + "," + std::to_string(d.span[1].last) + "]";
  }
  for (std::size_t i = 0; i < d.boundary.size(); ++i) {
    out += " " + std::to_string(d.boundary_positions[i]) + ":" + to_string(d.boundary[i]);
  }
  out += "\n";
  for (const auto& c : d.children) out += format_derivation(c, depth + 1);
  return out;
}

// ---------------------------------------------------------------------------
// DOT

inline std::string dot_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}

/// Positions left to right; M1 arches leave and enter through the top port,
/// M2 arches through the bottom one.
inline std::string nested_word_dot(const NestedWord2& w) {
  std::ostringstream o;
  o << "digraph nested_word {\n  rankdir=LR;\n  node [shape=circle];\n";
  for (Position p = 1; p <= w.size(); ++p) {
    o << "  p" << p << " [label=\"" << p << ":" << dot_escape(w.letter(p)) << "\"];\n";
  }
  for (Position p = 1; p < w.size(); ++p) o << "  p" << p << " -> p" << p + 1 << ";\n";
  for (const auto& a : w.m1().arches()) {
    o << "  p" << a.call << ":n -> p" << a.ret << ":n [label=\"m1\", constraint=false, style=dashed];\n";
  }
  for (const auto& a : w.m2().arches()) {
    o << "  p" << a.call << ":s -> p" << a.ret << ":s [label=\"m2\", constraint=false, style=dotted];\n";
  }
  o << "}\n";
  return o.str();
}

inline std::string automaton_dot(const Automaton2NW& a) {
  std::ostringstream o;
  o << "digraph automaton {\n  rankdir=LR;\n  node [shape=circle];\n";
  for (StateId q = 0; q < static_cast<StateId>(a.num_states()); ++q) {
    o << "  s" << q << " [label=\"" << dot_escape(a.states()[q]) << "\"";
    if (a.is_final(q)) o << ", shape=doublecircle";
    o << "];\n";
    if (a.is_initial(q)) o << "  init" << q << " [shape=point];\n  init" << q << " -> s" << q << ";\n";
  }
  for (std::size_t k = 0; k < 9; ++k) {
    for (const auto& t : a.transitions(PositionKind::from_index(k))) {
      std::string label = a.alphabet()[t.letter] + " " + t.kind.name();
      auto add = [&](const char* pre, HierId h) {
        if (h != kNone) label += std::string(" ") + pre + a.hier()[h];
      };
      add("<1:", t.in1);
      add("<2:", t.in2);
      add(">1:", t.out1);
      add(">2:", t.out2);
      o << "  s" << t.src << " -> s" << t.dst << " [label=\"" << dot_escape(label) << "\"];\n";
    }
  }
  o << "}\n";
  return o.str();
}

inline std::string derivation_dot(const Derivation& d) {
  std::ostringstream o;
  o << "digraph derivation {\n  node [shape=box];\n";
  int next = 0;
  auto emit = [&](auto&& self, const Derivation& n) -> int {
    const int id = next++;
    std::string label = std::string(rule_name(n.rule)) + "\\n[" + std::to_string(n.span[0].first) + "," +
                        std::to_string(n.span[0].last) + "]";
    if (!is_w_rule(n.rule)) {
      label += " [" + std::to_string(n.span[1].first) + "," + std::to_string(n.span[1].last) + "]";
    }
    o << "  n" << id << " [label=\"" << label << "\"];\n";
    for (const auto& c : n.children) {
      const int cid = self(self, c);
      o << "  n" << id << " -> n" << cid << ";\n";
    }
    return id;
  };
  emit(emit, d);
  o << "}\n";
  return o.str();
}

}  // namespace wavelang::io
