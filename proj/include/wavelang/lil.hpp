#pragma once

// Encoding of accepting runs of nice 2NWA as words over a paired alphabet.
// A run becomes a Dyck word whose image under g is Dyck as well: the
// hierarchical symbols of the word itself are balanced along M2 and their
// images under g along M1.  The states between blocks make the word a member
// of the regular language Q0 . tau(Delta)* . bar(Qf).

#include <wavelang/automaton.hpp>
#include <wavelang/core.hpp>
#include <wavelang/decide.hpp>
#include <wavelang/error.hpp>

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

namespace wavelang::lil {

/// B = Q + Sigma and the indexed hierarchical symbols (p,1), (p,2).
enum class SymKind : std::uint8_t { State, Letter, Hier };

struct Symbol {
  SymKind kind = SymKind::State;
  int id = 0;
  int index = 0;  // 1 or 2 for Hier, 0 otherwise
  bool bar = false;

  auto operator<=>(const Symbol&) const = default;
};

using PairedWord = std::vector<Symbol>;

inline Symbol state(StateId q, bool bar = false) { return {SymKind::State, q, 0, bar}; }
inline Symbol letter(LetterId a, bool bar = false) { return {SymKind::Letter, a, 0, bar}; }
inline Symbol hier(HierId p, int index, bool bar = false) { return {SymKind::Hier, p, index, bar}; }

inline Symbol bar(Symbol s) {
  s.bar = !s.bar;
  return s;
}

/// bar(a1...an) = bar(an)...bar(a1)
inline PairedWord bar(const PairedWord& u) {
  PairedWord out;
  for (auto it = u.rbegin(); it != u.rend(); ++it) out.push_back(bar(*it));
  return out;
}

/// The matching of a Dyck word (plain letters open, barred letters close),
/// or nullopt when `u` is not Dyck.
inline std::optional<Matching> dyck_matching(const PairedWord& u) {
  std::vector<Position> stack;
  std::vector<Arch> arches;
  for (Position p = 1; p <= u.size(); ++p) {
    const Symbol& s = u[p - 1];
    if (!s.bar) {
      stack.push_back(p);
      continue;
    }
    if (stack.empty() || bar(u[stack.back() - 1]) != s) return std::nullopt;
    arches.push_back({stack.back(), p});
    stack.pop_back();
  }
  if (!stack.empty()) return std::nullopt;
  return Matching::make(std::move(arches), u.size());
}

inline bool is_dyck(const PairedWord& u) { return dyck_matching(u).has_value(); }

/// (a,1) -> (a,1), (a,2) -> bar(a,1), bar(a,1) -> bar(a,2), bar(a,2) -> (a,2);
/// symbols of B are erased.
inline PairedWord apply_g(const PairedWord& u) {
  PairedWord out;
  for (const Symbol& s : u) {
    if (s.kind != SymKind::Hier) continue;
    if (s.index == 1) {
      out.push_back(s.bar ? hier(s.id, 2, true) : s);
    } else if (s.index == 2) {
      out.push_back(s.bar ? hier(s.id, 2, false) : hier(s.id, 1, true));
    } else {
      throw Error(ErrorCode::UnknownLetter, "hierarchical symbol with index " + std::to_string(s.index));
    }
  }
  return out;
}

/// Keeps the plain letters of Sigma.
inline std::vector<LetterId> apply_f(const PairedWord& u) {
  std::vector<LetterId> out;
  for (const Symbol& s : u)
    if (s.kind == SymKind::Letter && !s.bar) out.push_back(s.id);
  return out;
}

inline std::vector<std::string> apply_f(const Automaton2NW& a, const PairedWord& u) {
  std::vector<std::string> out;
  for (LetterId l : apply_f(u)) {
    if (l < 0 || static_cast<std::size_t>(l) >= a.alphabet().size()) {
      throw Error(ErrorCode::UnknownLetter, "letter id " + std::to_string(l));
    }
    out.push_back(a.alphabet()[l]);
  }
  return out;
}

/// bar(q) a bar(a) [hierarchical symbol] q'
inline PairedWord tau(const Transition& t) {
  PairedWord out{state(t.src, true), letter(t.letter), letter(t.letter, true)};
  if (t.kind == kinds::cc) out.push_back(hier(t.out1, 1));
  else if (t.kind == kinds::rc) out.push_back(hier(t.in1, 2));
  else if (t.kind == kinds::cr) out.push_back(hier(t.in2, 2, true));
  else if (t.kind == kinds::rr) out.push_back(hier(t.in1, 1, true));
  else if (t.kind != kinds::ii) throw Error(ErrorCode::MixedKind, "no block for kind " + t.kind.name());
  out.push_back(state(t.dst));
  return out;
}

/// l0 . tau(d1 ... dn) . bar(ln) for an accepting run of a nice automaton.
inline PairedWord encode(const Automaton2NW& a, const NestedWord2& w, const Run& run) {
  if (!is_nice(a)) throw Error(ErrorCode::NotNice, "automaton is not nice");
  if (!is_accepting_run(a, w, run)) throw Error(ErrorCode::NotAccepting, "run is not an accepting run on the word");
  PairedWord out{state(run.linear.front())};
  for (Position p = 1; p <= w.size(); ++p) {
    auto block = tau(transition_at(w, run, *a.letter_id(w.letter(p)), p));
    out.insert(out.end(), block.begin(), block.end());
  }
  out.push_back(state(run.linear.back(), true));
  return out;
}

/// Splits `u` into the initial state and the transitions whose blocks follow;
/// nullopt unless u is in Q0 . tau(Delta)* . bar(Qf).
inline std::optional<std::vector<Transition>> parse_blocks(const Automaton2NW& a, const PairedWord& u) {
  if (u.size() < 2) return std::nullopt;
  const Symbol& first = u.front();
  const Symbol& last = u.back();
  if (first.kind != SymKind::State || first.bar || !a.is_initial(first.id)) return std::nullopt;
  if (last.kind != SymKind::State || !last.bar || !a.is_final(last.id)) return std::nullopt;

  std::map<PairedWord, Transition> blocks;
  for (auto k : {kinds::ii, kinds::cc, kinds::rc, kinds::cr, kinds::rr})
    for (const auto& t : a.transitions(k)) blocks.emplace(tau(t), t);

  std::vector<Transition> out;
  std::size_t i = 1;
  const std::size_t end = u.size() - 1;
  while (i < end) {
    std::size_t len = (i + 3 < end && u[i + 3].kind == SymKind::Hier) ? 5 : 4;
    if (i + len > end) return std::nullopt;
    auto it = blocks.find(PairedWord(u.begin() + i, u.begin() + i + len));
    if (it == blocks.end()) return std::nullopt;
    out.push_back(it->second);
    i += len;
  }
  return out;
}

inline bool in_r(const Automaton2NW& a, const PairedWord& u) { return parse_blocks(a, u).has_value(); }

struct Decoded {
  NestedWord2 word;
  Run run;
};

/// Inverse of encode on R, Dyck words and g-preimages of Dyck words.
inline Decoded decode(const Automaton2NW& a, const PairedWord& u) {
  if (!is_nice(a)) throw Error(ErrorCode::NotNice, "automaton is not nice");
  auto ts = parse_blocks(a, u);
  if (!ts) throw Error(ErrorCode::NotInR, "word is not in Q0 tau(Delta)* bar(Qf)");
  if (!is_dyck(u)) throw Error(ErrorCode::NotDyck, "word is not a Dyck word");
  const PairedWord gu = apply_g(u);
  auto m1g = dyck_matching(gu);
  if (!m1g) throw Error(ErrorCode::NotGDyck, "image under g is not a Dyck word");

  // positions of the hierarchical symbols, in order
  std::vector<Position> owner;
  PairedWord hs;
  for (std::size_t p = 0; p < ts->size(); ++p) {
    const auto& t = (*ts)[p];
    if (t.kind == kinds::ii) continue;
    owner.push_back(p + 1);
    hs.push_back(tau(t)[3]);
  }
  const std::size_t n = ts->size();
  // the symbols of B are matched inside u, so the Dyck matching of the
  // hierarchical subword is that of u restricted to it
  auto m2h = dyck_matching(hs);
  if (!m2h) throw Error(ErrorCode::NotDyck, "hierarchical symbols are not balanced");
  std::vector<Arch> m1, m2;
  for (const auto& arch : m1g->arches()) m1.push_back({owner[arch.call - 1], owner[arch.ret - 1]});
  for (const auto& arch : m2h->arches()) m2.push_back({owner[arch.call - 1], owner[arch.ret - 1]});

  std::vector<std::string> letters;
  Run run;
  run.linear.push_back(u.front().id);
  run.h1.assign(n + 1, kNone);
  run.h2.assign(n + 1, kNone);
  for (Position p = 1; p <= n; ++p) {
    const auto& t = (*ts)[p - 1];
    letters.push_back(a.alphabet()[t.letter]);
    run.linear.push_back(t.dst);
    if (t.out1 != kNone) run.h1[p] = t.out1;
    if (t.out2 != kNone) run.h2[p] = t.out2;
  }
  NestedWord2 w(std::move(letters), Matching::make(std::move(m1), n), Matching::make(std::move(m2), n));
  if (!is_accepting_run(a, w, run)) throw Error(ErrorCode::NotGDyck, "decoded run is inconsistent");
  return {std::move(w), std::move(run)};
}

// ---------------------------------------------------------------------------
// Serialization: states by name, letters quoted ('a'), hierarchical symbols
// as p.1 / p.2, bar as a ~ prefix.

inline std::string format_symbol(const Automaton2NW& a, const Symbol& s) {
  std::string out = s.bar ? "~" : "";
  switch (s.kind) {
    case SymKind::State: return out + a.states().at(s.id);
    case SymKind::Letter: return out + "'" + a.alphabet().at(s.id) + "'";
    case SymKind::Hier: return out + a.hier().at(s.id) + "." + std::to_string(s.index);
  }
  return out;
}

inline std::string format_paired(const Automaton2NW& a, const PairedWord& u) {
  std::string out;
  for (const Symbol& s : u) out += (out.empty() ? "" : " ") + format_symbol(a, s);
  return out;
}

inline Symbol parse_symbol(const Automaton2NW& a, std::string tok) {
  Symbol s;
  if (!tok.empty() && tok.front() == '~') {
    s.bar = true;
    tok.erase(0, 1);
  }
  if (tok.size() >= 2 && tok.front() == '\'' && tok.back() == '\'') {
    if (auto l = a.letter_id(tok.substr(1, tok.size() - 2))) {
      s.kind = SymKind::Letter;
      s.id = *l;
      return s;
    }
  } else if (auto q = a.state_id(tok)) {
    s.kind = SymKind::State;
    s.id = *q;
    return s;
  } else if (tok.size() > 2 && tok[tok.size() - 2] == '.' && (tok.back() == '1' || tok.back() == '2')) {
    if (auto p = a.hier_id(tok.substr(0, tok.size() - 2))) {
      s.kind = SymKind::Hier;
      s.id = *p;
      s.index = tok.back() - '0';
      return s;
    }
  }
  throw Error(ErrorCode::UnknownLetter, "unknown symbol '" + tok + "'");
}

inline PairedWord parse_paired(const Automaton2NW& a, const std::string& text) {
  std::istringstream in(text);
  PairedWord out;
  for (std::string tok; in >> tok;) out.push_back(parse_symbol(a, tok));
  return out;
}

// ---------------------------------------------------------------------------
// Word projection

inline constexpr std::size_t kDefaultProjectionBound = 16;

namespace detail {

/// Accepts every wave word whose letters start with `prefix` and whose length
/// lies in [min_len, max_len]; a single hierarchical symbol and all five wave
/// kinds at every position.
inline Automaton2NW length_window(const std::vector<std::string>& alphabet, const std::vector<LetterId>& prefix,
                                  std::size_t min_len, std::size_t max_len) {
  Automaton2NW b;
  for (std::size_t i = 0; i <= max_len; ++i) b.add_state("n" + std::to_string(i));
  const HierId h = b.add_hier("*");
  for (const auto& l : alphabet) b.add_letter(l);
  b.set_initial(0);
  for (std::size_t i = min_len; i <= max_len; ++i) b.set_final(static_cast<StateId>(i));
  for (std::size_t i = 0; i < max_len; ++i) {
    std::vector<LetterId> ls;
    if (i < prefix.size()) ls.push_back(prefix[i]);
    else
      for (LetterId l = 0; l < static_cast<LetterId>(alphabet.size()); ++l) ls.push_back(l);
    for (LetterId l : ls) {
      for (auto k : {kinds::ii, kinds::cc, kinds::rc, kinds::cr, kinds::rr}) {
        Transition t;
        t.kind = k;
        t.src = static_cast<StateId>(i);
        t.dst = static_cast<StateId>(i + 1);
        t.letter = l;
        if (k.upper == Status::Call) t.out1 = h;
        if (k.lower == Status::Call) t.out2 = h;
        if (k.upper == Status::Return) t.in1 = h;
        if (k.lower == Status::Return) t.in2 = h;
        b.add_transition(t);
      }
    }
  }
  return b;
}

}  // namespace detail

/// Letter sequences of accepted wave words of length at most max_len.  A
/// depth-first search over prefixes keeps only those that extend to an
/// accepted word, each test being an emptiness check on a product.
inline std::set<std::vector<std::string>> project_words(const Automaton2NW& a, std::size_t max_len,
                                                        std::size_t bound = kDefaultProjectionBound) {
  if (max_len > bound) {
    throw Error(ErrorCode::BoundExceeded,
                "projection length " + std::to_string(max_len) + " exceeds bound " + std::to_string(bound));
  }
  std::set<std::vector<std::string>> out;
  auto nonempty = [&](const std::vector<LetterId>& prefix, std::size_t lo, std::size_t hi) {
    return !emptiness(product(a, detail::length_window(a.alphabet(), prefix, lo, hi))).empty;
  };
  std::vector<LetterId> prefix;
  auto dfs = [&](auto&& self) -> void {
    if (nonempty(prefix, prefix.size(), prefix.size())) {
      std::vector<std::string> word;
      for (LetterId l : prefix) word.push_back(a.alphabet()[l]);
      out.insert(std::move(word));
    }
    if (prefix.size() == max_len) return;
    for (LetterId l = 0; l < static_cast<LetterId>(a.alphabet().size()); ++l) {
      prefix.push_back(l);
      if (nonempty(prefix, prefix.size(), max_len)) self(self);
      prefix.pop_back();
    }
  };
  if (nonempty(prefix, 0, max_len)) dfs(dfs);
  return out;
}

}  // namespace wavelang::lil
