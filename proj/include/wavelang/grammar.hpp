#pragma once

// The two-nonterminal grammar of 2-wave words over the typed alphabet:
//
//   W ::= eps | i | W W | x W y            (i internal-internal)
//   H ::= (eps,eps) | (x1 x2, y2 y1) | (w1 x w1', w2 y w2') | (a x b, c y d)
//
// with (a,b,c,d) of kinds (cc, rc, cr, rr).  A W-node spans one interval, an
// H-node spans a pair of intervals without pending arches.

#include <wavelang/core.hpp>

#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

namespace wavelang {

enum class Rule { WEps, WInt, WConcat, WWrap, HEps, HConcat, HNest, HWave };

inline std::string_view rule_name(Rule r) {
  switch (r) {
    case Rule::WEps: return "W-eps";
    case Rule::WInt: return "W-int";
    case Rule::WConcat: return "W-concat";
    case Rule::WWrap: return "W-wrap";
    case Rule::HEps: return "H-eps";
    case Rule::HConcat: return "H-concat";
    case Rule::HNest: return "H-nest";
    case Rule::HWave: return "H-wave";
  }
  return "?";
}

inline bool is_w_rule(Rule r) { return r == Rule::WEps || r == Rule::WInt || r == Rule::WConcat || r == Rule::WWrap; }

/// Derivation tree.  Children order follows the rule shape:
///   W-concat: W W        W-wrap: H W
///   H-concat: H(outer) H(inner)
///   H-nest:   W(w1) H W(w1') W(w2) W(w2')
///   H-wave:   H(inner), with `boundary` holding a, b, c, d
/// W-int keeps its single letter in `boundary`.
struct Derivation {
  Rule rule = Rule::WEps;
  /// span[0] for W nodes; span[0], span[1] for H nodes.
  std::array<Interval, 2> span{};
  std::vector<Derivation> children;
  std::vector<TypedLetter> boundary;
  /// Positions of `boundary` letters in the source word.
  std::vector<Position> boundary_positions;
};

namespace detail {

class Deriver {
 public:
  explicit Deriver(const NestedWord2& w) : w_(w) {}

  std::optional<Derivation> derive_w(Interval iv) {
    Derivation d;
    d.span = {iv, Interval{}};
    if (iv.empty()) {
      d.rule = Rule::WEps;
      return d;
    }
    const Position a = iv.first;
    const auto k = w_.kind(a);
    if (k == kinds::ii) {
      if (iv.size() == 1) {
        d.rule = Rule::WInt;
        d.boundary = {typed(a)};
        d.boundary_positions = {a};
        return d;
      }
      return concat(iv, a);
    }
    if (k != kinds::cc) return std::nullopt;
    const Position j = w_.m2().partner(a);
    if (!iv.contains(j)) return std::nullopt;
    if (j < iv.last) return concat(iv, j);
    // a and iv.last bound a wave: peel it as x w y
    auto quad = wave_from(a, iv.last);
    if (!quad) return std::nullopt;
    auto [k1, l] = *quad;
    if (!(k1 < l && iv.contains(k1) && iv.contains(l))) return std::nullopt;
    auto h = derive_h(Interval{a, k1}, Interval{l, iv.last});
    auto inner = h ? derive_w(Interval{k1 + 1, l - 1}) : std::nullopt;
    if (!inner) return std::nullopt;
    d.rule = Rule::WWrap;
    d.children.push_back(std::move(*h));
    d.children.push_back(std::move(*inner));
    return d;
  }

  std::optional<Derivation> derive_h(Interval I, Interval J) {
    Derivation d;
    d.span = {I, J};
    if (I.empty() && J.empty()) {
      d.rule = Rule::HEps;
      return d;
    }
    if (I.empty()) {
      auto rest = derive_w(J);
      if (!rest) return std::nullopt;
      return nest(I, J, eps_at(I.first), eps_h(I.first, J.first), eps_at(I.first), eps_at(J.first),
                  std::move(*rest));
    }
    const Position i = I.first;
    const auto k = w_.kind(i);
    if (k == kinds::ii) {
      auto head = derive_w(Interval{i, i});
      auto h = derive_h(Interval{i + 1, I.last}, J);
      if (!head || !h) return std::nullopt;
      return nest(I, J, std::move(*head), std::move(*h), eps_at(I.last + 1), eps_at(J.first),
                  eps_at(J.last + 1));
    }
    if (k != kinds::cc) return std::nullopt;
    const Position j = w_.m2().partner(i);
    if (I.contains(j)) {
      auto head = derive_w(Interval{i, j});
      auto h = head ? derive_h(Interval{j + 1, I.last}, J) : std::nullopt;
      if (!h) return std::nullopt;
      return nest(I, J, std::move(*head), std::move(*h), eps_at(I.last + 1), eps_at(J.first),
                  eps_at(J.last + 1));
    }
    if (!J.contains(j)) return std::nullopt;
    if (j < J.last) {
      auto h = derive_h(I, Interval{J.first, j});
      auto tail = h ? derive_w(Interval{j + 1, J.last}) : std::nullopt;
      if (!tail) return std::nullopt;
      return nest(I, J, eps_at(I.first), std::move(*h), eps_at(I.last + 1), eps_at(J.first),
                  std::move(*tail));
    }
    auto quad = wave_from(i, j);
    if (!quad) return std::nullopt;
    auto [k1, l] = *quad;
    if (!I.contains(k1) || !J.contains(l)) return std::nullopt;
    if (k1 == I.last && l == J.first) {
      auto inner = derive_h(Interval{i + 1, k1 - 1}, Interval{l + 1, j - 1});
      if (!inner) return std::nullopt;
      d.rule = Rule::HWave;
      d.children.push_back(std::move(*inner));
      d.boundary = {typed(i), typed(k1), typed(l), typed(j)};
      d.boundary_positions = {i, k1, l, j};
      return d;
    }
    auto outer = derive_h(Interval{i, k1}, Interval{l, j});
    auto inner = outer ? derive_h(Interval{k1 + 1, I.last}, Interval{J.first, l - 1}) : std::nullopt;
    if (!inner) return std::nullopt;
    d.rule = Rule::HConcat;
    d.children.push_back(std::move(*outer));
    d.children.push_back(std::move(*inner));
    return d;
  }

 private:
  TypedLetter typed(Position p) const { return {w_.letter(p), w_.kind(p)}; }

  static Derivation eps_at(Position p) {
    Derivation d;
    d.rule = Rule::WEps;
    d.span = {Interval{p, p - 1}, Interval{}};
    return d;
  }

  static Derivation eps_h(Position p, Position q) {
    Derivation d;
    d.rule = Rule::HEps;
    d.span = {Interval{p, p - 1}, Interval{q, q - 1}};
    return d;
  }

  std::optional<Derivation> concat(Interval iv, Position split) {
    auto left = derive_w(Interval{iv.first, split});
    auto right = left ? derive_w(Interval{split + 1, iv.last}) : std::nullopt;
    if (!right) return std::nullopt;
    Derivation d;
    d.rule = Rule::WConcat;
    d.span = {iv, Interval{}};
    d.children.push_back(std::move(*left));
    d.children.push_back(std::move(*right));
    return d;
  }

  static Derivation nest(Interval I, Interval J, Derivation w1, Derivation h, Derivation w1p, Derivation w2,
                         Derivation w2p) {
    Derivation d;
    d.rule = Rule::HNest;
    d.span = {I, J};
    d.children.push_back(std::move(w1));
    d.children.push_back(std::move(h));
    d.children.push_back(std::move(w1p));
    d.children.push_back(std::move(w2));
    d.children.push_back(std::move(w2p));
    return d;
  }

  /// For a call-call position i whose support arch ends at j, returns the
  /// inner corners (k, l) of the wave (i, k, l, j), checking all four kinds.
  std::optional<std::pair<Position, Position>> wave_from(Position i, Position j) const {
    const auto& m1 = w_.m1();
    const auto& m2 = w_.m2();
    if (!m1.is_call(i) || !m2.is_call(i) || m2.partner(i) != j) return std::nullopt;
    const Position k = m1.partner(i);
    if (w_.kind(k) != kinds::rc) return std::nullopt;
    const Position l = m2.partner(k);
    if (w_.kind(l) != kinds::cr || m1.partner(l) != j || w_.kind(j) != kinds::rr) return std::nullopt;
    return std::pair{k, l};
  }

  const NestedWord2& w_;
};

}  // namespace detail

/// Parses ω into a derivation from W, or nullopt when the structure does not
/// fit the grammar.  Splits off the shortest wpa prefix first and peels waves
/// at their outermost corners, so the result is reproducible.
inline std::optional<Derivation> try_derive(const NestedWord2& w) {
  detail::Deriver d(w);
  return d.derive_w(Interval{1, w.size()});
}

/// Like try_derive but throws NotWaveWord naming the is_wave_word witness.
inline Derivation derive(const NestedWord2& w) {
  if (auto d = try_derive(w)) return std::move(*d);
  auto cert = is_wave_word(w);
  std::string what = "not a 2-wave word";
  if (cert.witness) what += "; arch " + to_string(*cert.witness) + " belongs to no 2-wave";
  throw Error(ErrorCode::NotWaveWord, what);
}

// ---------------------------------------------------------------------------
// Yield and structural check

struct Yield {
  std::vector<TypedLetter> left;
  std::vector<TypedLetter> right;
};

namespace detail {

inline void append(std::vector<TypedLetter>& out, const std::vector<TypedLetter>& in) {
  out.insert(out.end(), in.begin(), in.end());
}

inline bool spans_concat(std::initializer_list<Interval> parts, Interval whole) {
  Position next = whole.first;
  for (const auto& p : parts) {
    if (p.first != next) return false;
    next = p.last + 1;
  }
  return next == whole.last + 1;
}

inline std::optional<Yield> yield_of(const Derivation& d) {
  auto expect = [&](std::initializer_list<bool> w_child) {
    if (d.children.size() != w_child.size()) return false;
    std::size_t i = 0;
    for (bool is_w : w_child) {
      if (is_w_rule(d.children[i++].rule) != is_w) return false;
    }
    return true;
  };
  std::vector<Yield> ys;
  for (const auto& c : d.children) {
    auto y = yield_of(c);
    if (!y) return std::nullopt;
    ys.push_back(std::move(*y));
  }
  Yield out;
  const auto& c = d.children;
  switch (d.rule) {
    case Rule::WEps:
      if (!expect({}) || !d.boundary.empty()) return std::nullopt;
      break;
    case Rule::WInt:
      if (!expect({}) || d.boundary.size() != 1 || d.boundary[0].kind != kinds::ii) return std::nullopt;
      out.left = d.boundary;
      break;
    case Rule::WConcat:
      if (!expect({true, true}) || !spans_concat({c[0].span[0], c[1].span[0]}, d.span[0])) return std::nullopt;
      append(out.left, ys[0].left);
      append(out.left, ys[1].left);
      break;
    case Rule::WWrap:
      if (!expect({false, true}) || !spans_concat({c[0].span[0], c[1].span[0], c[0].span[1]}, d.span[0]))
        return std::nullopt;
      append(out.left, ys[0].left);
      append(out.left, ys[1].left);
      append(out.left, ys[0].right);
      break;
    case Rule::HEps:
      if (!expect({})) return std::nullopt;
      break;
    case Rule::HConcat:
      if (!expect({false, false}) || !spans_concat({c[0].span[0], c[1].span[0]}, d.span[0]) ||
          !spans_concat({c[1].span[1], c[0].span[1]}, d.span[1]))
        return std::nullopt;
      append(out.left, ys[0].left);
      append(out.left, ys[1].left);
      append(out.right, ys[1].right);
      append(out.right, ys[0].right);
      break;
    case Rule::HNest:
      if (!expect({true, false, true, true, true}) ||
          !spans_concat({c[0].span[0], c[1].span[0], c[2].span[0]}, d.span[0]) ||
          !spans_concat({c[3].span[0], c[1].span[1], c[4].span[0]}, d.span[1]))
        return std::nullopt;
      append(out.left, ys[0].left);
      append(out.left, ys[1].left);
      append(out.left, ys[2].left);
      append(out.right, ys[3].left);
      append(out.right, ys[1].right);
      append(out.right, ys[4].left);
      break;
    case Rule::HWave: {
      if (!expect({false}) || d.boundary.size() != 4) return std::nullopt;
      const auto& b = d.boundary;
      if (b[0].kind != kinds::cc || b[1].kind != kinds::rc || b[2].kind != kinds::cr || b[3].kind != kinds::rr)
        return std::nullopt;
      const auto& L = d.span[0];
      const auto& R = d.span[1];
      if (L.size() < 2 || R.size() < 2) return std::nullopt;
      if (c[0].span[0] != Interval{L.first + 1, L.last - 1} || c[0].span[1] != Interval{R.first + 1, R.last - 1})
        return std::nullopt;
      out.left.push_back(b[0]);
      append(out.left, ys[0].left);
      out.left.push_back(b[1]);
      out.right.push_back(b[2]);
      append(out.right, ys[0].right);
      out.right.push_back(b[3]);
      break;
    }
  }
  if (out.left.size() != d.span[0].size()) return std::nullopt;
  if (!is_w_rule(d.rule) && out.right.size() != d.span[1].size()) return std::nullopt;
  return out;
}

}  // namespace detail

/// Checks rule shapes, span partitioning and leaf kinds; returns the yield.
inline std::optional<Yield> derivation_yield(const Derivation& d) { return detail::yield_of(d); }

/// True iff `d` is a well-formed derivation from W whose yield is the typed
/// version of ω.
inline bool derivation_matches(const Derivation& d, const NestedWord2& w) {
  if (!is_w_rule(d.rule) || d.span[0] != Interval{1, w.size()}) return false;
  auto y = derivation_yield(d);
  if (!y) return false;
  std::vector<TypedLetter> expected;
  for (Position p = 1; p <= w.size(); ++p) expected.push_back({w.letter(p), w.kind(p)});
  return y->left == expected;
}

template <class F>
void for_each_node(const Derivation& d, F&& f) {
  f(d);
  for (const auto& c : d.children) for_each_node(c, f);
}

// ---------------------------------------------------------------------------
// Exhaustive generation

/// All non-crossing partial matchings of length n, memoized per n.
inline const std::vector<Matching>& non_crossing_matchings(std::size_t n) {
  static std::mutex mu;
  static std::map<std::size_t, std::vector<Matching>> cache;
  std::lock_guard lock(mu);
  if (auto it = cache.find(n); it != cache.end()) return it->second;
  // arch lists for every window [a, b], computed by increasing length
  std::map<std::pair<Position, Position>, std::vector<std::vector<Arch>>> win;
  auto get = [&](Position a, Position b) -> const std::vector<std::vector<Arch>>& {
    static const std::vector<std::vector<Arch>> unit{{}};
    if (a > b) return unit;
    return win.at({a, b});
  };
  for (std::size_t len = 1; len <= n; ++len) {
    for (Position a = 1; a + len - 1 <= n; ++a) {
      Position b = a + len - 1;
      std::vector<std::vector<Arch>> out;
      for (const auto& rest : get(a + 1, b)) out.push_back(rest);
      for (Position j = a + 1; j <= b; ++j) {
        for (const auto& in : get(a + 1, j - 1)) {
          for (const auto& rest : get(j + 1, b)) {
            std::vector<Arch> arches{{a, j}};
            arches.insert(arches.end(), in.begin(), in.end());
            arches.insert(arches.end(), rest.begin(), rest.end());
            out.push_back(std::move(arches));
          }
        }
      }
      win[{a, b}] = std::move(out);
    }
  }
  std::vector<Matching> result;
  for (const auto& arches : get(1, n)) result.push_back(Matching::make(arches, n));
  return cache.emplace(n, std::move(result)).first->second;
}

inline constexpr std::size_t kDefaultStructureBound = 12;

/// All pairs (M1, M2) of length n forming a 2-wave structure, by brute force
/// over non-crossing matchings.  Pairs are joined on equal support (a 2-wave
/// structure has no mixed-kind position) and filtered by is_wave_word.
inline std::vector<std::pair<Matching, Matching>> enumerate_wave_structures(
    std::size_t n, std::size_t bound = kDefaultStructureBound) {
  if (n > bound) {
    throw Error(ErrorCode::BoundExceeded,
                "structure length " + std::to_string(n) + " exceeds bound " + std::to_string(bound));
  }
  const auto& all = non_crossing_matchings(n);
  std::map<std::vector<bool>, std::vector<const Matching*>> by_support;
  for (const auto& m : all) by_support[m.support()].push_back(&m);
  std::vector<std::pair<Matching, Matching>> out;
  const std::vector<std::string> blank(n, "a");
  for (const auto& [support, group] : by_support) {
    for (const Matching* m1 : group) {
      for (const Matching* m2 : group) {
        NestedWord2 w(blank, *m1, *m2);
        if (is_wave_word(w).is_wave) out.emplace_back(*m1, *m2);
      }
    }
  }
  std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) {
    if (x.first.arches() != y.first.arches()) return x.first.arches() < y.first.arches();
    return x.second.arches() < y.second.arches();
  });
  return out;
}

}  // namespace wavelang
