#pragma once

// Words equipped with two matchings, position typing, wpa sets, surface
// functions and the structural 2-wave check.
//
// Positions are 1-indexed throughout; 0 is reserved as the "no position"
// sentinel (surface functions, absent partners).

#include <wavelang/error.hpp>

#include <algorithm>
#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace wavelang {

using Position = std::size_t;

struct Arch {
  Position call = 0;
  Position ret = 0;

  auto operator<=>(const Arch&) const = default;
};

inline std::string to_string(const Arch& a) {
  return "(" + std::to_string(a.call) + "," + std::to_string(a.ret) + ")";
}

enum class Status : std::uint8_t { Call = 0, Return = 1, Internal = 2 };

inline char status_char(Status s) {
  switch (s) {
    case Status::Call: return 'c';
    case Status::Return: return 'r';
    case Status::Internal: return 'i';
  }
  return '?';
}

/// Status of a position with respect to M1 (upper) and M2 (lower).
struct PositionKind {
  Status upper = Status::Internal;
  Status lower = Status::Internal;

  constexpr std::size_t index() const {
    return static_cast<std::size_t>(upper) * 3 + static_cast<std::size_t>(lower);
  }
  static constexpr PositionKind from_index(std::size_t k) {
    return {static_cast<Status>(k / 3), static_cast<Status>(k % 3)};
  }
  /// One of the five kinds a 2-wave word can exhibit.
  constexpr bool is_wave_kind() const {
    return (upper == Status::Internal) == (lower == Status::Internal);
  }
  std::string name() const { return {status_char(upper), status_char(lower)}; }

  auto operator<=>(const PositionKind&) const = default;
};

namespace kinds {
inline constexpr PositionKind cc{Status::Call, Status::Call};
inline constexpr PositionKind cr{Status::Call, Status::Return};
inline constexpr PositionKind ci{Status::Call, Status::Internal};
inline constexpr PositionKind rc{Status::Return, Status::Call};
inline constexpr PositionKind rr{Status::Return, Status::Return};
inline constexpr PositionKind ri{Status::Return, Status::Internal};
inline constexpr PositionKind ic{Status::Internal, Status::Call};
inline constexpr PositionKind ir{Status::Internal, Status::Return};
inline constexpr PositionKind ii{Status::Internal, Status::Internal};
}  // namespace kinds

/// Parses "cc", "ri", ... ; returns nullopt on anything else.
inline std::optional<PositionKind> parse_kind(std::string_view s) {
  if (s.size() != 2) return std::nullopt;
  auto st = [](char c) -> std::optional<Status> {
    if (c == 'c') return Status::Call;
    if (c == 'r') return Status::Return;
    if (c == 'i') return Status::Internal;
    return std::nullopt;
  };
  auto u = st(s[0]);
  auto l = st(s[1]);
  if (!u || !l) return std::nullopt;
  return PositionKind{*u, *l};
}

/// Validation failure of a matching; `witness` names the offending arch(es).
class MatchingError : public Error {
 public:
  MatchingError(ErrorCode code, std::vector<Arch> witness, const std::string& what)
      : Error(code, what), witness_(std::move(witness)) {}

  const std::vector<Arch>& witness() const noexcept { return witness_; }

 private:
  std::vector<Arch> witness_;
};

/// A non-crossing partial pairing of the positions [1,n].
class Matching {
 public:
  Matching() : partner_(1, 0) {}

  /// Builds an empty matching of length n.
  explicit Matching(std::size_t n) : n_(n), partner_(n + 1, 0) {}

  /// Validates `pairs` against the three matching conditions (ordered, each
  /// position used at most once, non-crossing) and builds the matching.
  static Matching make(std::vector<Arch> pairs, std::size_t n) {
    for (const auto& a : pairs) {
      if (a.call < 1 || a.call > n || a.ret < 1 || a.ret > n) {
        throw MatchingError(ErrorCode::OutOfRange, {a},
                            "arch " + to_string(a) + " outside [1," + std::to_string(n) + "]");
      }
    }
    for (const auto& a : pairs) {
      if (!(a.call < a.ret)) {
        throw MatchingError(ErrorCode::NotOrdered, {a}, "arch " + to_string(a) + " is not ordered");
      }
    }
    Matching m(n);
    std::vector<const Arch*> owner(n + 1, nullptr);
    for (const auto& a : pairs) {
      for (Position p : {a.call, a.ret}) {
        if (owner[p] != nullptr) {
          std::vector<Arch> w{*owner[p], a};
          std::sort(w.begin(), w.end());
          throw MatchingError(ErrorCode::Reused, w,
                              "position " + std::to_string(p) + " used by " + to_string(w[0]) +
                                  " and " + to_string(w[1]));
        }
        owner[p] = &a;
      }
      m.partner_[a.call] = a.ret;
      m.partner_[a.ret] = a.call;
    }
    std::vector<Arch> open;
    for (Position p = 1; p <= n; ++p) {
      Position q = m.partner_[p];
      if (q == 0) continue;
      if (q > p) {
        open.push_back({p, q});
      } else if (open.back().call != q) {
        std::vector<Arch> w{open.back(), Arch{q, p}};
        std::sort(w.begin(), w.end());
        throw MatchingError(ErrorCode::Crossing, w,
                            "arches " + to_string(w[0]) + " and " + to_string(w[1]) + " cross");
      } else {
        open.pop_back();
      }
    }
    std::sort(pairs.begin(), pairs.end());
    m.arches_ = std::move(pairs);
    return m;
  }

  std::size_t length() const noexcept { return n_; }
  /// Arches sorted by call position.
  const std::vector<Arch>& arches() const noexcept { return arches_; }
  bool empty() const noexcept { return arches_.empty(); }

  /// Partner of position p, or 0 if p is internal.
  Position partner(Position p) const { return p <= n_ ? partner_[p] : 0; }
  bool is_call(Position p) const { return partner(p) > p; }
  bool is_return(Position p) const {
    Position q = partner(p);
    return q != 0 && q < p;
  }
  bool contains(Arch a) const { return a.call <= n_ && partner(a.call) == a.ret && a.ret > a.call; }
  Status status(Position p) const {
    if (is_call(p)) return Status::Call;
    if (is_return(p)) return Status::Return;
    return Status::Internal;
  }
  /// Bitmask-free summary: true where a position is matched.
  std::vector<bool> support() const {
    std::vector<bool> s(n_ + 1, false);
    for (const auto& a : arches_) s[a.call] = s[a.ret] = true;
    return s;
  }

  bool operator==(const Matching& o) const { return n_ == o.n_ && arches_ == o.arches_; }

 private:
  std::size_t n_ = 0;
  std::vector<Position> partner_;
  std::vector<Arch> arches_;
};

/// A word over string symbols with two matchings of the same length.
class NestedWord2 {
 public:
  NestedWord2() = default;

  NestedWord2(std::vector<std::string> letters, Matching m1, Matching m2)
      : letters_(std::move(letters)), m1_(std::move(m1)), m2_(std::move(m2)) {
    if (m1_.length() != letters_.size() || m2_.length() != letters_.size()) {
      throw Error(ErrorCode::OutOfRange, "matching lengths (" + std::to_string(m1_.length()) + ", " +
                                             std::to_string(m2_.length()) + ") differ from word length " +
                                             std::to_string(letters_.size()));
    }
  }

  /// Word without arches.
  explicit NestedWord2(std::vector<std::string> letters)
      : letters_(std::move(letters)), m1_(letters_.size()), m2_(letters_.size()) {}

  std::size_t size() const noexcept { return letters_.size(); }
  bool empty() const noexcept { return letters_.empty(); }
  const std::vector<std::string>& letters() const noexcept { return letters_; }
  /// Letter at 1-indexed position p.
  const std::string& letter(Position p) const { return letters_.at(p - 1); }
  const Matching& m1() const noexcept { return m1_; }
  const Matching& m2() const noexcept { return m2_; }
  const Matching& matching(int which) const { return which == 1 ? m1_ : m2_; }

  PositionKind kind(Position p) const { return {m1_.status(p), m2_.status(p)}; }

  bool operator==(const NestedWord2&) const = default;

 private:
  std::vector<std::string> letters_;
  Matching m1_;
  Matching m2_;
};

inline PositionKind position_kind(const NestedWord2& w, Position i) {
  if (i < 1 || i > w.size()) {
    throw Error(ErrorCode::OutOfRange,
                "position " + std::to_string(i) + " outside [1," + std::to_string(w.size()) + "]");
  }
  return w.kind(i);
}

// ---------------------------------------------------------------------------
// Position sets

/// Closed interval [first, last]; empty when first > last.
struct Interval {
  Position first = 1;
  Position last = 0;

  bool empty() const { return first > last; }
  std::size_t size() const { return empty() ? 0 : last - first + 1; }
  bool contains(Position p) const { return !empty() && first <= p && p <= last; }

  bool operator==(const Interval&) const = default;
};

inline std::vector<Position> positions_of(std::initializer_list<Interval> parts) {
  std::vector<Position> out;
  for (const auto& iv : parts) {
    for (Position p = iv.first; p <= iv.last; ++p) out.push_back(p);
  }
  return out;
}

/// True iff no arch of either matching leaves the set.  Works for arbitrary
/// subsets; positions outside [1,n] make the answer false.
inline bool is_wpa(const NestedWord2& w, std::span<const Position> set) {
  std::vector<bool> in(w.size() + 1, false);
  for (Position p : set) {
    if (p < 1 || p > w.size()) return false;
    in[p] = true;
  }
  for (Position p : set) {
    for (int k = 1; k <= 2; ++k) {
      Position q = w.matching(k).partner(p);
      if (q != 0 && !in[q]) return false;
    }
  }
  return true;
}

inline bool is_wpa(const NestedWord2& w, Interval iv) {
  auto ps = positions_of({iv});
  return is_wpa(w, ps);
}

inline bool is_wpa(const NestedWord2& w, Interval a, Interval b) {
  auto ps = positions_of({a, b});
  return is_wpa(w, ps);
}

/// Sub-word on `set` (sorted ascending) keeping only arches with both ends in
/// the set, shifted to [1,|set|].  No wpa check.
inline NestedWord2 induced(const NestedWord2& w, std::span<const Position> set) {
  std::vector<Position> ps(set.begin(), set.end());
  std::sort(ps.begin(), ps.end());
  ps.erase(std::unique(ps.begin(), ps.end()), ps.end());
  std::vector<Position> shift(w.size() + 1, 0);
  std::vector<std::string> letters;
  for (std::size_t k = 0; k < ps.size(); ++k) {
    if (ps[k] < 1 || ps[k] > w.size()) {
      throw Error(ErrorCode::OutOfRange, "position " + std::to_string(ps[k]) + " outside the word");
    }
    shift[ps[k]] = k + 1;
    letters.push_back(w.letter(ps[k]));
  }
  auto keep = [&](const Matching& m) {
    std::vector<Arch> arches;
    for (const auto& a : m.arches()) {
      if (shift[a.call] != 0 && shift[a.ret] != 0) arches.push_back({shift[a.call], shift[a.ret]});
    }
    return Matching::make(std::move(arches), ps.size());
  };
  return NestedWord2(std::move(letters), keep(w.m1()), keep(w.m2()));
}

/// The restriction of a 2-nested word to a wpa set (an interval or a union of
/// intervals), shifted to [1,|set|].
inline NestedWord2 restrict(const NestedWord2& w, std::span<const Position> set) {
  if (!is_wpa(w, set)) throw Error(ErrorCode::NotWpa, "position set has a pending arch");
  return induced(w, set);
}

inline NestedWord2 restrict(const NestedWord2& w, Interval iv) {
  auto ps = positions_of({iv});
  return restrict(w, ps);
}

inline NestedWord2 restrict(const NestedWord2& w, Interval a, Interval b) {
  auto ps = positions_of({a, b});
  return restrict(w, ps);
}

// ---------------------------------------------------------------------------
// Waves

/// Four positions i1<i2<i3<i4 with M1(i1,i2), M1(i3,i4), M2(i2,i3), M2(i1,i4).
struct Wave {
  Position i1 = 0, i2 = 0, i3 = 0, i4 = 0;

  auto operator<=>(const Wave&) const = default;
};

/// All 2-waves, sorted.  Walks the arches of M1 and closes the cycle through
/// the partner maps.
inline std::vector<Wave> find_2waves(const NestedWord2& w) {
  std::vector<Wave> out;
  const auto& m1 = w.m1();
  const auto& m2 = w.m2();
  for (const auto& a : m1.arches()) {
    Position i1 = a.call, i2 = a.ret;
    if (!m2.is_call(i2)) continue;
    Position i3 = m2.partner(i2);
    if (!m1.is_call(i3)) continue;
    Position i4 = m1.partner(i3);
    if (m2.is_call(i1) && m2.partner(i1) == i4) out.push_back({i1, i2, i3, i4});
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// An arch tagged with the matching (1 or 2) it belongs to.
struct ArchRef {
  int matching = 1;
  Arch arch;

  auto operator<=>(const ArchRef&) const = default;
};

inline std::string to_string(const ArchRef& a) {
  return "M" + std::to_string(a.matching) + to_string(a.arch);
}

struct WaveCertificate {
  bool is_wave = false;
  /// Every covered arch with its wave.
  std::vector<std::pair<ArchRef, Wave>> covering;
  /// Arches that belong to no 2-wave.
  std::vector<ArchRef> uncovered;
  /// Shortest uncovered arch (M1 before M2, then leftmost); empty when is_wave.
  std::optional<ArchRef> witness;
};

inline WaveCertificate is_wave_word(const NestedWord2& w) {
  WaveCertificate cert;
  const std::size_t n = w.size();
  // covering wave indexed by call position, per matching
  std::vector<std::optional<Wave>> by1(n + 1), by2(n + 1);
  for (const auto& wv : find_2waves(w)) {
    by1[wv.i1] = wv;
    by1[wv.i3] = wv;
    by2[wv.i2] = wv;
    by2[wv.i1] = wv;
  }
  for (int k = 1; k <= 2; ++k) {
    const auto& by = k == 1 ? by1 : by2;
    for (const auto& a : w.matching(k).arches()) {
      ArchRef ref{k, a};
      if (by[a.call]) {
        cert.covering.emplace_back(ref, *by[a.call]);
      } else {
        cert.uncovered.push_back(ref);
      }
    }
  }
  cert.is_wave = cert.uncovered.empty();
  if (!cert.is_wave) {
    cert.witness = *std::min_element(cert.uncovered.begin(), cert.uncovered.end(),
                                     [](const ArchRef& x, const ArchRef& y) {
                                       auto lx = x.arch.ret - x.arch.call;
                                       auto ly = y.arch.ret - y.arch.call;
                                       if (lx != ly) return lx < ly;
                                       return x < y;
                                     });
  }
  return cert;
}

// ---------------------------------------------------------------------------
// Surface functions

/// s_M(k) for every k in [0,n]: the call of the arch covering k, or 0.
inline std::vector<Position> surface_table(const Matching& m) {
  std::vector<Position> s(m.length() + 1, 0);
  for (Position k = 1; k <= m.length(); ++k) {
    if (m.is_call(k)) {
      s[k] = k;
    } else if (m.is_return(k)) {
      s[k] = s[m.partner(k) - 1];
    } else {
      s[k] = s[k - 1];
    }
  }
  return s;
}

/// s_M(k) where M is m1 (which = 1) or m2 (which = 2).
inline Position surface(const NestedWord2& w, int which, Position k) {
  if (k > w.size()) {
    throw Error(ErrorCode::OutOfRange, "surface position " + std::to_string(k) + " outside [0,n]");
  }
  return surface_table(w.matching(which))[k];
}

/// Call-call position of the wave whose M1 arch covers k, or 0.
inline Position surface_cc(const NestedWord2& w, Position k) {
  if (!is_wave_word(w).is_wave) throw Error(ErrorCode::NotWaveWord, "surface_cc needs a 2-wave word");
  Position i = surface(w, 1, k);
  if (i == 0) return 0;
  if (w.m2().is_call(i)) return i;
  // i is call-return: walk back along the bottom arch and the first top arch
  return w.m1().partner(w.m2().partner(i));
}

// ---------------------------------------------------------------------------
// Visibly typed presentation

struct TypedLetter {
  std::string letter;
  PositionKind kind;

  bool operator==(const TypedLetter&) const = default;
};

inline std::string to_string(const TypedLetter& t) { return t.letter + "^" + t.kind.name(); }

inline std::vector<TypedLetter> to_typed(const NestedWord2& w) {
  std::vector<TypedLetter> out;
  out.reserve(w.size());
  for (Position p = 1; p <= w.size(); ++p) {
    auto k = w.kind(p);
    if (!k.is_wave_kind()) {
      throw Error(ErrorCode::MixedKind, "position " + std::to_string(p) + " has kind " + k.name());
    }
    out.push_back({w.letter(p), k});
  }
  return out;
}

/// Rebuilds both matchings by stack pairing of the call/return annotations.
inline NestedWord2 from_typed(std::span<const TypedLetter> typed) {
  const std::size_t n = typed.size();
  std::vector<std::string> letters;
  std::array<std::vector<Arch>, 2> arches;
  std::array<std::vector<Position>, 2> open;
  for (Position p = 1; p <= n; ++p) {
    const auto& t = typed[p - 1];
    letters.push_back(t.letter);
    std::array<Status, 2> st{t.kind.upper, t.kind.lower};
    for (int k = 0; k < 2; ++k) {
      if (st[k] == Status::Call) {
        open[k].push_back(p);
      } else if (st[k] == Status::Return) {
        if (open[k].empty()) {
          throw Error(ErrorCode::UnbalancedTyping,
                      "unmatched return on M" + std::to_string(k + 1) + " at " + std::to_string(p));
        }
        arches[k].push_back({open[k].back(), p});
        open[k].pop_back();
      }
    }
  }
  for (int k = 0; k < 2; ++k) {
    if (!open[k].empty()) {
      throw Error(ErrorCode::UnbalancedTyping,
                  "unmatched call on M" + std::to_string(k + 1) + " at " + std::to_string(open[k].back()));
    }
  }
  return NestedWord2(std::move(letters), Matching::make(std::move(arches[0]), n),
                     Matching::make(std::move(arches[1]), n));
}

}  // namespace wavelang
