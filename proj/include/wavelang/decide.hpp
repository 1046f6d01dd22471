#pragma once

// Decision procedures over 2-wave words.
//
// Emptiness saturates two relations over linear states:
//   W(q, q')            some wave word leads from q to q'
//   H(pL, pL', pR, pR') some H-pair (x, y) leads from pL to pL' on x and
//                       from pR to pR' on y
// following the W/H grammar.  The wave rule joins an inner H entry with one
// transition of each of the four wave kinds; the hierarchical symbols written
// at the cc, rc and cr positions are matched where they are read, so the
// automaton need not be in post form.  Universality, inclusion and
// equivalence reduce to emptiness through the deterministic complement.

#include <wavelang/automaton.hpp>
#include <wavelang/core.hpp>
#include <wavelang/determinize.hpp>

#include <algorithm>
#include <array>
#include <cstdint>
#include <deque>
#include <map>
#include <string>
#include <tuple>
#include <optional>
#include <set>
#include <unordered_map>
#include <utility>
#include <vector>

namespace wavelang {

enum class SatRule { WEps, WInt, WConcat, WWrap, HEps, HConcat, HNest, HWave };

using WEntry = std::pair<StateId, StateId>;
using HEntry = std::array<StateId, 4>;

struct SaturationTables {
  std::set<WEntry> W;
  std::set<HEntry> H;

  bool operator==(const SaturationTables&) const = default;
};

enum class Saturation { Worklist, Chaotic };

struct Emptiness {
  bool empty = true;
  /// An accepted wave word when the language is nonempty.
  std::optional<NestedWord2> witness;
};

/// Outcome of universality / inclusion / equivalence.  When the property
/// fails, `witness` is a wave word on which it fails.
struct Verdict {
  bool holds = true;
  std::optional<NestedWord2> witness;
};

namespace detail {

inline std::uint64_t pack2(StateId a, StateId b) {
  return static_cast<std::uint64_t>(a) << 32 | static_cast<std::uint32_t>(b);
}

struct Key8 {
  std::array<int, 8> v{};
  bool operator==(const Key8&) const = default;
};

struct Key8Hash {
  std::size_t operator()(const Key8& k) const {
    std::uint64_t h = 1469598103934665603ull;
    for (int x : k.v) h = (h ^ static_cast<std::uint32_t>(x)) * 1099511628211ull;
    return static_cast<std::size_t>(h ^ (h >> 29));
  }
};

/// Worklist saturation with first-writer provenance.
class Saturator {
 public:
  explicit Saturator(const Automaton2NW& a) : a_(a), n_(a.num_states()) {
    if (n_ >= (1u << 16)) {
      throw Error(ErrorCode::StateBudgetExceeded, "saturation supports fewer than 65536 states");
    }
    dense_ = n_ <= 48;
    if (dense_) hbits_.assign(n_ * n_ * n_ * n_, 0);
    w_.assign(n_ * n_, 0);
    wprov_.resize(n_ * n_);
    wsucc_.resize(n_);
    wpred_.resize(n_);
    by_c_.assign(4, std::vector<std::vector<HEntry>>(n_));
    index_transitions();
    run();
  }

  bool has_w(StateId x, StateId y) const { return w_[x * n_ + y] != 0; }
  bool has_h(const HEntry& e) const {
    return dense_ ? hbits_[hidx(e)] != 0 : hpos_.count(hkey(e)) != 0;
  }

  SaturationTables tables() const {
    SaturationTables t;
    for (std::size_t x = 0; x < n_; ++x)
      for (StateId y : wsucc_[x]) t.W.insert({static_cast<StateId>(x), y});
    for (const auto& e : hlist_) t.H.insert(e);
    return t;
  }

  std::vector<TypedLetter> w_word(StateId x, StateId y) const {
    std::vector<TypedLetter> out;
    emit_w(x, y, out);
    return out;
  }

 private:
  struct Prov {
    SatRule rule = SatRule::WEps;
    std::uint64_t p1 = 0, p2 = 0;
    int aux = -1;  // transition index, nest component or stage entry
  };
  struct StageEntry {
    Key8 key;
    int parent;  // previous stage entry, or index into hlist_ for stage 1
    int trans;
  };
  struct Stage {
    std::unordered_map<Key8, int, Key8Hash> ids;
    std::vector<StageEntry> entries;
    /// Returns the new entry id, or -1 when the key was already present.
    int add(const Key8& k, int parent, int trans) {
      auto [it, fresh] = ids.emplace(k, static_cast<int>(entries.size()));
      if (!fresh) return -1;
      entries.push_back({k, parent, trans});
      return it->second;
    }
  };

  const Automaton2NW& a_;
  std::size_t n_;
  bool dense_ = false;

  std::vector<char> w_;
  std::vector<Prov> wprov_;
  std::vector<std::vector<StateId>> wsucc_, wpred_;

  std::vector<char> hbits_;
  std::vector<HEntry> hlist_;
  std::vector<Prov> hprov_;
  std::unordered_map<std::uint64_t, int> hpos_;  // hkey -> hlist_ index
  // (left end, right start) -> (left start, right end) and the converse
  std::unordered_map<std::uint64_t, std::vector<WEntry>> end_start_, start_end_;
  std::vector<std::vector<std::vector<HEntry>>> by_c_;

  std::deque<std::pair<bool, std::uint64_t>> work_;  // (is H, key)

  // transition indexes, by position in the per-kind lists
  const std::vector<Transition>* cc_ = nullptr;
  const std::vector<Transition>* rc_ = nullptr;
  const std::vector<Transition>* cr_ = nullptr;
  const std::vector<Transition>* rr_ = nullptr;
  std::vector<std::vector<std::pair<HierId, HierId>>> cc_outs_into_;  // q1 -> {(h1, h2)}
  std::unordered_map<std::uint64_t, std::vector<int>> rc_by_src_in_;  // (q2, h1)
  std::unordered_map<Key8, std::vector<int>, Key8Hash> rr_by_src_ins_;  // (r2, k, h2)
  std::unordered_map<Key8, std::vector<int>, Key8Hash> cr_by_dst_io_;   // (r1, g, k)
  std::unordered_map<std::uint64_t, std::vector<HierId>> cr_k_into_;   // (r1, g) -> k
  std::unordered_map<Key8, std::vector<int>, Key8Hash> cc_by_dst_outs_;  // (q1, h1, h2)
  Stage s1_, s2_, s3_;

  std::size_t hidx(const HEntry& e) const {
    return ((static_cast<std::size_t>(e[0]) * n_ + e[1]) * n_ + e[2]) * n_ + e[3];
  }
  static std::uint64_t hkey(const HEntry& e) {
    return static_cast<std::uint64_t>(e[0]) | static_cast<std::uint64_t>(e[1]) << 16 |
           static_cast<std::uint64_t>(e[2]) << 32 | static_cast<std::uint64_t>(e[3]) << 48;
  }
  static HEntry unkey(std::uint64_t k) {
    return {static_cast<StateId>(k & 0xffff), static_cast<StateId>(k >> 16 & 0xffff),
            static_cast<StateId>(k >> 32 & 0xffff), static_cast<StateId>(k >> 48 & 0xffff)};
  }

  void index_transitions() {
    cc_ = &a_.transitions(kinds::cc);
    rc_ = &a_.transitions(kinds::rc);
    cr_ = &a_.transitions(kinds::cr);
    rr_ = &a_.transitions(kinds::rr);
    cc_outs_into_.resize(n_);
    for (int i = 0; i < static_cast<int>(cc_->size()); ++i) {
      const auto& t = (*cc_)[i];
      auto& v = cc_outs_into_[t.dst];
      if (std::find(v.begin(), v.end(), std::pair{t.out1, t.out2}) == v.end()) v.push_back({t.out1, t.out2});
      cc_by_dst_outs_[Key8{{t.dst, t.out1, t.out2}}].push_back(i);
    }
    for (int i = 0; i < static_cast<int>(rc_->size()); ++i) {
      const auto& t = (*rc_)[i];
      rc_by_src_in_[pack2(t.src, t.in1)].push_back(i);
    }
    for (int i = 0; i < static_cast<int>(rr_->size()); ++i) {
      const auto& t = (*rr_)[i];
      rr_by_src_ins_[Key8{{t.src, t.in1, t.in2}}].push_back(i);
    }
    for (int i = 0; i < static_cast<int>(cr_->size()); ++i) {
      const auto& t = (*cr_)[i];
      cr_by_dst_io_[Key8{{t.dst, t.in2, t.out1}}].push_back(i);
      auto& v = cr_k_into_[pack2(t.dst, t.in2)];
      if (std::find(v.begin(), v.end(), t.out1) == v.end()) v.push_back(t.out1);
    }
  }

  void add_w(StateId x, StateId y, Prov p) {
    char& cell = w_[x * n_ + y];
    if (cell) return;
    cell = 1;
    wprov_[x * n_ + y] = p;
    wsucc_[x].push_back(y);
    wpred_[y].push_back(x);
    work_.push_back({false, pack2(x, y)});
  }

  void add_h(const HEntry& e, Prov p) {
    if (dense_) {
      char& cell = hbits_[hidx(e)];
      if (cell) return;
      cell = 1;
    }
    if (!hpos_.emplace(hkey(e), static_cast<int>(hlist_.size())).second) return;
    hlist_.push_back(e);
    hprov_.push_back(p);
    end_start_[pack2(e[1], e[2])].push_back({e[0], e[3]});
    start_end_[pack2(e[0], e[3])].push_back({e[1], e[2]});
    for (int c = 0; c < 4; ++c) by_c_[c][e[c]].push_back(e);
    work_.push_back({true, hkey(e)});
  }

  template <class M, class K>
  static const auto& lookup(const M& m, const K& k) {
    static const typename M::mapped_type empty{};
    auto it = m.find(k);
    return it == m.end() ? empty : it->second;
  }

  void run() {
    for (std::size_t q = 0; q < n_; ++q) add_w(static_cast<StateId>(q), static_cast<StateId>(q), {SatRule::WEps});
    const auto& ii = a_.transitions(kinds::ii);
    for (int i = 0; i < static_cast<int>(ii.size()); ++i) add_w(ii[i].src, ii[i].dst, {SatRule::WInt, 0, 0, i});
    for (std::size_t q = 0; q < n_; ++q)
      for (std::size_t s = 0; s < n_; ++s) {
        const auto x = static_cast<StateId>(q), y = static_cast<StateId>(s);
        add_h({x, x, y, y}, {SatRule::HEps});
      }
    while (!work_.empty()) {
      auto [is_h, key] = work_.front();
      work_.pop_front();
      if (is_h) {
        process_h(unkey(key));
      } else {
        process_w(static_cast<StateId>(key >> 32), static_cast<StateId>(key & 0xffffffff));
      }
    }
  }

  void process_w(StateId x, StateId y) {
    const auto wk = pack2(x, y);
    for (std::size_t i = 0; i < wsucc_[y].size(); ++i) {
      const StateId z = wsucc_[y][i];
      add_w(x, z, {SatRule::WConcat, wk, pack2(y, z)});
    }
    for (std::size_t i = 0; i < wpred_[x].size(); ++i) {
      const StateId v = wpred_[x][i];
      add_w(v, y, {SatRule::WConcat, pack2(v, x), wk});
    }
    for (const auto& [q, q3] : copy(lookup(end_start_, pack2(x, y))))
      add_w(q, q3, {SatRule::WWrap, hkey({q, x, y, q3}), wk});
    // extend one component of an H entry by this W step
    for (const auto& e : copy(by_c_[0][y])) add_h({x, e[1], e[2], e[3]}, {SatRule::HNest, hkey(e), wk, 0});
    for (const auto& e : copy(by_c_[1][x])) add_h({e[0], y, e[2], e[3]}, {SatRule::HNest, hkey(e), wk, 1});
    for (const auto& e : copy(by_c_[2][y])) add_h({e[0], e[1], x, e[3]}, {SatRule::HNest, hkey(e), wk, 2});
    for (const auto& e : copy(by_c_[3][x])) add_h({e[0], e[1], e[2], y}, {SatRule::HNest, hkey(e), wk, 3});
  }

  template <class V>
  static V copy(const V& v) {
    return v;
  }

  void process_h(const HEntry& e) {
    const auto [a, b, c, d] = e;
    const auto ek = hkey(e);
    if (has_w(b, c)) add_w(a, d, {SatRule::WWrap, ek, pack2(b, c)});
    // e as the outer entry: (a, b, c, d) with inner (b, q2, s, c)
    for (const auto& [q2, s] : copy(lookup(start_end_, pack2(b, c))))
      add_h({a, q2, s, d}, {SatRule::HConcat, ek, hkey({b, q2, s, c})});
    // e as the inner entry: outer (q, a, d, s2)
    for (const auto& [q, s2] : copy(lookup(end_start_, pack2(a, d))))
      add_h({q, b, c, s2}, {SatRule::HConcat, hkey({q, a, d, s2}), ek});
    for (std::size_t i = 0; i < wpred_[a].size(); ++i)
      add_h({wpred_[a][i], b, c, d}, {SatRule::HNest, ek, pack2(wpred_[a][i], a), 0});
    for (std::size_t i = 0; i < wsucc_[b].size(); ++i)
      add_h({a, wsucc_[b][i], c, d}, {SatRule::HNest, ek, pack2(b, wsucc_[b][i]), 1});
    for (std::size_t i = 0; i < wpred_[c].size(); ++i)
      add_h({a, b, wpred_[c][i], d}, {SatRule::HNest, ek, pack2(wpred_[c][i], c), 2});
    for (std::size_t i = 0; i < wsucc_[d].size(); ++i)
      add_h({a, b, c, wsucc_[d][i]}, {SatRule::HNest, ek, pack2(d, wsucc_[d][i]), 3});
    wave(e);
  }

  /// Inner entry (q1, q2, r1, r2) wrapped by cc (q0 -> q1), rc (q2 -> q3),
  /// cr (r0 -> r1) and rr (r2 -> r3).  Joined one transition at a time.
  void wave(const HEntry& inner) {
    const auto [q1, q2, r1, r2] = inner;
    const int from = hpos_.at(hkey(inner));
    for (const auto& [h1, h2] : cc_outs_into_[q1]) {
      for (int i : lookup(rc_by_src_in_, pack2(q2, h1))) {
        const auto& rc = (*rc_)[i];
        const HierId g = rc.out2;
        // stage 1: (q1, h1, h2, g, q3, r1, r2)
        const int s1 = s1_.add(Key8{{q1, h1, h2, g, rc.dst, r1, r2}}, from, i);
        if (s1 < 0) continue;
        for (HierId k : lookup(cr_k_into_, pack2(r1, g))) {
          for (int j : lookup(rr_by_src_ins_, Key8{{r2, k, h2}})) {
            const auto& rr = (*rr_)[j];
            // stage 2: (q1, h1, h2, g, q3, r1, k, r3)
            const int s2 = s2_.add(Key8{{q1, h1, h2, g, rc.dst, r1, k, rr.dst}}, s1, j);
            if (s2 < 0) continue;
            for (int m : lookup(cr_by_dst_io_, Key8{{r1, g, k}})) {
              const auto& cr = (*cr_)[m];
              // stage 3: (q1, h1, h2, q3, r0, r3)
              const int s3 = s3_.add(Key8{{q1, h1, h2, rc.dst, cr.src, rr.dst}}, s2, m);
              if (s3 < 0) continue;
              for (int o : lookup(cc_by_dst_outs_, Key8{{q1, h1, h2}})) {
                add_h({(*cc_)[o].src, rc.dst, cr.src, rr.dst}, {SatRule::HWave, 0, 0, s3});
              }
            }
          }
        }
      }
    }
  }

  void emit_w(StateId x, StateId y, std::vector<TypedLetter>& out) const {
    const Prov& p = wprov_[x * n_ + y];
    switch (p.rule) {
      case SatRule::WEps:
        return;
      case SatRule::WInt: {
        const auto& t = a_.transitions(kinds::ii)[p.aux];
        out.push_back({a_.alphabet()[t.letter], kinds::ii});
        return;
      }
      case SatRule::WConcat:
        emit_w(static_cast<StateId>(p.p1 >> 32), static_cast<StateId>(p.p1 & 0xffffffff), out);
        emit_w(static_cast<StateId>(p.p2 >> 32), static_cast<StateId>(p.p2 & 0xffffffff), out);
        return;
      case SatRule::WWrap: {
        std::vector<TypedLetter> left, right;
        emit_h(unkey(p.p1), left, right);
        out.insert(out.end(), left.begin(), left.end());
        emit_w(static_cast<StateId>(p.p2 >> 32), static_cast<StateId>(p.p2 & 0xffffffff), out);
        out.insert(out.end(), right.begin(), right.end());
        return;
      }
      default:
        throw Error(ErrorCode::OutOfRange, "corrupt W provenance");
    }
  }

  void emit_h(const HEntry& e, std::vector<TypedLetter>& left, std::vector<TypedLetter>& right) const {
    const Prov& p = hprov_[hpos_.at(hkey(e))];
    switch (p.rule) {
      case SatRule::HEps:
        return;
      case SatRule::HConcat: {
        // (x1 x2, y2 y1): outer left, inner left / inner right, outer right
        std::vector<TypedLetter> ol, orr, il, ir;
        emit_h(unkey(p.p1), ol, orr);
        emit_h(unkey(p.p2), il, ir);
        left.insert(left.end(), ol.begin(), ol.end());
        left.insert(left.end(), il.begin(), il.end());
        right.insert(right.end(), ir.begin(), ir.end());
        right.insert(right.end(), orr.begin(), orr.end());
        return;
      }
      case SatRule::HNest: {
        const auto wx = static_cast<StateId>(p.p2 >> 32), wy = static_cast<StateId>(p.p2 & 0xffffffff);
        std::vector<TypedLetter> il, ir, w;
        emit_h(unkey(p.p1), il, ir);
        emit_w(wx, wy, w);
        auto cat = [](std::vector<TypedLetter>& dst, const std::vector<TypedLetter>& x,
                      const std::vector<TypedLetter>& y) {
          dst.insert(dst.end(), x.begin(), x.end());
          dst.insert(dst.end(), y.begin(), y.end());
        };
        switch (p.aux) {
          case 0: cat(left, w, il), cat(right, ir, {}); break;
          case 1: cat(left, il, w), cat(right, ir, {}); break;
          case 2: cat(left, il, {}), cat(right, w, ir); break;
          default: cat(left, il, {}), cat(right, ir, w); break;
        }
        return;
      }
      case SatRule::HWave: {
        const auto& e3 = s3_.entries[p.aux];
        const auto& e2 = s2_.entries[e3.parent];
        const auto& e1 = s1_.entries[e2.parent];
        const HEntry inner = hlist_[e1.parent];
        const auto& rc = (*rc_)[e1.trans];
        const auto& rr = (*rr_)[e2.trans];
        const auto& cr = (*cr_)[e3.trans];
        // any cc into q1 writing (h1, h2) from the wave's left start
        const Transition* cc = nullptr;
        for (int o : lookup(cc_by_dst_outs_, Key8{{e3.key.v[0], e3.key.v[1], e3.key.v[2]}}))
          if ((*cc_)[o].src == e[0]) {
            cc = &(*cc_)[o];
            break;
          }
        if (!cc) throw Error(ErrorCode::OutOfRange, "corrupt wave provenance");
        std::vector<TypedLetter> il, ir;
        emit_h(inner, il, ir);
        const auto& sig = a_.alphabet();
        left.push_back({sig[cc->letter], kinds::cc});
        left.insert(left.end(), il.begin(), il.end());
        left.push_back({sig[rc.letter], kinds::rc});
        right.push_back({sig[cr.letter], kinds::cr});
        right.insert(right.end(), ir.begin(), ir.end());
        right.push_back({sig[rr.letter], kinds::rr});
        return;
      }
      default:
        throw Error(ErrorCode::OutOfRange, "corrupt H provenance");
    }
  }
};

/// Round-based application of the rules in their plain form; small inputs only.
inline SaturationTables saturate_chaotic(const Automaton2NW& a) {
  const auto n = static_cast<StateId>(a.num_states());
  SaturationTables t;
  for (StateId q = 0; q < n; ++q) {
    t.W.insert({q, q});
    for (StateId s = 0; s < n; ++s) t.H.insert({q, q, s, s});
  }
  for (const auto& x : a.transitions(kinds::ii)) t.W.insert({x.src, x.dst});
  std::size_t last = 0;
  while (last != t.W.size() + t.H.size()) {
    last = t.W.size() + t.H.size();
    const auto W = t.W;
    const auto H = t.H;
    for (const auto& [x, y] : W)
      for (const auto& [y2, z] : W)
        if (y == y2) t.W.insert({x, z});
    for (const auto& h : H)
      if (W.count({h[1], h[2]})) t.W.insert({h[0], h[3]});
    for (const auto& o : H)
      for (const auto& i : H)
        if (i[0] == o[1] && i[3] == o[2]) t.H.insert({o[0], i[1], i[2], o[3]});
    for (const auto& h : H)
      for (const auto& [q, p1] : W) {
        if (p1 != h[0]) continue;
        for (const auto& [p2, p3] : W) {
          if (p2 != h[1]) continue;
          for (const auto& [s, t1] : W) {
            if (t1 != h[2]) continue;
            for (const auto& [t2, t3] : W)
              if (t2 == h[3]) t.H.insert({q, p3, s, t3});
          }
        }
      }
    for (const auto& h : H)
      for (const auto& cc : a.transitions(kinds::cc)) {
        if (cc.dst != h[0]) continue;
        for (const auto& rc : a.transitions(kinds::rc)) {
          if (rc.src != h[1] || rc.in1 != cc.out1) continue;
          for (const auto& cr : a.transitions(kinds::cr)) {
            if (cr.dst != h[2] || cr.in2 != rc.out2) continue;
            for (const auto& rr : a.transitions(kinds::rr))
              if (rr.src == h[3] && rr.in1 == cr.out1 && rr.in2 == cc.out2)
                t.H.insert({cc.src, rc.dst, cr.src, rr.dst});
          }
        }
      }
  }
  return t;
}

}  // namespace detail

namespace detail {

/// Steps of a deterministic automaton; a missing step goes to a sink state
/// and writes the sink hierarchical symbol, and is recorded as a transition.
class CompletionSteps {
 public:
  CompletionSteps(Automaton2NW& a, std::size_t budget) : a_(a), budget_(budget) {
    std::string name = "sink";
    while (a_.state_id(name) || a_.hier_id(name)) name += "'";
    sink_ = a_.add_state(name);
    hsink_ = a_.add_hier(name);
    for (const auto& t : a_.transitions(kinds::ii)) int_[{t.src, t.letter}] = t.dst;
    for (const auto& t : a_.transitions(kinds::cc)) cc_[{t.src, t.letter}] = {t.dst, t.out1, t.out2};
    for (const auto& t : a_.transitions(kinds::rc)) rc_[{t.src, t.in1, t.letter}] = {t.dst, t.out2};
    for (const auto& t : a_.transitions(kinds::cr)) cr_[{t.src, t.in2, t.letter}] = {t.dst, t.out1};
    for (const auto& t : a_.transitions(kinds::rr)) rr_[{t.src, t.in1, t.in2, t.letter}] = t.dst;
  }

  StateId sink() const { return sink_; }
  int num_letters() const { return static_cast<int>(a_.alphabet().size()); }

  StateId d_int(StateId s, LetterId a) {
    if (auto it = int_.find({s, a}); it != int_.end()) return it->second;
    add({kinds::ii, s, kNone, kNone, a, kNone, kNone, sink_});
    return int_[{s, a}] = sink_;
  }
  CallStep cc(StateId s, LetterId a) {
    if (auto it = cc_.find({s, a}); it != cc_.end()) return it->second;
    add({kinds::cc, s, kNone, kNone, a, hsink_, hsink_, sink_});
    return cc_[{s, a}] = {sink_, hsink_, hsink_};
  }
  PushStep rc(StateId s, HierId h1, LetterId a) {
    if (auto it = rc_.find({s, h1, a}); it != rc_.end()) return it->second;
    add({kinds::rc, s, h1, kNone, a, kNone, hsink_, sink_});
    return rc_[{s, h1, a}] = {sink_, hsink_};
  }
  PushStep cr(StateId s, HierId g, LetterId a) {
    if (auto it = cr_.find({s, g, a}); it != cr_.end()) return it->second;
    add({kinds::cr, s, kNone, g, a, hsink_, kNone, sink_});
    return cr_[{s, g, a}] = {sink_, hsink_};
  }
  StateId rr(StateId s, HierId k, HierId h2, LetterId a) {
    if (auto it = rr_.find({s, k, h2, a}); it != rr_.end()) return it->second;
    add({kinds::rr, s, k, h2, a, kNone, kNone, sink_});
    return rr_[{s, k, h2, a}] = sink_;
  }
  void check() const {
    if (a_.num_transitions() > budget_) {
      throw Error(ErrorCode::StateBudgetExceeded, "more than " + std::to_string(budget_) + " transitions");
    }
  }

 private:
  Automaton2NW& a_;
  std::size_t budget_;
  StateId sink_ = kNone;
  HierId hsink_ = kNone;
  std::map<std::pair<StateId, LetterId>, StateId> int_;
  std::map<std::pair<StateId, LetterId>, CallStep> cc_;
  std::map<std::tuple<StateId, HierId, LetterId>, PushStep> rc_, cr_;
  std::map<std::tuple<StateId, HierId, HierId, LetterId>, StateId> rr_;

  void add(const Transition& t) { a_.add_transition(t); }
};

}  // namespace detail

/// Adds a sink so that a deterministic automaton has a run on every wave word
/// over its alphabet.  Only steps taken on some wave word are added.
inline Automaton2NW complete_on_waves(const Automaton2NW& b, DetOptions opts = {}) {
  if (!is_deterministic(b)) throw Error(ErrorCode::BadArity, "completion needs a deterministic automaton");
  Automaton2NW out = b;
  detail::CompletionSteps st(out, opts.transition_budget);
  detail::wave_closure(st, out.initial().front());
  return out;
}

/// Complement over wave words of a deterministic automaton, without
/// determinizing it again.
inline Automaton2NW complement_deterministic(const Automaton2NW& b, DetOptions opts = {}) {
  const Automaton2NW c = complete_on_waves(b, opts);
  Automaton2NW out;
  for (const auto& q : c.states()) out.add_state(q);
  for (const auto& p : c.hier()) out.add_hier(p);
  for (const auto& l : c.alphabet()) out.add_letter(l);
  for (StateId q : c.initial()) out.set_initial(q);
  for (StateId q = 0; q < static_cast<StateId>(c.num_states()); ++q)
    if (!c.is_final(q)) out.set_final(q);
  for (std::size_t k = 0; k < 9; ++k)
    for (const auto& t : c.transitions(PositionKind::from_index(k))) out.add_transition(t);
  return out;
}

inline SaturationTables saturate(const Automaton2NW& a, Saturation mode = Saturation::Worklist) {
  if (mode == Saturation::Chaotic) return detail::saturate_chaotic(a);
  return detail::Saturator(a).tables();
}

inline Emptiness emptiness(const Automaton2NW& a) {
  detail::Saturator sat(a);
  for (StateId q0 : a.initial())
    for (StateId qf : a.final_states())
      if (sat.has_w(q0, qf)) return {false, from_typed(sat.w_word(q0, qf))};
  return {};
}

/// Copy of `a` whose alphabet also contains `extra`.
inline Automaton2NW with_letters(Automaton2NW a, const std::vector<std::string>& extra) {
  for (const auto& l : extra) a.add_letter(l);
  return a;
}

/// Acceptor of the wave words outside L(b); deterministic inputs are completed
/// and flipped, the others go through determinize.
inline Automaton2NW complement_automaton(const Automaton2NW& b, DetOptions opts = {}) {
  if (is_deterministic(b)) return complement_deterministic(b, opts);
  return complement_on_waves(b, opts).underlying();
}

/// Wave words over the alphabet of `a` that `a` rejects.
inline Verdict universality(const Automaton2NW& a, DetOptions opts = {}) {
  auto e = emptiness(complement_automaton(a, opts));
  return {e.empty, e.witness};
}

/// L(a) included in L(b) over wave words on the union of both alphabets.
inline Verdict inclusion(const Automaton2NW& a, const Automaton2NW& b, DetOptions opts = {}) {
  auto e = emptiness(product(a, complement_automaton(with_letters(b, a.alphabet()), opts)));
  return {e.empty, e.witness};
}

inline Verdict equivalence(const Automaton2NW& a, const Automaton2NW& b, DetOptions opts = {}) {
  auto ab = inclusion(a, b, opts);
  if (!ab.holds) return ab;
  return inclusion(b, a, opts);
}

}  // namespace wavelang
