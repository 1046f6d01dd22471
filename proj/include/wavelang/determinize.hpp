#pragma once

// Subset-style determinization of post-form automata over 2-wave words.
//
// A deterministic state is a set of triples (upper, lower, current): `current`
// is a state of the source automaton, `lower` records the state at the call of
// the enclosing M2 arch, and `upper` records either the state at the call of
// the enclosing first top arch (one state) or, under a second top arch, the
// three states entered at the wave's cc, rc and cr positions.  Hierarchical
// symbols carry the deterministic state and letter seen at call positions so
// that return positions can replay the source transitions of the whole wave.

#include <wavelang/automaton.hpp>
#include <wavelang/core.hpp>

#include <json.hpp>

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <set>
#include <string>
#include <tuple>
#include <vector>

namespace wavelang {

/// Upper reference: one state, or three states for second-top-arch surfaces.
struct RefUpper {
  std::array<StateId, 3> q{kNone, kNone, kNone};
  int len = 1;

  static RefUpper one(StateId a) { return {{a, kNone, kNone}, 1}; }
  static RefUpper three(StateId a, StateId b, StateId c) { return {{a, b, c}, 3}; }

  /// Sequence-prefix order.
  bool prefix_of(const RefUpper& o) const {
    if (len > o.len) return false;
    for (int i = 0; i < len; ++i)
      if (q[i] != o.q[i]) return false;
    return true;
  }

  auto operator<=>(const RefUpper&) const = default;
};

struct Triple {
  RefUpper upper;
  StateId lower = kNone;
  StateId current = kNone;

  auto operator<=>(const Triple&) const = default;
};

using DetStateId = int;
using DetHierId = int;

/// (S, a) pushed at call-call positions, or (S, a, S', a') pushed at rc / cr.
struct DetHier {
  DetStateId s1 = kNone;
  LetterId a1 = kNone;
  DetStateId s2 = kNone;
  LetterId a2 = kNone;

  bool is_pair() const { return s2 != kNone; }
  auto operator<=>(const DetHier&) const = default;
};

inline constexpr std::size_t kDefaultStateBudget = 1'000'000;

struct DetOptions {
  std::size_t state_budget = kDefaultStateBudget;
  /// Cap on transitions materialized by close().
  std::size_t transition_budget = 20'000'000;
};

namespace detail {

struct CallStep {
  int dst;
  int h1, h2;
};

struct PushStep {
  int dst;
  int out;
};

/// Grammar-guided exploration of every transition a deterministic device
/// takes on wave words from `initial`.  `Steps` provides
///   num_letters(), d_int(s, a), cc(s, a) -> CallStep,
///   rc(s, h1, a) -> PushStep (pushes the M2 symbol g),
///   cr(s, g, a) -> PushStep (pushes the M1 symbol k),
///   rr(s, k, h2, a), check().
/// W words and left components of H-pairs never pop symbols pushed outside
/// them, so the states they lead to (wsum, lsum) are exact.  H-pair summaries
/// {(t, r')} are kept per (l, r) and computed only for right starts r that
/// occur with left start l, so every step taken lies in a genuine wave context.
template <class Steps>
void wave_closure(Steps& st, int initial) {
  using Pair = std::pair<int, int>;
  std::vector<int> found;
  std::set<int> known;
  auto see = [&](int s) {
    if (known.insert(s).second) found.push_back(s);
    return s;
  };
  see(initial);
  std::map<int, std::set<int>> wsum, lsum;
  std::set<Pair> demand;
  std::map<Pair, std::set<Pair>> hsum;
  const int nl = st.num_letters();
  auto copy = [](const auto& s) { return std::vector(s.begin(), s.end()); };
  auto size = [&] {
    std::size_t n = found.size() + demand.size();
    for (const auto& [k, v] : wsum) n += v.size();
    for (const auto& [k, v] : lsum) n += v.size();
    for (const auto& [k, v] : hsum) n += v.size();
    return n;
  };
  std::size_t last = static_cast<std::size_t>(-1);
  while (last != size()) {
    last = size();
    for (std::size_t i = 0; i < found.size(); ++i) {
      wsum[found[i]].insert(found[i]);
      lsum[found[i]].insert(found[i]);
    }
    for (std::size_t i = 0; i < found.size(); ++i) {
      const int s = found[i];
      for (int r : copy(wsum[s])) {
        for (int a = 0; a < nl; ++a) wsum[s].insert(see(st.d_int(r, a)));
        for (int x : copy(wsum[r])) wsum[s].insert(x);
      }
      for (int t : copy(lsum[s])) {
        for (int x : copy(wsum[t])) lsum[s].insert(x);
        for (int x : copy(lsum[t])) lsum[s].insert(x);
      }
      for (int a1 = 0; a1 < nl; ++a1) {
        const CallStep c = st.cc(s, a1);
        see(c.dst);
        for (int t1 : copy(lsum[c.dst]))
          for (int a2 = 0; a2 < nl; ++a2) lsum[s].insert(see(st.rc(t1, c.h1, a2).dst));
      }
      // an H-pair wrapped around a W word
      for (int t : copy(lsum[s]))
        for (int r : copy(wsum[t])) {
          demand.insert({s, r});
          for (const auto& [tt, rp] : copy(hsum[{s, r}]))
            if (tt == t) wsum[s].insert(rp);
        }
      st.check();
    }
    for (const auto [l, r] : copy(demand)) {
      hsum[{l, r}].insert({l, r});
      // concatenation: the inner pair starts where the outer left part ends
      for (int l1 : copy(lsum[l])) {
        demand.insert({l1, r});
        for (const auto& [t, r1] : copy(hsum[{l1, r}])) {
          demand.insert({l, r1});
          for (const auto& [m, rp] : copy(hsum[{l, r1}]))
            if (m == l1) hsum[{l, r}].insert({t, rp});
        }
      }
      // W words on both sides
      for (int l0 : copy(wsum[l]))
        for (int r0 : copy(wsum[r])) {
          demand.insert({l0, r0});
          for (const auto& [t0, r0p] : copy(hsum[{l0, r0}]))
            for (int t : copy(wsum[t0]))
              for (int rp : copy(wsum[r0p])) hsum[{l, r}].insert({t, rp});
        }
      // a wave around an inner pair
      for (int a1 = 0; a1 < nl; ++a1) {
        const CallStep c = st.cc(l, a1);
        for (int t1 : copy(lsum[c.dst]))
          for (int a2 = 0; a2 < nl; ++a2) {
            const PushStep b = st.rc(t1, c.h1, a2);
            for (int a3 = 0; a3 < nl; ++a3) {
              const PushStep k = st.cr(r, b.out, a3);
              see(k.dst);
              demand.insert({c.dst, k.dst});
              for (const auto& [m, r2] : copy(hsum[{c.dst, k.dst}]))
                if (m == t1)
                  for (int a4 = 0; a4 < nl; ++a4) hsum[{l, r}].insert({b.dst, see(st.rr(r2, k.out, c.h2, a4))});
            }
          }
      }
      st.check();
    }
  }
}

}  // namespace detail
class DetAutomaton {
  template <class F>
  auto locked(F&& f) const {
    std::lock_guard lock(impl_->mu);
    return f();
  }

 public:
  /// Non-post-form sources are normalized first.
  DetAutomaton(Automaton2NW source, DetOptions opts) : impl_(std::make_shared<Impl>(std::move(source), opts)) {}

  const Automaton2NW& source() const { return impl_->src; }
  DetStateId initial() const { return impl_->initial; }
  bool complemented() const { return flip_; }

  /// Same transition structure with final and non-final states swapped.
  DetAutomaton complement() const {
    DetAutomaton c = *this;
    c.flip_ = !flip_;
    return c;
  }

  std::size_t num_states() const {
    std::lock_guard lock(impl_->mu);
    return impl_->states.size();
  }
  std::vector<Triple> triples(DetStateId s) const {
    std::lock_guard lock(impl_->mu);
    return impl_->states.at(s);
  }
  DetHier hier(DetHierId h) const {
    std::lock_guard lock(impl_->mu);
    return impl_->hiers.at(h);
  }
  bool is_final(DetStateId s) const {
    std::lock_guard lock(impl_->mu);
    return impl_->final_of(s) != flip_;
  }

  // Transition functions; missing states are created on demand.
  DetStateId step_int(DetStateId s, LetterId a) const { return locked([&] { return impl_->d_int(s, a); }); }
  DetStateId step_cc(DetStateId s, LetterId a) const { return locked([&] { return impl_->d_cc(s, a); }); }
  DetStateId step_rc(DetStateId s, DetHierId h1, LetterId a) const {
    return locked([&] { return impl_->d_rc(s, h1, a); });
  }
  DetStateId step_cr(DetStateId s, DetHierId h2, LetterId a) const {
    return locked([&] { return impl_->d_cr(s, h2, a); });
  }
  DetStateId step_rr(DetStateId s, DetHierId h1, DetHierId h2, LetterId a) const {
    return locked([&] { return impl_->d_rr(s, h1, h2, a); });
  }
  DetHierId push_single(DetStateId s, LetterId a) const { return locked([&] { return impl_->intern_hier({s, a}); }); }
  DetHierId push_pair(DetStateId s1, LetterId a1, DetStateId s2, LetterId a2) const {
    return locked([&] { return impl_->intern_hier({s1, a1, s2, a2}); });
  }

  /// Explores every state and transition reachable on wave-shaped inputs.
  void close() const {
    std::lock_guard lock(impl_->mu);
    impl_->close();
  }

  /// The closed automaton as a plain 2NWA with states S0.. and hier H0...
  Automaton2NW underlying() const;

  /// Maps every state name to its triple set and every hier name to its payload.
  nlohmann::json sidecar() const;

 private:
  struct Impl {
    Impl(Automaton2NW a, DetOptions o) : src(is_post_form(a) ? std::move(a) : to_post_form(a)), opts(o) {
      const std::size_t nq = src.num_states(), ns = src.alphabet().size();
      nsig = ns;
      by_int.assign(nq * ns, {});
      by_cc.assign(nq * ns, {});
      for (const auto& t : src.transitions(kinds::ii)) by_int[t.src * ns + t.letter].push_back(t.dst);
      for (const auto& t : src.transitions(kinds::cc)) by_cc[t.src * ns + t.letter].push_back(t.dst);
      for (const auto& t : src.transitions(kinds::rc)) by_rc[{t.src, t.in1, t.letter}].push_back(t.dst);
      for (const auto& t : src.transitions(kinds::cr)) by_cr[{t.src, t.in2, t.letter}].push_back(t.dst);
      for (const auto& t : src.transitions(kinds::rr)) by_rr[{t.src, t.in1, t.in2, t.letter}].push_back(t.dst);
      std::vector<Triple> init;
      for (StateId q : src.initial()) init.push_back({RefUpper::one(q), q, q});
      initial = intern(std::move(init));
    }

    Automaton2NW src;
    DetOptions opts;
    std::size_t nsig = 0;
    mutable std::mutex mu;

    std::vector<std::vector<StateId>> by_int, by_cc;
    std::map<std::tuple<StateId, StateId, LetterId>, std::vector<StateId>> by_rc, by_cr;
    std::map<std::tuple<StateId, StateId, StateId, LetterId>, std::vector<StateId>> by_rr;

    std::vector<std::vector<Triple>> states;
    std::map<std::vector<Triple>, DetStateId> state_ids;
    std::vector<DetHier> hiers;
    std::map<DetHier, DetHierId> hier_ids;
    DetStateId initial = kNone;

    std::map<std::pair<DetStateId, LetterId>, DetStateId> m_int, m_cc;
    std::map<std::tuple<DetStateId, DetHierId, LetterId>, DetStateId> m_rc, m_cr;
    std::map<std::tuple<DetStateId, DetHierId, DetHierId, LetterId>, DetStateId> m_rr;

    static const std::vector<StateId>& none() {
      static const std::vector<StateId> empty;
      return empty;
    }
    const std::vector<StateId>& int_succ(StateId q, LetterId a) const {
      return a == kNone ? none() : by_int[q * nsig + a];
    }
    const std::vector<StateId>& cc_succ(StateId q, LetterId a) const {
      return a == kNone ? none() : by_cc[q * nsig + a];
    }
    template <class M, class K>
    static const std::vector<StateId>& find(const M& m, const K& k) {
      auto it = m.find(k);
      return it == m.end() ? none() : it->second;
    }

    bool final_of(DetStateId s) const {
      for (const auto& t : states[s])
        if (src.is_final(t.current)) return true;
      return false;
    }

    DetStateId intern(std::vector<Triple> ts) {
      std::sort(ts.begin(), ts.end());
      ts.erase(std::unique(ts.begin(), ts.end()), ts.end());
      if (auto it = state_ids.find(ts); it != state_ids.end()) return it->second;
      if (states.size() >= opts.state_budget) {
        throw Error(ErrorCode::StateBudgetExceeded,
                    "more than " + std::to_string(opts.state_budget) + " deterministic states");
      }
      DetStateId id = static_cast<DetStateId>(states.size());
      states.push_back(ts);
      state_ids.emplace(std::move(ts), id);
      return id;
    }

    DetHierId intern_hier(const DetHier& h) {
      if (auto it = hier_ids.find(h); it != hier_ids.end()) return it->second;
      DetHierId id = static_cast<DetHierId>(hiers.size());
      hiers.push_back(h);
      hier_ids.emplace(h, id);
      return id;
    }

    // Partial solutions of the wave formulas, one level per wave position.
    struct T1 {
      RefUpper r1;
      StateId r0, q1p;
      auto operator<=>(const T1&) const = default;
    };
    struct T2 {
      RefUpper r1;
      StateId r0, q1p, r2, q2p;
      auto operator<=>(const T2&) const = default;
    };
    struct T3 {
      RefUpper r1;
      StateId r0, q1p, r2, q2p;
      RefUpper r3;
      StateId q3p;
      auto operator<=>(const T3&) const = default;
    };

    std::set<T1> level1(DetStateId s1, LetterId a1) const {
      std::set<T1> out;
      for (const auto& t : states[s1])
        for (StateId q1p : cc_succ(t.current, a1)) out.insert({t.upper, t.lower, q1p});
      return out;
    }
    std::set<T2> level2(DetStateId s1, LetterId a1, DetStateId s2, LetterId a2) const {
      std::set<T2> out;
      for (const auto& x : level1(s1, a1))
        for (const auto& t : states[s2]) {
          if (t.upper != RefUpper::one(x.q1p)) continue;
          for (StateId q2p : find(by_rc, std::tuple{t.current, x.q1p, a2}))
            out.insert({x.r1, x.r0, x.q1p, t.lower, q2p});
        }
      return out;
    }
    std::set<T3> level3(DetStateId s1, LetterId a1, DetStateId s2, LetterId a2, DetStateId s3, LetterId a3) const {
      std::set<T3> out;
      for (const auto& x : level2(s1, a1, s2, a2))
        for (const auto& t : states[s3]) {
          if (t.lower != x.q2p || !x.r1.prefix_of(t.upper)) continue;
          for (StateId q3p : find(by_cr, std::tuple{t.current, x.q2p, a3}))
            out.insert({x.r1, x.r0, x.q1p, x.r2, x.q2p, t.upper, q3p});
        }
      return out;
    }

    DetStateId d_int(DetStateId s, LetterId a) {
      if (auto it = m_int.find({s, a}); it != m_int.end()) return it->second;
      std::vector<Triple> out;
      for (const auto& t : states[s])
        for (StateId qp : int_succ(t.current, a)) out.push_back({t.upper, t.lower, qp});
      DetStateId r = intern(std::move(out));
      m_int[{s, a}] = r;
      return r;
    }

    DetStateId d_cc(DetStateId s1, LetterId a1) {
      if (auto it = m_cc.find({s1, a1}); it != m_cc.end()) return it->second;
      std::vector<Triple> out;
      for (const auto& x : level1(s1, a1)) out.push_back({RefUpper::one(x.q1p), x.q1p, x.q1p});
      DetStateId r = intern(std::move(out));
      m_cc[{s1, a1}] = r;
      return r;
    }

    DetStateId d_rc(DetStateId s2, DetHierId h1, LetterId a2) {
      const auto key = std::tuple{s2, h1, a2};
      if (auto it = m_rc.find(key); it != m_rc.end()) return it->second;
      const DetHier h = hiers.at(h1);
      std::vector<Triple> out;
      if (!h.is_pair())
        for (const auto& x : level2(h.s1, h.a1, s2, a2)) out.push_back({x.r1, x.q2p, x.q2p});
      DetStateId r = intern(std::move(out));
      m_rc[key] = r;
      return r;
    }

    DetStateId d_cr(DetStateId s3, DetHierId h2, LetterId a3) {
      const auto key = std::tuple{s3, h2, a3};
      if (auto it = m_cr.find(key); it != m_cr.end()) return it->second;
      const DetHier h = hiers.at(h2);
      std::vector<Triple> out;
      if (h.is_pair())
        for (const auto& x : level3(h.s1, h.a1, h.s2, h.a2, s3, a3))
          out.push_back({RefUpper::three(x.q1p, x.q2p, x.q3p), x.r2, x.q3p});
      DetStateId r = intern(std::move(out));
      m_cr[key] = r;
      return r;
    }

    /// h1: (S2, a2, S3, a3) from the second top arch; h2: (S1, a1) from the
    /// support arch.
    DetStateId d_rr(DetStateId s4, DetHierId h1, DetHierId h2, LetterId a4) {
      const auto key = std::tuple{s4, h1, h2, a4};
      if (auto it = m_rr.find(key); it != m_rr.end()) return it->second;
      const DetHier top = hiers.at(h1), sup = hiers.at(h2);
      std::vector<Triple> out;
      if (top.is_pair() && !sup.is_pair()) {
        for (const auto& x : level3(sup.s1, sup.a1, top.s1, top.a1, top.s2, top.a2))
          for (const auto& t : states[s4]) {
            if (t.upper != RefUpper::three(x.q1p, x.q2p, x.q3p) || t.lower != x.q1p) continue;
            for (StateId q4p : find(by_rr, std::tuple{t.current, x.q3p, x.q1p, a4}))
              out.push_back({x.r3, x.r0, q4p});
          }
      }
      DetStateId r = intern(std::move(out));
      m_rr[key] = r;
      return r;
    }

    std::size_t num_transitions() const {
      return m_int.size() + m_cc.size() + m_rc.size() + m_cr.size() + m_rr.size();
    }

    /// The deterministic steps as seen by detail::wave_closure.
    struct Steps {
      Impl& I;
      int num_letters() const { return static_cast<int>(I.nsig); }
      DetStateId d_int(DetStateId s, LetterId a) { return I.d_int(s, a); }
      detail::CallStep cc(DetStateId s, LetterId a) {
        const DetHierId h = I.intern_hier({s, a});
        return {I.d_cc(s, a), h, h};
      }
      detail::PushStep rc(DetStateId s, DetHierId h1, LetterId a) {
        const DetHier top = I.hiers.at(h1);
        return {I.d_rc(s, h1, a), I.intern_hier({top.s1, top.a1, s, a})};
      }
      detail::PushStep cr(DetStateId s, DetHierId g, LetterId a) {
        const DetHier bottom = I.hiers.at(g);
        return {I.d_cr(s, g, a), I.intern_hier({bottom.s2, bottom.a2, s, a})};
      }
      DetStateId rr(DetStateId s, DetHierId k, DetHierId h2, LetterId a) { return I.d_rr(s, k, h2, a); }
      void check() const {
        if (I.num_transitions() > I.opts.transition_budget) {
          throw Error(ErrorCode::StateBudgetExceeded,
                      "more than " + std::to_string(I.opts.transition_budget) + " deterministic transitions");
        }
      }
    };

    void close() {
      Steps st{*this};
      detail::wave_closure(st, initial);
    }
  };

  std::shared_ptr<Impl> impl_;
  bool flip_ = false;
};

/// Determinizes `a` over 2-wave words.  States are built on demand starting
/// from the initial state; close() materializes the reachable part.
inline DetAutomaton determinize(const Automaton2NW& a, DetOptions opts = {}) {
  return DetAutomaton(a, opts);
}

/// Deterministic acceptor of the wave words outside L(a).
inline DetAutomaton complement_on_waves(const Automaton2NW& a, DetOptions opts = {}) {
  return determinize(a, opts).complement();
}

struct DetRun {
  bool accepted = false;
  /// L_0 .. L_n
  std::vector<DetStateId> trace;
};

inline DetRun run_deterministic(const DetAutomaton& d, const NestedWord2& w) {
  auto cert = is_wave_word(w);
  if (!cert.is_wave) {
    throw Error(ErrorCode::NotWaveWord, "deterministic run needs a 2-wave word; " + to_string(*cert.witness) +
                                            " lies on no 2-wave");
  }
  const std::size_t n = w.size();
  DetRun run;
  run.trace.assign(n + 1, kNone);
  run.trace[0] = d.initial();
  std::vector<DetHierId> h1(n + 1, kNone), h2(n + 1, kNone);
  for (Position p = 1; p <= n; ++p) {
    const DetStateId s = run.trace[p - 1];
    const LetterId a = d.source().letter_id(w.letter(p)).value_or(kNone);
    const auto k = w.kind(p);
    DetStateId next = kNone;
    if (k == kinds::ii) {
      next = d.step_int(s, a);
    } else if (k == kinds::cc) {
      next = d.step_cc(s, a);
      h1[p] = h2[p] = d.push_single(s, a);
    } else if (k == kinds::rc) {
      const DetHierId in = h1[w.m1().partner(p)];
      next = d.step_rc(s, in, a);
      const DetHier top = d.hier(in);
      h2[p] = d.push_pair(top.s1, top.a1, s, a);
    } else if (k == kinds::cr) {
      const DetHierId in = h2[w.m2().partner(p)];
      next = d.step_cr(s, in, a);
      const DetHier bottom = d.hier(in);
      h1[p] = d.push_pair(bottom.s2, bottom.a2, s, a);
    } else {
      next = d.step_rr(s, h1[w.m1().partner(p)], h2[w.m2().partner(p)], a);
    }
    run.trace[p] = next;
  }
  run.accepted = d.is_final(run.trace[n]);
  return run;
}

inline Automaton2NW DetAutomaton::underlying() const {
  close();
  std::lock_guard lock(impl_->mu);
  auto& I = *impl_;
  std::map<std::tuple<DetStateId, DetHierId, LetterId>, DetHierId> rc_out, cr_out;
  for (const auto& [k, v] : I.m_rc) {
    const auto [s, in, a] = k;
    const DetHier top = I.hiers[in];
    if (!top.is_pair()) rc_out[k] = I.intern_hier({top.s1, top.a1, s, a});
  }
  for (const auto& [k, v] : I.m_cr) {
    const auto [s, in, a] = k;
    const DetHier bottom = I.hiers[in];
    if (bottom.is_pair()) cr_out[k] = I.intern_hier({bottom.s2, bottom.a2, s, a});
  }
  for (const auto& [k, v] : I.m_cc) I.intern_hier({k.first, k.second});
  Automaton2NW out;
  for (std::size_t s = 0; s < I.states.size(); ++s) out.add_state("S" + std::to_string(s));
  for (std::size_t h = 0; h < I.hiers.size(); ++h) out.add_hier("H" + std::to_string(h));
  for (const auto& l : I.src.alphabet()) out.add_letter(l);
  out.set_initial(I.initial);
  for (std::size_t s = 0; s < I.states.size(); ++s)
    if (I.final_of(static_cast<DetStateId>(s)) != flip_) out.set_final(static_cast<DetStateId>(s));
  auto hid = [&](const DetHier& h) { return I.hier_ids.at(h); };
  for (const auto& [k, v] : I.m_int) out.add_transition({kinds::ii, k.first, kNone, kNone, k.second, kNone, kNone, v});
  for (const auto& [k, v] : I.m_cc) {
    const DetHierId h = hid({k.first, k.second});
    out.add_transition({kinds::cc, k.first, kNone, kNone, k.second, h, h, v});
  }
  for (const auto& [k, h] : rc_out) {
    const auto [s, in, a] = k;
    out.add_transition({kinds::rc, s, in, kNone, a, kNone, h, I.m_rc.at(k)});
  }
  for (const auto& [k, h] : cr_out) {
    const auto [s, in, a] = k;
    out.add_transition({kinds::cr, s, kNone, in, a, h, kNone, I.m_cr.at(k)});
  }
  for (const auto& [k, v] : I.m_rr) {
    const auto [s, top, sup, a] = k;
    if (I.hiers[top].is_pair() && !I.hiers[sup].is_pair())
      out.add_transition({kinds::rr, s, top, sup, a, kNone, kNone, v});
  }
  return out;
}

inline nlohmann::json DetAutomaton::sidecar() const {
  std::lock_guard lock(impl_->mu);
  const auto& I = *impl_;
  const auto& names = I.src.states();
  nlohmann::json j;
  auto& st = j["states"] = nlohmann::json::object();
  for (std::size_t s = 0; s < I.states.size(); ++s) {
    auto arr = nlohmann::json::array();
    for (const auto& t : I.states[s]) {
      auto up = nlohmann::json::array();
      for (int i = 0; i < t.upper.len; ++i) up.push_back(names[t.upper.q[i]]);
      arr.push_back({{"upper", up}, {"lower", names[t.lower]}, {"current", names[t.current]}});
    }
    st["S" + std::to_string(s)] = arr;
  }
  auto& hs = j["hier"] = nlohmann::json::object();
  auto letter = [&](LetterId a) { return a == kNone ? std::string("?") : I.src.alphabet()[a]; };
  for (std::size_t h = 0; h < I.hiers.size(); ++h) {
    const auto& x = I.hiers[h];
    auto e = nlohmann::json::array({"S" + std::to_string(x.s1), letter(x.a1)});
    if (x.is_pair()) {
      e.push_back("S" + std::to_string(x.s2));
      e.push_back(letter(x.a2));
    }
    hs["H" + std::to_string(h)] = e;
  }
  j["initial"] = "S" + std::to_string(I.initial);
  j["complemented"] = flip_;
  return j;
}

}  // namespace wavelang
