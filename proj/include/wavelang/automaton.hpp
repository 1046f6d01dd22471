#pragma once

// 2-nested word automata: nine transition families indexed by position kind,
// run semantics, a backtracking acceptance oracle, post and nice normal forms,
// and the closure constructions (product, sum, alphabetic morphisms).

#include <wavelang/core.hpp>

#include <algorithm>
#include <array>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

namespace wavelang {

using StateId = int;
using HierId = int;
using LetterId = int;
inline constexpr int kNone = -1;

/// One tuple of a family Δ^x_y.  in1/in2 are the hierarchical states read on
/// the M1/M2 arch closing here, out1/out2 those written on the arch opening
/// here; absent components are kNone.
struct Transition {
  PositionKind kind = kinds::ii;
  StateId src = kNone;
  HierId in1 = kNone;
  HierId in2 = kNone;
  LetterId letter = kNone;
  HierId out1 = kNone;
  HierId out2 = kNone;
  StateId dst = kNone;

  auto operator<=>(const Transition&) const = default;
};

inline bool arity_ok(const Transition& t) {
  return (t.in1 != kNone) == (t.kind.upper == Status::Return) &&
         (t.in2 != kNone) == (t.kind.lower == Status::Return) &&
         (t.out1 != kNone) == (t.kind.upper == Status::Call) &&
         (t.out2 != kNone) == (t.kind.lower == Status::Call);
}

class Automaton2NW {
 public:
  StateId add_state(const std::string& name) { return intern(states_, state_ids_, name); }
  HierId add_hier(const std::string& name) { return intern(hier_, hier_ids_, name); }
  LetterId add_letter(const std::string& name) { return intern(alphabet_, letter_ids_, name); }

  void set_initial(StateId q, bool on = true) { set_flag(initial_, q, on); }
  void set_final(StateId q, bool on = true) { set_flag(final_, q, on); }

  /// Adds a transition after checking tuple arities and identifiers.
  void add_transition(const Transition& t) {
    if (!arity_ok(t)) {
      throw Error(ErrorCode::BadArity, "transition arity does not match kind " + t.kind.name());
    }
    auto check = [](int id, std::size_t n, const char* what) {
      if (id < 0 || static_cast<std::size_t>(id) >= n) {
        throw Error(ErrorCode::OutOfRange, std::string("undeclared ") + what + " id " + std::to_string(id));
      }
    };
    check(t.src, states_.size(), "state");
    check(t.dst, states_.size(), "state");
    check(t.letter, alphabet_.size(), "letter");
    for (HierId h : {t.in1, t.in2, t.out1, t.out2}) {
      if (h != kNone) check(h, hier_.size(), "hierarchical state");
    }
    auto& fam = delta_[t.kind.index()];
    auto it = std::lower_bound(fam.begin(), fam.end(), t);
    if (it == fam.end() || *it != t) fam.insert(it, t);
  }

  const std::vector<std::string>& states() const noexcept { return states_; }
  const std::vector<std::string>& hier() const noexcept { return hier_; }
  const std::vector<std::string>& alphabet() const noexcept { return alphabet_; }
  std::size_t num_states() const noexcept { return states_.size(); }
  std::size_t num_hier() const noexcept { return hier_.size(); }

  std::vector<StateId> initial() const { return members(initial_); }
  std::vector<StateId> final_states() const { return members(final_); }
  bool is_initial(StateId q) const { return flag(initial_, q); }
  bool is_final(StateId q) const { return flag(final_, q); }

  /// Transitions of family Δ^x_y, sorted.
  const std::vector<Transition>& transitions(PositionKind k) const { return delta_[k.index()]; }
  std::size_t num_transitions() const {
    std::size_t n = 0;
    for (const auto& f : delta_) n += f.size();
    return n;
  }

  std::optional<StateId> state_id(const std::string& s) const { return lookup(state_ids_, s); }
  std::optional<HierId> hier_id(const std::string& s) const { return lookup(hier_ids_, s); }
  std::optional<LetterId> letter_id(const std::string& s) const { return lookup(letter_ids_, s); }

  bool operator==(const Automaton2NW& o) const {
    return states_ == o.states_ && hier_ == o.hier_ && alphabet_ == o.alphabet_ && initial() == o.initial() &&
           final_states() == o.final_states() && delta_ == o.delta_;
  }

 private:
  static int intern(std::vector<std::string>& names, std::unordered_map<std::string, int>& ids,
                    const std::string& name) {
    if (auto it = ids.find(name); it != ids.end()) return it->second;
    int id = static_cast<int>(names.size());
    names.push_back(name);
    ids.emplace(name, id);
    return id;
  }
  static std::optional<int> lookup(const std::unordered_map<std::string, int>& ids, const std::string& s) {
    if (auto it = ids.find(s); it != ids.end()) return it->second;
    return std::nullopt;
  }
  void set_flag(std::vector<bool>& v, StateId q, bool on) {
    if (q < 0 || static_cast<std::size_t>(q) >= states_.size()) {
      throw Error(ErrorCode::OutOfRange, "undeclared state id " + std::to_string(q));
    }
    if (v.size() < states_.size()) v.resize(states_.size(), false);
    v[q] = on;
  }
  static bool flag(const std::vector<bool>& v, StateId q) {
    return q >= 0 && static_cast<std::size_t>(q) < v.size() && v[q];
  }
  static std::vector<StateId> members(const std::vector<bool>& v) {
    std::vector<StateId> out;
    for (std::size_t i = 0; i < v.size(); ++i)
      if (v[i]) out.push_back(static_cast<StateId>(i));
    return out;
  }

  std::vector<std::string> states_, hier_, alphabet_;
  std::unordered_map<std::string, int> state_ids_, hier_ids_, letter_ids_;
  std::vector<bool> initial_, final_;
  std::array<std::vector<Transition>, 9> delta_;
};

// ---------------------------------------------------------------------------
// Runs

/// Linear states ℓ_0..ℓ_n plus hierarchical labels; h1[p] is set for M1 calls,
/// h2[p] for M2 calls (index p = position, entry 0 unused), kNone elsewhere.
struct Run {
  std::vector<StateId> linear;
  std::vector<HierId> h1;
  std::vector<HierId> h2;

  bool operator==(const Run&) const = default;
};

/// The transition a run uses at position p, rebuilt from the run and ω.
inline Transition transition_at(const NestedWord2& w, const Run& run, LetterId letter, Position p) {
  Transition t;
  t.kind = w.kind(p);
  t.src = run.linear[p - 1];
  t.dst = run.linear[p];
  t.letter = letter;
  if (t.kind.upper == Status::Call) t.out1 = run.h1[p];
  if (t.kind.lower == Status::Call) t.out2 = run.h2[p];
  if (t.kind.upper == Status::Return) t.in1 = run.h1[w.m1().partner(p)];
  if (t.kind.lower == Status::Return) t.in2 = run.h2[w.m2().partner(p)];
  return t;
}

/// True iff run^A_i holds at every position (the run need not be accepting).
inline bool check_run(const Automaton2NW& a, const NestedWord2& w, const Run& run) {
  const std::size_t n = w.size();
  if (run.linear.size() != n + 1 || run.h1.size() != n + 1 || run.h2.size() != n + 1) return false;
  for (Position p = 1; p <= n; ++p) {
    if ((run.h1[p] != kNone) != w.m1().is_call(p)) return false;
    if ((run.h2[p] != kNone) != w.m2().is_call(p)) return false;
  }
  for (Position p = 1; p <= n; ++p) {
    auto letter = a.letter_id(w.letter(p));
    if (!letter) return false;
    auto t = transition_at(w, run, *letter, p);
    const auto& fam = a.transitions(t.kind);
    if (!std::binary_search(fam.begin(), fam.end(), t)) return false;
  }
  return true;
}

inline bool is_accepting_run(const Automaton2NW& a, const NestedWord2& w, const Run& run) {
  return !run.linear.empty() && a.is_initial(run.linear.front()) && a.is_final(run.linear.back()) &&
         check_run(a, w, run);
}

// ---------------------------------------------------------------------------
// Backtracking search

inline constexpr std::size_t kDefaultAcceptBound = 14;
inline constexpr LetterId kAnyLetter = -2;

namespace detail {

/// Transitions of one family bucketed by (src, letter).
class TransitionIndex {
 public:
  explicit TransitionIndex(const Automaton2NW& a) : nq_(a.num_states()), ns_(a.alphabet().size()) {
    for (std::size_t k = 0; k < 9; ++k) {
      buckets_[k].assign(nq_ * ns_, {});
      for (const auto& t : a.transitions(PositionKind::from_index(k))) {
        buckets_[k][t.src * ns_ + t.letter].push_back(&t);
      }
    }
  }
  const std::vector<const Transition*>& at(PositionKind k, StateId q, LetterId l) const {
    return buckets_[k.index()][q * ns_ + l];
  }
  std::size_t num_letters() const { return ns_; }

 private:
  std::size_t nq_, ns_;
  std::array<std::vector<std::vector<const Transition*>>, 9> buckets_;
};

/// Depth-first enumeration of all runs of `a` over the structure (m1, m2)
/// with letters fixed or free (kAnyLetter).  `on_run` receives each complete
/// run and the letters used; returning false stops the search.
class RunSearch {
 public:
  RunSearch(const Automaton2NW& a, const Matching& m1, const Matching& m2, std::vector<LetterId> letters)
      : a_(a), idx_(a), m1_(m1), m2_(m2), letters_(std::move(letters)) {
    const std::size_t n = letters_.size();
    run_.linear.assign(n + 1, kNone);
    run_.h1.assign(n + 1, kNone);
    run_.h2.assign(n + 1, kNone);
    chosen_.assign(n + 1, kNone);
  }

  template <class F>
  void run_from(StateId q, F&& on_run) {
    run_.linear[0] = q;
    stop_ = false;
    step(1, on_run);
  }

  bool stopped() const { return stop_; }

 private:
  template <class F>
  void step(Position p, F& on_run) {
    const std::size_t n = letters_.size();
    if (p > n) {
      if (!on_run(run_, chosen_)) stop_ = true;
      return;
    }
    const PositionKind k{m1_.status(p), m2_.status(p)};
    const StateId q = run_.linear[p - 1];
    const HierId need1 = k.upper == Status::Return ? run_.h1[m1_.partner(p)] : kNone;
    const HierId need2 = k.lower == Status::Return ? run_.h2[m2_.partner(p)] : kNone;
    LetterId lo = letters_[p - 1], hi = letters_[p - 1];
    if (lo == kAnyLetter) {
      lo = 0;
      hi = static_cast<LetterId>(idx_.num_letters()) - 1;
    }
    for (LetterId l = lo; l <= hi && !stop_; ++l) {
      if (l < 0) continue;
      for (const Transition* t : idx_.at(k, q, l)) {
        if (t->in1 != need1 || t->in2 != need2) continue;
        run_.linear[p] = t->dst;
        run_.h1[p] = t->out1;
        run_.h2[p] = t->out2;
        chosen_[p] = l;
        step(p + 1, on_run);
        if (stop_) return;
      }
    }
  }

  const Automaton2NW& a_;
  TransitionIndex idx_;
  const Matching& m1_;
  const Matching& m2_;
  std::vector<LetterId> letters_;
  Run run_;
  std::vector<LetterId> chosen_;
  bool stop_ = false;
};

/// Letter ids of ω in `a`'s alphabet, or nullopt if some letter is unknown.
inline std::optional<std::vector<LetterId>> letter_ids(const Automaton2NW& a, const NestedWord2& w) {
  std::vector<LetterId> ids;
  ids.reserve(w.size());
  for (const auto& s : w.letters()) {
    auto id = a.letter_id(s);
    if (!id) return std::nullopt;
    ids.push_back(*id);
  }
  return ids;
}

inline void check_bound(const NestedWord2& w, std::size_t bound) {
  if (w.size() > bound) {
    throw Error(ErrorCode::BoundExceeded,
                "word length " + std::to_string(w.size()) + " exceeds bound " + std::to_string(bound));
  }
}

}  // namespace detail

struct Acceptance {
  bool accepted = false;
  std::optional<Run> run;
};

/// Ground-truth acceptance: backtracks over positions left to right, resolving
/// popped hierarchical states through the matchings.
inline Acceptance accepts_bruteforce(const Automaton2NW& a, const NestedWord2& w,
                                     std::size_t bound = kDefaultAcceptBound) {
  detail::check_bound(w, bound);
  auto ids = detail::letter_ids(a, w);
  if (!ids) return {};
  detail::RunSearch search(a, w.m1(), w.m2(), std::move(*ids));
  Acceptance out;
  for (StateId q0 : a.initial()) {
    search.run_from(q0, [&](const Run& r, const std::vector<LetterId>&) {
      if (!a.is_final(r.linear.back())) return true;
      out.accepted = true;
      out.run = r;
      return false;
    });
    if (out.accepted) break;
  }
  return out;
}

/// Number of accepting runs, capped at `limit`.
inline std::size_t count_accepting_runs(const Automaton2NW& a, const NestedWord2& w, std::size_t limit = 1000,
                                        std::size_t bound = kDefaultAcceptBound) {
  detail::check_bound(w, bound);
  auto ids = detail::letter_ids(a, w);
  if (!ids) return 0;
  detail::RunSearch search(a, w.m1(), w.m2(), std::move(*ids));
  std::size_t count = 0;
  for (StateId q0 : a.initial()) {
    search.run_from(q0, [&](const Run& r, const std::vector<LetterId>&) {
      if (a.is_final(r.linear.back())) ++count;
      return count < limit;
    });
    if (count >= limit) break;
  }
  return count;
}

/// All q' with a run q --ω--> q'.
inline std::set<StateId> run_targets(const Automaton2NW& a, const NestedWord2& w, StateId q,
                                     std::size_t bound = kDefaultAcceptBound) {
  detail::check_bound(w, bound);
  std::set<StateId> out;
  auto ids = detail::letter_ids(a, w);
  if (!ids) return out;
  detail::RunSearch search(a, w.m1(), w.m2(), std::move(*ids));
  search.run_from(q, [&](const Run& r, const std::vector<LetterId>&) {
    out.insert(r.linear.back());
    return true;
  });
  return out;
}

/// Some lettering of the structure (m1, m2) accepted by `a`, with its run.
inline std::optional<std::pair<NestedWord2, Run>> accepted_lettering(const Automaton2NW& a, const Matching& m1,
                                                                     const Matching& m2) {
  detail::RunSearch search(a, m1, m2, std::vector<LetterId>(m1.length(), kAnyLetter));
  std::optional<std::pair<NestedWord2, Run>> out;
  for (StateId q0 : a.initial()) {
    search.run_from(q0, [&](const Run& r, const std::vector<LetterId>& chosen) {
      if (!a.is_final(r.linear.back())) return true;
      std::vector<std::string> letters;
      for (std::size_t p = 1; p < chosen.size(); ++p) letters.push_back(a.alphabet()[chosen[p]]);
      out.emplace(NestedWord2(std::move(letters), m1, m2), r);
      return false;
    });
    if (out) break;
  }
  return out;
}

/// Calls f(letters, run) for every accepting run over every lettering of the
/// structure (m1, m2); f returns false to stop.
template <class F>
void for_each_accepting_lettering(const Automaton2NW& a, const Matching& m1, const Matching& m2, F&& f) {
  detail::RunSearch search(a, m1, m2, std::vector<LetterId>(m1.length(), kAnyLetter));
  bool go = true;
  for (StateId q0 : a.initial()) {
    search.run_from(q0, [&](const Run& r, const std::vector<LetterId>& chosen) {
      if (!a.is_final(r.linear.back())) return true;
      std::vector<std::string> letters;
      for (std::size_t p = 1; p < chosen.size(); ++p) letters.push_back(a.alphabet()[chosen[p]]);
      go = f(letters, r);
      return go;
    });
    if (!go) break;
  }
}

/// The accepted words of one structure, as letter sequences.
inline std::set<std::vector<std::string>> accepted_letterings(const Automaton2NW& a, const Matching& m1,
                                                              const Matching& m2) {
  std::set<std::vector<std::string>> out;
  for_each_accepting_lettering(a, m1, m2, [&](const std::vector<std::string>& l, const Run&) {
    out.insert(l);
    return true;
  });
  return out;
}

// ---------------------------------------------------------------------------
// Structural predicates

/// Q0 is a singleton and every family is functional in (src, ins, letter).
inline bool is_deterministic(const Automaton2NW& a) {
  if (a.initial().size() != 1) return false;
  for (std::size_t k = 0; k < 9; ++k) {
    std::set<std::tuple<StateId, HierId, HierId, LetterId>> seen;
    for (const auto& t : a.transitions(PositionKind::from_index(k))) {
      if (!seen.emplace(t.src, t.in1, t.in2, t.letter).second) return false;
    }
  }
  return true;
}

/// P = Q (same names, same order) and every written hierarchical state is the
/// target linear state.
inline bool is_post_form(const Automaton2NW& a) {
  if (a.hier() != a.states()) return false;
  for (std::size_t k = 0; k < 9; ++k) {
    for (const auto& t : a.transitions(PositionKind::from_index(k))) {
      if ((t.out1 != kNone && t.out1 != t.dst) || (t.out2 != kNone && t.out2 != t.dst)) return false;
    }
  }
  return true;
}

/// Every cc/rc/cr/rr tuple carries a single repeated hierarchical state.
inline bool is_nice(const Automaton2NW& a) {
  for (auto k : {kinds::cc, kinds::rc, kinds::cr, kinds::rr}) {
    for (const auto& t : a.transitions(k)) {
      std::set<HierId> hs;
      for (HierId h : {t.in1, t.in2, t.out1, t.out2})
        if (h != kNone) hs.insert(h);
      if (hs.size() != 1) return false;
    }
  }
  return true;
}

/// For a post-form automaton the hierarchical labels follow from ℓ.
inline Run post_form_run(const NestedWord2& w, std::vector<StateId> linear) {
  Run r;
  const std::size_t n = w.size();
  r.linear = std::move(linear);
  r.h1.assign(n + 1, kNone);
  r.h2.assign(n + 1, kNone);
  for (Position p = 1; p <= n; ++p) {
    if (w.m1().is_call(p)) r.h1[p] = r.linear[p];
    if (w.m2().is_call(p)) r.h2[p] = r.linear[p];
  }
  return r;
}

// ---------------------------------------------------------------------------
// Post normal form

/// Tagged-state construction: a state of the result is a state of `a` plus
/// the hierarchical symbols written by the transition entering it (none, one,
/// or the M1/M2 pair at a call-call).  An M1 pop reads a tagged state whose
/// first tag symbol is the expected hierarchical state; an M2 pop reads the
/// last one.  Only tags written by some transition are materialized.
inline Automaton2NW to_post_form(const Automaton2NW& a) {
  using Tag = std::vector<HierId>;
  std::vector<std::set<Tag>> tags(a.num_states());
  for (StateId q : a.initial()) tags[q].insert(Tag{});
  auto out_tag = [](const Transition& t) {
    Tag tag;
    if (t.out1 != kNone) tag.push_back(t.out1);
    if (t.out2 != kNone) tag.push_back(t.out2);
    return tag;
  };
  for (std::size_t k = 0; k < 9; ++k)
    for (const auto& t : a.transitions(PositionKind::from_index(k))) tags[t.dst].insert(out_tag(t));

  Automaton2NW b;
  std::map<std::pair<StateId, Tag>, StateId> id;
  for (StateId q = 0; q < static_cast<StateId>(a.num_states()); ++q) {
    for (const auto& tag : tags[q]) {
      std::string name = a.states()[q];
      if (!tag.empty()) {
        name += "{";
        for (std::size_t i = 0; i < tag.size(); ++i) name += (i ? "," : "") + a.hier()[tag[i]];
        name += "}";
      }
      StateId s = b.add_state(name);
      b.add_hier(name);
      id[{q, tag}] = s;
      if (tag.empty() && a.is_initial(q)) b.set_initial(s);
      if (a.is_final(q)) b.set_final(s);
    }
  }
  for (const auto& l : a.alphabet()) b.add_letter(l);

  std::vector<std::vector<StateId>> pop1(a.num_hier()), pop2(a.num_hier());
  for (const auto& [key, s] : id) {
    const auto& tag = key.second;
    if (tag.empty()) continue;
    pop1[tag.front()].push_back(s);
    pop2[tag.back()].push_back(s);
  }
  const std::vector<StateId> none{kNone};
  for (std::size_t k = 0; k < 9; ++k) {
    for (const auto& t : a.transitions(PositionKind::from_index(k))) {
      const StateId dst = id.at({t.dst, out_tag(t)});
      const auto& ins1 = t.in1 == kNone ? none : pop1[t.in1];
      const auto& ins2 = t.in2 == kNone ? none : pop2[t.in2];
      for (const auto& tag : tags[t.src]) {
        const StateId src = id.at({t.src, tag});
        for (StateId i1 : ins1) {
          for (StateId i2 : ins2) {
            Transition u = t;
            u.src = src;
            u.dst = dst;
            u.in1 = i1;
            u.in2 = i2;
            if (u.out1 != kNone) u.out1 = dst;
            if (u.out2 != kNone) u.out2 = dst;
            b.add_transition(u);
          }
        }
      }
    }
  }
  return b;
}

// ---------------------------------------------------------------------------
// Nice form

/// Every arch of a 2-wave gets the same hierarchical label: the quadruple of
/// labels the original run writes on the first top arch, bottom arch, second
/// top arch and support arch, guessed at the call-call position.  Families
/// that cannot occur in a 2-wave word (the mixed ones) are dropped.
inline Automaton2NW to_nice(const Automaton2NW& a) {
  Automaton2NW b;
  for (const auto& s : a.states()) b.add_state(s);
  for (const auto& l : a.alphabet()) b.add_letter(l);
  for (StateId q : a.initial()) b.set_initial(q);
  for (StateId q : a.final_states()) b.set_final(q);
  const int np = static_cast<int>(a.num_hier());
  auto quad = [&](int p1, int p2, int p3, int p4) { return ((p1 * np + p2) * np + p3) * np + p4; };
  for (int p1 = 0; p1 < np; ++p1)
    for (int p2 = 0; p2 < np; ++p2)
      for (int p3 = 0; p3 < np; ++p3)
        for (int p4 = 0; p4 < np; ++p4)
          b.add_hier("(" + a.hier()[p1] + "," + a.hier()[p2] + "," + a.hier()[p3] + "," + a.hier()[p4] + ")");

  for (const auto& t : a.transitions(kinds::ii)) b.add_transition(t);
  for (const auto& t : a.transitions(kinds::cc)) {
    for (int p2 = 0; p2 < np; ++p2)
      for (int p3 = 0; p3 < np; ++p3) {
        Transition u = t;
        u.out1 = u.out2 = quad(t.out1, p2, p3, t.out2);
        b.add_transition(u);
      }
  }
  for (const auto& t : a.transitions(kinds::rc)) {
    for (int p3 = 0; p3 < np; ++p3)
      for (int p4 = 0; p4 < np; ++p4) {
        Transition u = t;
        u.in1 = u.out2 = quad(t.in1, t.out2, p3, p4);
        b.add_transition(u);
      }
  }
  for (const auto& t : a.transitions(kinds::cr)) {
    for (int p1 = 0; p1 < np; ++p1)
      for (int p4 = 0; p4 < np; ++p4) {
        Transition u = t;
        u.in2 = u.out1 = quad(p1, t.in2, t.out1, p4);
        b.add_transition(u);
      }
  }
  for (const auto& t : a.transitions(kinds::rr)) {
    for (int p1 = 0; p1 < np; ++p1)
      for (int p2 = 0; p2 < np; ++p2) {
        Transition u = t;
        u.in1 = u.in2 = quad(p1, p2, t.in1, t.in2);
        b.add_transition(u);
      }
  }
  return b;
}

// ---------------------------------------------------------------------------
// Closure constructions

/// Synchronous product; hierarchical states are paired componentwise, so the
/// product of two post-form automata is in post form.
inline Automaton2NW product(const Automaton2NW& a, const Automaton2NW& b) {
  Automaton2NW c;
  const int nb = static_cast<int>(b.num_states());
  const int hb = static_cast<int>(b.num_hier());
  for (const auto& qa : a.states())
    for (const auto& qb : b.states()) c.add_state(qa + "&" + qb);
  for (const auto& pa : a.hier())
    for (const auto& pb : b.hier()) c.add_hier(pa + "&" + pb);
  for (StateId qa : a.initial())
    for (StateId qb : b.initial()) c.set_initial(qa * nb + qb);
  for (StateId qa : a.final_states())
    for (StateId qb : b.final_states()) c.set_final(qa * nb + qb);
  // letters of the product: those both sides know
  std::vector<LetterId> b_of_a(a.alphabet().size(), kNone);
  std::vector<LetterId> c_of_a(a.alphabet().size(), kNone);
  for (LetterId l = 0; l < static_cast<LetterId>(a.alphabet().size()); ++l) {
    c_of_a[l] = c.add_letter(a.alphabet()[l]);
    if (auto lb = b.letter_id(a.alphabet()[l])) b_of_a[l] = *lb;
  }
  for (const auto& l : b.alphabet()) c.add_letter(l);
  auto pair_h = [&](HierId x, HierId y) { return x == kNone ? kNone : x * hb + y; };
  for (std::size_t k = 0; k < 9; ++k) {
    const auto kind = PositionKind::from_index(k);
    std::map<LetterId, std::vector<const Transition*>> by_letter;
    for (const auto& t : b.transitions(kind)) by_letter[t.letter].push_back(&t);
    for (const auto& t : a.transitions(kind)) {
      if (b_of_a[t.letter] == kNone) continue;
      auto it = by_letter.find(b_of_a[t.letter]);
      if (it == by_letter.end()) continue;
      for (const Transition* u : it->second) {
        Transition v;
        v.kind = kind;
        v.src = t.src * nb + u->src;
        v.dst = t.dst * nb + u->dst;
        v.letter = c_of_a[t.letter];
        v.in1 = pair_h(t.in1, u->in1);
        v.in2 = pair_h(t.in2, u->in2);
        v.out1 = pair_h(t.out1, u->out1);
        v.out2 = pair_h(t.out2, u->out2);
        c.add_transition(v);
      }
    }
  }
  return c;
}

/// Disjoint union; states and hierarchical states are tagged "1:" / "2:".
inline Automaton2NW sum(const Automaton2NW& a, const Automaton2NW& b) {
  Automaton2NW c;
  for (const auto& q : a.states()) c.add_state("1:" + q);
  for (const auto& q : b.states()) c.add_state("2:" + q);
  for (const auto& p : a.hier()) c.add_hier("1:" + p);
  for (const auto& p : b.hier()) c.add_hier("2:" + p);
  const int sa = static_cast<int>(a.num_states());
  const int ha = static_cast<int>(a.num_hier());
  for (StateId q : a.initial()) c.set_initial(q);
  for (StateId q : b.initial()) c.set_initial(sa + q);
  for (StateId q : a.final_states()) c.set_final(q);
  for (StateId q : b.final_states()) c.set_final(sa + q);
  for (const auto& l : a.alphabet()) c.add_letter(l);
  for (const auto& l : b.alphabet()) c.add_letter(l);
  auto shift = [](HierId h, int by) { return h == kNone ? kNone : h + by; };
  for (std::size_t k = 0; k < 9; ++k) {
    const auto kind = PositionKind::from_index(k);
    for (const auto& t : a.transitions(kind)) {
      Transition u = t;
      u.letter = *c.letter_id(a.alphabet()[t.letter]);
      c.add_transition(u);
    }
    for (const auto& t : b.transitions(kind)) {
      Transition u = t;
      u.src += sa;
      u.dst += sa;
      u.in1 = shift(t.in1, ha);
      u.in2 = shift(t.in2, ha);
      u.out1 = shift(t.out1, ha);
      u.out2 = shift(t.out2, ha);
      u.letter = *c.letter_id(b.alphabet()[t.letter]);
      c.add_transition(u);
    }
  }
  return c;
}

namespace detail {
inline Automaton2NW copy_skeleton(const Automaton2NW& a) {
  Automaton2NW b;
  for (const auto& q : a.states()) b.add_state(q);
  for (const auto& p : a.hier()) b.add_hier(p);
  for (StateId q : a.initial()) b.set_initial(q);
  for (StateId q : a.final_states()) b.set_final(q);
  return b;
}
}  // namespace detail

/// Direct image under a letter-to-letter morphism; letters missing from `h`
/// map to themselves.
inline Automaton2NW morphism_image(const Automaton2NW& a, const std::map<std::string, std::string>& h) {
  Automaton2NW b = detail::copy_skeleton(a);
  std::vector<LetterId> img;
  for (const auto& l : a.alphabet()) {
    auto it = h.find(l);
    img.push_back(b.add_letter(it == h.end() ? l : it->second));
  }
  for (std::size_t k = 0; k < 9; ++k)
    for (auto t : a.transitions(PositionKind::from_index(k))) {
      t.letter = img[t.letter];
      b.add_transition(t);
    }
  return b;
}

/// Inverse image: `h` maps letters of the new alphabet (its keys) to letters
/// of `a`; every transition on h(b) is duplicated onto b.
inline Automaton2NW morphism_preimage(const Automaton2NW& a, const std::map<std::string, std::string>& h) {
  Automaton2NW b = detail::copy_skeleton(a);
  std::vector<std::vector<LetterId>> pre(a.alphabet().size());
  for (const auto& [from, to] : h) {
    LetterId nb = b.add_letter(from);
    if (auto la = a.letter_id(to)) pre[*la].push_back(nb);
  }
  for (std::size_t k = 0; k < 9; ++k)
    for (const auto& t : a.transitions(PositionKind::from_index(k)))
      for (LetterId l : pre[t.letter]) {
        Transition u = t;
        u.letter = l;
        b.add_transition(u);
      }
  return b;
}

}  // namespace wavelang
