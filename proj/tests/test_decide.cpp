#include <catch_amalgamated.hpp>

#include <wavelang/decide.hpp>
#include <wavelang/fixtures.hpp>

#include <chrono>

#include "oracles.hpp"

using namespace wavelang;

namespace {

/// Some wave word of length <= max_len accepted by `a`, by exhaustive search.
bool nonempty_upto(const Automaton2NW& a, std::size_t max_len) {
  for (std::size_t n = 0; n <= max_len; ++n)
    for (const auto& [m1, m2] : oracle::wave_structures(n))
      if (accepted_lettering(a, m1, m2)) return true;
  return false;
}

bool accepts(const Automaton2NW& a, const NestedWord2& w) { return accepts_bruteforce(a, w, 64).accepted; }

}  // namespace

TEST_CASE("emptiness of the fixture automaton") {
  auto e = emptiness(fixtures::a_ex());
  REQUIRE_FALSE(e.empty);
  REQUIRE(e.witness);
  CHECK(*e.witness == fixtures::omega(1));
  CHECK(accepts(fixtures::a_ex(), *e.witness));

  auto no_final = fixtures::a_ex();
  Automaton2NW stripped;
  for (const auto& q : no_final.states()) stripped.add_state(q);
  for (const auto& p : no_final.hier()) stripped.add_hier(p);
  for (const auto& l : no_final.alphabet()) stripped.add_letter(l);
  stripped.set_initial(0);
  for (std::size_t k = 0; k < 9; ++k)
    for (const auto& t : no_final.transitions(PositionKind::from_index(k))) stripped.add_transition(t);
  CHECK(emptiness(stripped).empty);

  Automaton2NW eps;
  eps.add_state("q");
  eps.set_initial(0);
  eps.set_final(0);
  auto e0 = emptiness(eps);
  REQUIRE(e0.witness);
  CHECK(e0.witness->empty());
}

TEST_CASE("emptiness agrees with exhaustive search on random automata") {
  std::mt19937_64 rng(41);
  int nonempty = 0;
  for (int round = 0; round < 60; ++round) {
    oracle::RandomSpec spec{.states = 3, .hier = 2, .letters = 2, .density = 0.12 + 0.01 * (round % 10)};
    spec.post_form = round % 2 == 0;
    auto a = oracle::random_automaton(rng, spec);
    auto e = emptiness(a);
    CHECK(e.empty == !nonempty_upto(a, 10));
    if (!e.empty) {
      ++nonempty;
      REQUIRE(e.witness);
      CHECK(is_wave_word(*e.witness).is_wave);
      CHECK(accepts(a, *e.witness));
    }
  }
  CHECK(nonempty > 10);
  CHECK(nonempty < 60);
}

TEST_CASE("worklist and chaotic saturation reach the same tables") {
  std::mt19937_64 rng(43);
  for (int round = 0; round < 12; ++round) {
    auto a = oracle::random_automaton(rng, {.states = 3, .hier = 2, .letters = 2, .density = 0.2,
                                            .post_form = round % 3 == 0});
    CHECK(saturate(a, Saturation::Worklist) == saturate(a, Saturation::Chaotic));
  }
  CHECK(saturate(fixtures::a_ex()) == saturate(fixtures::a_ex(), Saturation::Chaotic));
}

TEST_CASE("W holds exactly the state pairs linked by short wave words") {
  std::mt19937_64 rng(47);
  for (int round = 0; round < 8; ++round) {
    auto a = oracle::random_automaton(rng, {.states = 3, .letters = 2, .density = 0.25, .post_form = true});
    std::set<WEntry> seen;
    for (std::size_t n = 0; n <= 8; ++n)
      for (const auto& [m1, m2] : oracle::wave_structures(n))
        for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
          std::vector<std::string> letters(n);
          for (std::size_t i = 0; i < n; ++i) letters[i] = a.alphabet()[(mask >> i) & 1];
          NestedWord2 w(letters, m1, m2);
          for (StateId q = 0; q < static_cast<StateId>(a.num_states()); ++q)
            for (StateId r : run_targets(a, w, q)) seen.insert({q, r});
        }
    CHECK(saturate(a).W == seen);
  }
}

TEST_CASE("a dense twenty-state automaton saturates quickly") {
  std::mt19937_64 rng(53);
  auto a = oracle::random_automaton(rng, {.states = 20, .letters = 2, .density = 0.3, .post_form = true});
  auto t0 = std::chrono::steady_clock::now();
  auto e = emptiness(a);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  CHECK(secs < 10.0);
  CHECK_FALSE(e.empty);
  if (e.witness) CHECK(accepts(a, *e.witness));
}

TEST_CASE("decisions through the complement") {
  auto a = fixtures::a_ex();
  auto u = universality(a);
  CHECK_FALSE(u.holds);
  REQUIRE(u.witness);
  CHECK_FALSE(accepts(a, *u.witness));

  Automaton2NW all;
  all.add_state("q");
  all.add_hier("p");
  all.add_letter("x");
  all.set_initial(0);
  all.set_final(0);
  for (std::size_t k = 0; k < 9; ++k) {
    auto kind = PositionKind::from_index(k);
    Transition t{kind, 0, kNone, kNone, 0, kNone, kNone, 0};
    if (kind.upper == Status::Return) t.in1 = 0;
    if (kind.lower == Status::Return) t.in2 = 0;
    if (kind.upper == Status::Call) t.out1 = 0;
    if (kind.lower == Status::Call) t.out2 = 0;
    all.add_transition(t);
  }
  CHECK(universality(all).holds);

  std::mt19937_64 rng(59);
  auto b = oracle::random_automaton(rng, {.states = 2, .letters = 2, .density = 0.2, .post_form = true});
  CHECK(inclusion(a, sum(a, b)).holds);
  CHECK(equivalence(a, determinize(a).underlying()).holds);
  auto mixed = inclusion(a, b);
  CHECK_FALSE(mixed.holds);
  REQUIRE(mixed.witness);
  CHECK(accepts(a, *mixed.witness));
  CHECK_FALSE(accepts(b, *mixed.witness));
}

TEST_CASE("inclusion agrees with the oracle on small random automata") {
  std::mt19937_64 rng(61);
  for (int round = 0; round < 10; ++round) {
    auto x = oracle::random_automaton(rng, {.states = 2, .letters = 2, .density = 0.2, .post_form = true});
    CHECK(equivalence(x, to_nice(x)).holds);
    auto y = oracle::random_automaton(rng, {.states = 2, .letters = 2, .density = 0.15, .post_form = true});
    auto v = inclusion(x, y);
    const auto lx = oracle::language(x, 7), ly = oracle::language(y, 7);
    bool sub = true;
    for (const auto& [key, words] : lx) {
      auto it = ly.find(key);
      for (const auto& l : words)
        if (it == ly.end() || !it->second.count(l)) sub = false;
    }
    CHECK(v.holds == sub);
    if (!v.holds) {
      REQUIRE(v.witness);
      CHECK(accepts(x, *v.witness));
      CHECK_FALSE(accepts(y, *v.witness));
    }
  }
}
