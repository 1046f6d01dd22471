#include <catch_amalgamated.hpp>

#include <wavelang/determinize.hpp>
#include <wavelang/fixtures.hpp>

#include "oracles.hpp"

using namespace wavelang;

namespace {

bool flavor_ok(const DetAutomaton& d) {
  for (DetStateId s = 0; s < static_cast<DetStateId>(d.num_states()); ++s) {
    auto ts = d.triples(s);
    for (const auto& t : ts) {
      if (t.upper.len != ts.front().upper.len) return false;
      if (t.upper.len != 1 && t.upper.len != 3) return false;
    }
  }
  return true;
}

}  // namespace

TEST_CASE("the a^n b^n c^n d^n automaton determinized") {
  auto a = fixtures::a_ex();
  auto d = determinize(a);
  for (std::size_t n = 1; n <= 4; ++n) CHECK(run_deterministic(d, fixtures::omega(n)).accepted);

  auto w = fixtures::omega(2);
  auto run = run_deterministic(d, w);
  bool has_qd = false;
  for (const auto& t : d.triples(run.trace[8])) has_qd |= t.current == *a.state_id("qd");
  CHECK(has_qd);

  auto letters = w.letters();
  letters[6] = "c";
  CHECK_FALSE(run_deterministic(d, NestedWord2(letters, w.m1(), w.m2())).accepted);
  CHECK_FALSE(accepts_bruteforce(a, NestedWord2(letters, w.m1(), w.m2())).accepted);
  CHECK_FALSE(run_deterministic(d, NestedWord2{}).accepted);
  CHECK_FALSE(run_deterministic(d, NestedWord2({"z"})).accepted);

  CHECK_THROWS_AS(run_deterministic(d, fixtures::fig2_middle()), Error);

  std::mt19937_64 rng(3);
  for (const auto& v : oracle::sampled_words(8, {"a", "b", "c", "d"}, 6, rng)) {
    auto r = run_deterministic(d, v);
    REQUIRE(r.accepted == accepts_bruteforce(a, v).accepted);
    REQUIRE_FALSE(oracle::triple_violation(d, v, r.trace));
  }
  CHECK(flavor_ok(d));
}

TEST_CASE("an automaton without transitions accepts only the empty word") {
  Automaton2NW a;
  a.add_state("q");
  a.add_hier("q");
  a.add_letter("a");
  a.set_initial(0);
  a.set_final(0);
  auto d = determinize(a);
  for (const auto& w : oracle::wave_words(8, {"a"})) CHECK(run_deterministic(d, w).accepted == w.empty());
}

TEST_CASE("complement on waves") {
  auto a = fixtures::a_ex();
  auto c = complement_on_waves(a);
  CHECK(c.complemented());
  CHECK_FALSE(run_deterministic(c, fixtures::omega(2)).accepted);
  CHECK(run_deterministic(c, NestedWord2({"a", "b", "c", "d"})).accepted);
}

TEST_CASE("determinization agrees with the oracle on random automata") {
  std::mt19937_64 rng(23);
  for (int round = 0; round < 6; ++round) {
    auto a = oracle::random_automaton(
        rng, {.states = 1 + round % 3, .letters = 2, .density = 0.35, .post_form = true, .wave_kinds_only = true});
    auto d = determinize(a);
    auto c = d.complement();
    for (std::size_t n = 0; n <= 8; ++n) {
      for (const auto& w : oracle::wave_words(n, {"a", "b"})) {
        if (w.size() != n) continue;
        auto r = run_deterministic(d, w);
        const bool truth = accepts_bruteforce(a, w).accepted;
        REQUIRE(r.accepted == truth);
        REQUIRE(run_deterministic(c, w).accepted == !truth);
        if (n <= 6) REQUIRE_FALSE(oracle::triple_violation(d, w, r.trace));
      }
    }
    CHECK(flavor_ok(d));
  }
}

TEST_CASE("non-post-form sources are normalized first") {
  std::mt19937_64 rng(29);
  for (int round = 0; round < 3; ++round) {
    auto a = oracle::random_automaton(rng, {.states = 2, .hier = 2, .letters = 2, .density = 0.2});
    auto d = determinize(a);
    CHECK(is_post_form(d.source()));
    for (const auto& w : oracle::wave_words(6, {"a", "b"}))
      REQUIRE(run_deterministic(d, w).accepted == accepts_bruteforce(a, w).accepted);
  }
}

TEST_CASE("the closed automaton is a deterministic 2NWA with the same wave language") {
  auto a = fixtures::a_ex();
  auto d = determinize(a);
  auto u = d.underlying();
  CHECK(is_deterministic(u));
  CHECK(oracle::language(u, 7) == oracle::language(a, 7));
  auto side = d.sidecar();
  CHECK(side["states"].size() == u.num_states());
  CHECK(side["initial"] == "S0");

  std::mt19937_64 rng(31);
  // closures grow quickly with density, so these stay sparse
  for (int round = 0; round < 6; ++round) {
    auto r = oracle::random_automaton(rng, {.states = 2, .letters = 2, .density = 0.15, .post_form = true});
    auto ur = determinize(r).underlying();
    CHECK(is_deterministic(ur));
    CHECK(oracle::language(ur, 8) == oracle::language(r, 8));
  }
}

TEST_CASE("state budget") {
  std::mt19937_64 rng(31);
  auto dense = oracle::random_automaton(rng, {.states = 2, .letters = 2, .density = 0.3, .post_form = true});
  CHECK_THROWS_AS(determinize(dense, {.transition_budget = 1000}).underlying(), Error);

  auto d = determinize(fixtures::a_ex(), {.state_budget = 2});
  CHECK_THROWS_AS(run_deterministic(d, fixtures::omega(2)), Error);
  try {
    run_deterministic(d, fixtures::omega(2));
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::StateBudgetExceeded);
  }
}
