#include <catch_amalgamated.hpp>

#include <wavelang/fixtures.hpp>
#include <wavelang/lil.hpp>

#include "oracles.hpp"

using namespace wavelang;
using namespace wavelang::lil;

namespace {

// u is Dyck iff u is empty or u = a v bar(a) w with v, w Dyck.
bool dyck_by_definition(const PairedWord& u, std::size_t lo, std::size_t hi) {
  if (lo == hi) return true;
  if (u[lo].bar) return false;
  for (std::size_t k = lo + 1; k < hi; ++k)
    if (u[k] == bar(u[lo]) && dyck_by_definition(u, lo + 1, k) && dyck_by_definition(u, k + 1, hi)) return true;
  return false;
}

PairedWord random_paired(std::mt19937_64& rng, std::size_t len) {
  PairedWord u;
  std::vector<Symbol> open;
  for (std::size_t i = 0; i < len; ++i) {
    const Symbol s = (rng() % 2) ? state(static_cast<int>(rng() % 2)) : hier(0, 1 + static_cast<int>(rng() % 2));
    // mostly well-nested, with occasional stray or mismatched closers
    if (!open.empty() && rng() % 2) {
      u.push_back(rng() % 10 ? bar(open.back()) : bar(s));
      open.pop_back();
    } else if (rng() % 12 == 0) {
      u.push_back(bar(s));
    } else {
      u.push_back(s);
      open.push_back(s);
    }
  }
  while (!open.empty() && rng() % 4) {
    u.push_back(bar(open.back()));
    open.pop_back();
  }
  return u;
}

/// One state, one letter, one hierarchical symbol, every wave kind.
Automaton2NW all_kinds() {
  Automaton2NW a;
  a.add_state("q");
  a.add_hier("p");
  a.add_letter("x");
  a.set_initial(0);
  a.set_final(0);
  a.add_transition({kinds::ii, 0, kNone, kNone, 0, kNone, kNone, 0});
  a.add_transition({kinds::cc, 0, kNone, kNone, 0, 0, 0, 0});
  a.add_transition({kinds::rc, 0, 0, kNone, 0, kNone, 0, 0});
  a.add_transition({kinds::cr, 0, kNone, 0, 0, 0, kNone, 0});
  a.add_transition({kinds::rr, 0, 0, 0, 0, kNone, kNone, 0});
  return a;
}

}  // namespace

TEST_CASE("Dyck words") {
  CHECK(is_dyck({}));
  const Symbol a = state(0), b = state(1);
  CHECK(is_dyck({a, b, bar(b), bar(a)}));
  CHECK_FALSE(is_dyck({a, b, bar(a), bar(b)}));
  CHECK_FALSE(is_dyck({bar(a), a}));
  CHECK(bar(PairedWord{a, hier(0, 2)}) == PairedWord{hier(0, 2, true), bar(a)});

  auto m = dyck_matching({a, b, bar(b), bar(a), a, bar(a)});
  REQUIRE(m);
  CHECK(m->arches() == std::vector<Arch>{{1, 4}, {2, 3}, {5, 6}});

  std::mt19937_64 rng(43);
  std::size_t positives = 0;
  for (int i = 0; i < 3000; ++i) {
    auto u = random_paired(rng, rng() % 21);
    if (u.size() > 20) u.resize(20);
    const bool truth = dyck_by_definition(u, 0, u.size());
    positives += truth;
    REQUIRE(is_dyck(u) == truth);
  }
  CHECK(positives > 300);
}

TEST_CASE("the morphisms g and f") {
  const Symbol a1 = hier(0, 1), a2 = hier(0, 2);
  CHECK(apply_g({a1, a2, bar(a2), bar(a1)}) == PairedWord{a1, bar(a1), a2, bar(a2)});
  CHECK(apply_g({state(0), state(0, true), letter(0), letter(0, true)}).empty());
  CHECK_THROWS_AS(apply_g({hier(0, 3)}), Error);
  CHECK(apply_f({state(0, true), letter(1), letter(1, true), state(2)}) == std::vector<LetterId>{1});
}

TEST_CASE("encoding the run on abcd") {
  auto nice = to_nice(fixtures::a_ex());
  auto w = fixtures::omega(1);
  auto acc = accepts_bruteforce(nice, w);
  REQUIRE(acc.run);
  auto u = encode(nice, w, *acc.run);
  CHECK(u.size() == 22);  // l0, four blocks of five, bar(l4)
  CHECK(in_r(nice, u));
  CHECK(is_dyck(u));
  CHECK(is_dyck(apply_g(u)));
  CHECK(apply_f(nice, u) == w.letters());
  auto d = decode(nice, u);
  CHECK(d.word == w);
  CHECK(d.run == *acc.run);

  auto text = format_paired(nice, u);
  CHECK(text.starts_with("qa ~qa 'a' ~'a' (qa,qb,qc,qa).1 qa ~qa 'b' ~'b' (qa,qb,qc,qa).2 qb"));
  CHECK(parse_paired(nice, text) == u);
  CHECK_THROWS_AS(parse_paired(nice, "qa 'z'"), Error);

  CHECK_THROWS_AS(encode(fixtures::a_ex(), w, *accepts_bruteforce(fixtures::a_ex(), w).run), Error);
  auto bad = *acc.run;
  bad.linear.back() = *nice.state_id("qa");
  CHECK_THROWS_AS(encode(nice, w, bad), Error);
}

TEST_CASE("the empty word") {
  auto a = all_kinds();
  Run r{{0}, {kNone}, {kNone}};
  auto u = encode(a, NestedWord2{}, r);
  CHECK(format_paired(a, u) == "q ~q");
  CHECK(is_dyck(u));
  CHECK(apply_g(u).empty());
  auto d = decode(a, u);
  CHECK(d.word.empty());
  CHECK(d.run == r);
}

TEST_CASE("decode rejects words outside the three languages") {
  auto a = all_kinds();
  auto w = fixtures::omega(2);
  auto run = accepts_bruteforce(a, NestedWord2(std::vector<std::string>(8, "x"), w.m1(), w.m2())).run;
  REQUIRE(run);
  auto u = encode(a, NestedWord2(std::vector<std::string>(8, "x"), w.m1(), w.m2()), *run);
  REQUIRE_NOTHROW(decode(a, u));

  auto code_of = [&](const PairedWord& v) {
    try {
      decode(a, v);
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::Parse;
  };
  std::vector<std::size_t> hs;
  for (std::size_t i = 0; i < u.size(); ++i)
    if (u[i].kind == SymKind::Hier) hs.push_back(i);
  REQUIRE(hs.size() == 8);

  auto one = u;
  one[hs[0]].index = 2;
  CHECK(code_of(one) == ErrorCode::NotDyck);

  // flipping an outer call and its M2 partner keeps u Dyck, but g(u) breaks
  auto pair = u;
  pair[hs.front()].index = 2;
  pair[hs.back()].index = 2;
  CHECK(is_dyck(pair));
  CHECK(code_of(pair) == ErrorCode::NotGDyck);

  auto cut = u;
  cut.erase(cut.begin() + 2);
  CHECK(code_of(cut) == ErrorCode::NotInR);
  CHECK(code_of(PairedWord{state(0)}) == ErrorCode::NotInR);
}

TEST_CASE("encode and decode round trip on nice automata") {
  std::mt19937_64 rng(47);
  std::size_t runs = 0;
  for (int round = 0; round < 8; ++round) {
    auto src = oracle::random_automaton(
        rng, {.states = 1 + round % 3, .hier = 1 + round % 2, .letters = 2, .density = 0.4, .wave_kinds_only = true});
    auto a = to_nice(src);
    REQUIRE(is_nice(a));
    for (std::size_t n = 0; n <= 6; ++n) {
      for (const auto& [m1, m2] : oracle::wave_structures(n)) {
        for_each_accepting_lettering(a, m1, m2, [&](const std::vector<std::string>& letters, const Run& r) {
          NestedWord2 w(letters, m1, m2);
          auto u = encode(a, w, r);
          REQUIRE(in_r(a, u));
          REQUIRE(is_dyck(u));
          REQUIRE(is_dyck(apply_g(u)));
          REQUIRE(apply_f(a, u) == letters);
          auto d = decode(a, u);
          REQUIRE(d.word == w);
          REQUIRE(d.run == r);
          REQUIRE(is_wave_word(d.word).is_wave);
          ++runs;
          return runs % 20000 != 0;
        });
      }
    }
  }
  CHECK(runs > 50);
}

TEST_CASE("projections") {
  auto a = fixtures::a_ex();
  CHECK(project_words(a, 3).empty());
  CHECK(project_words(a, 9) == std::set<std::vector<std::string>>{fixtures::omega(1).letters(),
                                                                  fixtures::omega(2).letters()});
  CHECK_THROWS_AS(project_words(a, 17), Error);

  Automaton2NW none = fixtures::a_ex();
  for (StateId q : none.final_states()) none.set_final(q, false);
  CHECK(project_words(none, 8).empty());

  std::mt19937_64 rng(53);
  for (int round = 0; round < 10; ++round) {
    auto r = oracle::random_automaton(rng, {.states = 2, .letters = 2, .density = 0.25});
    std::set<std::vector<std::string>> truth;
    for (const auto& [key, words] : oracle::language(r, 6)) truth.insert(words.begin(), words.end());
    REQUIRE(project_words(r, 6) == truth);
  }
}
