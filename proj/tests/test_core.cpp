#include <catch_amalgamated.hpp>

#include <wavelang/core.hpp>
#include <wavelang/fixtures.hpp>
#include <wavelang/grammar.hpp>

#include "oracles.hpp"

using namespace wavelang;

namespace {

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an exception");
  return ErrorCode::Parse;
}

std::vector<Arch> witness_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const MatchingError& e) {
    return e.witness();
  }
  FAIL("expected a MatchingError");
  return {};
}

}  // namespace

TEST_CASE("matching construction validates its three conditions") {
  auto m = Matching::make({{4, 7}, {1, 3}}, 7);
  CHECK(m.arches() == std::vector<Arch>{{1, 3}, {4, 7}});
  CHECK(m.partner(1) == 3);
  CHECK(m.partner(7) == 4);
  CHECK(m.partner(2) == 0);
  CHECK(m.status(4) == Status::Call);
  CHECK(m.status(3) == Status::Return);
  CHECK(m.status(5) == Status::Internal);

  CHECK(Matching::make({}, 0).empty());
  CHECK(code_of([] { Matching::make({{1, 9}}, 4); }) == ErrorCode::OutOfRange);
  CHECK(code_of([] { Matching::make({{3, 2}}, 4); }) == ErrorCode::NotOrdered);
  CHECK(code_of([] { Matching::make({{2, 2}}, 4); }) == ErrorCode::NotOrdered);
  CHECK(code_of([] { Matching::make({{1, 2}, {2, 3}}, 4); }) == ErrorCode::Reused);
  CHECK(code_of([] { Matching::make({{1, 3}, {2, 4}}, 4); }) == ErrorCode::Crossing);
  CHECK(witness_of([] { Matching::make({{1, 3}, {2, 4}}, 4); }) == std::vector<Arch>{{1, 3}, {2, 4}});
}

TEST_CASE("nested words reject mismatched lengths") {
  CHECK(code_of([] { NestedWord2({"a", "b"}, Matching(3), Matching(2)); }) == ErrorCode::OutOfRange);
  NestedWord2 plain({"a", "b", "c"});
  CHECK(plain.m1().empty());
  CHECK(plain.kind(2) == kinds::ii);
}

TEST_CASE("position kinds") {
  auto w = fixtures::fig2_right();
  CHECK(position_kind(w, 1) == kinds::cc);
  CHECK(position_kind(w, 4) == kinds::cr);
  CHECK(position_kind(w, 3) == kinds::rc);
  CHECK(position_kind(w, 7) == kinds::rr);
  CHECK(position_kind(w, 2) == kinds::ii);
  CHECK(position_kind(NestedWord2({"x", "y"}), 1) == kinds::ii);
  CHECK(code_of([&] { position_kind(w, 0); }) == ErrorCode::OutOfRange);
  CHECK(code_of([&] { position_kind(w, 8); }) == ErrorCode::OutOfRange);
  for (std::size_t k = 0; k < 9; ++k) {
    auto kind = PositionKind::from_index(k);
    CHECK(parse_kind(kind.name()) == kind);
  }
  CHECK_FALSE(parse_kind("cx"));
}

TEST_CASE("wpa sets") {
  auto w = fixtures::fig2_right();
  CHECK(is_wpa(w, Interval{1, 7}));
  std::vector<Position> first3{1, 2, 3};
  CHECK_FALSE(is_wpa(w, first3));
  auto w5 = fixtures::omega(2);
  CHECK(is_wpa(w5, Interval{1, 4}, Interval{5, 8}));
  CHECK(is_wpa(w5, Interval{2, 3}, Interval{6, 7}));
  CHECK_FALSE(is_wpa(w5, Interval{1, 4}));
  std::vector<Position> none;
  CHECK(is_wpa(w, none));
}

TEST_CASE("restriction and induced subwords") {
  auto w5 = fixtures::omega(2);
  // [2,7] pends the support arch (1,8); the induced word keeps the inner arches
  CHECK(code_of([&] { restrict(w5, Interval{2, 7}); }) == ErrorCode::NotWpa);
  auto pos = positions_of({Interval{2, 7}});
  auto sub = induced(w5, pos);
  CHECK(sub.letters() == std::vector<std::string>{"a", "b", "b", "c", "c", "d"});
  CHECK(sub.m1().arches() == std::vector<Arch>{{1, 2}, {5, 6}});
  CHECK(sub.m2().arches() == std::vector<Arch>{{1, 6}, {2, 5}, {3, 4}});

  CHECK(restrict(w5, Interval{1, 8}) == w5);
  auto inner = restrict(w5, Interval{2, 3}, Interval{6, 7});
  CHECK(inner == fixtures::omega(1));
  CHECK(restrict(fixtures::fig2_right(), Interval{1, 0}).empty());
}

TEST_CASE("restriction of every wpa interval is a valid word") {
  for (std::size_t n = 0; n <= 8; ++n) {
    for (const auto& [m1, m2] : oracle::wave_structures(n)) {
      NestedWord2 w(std::vector<std::string>(n, "a"), m1, m2);
      for (Position i = 1; i <= n + 1; ++i)
        for (Position j = i - 1; j <= n; ++j) {
          Interval iv{i, j};
          if (!is_wpa(w, iv)) continue;
          auto r = restrict(w, iv);
          CHECK(r.size() == iv.size());
        }
    }
  }
}

TEST_CASE("2-waves") {
  auto w5 = fixtures::omega(2);
  CHECK(find_2waves(w5) == std::vector<Wave>{{1, 4, 5, 8}, {2, 3, 6, 7}});
  CHECK(find_2waves(NestedWord2({"a", "b"})).empty());
  CHECK(find_2waves(fixtures::four_wave()).empty());
  CHECK(find_2waves(fixtures::fig2_right()) == std::vector<Wave>{{1, 3, 4, 7}});
}

TEST_CASE("wave word classification of the small example words") {
  auto middle = is_wave_word(fixtures::fig2_middle());
  CHECK_FALSE(middle.is_wave);
  REQUIRE(middle.witness);
  CHECK(*middle.witness == ArchRef{1, {5, 6}});

  auto right = is_wave_word(fixtures::fig2_right());
  CHECK(right.is_wave);
  CHECK(right.covering.size() == 4);
  CHECK_FALSE(right.witness);

  CHECK(is_wave_word(NestedWord2({"a", "b", "c"})).is_wave);
  CHECK_FALSE(is_wave_word(fixtures::four_wave()).is_wave);
}

TEST_CASE("wave check agrees with the quadruple scan on all structures up to 8") {
  std::size_t checked = 0;
  for (std::size_t n = 0; n <= 8; ++n) {
    oracle::for_each_structure(n, [&](const Matching& a, const Matching& b) {
      NestedWord2 w(std::vector<std::string>(n, "a"), a, b);
      auto cert = is_wave_word(w);
      REQUIRE(cert.is_wave == oracle::wave_by_quadruples(w));
      if (cert.is_wave) {
        for (const auto& k : w.m1().arches()) CHECK(w.kind(k.call).is_wave_kind());
        CHECK_NOTHROW(to_typed(w));
      }
      ++checked;
    });
  }
  CHECK(checked > 100000);
}

TEST_CASE("surface functions") {
  auto w5 = fixtures::omega(2);
  CHECK(surface(w5, 1, 0) == 0);
  CHECK(surface(w5, 1, 2) == 2);
  CHECK(surface(w5, 1, 4) == 0);
  CHECK(surface(w5, 1, 3) == 1);
  CHECK(surface_cc(w5, 0) == 0);
  CHECK(surface_cc(w5, 1) == 1);
  // position 6 opens the top arch (6,7) of the inner wave (2,3,6,7)
  CHECK(surface_cc(w5, 6) == 2);
  CHECK(surface_cc(w5, 5) == 1);
  CHECK(code_of([] { surface_cc(fixtures::fig2_middle(), 1); }) == ErrorCode::NotWaveWord);
  CHECK(code_of([&] { surface(w5, 1, 9); }) == ErrorCode::OutOfRange);
}

TEST_CASE("surface recurrences hold on every wave structure up to 10") {
  for (std::size_t n = 0; n <= 10; ++n) {
    for (const auto& [m1, m2] : enumerate_wave_structures(n)) {
      NestedWord2 w(std::vector<std::string>(n, "a"), m1, m2);
      for (int which = 1; which <= 2; ++which) {
        const auto& m = w.matching(which);
        auto s = surface_table(m);
        REQUIRE(s[0] == 0);
        for (Position k = 1; k <= n; ++k) {
          if (m.is_call(k)) {
            CHECK(s[k] == k);
          } else if (m.is_return(k)) {
            CHECK(s[k] == s[m.partner(k) - 1]);
          } else {
            CHECK(s[k] == s[k - 1]);
          }
          // the surface arch, when present, covers k
          if (s[k] != 0) CHECK(m.partner(s[k]) >= k);
        }
      }
      for (Position k = 0; k <= n; ++k) {
        Position i = surface(w, 1, k);
        Position cc = surface_cc(w, k);
        if (i == 0) {
          CHECK(cc == 0);
        } else if (w.kind(i) == kinds::cc) {
          CHECK(cc == i);
        } else {
          REQUIRE(w.kind(i) == kinds::cr);
          CHECK(w.m2().partner(w.m1().partner(cc)) == i);
          CHECK(w.kind(cc) == kinds::cc);
        }
      }
    }
  }
}

TEST_CASE("typed presentation") {
  auto t = to_typed(fixtures::fig2_right());
  std::vector<std::string> shown;
  for (const auto& x : t) shown.push_back(to_string(x));
  CHECK(shown == std::vector<std::string>{"a^cc", "b^ii", "a^rc", "c^cr", "b^ii", "a^ii", "b^rr"});
  CHECK(to_typed(NestedWord2{}).empty());
  auto w5 = fixtures::omega(2);
  CHECK(from_typed(to_typed(w5)) == w5);

  NestedWord2 mixed({"a", "b"}, Matching::make({{1, 2}}, 2), Matching(2));
  CHECK(code_of([&] { to_typed(mixed); }) == ErrorCode::MixedKind);
  std::vector<TypedLetter> bad{{"a", kinds::rr}};
  CHECK(code_of([&] { from_typed(bad); }) == ErrorCode::UnbalancedTyping);
  std::vector<TypedLetter> open{{"a", kinds::cc}};
  CHECK(code_of([&] { from_typed(open); }) == ErrorCode::UnbalancedTyping);
}
