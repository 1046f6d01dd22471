#include <catch_amalgamated.hpp>

#include <wavelang/fixtures.hpp>
#include <wavelang/io.hpp>
#include <wavelang/treedec.hpp>

#include "oracles.hpp"

#include <fstream>
#include <sstream>

using namespace wavelang;

namespace {

NestedWord2 blank(std::size_t n, const Matching& a, const Matching& b) {
  return NestedWord2(std::vector<std::string>(n, "x"), a, b);
}

// Independent check: every graph edge lies in some bag, and for each vertex
// the bags holding it induce a subtree (|bags| - |edges among them| == 1).
bool naive_valid(const NestedWord2& w, const TreeDecomposition& t) {
  if (t.bags.empty() || t.edges.size() + 1 != t.bags.size()) return false;
  auto has = [&](int b, Position p) {
    for (Position q : t.bags[b])
      if (q == p) return true;
    return false;
  };
  const int nb = static_cast<int>(t.bags.size());
  for (const auto& [x, y] : word_graph_edges(w)) {
    bool ok = false;
    for (int b = 0; b < nb; ++b) ok |= has(b, x) && has(b, y);
    if (!ok) return false;
  }
  for (Position p = 1; p <= w.size(); ++p) {
    int nodes = 0, links = 0;
    for (int b = 0; b < nb; ++b) nodes += has(b, p);
    for (const auto& [x, y] : t.edges) links += has(x, p) && has(y, p);
    if (nodes == 0 || nodes - links != 1) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("every wave structure up to length 10 decomposes within width 11") {
  std::size_t count = 0;
  int widest = 0;
  for (std::size_t n = 0; n <= 10; ++n) {
    for (const auto& [a, b] : oracle::wave_structures(n)) {
      auto w = blank(n, a, b);
      auto t = decompose(w);
      auto v = validate(w, t);
      INFO(io::format_nested_word(w) << v.violation);
      REQUIRE(v.ok);
      REQUIRE(naive_valid(w, t));
      REQUIRE(t.bags.size() <= 4 * std::max<std::size_t>(n, 1));
      widest = std::max(widest, t.width());
      ++count;
    }
  }
  CHECK(count > 100);
  CHECK(widest <= kWaveTreewidth);
}

TEST_CASE("small fixtures") {
  auto t = decompose(fixtures::fig2_right());
  CHECK(validate(fixtures::fig2_right(), t).ok);

  NestedWord2 flat({"a", "b", "c", "d", "e"});
  auto p = decompose(flat);
  CHECK(p.width() == 1);
  REQUIRE(p.bags.size() == 4);
  for (std::size_t i = 0; i < 4; ++i) CHECK(p.bags[i] == std::vector<Position>{i + 1, i + 2});
  CHECK(validate(flat, p).ok);

  CHECK(decompose(NestedWord2({"a"})).bags == std::vector<std::vector<Position>>{{1}});
  CHECK(validate(NestedWord2{}, decompose(NestedWord2{})).ok);

  for (std::size_t n = 1; n <= 5; ++n) CHECK(validate(fixtures::omega(n), decompose(fixtures::omega(n))).ok);

  CHECK_THROWS_AS(decompose(fixtures::fig2_middle()), Error);
  CHECK_THROWS_AS(decompose(fixtures::four_wave()), Error);
}

TEST_CASE("validation reports the first violated condition") {
  std::vector<std::string> thirteen(13, "a");
  NestedWord2 w13(thirteen);
  TreeDecomposition one;
  one.bags.push_back({});
  for (Position p = 1; p <= 13; ++p) one.bags.back().push_back(p);
  auto v = validate(w13, one);
  CHECK_FALSE(v.ok);
  CHECK(v.violation == "width 12 exceeds 11");

  NestedWord2 two({"a", "b"});
  auto missing = validate(two, {{{1}, {2}}, {{0, 1}}});
  CHECK_FALSE(missing.ok);
  REQUIRE(missing.edge);
  CHECK(*missing.edge == std::pair<Position, Position>{1, 2});

  auto uncovered = validate(two, {{{1}}, {}});
  REQUIRE(uncovered.vertex);
  CHECK(*uncovered.vertex == 2);

  CHECK_FALSE(validate(two, {{{1, 2}, {1, 2}}, {}}).ok);

  NestedWord2 three({"a", "b", "c"});
  auto split = validate(three, {{{1, 2}, {2, 3}, {1}}, {{0, 1}, {1, 2}}});
  REQUIRE(split.vertex);
  CHECK(*split.vertex == 1);
}

TEST_CASE("gen_cyclic fixtures") {
  for (std::size_t m = 2; m <= 19; ++m) {
    auto w = fixtures::gen_cyclic(m, 2, fixtures::numbered_letters(2 * m));
    if (w.size() > 40) break;
    INFO("m=" << m);
    auto t = decompose(w);
    CHECK(validate(w, t).ok);
    CHECK(t.width() <= kWaveTreewidth);
  }
  // longer cycles are not wave words; elimination still finds a narrow tree
  for (std::size_t k = 3; k <= 7; ++k)
    for (std::size_t m = 2; m <= 6; ++m) {
      auto w = fixtures::gen_cyclic(m, k, fixtures::numbered_letters(2 * m));
      if (w.size() > 40) continue;
      INFO("m=" << m << " k=" << k);
      CHECK_THROWS_AS(decompose(w), Error);
      auto t = decompose_by_elimination(w);
      CHECK(validate(w, t).ok);
      CHECK(naive_valid(w, t));
    }
}

TEST_CASE("elimination agrees with the validator on random structures") {
  std::mt19937_64 rng(41);
  for (std::size_t n = 1; n <= 8; ++n) {
    oracle::for_each_structure(n, [&](const Matching& a, const Matching& b) {
      if (rng() % 7) return;
      auto w = blank(n, a, b);
      auto t = decompose_by_elimination(w);
      REQUIRE(validate(w, t).ok);
      REQUIRE(naive_valid(w, t));
    });
  }
}

TEST_CASE("decomposition emitters") {
  auto t = decompose(NestedWord2({"a", "b", "c"}));
  auto j = decomposition_json(t);
  CHECK(j["bags"]["0"] == nlohmann::json::array({1, 2}));
  CHECK(j["edges"] == nlohmann::json::parse("[[0,1]]"));
  CHECK(j["width"] == 1);
  auto dot = decomposition_dot(t);
  CHECK(dot.find("b0 [label=\"{1,2}\"]") != std::string::npos);
  CHECK(dot.find("b0 -- b1;") != std::string::npos);
}

TEST_CASE("the four-block cyclic word") {
  std::ifstream in(std::string(WAVELANG_EXAMPLES_DIR) + "/fig7_cyclic.2nw");
  std::stringstream ss;
  ss << in.rdbuf();
  auto w = io::parse_nested_word(ss.str());
  CHECK(w.size() == 21);
  auto t = decompose_by_elimination(w);
  CHECK(validate(w, t).ok);
}
