#include <catch_amalgamated.hpp>

#include <wavelang/fixtures.hpp>
#include <wavelang/io.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "oracles.hpp"

using namespace wavelang;

namespace {

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

const std::filesystem::path kExamples = WAVELANG_EXAMPLES_DIR;

std::pair<std::size_t, std::size_t> where(const std::function<void()>& f) {
  try {
    f();
  } catch (const ParseError& e) {
    return {e.line(), e.column()};
  }
  FAIL("expected a ParseError");
  return {0, 0};
}

}  // namespace

TEST_CASE("shipped fixtures parse to the built-in values") {
  CHECK(io::parse_automaton(slurp(kExamples / "a_ex.2nwa")) == fixtures::a_ex());
  CHECK(io::parse_nested_word(slurp(kExamples / "omega2.2nw")) == fixtures::omega(2));
  CHECK(io::parse_nested_word(slurp(kExamples / "fig2_right.2nw")) == fixtures::fig2_right());
  CHECK(io::parse_nested_word(slurp(kExamples / "fig2_middle.2nw")) == fixtures::fig2_middle());
  CHECK(io::parse_nested_word(slurp(kExamples / "fig7_cyclic.2nw")) ==
        fixtures::gen_cyclic(2, 4, fixtures::numbered_letters(4, "a")));
}

TEST_CASE("emitted text re-parses to an equal value") {
  std::vector<NestedWord2> words{fixtures::omega(1), fixtures::omega(3), fixtures::fig2_right(),
                                 fixtures::fig2_middle(), fixtures::four_wave(), NestedWord2{},
                                 fixtures::gen_cyclic(3, 2, fixtures::numbered_letters(6, "x"))};
  for (const auto& w : oracle::wave_words(6, {"a", "b"})) words.push_back(w);
  for (const auto& w : words) CHECK(io::parse_nested_word(io::format_nested_word(w)) == w);

  std::vector<Automaton2NW> automata{fixtures::a_ex(), to_post_form(fixtures::a_ex()), to_nice(fixtures::a_ex()),
                                     Automaton2NW{}};
  std::mt19937_64 rng(3);
  for (int i = 0; i < 10; ++i) automata.push_back(oracle::random_automaton(rng, {.states = 3, .hier = 2}));
  for (const auto& a : automata) CHECK(io::parse_automaton(io::format_automaton(a)) == a);
}

TEST_CASE("comments, blank lines and bare keywords") {
  auto w = io::parse_nested_word("# empty\n\nword\nm1\n  # still a comment\nm2\n");
  CHECK(w.empty());
  auto v = io::parse_nested_word("word a # b\nm1 (1,3)\nm2\n");
  CHECK(v.letters() == std::vector<std::string>{"a", "#", "b"});
}

TEST_CASE("parse errors carry line and column") {
  CHECK(where([] { io::parse_nested_word("word a b\nm1 (1,x)\nm2\n"); }) == std::pair<std::size_t, std::size_t>{2, 7});
  CHECK(where([] { io::parse_nested_word("word a b\nm2\nm1\n"); }) == std::pair<std::size_t, std::size_t>{2, 1});
  CHECK(where([] { io::parse_nested_word("word a b\nm1\n"); }) == std::pair<std::size_t, std::size_t>{3, 1});
  CHECK(where([] { io::parse_nested_word("word a b c d\nm1 (1,3) (2,4)\nm2\n"); }).first == 2);
  CHECK(where([] { io::parse_nested_word("word a\nm1 1,2\nm2\n"); }) == std::pair<std::size_t, std::size_t>{2, 4});
  CHECK(where([] { io::parse_automaton("states q\nalphabet a\nii q a r\n"); }) ==
        std::pair<std::size_t, std::size_t>{3, 8});
  CHECK(where([] { io::parse_automaton("states q\nalphabet a\ncc q a q\n"); }) ==
        std::pair<std::size_t, std::size_t>{3, 1});
  CHECK(where([] { io::parse_automaton("states q\nalphabet a\nii q b q\n"); }) ==
        std::pair<std::size_t, std::size_t>{3, 6});
  CHECK(where([] { io::parse_automaton("states q\n  bogus q\n"); }) == std::pair<std::size_t, std::size_t>{2, 3});
  CHECK(where([] { io::parse_automaton("states q\ninitial p\n"); }) == std::pair<std::size_t, std::size_t>{2, 9});
}

TEST_CASE("run and certificate rendering") {
  auto a = fixtures::a_ex();
  auto w = fixtures::omega(2);
  auto run = *accepts_bruteforce(a, w).run;
  CHECK(io::format_run(a, w, run) ==
        "linear qa qa qa qb qb qc qc qd qd\nh1 1:qa 2:qa 5:qc 6:qc\nh2 1:qa 2:qa 3:qb 4:qb\n");
  auto j = io::run_json(a, w, run);
  CHECK(j["linear"].size() == 9);
  CHECK(j["h2"]["3"] == "qb");

  auto cert = is_wave_word(fixtures::fig2_middle());
  CHECK(io::format_certificate(cert).find("witness M1(5,6)") != std::string::npos);
  CHECK(io::certificate_json(cert)["witness"]["arch"] == nlohmann::json{5, 6});
  CHECK(io::nested_word_json(w)["m2"][0] == nlohmann::json{1, 8});
}

TEST_CASE("DOT output") {
  auto dot = io::nested_word_dot(fixtures::fig2_right());
  CHECK(dot.find("p1:n -> p3:n [label=\"m1\"") != std::string::npos);
  CHECK(dot.find("p1:s -> p7:s [label=\"m2\"") != std::string::npos);
  CHECK(dot.find("p6 -> p7;") != std::string::npos);
  CHECK(io::dot_escape("a\"b") == "a\\\"b");
  auto adot = io::automaton_dot(fixtures::a_ex());
  CHECK(adot.find("doublecircle") != std::string::npos);
  auto ddot = io::derivation_dot(derive(fixtures::omega(1)));
  CHECK(ddot.find("digraph derivation") != std::string::npos);
}
