// wavelang: command-line front end.
//
// Exit codes: 0 the property holds, 1 it fails (a witness is printed),
// 2 parse errors, exceeded bounds and other failures.

#include <wavelang/automaton.hpp>
#include <wavelang/core.hpp>
#include <wavelang/decide.hpp>
#include <wavelang/determinize.hpp>
#include <wavelang/fixtures.hpp>
#include <wavelang/grammar.hpp>
#include <wavelang/io.hpp>
#include <wavelang/lil.hpp>
#include <wavelang/treedec.hpp>

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

using namespace wavelang;
using nlohmann::json;

namespace {

struct Settings {
  bool json = false;
  std::size_t accept_bound = kDefaultAcceptBound;
  std::size_t state_budget = kDefaultStateBudget;
  std::size_t max_len = lil::kDefaultProjectionBound;
  std::vector<std::string> files = std::vector<std::string>(2);  // positional inputs, bound by reference
};

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Parse, "cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

template <class F>
auto parse_file(const std::string& path, F&& parse) {
  const std::string text = slurp(path);
  try {
    return parse(text);
  } catch (const ParseError& e) {
    // what() reads "Parse: line:col: message"
    throw Error(ErrorCode::Parse, path + ":" + std::string(e.what()).substr(7));
  }
}

NestedWord2 load_word(const std::string& path) {
  return parse_file(path, [](const std::string& t) { return io::parse_nested_word(t); });
}

Automaton2NW load_automaton(const std::string& path) {
  return parse_file(path, [](const std::string& t) { return io::parse_automaton(t); });
}

bool is_word_file(const std::string& path) {
  std::istringstream in(slurp(path));
  auto lines = io::detail::tokenize(in);
  return !lines.empty() && lines.front().tokens.front().text == "word";
}

void emit(const Settings& s, const json& j, const std::string& text) {
  if (s.json) std::cout << j.dump(2) << "\n";
  else std::cout << text;
}

int verdict(const Settings& s, const Verdict& v, const std::string& holds, const std::string& fails) {
  json j{{"holds", v.holds}};
  std::string text = (v.holds ? holds : fails) + "\n";
  if (v.witness) {
    j["witness"] = io::nested_word_json(*v.witness);
    text += "witness:\n" + io::format_nested_word(*v.witness);
  }
  emit(s, j, text);
  return v.holds ? 0 : 1;
}

DetOptions det_options(const Settings& s) { return {.state_budget = s.state_budget}; }

Automaton2NW nice_form(const Automaton2NW& a) { return is_nice(a) ? a : to_nice(a); }

int print_automaton(const Settings& s, const Automaton2NW& a) {
  emit(s, json{{"automaton", io::format_automaton(a)}}, io::format_automaton(a));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Decision procedures and tools for 2-wave words and 2NWA"};
  app.require_subcommand(1);
  Settings s;
  std::function<int()> action;

  auto command = [&](const std::string& name, const std::string& help, std::size_t nfiles,
                     const std::vector<std::string>& file_names) {
    auto* c = app.add_subcommand(name, help);
    c->add_flag("--json", s.json, "Machine-readable output");
    for (std::size_t i = 0; i < nfiles; ++i) {
      c->add_option(file_names[i], s.files[i], file_names[i])->required()->check(CLI::ExistingFile);
    }
    return c;
  };

  // Words
  command("check", "Decide whether a 2-nested word is a wave word", 1, {"word"})->callback([&] {
    action = [&] {
      auto cert = is_wave_word(load_word(s.files[0]));
      emit(s, io::certificate_json(cert), io::format_certificate(cert));
      return cert.is_wave ? 0 : 1;
    };
  });

  bool derive_dot = false;
  command("derive", "Print a grammar derivation of a wave word", 1, {"word"})
      ->callback([&] {
        action = [&] {
          auto w = load_word(s.files[0]);
          auto d = try_derive(w);
          if (!d) {
            auto cert = is_wave_word(w);
            emit(s, io::certificate_json(cert), io::format_certificate(cert));
            return 1;
          }
          if (derive_dot) std::cout << io::derivation_dot(*d);
          else emit(s, io::derivation_json(*d), io::format_derivation(*d));
          return 0;
        };
      })
      ->add_flag("--dot", derive_dot, "Emit the derivation tree in DOT");

  bool general = false;
  bool treedec_dot = false;
  auto* tw = command("treewidth", "Tree decomposition of the graph of a wave word", 1, {"word"});
  tw->add_flag("--general", general, "Min-degree elimination; accepts any 2-nested word");
  tw->add_flag("--dot", treedec_dot, "Emit the decomposition in DOT");
  tw->callback([&] {
    action = [&] {
      auto w = load_word(s.files[0]);
      auto t = general ? decompose_by_elimination(w) : decompose(w);
      auto v = validate(w, t, general ? static_cast<int>(w.size()) : kWaveTreewidth);
      if (treedec_dot) {
        std::cout << decomposition_dot(t);
        return v.ok ? 0 : 1;
      }
      auto j = decomposition_json(t);
      j["valid"] = v.ok;
      std::string text = "width " + std::to_string(t.width()) + "\n";
      for (std::size_t i = 0; i < t.bags.size(); ++i) {
        text += "bag " + std::to_string(i) + ":";
        for (Position p : t.bags[i]) text += " " + std::to_string(p);
        text += "\n";
      }
      for (const auto& [a, b] : t.edges) text += "edge " + std::to_string(a) + " " + std::to_string(b) + "\n";
      if (!v.ok) text += "invalid: " + v.violation + "\n";
      emit(s, j, text);
      return v.ok ? 0 : 1;
    };
  });

  // Automata
  auto* run = command("run", "Run an automaton on a wave word", 2, {"automaton", "word"});
  run->add_option("--bound", s.accept_bound, "Longest word the backtracking search accepts");
  run->callback([&] {
    action = [&] {
      auto a = load_automaton(s.files[0]);
      auto w = load_word(s.files[1]);
      auto acc = accepts_bruteforce(a, w, s.accept_bound);
      if (!acc.accepted) {
        emit(s, json{{"accepted", false}}, "rejected\n");
        return 1;
      }
      auto j = io::run_json(a, w, *acc.run);
      j["accepted"] = true;
      emit(s, j, "accepted\n" + io::format_run(a, w, *acc.run));
      return 0;
    };
  });

  for (const char* name : {"det", "complement"}) {
    auto* c = command(name, std::string(name) == "det" ? "Determinize on wave words" : "Complement on wave words", 1,
                      {"automaton"});
    c->add_option("--state-budget", s.state_budget, "Cap on determinized states");
    c->callback([&, name = std::string(name)] {
      action = [&, name] {
        auto a = load_automaton(s.files[0]);
        if (name == "complement") return print_automaton(s, complement_automaton(a, det_options(s)));
        auto d = determinize(a, det_options(s));
        auto u = d.underlying();
        if (s.json) {
          std::cout << json{{"automaton", io::format_automaton(u)}, {"states", d.sidecar()}}.dump(2) << "\n";
          return 0;
        }
        return print_automaton(s, u);
      };
    });
  }

  command("product", "Synchronous product (intersection)", 2, {"left", "right"})->callback([&] {
    action = [&] { return print_automaton(s, product(load_automaton(s.files[0]), load_automaton(s.files[1]))); };
  });
  command("union", "Disjoint sum (union)", 2, {"left", "right"})->callback([&] {
    action = [&] { return print_automaton(s, sum(load_automaton(s.files[0]), load_automaton(s.files[1]))); };
  });

  // Decisions
  command("empty", "Emptiness by saturation; prints a witness when nonempty", 1, {"automaton"})->callback([&] {
    action = [&] {
      auto e = emptiness(load_automaton(s.files[0]));
      json j{{"empty", e.empty}};
      std::string text = e.empty ? "empty\n" : "nonempty\n";
      if (e.witness) {
        j["witness"] = io::nested_word_json(*e.witness);
        text += "witness:\n" + io::format_nested_word(*e.witness);
      }
      emit(s, j, text);
      return e.empty ? 1 : 0;
    };
  });
  auto* uni = command("universal", "Universality on wave words", 1, {"automaton"});
  uni->add_option("--state-budget", s.state_budget, "Cap on determinized states");
  uni->callback([&] {
    action = [&] {
      return verdict(s, universality(load_automaton(s.files[0]), det_options(s)), "universal", "not universal");
    };
  });
  auto* incl = command("incl", "Inclusion L(left) in L(right)", 2, {"left", "right"});
  incl->add_option("--state-budget", s.state_budget, "Cap on determinized states");
  incl->callback([&] {
    action = [&] {
      return verdict(s, inclusion(load_automaton(s.files[0]), load_automaton(s.files[1]), det_options(s)),
                     "included", "not included");
    };
  });
  auto* eq = command("equiv", "Equivalence on wave words", 2, {"left", "right"});
  eq->add_option("--state-budget", s.state_budget, "Cap on determinized states");
  eq->callback([&] {
    action = [&] {
      return verdict(s, equivalence(load_automaton(s.files[0]), load_automaton(s.files[1]), det_options(s)),
                     "equivalent", "not equivalent");
    };
  });

  // Linear indexed languages
  auto* enc = command("lil-encode", "Encode an accepting run as a paired word", 2, {"automaton", "word"});
  enc->add_option("--bound", s.accept_bound, "Longest word the backtracking search accepts");
  enc->callback([&] {
    action = [&] {
      auto a = nice_form(load_automaton(s.files[0]));
      auto w = load_word(s.files[1]);
      auto acc = accepts_bruteforce(a, w, s.accept_bound);
      if (!acc.accepted) {
        emit(s, json{{"accepted", false}}, "rejected\n");
        return 1;
      }
      auto u = lil::encode(a, w, *acc.run);
      emit(s, json{{"accepted", true}, {"encoding", lil::format_paired(a, u)}}, lil::format_paired(a, u) + "\n");
      return 0;
    };
  });
  command("lil-decode", "Decode a paired word into a wave word and run", 2, {"automaton", "paired"})->callback([&] {
    action = [&] {
      auto a = nice_form(load_automaton(s.files[0]));
      auto u = lil::parse_paired(a, slurp(s.files[1]));
      try {
        auto d = lil::decode(a, u);
        json j{{"word", io::nested_word_json(d.word)}, {"run", io::run_json(a, d.word, d.run)}};
        emit(s, j, io::format_nested_word(d.word) + io::format_run(a, d.word, d.run));
        return 0;
      } catch (const Error& e) {
        if (e.code() != ErrorCode::NotInR && e.code() != ErrorCode::NotDyck && e.code() != ErrorCode::NotGDyck) throw;
        emit(s, json{{"error", std::string(to_string(e.code()))}}, std::string(e.what()) + "\n");
        return 1;
      }
    };
  });
  auto* proj = command("project", "Letter sequences of accepted wave words", 1, {"automaton"});
  proj->add_option("--max-len", s.max_len, "Longest projection to list");
  proj->callback([&] {
    action = [&] {
      auto words = lil::project_words(load_automaton(s.files[0]), s.max_len);
      json j = json::array();
      std::string text;
      for (const auto& w : words) {
        j.push_back(w);
        std::string line;
        for (const auto& l : w) line += (line.empty() ? "" : " ") + l;
        text += (line.empty() ? "(empty)" : line) + "\n";
      }
      emit(s, j, text);
      return 0;
    };
  });

  // Generators and rendering
  auto* gen = app.add_subcommand("gen", "Generate fixtures");
  gen->require_subcommand(1);
  std::size_t gm = 2, gk = 2, gn = 1;
  std::vector<std::string> gletters;
  auto* cyc = gen->add_subcommand("cyclic", "#u1#...#uk# with right rotations of the 2m letters");
  cyc->add_option("m", gm, "Half the block length")->required();
  cyc->add_option("k", gk, "Number of blocks")->required();
  cyc->add_option("--letters", gletters, "The 2m letters of u1 (default a1 ... a2m)");
  cyc->callback([&] {
    action = [&] {
      auto letters = gletters.empty() ? fixtures::numbered_letters(2 * gm) : gletters;
      std::cout << io::format_nested_word(fixtures::gen_cyclic(gm, gk, letters));
      return 0;
    };
  });
  auto* om = gen->add_subcommand("omega", "a^n b^n c^n d^n on nested waves");
  om->add_option("n", gn, "n >= 1")->required()->check(CLI::PositiveNumber);
  om->callback([&] {
    action = [&] {
      std::cout << io::format_nested_word(fixtures::omega(gn));
      return 0;
    };
  });
  gen->add_subcommand("aex", "The a^n b^n c^n d^n automaton")->callback([&] {
    action = [&] {
      std::cout << io::format_automaton(fixtures::a_ex());
      return 0;
    };
  });

  command("dot", "Render a word or automaton file in DOT", 1, {"file"})->callback([&] {
    action = [&] {
      if (is_word_file(s.files[0])) std::cout << io::nested_word_dot(load_word(s.files[0]));
      else std::cout << io::automaton_dot(load_automaton(s.files[0]));
      return 0;
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  try {
    return action ? action() : 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
