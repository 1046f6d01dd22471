#pragma once

// Reference automata and words: the a^n b^n c^n d^n automaton, its wave
// family, small example words, and the cyclic-shift corpus.

#include <wavelang/automaton.hpp>
#include <wavelang/core.hpp>

#include <algorithm>
#include <string>
#include <vector>

namespace wavelang::fixtures {

/// Post-form automaton whose wave projection is {a^n b^n c^n d^n | n >= 1}.
inline Automaton2NW a_ex() {
  Automaton2NW a;
  for (const char* q : {"qa", "qb", "qc", "qd"}) {
    a.add_state(q);
    a.add_hier(q);
  }
  for (const char* l : {"a", "b", "c", "d"}) a.add_letter(l);
  const StateId qa = 0, qb = 1, qc = 2, qd = 3;
  const LetterId la = 0, lb = 1, lc = 2, ld = 3;
  a.set_initial(qa);
  a.set_final(qd);
  a.add_transition({kinds::cc, qa, kNone, kNone, la, qa, qa, qa});
  for (StateId x : {qa, qb}) a.add_transition({kinds::rc, x, qa, kNone, lb, kNone, qb, qb});
  for (StateId x : {qb, qc}) a.add_transition({kinds::cr, x, kNone, qb, lc, qc, kNone, qc});
  for (StateId x : {qc, qd}) a.add_transition({kinds::rr, x, qc, qa, ld, kNone, kNone, qd});
  return a;
}

/// a^n b^n c^n d^n with the nested 2-wave matchings (n >= 1).
inline NestedWord2 omega(std::size_t n) {
  std::vector<std::string> letters;
  for (const char* l : {"a", "b", "c", "d"}) letters.insert(letters.end(), n, l);
  std::vector<Arch> m1, m2;
  for (std::size_t i = 1; i <= n; ++i) {
    m1.push_back({i, 2 * n + 1 - i});
    m1.push_back({2 * n + i, 4 * n + 1 - i});
    m2.push_back({i, 4 * n + 1 - i});
    m2.push_back({n + i, 3 * n + 1 - i});
  }
  const std::size_t len = 4 * n;
  return NestedWord2(std::move(letters), Matching::make(std::move(m1), len), Matching::make(std::move(m2), len));
}

inline NestedWord2 fig2_right() {
  return NestedWord2({"a", "b", "a", "c", "b", "a", "b"}, Matching::make({{1, 3}, {4, 7}}, 7),
                     Matching::make({{1, 7}, {3, 4}}, 7));
}

/// Not a wave word: the arch (5,6) of M1 lies on no 2-wave.
inline NestedWord2 fig2_middle() {
  return NestedWord2({"a", "b", "a", "c", "b", "a", "b"}, Matching::make({{1, 3}, {4, 7}, {5, 6}}, 7),
                     Matching::make({{2, 7}, {3, 4}}, 7));
}

/// A single 4-wave: every arch lies on one long cycle, none on a 2-wave.
inline NestedWord2 four_wave() {
  return NestedWord2(std::vector<std::string>(8, "a"), Matching::make({{1, 2}, {3, 4}, {5, 6}, {7, 8}}, 8),
                     Matching::make({{2, 3}, {4, 5}, {6, 7}, {1, 8}}, 8));
}

/// #u1#u2#...#uk# where u1 = letters and u_{i+1} is the right rotation of u_i.
/// M1 nests the first half of every block with its second half; M2 nests the
/// second half of block i with the first half of block i+1, and the first half
/// of u1 with the second half of uk.
inline NestedWord2 gen_cyclic(std::size_t m, std::size_t k, const std::vector<std::string>& letters) {
  if (k < 2 || m < 2 || letters.size() != 2 * m) {
    throw Error(ErrorCode::BadArity, "gen_cyclic needs m >= 2, k >= 2 and 2m letters (m=" + std::to_string(m) +
                                         ", k=" + std::to_string(k) + ", letters=" +
                                         std::to_string(letters.size()) + ")");
  }
  const std::size_t block = 2 * m + 1;  // '#' followed by one u_i
  const std::size_t len = k * block + 1;
  std::vector<std::string> word;
  std::vector<std::string> u = letters;
  for (std::size_t b = 0; b < k; ++b) {
    word.push_back("#");
    word.insert(word.end(), u.begin(), u.end());
    std::rotate(u.rbegin(), u.rbegin() + 1, u.rend());
  }
  word.push_back("#");
  auto start = [&](std::size_t b) { return b * block + 2; };  // first letter of u_{b+1}
  std::vector<Arch> m1, m2;
  for (std::size_t b = 0; b < k; ++b) {
    for (std::size_t j = 0; j < m; ++j) m1.push_back({start(b) + j, start(b) + 2 * m - 1 - j});
  }
  for (std::size_t b = 0; b + 1 < k; ++b) {
    for (std::size_t j = 0; j < m; ++j) m2.push_back({start(b) + m + j, start(b + 1) + m - 1 - j});
  }
  for (std::size_t j = 0; j < m; ++j) m2.push_back({start(0) + j, start(k - 1) + 2 * m - 1 - j});
  return NestedWord2(std::move(word), Matching::make(std::move(m1), len), Matching::make(std::move(m2), len));
}

inline std::vector<std::string> numbered_letters(std::size_t count, const std::string& stem = "a") {
  std::vector<std::string> out;
  for (std::size_t i = 1; i <= count; ++i) out.push_back(stem + std::to_string(i));
  return out;
}

}  // namespace wavelang::fixtures
