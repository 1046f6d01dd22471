#pragma once

// Tree decompositions of the graph of a 2-nested word: vertices are the
// positions, edges are the linear successor pairs and the arches of both
// matchings.  For 2-wave words the decomposition follows a derivation: every
// node contributes a bag with the bounds of its intervals and a glue bag with
// the bounds of its children, so no bag exceeds twelve positions.

#include <wavelang/core.hpp>
#include <wavelang/grammar.hpp>

#include <json.hpp>

#include <algorithm>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace wavelang {

inline constexpr int kWaveTreewidth = 11;

struct TreeDecomposition {
  std::vector<std::vector<Position>> bags;  // sorted, node id = index
  std::vector<std::pair<int, int>> edges;

  int width() const {
    std::size_t m = 0;
    for (const auto& b : bags) m = std::max(m, b.size());
    return m == 0 ? 0 : static_cast<int>(m) - 1;
  }
};

struct Validation {
  bool ok = true;
  std::string violation;
  std::optional<Position> vertex;
  std::optional<std::pair<Position, Position>> edge;
};

/// Linear edges first, then M1 and M2 arches.
inline std::vector<std::pair<Position, Position>> word_graph_edges(const NestedWord2& w) {
  std::vector<std::pair<Position, Position>> out;
  for (Position p = 1; p < w.size(); ++p) out.push_back({p, p + 1});
  for (int k = 1; k <= 2; ++k)
    for (const auto& a : w.matching(k).arches()) out.push_back({a.call, a.ret});
  return out;
}

inline Validation validate(const NestedWord2& w, const TreeDecomposition& t, int max_width = kWaveTreewidth) {
  const std::size_t n = w.size(), nb = t.bags.size();
  auto fail = [](std::string why) { return Validation{false, std::move(why), std::nullopt, std::nullopt}; };

  if (nb == 0) return n == 0 ? Validation{} : fail("no bags");
  if (t.edges.size() != nb - 1) {
    return fail("not a tree: " + std::to_string(nb) + " bags and " + std::to_string(t.edges.size()) + " edges");
  }
  std::vector<std::vector<int>> adj(nb);
  for (const auto& [x, y] : t.edges) {
    if (x < 0 || y < 0 || static_cast<std::size_t>(x) >= nb || static_cast<std::size_t>(y) >= nb || x == y) {
      return fail("edge (" + std::to_string(x) + "," + std::to_string(y) + ") is not between two bags");
    }
    adj[x].push_back(y);
    adj[y].push_back(x);
  }
  std::vector<char> seen(nb, 0);
  std::vector<int> stack{0};
  seen[0] = 1;
  std::size_t reached = 0;
  while (!stack.empty()) {
    int x = stack.back();
    stack.pop_back();
    ++reached;
    for (int y : adj[x])
      if (!seen[y]) seen[y] = 1, stack.push_back(y);
  }
  if (reached != nb) return fail("not a tree: disconnected");

  std::vector<std::vector<int>> holding(n + 1);
  for (std::size_t b = 0; b < nb; ++b)
    for (Position p : t.bags[b]) {
      if (p < 1 || p > n) {
        Validation v = fail("bag " + std::to_string(b) + " holds position " + std::to_string(p) + " outside the word");
        v.vertex = p;
        return v;
      }
      holding[p].push_back(static_cast<int>(b));
    }
  for (Position p = 1; p <= n; ++p)
    if (holding[p].empty()) {
      Validation v = fail("vertex " + std::to_string(p) + " is in no bag");
      v.vertex = p;
      return v;
    }

  auto in_bag = [&](std::size_t b, Position p) { return std::binary_search(t.bags[b].begin(), t.bags[b].end(), p); };
  for (const auto& e : word_graph_edges(w)) {
    bool covered = false;
    for (int b : holding[e.first])
      if (in_bag(b, e.second)) covered = true;
    if (!covered) {
      Validation v = fail("edge (" + std::to_string(e.first) + "," + std::to_string(e.second) + ") is in no bag");
      v.edge = e;
      return v;
    }
  }

  for (Position p = 1; p <= n; ++p) {
    std::vector<char> mark(nb, 0);
    for (int b : holding[p]) mark[b] = 1;
    std::vector<int> st{holding[p].front()};
    mark[holding[p].front()] = 2;
    std::size_t count = 0;
    while (!st.empty()) {
      int x = st.back();
      st.pop_back();
      ++count;
      for (int y : adj[x])
        if (mark[y] == 1) mark[y] = 2, st.push_back(y);
    }
    if (count != holding[p].size()) {
      Validation v = fail("bags holding vertex " + std::to_string(p) + " are not connected");
      v.vertex = p;
      return v;
    }
  }

  if (t.width() > max_width) {
    return fail("width " + std::to_string(t.width()) + " exceeds " + std::to_string(max_width));
  }
  return {};
}

namespace detail {

class DecompositionBuilder {
 public:
  TreeDecomposition t;

  /// Returns the id of the bag holding the bounds of `d`, or -1 when `d`
  /// covers no position.
  int build(const Derivation& d) {
    switch (d.rule) {
      case Rule::WEps:
      case Rule::HEps:
        return -1;
      case Rule::WInt:
        return add(bounds(d));
      case Rule::HWave: {
        const auto v1 = bounds(d);
        const int top = add(v1);
        const int inner = build(d.children.front());
        if (inner < 0) return top;
        auto v2 = v1;
        for (Position p : t.bags[inner]) v2.push_back(p);
        const int glue = add(v2);
        link(top, glue);
        link(glue, inner);
        return top;
      }
      default: {
        std::vector<int> kids;
        std::vector<Position> glue = bounds(d);
        for (const auto& c : d.children) {
          const int k = build(c);
          if (k < 0) continue;
          kids.push_back(k);
          for (Position p : t.bags[k]) glue.push_back(p);
        }
        const int top = add(bounds(d));
        const int g = add(glue);
        link(top, g);
        for (int k : kids) link(g, k);
        return top;
      }
    }
  }

 private:
  static std::vector<Position> bounds(const Derivation& d) {
    std::vector<Position> out;
    const int parts = is_w_rule(d.rule) ? 1 : 2;
    for (int i = 0; i < parts; ++i)
      if (!d.span[i].empty()) {
        out.push_back(d.span[i].first);
        out.push_back(d.span[i].last);
      }
    return out;
  }

  int add(std::vector<Position> bag) {
    std::sort(bag.begin(), bag.end());
    bag.erase(std::unique(bag.begin(), bag.end()), bag.end());
    if (static_cast<int>(bag.size()) > kWaveTreewidth + 1) {
      throw Error(ErrorCode::WidthExceeded, "bag of size " + std::to_string(bag.size()));
    }
    t.bags.push_back(std::move(bag));
    return static_cast<int>(t.bags.size()) - 1;
  }

  void link(int a, int b) { t.edges.push_back({a, b}); }
};

/// Merges every bag into a neighbour that contains it.
inline TreeDecomposition contract(const TreeDecomposition& t) {
  const std::size_t nb = t.bags.size();
  std::vector<int> parent(nb);
  for (std::size_t i = 0; i < nb; ++i) parent[i] = static_cast<int>(i);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  std::vector<std::vector<Position>> bag = t.bags;
  for (const auto& [a, b] : t.edges) {
    const int ra = find(a), rb = find(b);
    if (std::includes(bag[ra].begin(), bag[ra].end(), bag[rb].begin(), bag[rb].end())) {
      parent[rb] = ra;
    } else if (std::includes(bag[rb].begin(), bag[rb].end(), bag[ra].begin(), bag[ra].end())) {
      parent[ra] = rb;
    }
  }
  TreeDecomposition out;
  std::vector<int> id(nb, -1);
  for (std::size_t i = 0; i < nb; ++i)
    if (find(static_cast<int>(i)) == static_cast<int>(i)) {
      id[i] = static_cast<int>(out.bags.size());
      out.bags.push_back(bag[i]);
    }
  for (const auto& [a, b] : t.edges) {
    const int ra = id[find(a)], rb = id[find(b)];
    if (ra != rb) out.edges.push_back({ra, rb});
  }
  return out;
}

}  // namespace detail

/// Decomposition of width at most 11 built along the derivation of `w`.
inline TreeDecomposition decompose(const NestedWord2& w) {
  const std::size_t n = w.size();
  if (n == 0) return {{{}}, {}};
  if (w.m1().empty() && w.m2().empty()) {
    TreeDecomposition path;
    if (n == 1) path.bags.push_back({1});
    for (Position p = 1; p < n; ++p) {
      path.bags.push_back({p, p + 1});
      if (p > 1) path.edges.push_back({static_cast<int>(p) - 2, static_cast<int>(p) - 1});
    }
    return path;
  }
  const Derivation d = derive(w);  // throws NotWaveWord
  detail::DecompositionBuilder b;
  b.build(d);
  auto t = detail::contract(b.t);
  auto v = validate(w, t);
  if (!v.ok) throw Error(ErrorCode::WidthExceeded, "decomposition failed validation: " + v.violation);
  return t;
}

/// Min-degree elimination; works on any 2-nested word but carries no width
/// guarantee.
inline TreeDecomposition decompose_by_elimination(const NestedWord2& w) {
  const std::size_t n = w.size();
  if (n == 0) return {{{}}, {}};
  std::vector<std::set<Position>> adj(n + 1);
  for (const auto& [a, b] : word_graph_edges(w)) {
    adj[a].insert(b);
    adj[b].insert(a);
  }
  std::vector<char> gone(n + 1, 0);
  std::vector<Position> order;
  std::vector<int> bag_of(n + 1, -1);
  TreeDecomposition t;
  for (std::size_t step = 0; step < n; ++step) {
    Position v = 0;
    for (Position p = 1; p <= n; ++p)
      if (!gone[p] && (v == 0 || adj[p].size() < adj[v].size())) v = p;
    std::vector<Position> bag{v};
    bag.insert(bag.end(), adj[v].begin(), adj[v].end());
    std::sort(bag.begin(), bag.end());
    bag_of[v] = static_cast<int>(t.bags.size());
    t.bags.push_back(bag);
    order.push_back(v);
    for (Position x : adj[v])
      for (Position y : adj[v])
        if (x != y) adj[x].insert(y);
    for (Position x : adj[v]) adj[x].erase(v);
    adj[v].clear();
    gone[v] = 1;
  }
  // parent: the bag of the earliest-eliminated remaining neighbour
  std::vector<std::size_t> rank(n + 1);
  for (std::size_t i = 0; i < order.size(); ++i) rank[order[i]] = i;
  for (std::size_t i = 0; i + 1 < order.size(); ++i) {
    const auto& bag = t.bags[i];
    std::optional<Position> next;
    for (Position x : bag)
      if (rank[x] > i && (!next || rank[x] < rank[*next])) next = x;
    // the graph is connected through the linear edges, so next exists
    t.edges.push_back({static_cast<int>(i), bag_of[next.value_or(order[i + 1])]});
  }
  return detail::contract(t);
}

inline nlohmann::json decomposition_json(const TreeDecomposition& t) {
  nlohmann::json j;
  j["bags"] = nlohmann::json::object();
  for (std::size_t i = 0; i < t.bags.size(); ++i) j["bags"][std::to_string(i)] = t.bags[i];
  j["edges"] = nlohmann::json::array();
  for (const auto& [a, b] : t.edges) j["edges"].push_back({a, b});
  j["width"] = t.width();
  return j;
}

inline std::string decomposition_dot(const TreeDecomposition& t) {
  std::ostringstream o;
  o << "graph decomposition {\n  node [shape=box];\n";
  for (std::size_t i = 0; i < t.bags.size(); ++i) {
    o << "  b" << i << " [label=\"{";
    for (std::size_t k = 0; k < t.bags[i].size(); ++k) o << (k ? "," : "") << t.bags[i][k];
    o << "}\"];\n";
  }
  for (const auto& [a, b] : t.edges) o << "  b" << a << " -- b" << b << ";\n";
  o << "}\n";
  return o.str();
}

}  // namespace wavelang
