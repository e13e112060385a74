#ifndef INAM_SIMP_GRAPH_HPP_
#define INAM_SIMP_GRAPH_HPP_

#include <algorithm>
#include <bit>
#include <cstdint>
#include <numeric>
#include <set>
#include <string>
#include <vector>

#include "error.hpp"
#include "json.hpp"

namespace inam {

using Mask = std::uint64_t;

inline Mask bit(int v) { return Mask{1} << v; }
inline int popcount(Mask m) { return std::popcount(m); }

inline std::vector<int> mask_members(Mask m) {
  std::vector<int> out;
  while (m) {
    out.push_back(std::countr_zero(m));
    m &= m - 1;
  }
  return out;
}

// Finite simplicial graph on at most 64 vertices, adjacency as bitmasks.
class SimpGraph {
 public:
  static constexpr int max_vertices = 64;

  SimpGraph() = default;
  explicit SimpGraph(int n) : adj_(n, 0) {
    if (n > max_vertices) throw Error(ErrorCode::unsupported, "more than 64 vertices");
    for (int i = 0; i < n; ++i) names_.push_back("v" + std::to_string(i));
  }
  SimpGraph(std::vector<std::string> names) : SimpGraph(static_cast<int>(names.size())) {
    names_ = std::move(names);
  }

  int size() const { return static_cast<int>(adj_.size()); }
  Mask all() const { return size() == 64 ? ~Mask{0} : bit(size()) - 1; }
  const std::string& name(int v) const { return names_.at(v); }
  const std::vector<std::string>& names() const { return names_; }

  int index_of(const std::string& n) const {
    for (int i = 0; i < size(); ++i)
      if (names_[i] == n) return i;
    return -1;
  }

  void add_edge(int a, int b) {
    if (a == b) throw Error(ErrorCode::schema, "loop at " + names_.at(a), "graph.edges");
    if (a < 0 || b < 0 || a >= size() || b >= size())
      throw Error(ErrorCode::schema, "edge endpoint does not exist", "graph.edges");
    adj_[a] |= bit(b);
    adj_[b] |= bit(a);
  }

  bool adjacent(int a, int b) const { return (adj_.at(a) >> b) & 1; }
  Mask adj(int v) const { return adj_.at(v); }
  // Closed neighbourhood: v together with its neighbours.
  Mask closed_nbhd(int v) const { return adj_.at(v) | bit(v); }

  std::vector<std::pair<int, int>> edges() const {
    std::vector<std::pair<int, int>> out;
    for (int a = 0; a < size(); ++a)
      for (int b = a + 1; b < size(); ++b)
        if (adjacent(a, b)) out.emplace_back(a, b);
    return out;
  }
  int edge_count() const { return static_cast<int>(edges().size()); }

  bool is_clique(Mask m) const {
    for (int v : mask_members(m))
      if ((m & ~closed_nbhd(v)) != 0) return false;
    return true;
  }

  // Every clique including the empty one, in increasing mask order.
  std::vector<Mask> cliques() const {
    std::vector<Mask> out;
    auto extend = [&](auto&& self, Mask c, int from) -> void {
      out.push_back(c);
      for (int v = from; v < size(); ++v) {
        if ((c & ~adj_[v]) == 0) self(self, c | bit(v), v + 1);
      }
    };
    extend(extend, 0, 0);
    std::sort(out.begin(), out.end());
    return out;
  }

  SimpGraph complement() const {
    SimpGraph g(names_);
    for (int a = 0; a < size(); ++a)
      for (int b = a + 1; b < size(); ++b)
        if (!adjacent(a, b)) g.add_edge(a, b);
    return g;
  }

  SimpGraph induced(Mask s) const {
    auto members = mask_members(s);
    std::vector<std::string> nm;
    for (int v : members) nm.push_back(names_[v]);
    SimpGraph g(nm);
    for (std::size_t i = 0; i < members.size(); ++i)
      for (std::size_t j = i + 1; j < members.size(); ++j)
        if (adjacent(members[i], members[j])) g.add_edge(int(i), int(j));
    return g;
  }

  // Connected components as vertex masks, ordered by least vertex.
  std::vector<Mask> components() const {
    std::vector<Mask> out;
    Mask left = all();
    while (left) {
      Mask comp = bit(std::countr_zero(left)), frontier = comp;
      while (frontier) {
        Mask next = 0;
        for (int v : mask_members(frontier)) next |= adj_[v];
        next &= ~comp;
        comp |= next;
        frontier = next;
      }
      out.push_back(comp);
      left &= ~comp;
    }
    return out;
  }

  bool is_join() const { return size() >= 2 && complement().components().size() >= 2; }

  // Relabels vertex v to perm[v].
  SimpGraph permuted(const std::vector<int>& perm) const {
    std::vector<std::string> nm(size());
    for (int v = 0; v < size(); ++v) nm[perm[v]] = names_[v];
    SimpGraph g(nm);
    for (auto [a, b] : edges()) g.add_edge(perm[a], perm[b]);
    return g;
  }

  nlohmann::json to_json() const {
    nlohmann::json j;
    j["vertices"] = names_;
    auto e = nlohmann::json::array();
    for (auto [a, b] : edges()) e.push_back({names_[a], names_[b]});
    j["edges"] = e;
    return j;
  }

  static SimpGraph from_json(const nlohmann::json& j, const std::string& where = "graph") {
    if (!j.is_object() || !j.contains("vertices") || !j["vertices"].is_array())
      throw Error(ErrorCode::schema, "graph needs a vertices array", where);
    std::vector<std::string> nm;
    for (const auto& v : j["vertices"]) nm.push_back(v.is_string() ? v.get<std::string>() : v.dump());
    std::set<std::string> uniq(nm.begin(), nm.end());
    if (uniq.size() != nm.size()) throw Error(ErrorCode::schema, "duplicate vertex", where + ".vertices");
    SimpGraph g(nm);
    if (j.contains("edges")) {
      std::size_t i = 0;
      for (const auto& e : j["edges"]) {
        std::string loc = where + ".edges[" + std::to_string(i++) + "]";
        if (!e.is_array() || e.size() != 2) throw Error(ErrorCode::schema, "edge must be a pair", loc);
        auto key = [](const nlohmann::json& x) { return x.is_string() ? x.get<std::string>() : x.dump(); };
        int a = g.index_of(key(e[0])), b = g.index_of(key(e[1]));
        if (a < 0 || b < 0) throw Error(ErrorCode::schema, "unknown endpoint", loc);
        if (a == b) throw Error(ErrorCode::schema, "loop", loc);
        if (g.adjacent(a, b)) throw Error(ErrorCode::schema, "multi-edge", loc);
        g.add_edge(a, b);
      }
    }
    return g;
  }

 private:
  std::vector<Mask> adj_;
  std::vector<std::string> names_;
};

// Adjacency code of a graph under a vertex permutation, used for
// isomorphism canonical forms of small graphs.
inline Mask adjacency_code(const SimpGraph& g, const std::vector<int>& perm) {
  Mask code = 0;
  int k = 0;
  const int n = g.size();
  std::vector<int> inv(n);
  for (int v = 0; v < n; ++v) inv[perm[v]] = v;
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b, ++k)
      if (g.adjacent(inv[a], inv[b])) code |= bit(k);
  return code;
}

inline Mask canonical_code(const SimpGraph& g) {
  std::vector<int> perm(g.size());
  std::iota(perm.begin(), perm.end(), 0);
  Mask best = ~Mask{0};
  do {
    best = std::min(best, adjacency_code(g, perm));
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

// Graph on n vertices whose edge set is read from the bits of `code`
// (pairs a<b in lexicographic order).
inline SimpGraph graph_from_code(int n, Mask code) {
  SimpGraph g(n);
  int k = 0;
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b, ++k)
      if ((code >> k) & 1) g.add_edge(a, b);
  return g;
}

inline std::vector<SimpGraph> all_labeled_graphs(int n) {
  std::vector<SimpGraph> out;
  const int pairs = n * (n - 1) / 2;
  for (Mask c = 0; c < (Mask{1} << pairs); ++c) out.push_back(graph_from_code(n, c));
  return out;
}

// One representative per isomorphism class on n vertices (n <= 6).
inline std::vector<SimpGraph> nonisomorphic_graphs(int n) {
  std::set<Mask> seen;
  std::vector<SimpGraph> out;
  const int pairs = n * (n - 1) / 2;
  for (Mask c = 0; c < (Mask{1} << pairs); ++c) {
    auto g = graph_from_code(n, c);
    if (seen.insert(canonical_code(g)).second) out.push_back(g);
  }
  return out;
}

}  // namespace inam

#endif  // INAM_SIMP_GRAPH_HPP_
