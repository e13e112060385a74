#ifndef INAM_TREE_HPP_
#define INAM_TREE_HPP_

#include <algorithm>
#include <array>
#include <deque>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "amalgam.hpp"
#include "group_ops.hpp"
#include "hnn.hpp"
#include "means.hpp"

namespace inam {

struct TreeVertex {
  Elt key;  // least element of the coset key·G_type
  int type = 0;
  int depth = 0;
  int parent = -1;
};

struct TreeEdge {
  int a = 0;  // parent
  int b = 0;  // child
  Elt label;  // least element of the edge coset
  Elt conjugator;  // the edge stabilizer is conjugator·E·conjugator^-1
};

// Ball of radius R in the Bass–Serre tree of an amalgam (types 0 = A-cosets,
// 1 = B-cosets) or an HNN extension (type 0 = K-cosets), from the coset of
// the identity.
struct TreeBall {
  GroupCtx group;
  int radius = 0;
  std::vector<std::string> type_names;
  std::vector<std::vector<Elt>> vertex_groups;  // G_type as elements of G
  std::vector<Elt> edge_group;                  // E, the stabilizer of base edges
  struct Move {
    Elt step;       // neighbor is key·step·G_target
    Elt edge_elt;   // the edge coset is key·edge_elt·E
    int target = 0;
  };
  std::vector<std::vector<Move>> moves;
  std::vector<TreeVertex> vertices;
  std::vector<TreeEdge> edges;
  std::vector<std::vector<int>> adj;
  std::map<std::pair<Elt, int>, int> index;

  std::size_t size() const { return vertices.size(); }

  Elt key(const Elt& g, int type) const {
    Elt best = group->multiply(g, vertex_groups[type].front());
    for (const auto& x : vertex_groups[type]) best = std::min(best, group->multiply(g, x));
    return best;
  }

  std::optional<int> find(const Elt& key_elt, int type) const {
    auto it = index.find({key_elt, type});
    if (it == index.end()) return std::nullopt;
    return it->second;
  }

  std::optional<int> act(const Elt& g, int v) const {
    const auto& x = vertices[v];
    return find(key(group->multiply(g, x.key), x.type), x.type);
  }

  int distance(int u, int v) const {
    int d = 0;
    while (u != v) {
      if (vertices[u].depth >= vertices[v].depth) {
        u = vertices[u].parent;
      } else {
        v = vertices[v].parent;
      }
      ++d;
    }
    return d;
  }

  // Vertices on the side of the edge (a, b) containing `toward`.
  std::vector<char> side_of_edge(int a, int b, int toward) const {
    std::vector<char> in(size(), 0);
    std::deque<int> q{toward};
    in[toward] = 1;
    while (!q.empty()) {
      int x = q.front();
      q.pop_front();
      for (int y : adj[x]) {
        if (in[y] || (x == a && y == b) || (x == b && y == a)) continue;
        in[y] = 1;
        q.push_back(y);
      }
    }
    return in;
  }
};

namespace detail {

inline void grow_tree(TreeBall& t, std::size_t cap) {
  const auto& G = *t.group;
  t.index[{t.vertices[0].key, 0}] = 0;
  t.adj.emplace_back();
  std::deque<int> q{0};
  while (!q.empty()) {
    const int u = q.front();
    q.pop_front();
    if (t.vertices[u].depth >= t.radius) continue;
    const Elt p = t.vertices[u].key;
    const int type = t.vertices[u].type;
    for (const auto& m : t.moves[type]) {
      Elt k = t.key(G.multiply(p, m.step), m.target);
      if (t.index.count({k, m.target})) continue;
      if (t.vertices.size() >= cap)
        throw Error(ErrorCode::cap_exceeded, "tree ball exceeds cap of " + std::to_string(cap) + " vertices");
      const int id = static_cast<int>(t.vertices.size());
      t.index[{k, m.target}] = id;
      t.vertices.push_back({k, m.target, t.vertices[u].depth + 1, u});
      t.adj.emplace_back();
      t.adj[u].push_back(id);
      t.adj[id].push_back(u);
      Elt g = G.multiply(p, m.edge_elt);
      Elt label = G.multiply(g, t.edge_group.front());
      for (const auto& e : t.edge_group) label = std::min(label, G.multiply(g, e));
      t.edges.push_back({u, id, label, g});
      q.push_back(id);
    }
  }
}

}  // namespace detail

inline TreeBall bass_serre_ball(const GroupCtx& ctx, int radius, std::size_t cap = default_cap()) {
  if (radius < 0) throw Error(ErrorCode::schema, "radius must be non-negative", "radius");
  TreeBall t;
  t.group = ctx;
  t.radius = radius;
  if (const auto* am = dynamic_cast<const AmalgamGroup*>(ctx.get())) {
    t.type_names = {"A", "B"};
    for (int i = 0; i < 2; ++i) {
      std::vector<Elt> els;
      for (auto x : am->factor(i).elements()) els.push_back(am->factor_elt(i, x));
      t.vertex_groups.push_back(els);
    }
    for (auto h : am->edge_group().elements()) t.edge_group.push_back(am->edge_elt(h));
    t.moves.resize(2);
    for (int i = 0; i < 2; ++i)
      for (const auto& x : t.vertex_groups[i]) t.moves[i].push_back({x, x, 1 - i});
  } else if (const auto* hn = dynamic_cast<const HnnGroup*>(ctx.get())) {
    t.type_names = {"K"};
    std::vector<Elt> els;
    for (auto x : hn->base().elements()) els.push_back(hn->base_elt(x));
    t.vertex_groups.push_back(els);
    // The edge (K, tK) is fixed by K ∩ tKt^-1 = φ(H).
    for (auto y : hn->image()) t.edge_group.push_back(hn->base_elt(y));
    t.moves.resize(1);
    const Elt tp = hn->stable(1), tm = hn->stable(-1);
    for (const auto& k : els) {
      t.moves[0].push_back({hn->multiply(k, tp), k, 0});
      Elt ktm = hn->multiply(k, tm);
      t.moves[0].push_back({ktm, ktm, 0});
    }
  } else {
    throw Error(ErrorCode::unsupported, "Bass-Serre trees need an amalgam or an HNN extension", ctx->kind());
  }
  t.vertices.push_back({t.key(ctx->identity(), 0), 0, 0, -1});
  detail::grow_tree(t, cap);
  return t;
}

// ---------------------------------------------------------------- isometries

struct IsometryClass {
  bool elliptic = true;
  std::int64_t translation_length = 0;
  std::optional<int> brute_force;  // min d(v, g v) over the ball
  bool conclusive = false;         // the ball provably contains a minimizer
  std::vector<int> min_set;        // vertices realizing the minimum
};

inline IsometryClass classify_isometry(const Elt& g, const TreeBall& t) {
  IsometryClass c;
  auto red = cyclic_reduction(*t.group, g);
  c.elliptic = red.elliptic;
  c.translation_length = red.translation_length;
  // With d(v0, g v0) <= R the projection of v0 to Min(g) and its image stay
  // within R of v0.
  c.conclusive = t.act(g, 0).has_value();
  int best = -1;
  std::vector<int> disp(t.size(), -1);
  for (std::size_t v = 0; v < t.size(); ++v) {
    auto w = t.act(g, static_cast<int>(v));
    if (!w) continue;
    disp[v] = t.distance(static_cast<int>(v), *w);
    if (best < 0 || disp[v] < best) best = disp[v];
  }
  if (best >= 0) {
    c.brute_force = best;
    for (std::size_t v = 0; v < t.size(); ++v)
      if (disp[v] == best) c.min_set.push_back(static_cast<int>(v));
  }
  return c;
}

inline std::vector<int> fixed_point_set(const Elt& g, const TreeBall& t) {
  std::vector<int> out;
  for (std::size_t v = 0; v < t.size(); ++v) {
    auto w = t.act(g, static_cast<int>(v));
    if (w && *w == static_cast<int>(v)) out.push_back(static_cast<int>(v));
  }
  return out;
}

inline bool induces_subtree(const TreeBall& t, const std::vector<int>& set) {
  if (set.empty()) return true;
  std::vector<char> in(t.size(), 0), seen(t.size(), 0);
  for (int v : set) in[v] = 1;
  std::deque<int> q{set.front()};
  seen[set.front()] = 1;
  std::size_t count = 1;
  while (!q.empty()) {
    int x = q.front();
    q.pop_front();
    for (int y : t.adj[x])
      if (in[y] && !seen[y]) {
        seen[y] = 1;
        ++count;
        q.push_back(y);
      }
  }
  return count == set.size();
}

// ---------------------------------------------------------------- halfspaces

template <typename S>
S halfspace_fix_mass(const ProbVec<S>& p, const TreeBall& t, int edge, int side) {
  const auto& e = t.edges.at(edge);
  auto in = t.side_of_edge(e.a, e.b, side == 0 ? e.a : e.b);
  S total(0);
  for (const auto& [g, m] : p.mass) {
    for (int v : fixed_point_set(g, t))
      if (in[v]) {
        total += m;
        break;
      }
  }
  return total;
}

// ---------------------------------------------------------------- φ

// Points of the half-integer subdivision: vertices, then edge midpoints.
struct Subdivision {
  std::vector<std::vector<int>> adj;
  std::size_t vertex_count = 0;

  explicit Subdivision(const TreeBall& t) : adj(t.size() + t.edges.size()), vertex_count(t.size()) {
    for (std::size_t i = 0; i < t.edges.size(); ++i) {
      const int m = static_cast<int>(t.size() + i);
      adj[t.edges[i].a].push_back(m);
      adj[t.edges[i].b].push_back(m);
      adj[m] = {t.edges[i].a, t.edges[i].b};
    }
  }
  std::size_t size() const { return adj.size(); }

  // Half-unit distances and BFS parents from src.
  std::pair<std::vector<int>, std::vector<int>> bfs(int src) const {
    std::vector<int> d(size(), -1), parent(size(), -1);
    std::deque<int> q{src};
    d[src] = 0;
    while (!q.empty()) {
      int x = q.front();
      q.pop_front();
      for (int y : adj[x])
        if (d[y] < 0) {
          d[y] = d[x] + 1;
          parent[y] = x;
          q.push_back(y);
        }
    }
    return {d, parent};
  }
};

template <typename S>
struct PhiReport {
  std::vector<S> phi;       // per subdivision point
  std::vector<int> argmin;  // subdivision points
  std::size_t pairs_checked = 0;
  std::size_t pairs_failed = 0;
  bool ok = true;
};

// φ(x) = Σ_g p(g) d(x, g x0)², exactly, on every point of the subdivision;
// checks φ(c) <= (φ(x)+φ(y))/2 - d(x,y)²/4 at midpoints c of sampled pairs.
template <typename S>
PhiReport<S> phi_minimizer(const ProbVec<S>& p, const TreeBall& t, int x0, std::size_t samples = 1000,
                           std::uint64_t seed = 1) {
  Subdivision sub(t);
  std::vector<std::pair<S, std::vector<int>>> terms;
  for (const auto& [g, m] : p.mass) {
    auto w = t.act(g, x0);
    if (!w) throw Error(ErrorCode::outside_ball, "support element moves the base point out of the ball",
                        t.group->to_string(g));
    terms.push_back({m, sub.bfs(*w).first});
  }
  PhiReport<S> rep;
  rep.phi.assign(sub.size(), S(0));
  const S quarter = ArithTraits<S>::from_ratio(1, 4);
  for (std::size_t x = 0; x < sub.size(); ++x) {
    S acc(0);
    for (const auto& [m, d] : terms) acc += m * S(d[x] * d[x]) * quarter;
    rep.phi[x] = acc;
  }
  S best = rep.phi[0];
  for (const auto& v : rep.phi)
    if (v < best) best = v;
  for (std::size_t x = 0; x < sub.size(); ++x)
    if (ArithTraits<S>::abs(rep.phi[x] - best) <= ArithTraits<S>::tolerance()) rep.argmin.push_back(static_cast<int>(x));

  if (sub.size() < 2) return rep;
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, sub.size() - 1);
  std::size_t guard = 0;
  while (rep.pairs_checked < samples && guard++ < 50 * samples) {
    const int x = static_cast<int>(pick(rng)), y = static_cast<int>(pick(rng));
    auto [dx, parent] = sub.bfs(x);
    if (dx[y] % 2 != 0) continue;  // midpoint must be a subdivision point
    int c = y;
    for (int i = 0; i < dx[y] / 2; ++i) c = parent[c];
    const S dxy = ArithTraits<S>::from_ratio(dx[y], 2);
    const S rhs = (rep.phi[x] + rep.phi[y]) * ArithTraits<S>::from_ratio(1, 2) - dxy * dxy * quarter;
    ++rep.pairs_checked;
    if (!approx_leq<S>(rep.phi[c], rhs)) ++rep.pairs_failed;
  }
  rep.ok = rep.pairs_failed == 0;
  return rep;
}

// ---------------------------------------------------------------- partition

struct AminePartitionReport {
  int radius = 0;
  bool swapped = false;  // factors exchanged to reach |A:H| >= 2, |B:H| >= 3
  Elt a, b1, b2;
  std::size_t elements = 0;  // |ball(R) \ H|
  std::size_t interior = 0;  // elements of length <= R-1
  bool partition_ok = true;
  bool coverage_ok = true;
  bool disjoint_ok = true;
  std::size_t family_overlaps = 0;
  std::size_t unclassified = 0;
  std::size_t uncovered = 0;
  std::size_t collisions = 0;
  std::array<std::size_t, 4> family_sizes{};  // AA, AB, BB, BA within the ball
  bool ok() const { return partition_ok && coverage_ok && disjoint_ok; }
};

inline AminePartitionReport amine_partition(const std::shared_ptr<const AmalgamGroup>& am, int radius,
                                            std::size_t cap = default_cap()) {
  AminePartitionReport rep;
  rep.radius = radius;
  int fa = 0, fb = 1;
  if (!(am->index(0) >= 2 && am->index(1) >= 3)) {
    if (am->index(1) >= 2 && am->index(0) >= 3) {
      std::swap(fa, fb);
      rep.swapped = true;
    } else {
      throw Error(ErrorCode::degenerate, "needs |A:H| >= 2 and |B:H| >= 3 after ordering the factors",
                  "indices " + std::to_string(am->index(0)) + "," + std::to_string(am->index(1)));
    }
  }
  auto nontrivial = [&](int f) {
    std::vector<Elt> out;
    for (auto x : am->factor(f).elements())
      if (!am->in_edge_image(f, x)) out.push_back(am->factor_elt(f, x));
    std::sort(out.begin(), out.end());
    return out;
  };
  const auto A0 = nontrivial(fa), B0 = nontrivial(fb);
  rep.a = A0.front();
  bool found = false;
  for (std::size_t i = 0; i < B0.size() && !found; ++i)
    for (std::size_t j = i + 1; j < B0.size() && !found; ++j) {
      Elt q = am->multiply(am->inverse(B0[i]), B0[j]);
      if (std::binary_search(B0.begin(), B0.end(), q)) {
        rep.b1 = B0[i];
        rep.b2 = B0[j];
        found = true;
      }
    }
  if (!found) throw Error(ErrorCode::degenerate, "no b1, b2 with b1^-1 b2 outside H");

  // Families by explicit products of letters from A0 and B0, up to R+2 letters.
  // 0: A0(B0A0)^n, 1: (A0B0)^{n+1}, 2: B0(A0B0)^n, 3: (B0A0)^{n+1}.
  const int max_letters = radius + 2;
  std::array<std::set<Elt>, 4> family;
  for (int start = 0; start < 2; ++start) {
    std::set<Elt> layer;
    for (const auto& x : start == 0 ? A0 : B0) layer.insert(x);
    for (int len = 1; len <= max_letters && !layer.empty(); ++len) {
      const bool ends_in_a = (start == 0) == (len % 2 == 1);
      const int fam = start == 0 ? (ends_in_a ? 0 : 1) : (ends_in_a ? 3 : 2);
      family[fam].insert(layer.begin(), layer.end());
      if (len == max_letters) break;
      std::set<Elt> next;
      for (const auto& w : layer)
        for (const auto& x : ends_in_a ? B0 : A0) next.insert(am->multiply(w, x));
      if (next.size() > cap) throw Error(ErrorCode::cap_exceeded, "family enumeration exceeds cap");
      layer = std::move(next);
    }
  }
  auto in_s = [&](const Elt& g) { return family[0].count(g) || family[1].count(g); };

  auto b = ball(*am, radius, cap);
  for (std::size_t i = 0; i < b.elements.size(); ++i) {
    const Elt& g = b.elements[i];
    if (AmalgamGroup::syllable_count(g) == 0) continue;  // g in H
    ++rep.elements;
    int hits = 0;
    for (int f = 0; f < 4; ++f)
      if (family[f].count(g)) {
        ++hits;
        ++rep.family_sizes[f];
      }
    if (hits == 0) ++rep.unclassified;
    if (hits > 1) ++rep.family_overlaps;

    const bool s0 = in_s(g);
    if (b.length[i] <= radius - 1) {
      ++rep.interior;
      if (!s0 && !in_s(am->conjugate(am->inverse(rep.a), g))) ++rep.uncovered;
    }
    const int inside = s0 + in_s(am->conjugate(am->inverse(rep.b1), g)) + in_s(am->conjugate(am->inverse(rep.b2), g));
    if (inside > 1) ++rep.collisions;
  }
  rep.partition_ok = rep.unclassified == 0 && rep.family_overlaps == 0;
  rep.coverage_ok = rep.uncovered == 0;
  rep.disjoint_ok = rep.collisions == 0;
  return rep;
}

// ---------------------------------------------------------------- export

inline nlohmann::json tree_to_json(const TreeBall& t) {
  nlohmann::json j;
  j["schema"] = "inam.tree/1";
  j["radius"] = t.radius;
  j["group"] = t.group->kind();
  j["vertices"] = nlohmann::json::array();
  for (std::size_t i = 0; i < t.size(); ++i) {
    const auto& v = t.vertices[i];
    j["vertices"].push_back({{"id", i}, {"rep", t.group->elt_to_json(v.key)}, {"type", t.type_names[v.type]},
                             {"depth", v.depth}});
  }
  j["edges"] = nlohmann::json::array();
  for (const auto& e : t.edges)
    j["edges"].push_back({{"a", e.a}, {"b", e.b}, {"label", t.group->elt_to_json(e.label)}});
  return j;
}

inline std::string tree_to_dot(const TreeBall& t) {
  std::ostringstream os;
  os << "graph tree {\n";
  for (std::size_t i = 0; i < t.size(); ++i)
    os << "  v" << i << " [label="
       << dot_quote(t.group->to_string(t.vertices[i].key) + " " + t.type_names[t.vertices[i].type]) << "];\n";
  for (const auto& e : t.edges) os << "  v" << e.a << " -- v" << e.b << ";\n";
  os << "}\n";
  return os.str();
}

}  // namespace inam

#endif  // INAM_TREE_HPP_
