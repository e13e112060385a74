#ifndef INAM_CUBE_COMPLEX_HPP_
#define INAM_CUBE_COMPLEX_HPP_

#include <algorithm>
#include <array>
#include <deque>
#include <map>
#include <memory>
#include <numeric>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "json.hpp"

#include "graph_product.hpp"
#include "group_ops.hpp"
#include "simp_graph.hpp"

namespace inam {

using GraphProductCtx = std::shared_ptr<const GraphProductGroup>;

struct CubeVertex {
  Elt rep;  // shortest representative of rep G_clique
  Mask clique = 0;
  int depth = 0;
};

struct CubeEdge {
  int a = 0;  // lower endpoint (smaller clique)
  int b = 0;
  int vlabel = 0;
  Elt witness;  // rep(b)^-1 rep(a), an element of G_{clique(b)}
};

struct Cube {
  int base = 0;   // the corner with the smallest clique
  Mask clique = 0;  // directions; dimension is its popcount
};

// A finite ball of X_Γ around the vertex G_∅, or the whole of CΓ.
struct ComplexBall {
  GraphProductCtx group;
  int radius = 0;
  int interior_radius = 0;
  bool complete = false;   // the ball is the whole complex
  bool truncated = false;  // integer vertex groups were windowed
  int integer_window = 0;
  std::vector<CubeVertex> vertices;
  std::vector<CubeEdge> edges;
  std::vector<Cube> cubes;  // dimension >= 2
  std::vector<std::vector<int>> incident;  // vertex -> edge ids
  std::vector<std::vector<int>> cube_at;   // vertex -> ids of cubes having it as a corner
  std::map<std::pair<Elt, Mask>, int> index;
  std::map<std::pair<int, int>, int> edge_index;

  const SimpGraph& graph() const { return group->graph(); }
  std::size_t size() const { return vertices.size(); }

  std::optional<int> find(const Elt& rep, Mask clique) const {
    auto it = index.find({rep, clique});
    if (it == index.end()) return std::nullopt;
    return it->second;
  }

  std::optional<int> find_edge(int x, int y) const {
    auto it = edge_index.find({std::min(x, y), std::max(x, y)});
    if (it == edge_index.end()) return std::nullopt;
    return it->second;
  }

  bool interior_vertex(int v) const { return vertices[v].depth <= interior_radius; }
  bool interior_edge(int e) const { return interior_vertex(edges[e].a) && interior_vertex(edges[e].b); }

  // Vertex ids of a cube, indexed by the subset D of its clique in
  // increasing submask order; empty if some corner is missing.
  std::vector<int> cube_corners(int base, Mask c) const {
    const auto& u = vertices[base];
    std::vector<int> out;
    for (Mask d = 0;; d = (d - c) & c) {
      auto id = find(group->strip_suffix(u.rep, u.clique | d), u.clique | d);
      if (!id) return {};
      out.push_back(*id);
      if (d == c) break;
    }
    return out;
  }

  std::vector<std::vector<int>> adjacency() const {
    std::vector<std::vector<int>> adj(size());
    for (const auto& e : edges) {
      adj[e.a].push_back(e.b);
      adj[e.b].push_back(e.a);
    }
    return adj;
  }

  std::size_t cube_count(int dim) const {
    if (dim == 0) return vertices.size();
    if (dim == 1) return edges.size();
    return static_cast<std::size_t>(
        std::count_if(cubes.begin(), cubes.end(), [&](const Cube& c) { return popcount(c.clique) == dim; }));
  }

  int dimension() const {
    int d = edges.empty() ? 0 : 1;
    for (const auto& c : cubes) d = std::max(d, popcount(c.clique));
    return d;
  }
};

// g · (h G_σ) = (g h) G_σ.
inline std::pair<Elt, Mask> act_on_coset(const GraphProductGroup& gp, const Elt& g, const CubeVertex& v) {
  return {gp.strip_suffix(gp.multiply(g, v.rep), v.clique), v.clique};
}

inline ComplexBall build_x_gamma_ball(GraphProductCtx gp, int radius, std::size_t cap = default_cap(),
                                      int integer_window = 2) {
  if (radius < 0) throw Error(ErrorCode::schema, "radius must be non-negative", "radius");
  const SimpGraph& G = gp->graph();
  const int n = G.size();
  ComplexBall ball;
  ball.group = gp;
  ball.radius = radius;
  ball.interior_radius = radius - 1;
  ball.integer_window = integer_window;

  std::vector<std::vector<std::int64_t>> down_values(n);
  for (int v = 0; v < n; ++v) {
    const auto& Gv = gp->vertex_group(v);
    if (Gv.finite()) {
      down_values[v] = Gv.elements();
    } else {
      ball.truncated = true;
      for (std::int64_t x = -integer_window; x <= integer_window; ++x) down_values[v].push_back(x);
    }
  }

  auto add_vertex = [&](Elt rep, Mask c, int depth) {
    auto [it, fresh] = ball.index.emplace(std::make_pair(rep, c), static_cast<int>(ball.vertices.size()));
    if (fresh) {
      if (ball.vertices.size() >= cap)
        throw Error(ErrorCode::cap_exceeded, "complex ball exceeds cap of " + std::to_string(cap) + " vertices");
      ball.vertices.push_back({std::move(rep), c, depth});
      ball.incident.emplace_back();
    }
    return std::make_pair(it->second, fresh);
  };
  auto add_edge = [&](int lo, int hi, int v) {
    auto key = std::make_pair(std::min(lo, hi), std::max(lo, hi));
    if (ball.edge_index.count(key)) return;
    const int id = static_cast<int>(ball.edges.size());
    ball.edge_index[key] = id;
    Elt w = gp->multiply(gp->inverse(ball.vertices[hi].rep), ball.vertices[lo].rep);
    ball.edges.push_back({lo, hi, v, std::move(w)});
    ball.incident[lo].push_back(id);
    ball.incident[hi].push_back(id);
  };

  add_vertex(gp->identity(), 0, 0);
  std::deque<int> queue{0};
  while (!queue.empty()) {
    const int u = queue.front();
    queue.pop_front();
    const int depth = ball.vertices[u].depth;
    if (depth >= radius) continue;
    const Elt rep = ball.vertices[u].rep;
    const Mask s = ball.vertices[u].clique;
    for (int v = 0; v < n; ++v) {
      if (s & bit(v)) {
        const Mask t = s & ~bit(v);
        for (std::int64_t x : down_values[v]) {
          Elt r = gp->strip_suffix(gp->multiply(rep, gp->syllable_elt(v, x)), t);
          auto [id, fresh] = add_vertex(std::move(r), t, depth + 1);
          if (fresh) queue.push_back(id);
          add_edge(id, u, v);
        }
      } else if (G.is_clique(s | bit(v))) {
        const Mask t = s | bit(v);
        auto [id, fresh] = add_vertex(gp->strip_suffix(rep, t), t, depth + 1);
        if (fresh) queue.push_back(id);
        add_edge(u, id, v);
      }
    }
  }

  ball.cube_at.assign(ball.vertices.size(), {});
  for (int u = 0; u < static_cast<int>(ball.vertices.size()); ++u) {
    const Mask s = ball.vertices[u].clique;
    Mask free = 0;
    for (int v = 0; v < n; ++v)
      if (!(s & bit(v)) && G.is_clique(s | bit(v))) free |= bit(v);
    for (Mask c = free; c; c = (c - 1) & free) {
      if (popcount(c) < 2 || !G.is_clique(s | c)) continue;
      auto corners = ball.cube_corners(u, c);
      if (corners.empty()) continue;
      for (int x : corners) ball.cube_at[x].push_back(static_cast<int>(ball.cubes.size()));
      ball.cubes.push_back({u, c});
    }
  }
  // Complete when no boundary vertex has a neighbour outside the ball.
  auto closed = [&](const CubeVertex& u) {
    if (u.depth < radius) return true;
    for (int v = 0; v < n; ++v) {
      if (u.clique & bit(v)) {
        const Mask t = u.clique & ~bit(v);
        for (std::int64_t x : down_values[v])
          if (!ball.find(gp->strip_suffix(gp->multiply(u.rep, gp->syllable_elt(v, x)), t), t)) return false;
      } else if (G.is_clique(u.clique | bit(v)) && !ball.find(gp->strip_suffix(u.rep, u.clique | bit(v)), u.clique | bit(v))) {
        return false;
      }
    }
    return true;
  };
  const bool exhausted = !ball.truncated && std::all_of(ball.vertices.begin(), ball.vertices.end(), closed);
  if (exhausted && !ball.truncated) {
    ball.complete = true;
    ball.interior_radius = radius;
  }
  return ball;
}

// CΓ: the cube complex of cliques (including ∅) of Γ.
inline ComplexBall build_c_gamma(const SimpGraph& g) {
  auto gp = std::make_shared<const GraphProductGroup>(g, std::vector<BasicGroup>(g.size(), BasicGroup::cyclic(1)));
  auto ball = build_x_gamma_ball(gp, g.size());
  ball.complete = true;
  ball.interior_radius = ball.radius;
  return ball;
}

inline Subgroup vertex_stabilizer(const ComplexBall& ball, int vertex) {
  const auto& v = ball.vertices.at(vertex);
  return conjugate_vertex_subgroup(ball.group, v.rep, v.clique);
}

// ---------------------------------------------------------------- hyperplanes

struct HyperplaneInfo {
  int id = 0;
  int vlabel = 0;
  std::vector<int> edges;         // interior edges of the class
  std::set<int> crossing;         // ids of classes sharing a square
  std::vector<signed char> side;  // per vertex: 0/1 on the interior, -1 outside
  int components = 0;             // of the interior 1-skeleton minus the class
  int min_depth = 0;              // least depth of an endpoint
  bool core = false;              // crossing data is exact for this class
};

struct HyperplaneSet {
  std::vector<HyperplaneInfo> classes;
  std::vector<int> edge_class;  // per edge, -1 for non-interior edges
  int core_depth = -1;

  bool crosses(int i, int j) const { return classes[i].crossing.count(j) != 0; }
  std::vector<int> core_ids() const {
    std::vector<int> out;
    for (const auto& h : classes)
      if (h.core) out.push_back(h.id);
    return out;
  }
  // The class of the edge (G_∅, G_{v}) at the base vertex.
  std::optional<int> base_class(const ComplexBall& ball, int v) const {
    auto top = ball.find({}, bit(v));
    if (!top) return std::nullopt;
    auto e = ball.find_edge(0, *top);
    if (!e || edge_class[*e] < 0) return std::nullopt;
    return edge_class[*e];
  }
};

struct UnionFindSimple {
  std::vector<int> parent;
  explicit UnionFindSimple(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};

// The four edges of a square, as two parallel pairs.
inline std::array<std::pair<int, int>, 2> square_parallels(const ComplexBall& ball, int base, Mask c) {
  auto corners = ball.cube_corners(base, c);  // order: ∅, {v}, {w}, {v,w}
  auto e = [&](int x, int y) { return *ball.find_edge(corners[x], corners[y]); };
  return {{{e(0, 1), e(2, 3)}, {e(0, 2), e(1, 3)}}};
}

inline HyperplaneSet hyperplane_classes(const ComplexBall& ball) {
  if (ball.interior_radius < 1 && !ball.complete)
    throw Error(ErrorCode::insufficient_interior, "hyperplane classes need interior radius >= 1");
  const int ne = static_cast<int>(ball.edges.size());
  const int nv = static_cast<int>(ball.vertices.size());
  UnionFindSimple uf(ne);
  std::vector<std::pair<int, int>> square_pairs;  // crossing edge pairs
  for (const auto& cube : ball.cubes) {
    if (popcount(cube.clique) != 2) continue;
    auto par = square_parallels(ball, cube.base, cube.clique);
    uf.unite(par[0].first, par[0].second);
    uf.unite(par[1].first, par[1].second);
    square_pairs.push_back({par[0].first, par[1].first});
  }

  HyperplaneSet hs;
  hs.edge_class.assign(ne, -1);
  hs.core_depth = ball.complete ? ball.radius : (ball.radius - 2) / 2;
  std::map<int, int> root_to_class;
  for (int e = 0; e < ne; ++e) {
    if (!ball.complete && !ball.interior_edge(e)) continue;
    const int r = uf.find(e);
    auto [it, fresh] = root_to_class.emplace(r, static_cast<int>(hs.classes.size()));
    if (fresh) {
      HyperplaneInfo h;
      h.id = it->second;
      h.vlabel = ball.edges[e].vlabel;
      h.min_depth = ball.vertices[ball.edges[e].a].depth;
      hs.classes.push_back(std::move(h));
    }
    auto& h = hs.classes[it->second];
    if (h.vlabel != ball.edges[e].vlabel) throw Error(ErrorCode::degenerate, "hyperplane class mixes vertex labels");
    h.edges.push_back(e);
    h.min_depth = std::min({h.min_depth, ball.vertices[ball.edges[e].a].depth, ball.vertices[ball.edges[e].b].depth});
    hs.edge_class[e] = it->second;
  }
  for (auto [e1, e2] : square_pairs) {
    auto c1 = root_to_class.find(uf.find(e1));
    auto c2 = root_to_class.find(uf.find(e2));
    if (c1 == root_to_class.end() || c2 == root_to_class.end()) continue;
    hs.classes[c1->second].crossing.insert(c2->second);
    hs.classes[c2->second].crossing.insert(c1->second);
  }

  auto adj = ball.adjacency();
  std::vector<std::vector<std::pair<int, int>>> inc(nv);  // (neighbor, edge)
  for (int e = 0; e < ne; ++e) {
    if (!ball.complete && !ball.interior_edge(e)) continue;
    inc[ball.edges[e].a].push_back({ball.edges[e].b, e});
    inc[ball.edges[e].b].push_back({ball.edges[e].a, e});
  }
  for (auto& h : hs.classes) {
    h.core = h.min_depth <= hs.core_depth;
    h.side.assign(nv, -1);
    std::vector<int> comp(nv, -1);
    int count = 0;
    for (int s = 0; s < nv; ++s) {
      if ((!ball.complete && !ball.interior_vertex(s)) || comp[s] >= 0) continue;
      std::vector<int> stack{s};
      comp[s] = count;
      while (!stack.empty()) {
        int x = stack.back();
        stack.pop_back();
        for (auto [y, e] : inc[x]) {
          if (hs.edge_class[e] == h.id || comp[y] >= 0) continue;
          comp[y] = count;
          stack.push_back(y);
        }
      }
      ++count;
    }
    h.components = count;
    const int e0 = h.edges.front();
    const int c0 = comp[ball.edges[e0].a];
    for (int x = 0; x < nv; ++x)
      if (comp[x] >= 0) h.side[x] = comp[x] == c0 ? 0 : 1;
  }
  return hs;
}

// Crossing graph on the given classes (all interior classes by default).
inline std::vector<std::vector<int>> crossing_graph(const HyperplaneSet& hs) {
  std::vector<std::vector<int>> out(hs.classes.size());
  for (const auto& h : hs.classes) out[h.id].assign(h.crossing.begin(), h.crossing.end());
  return out;
}

// ---------------------------------------------------------------- joins

inline std::vector<Mask> join_decomposition(const SimpGraph& g) { return g.complement().components(); }

struct IrreducibilityReport {
  std::size_t core_classes = 0;
  std::vector<std::vector<int>> blocks;     // core class ids per complement component
  std::vector<Mask> block_labels;           // vertex labels occurring in each block
  bool product_signature = false;
  bool is_join = false;
  bool agrees = false;
};

inline IrreducibilityReport irreducibility_check(const ComplexBall& ball, const HyperplaneSet& hs) {
  if (!ball.complete && ball.interior_radius < 2)
    throw Error(ErrorCode::insufficient_interior, "irreducibility needs interior radius >= 2");
  IrreducibilityReport rep;
  auto core = hs.core_ids();
  rep.core_classes = core.size();
  UnionFindSimple uf(core.size());
  for (std::size_t i = 0; i < core.size(); ++i)
    for (std::size_t j = i + 1; j < core.size(); ++j)
      if (!hs.crosses(core[i], core[j])) uf.unite(static_cast<int>(i), static_cast<int>(j));
  std::map<int, int> root_block;
  for (std::size_t i = 0; i < core.size(); ++i) {
    auto [it, fresh] = root_block.emplace(uf.find(static_cast<int>(i)), static_cast<int>(rep.blocks.size()));
    if (fresh) {
      rep.blocks.emplace_back();
      rep.block_labels.push_back(0);
    }
    rep.blocks[it->second].push_back(core[i]);
    rep.block_labels[it->second] |= bit(hs.classes[core[i]].vlabel);
  }
  rep.product_signature = rep.blocks.size() >= 2;
  rep.is_join = ball.graph().is_join();
  rep.agrees = rep.product_signature == rep.is_join;
  return rep;
}

// ---------------------------------------------------------------- halfspaces

struct Halfspace {
  int cls = 0;
  int side = 0;
  bool operator<(const Halfspace& o) const { return std::tie(cls, side) < std::tie(o.cls, o.side); }
  bool operator==(const Halfspace& o) const { return cls == o.cls && side == o.side; }
};

// Bit q = 2*a + b set when side a of i meets side b of j on the interior.
inline int quadrant_mask(const HyperplaneSet& hs, int i, int j) {
  const auto& si = hs.classes[i].side;
  const auto& sj = hs.classes[j].side;
  int mask = 0;
  for (std::size_t x = 0; x < si.size(); ++x)
    if (si[x] >= 0 && sj[x] >= 0) mask |= 1 << (2 * si[x] + sj[x]);
  return mask;
}

// Facing: the halfspaces meet, their complements do not, and neither
// contains the other (all on interior vertices).
inline bool facing(int quadrants, int a, int b) {
  auto meets = [&](int x, int y) { return (quadrants >> (2 * x + y)) & 1; };
  return meets(a, b) && !meets(1 - a, 1 - b) && meets(a, 1 - b) && meets(1 - a, b);
}

inline std::vector<std::array<Halfspace, 3>> facing_triple_search(const HyperplaneSet& hs, std::size_t limit = 1000) {
  const int n = static_cast<int>(hs.classes.size());
  std::vector<std::vector<int>> q(n, std::vector<int>(n, 0));
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      q[i][j] = quadrant_mask(hs, i, j);
      q[j][i] = 0;
      for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
          if ((q[i][j] >> (2 * a + b)) & 1) q[j][i] |= 1 << (2 * b + a);
    }
  std::vector<std::array<Halfspace, 3>> out;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      if (q[i][j] == 15) continue;
      for (int k = j + 1; k < n; ++k) {
        if (q[i][k] == 15 || q[j][k] == 15) continue;
        for (int m = 0; m < 8; ++m) {
          int a = m & 1, b = (m >> 1) & 1, c = (m >> 2) & 1;
          if (facing(q[i][j], a, b) && facing(q[i][k], a, c) && facing(q[j][k], b, c)) {
            out.push_back({Halfspace{i, a}, Halfspace{j, b}, Halfspace{k, c}});
            if (out.size() >= limit) return out;
          }
        }
      }
    }
  return out;
}

inline std::vector<std::pair<int, int>> strongly_separated_pairs(const HyperplaneSet& hs) {
  std::vector<std::pair<int, int>> out;
  const int n = static_cast<int>(hs.classes.size());
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      if (hs.crosses(i, j)) continue;
      bool common = false;
      for (int k : hs.classes[i].crossing)
        if (hs.classes[j].crossing.count(k)) {
          common = true;
          break;
        }
      if (!common) out.push_back({i, j});
    }
  return out;
}

// ---------------------------------------------------------------- 3-subsets

struct ThreeVertexWitness {
  std::optional<Mask> subset;
  bool is_join = false;
};

inline ThreeVertexWitness three_vertex_witness(const SimpGraph& g) {
  ThreeVertexWitness w;
  w.is_join = g.is_join();
  const int n = g.size();
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      for (int c = b + 1; c < n; ++c) {
        int e = g.adjacent(a, b) + g.adjacent(a, c) + g.adjacent(b, c);
        if (e <= 1) {
          w.subset = bit(a) | bit(b) | bit(c);
          return w;
        }
      }
  return w;
}

// ---------------------------------------------------------------- links

struct LinkComplex {
  std::vector<int> vertices;  // incident edge ids
  std::set<std::vector<int>> simplices;  // sorted positions into `vertices`
  bool is_flag = false;
  std::size_t expected_simplices = 0;
};

inline bool link_clique_closure(std::size_t n, const std::vector<std::vector<char>>& adj,
                                const std::set<std::vector<int>>& simplices) {
  std::vector<int> cur;
  bool ok = true;
  auto rec = [&](auto&& self, int start) -> void {
    if (!ok) return;
    if (!cur.empty() && !simplices.count(cur)) {
      ok = false;
      return;
    }
    for (int x = start; x < static_cast<int>(n); ++x) {
      bool all = true;
      for (int y : cur)
        if (!adj[x][y]) {
          all = false;
          break;
        }
      if (!all) continue;
      cur.push_back(x);
      self(self, x + 1);
      cur.pop_back();
    }
  };
  rec(rec, 0);
  return ok;
}

inline LinkComplex link_complex(const ComplexBall& ball, int vertex) {
  const auto& u = ball.vertices.at(vertex);
  const SimpGraph& G = ball.graph();
  const auto& gp = *ball.group;
  // Algebraic simplex count: a simplex picks a set D of down-directions (one
  // coset of G_d each) and a clique U of up-directions compatible with σ.
  Mask up = 0;
  for (int v = 0; v < G.size(); ++v)
    if (!(u.clique & bit(v)) && G.is_clique(u.clique | bit(v))) up |= bit(v);
  std::size_t down_terms = 1;
  for (int d : mask_members(u.clique)) {
    const auto& Gd = gp.vertex_group(d);
    if (!Gd.finite()) throw Error(ErrorCode::unsupported, "link through an infinite vertex group is infinite");
    down_terms *= static_cast<std::size_t>(1 + Gd.size());
  }
  std::size_t up_cliques = 0;
  for (Mask c = up;; c = (c - 1) & up) {
    if (G.is_clique(u.clique | c)) ++up_cliques;
    if (c == 0) break;
  }
  LinkComplex lk;
  lk.expected_simplices = down_terms * up_cliques - 1;
  if (!ball.complete && u.depth > ball.interior_radius)
    throw Error(ErrorCode::boundary_vertex, "vertex lies outside the interior", "vertex " + std::to_string(vertex));

  lk.vertices = ball.incident[vertex];
  std::map<int, int> pos;
  for (std::size_t i = 0; i < lk.vertices.size(); ++i) pos[lk.vertices[i]] = static_cast<int>(i);
  for (int e : lk.vertices) lk.simplices.insert({pos[e]});
  for (int cid : ball.cube_at[vertex]) {
    const auto& cube = ball.cubes[cid];
    auto corners = ball.cube_corners(cube.base, cube.clique);
    std::set<int> corner_set(corners.begin(), corners.end());
    std::vector<int> simplex;
    for (int e : lk.vertices) {
      int other = ball.edges[e].a == vertex ? ball.edges[e].b : ball.edges[e].a;
      if (corner_set.count(other)) simplex.push_back(pos[e]);
    }
    std::sort(simplex.begin(), simplex.end());
    lk.simplices.insert(simplex);
  }
  if (lk.simplices.size() != lk.expected_simplices)
    throw Error(ErrorCode::boundary_vertex, "ball does not contain every cube at the vertex",
                "vertex " + std::to_string(vertex));
  const std::size_t n = lk.vertices.size();
  std::vector<std::vector<char>> adj(n, std::vector<char>(n, 0));
  for (const auto& s : lk.simplices)
    if (s.size() == 2) adj[s[0]][s[1]] = adj[s[1]][s[0]] = 1;
  lk.is_flag = link_clique_closure(n, adj, lk.simplices);
  return lk;
}

// Every cube at the vertex lies in the ball: its corners are within the size
// of the largest clique through the vertex's clique.
inline bool star_in_ball(const ComplexBall& ball, int vertex) {
  if (ball.complete) return true;
  const auto& u = ball.vertices.at(vertex);
  const SimpGraph& G = ball.graph();
  int widest = 0;
  for (Mask c : G.cliques())
    if ((c & u.clique) == u.clique) widest = std::max(widest, popcount(c));
  return u.depth + widest <= ball.radius;
}

// link(∅) as a family of vertex-label masks, to compare with the cliques of Γ.
inline std::set<Mask> link_label_sets(const ComplexBall& ball, int vertex, const LinkComplex& lk) {
  std::set<Mask> out;
  for (const auto& s : lk.simplices) {
    Mask m = 0;
    for (int p : s) m |= bit(ball.edges[lk.vertices[p]].vlabel);
    out.insert(m);
  }
  (void)vertex;
  return out;
}

// ---------------------------------------------------------------- metric checks

inline std::vector<int> bfs_distances(const std::vector<std::vector<int>>& adj, int src) {
  std::vector<int> d(adj.size(), -1);
  std::deque<int> q{src};
  d[src] = 0;
  while (!q.empty()) {
    int x = q.front();
    q.pop_front();
    for (int y : adj[x])
      if (d[y] < 0) {
        d[y] = d[x] + 1;
        q.push_back(y);
      }
  }
  return d;
}

// ρ such that intervals between vertices of depth <= ρ are computed exactly.
inline int median_guard(const ComplexBall& ball) { return ball.complete ? ball.radius : ball.radius / 2; }

// Vertices of the interval intersection I(a,b) ∩ I(b,c) ∩ I(a,c).
inline std::vector<int> medians(const std::vector<int>& da, const std::vector<int>& db, const std::vector<int>& dc,
                                int b, int c) {
  std::vector<int> out;
  for (std::size_t x = 0; x < da.size(); ++x) {
    if (da[x] < 0 || db[x] < 0 || dc[x] < 0) continue;
    if (da[x] + db[x] == da[b] && db[x] + dc[x] == db[c] && da[x] + dc[x] == da[c]) out.push_back(static_cast<int>(x));
  }
  return out;
}

struct ConvexityReport {
  std::size_t sub_vertices = 0;
  bool embedded = true;          // every label found, with equal depth
  bool edges_preserved = true;
  bool convex = true;            // intervals between guarded images stay in the image
  std::size_t pairs_checked = 0;
};

// X_{Γ_S} inside X_Γ: compares a ball of the sub-complex with the big ball.
inline ConvexityReport convex_embedding_check(const ComplexBall& big, Mask s) {
  const auto& gp = *big.group;
  const SimpGraph& G = gp.graph();
  std::vector<int> members = mask_members(s);
  std::vector<BasicGroup> groups;
  for (int v : members) groups.push_back(gp.vertex_group(v));
  auto sub = std::make_shared<const GraphProductGroup>(G.induced(s), groups);
  auto small = build_x_gamma_ball(sub, big.radius, default_cap(), big.integer_window);
  ConvexityReport rep;
  rep.sub_vertices = small.size();
  auto lift_mask = [&](Mask m) {
    Mask out = 0;
    for (int v : mask_members(m)) out |= bit(members[v]);
    return out;
  };
  std::vector<int> image(small.size(), -1);
  std::vector<char> in_image(big.size(), 0);
  for (std::size_t i = 0; i < small.size(); ++i) {
    std::vector<GraphProductGroup::Syllable> w;
    for (auto syl : GraphProductGroup::syllables(small.vertices[i].rep)) w.push_back({members[syl.v], syl.x});
    auto id = big.find(gp.normal_form(w), lift_mask(small.vertices[i].clique));
    if (!id || big.vertices[*id].depth != small.vertices[i].depth) {
      rep.embedded = false;
      continue;
    }
    image[i] = *id;
    in_image[*id] = 1;
  }
  for (const auto& e : small.edges)
    if (image[e.a] < 0 || image[e.b] < 0 || !big.find_edge(image[e.a], image[e.b])) rep.edges_preserved = false;
  if (!rep.embedded) return rep;
  const int guard = median_guard(big);
  auto adj = big.adjacency();
  std::vector<int> guarded;
  for (int x : image)
    if (big.vertices[x].depth <= guard) guarded.push_back(x);
  for (std::size_t i = 0; i < guarded.size() && rep.convex; ++i) {
    auto da = bfs_distances(adj, guarded[i]);
    for (std::size_t j = i + 1; j < guarded.size() && rep.convex; ++j) {
      auto db = bfs_distances(adj, guarded[j]);
      const int d = da[guarded[j]];
      for (std::size_t x = 0; x < big.size(); ++x)
        if (da[x] >= 0 && db[x] >= 0 && da[x] + db[x] == d && !in_image[x]) {
          rep.convex = false;
          break;
        }
      ++rep.pairs_checked;
    }
  }
  return rep;
}

// ---------------------------------------------------------------- export

inline nlohmann::json ball_to_json(const ComplexBall& ball, const HyperplaneSet* hs = nullptr) {
  const auto& gp = *ball.group;
  const SimpGraph& G = gp.graph();
  auto clique_json = [&](Mask m) {
    nlohmann::json c = nlohmann::json::array();
    for (int v : mask_members(m)) c.push_back(G.name(v));
    return c;
  };
  nlohmann::json j;
  j["schema"] = "inam.complex/1";
  j["radius"] = ball.radius;
  j["interior_radius"] = ball.interior_radius;
  j["complete"] = ball.complete;
  j["truncated"] = ball.truncated;
  j["vertices"] = nlohmann::json::array();
  for (std::size_t i = 0; i < ball.vertices.size(); ++i) {
    const auto& v = ball.vertices[i];
    j["vertices"].push_back({{"id", i}, {"rep", gp.elt_to_json(v.rep)}, {"clique", clique_json(v.clique)},
                             {"depth", v.depth}});
  }
  j["edges"] = nlohmann::json::array();
  for (std::size_t i = 0; i < ball.edges.size(); ++i) {
    const auto& e = ball.edges[i];
    nlohmann::json h = nullptr;
    if (hs && hs->edge_class[i] >= 0) h = hs->edge_class[i];
    j["edges"].push_back({{"a", e.a}, {"b", e.b}, {"vlabel", G.name(e.vlabel)}, {"hyperplane", h}});
  }
  j["cubes"] = nlohmann::json::array();
  for (const auto& c : ball.cubes)
    j["cubes"].push_back({{"base", c.base}, {"clique", clique_json(c.clique)}, {"dim", popcount(c.clique)}});
  return j;
}

inline std::string ball_to_dot(const ComplexBall& ball, const HyperplaneSet* hs = nullptr) {
  static const char* palette[] = {"red", "blue", "darkgreen", "orange", "purple", "brown", "cyan", "magenta"};
  const auto& gp = *ball.group;
  const SimpGraph& G = gp.graph();
  std::ostringstream os;
  os << "graph complex {\n";
  for (std::size_t i = 0; i < ball.vertices.size(); ++i) {
    const auto& v = ball.vertices[i];
    std::string c;
    for (int m : mask_members(v.clique)) c += (c.empty() ? "" : ",") + G.name(m);
    os << "  v" << i << " [label=" << dot_quote(gp.to_string(v.rep) + " G{" + c + "}") << "];\n";
  }
  for (std::size_t i = 0; i < ball.edges.size(); ++i) {
    const auto& e = ball.edges[i];
    os << "  v" << e.a << " -- v" << e.b << " [label=" << dot_quote(G.name(e.vlabel));
    if (hs && hs->edge_class[i] >= 0) os << ", color=" << palette[hs->edge_class[i] % 8];
    os << "];\n";
  }
  os << "}\n";
  return os.str();
}

struct ComplexStats {
  std::size_t vertices = 0;
  std::size_t edges = 0;
  std::size_t squares = 0;
  std::size_t cubes = 0;  // all cubes of dimension >= 2
  std::size_t hyperplanes = 0;
  int dimension = 0;
};

inline ComplexStats complex_stats(const ComplexBall& ball, const HyperplaneSet* hs = nullptr) {
  ComplexStats s;
  s.vertices = ball.vertices.size();
  s.edges = ball.edges.size();
  s.squares = ball.cube_count(2);
  s.cubes = ball.cubes.size();
  s.hyperplanes = hs ? hs->classes.size() : 0;
  s.dimension = ball.dimension();
  return s;
}

inline nlohmann::json stats_to_json(const ComplexStats& s) {
  return {{"vertices", s.vertices}, {"edges", s.edges},           {"squares", s.squares},
          {"cubes", s.cubes},       {"hyperplanes", s.hyperplanes}, {"dimension", s.dimension}};
}

}  // namespace inam

#endif  // INAM_CUBE_COMPLEX_HPP_
