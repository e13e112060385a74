#include <gtest/gtest.h>

#include <map>
#include <random>
#include <set>

#include "inam/catalog.hpp"
#include "inam/cube_complex.hpp"
#include "test_util.hpp"

using namespace inam;

namespace {

SimpGraph named(std::vector<std::string> names, std::vector<std::pair<int, int>> edges) {
  SimpGraph g(std::move(names));
  for (auto [a, b] : edges) g.add_edge(a, b);
  return g;
}

GraphProductCtx product(const SimpGraph& g, std::vector<std::int64_t> orders) {
  return catalog::cyclic_graph_product(g, orders);
}

// Σ_σ |G|/|G_σ| for a complete graph with cyclic vertex groups.
std::size_t coset_count(const SimpGraph& g, const std::vector<std::int64_t>& orders) {
  std::size_t total = 0;
  for (Mask c : g.cliques()) {
    std::size_t idx = 1;
    for (int v = 0; v < g.size(); ++v)
      if (!(c & bit(v))) idx *= orders[v];
    total += idx;
  }
  return total;
}

std::map<Mask, std::set<std::size_t>> degrees_by_clique(const ComplexBall& b) {
  std::map<Mask, std::set<std::size_t>> out;
  for (std::size_t i = 0; i < b.size(); ++i)
    if (b.vertices[i].depth <= b.interior_radius) out[b.vertices[i].clique].insert(b.incident[i].size());
  return out;
}

SimpGraph random_graph(int n, std::mt19937_64& rng) {
  SimpGraph g(n);
  std::bernoulli_distribution coin(0.5);
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      if (coin(rng)) g.add_edge(a, b);
  return g;
}

std::vector<std::int64_t> random_orders(int n, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> d(2, 3);
  std::vector<std::int64_t> o;
  for (int i = 0; i < n; ++i) o.push_back(d(rng));
  return o;
}

}  // namespace

// ---------------------------------------------------------------- CΓ

TEST(BuildCGamma, SingleVertexIsOneEdge) {
  auto c = build_c_gamma(SimpGraph(1));
  EXPECT_EQ(c.size(), 2u);
  EXPECT_EQ(c.edges.size(), 1u);
  EXPECT_TRUE(c.cubes.empty());
}

TEST(BuildCGamma, EdgeGraphIsOneSquare) {
  auto c = build_c_gamma(named({"v", "w"}, {{0, 1}}));
  EXPECT_EQ(c.size(), 4u);
  EXPECT_EQ(c.edges.size(), 4u);
  ASSERT_EQ(c.cube_count(2), 1u);
  std::set<int> corners;
  for (int x : c.cube_corners(c.cubes[0].base, c.cubes[0].clique)) corners.insert(x);
  EXPECT_EQ(corners.size(), 4u);
}

TEST(BuildCGamma, TriangleIsThreeCube) {
  auto g = named({"a", "b", "c"}, {{0, 1}, {1, 2}, {0, 2}});
  auto c = build_c_gamma(g);
  EXPECT_EQ(c.size(), 8u);
  EXPECT_EQ(c.cube_count(3), 1u);
  EXPECT_EQ(c.cube_count(2), 6u);
  EXPECT_EQ(c.edges.size(), 12u);
}

TEST(BuildCGamma, VertexCountMatchesCliqueEnumeration) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 30; ++trial) {
    auto g = random_graph(2 + trial % 5, rng);
    auto c = build_c_gamma(g);
    std::size_t cliques = 0;
    for (Mask m = 0; m <= g.all(); ++m) cliques += g.is_clique(m);
    EXPECT_EQ(c.size(), cliques);
    // One cube per pair (σ, C) with σ ∪ C a clique and σ ∩ C = ∅.
    std::size_t pairs = 0;
    for (Mask s = 0; s <= g.all(); ++s)
      for (Mask t = 0; t <= g.all(); ++t)
        if (!(s & t) && popcount(t) >= 2 && g.is_clique(s | t)) ++pairs;
    EXPECT_EQ(c.cubes.size(), pairs);
  }
}

// ---------------------------------------------------------------- X_Γ balls

TEST(BuildXGammaBall, FiveStar) {
  auto b = build_x_gamma_ball(product(SimpGraph(1), {5}), 2);
  EXPECT_EQ(b.size(), 6u);
  EXPECT_EQ(b.edges.size(), 5u);
  auto center = b.find({}, bit(0));
  ASSERT_TRUE(center);
  EXPECT_EQ(b.incident[*center].size(), 5u);
  EXPECT_TRUE(b.complete);
}

TEST(BuildXGammaBall, CompletenessNeedsClosedBoundary) {
  EXPECT_FALSE(build_x_gamma_ball(catalog::z2_times_z3(), 2).complete);
  EXPECT_FALSE(build_x_gamma_ball(catalog::z2_times_z3(), 3).complete);
  EXPECT_TRUE(build_x_gamma_ball(catalog::z2_times_z3(), 4).complete);
  EXPECT_FALSE(build_x_gamma_ball(catalog::z2_free_z3(), 6).complete);
}

TEST(BuildXGammaBall, RadiusZeroIsSingleVertex) {
  auto b = build_x_gamma_ball(catalog::z2_free_z3(), 0);
  EXPECT_EQ(b.size(), 1u);
  EXPECT_TRUE(b.edges.empty());
}

TEST(BuildXGammaBall, ZTwoTimesZThreeSaturates) {
  auto b = build_x_gamma_ball(catalog::z2_times_z3(), 6);
  EXPECT_EQ(b.size(), 12u);
  EXPECT_EQ(b.cube_count(2), 6u);
  EXPECT_TRUE(b.complete);
  // One square per G_∅-coset.
  std::size_t empty_cosets = 0;
  for (const auto& v : b.vertices) empty_cosets += v.clique == 0;
  EXPECT_EQ(empty_cosets, 6u);
}

TEST(BuildXGammaBall, FreeProductThreeFourIsBiregularTree) {
  auto b = build_x_gamma_ball(product(SimpGraph(2), {3, 4}), 6);
  EXPECT_EQ(b.edges.size() + 1, b.size());
  auto deg = degrees_by_clique(b);
  EXPECT_EQ(deg[bit(0)], (std::set<std::size_t>{3}));
  EXPECT_EQ(deg[bit(1)], (std::set<std::size_t>{4}));
  EXPECT_EQ(deg[0], (std::set<std::size_t>{2}));
  EXPECT_TRUE(b.cubes.empty());
}

TEST(BuildXGammaBall, SquareStripDegrees) {
  // Z/2 ∗ (Z/2 × Z/2): v–v' adjacent, v'' isolated.
  auto g = named({"v", "v'", "v''"}, {{0, 1}});
  auto b = build_x_gamma_ball(product(g, {2, 2, 2}), 6);
  auto deg = degrees_by_clique(b);
  EXPECT_EQ(deg[0], (std::set<std::size_t>{3}));
  EXPECT_EQ(deg[bit(0)], (std::set<std::size_t>{3}));
  EXPECT_EQ(deg[bit(1)], (std::set<std::size_t>{3}));
  EXPECT_EQ(deg[bit(2)], (std::set<std::size_t>{2}));
  EXPECT_EQ(deg[bit(0) | bit(1)], (std::set<std::size_t>{4}));
  EXPECT_GT(b.cube_count(2), 0u);
  EXPECT_EQ(b.dimension(), 2);
}

TEST(BuildXGammaBall, CapExceeded) {
  EXPECT_THROW(build_x_gamma_ball(catalog::z2_free_z3(), 20, 50), Error);
  try {
    build_x_gamma_ball(catalog::z2_free_z3(), 20, 50);
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::cap_exceeded);
  }
}

TEST(BuildXGammaBall, IntegerVertexGroupsAreTruncated) {
  auto b = build_x_gamma_ball(catalog::free_group2(), 3);
  EXPECT_TRUE(b.truncated);
  EXPECT_FALSE(b.complete);
  auto center = b.find({}, bit(0));
  ASSERT_TRUE(center);
  EXPECT_EQ(b.incident[*center].size(), 5u);  // window -2..2
}

TEST(BuildXGammaBall, SaturationMatchesCosetCount) {
  std::mt19937_64 rng(5);
  for (int n = 1; n <= 4; ++n) {
    SimpGraph g(n);
    for (int a = 0; a < n; ++a)
      for (int c = a + 1; c < n; ++c) g.add_edge(a, c);
    auto orders = random_orders(n, rng);
    auto b = build_x_gamma_ball(product(g, orders), 2 * n + 2);
    EXPECT_EQ(b.size(), coset_count(g, orders));
    EXPECT_TRUE(b.complete);
  }
}

TEST(BuildXGammaBall, EdgesAndCubesFollowCliqueRules) {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 20; ++trial) {
    int n = 1 + trial % 4;
    auto g = random_graph(n, rng);
    auto gp = product(g, random_orders(n, rng));
    auto b = build_x_gamma_ball(gp, 4);
    for (const auto& e : b.edges) {
      const auto& lo = b.vertices[e.a];
      const auto& hi = b.vertices[e.b];
      EXPECT_EQ(lo.clique ^ hi.clique, bit(e.vlabel));
      EXPECT_EQ(lo.clique | bit(e.vlabel), hi.clique);
      EXPECT_TRUE(gp->in_subgroup(e.witness, hi.clique));
      EXPECT_EQ(gp->strip_suffix(lo.rep, hi.clique), hi.rep);
    }
    for (const auto& c : b.cubes) {
      EXPECT_TRUE(g.is_clique(b.vertices[c.base].clique | c.clique));
      auto corners = b.cube_corners(c.base, c.clique);
      std::set<Mask> cliques;
      for (int x : corners) cliques.insert(b.vertices[x].clique);
      EXPECT_EQ(cliques.size(), std::size_t{1} << popcount(c.clique));
    }
  }
}

TEST(VertexStabilizer, BaseAndVertexGroups) {
  auto gp = catalog::z2_free_z3();
  auto b = build_x_gamma_ball(gp, 4);
  auto s0 = vertex_stabilizer(b, 0);
  for (const auto& g : ball(*gp, 3).elements) EXPECT_EQ(s0.contains(g), gp->is_identity(g));
  auto v = *b.find({}, bit(1));
  auto sv = vertex_stabilizer(b, v);
  for (const auto& g : ball(*gp, 3).elements) EXPECT_EQ(sv.contains(g), gp->in_subgroup(g, bit(1)));
}

TEST(VertexStabilizer, MatchesActionOnBall) {
  auto g = named({"v", "w", "u"}, {{0, 1}});
  auto gp = product(g, {2, 3, 2});
  auto b = build_x_gamma_ball(gp, 5);
  auto elems = ball(*gp, 3).elements;
  int checked = 0;
  for (std::size_t i = 0; i < b.size(); ++i) {
    if (b.vertices[i].depth > 2) continue;
    auto st = vertex_stabilizer(b, static_cast<int>(i));
    for (const auto& x : elems) {
      bool fixes = act_on_coset(*gp, x, b.vertices[i]) == std::make_pair(b.vertices[i].rep, b.vertices[i].clique);
      EXPECT_EQ(st.contains(x), fixes);
      ++checked;
    }
  }
  EXPECT_GT(checked, 100);
}

// ---------------------------------------------------------------- links

TEST(LinkComplex, BaseLinkIsFlagComplexOfGamma) {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 25; ++trial) {
    int n = 1 + trial % 5;
    auto g = random_graph(n, rng);
    auto b = build_x_gamma_ball(product(g, random_orders(n, rng)), n + 1);
    auto lk = link_complex(b, 0);
    EXPECT_TRUE(lk.is_flag);
    std::set<Mask> expect;
    for (Mask c : g.cliques())
      if (c) expect.insert(c);
    EXPECT_EQ(link_label_sets(b, 0, lk), expect);
  }
}

TEST(LinkComplex, LeafLinkIsPoint) {
  auto b = build_x_gamma_ball(product(SimpGraph(1), {5}), 2);
  auto lk = link_complex(b, 0);
  EXPECT_EQ(lk.vertices.size(), 1u);
  EXPECT_EQ(lk.simplices.size(), 1u);
  EXPECT_TRUE(lk.is_flag);
}

TEST(LinkComplex, CentralVertexOfSquareComplex) {
  auto b = build_x_gamma_ball(catalog::z2_times_z3(), 6);
  auto top = *b.find({}, bit(0) | bit(1));
  auto lk = link_complex(b, top);
  EXPECT_TRUE(lk.is_flag);
  EXPECT_EQ(lk.vertices.size(), 5u);
  std::size_t link_edges = 0;
  for (const auto& s : lk.simplices) link_edges += s.size() == 2;
  // Count squares at the vertex directly.
  std::size_t squares_here = 0;
  for (const auto& c : b.cubes) {
    auto corners = b.cube_corners(c.base, c.clique);
    squares_here += std::count(corners.begin(), corners.end(), top);
  }
  EXPECT_EQ(link_edges, squares_here);
  EXPECT_EQ(link_edges, 6u);
}

TEST(LinkComplex, BoundaryVertexRejected) {
  auto b = build_x_gamma_ball(catalog::z2_free_z3(), 3);
  int far = -1;
  for (std::size_t i = 0; i < b.size(); ++i)
    if (b.vertices[i].depth == 3) far = static_cast<int>(i);
  ASSERT_GE(far, 0);
  try {
    link_complex(b, far);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::boundary_vertex);
  }
}

TEST(LinkComplex, NonFlagComplexDetected) {
  // Hollow triangle of simplices: three pairwise edges without the 2-simplex.
  std::set<std::vector<int>> s{{0}, {1}, {2}, {0, 1}, {1, 2}, {0, 2}};
  std::vector<std::vector<char>> adj(3, std::vector<char>(3, 1));
  EXPECT_FALSE(link_clique_closure(3, adj, s));
  s.insert({0, 1, 2});
  EXPECT_TRUE(link_clique_closure(3, adj, s));
}

TEST(LinkComplex, EveryStarCompleteVertexIsFlag) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 12; ++trial) {
    int n = 2 + trial % 3;
    auto g = random_graph(n, rng);
    auto b = build_x_gamma_ball(product(g, random_orders(n, rng)), 4);
    for (std::size_t i = 0; i < b.size(); ++i)
      if (star_in_ball(b, static_cast<int>(i))) {
        EXPECT_TRUE(link_complex(b, static_cast<int>(i)).is_flag);
      }
  }
}

// ---------------------------------------------------------------- hyperplanes

TEST(Hyperplanes, SingleEdgeHasOneClass) {
  auto hs = hyperplane_classes(build_c_gamma(SimpGraph(1)));
  EXPECT_EQ(hs.classes.size(), 1u);
  EXPECT_EQ(hs.classes[0].components, 2);
}

TEST(Hyperplanes, SquareHasTwoCrossingClasses) {
  auto hs = hyperplane_classes(build_c_gamma(named({"v", "w"}, {{0, 1}})));
  ASSERT_EQ(hs.classes.size(), 2u);
  EXPECT_TRUE(hs.crosses(0, 1));
  EXPECT_TRUE(facing_triple_search(hs).empty());
  EXPECT_TRUE(strongly_separated_pairs(hs).empty());
}

TEST(Hyperplanes, ProductComplexCrossingMatchesLabels) {
  auto b = build_x_gamma_ball(catalog::z2_times_z3(), 6);
  auto hs = hyperplane_classes(b);
  std::map<int, int> per_label;
  for (const auto& h : hs.classes) ++per_label[h.vlabel];
  EXPECT_EQ(per_label[0], 2);  // one per element of G_v
  EXPECT_EQ(per_label[1], 3);
  for (const auto& h : hs.classes)
    for (const auto& k : hs.classes)
      if (h.id != k.id) {
        EXPECT_EQ(hs.crosses(h.id, k.id), h.vlabel != k.vlabel);
      }
  EXPECT_TRUE(strongly_separated_pairs(hs).empty());
}

TEST(Hyperplanes, EveryInteriorClassSplitsInTwo) {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 20; ++trial) {
    int n = 1 + trial % 4;
    auto g = random_graph(n, rng);
    auto hs = hyperplane_classes(build_x_gamma_ball(product(g, random_orders(n, rng)), 4));
    for (const auto& h : hs.classes) EXPECT_EQ(h.components, 2);
  }
}

TEST(Hyperplanes, BaseCrossingEqualsEdgeSet) {
  for (int n = 1; n <= 4; ++n)
    for (const auto& g : nonisomorphic_graphs(n)) {
      auto b = build_x_gamma_ball(product(g, std::vector<std::int64_t>(n, 3)), 4);
      auto hs = hyperplane_classes(b);
      for (int v = 0; v < n; ++v)
        for (int w = v + 1; w < n; ++w) {
          auto hv = hs.base_class(b, v), hw = hs.base_class(b, w);
          ASSERT_TRUE(hv && hw);
          EXPECT_EQ(hs.crosses(*hv, *hw), g.adjacent(v, w));
        }
      for (const auto& h : hs.classes)
        for (int k : h.crossing) EXPECT_TRUE(g.adjacent(h.vlabel, hs.classes[k].vlabel));
    }
}

TEST(Hyperplanes, TreeCrossingGraphIsEdgeless) {
  auto hs = hyperplane_classes(build_x_gamma_ball(catalog::z2_free_z3(), 5));
  for (const auto& nb : crossing_graph(hs)) EXPECT_TRUE(nb.empty());
  const std::size_t n = hs.classes.size();
  EXPECT_EQ(strongly_separated_pairs(hs).size(), n * (n - 1) / 2);
}

TEST(Hyperplanes, StronglySeparatedFreeVersusDirect) {
  EXPECT_FALSE(strongly_separated_pairs(hyperplane_classes(build_x_gamma_ball(catalog::z2_free_z3(), 5))).empty());
  EXPECT_TRUE(strongly_separated_pairs(hyperplane_classes(build_x_gamma_ball(catalog::z2_times_z3(), 6))).empty());
}

// Direct check of a triple on interior vertex sets.
bool is_facing_triple(const HyperplaneSet& hs, const std::array<Halfspace, 3>& t) {
  auto in = [&](const Halfspace& h, std::size_t x) { return hs.classes[h.cls].side[x] == h.side; };
  auto out = [&](const Halfspace& h, std::size_t x) { return hs.classes[h.cls].side[x] == 1 - h.side; };
  const std::size_t nv = hs.classes[0].side.size();
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j) {
      bool meet = false, co_meet = false, i_not_j = false, j_not_i = false;
      for (std::size_t x = 0; x < nv; ++x) {
        meet |= in(t[i], x) && in(t[j], x);
        co_meet |= out(t[i], x) && out(t[j], x);
        i_not_j |= in(t[i], x) && out(t[j], x);
        j_not_i |= out(t[i], x) && in(t[j], x);
      }
      if (!meet || co_meet || !i_not_j || !j_not_i) return false;
    }
  return true;
}

TEST(FacingTriples, TrivalentTree) {
  auto hs = hyperplane_classes(build_x_gamma_ball(product(SimpGraph(2), {3, 3}), 3));
  auto triples = facing_triple_search(hs);
  ASSERT_FALSE(triples.empty());
  for (const auto& t : triples) EXPECT_TRUE(is_facing_triple(hs, t));
}

TEST(FacingTriples, SquareStripComplex) {
  auto g = named({"v", "v'", "v''"}, {{0, 1}});
  auto hs = hyperplane_classes(build_x_gamma_ball(product(g, {2, 2, 2}), 5));
  auto triples = facing_triple_search(hs);
  ASSERT_FALSE(triples.empty());
  for (const auto& t : triples) EXPECT_TRUE(is_facing_triple(hs, t));
}

TEST(FacingTriples, PathComplexHasNone) {
  // D∞ acts on a line: no three halfspaces face each other.
  auto hs = hyperplane_classes(build_x_gamma_ball(catalog::infinite_dihedral(), 6));
  EXPECT_TRUE(facing_triple_search(hs).empty());
}

// ---------------------------------------------------------------- joins

TEST(JoinDecomposition, Examples) {
  EXPECT_EQ(join_decomposition(SimpGraph(2)).size(), 1u);
  SimpGraph k4(4);
  for (int a = 0; a < 4; ++a)
    for (int b = a + 1; b < 4; ++b) k4.add_edge(a, b);
  EXPECT_EQ(join_decomposition(k4).size(), 4u);
  auto path = named({"a", "b", "c"}, {{0, 1}, {1, 2}});
  auto f = join_decomposition(path);
  std::set<Mask> parts(f.begin(), f.end());
  EXPECT_EQ(parts, (std::set<Mask>{bit(1), bit(0) | bit(2)}));
}

TEST(Irreducibility, TreeHasNoProductSignature) {
  auto b = build_x_gamma_ball(product(SimpGraph(2), {2, 3}), 4);
  auto r = irreducibility_check(b, hyperplane_classes(b));
  EXPECT_FALSE(r.product_signature);
  EXPECT_TRUE(r.agrees);
}

TEST(Irreducibility, EdgeHasTwoBlocks) {
  auto b = build_x_gamma_ball(catalog::z2_times_z3(), 4);
  auto r = irreducibility_check(b, hyperplane_classes(b));
  EXPECT_TRUE(r.product_signature);
  EXPECT_EQ(r.blocks.size(), 2u);
  EXPECT_TRUE(r.agrees);
}

TEST(Irreducibility, InsufficientInterior) {
  auto b = build_x_gamma_ball(catalog::z2_free_z3(), 2);
  try {
    irreducibility_check(b, hyperplane_classes(b));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::insufficient_interior);
  }
}

TEST(Irreducibility, EquivalenceOnSmallGraphs) {
  for (int n = 1; n <= 4; ++n)
    for (const auto& g : nonisomorphic_graphs(n)) {
      auto b = build_x_gamma_ball(product(g, std::vector<std::int64_t>(n, 2)), 4);
      auto r = irreducibility_check(b, hyperplane_classes(b));
      EXPECT_TRUE(r.agrees) << g.to_json().dump();
      EXPECT_GT(r.core_classes, static_cast<std::size_t>(n));
    }
}

// ---------------------------------------------------------------- 3-subsets

TEST(ThreeVertexWitness, Examples) {
  auto path = named({"a", "b", "c"}, {{0, 1}, {1, 2}});
  auto w = three_vertex_witness(path);
  EXPECT_TRUE(w.is_join);
  EXPECT_FALSE(w.subset);
  SimpGraph c4(4);
  for (int i = 0; i < 4; ++i) c4.add_edge(i, (i + 1) % 4);
  EXPECT_TRUE(three_vertex_witness(c4).is_join);
  SimpGraph c5(5);
  for (int i = 0; i < 5; ++i) c5.add_edge(i, (i + 1) % 5);
  auto w5 = three_vertex_witness(c5);
  EXPECT_FALSE(w5.is_join);
  ASSERT_TRUE(w5.subset);
  EXPECT_LE(c5.induced(*w5.subset).edge_count(), 1);
  EXPECT_EQ(*w5.subset, bit(0) | bit(1) | bit(3));
}

TEST(ThreeVertexWitness, ExistsForNonJoins) {
  for (int n = 3; n <= 6; ++n)
    for (const auto& g : all_labeled_graphs(n)) {
      auto w = three_vertex_witness(g);
      if (w.is_join) continue;
      ASSERT_TRUE(w.subset) << g.to_json().dump();
      EXPECT_EQ(popcount(*w.subset), 3);
      EXPECT_LE(g.induced(*w.subset).edge_count(), 1);
    }
}

// ---------------------------------------------------------------- metric

TEST(MedianProperty, UniqueMedians) {
  std::mt19937_64 rng(99);
  std::vector<std::pair<SimpGraph, std::vector<std::int64_t>>> cases = {
      {named({"v", "v'", "v''"}, {{0, 1}}), {2, 2, 2}},
      {named({"a", "b", "c"}, {{0, 1}, {1, 2}}), {2, 3, 2}},
      {SimpGraph(2), {2, 3}},
  };
  for (auto& [g, orders] : cases) {
    auto b = build_x_gamma_ball(product(g, orders), 6);
    auto adj = b.adjacency();
    std::vector<int> guarded;
    for (std::size_t i = 0; i < b.size(); ++i)
      if (b.vertices[i].depth <= median_guard(b)) guarded.push_back(static_cast<int>(i));
    std::uniform_int_distribution<std::size_t> pick(0, guarded.size() - 1);
    for (int t = 0; t < 100; ++t) {
      int x = guarded[pick(rng)], y = guarded[pick(rng)], z = guarded[pick(rng)];
      auto m = medians(bfs_distances(adj, x), bfs_distances(adj, y), bfs_distances(adj, z), y, z);
      EXPECT_EQ(m.size(), 1u);
    }
  }
}

TEST(ConvexEmbedding, SubgraphComplexesAreConvex) {
  auto g = named({"a", "b", "c", "d"}, {{0, 1}, {1, 2}, {2, 3}});
  auto b = build_x_gamma_ball(product(g, {2, 3, 2, 2}), 4);
  for (Mask s = 1; s <= g.all(); ++s) {
    auto r = convex_embedding_check(b, s);
    EXPECT_TRUE(r.embedded);
    EXPECT_TRUE(r.edges_preserved);
    EXPECT_TRUE(r.convex);
  }
}

// ---------------------------------------------------------------- export

TEST(Export, JsonAndDot) {
  auto b = build_x_gamma_ball(catalog::z2_times_z3(), 6);
  auto hs = hyperplane_classes(b);
  auto j = ball_to_json(b, &hs);
  EXPECT_EQ(j["vertices"].size(), 12u);
  EXPECT_EQ(j["edges"].size(), b.edges.size());
  EXPECT_EQ(j["cubes"].size(), 6u);
  EXPECT_EQ(j["interior_radius"], b.interior_radius);
  auto dot = ball_to_dot(b, &hs);
  EXPECT_NE(dot.find("graph complex"), std::string::npos);
  auto st = complex_stats(b, &hs);
  EXPECT_EQ(st.vertices, 12u);
  EXPECT_EQ(st.squares, 6u);
  EXPECT_EQ(st.hyperplanes, 5u);
}
