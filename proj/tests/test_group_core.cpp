#include <gtest/gtest.h>

#include <map>
#include <random>

#include "inam/catalog.hpp"
#include "inam/spec_json.hpp"
#include "test_util.hpp"

using namespace inam;
using nlohmann::json;

namespace {

// Stack reducer for words in a free product of cyclic groups.
std::vector<std::pair<int, std::int64_t>> free_reduce(const std::vector<std::pair<int, std::int64_t>>& w,
                                                      const std::vector<std::int64_t>& orders) {
  std::vector<std::pair<int, std::int64_t>> st;
  for (auto [v, x] : w) {
    x %= orders[v];
    if (x == 0) continue;
    if (!st.empty() && st.back().first == v) {
      st.back().second = (st.back().second + x) % orders[v];
      if (st.back().second == 0) st.pop_back();
    } else {
      st.emplace_back(v, x);
    }
  }
  return st;
}

Elt syl(const GraphProductGroup& g, int v, std::int64_t x) { return g.canonicalize({Letter{v, x, 0}}); }

}  // namespace

TEST(ParseGroupSpec, CyclicHasFiveElements) {
  auto g = parse_group_spec(json{{"kind", "cyclic"}, {"order", 5}});
  EXPECT_EQ(g->order().value(), 5u);
  EXPECT_EQ(ball(*g, 10).size(), 5u);
}

TEST(ParseGroupSpec, TwoIsolatedVerticesGiveFreeProduct) {
  auto j = json::parse(R"({"kind":"graph_product","graph":{"vertices":["a","b"],"edges":[]},
    "vertex_groups":{"a":{"kind":"cyclic","order":2},"b":{"kind":"cyclic","order":3}}})");
  auto g = parse_group_spec(j);
  EXPECT_EQ(g->kind(), "graph_product");
  EXPECT_FALSE(g->order().has_value());
  auto ab = g->element_from_json(json::parse(R"([["a",1],["b",1]])"));
  EXPECT_EQ(GraphProductGroup::syllable_length(g->power(ab, 3)), 6u);
}

TEST(ParseGroupSpec, NonLatinRowIsNonGroupTable) {
  auto j = json::parse(R"({"kind":"table","elements":["e","x"],"mul":[[0,1],[1,1]]})");
  try {
    parse_group_spec(j);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::non_group_table);
    EXPECT_FALSE(e.where().empty());
  }
}

TEST(ParseGroupSpec, NonAssociativeTable) {
  // A Latin square with identity 0 that is not associative (order 5 loop).
  auto j = json::parse(R"({"kind":"table","mul":[[0,1,2,3,4],[1,0,3,4,2],[2,4,0,1,3],[3,2,4,0,1],[4,3,1,2,0]]})");
  try {
    parse_group_spec(j);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::non_associative);
  }
}

TEST(ParseGroupSpec, HnnErrorsCarryLocation) {
  auto base = json::parse(R"({"kind":"hnn","K":{"kind":"cyclic","order":4},"H":[0,1],"phi":[0,1]})");
  try {
    parse_group_spec(base);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::not_closed);
    EXPECT_NE(e.where().find("H"), std::string::npos);
  }
  auto noninj = json::parse(R"({"kind":"hnn","K":{"kind":"cyclic","order":4},"H":[0,2],"phi":[0,0]})");
  try {
    parse_group_spec(noninj);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::non_injective);
  }
}

TEST(ParseGroupSpec, SchemaViolations) {
  EXPECT_THROW(parse_group_spec(json{{"kind", "cyclic"}}), Error);
  EXPECT_THROW(parse_group_spec(json{{"kind", "nope"}}), Error);
  EXPECT_THROW(parse_group_spec_text("{not json"), Error);
  auto j = json::parse(R"({"kind":"graph_product","graph":{"vertices":["a"],"edges":[["a","a"]]},
    "vertex_groups":{"a":{"kind":"cyclic","order":2}}})");
  EXPECT_THROW(parse_group_spec(j), Error);
}

TEST(Canonicalize, EmptyWordIsIdentity) {
  auto g = catalog::z2_free_z3();
  EXPECT_EQ(g->canonicalize({}), g->identity());
}

TEST(Canonicalize, DirectProductWordAgainstCyclicTable) {
  auto g = catalog::z2_times_z3();
  // b a b^2 with a in G_v, b in G_w.
  auto w = g->canonicalize({{1, 1}, {0, 1}, {1, 2}});
  EXPECT_EQ(w, syl(*g, 0, 1));
  EXPECT_EQ(GraphProductGroup::syllable_length(w), 1u);

  // Oracle: Z/2 x Z/3 -> Z/6, a -> 3, b -> 2 is an isomorphism; canonical
  // forms must agree exactly when images agree.
  std::map<Elt, int> image;
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 2000; ++trial) {
    std::uniform_int_distribution<int> len(0, 8), vert(0, 1), val(0, 2);
    Word word;
    int z6 = 0;
    for (int i = len(rng); i > 0; --i) {
      int v = vert(rng);
      int x = v == 0 ? val(rng) % 2 : val(rng);
      word.push_back({v, x, 0});
      z6 = (z6 + (v == 0 ? 3 * x : 2 * x)) % 6;
    }
    auto e = g->canonicalize(word);
    auto [it, fresh] = image.emplace(e, z6);
    EXPECT_EQ(it->second, z6);
  }
  EXPECT_EQ(image.size(), 6u);
}

TEST(Canonicalize, AlternatingWordDoesNotReduce) {
  auto g = catalog::z2_free_z3();
  Word w;
  for (int i = 0; i < 3; ++i) {
    w.push_back({0, 1, 0});
    w.push_back({1, 1, 0});
  }
  auto e = g->canonicalize(w);
  EXPECT_EQ(GraphProductGroup::syllable_length(e), 6u);
  std::vector<std::pair<int, std::int64_t>> raw;
  for (auto l : w) raw.emplace_back(l.slot, l.value);
  EXPECT_EQ(free_reduce(raw, {2, 3}).size(), 6u);
}

TEST(Canonicalize, UnknownLetter) {
  auto g = catalog::z2_free_z3();
  EXPECT_THROW(g->canonicalize({{5, 1, 0}}), Error);
  EXPECT_THROW(g->element_from_json(json::parse(R"([["c",1]])")), Error);
}

TEST(Ball, FreeProductCounts) {
  auto g = catalog::z2_free_z3();
  EXPECT_EQ(ball(*g, 0).size(), 1u);
  // Oracle: reduced alternating words of length <= 2 over {a} and {b, b^2}:
  // 1 + (1 + 2) + (a b^i: 2) + (b^i a: 2).
  auto b2 = ball(*g, 2);
  EXPECT_EQ(b2.size(), 8u);
  std::size_t count = 0;
  for (const auto& e : b2.elements) count += GraphProductGroup::syllable_length(e) <= 2;
  EXPECT_EQ(count, 8u);
}

TEST(Ball, CyclicSaturates) {
  auto g = BasicGroup::cyclic(5);
  EXPECT_EQ(ball(g, 2).size(), 5u);
  EXPECT_EQ(ball(g, 7).size(), 5u);
  EXPECT_EQ(ball(g, 1).size(), 3u);
}

TEST(Ball, DeterministicOrderAndCap) {
  auto g = catalog::z2_free_z3();
  auto a = ball(*g, 5), b = ball(*g, 5);
  EXPECT_EQ(a.elements, b.elements);
  try {
    ball(*g, 10, 50);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::cap_exceeded);
  }
}

TEST(Ball, IntegerVertexUsesL1Length) {
  auto g = catalog::free_group2();
  // F2 ball of radius 2 has 1 + 4 + 12 elements.
  EXPECT_EQ(ball(*g, 2).size(), 17u);
}

TEST(ConjugacyClass, Examples) {
  auto g = catalog::z2_free_z3();
  EXPECT_EQ(conjugacy_class(*g, g->identity(), 3).size(), 1u);
  auto z5 = BasicGroup::cyclic(5);
  EXPECT_EQ(conjugacy_class(z5, Elt{{2}}, 4).size(), 1u);
  auto a = syl(*g, 0, 1);
  auto c2 = conjugacy_class(*g, a, 2);
  EXPECT_EQ(c2.size(), 5u);
  // Oracle: conjugate by every element of ball(2) directly.
  std::set<Elt> direct;
  for (const auto& h : ball(*g, 2).elements) direct.insert(g->multiply(g->multiply(h, a), g->inverse(h)));
  EXPECT_EQ(c2, direct);
  // Monotone in the bound.
  auto c3 = conjugacy_class(*g, a, 3);
  for (const auto& x : c2) EXPECT_TRUE(c3.count(x));
}

TEST(Centralizer, Examples) {
  auto g = catalog::z2_free_z3();
  auto dom = ball(*g, 4).elements;
  EXPECT_EQ(centralizer(*g, {g->identity()}, dom).size(), dom.size());
  auto a = syl(*g, 0, 1);
  auto c = centralizer(*g, {a}, dom);
  EXPECT_EQ(c.size(), 2u);
  EXPECT_TRUE(std::count(c.begin(), c.end(), a));
  auto z5 = std::make_shared<BasicGroup>(BasicGroup::cyclic(5));
  auto d5 = ball(*z5, -1).elements;
  EXPECT_EQ(centralizer(*z5, {Elt{{3}}}, d5).size(), 5u);
}

TEST(RelativeCentralizer, SymmetricGroupModuloA3) {
  auto s3 = std::make_shared<BasicGroup>(catalog::symmetric(3));
  auto all = ball(*s3, -1).elements;
  ASSERT_EQ(all.size(), 6u);
  std::vector<Elt> a3;
  for (const auto& x : all)
    if (s3->element_order(x.data[0]) != 2) a3.push_back(x);
  ASSERT_EQ(a3.size(), 3u);
  auto m = make_finite_subgroup(s3, a3, "A3");
  Elt transposition;
  for (const auto& x : all)
    if (s3->element_order(x.data[0]) == 2) transposition = x;
  auto r = relative_centralizer_mod(*s3, m, {transposition}, all, true);
  EXPECT_EQ(r.elements.size(), 6u);
  EXPECT_TRUE(r.in_normalizer);
  ASSERT_TRUE(r.core_index.has_value());
  EXPECT_EQ(*r.core_index, 6u);  // C(S) ∩ C(M) is trivial
  EXPECT_EQ(relative_centralizer_mod(*s3, m, {s3->identity()}, all).elements.size(), 6u);
  // M trivial reduces to the centralizer.
  auto triv = trivial_subgroup(s3);
  auto rc = relative_centralizer_mod(*s3, triv, {transposition}, all);
  EXPECT_EQ(rc.elements, centralizer(*s3, {transposition}, all));
  Subgroup undecided = predicate_subgroup([](const Elt&) { return true; }, "opaque");
  EXPECT_THROW(relative_centralizer_mod(*s3, undecided, {transposition}, all), Error);
}

TEST(CyclicReduction, Examples) {
  auto g = catalog::psl2z_amalgam();
  auto a = g->factor_elt(0, 1), b = g->factor_elt(1, 1);
  auto r = cyclic_reduction(*g, a);
  EXPECT_EQ(r.conjugator, g->identity());
  EXPECT_TRUE(r.elliptic);
  auto bab = g->multiply(g->multiply(b, a), g->inverse(b));
  r = cyclic_reduction(*g, bab);
  EXPECT_TRUE(r.elliptic);
  EXPECT_EQ(r.core, a);
  EXPECT_EQ(r.conjugator, b);
  r = cyclic_reduction(*g, g->multiply(a, b));
  EXPECT_FALSE(r.elliptic);
  EXPECT_EQ(r.core_length, 2u);
  EXPECT_EQ(r.conjugator, g->identity());
  EXPECT_THROW(cyclic_reduction(*catalog::z2_free_z3(), a), Error);
}

class FamilyProperties : public ::testing::TestWithParam<int> {
 protected:
  GroupCtx ctx() const {
    switch (GetParam()) {
      case 0: return catalog::z2_free_z3();
      case 1: return catalog::z2_times_z3();
      case 2: return catalog::free_group2();
      case 3: return catalog::psl2z_amalgam();
      case 4: return catalog::sl2z_amalgam();
      case 5: return catalog::hnn_z4();
      case 6: return catalog::lamplighter();
      case 7: return std::make_shared<BasicGroup>(catalog::symmetric(4));
      default: {
        SimpGraph path(std::vector<std::string>{"a", "b", "c", "d"});
        path.add_edge(0, 1);
        path.add_edge(1, 2);
        path.add_edge(2, 3);
        return std::make_shared<GraphProductGroup>(
            path, std::vector{BasicGroup::cyclic(2), BasicGroup::integers(), BasicGroup::cyclic(3),
                              BasicGroup::table({}, catalog::symmetric(3).table_rows())});
      }
    }
  }
};

TEST_P(FamilyProperties, CanonicalizeIsIdempotent) {
  auto g = ctx();
  std::mt19937_64 rng(100 + GetParam());
  for (int i = 0; i < 10000; ++i) {
    auto e = testutil::random_element(*g, rng, 1 + static_cast<int>(rng() % 12));
    ASSERT_EQ(g->element_from_json(g->elt_to_json(e)), e) << g->to_string(e);
  }
}

TEST_P(FamilyProperties, InverseOnBall) {
  auto g = ctx();
  for (const auto& e : ball(*g, GetParam() == 6 || GetParam() == 2 ? 4 : 5).elements) {
    ASSERT_EQ(g->multiply(e, g->inverse(e)), g->identity());
    ASSERT_EQ(g->multiply(g->inverse(e), e), g->identity());
  }
}

TEST_P(FamilyProperties, Associativity) {
  auto g = ctx();
  std::mt19937_64 rng(200 + GetParam());
  for (int i = 0; i < 10000; ++i) {
    auto a = testutil::random_element(*g, rng, 6), b = testutil::random_element(*g, rng, 6),
         c = testutil::random_element(*g, rng, 6);
    ASSERT_EQ(g->multiply(g->multiply(a, b), c), g->multiply(a, g->multiply(b, c)));
  }
}

INSTANTIATE_TEST_SUITE_P(Families, FamilyProperties, ::testing::Range(0, 9));

TEST(GraphProduct, CompleteGraphIsDirectProduct) {
  SimpGraph k3(3);
  k3.add_edge(0, 1);
  k3.add_edge(1, 2);
  k3.add_edge(0, 2);
  GraphProductGroup g(k3, {BasicGroup::cyclic(2), BasicGroup::cyclic(3), BasicGroup::cyclic(4)});
  EXPECT_EQ(g.order().value(), 24u);
  EXPECT_EQ(ball(g, -1).size(), 24u);
}

TEST(GraphProduct, EdgelessMatchesFreeReducer) {
  auto g = catalog::free_product({BasicGroup::cyclic(2), BasicGroup::cyclic(3), BasicGroup::cyclic(4)});
  std::mt19937_64 rng(5);
  for (int t = 0; t < 1000; ++t) {
    std::vector<std::pair<int, std::int64_t>> w;
    Word word;
    for (int i = static_cast<int>(rng() % 15); i > 0; --i) {
      int v = static_cast<int>(rng() % 3);
      std::int64_t x = static_cast<std::int64_t>(rng() % (v + 2));
      w.emplace_back(v, x);
      word.push_back({v, x, 0});
    }
    auto red = free_reduce(w, {2, 3, 4});
    auto s = GraphProductGroup::syllables(g->canonicalize(word));
    ASSERT_EQ(red.size(), s.size());
    for (std::size_t i = 0; i < s.size(); ++i) {
      EXPECT_EQ(red[i].first, s[i].v);
      EXPECT_EQ(red[i].second, s[i].x);
    }
  }
}

TEST(GraphProduct, NormalFormIsLexLeastShuffle) {
  // a - b edge, c isolated: b a is written a b.
  SimpGraph gr(std::vector<std::string>{"a", "b", "c"});
  gr.add_edge(0, 1);
  GraphProductGroup g(gr, {BasicGroup::cyclic(2), BasicGroup::cyclic(2), BasicGroup::cyclic(2)});
  auto e = g.canonicalize({{1, 1}, {0, 1}});
  EXPECT_EQ(e.data, (std::vector<std::int64_t>{0, 1, 1, 1}));
  auto f = g.canonicalize({{1, 1}, {2, 1}, {0, 1}});
  EXPECT_EQ(f.data, (std::vector<std::int64_t>{1, 1, 2, 1, 0, 1}));
  // b c b a: nothing merges.
  auto h = g.canonicalize({{1, 1}, {2, 1}, {1, 1}, {0, 1}});
  EXPECT_EQ(GraphProductGroup::syllable_length(h), 4u);
  // a b a = b.
  EXPECT_EQ(g.canonicalize({{0, 1}, {1, 1}, {0, 1}}), g.canonicalize({{1, 1}}));
}

TEST(GraphProduct, StripSuffixGivesCosetLabel) {
  auto g = catalog::z2_times_z3();
  auto x = g->canonicalize({{0, 1}, {1, 2}});
  EXPECT_EQ(g->strip_suffix(x, bit(1)), g->canonicalize({{0, 1}}));
  EXPECT_EQ(g->strip_suffix(x, bit(0)), g->canonicalize({{1, 2}}));
  EXPECT_EQ(g->strip_suffix(x, bit(0) | bit(1)), g->identity());
  // Keys agree on the whole coset.
  auto gs = vertex_subgroup(g, bit(1));
  for (std::int64_t y = 0; y < 3; ++y)
    EXPECT_EQ(gs.coset_key(g->multiply(x, g->canonicalize({{1, y}}))), gs.coset_key(x));
}

TEST(CyclicReductionProperty, RecombinesOnBall) {
  for (GroupCtx g : {GroupCtx(catalog::psl2z_amalgam()), GroupCtx(catalog::sl2z_amalgam()), GroupCtx(catalog::hnn_z4())}) {
    for (const auto& e : ball(*g, 6).elements) {
      auto r = cyclic_reduction(*g, e);
      ASSERT_EQ(g->multiply(g->multiply(r.conjugator, r.core), g->inverse(r.conjugator)), e);
      ASSERT_EQ(cyclic_reduction(*g, r.core).core, r.core);
    }
  }
}

TEST(Wreath, Lamplighter) {
  auto g = catalog::lamplighter();
  auto t = g->canonicalize({{0, 1, 0}});
  auto lamp = g->canonicalize({{1, 1, 0}});
  // t lamp t^-1 lights point 1.
  EXPECT_EQ(g->conjugate(t, lamp), g->canonicalize({{1, 1, 1}}));
  EXPECT_EQ(g->multiply(lamp, lamp), g->identity());
  EXPECT_THROW(WreathGroup(BasicGroup::cyclic(1), BasicGroup::integers(), PointAction{}), Error);
  // Finite wreath Z/2 wr_{3 points} S3 has order 8 * 6.
  PointAction act;
  act.type = PointAction::Type::permutation;
  auto s3 = catalog::symmetric(3);
  for (int k = 0; k < 6; ++k) {
    std::vector<std::int64_t> p;
    for (char c : s3.names()[k]) p.push_back(c - '1');
    act.perm.push_back(p);
  }
  WreathGroup w(BasicGroup::cyclic(2), s3, act);
  EXPECT_EQ(w.order().value(), 48u);
  EXPECT_EQ(ball(w, -1).size(), 48u);
}

TEST(Catalog, SubgroupCounts) {
  EXPECT_EQ(catalog::subgroups(catalog::symmetric(3)).size(), 6u);
  EXPECT_EQ(catalog::subgroups(catalog::symmetric(4)).size(), 30u);
}
