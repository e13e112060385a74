#include <gtest/gtest.h>

#include <random>

#include "inam/catalog.hpp"
#include "inam/location.hpp"
#include "inam/lp.hpp"
#include "test_util.hpp"

using namespace inam;
using Q = Rational;
using PV = ProbVec<Q>;

namespace {

GroupCtx integers() {
  static GroupCtx z = std::make_shared<BasicGroup>(BasicGroup::integers());
  return z;
}
Elt n(std::int64_t v) { return Elt{{v}}; }

PV random_vector(const GroupCtx& g, const std::vector<Elt>& pool, std::mt19937_64& rng, int max_support) {
  PV p{g, {}};
  int k = 1 + static_cast<int>(rng() % max_support);
  std::vector<std::pair<Elt, long>> w;
  long total = 0;
  for (int i = 0; i < k; ++i) {
    long a = 1 + static_cast<long>(rng() % 9);
    w.emplace_back(pool[rng() % pool.size()], a);
    total += a;
  }
  for (auto& [x, a] : w) p.add(x, Q(a, total));
  for (auto& [x, v] : p.mass) v.canonicalize();
  return p;
}

}  // namespace

TEST(Convolve, PointMassesAndIdentity) {
  auto g = catalog::z2_free_z3();
  auto a = g->canonicalize({{0, 1}}), b = g->canonicalize({{1, 2}});
  auto c = convolve(PV::point(g, a), PV::point(g, b));
  EXPECT_EQ(c.mass.size(), 1u);
  EXPECT_EQ(c.at(g->multiply(a, b)), Q(1));
  std::mt19937_64 rng(1);
  auto m = random_vector(g, ball(*g, 3).elements, rng, 6);
  EXPECT_EQ(convolve(m, PV::point(g, g->identity())).mass, m.mass);
}

TEST(Convolve, UniformOnIntegersByDoubleSum) {
  auto z = integers();
  auto u = PV::uniform(z, {n(0), n(1)});
  auto c = convolve(u, u);
  // Direct double sum: each pair (i, j) contributes 1/4 at i + j.
  std::map<Elt, Q> oracle;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) oracle[n(i + j)] += Q(1, 4);
  EXPECT_EQ(c.mass, oracle);
  EXPECT_EQ(c.at(n(1)), Q(1, 2));
  EXPECT_TRUE(c.is_probability());
}

TEST(Convolve, MixedContexts) {
  auto a = PV::point(integers(), n(0));
  auto b = PV::point(std::make_shared<BasicGroup>(BasicGroup::cyclic(3)), n(0));
  EXPECT_THROW(convolve(a, b), Error);
}

TEST(Reverse, Examples) {
  auto z = integers();
  EXPECT_EQ(reverse(PV::point(z, n(3))).mass, PV::point(z, n(-3)).mass);
  auto sym = PV::uniform(z, {n(-1), n(0), n(1)});
  EXPECT_EQ(reverse(sym).mass, sym.mass);
  EXPECT_EQ(reverse(PV::uniform(z, {n(0), n(1)})).mass, PV::uniform(z, {n(0), n(-1)}).mass);
}

TEST(Pushforward, Examples) {
  auto z = integers();
  auto u = PV::uniform(z, {n(0), n(1), n(2), n(3)});
  auto id = pushforward(u, [](const Elt& x) { return std::optional<Elt>(x); });
  EXPECT_EQ(id, u.mass);
  auto mod2 = pushforward(u, [](const Elt& x) { return std::optional<std::int64_t>(x.data[0] % 2); });
  EXPECT_EQ(mod2.at(0), Q(1, 2));
  EXPECT_EQ(mod2.at(1), Q(1, 2));
  auto g = catalog::z2_free_z3();
  auto a = g->canonicalize({{0, 1}}), k = g->canonicalize({{1, 1}});
  auto c = conjugate_vector(PV::point(g, a), k);
  EXPECT_EQ(c.at(g->conjugate(k, a)), Q(1));
  EXPECT_THROW(pushforward(u, [](const Elt& x) { return x.data[0] < 2 ? std::optional<int>(0) : std::nullopt; }),
               Error);
}

TEST(NormalizedRestriction, Examples) {
  auto z = integers();
  auto u = PV::uniform(z, {n(0), n(1), n(2), n(3)});
  EXPECT_EQ(normalized_restriction<Q>(u, [](const Elt&) { return true; }).mass, u.mass);
  auto ev = normalized_restriction<Q>(u, [](const Elt& x) { return x.data[0] % 2 == 0; });
  EXPECT_EQ(ev.mass, PV::uniform(z, {n(0), n(2)}).mass);
  try {
    normalized_restriction<Q>(u, [](const Elt& x) { return x.data[0] > 10; });
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::zero_mass);
  }
}

TEST(FiniteNormalLift, Examples) {
  GroupCtx z4 = std::make_shared<BasicGroup>(BasicGroup::cyclic(4));
  auto nsub = make_finite_subgroup(z4, {n(0), n(2)});
  auto lift = finite_normal_lift<Q>(z4, {{n(1), Q(1)}}, nsub);
  EXPECT_EQ(lift.mass, PV::uniform(z4, {n(1), n(3)}).mass);
  auto triv = trivial_subgroup(z4);
  std::map<Elt, Q> m0{{n(1), Q(1, 3)}, {n(2), Q(2, 3)}};
  EXPECT_EQ(finite_normal_lift<Q>(z4, m0, triv).mass, m0);
  EXPECT_THROW(finite_normal_lift<Q>(z4, {{n(1), Q(1, 2)}, {n(3), Q(1, 2)}}, nsub), Error);
}

TEST(FiniteNormalLift, RoundTrip) {
  auto s4 = std::make_shared<BasicGroup>(catalog::symmetric(4));
  auto all = ball(*s4, -1).elements;
  // Klein four-group: identity and the three double transpositions.
  std::vector<Elt> v4;
  for (const auto& x : all) {
    auto nm = s4->names()[x.data[0]];
    int fixed = 0;
    for (int i = 0; i < 4; ++i) fixed += nm[i] == '1' + i;
    if (fixed == 4 || (fixed == 0 && s4->element_order(x.data[0]) == 2)) v4.push_back(x);
  }
  ASSERT_EQ(v4.size(), 4u);
  auto nsub = make_finite_subgroup(s4, v4, "V4");
  std::mt19937_64 rng(3);
  for (int t = 0; t < 1000; ++t) {
    std::map<Elt, Q> m0;
    long total = 0;
    std::vector<std::pair<Elt, long>> w;
    for (const auto& x : all) {
      auto key = nsub.coset_key(x);
      if (!(key == x) || rng() % 2) continue;
      long a = 1 + static_cast<long>(rng() % 5);
      w.emplace_back(x, a);
      total += a;
    }
    if (w.empty()) continue;
    for (auto& [x, a] : w) m0[x] = Q(a, total);
    for (auto& [x, v] : m0) v.canonicalize();
    auto lift = finite_normal_lift<Q>(s4, m0, nsub);
    auto back = pushforward(lift, [&](const Elt& x) { return std::optional<Elt>(nsub.coset_key(x)); });
    ASSERT_EQ(back, m0);
  }
}

TEST(TransversalAverage, Examples) {
  auto s3 = std::make_shared<BasicGroup>(catalog::symmetric(3));
  auto all = ball(*s3, -1).elements;
  std::vector<Elt> a3;
  Elt tau;
  for (const auto& x : all) {
    if (s3->element_order(x.data[0]) != 2) a3.push_back(x);
    else tau = x;
  }
  auto mh = PV::uniform(s3, a3);
  EXPECT_EQ(transversal_average<Q>(mh, {{s3->identity(), Q(1)}}).mass, mh.mass);
  auto rot = a3.back();
  EXPECT_EQ(transversal_average<Q>(mh, {{tau, Q(1)}}).mass, conjugate_vector(mh, tau).mass);
  auto avg = transversal_average<Q>(mh, {{s3->identity(), Q(1, 2)}, {tau, Q(1, 2)}});
  EXPECT_EQ(avg.mass, mh.mass);
  auto skew = PV::point(s3, rot);
  auto avg2 = transversal_average<Q>(skew, {{s3->identity(), Q(1, 2)}, {tau, Q(1, 2)}});
  EXPECT_EQ(avg2.at(rot), Q(1, 2));
  EXPECT_EQ(avg2.at(s3->inverse(rot)), Q(1, 2));
}

TEST(TildeLift, Examples) {
  auto z = integers();
  auto p = PV::uniform(z, {n(0), n(1), n(2)});
  std::function<std::optional<Elt>(const Elt&)> ident = [](const Elt& x) { return std::optional<Elt>(x); };
  auto pt = tilde_lift<Q, Elt>(p, ident);
  EXPECT_EQ(pt.size(), 3u);
  EXPECT_EQ(diagonal_mass(pt), Q(1));
  std::function<std::optional<int>(const Elt&)> one = [](const Elt&) { return std::optional<int>(0); };
  auto pp = tilde_lift<Q, int>(p, one);
  EXPECT_EQ(pp.size(), 9u);
  for (const auto& [xy, v] : pp) EXPECT_EQ(v, p.at(xy.first) * p.at(xy.second));
  auto two = PV::uniform(z, {n(5), n(7)});
  auto p2 = tilde_lift<Q, int>(two, one);
  EXPECT_EQ(p2.size(), 4u);
  for (const auto& [xy, v] : p2) EXPECT_EQ(v, Q(1, 4));
  EXPECT_EQ(diagonal_mass(p2), Q(1, 2));
}

TEST(TildeLift, MarginalIdentity) {
  auto g = catalog::lamplighter();
  auto pool = ball(*g, 4).elements;
  std::mt19937_64 rng(9);
  std::function<std::optional<std::int64_t>(const Elt&)> pi = [](const Elt& x) {
    return std::optional<std::int64_t>(x.data[0]);
  };
  for (int t = 0; t < 200; ++t) {
    auto p = random_vector(g, pool, rng, 8);
    auto pt = tilde_lift<Q, std::int64_t>(p, pi);
    std::map<Elt, Q> marg;
    for (const auto& [xy, v] : pt) marg[xy.second] += v;
    // Σ_x0 p~(x0, x1) = q(y) p^y(x1) = p(x1).
    ASSERT_EQ(marg, p.mass);
    ASSERT_EQ(total_mass(pt), Q(1));
  }
}

TEST(LiftingDefect, Examples) {
  auto g = catalog::z2_free_z3();
  std::function<std::optional<Elt>(const Elt&)> ident = [](const Elt& x) { return std::optional<Elt>(x); };
  std::mt19937_64 rng(4);
  auto p = random_vector(g, ball(*g, 3).elements, rng, 5);
  auto r = lifting_defect_check<Q, Elt>(p, ident, conjugation_action(g), g->identity());
  EXPECT_EQ(r.lhs, Q(0));
  EXPECT_TRUE(r.ok);
  // Invariant p: uniform on a conjugation-stable set in Z/2 x Z/3 (abelian).
  auto d = catalog::z2_times_z3();
  auto u = PV::uniform(d, ball(*d, -1).elements);
  auto r2 = lifting_defect_check<Q, Elt>(u, ident, conjugation_action(d), d->canonicalize({{1, 1}}));
  EXPECT_EQ(r2.lhs, Q(0));
  EXPECT_EQ(r2.rhs, Q(0));
  // A non-equivariant partition is reported.
  std::function<std::optional<int>(const Elt&)> bad = [](const Elt& x) {
    return std::optional<int>(GraphProductGroup::syllable_length(x) % 2);
  };
  auto q = PV::uniform(g, {g->canonicalize({{0, 1}}), g->canonicalize({{1, 1}, {0, 1}})});
  auto k = g->canonicalize({{1, 1}});
  EXPECT_THROW((lifting_defect_check<Q, int>(q, bad, conjugation_action(g), k)), Error);
}

TEST(ConvolutionBound, Examples) {
  auto z = integers();
  auto two_z = multiples_subgroup(2);
  auto r = convolution_bound_check(PV::point(z, n(7)), two_z);
  EXPECT_EQ(r.lhs, Q(1));
  EXPECT_EQ(r.rhs, Q(1));
  auto r2 = convolution_bound_check(PV::uniform(z, {n(0), n(1)}), two_z);
  EXPECT_EQ(r2.lhs, Q(1, 2));
  EXPECT_EQ(r2.rhs, Q(1, 2));
  EXPECT_TRUE(r2.ok);
}

TEST(ConvolutionBound, SymmetricGroupSubgroups) {
  auto s3 = std::make_shared<BasicGroup>(catalog::symmetric(3));
  auto all = ball(*s3, -1).elements;
  std::mt19937_64 rng(12);
  for (const auto& h : catalog::subgroups(*s3)) {
    auto sub = make_finite_subgroup(s3, h);
    for (int t = 0; t < 1000; ++t) {
      auto m = random_vector(s3, all, rng, 6);
      auto r = convolution_bound_check(m, sub);
      // Oracle: double sum over the support.
      Q lhs(0);
      for (const auto& [x, a] : m.mass)
        for (const auto& [y, b] : m.mass)
          if (sub.contains(s3->multiply(s3->inverse(x), y))) lhs += a * b;
      ASSERT_EQ(r.lhs, lhs);
      ASSERT_TRUE(r.ok);
    }
  }
}

TEST(Stationarity, Examples) {
  auto s3 = std::make_shared<BasicGroup>(catalog::symmetric(3));
  auto all = ball(*s3, -1).elements;
  auto whole = make_finite_subgroup(s3, all);
  auto e = PV::point(s3, s3->identity());
  auto r = stationarity_transfer_check(e, e, whole, Q(0));
  EXPECT_EQ(r.right_defect, Q(0));
  EXPECT_EQ(r.m_mass, Q(1));
  EXPECT_TRUE(r.ok);
  std::vector<Elt> a3;
  for (const auto& x : all)
    if (s3->element_order(x.data[0]) != 2) a3.push_back(x);
  auto h = make_finite_subgroup(s3, a3);
  auto nu = PV::uniform(s3, a3);
  auto r2 = stationarity_transfer_check(nu, PV::point(s3, a3[1]), h, Q(0));
  EXPECT_EQ(r2.right_defect, Q(0));
  EXPECT_EQ(r2.left_defect, Q(0));
  EXPECT_EQ(r2.m_mass, Q(1));
  EXPECT_TRUE(r2.hypothesis);
  EXPECT_TRUE(r2.ok);
}

TEST(Location, Examples) {
  auto g = catalog::lamplighter();
  auto lamps = predicate_subgroup([](const Elt& x) { return x.data[0] == 0; }, "lamp subgroup");
  auto gens = g->generators();
  auto h = g->canonicalize({{1, 1, 0}});
  auto r = location_experiment(PV::point(g, g->identity()), gens, lamps, h, Q(3, 4));
  EXPECT_EQ(r.diagonal_mass, Q(1));
  EXPECT_EQ(r.lhs, Q(0));
  EXPECT_TRUE(r.ok);
  // p on the lamp subgroup, which centralizes h.
  auto p = PV::uniform(g, {h, g->canonicalize({{1, 1, 3}}), g->identity()});
  auto r2 = location_experiment(p, gens, lamps, h, Q(3, 4));
  EXPECT_EQ(r2.lhs, Q(0));
  EXPECT_TRUE(r2.ok && r2.diagonal_bound_ok && r2.threshold_bound_ok && r2.argmax_identity_ok);
  auto t = g->canonicalize({{0, 1, 0}});
  EXPECT_THROW(location_experiment(p, gens, lamps, t, Q(3, 4)), Error);
}

TEST(Location, RandomInstances) {
  auto g = catalog::lamplighter();
  auto lamps = predicate_subgroup([](const Elt& x) { return x.data[0] == 0; }, "lamp subgroup");
  auto pool = ball(*g, 4).elements;
  std::mt19937_64 rng(21);
  for (int t = 0; t < 200; ++t) {
    auto p = random_vector(g, pool, rng, 6);
    auto h = g->canonicalize({{1, 1, static_cast<std::int64_t>(rng() % 3)}});
    auto r = location_experiment(p, g->generators(), lamps, h, Q(3, 4));
    ASSERT_TRUE(r.ok && r.diagonal_bound_ok && r.threshold_bound_ok && r.argmax_identity_ok);
  }
}

TEST(LpMeanSearch, AbelianCarrierIsFeasible) {
  auto d = catalog::z2_times_z3();
  auto carrier = ball(*d, -1).elements;
  auto res = lp_mean_search<Q>(d, carrier, d->generators(), Q(0), Q(1, 6));
  ASSERT_EQ(res.status, LpStatus::feasible);
  EXPECT_TRUE(res.verified);
  EXPECT_EQ(res.scope, "carrier-relative");
  for (const auto& [x, v] : res.p->mass) EXPECT_EQ(v, Q(1, 6));
}

TEST(LpMeanSearch, FreeGroupBallIsInfeasible) {
  auto f2 = catalog::free_group2();
  auto carrier = ball(*f2, 2).elements;
  std::vector<Elt> gens{f2->canonicalize({{0, 1}}), f2->canonicalize({{1, 1}})};
  auto res = lp_mean_search<Q>(f2, carrier, gens, Q(0), Q(2, 5), {f2->identity()});
  ASSERT_EQ(res.status, LpStatus::infeasible);
  EXPECT_TRUE(res.verified);
  // Oracle: with ε = 0 every element with a conjugate leaving the carrier is
  // forced to zero; all non-identity elements are forced, so Σp = 1 fails.
  std::size_t free_vars = 0;
  for (const auto& x : carrier) {
    if (x == f2->identity()) continue;
    bool leaves = false;
    for (const auto& k : gens)
      for (const auto& c : {f2->conjugate(k, x), f2->conjugate(f2->inverse(k), x)})
        leaves = leaves || std::find(carrier.begin(), carrier.end(), c) == carrier.end();
    free_vars += !leaves;
  }
  EXPECT_EQ(free_vars, 0u);
  // The same problem in floating point agrees.
  auto resf = lp_mean_search<double>(f2, carrier, gens, 0.0, 0.4, {f2->identity()});
  EXPECT_EQ(resf.status, LpStatus::infeasible);
}

TEST(LpMeanSearch, VacuousConstraints) {
  auto g = catalog::z2_free_z3();
  auto carrier = ball(*g, 3).elements;
  auto res = lp_mean_search<Q>(g, carrier, g->generators(), Q(2), Q(1));
  ASSERT_EQ(res.status, LpStatus::feasible);
  EXPECT_TRUE(res.verified);
}

TEST(LpBackend, FarkasOnTinySystem) {
  // x0 + x1 <= 1 and x0 + x1 = 2 is infeasible.
  LpProblem<Q> pb;
  pb.vars = 2;
  pb.add({{0, Q(1)}, {1, Q(1)}}, Q(1));
  pb.add({{0, Q(1)}, {1, Q(1)}}, Q(2), true);
  BlandSimplex<Q> s;
  EXPECT_EQ(s.solve(pb).status, LpStatus::infeasible);
  auto y = farkas_certificate(pb, s);
  ASSERT_TRUE(y.has_value());
  EXPECT_TRUE(verify_farkas(pb, *y));
  std::vector<Q> bogus(y->size(), Q(0));
  EXPECT_FALSE(verify_farkas(pb, bogus));
}

TEST(MeansProperties, ConvolutionAssociative) {
  auto g = catalog::z2_free_z3();
  auto pool = ball(*g, 3).elements;
  std::mt19937_64 rng(31);
  for (int t = 0; t < 1000; ++t) {
    auto a = random_vector(g, pool, rng, 4), b = random_vector(g, pool, rng, 4), c = random_vector(g, pool, rng, 4);
    ASSERT_EQ(convolve(convolve(a, b), c).mass, convolve(a, convolve(b, c)).mass);
  }
}

TEST(MeansProperties, ReverseLaws) {
  auto g = catalog::lamplighter();
  auto pool = ball(*g, 3).elements;
  std::mt19937_64 rng(32);
  for (int t = 0; t < 500; ++t) {
    auto a = random_vector(g, pool, rng, 5), b = random_vector(g, pool, rng, 5);
    ASSERT_EQ(reverse(reverse(a)).mass, a.mass);
    ASSERT_EQ(reverse(convolve(a, b)).mass, convolve(reverse(b), reverse(a)).mass);
  }
}

TEST(MeansProperties, InvarianceSurvivesConvolution) {
  // Uniform measures on conjugacy classes of S4 are conjugation invariant.
  auto s4 = std::make_shared<BasicGroup>(catalog::symmetric(4));
  auto all = ball(*s4, -1).elements;
  auto gens = s4->generators();
  std::vector<PV> classes;
  for (const auto& x : all) {
    std::vector<Elt> cls;
    for (const auto& k : all) cls.push_back(s4->conjugate(k, x));
    classes.push_back(PV::uniform(s4, cls));
  }
  for (std::size_t i = 0; i < classes.size(); i += 3)
    for (std::size_t j = 0; j < classes.size(); j += 5) {
      auto c = convolve(classes[i], classes[j]);
      EXPECT_EQ(conjugation_defect(c, gens).max, Q(0));
      EXPECT_EQ(conjugation_defect(reverse(classes[i]), gens).max, Q(0));
    }
}

TEST(ProbVecJson, RoundTrip) {
  auto g = catalog::z2_free_z3();
  std::mt19937_64 rng(2);
  auto p = random_vector(g, ball(*g, 3).elements, rng, 5);
  auto j = p.to_json();
  EXPECT_EQ(j["arith"], "exact");
  EXPECT_EQ(PV::from_json(g, j).mass, p.mass);
  auto bad = j;
  bad["entries"][0]["mass"] = "7";
  EXPECT_THROW(PV::from_json(g, bad), Error);
}
