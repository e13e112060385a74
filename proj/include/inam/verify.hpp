#ifndef INAM_VERIFY_HPP_
#define INAM_VERIFY_HPP_

#include <algorithm>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "catalog.hpp"
#include "cube_complex.hpp"
#include "location.hpp"
#include "means.hpp"
#include "tree.hpp"

namespace inam {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

// Seed of trial i under a master seed; each trial runs its own mt19937_64.
inline std::uint64_t trial_seed(std::uint64_t master, std::uint64_t i) { return splitmix64(splitmix64(master) ^ i); }

struct VerifyConfig {
  std::string suite;
  std::size_t trials = 1000;
  std::uint64_t seed = 1;
  std::optional<int> radius;
  std::optional<int> vertices;
  std::optional<nlohmann::json> spec;
  bool exact = true;
  std::size_t cap = default_cap();
};

inline const std::vector<std::string>& verify_suites() {
  static const std::vector<std::string> s{"tildep", "convcomp", "stationary", "location", "amine",
                                          "crossing", "subsets3", "isometry",   "phi"};
  return s;
}

struct SuiteReport {
  std::string suite;
  std::string anchor;
  std::string arith = "exact";
  std::uint64_t master_seed = 0;
  nlohmann::json params = nlohmann::json::object();
  nlohmann::json tolerances = nlohmann::json::object();
  nlohmann::json stats = nlohmann::json::object();
  std::size_t passed = 0;
  std::size_t failed = 0;
  std::vector<std::uint64_t> seeds;
  nlohmann::json failures = nlohmann::json::array();

  // Randomized trial: its seed is kept for replay.
  void record(bool ok, std::uint64_t seed, nlohmann::json detail = nullptr) {
    seeds.push_back(seed);
    tally(ok, seeds.size() - 1, {{"seed", seed}, {"detail", std::move(detail)}});
  }
  // Exhaustive instance, identified by its detail.
  void tally(bool ok, std::size_t index, nlohmann::json detail = nullptr) {
    if (ok) {
      ++passed;
      return;
    }
    ++failed;
    if (failures.size() < 20) failures.push_back({{"instance", index}, {"detail", std::move(detail)}});
  }

  bool ok() const { return failed == 0 && passed > 0; }

  nlohmann::json to_json() const {
    nlohmann::json j;
    j["schema"] = "inam.verify/1";
    j["suite"] = suite;
    j["anchor"] = anchor;
    j["arith"] = arith;
    j["master_seed"] = master_seed;
    j["seed_rule"] = "trial i uses mt19937_64(splitmix64(splitmix64(master) ^ i))";
    j["params"] = params;
    j["tolerances"] = tolerances;
    j["trials"] = passed + failed;
    j["passed"] = passed;
    j["failed"] = failed;
    j["ok"] = ok();
    j["stats"] = stats;
    j["failures"] = failures;
    j["trial_seeds"] = seeds;
    return j;
  }
};

namespace verify_detail {

template <typename S>
nlohmann::json tolerance_json() {
  if (ArithTraits<S>::exact) return {{"comparison", "exact rational"}};
  return {{"comparison", "floating point"}, {"abs_tol", ArithTraits<S>::to_double(ArithTraits<S>::tolerance())}};
}

template <typename S>
nlohmann::json scalar_json(const S& x) {
  return {{"value", ArithTraits<S>::to_string(x)}, {"approx", ArithTraits<S>::to_double(x)}};
}

// Random probability vector with integer weights 1..9 on up to max_support
// draws from pool.
template <typename S>
ProbVec<S> random_prob(const GroupCtx& g, const std::vector<Elt>& pool, std::mt19937_64& rng, int max_support) {
  int k = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(max_support));
  std::vector<std::pair<Elt, long>> w;
  long total = 0;
  for (int i = 0; i < k; ++i) {
    long a = 1 + static_cast<long>(rng() % 9);
    w.emplace_back(pool[rng() % pool.size()], a);
    total += a;
  }
  ProbVec<S> p{g, {}};
  for (auto& [x, a] : w) p.add(x, ArithTraits<S>::from_ratio(a, total));
  return p;
}

inline GroupCtx integers_ctx() {
  static GroupCtx z = std::make_shared<BasicGroup>(BasicGroup::integers());
  return z;
}

inline GroupCtx symmetric_ctx(int n) { return std::make_shared<BasicGroup>(catalog::symmetric(n)); }

// Abelianization Z/2 x Z/3 of the free product encoded as [v1, x1, ...].
inline Elt z2z3_abelian(const Elt& x) {
  std::int64_t a = 0, b = 0;
  for (std::size_t i = 0; i + 1 < x.data.size(); i += 2) (x.data[i] == 0 ? a : b) += x.data[i + 1];
  return Elt{{((a % 2) + 2) % 2, ((b % 3) + 3) % 3}};
}

using Partition = std::function<std::optional<Elt>(const Elt&)>;

struct LiftInstance {
  std::string family;
  GroupCtx g;
  Partition pi;
  Action act;
  std::vector<Elt> pool;
  Elt mover;
};

inline LiftInstance lift_instance(std::size_t family, std::mt19937_64& rng) {
  LiftInstance in;
  switch (family % 4) {
    case 0: {
      static GroupCtx s4 = symmetric_ctx(4);
      static auto subs = catalog::subgroups(*s4);
      static auto all = ball(*s4, -1).elements;
      auto h = make_finite_subgroup(s4, subs[rng() % subs.size()]);
      in.family = "S4 left multiplication, left cosets of a random subgroup";
      in.g = s4;
      in.pi = [key = h.coset_key](const Elt& x) { return std::optional<Elt>(key(x)); };
      in.act = [g = s4](const Elt& a, const Elt& x) { return g->multiply(a, x); };
      in.pool = all;
      in.mover = all[rng() % all.size()];
      break;
    }
    case 1: {
      auto z = integers_ctx();
      std::int64_t m = 1 + static_cast<std::int64_t>(rng() % 4);
      in.family = "Z translation, residues mod m";
      in.g = z;
      in.pi = [m](const Elt& x) { return std::optional<Elt>(Elt{{((x.data[0] % m) + m) % m}}); };
      in.act = [z](const Elt& a, const Elt& x) { return z->multiply(a, x); };
      in.pool = ball(*z, 6).elements;
      in.mover = Elt{{static_cast<std::int64_t>(rng() % 11) - 5}};
      break;
    }
    case 2: {
      static GroupCtx l = catalog::lamplighter();
      static auto pool = ball(*l, 3).elements;
      in.family = "lamplighter conjugation, projection to Z";
      in.g = l;
      in.pi = [](const Elt& x) { return std::optional<Elt>(Elt{{x.data[0]}}); };
      in.act = conjugation_action(l);
      in.pool = pool;
      in.mover = pool[rng() % pool.size()];
      break;
    }
    default: {
      static GroupCtx f = catalog::z2_free_z3();
      static auto pool = ball(*f, 3).elements;
      in.family = "Z/2*Z/3 conjugation, abelianization";
      in.g = f;
      in.pi = [](const Elt& x) { return std::optional<Elt>(z2z3_abelian(x)); };
      in.act = conjugation_action(f);
      in.pool = pool;
      in.mover = pool[rng() % pool.size()];
      break;
    }
  }
  return in;
}

template <typename S>
SuiteReport suite_tildep(const VerifyConfig& cfg) {
  SuiteReport rep;
  rep.anchor = "lifted vector bound: ||g p~ - p~||_1 <= 5 ||g p - p||_1 for an equivariant partition";
  rep.tolerances = tolerance_json<S>();
  rep.tolerances["constant"] = 5;
  S max_ratio(0);
  std::size_t zero_rhs = 0;
  std::map<std::string, std::size_t> per_family;
  for (std::size_t i = 0; i < cfg.trials; ++i) {
    const auto seed = trial_seed(cfg.seed, i);
    std::mt19937_64 rng(seed);
    auto in = lift_instance(i, rng);
    auto p = random_prob<S>(in.g, in.pool, rng, 8);
    auto r = lifting_defect_check<S, Elt>(p, in.pi, in.act, in.mover);
    ++per_family[in.family];
    if (r.rhs == S(0)) {
      ++zero_rhs;
    } else {
      S ratio = r.lhs / r.rhs;
      if (max_ratio < ratio) max_ratio = ratio;
    }
    rep.record(r.ok, seed,
               {{"family", in.family}, {"lhs", ArithTraits<S>::to_string(r.lhs)}, {"rhs", ArithTraits<S>::to_string(r.rhs)}});
  }
  rep.stats["max_ratio"] = scalar_json(max_ratio);
  rep.stats["ratio_bound_ok"] = approx_leq<S>(max_ratio, S(5));
  rep.stats["zero_rhs_trials"] = zero_rhs;
  rep.stats["families"] = per_family;
  return rep;
}

template <typename S>
SuiteReport suite_convcomp(const VerifyConfig& cfg) {
  SuiteReport rep;
  rep.anchor = "convolution bound: (m^ * m)(H) >= sum over cosets gH of m(gH)^2";
  rep.tolerances = tolerance_json<S>();
  const int radius = cfg.radius.value_or(6);
  rep.params["trials_per_subgroup"] = cfg.trials;
  rep.params["integer_ball_radius"] = radius;
  struct Target {
    std::string name;
    GroupCtx g;
    Subgroup h;
    std::vector<Elt> pool;
  };
  std::vector<Target> targets;
  for (int n : {3, 4}) {
    auto sg = symmetric_ctx(n);
    auto all = ball(*sg, -1).elements;
    auto subs = catalog::subgroups(*sg);
    for (std::size_t k = 0; k < subs.size(); ++k)
      targets.push_back({"S" + std::to_string(n) + " subgroup " + std::to_string(k) + " (order " +
                             std::to_string(subs[k].size()) + ")",
                         sg, make_finite_subgroup(sg, subs[k]), all});
  }
  targets.push_back({"2Z in Z", integers_ctx(), multiples_subgroup(2), ball(*integers_ctx(), radius).elements});
  S min_slack(1);
  std::size_t idx = 0;
  nlohmann::json per_target = nlohmann::json::object();
  for (const auto& t : targets) {
    std::size_t fails = 0;
    for (std::size_t i = 0; i < cfg.trials; ++i, ++idx) {
      const auto seed = trial_seed(cfg.seed, idx);
      std::mt19937_64 rng(seed);
      auto m = random_prob<S>(t.g, t.pool, rng, 6);
      auto r = convolution_bound_check(m, t.h);
      // Second route: the double sum over pairs of atoms.
      S lhs(0);
      for (const auto& [x, a] : m.mass)
        for (const auto& [y, b] : m.mass)
          if (t.h.contains(t.g->multiply(t.g->inverse(x), y))) lhs += a * b;
      bool agree = ArithTraits<S>::abs(lhs - r.lhs) <= ArithTraits<S>::tolerance();
      bool ok = r.ok && agree;
      if (r.lhs - r.rhs < min_slack) min_slack = r.lhs - r.rhs;
      fails += !ok;
      rep.record(ok, seed,
                 {{"target", t.name}, {"lhs", ArithTraits<S>::to_string(r.lhs)}, {"rhs", ArithTraits<S>::to_string(r.rhs)},
                  {"double_sum_agrees", agree}});
    }
    per_target[t.name] = {{"trials", cfg.trials}, {"failed", fails}};
  }
  rep.stats["targets"] = per_target;
  rep.stats["min_slack"] = scalar_json(min_slack);
  return rep;
}

template <typename S>
SuiteReport suite_stationary(const VerifyConfig& cfg) {
  SuiteReport rep;
  rep.anchor = "stationarity transfer: n(H) = 1 and ||n*m - n||_1 <= eps imply m(H) >= 1 - eps";
  rep.tolerances = tolerance_json<S>();
  rep.tolerances["eps"] = "the smaller of the two observed defects";
  static GroupCtx s4 = symmetric_ctx(4);
  static auto subs = catalog::subgroups(*s4);
  static auto s4_all = ball(*s4, -1).elements;
  static GroupCtx lamp = catalog::lamplighter();
  static auto lamp_pool = ball(*lamp, 4).elements;
  std::vector<Elt> lamp_h;
  for (const auto& x : lamp_pool)
    if (x.data[0] == 0) lamp_h.push_back(x);
  auto lamps = predicate_subgroup([](const Elt& x) { return x.data[0] == 0; }, "lamp subgroup");
  std::size_t hyp = 0;
  S min_slack(2);
  for (std::size_t i = 0; i < cfg.trials; ++i) {
    const auto seed = trial_seed(cfg.seed, i);
    std::mt19937_64 rng(seed);
    GroupCtx g;
    Subgroup h;
    std::vector<Elt> inside, pool;
    if (i % 2 == 0) {
      const auto& e = subs[rng() % subs.size()];
      g = s4;
      h = make_finite_subgroup(s4, e);
      inside = e;
      pool = s4_all;
    } else {
      g = lamp;
      h = lamps;
      inside = lamp_h;
      pool = lamp_pool;
    }
    auto n = random_prob<S>(g, inside, rng, 6);
    // m mixes mass inside H with a small outside part.
    auto m_in = random_prob<S>(g, inside, rng, 4);
    auto m_out = random_prob<S>(g, pool, rng, 3);
    const S w = ArithTraits<S>::from_ratio(1 + static_cast<long>(rng() % 8), 8);
    ProbVec<S> m{g, {}};
    for (const auto& [x, a] : m_in.mass) m.add(x, w * a);
    for (const auto& [x, a] : m_out.mass) m.add(x, (S(1) - w) * a);
    S d1 = l1_distance(convolve(n, m).mass, n.mass), d2 = l1_distance(convolve(m, n).mass, n.mass);
    S eps = d1 < d2 ? d1 : d2;
    auto r = stationarity_transfer_check(n, m, h, eps);
    hyp += r.hypothesis;
    S slack = r.m_mass - (S(1) - eps);
    if (slack < min_slack) min_slack = slack;
    rep.record(r.ok && r.sharp_ok && r.hypothesis, seed,
               {{"m_mass", ArithTraits<S>::to_string(r.m_mass)}, {"eps", ArithTraits<S>::to_string(eps)},
                {"sharp_ok", r.sharp_ok}});
  }
  rep.stats["hypothesis_trials"] = hyp;
  rep.stats["min_slack"] = scalar_json(min_slack);
  return rep;
}

template <typename S>
SuiteReport suite_location(const VerifyConfig& cfg) {
  SuiteReport rep;
  const S r = ArithTraits<S>::from_ratio(3, 4);
  rep.anchor = "location inequality: p((X n pi^-1 Y_r) \\ C(h)) <= ||p - h p h^-1||_1 / (2r - 1)";
  rep.tolerances = tolerance_json<S>();
  rep.tolerances["r"] = "3/4";
  static GroupCtx lamp = catalog::lamplighter();
  static auto lamp_pool = ball(*lamp, 4).elements;
  static GroupCtx fp = catalog::z2_free_z3();
  static auto fp_pool = ball(*fp, 4).elements;
  auto lamps = predicate_subgroup([](const Elt& x) { return x.data[0] == 0; }, "lamp subgroup");
  auto comm = predicate_subgroup([](const Elt& x) { return z2z3_abelian(x) == Elt{{0, 0}}; }, "commutator subgroup");
  std::vector<Elt> lamp_h, comm_h;
  for (const auto& x : lamp_pool)
    if (x.data[0] == 0) lamp_h.push_back(x);
  for (const auto& x : fp_pool)
    if (comm.contains(x)) comm_h.push_back(x);
  S max_ratio(0);
  for (std::size_t i = 0; i < cfg.trials; ++i) {
    const auto seed = trial_seed(cfg.seed, i);
    std::mt19937_64 rng(seed);
    const bool first = i % 2 == 0;
    const GroupCtx& g = first ? lamp : fp;
    const auto& pool = first ? lamp_pool : fp_pool;
    const auto& hs = first ? lamp_h : comm_h;
    auto p = random_prob<S>(g, pool, rng, 6);
    auto h = hs[rng() % hs.size()];
    auto rr = location_experiment(p, g->generators(), first ? lamps : comm, h, r);
    bool ok = rr.ok && rr.diagonal_bound_ok && rr.threshold_bound_ok && rr.argmax_identity_ok;
    if (rr.rhs != S(0) && max_ratio < rr.lhs / rr.rhs) max_ratio = rr.lhs / rr.rhs;
    rep.record(ok, seed,
               {{"group", first ? "lamplighter" : "Z/2*Z/3"}, {"lhs", ArithTraits<S>::to_string(rr.lhs)},
                {"rhs", ArithTraits<S>::to_string(rr.rhs)}});
  }
  rep.stats["max_lhs_over_rhs"] = scalar_json(max_ratio);
  return rep;
}

inline std::vector<std::pair<std::string, GroupCtx>> named_spec_or(const VerifyConfig& cfg,
                                                                 std::vector<std::pair<std::string, GroupCtx>> dflt) {
  if (!cfg.spec) return dflt;
  const auto& j = *cfg.spec;
  return {{j.value("name", spec_kind(j, "$")), parse_group_spec(j)}};
}

inline SuiteReport suite_amine(const VerifyConfig& cfg) {
  SuiteReport rep;
  rep.anchor = "four-family partition of the amalgam minus H with coverage and triple disjointness";
  rep.tolerances = {{"comparison", "exact set membership"}};
  const int radius = cfg.radius.value_or(8);
  rep.params["radius"] = radius;
  auto groups = named_spec_or(cfg, {{"Z/2*Z/3", catalog::psl2z_amalgam()}, {"Z/4*_{Z/2}Z/6", catalog::sl2z_amalgam()}});
  nlohmann::json per = nlohmann::json::object();
  for (std::size_t i = 0; i < groups.size(); ++i) {
    auto am = std::dynamic_pointer_cast<const AmalgamGroup>(groups[i].second);
    if (!am) throw Error(ErrorCode::schema, "amine needs an amalgam spec");
    auto r = amine_partition(am, radius, cfg.cap);
    nlohmann::json d{{"elements", r.elements},
                     {"interior", r.interior},
                     {"swapped", r.swapped},
                     {"partition_ok", r.partition_ok},
                     {"coverage_ok", r.coverage_ok},
                     {"disjoint_ok", r.disjoint_ok},
                     {"family_overlaps", r.family_overlaps},
                     {"unclassified", r.unclassified},
                     {"uncovered", r.uncovered},
                     {"collisions", r.collisions},
                     {"family_sizes", r.family_sizes},
                     {"a", am->elt_to_json(r.a)},
                     {"b1", am->elt_to_json(r.b1)},
                     {"b2", am->elt_to_json(r.b2)}};
    per[groups[i].first] = d;
    rep.tally(r.ok(), i, d);
  }
  rep.stats["groups"] = per;
  return rep;
}

inline SuiteReport suite_crossing(const VerifyConfig& cfg) {
  SuiteReport rep;
  rep.anchor = "interior hyperplane crossing equals the edge relation of the graph";
  rep.tolerances = {{"comparison", "exact"}};
  const int radius = cfg.radius.value_or(4);
  const int max_n = cfg.vertices.value_or(5);
  rep.params = {{"radius", radius}, {"max_vertices", max_n}, {"orders", {2, 3}}, {"exhaustive", true}};
  std::size_t classes = 0, pairs = 0;
  for (int n = 1; n <= max_n; ++n)
    for (const auto& g : nonisomorphic_graphs(n))
      for (Mask om = 0; om < (Mask{1} << n); ++om) {
        std::vector<std::int64_t> orders(n);
        for (int v = 0; v < n; ++v) orders[v] = ((om >> v) & 1) ? 3 : 2;
        auto b = build_x_gamma_ball(catalog::cyclic_graph_product(g, orders), radius, cfg.cap);
        auto hs = hyperplane_classes(b);
        bool ok = true;
        for (int v = 0; v < n && ok; ++v)
          for (int w = v + 1; w < n && ok; ++w) {
            auto hv = hs.base_class(b, v), hw = hs.base_class(b, w);
            ok = hv && hw && hs.crosses(*hv, *hw) == g.adjacent(v, w);
            ++pairs;
          }
        for (const auto& h : hs.classes)
          for (int k : h.crossing) ok = ok && h.vlabel != hs.classes[k].vlabel && g.adjacent(h.vlabel, hs.classes[k].vlabel);
        classes += hs.classes.size();
        rep.tally(ok, rep.passed + rep.failed, {{"graph", g.to_json()}, {"orders", orders}});
      }
  rep.stats["hyperplane_classes"] = classes;
  rep.stats["base_pairs"] = pairs;
  return rep;
}

inline SuiteReport suite_subsets3(const VerifyConfig& cfg) {
  SuiteReport rep;
  rep.anchor = "every non-join graph on at least 3 vertices has 3 vertices spanning at most one edge";
  rep.tolerances = {{"comparison", "exact"}};
  const int max_n = cfg.vertices.value_or(7);
  rep.params = {{"min_vertices", 3}, {"max_vertices", max_n}, {"labeled", true}, {"exhaustive", true}};
  std::size_t non_join = 0, joins = 0;
  nlohmann::json per = nlohmann::json::object();
  for (int n = 3; n <= max_n; ++n) {
    std::size_t fails = 0, count = 0;
    for (Mask code = 0; code < (Mask{1} << (n * (n - 1) / 2)); ++code) {
      auto g = graph_from_code(n, code);
      auto w = three_vertex_witness(g);
      if (w.is_join) {
        ++joins;
        continue;
      }
      ++non_join;
      ++count;
      bool ok = w.subset.has_value() && popcount(*w.subset) == 3;
      if (ok) {
        auto m = mask_members(*w.subset);
        int e = g.adjacent(m[0], m[1]) + g.adjacent(m[0], m[2]) + g.adjacent(m[1], m[2]);
        ok = e <= 1;
      }
      fails += !ok;
      rep.tally(ok, code, {{"graph", g.to_json()}});
    }
    per[std::to_string(n)] = {{"non_join", count}, {"failed", fails}};
  }
  rep.stats["per_size"] = per;
  rep.stats["joins_skipped"] = joins;
  return rep;
}

inline SuiteReport suite_isometry(const VerifyConfig& cfg) {
  SuiteReport rep;
  rep.anchor = "cyclic reduction translation length equals the minimal displacement in the Bass-Serre tree";
  rep.tolerances = {{"comparison", "exact integer"}};
  const int len = cfg.radius.value_or(6);
  rep.params = {{"word_length", len}};
  auto groups = named_spec_or(cfg, {{"Z/2*Z/3", catalog::psl2z_amalgam()},
                                    {"Z/4*_{Z/2}Z/6", catalog::sl2z_amalgam()},
                                    {"HNN(Z/4, {0,2}, id)", catalog::hnn_z4()}});
  nlohmann::json per = nlohmann::json::object();
  for (const auto& [name, G] : groups) {
    const int tree_r = G->kind() == "amalgam" ? 2 * len : len;
    auto t = bass_serre_ball(G, tree_r, cfg.cap);
    std::size_t count = 0, hyperbolic = 0, mismatches = 0;
    std::int64_t max_len = 0;
    for (const auto& g : ball(*G, len, cfg.cap).elements) {
      auto c = classify_isometry(g, t);
      bool ok = c.conclusive && c.brute_force && *c.brute_force == c.translation_length &&
                c.elliptic == (c.translation_length == 0);
      ++count;
      hyperbolic += !c.elliptic;
      max_len = std::max(max_len, c.translation_length);
      mismatches += !ok;
      rep.tally(ok, count - 1, {{"group", name}, {"element", G->elt_to_json(g)}});
    }
    per[name] = {{"tree_radius", tree_r}, {"elements", count}, {"hyperbolic", hyperbolic},
                 {"max_translation_length", max_len}, {"mismatches", mismatches}};
  }
  rep.stats["groups"] = per;
  return rep;
}

template <typename S>
SuiteReport suite_phi(const VerifyConfig& cfg) {
  SuiteReport rep;
  rep.anchor = "strict convexity of phi(x) = sum p(g) d(x, g x0)^2: phi(c) <= (phi(x) + phi(y))/2 - d(x,y)^2/4";
  rep.tolerances = tolerance_json<S>();
  rep.tolerances["distance_unit"] = "half edges";
  rep.params["pairs_per_tree"] = cfg.trials;
  nlohmann::json per = nlohmann::json::object();
  if (cfg.spec && cfg.spec->contains("tree")) {
    const auto& j = *cfg.spec;
    auto G = parse_group_spec(j["tree"], "$.tree");
    auto t = bass_serre_ball(G, j.value("radius", cfg.radius.value_or(6)), cfg.cap);
    auto p = ProbVec<S>::from_json(G, j);
    const auto seed = trial_seed(cfg.seed, 0);
    auto r = phi_minimizer<S>(p, t, j.value("base", 0), cfg.trials, seed);
    per["spec"] = {{"pairs_checked", r.pairs_checked}, {"pairs_failed", r.pairs_failed}, {"argmin", r.argmin}};
    rep.record(r.ok && r.pairs_checked > 0, seed, per["spec"]);
    rep.stats["trees"] = per;
    return rep;
  }
  std::vector<std::pair<std::string, GroupCtx>> groups{{"Z/2*Z/3", catalog::psl2z_amalgam()},
                                                      {"Z/4*_{Z/2}Z/6", catalog::sl2z_amalgam()},
                                                      {"HNN(Z/4, {0,2}, id)", catalog::hnn_z4()}};
  const int radius = cfg.radius.value_or(6);
  for (std::size_t i = 0; i < groups.size(); ++i) {
    const auto& [name, G] = groups[i];
    const auto seed = trial_seed(cfg.seed, i);
    std::mt19937_64 rng(seed);
    auto t = bass_serre_ball(G, radius, cfg.cap);
    ProbVec<S> p{G, {}};
    auto gens = G->generators();
    for (int k = 0; k < 4; ++k) {
      Elt e = G->identity();
      for (int s = 0; s < 2; ++s) e = G->multiply(e, gens[rng() % gens.size()]);
      p.add(e, ArithTraits<S>::from_ratio(1, 4));
    }
    auto r = phi_minimizer<S>(p, t, 0, cfg.trials, splitmix64(seed));
    nlohmann::json d{{"tree_radius", radius},
                     {"pairs_checked", r.pairs_checked},
                     {"pairs_failed", r.pairs_failed},
                     {"argmin", r.argmin}};
    per[name] = d;
    rep.record(r.ok && r.pairs_checked == cfg.trials, seed, d);
  }
  rep.stats["trees"] = per;
  return rep;
}

template <typename S>
SuiteReport run_suite_arith(const VerifyConfig& cfg) {
  const auto& s = cfg.suite;
  if (s == "tildep") return suite_tildep<S>(cfg);
  if (s == "convcomp") return suite_convcomp<S>(cfg);
  if (s == "stationary") return suite_stationary<S>(cfg);
  if (s == "location") return suite_location<S>(cfg);
  if (s == "phi") return suite_phi<S>(cfg);
  if (s == "amine") return suite_amine(cfg);
  if (s == "crossing") return suite_crossing(cfg);
  if (s == "subsets3") return suite_subsets3(cfg);
  if (s == "isometry") return suite_isometry(cfg);
  throw Error(ErrorCode::unknown_suite, "unknown suite '" + s + "'", "verify");
}

}  // namespace verify_detail

inline SuiteReport run_suite(const VerifyConfig& cfg) {
  SuiteReport rep = cfg.exact ? verify_detail::run_suite_arith<Rational>(cfg) : verify_detail::run_suite_arith<double>(cfg);
  rep.suite = cfg.suite;
  rep.master_seed = cfg.seed;
  rep.arith = cfg.exact ? "exact" : "float";
  rep.params["trials_requested"] = cfg.trials;
  if (cfg.radius) rep.params["radius"] = *cfg.radius;
  if (cfg.vertices) rep.params["max_vertices"] = *cfg.vertices;
  return rep;
}

}  // namespace inam

#endif  // INAM_VERIFY_HPP_
