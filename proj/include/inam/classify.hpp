#ifndef INAM_CLASSIFY_HPP_
#define INAM_CLASSIFY_HPP_

#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "spec_json.hpp"

namespace inam {

enum class Tri { no = 0, yes = 1, unknown = 2 };

inline Tri tri_of(bool b) { return b ? Tri::yes : Tri::no; }
inline Tri tri_not(Tri a) { return a == Tri::unknown ? a : tri_of(a == Tri::no); }
inline Tri tri_and(Tri a, Tri b) {
  if (a == Tri::no || b == Tri::no) return Tri::no;
  if (a == Tri::yes && b == Tri::yes) return Tri::yes;
  return Tri::unknown;
}
inline Tri tri_or(Tri a, Tri b) { return tri_not(tri_and(tri_not(a), tri_not(b))); }

inline const char* tri_name(Tri t) {
  switch (t) {
    case Tri::no: return "false";
    case Tri::yes: return "true";
    case Tri::unknown: return "unknown";
  }
  return "unknown";
}

inline nlohmann::json tri_to_json(Tri t) {
  if (t == Tri::unknown) return nullptr;
  return t == Tri::yes;
}

// Assumptions are keyed "<slot>.<fact>" for component groups and by a
// bare hypothesis name for the composite itself.
using Assumptions = std::map<std::string, bool>;

inline Assumptions sub_assumptions(const Assumptions& as, const std::string& slot) {
  Assumptions out;
  const std::string pre = slot + ".";
  for (const auto& [k, v] : as)
    if (k.compare(0, pre.size(), pre) == 0) out[k.substr(pre.size())] = v;
  return out;
}

inline Assumptions parse_assumptions(const nlohmann::json& j, const std::string& where) {
  Assumptions out;
  if (j.is_null()) return out;
  if (!j.is_object()) throw Error(ErrorCode::schema, "assume must be an object", where);
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (!it.value().is_boolean()) throw Error(ErrorCode::schema, "assumptions are booleans", where + "." + it.key());
    out[it.key()] = it.value().get<bool>();
  }
  return out;
}

// "key=value" with value in true/false/yes/no/1/0.
inline std::pair<std::string, bool> parse_assume_arg(const std::string& s) {
  auto eq = s.find('=');
  if (eq == std::string::npos || eq == 0) throw Error(ErrorCode::schema, "expected key=value", s);
  std::string k = s.substr(0, eq), v = s.substr(eq + 1);
  if (v == "true" || v == "yes" || v == "1") return {k, true};
  if (v == "false" || v == "no" || v == "0") return {k, false};
  throw Error(ErrorCode::schema, "assumption value must be true or false", s);
}

// Combines a derived value with an optional assumption; a definite
// derivation contradicted by an assumption is an error.
inline Tri resolve(Tri derived, const Assumptions& as, const std::string& key, const std::string& where) {
  auto it = as.find(key);
  if (it == as.end()) return derived;
  if (derived != Tri::unknown && derived != tri_of(it->second))
    throw Error(ErrorCode::schema, "assumption " + key + " contradicts the derived value " + tri_name(derived), where);
  return tri_of(it->second);
}

struct GroupFacts {
  std::string description;
  std::optional<std::uint64_t> order;
  Tri finite = Tri::unknown;
  Tri inner_amenable = Tri::unknown;
  Tri amenable = Tri::unknown;
  Tri abelian = Tri::unknown;
  Tri order_two = Tri::unknown;

  bool trivial() const { return order && *order == 1; }
  Tri is_order_two() const {
    if (order) return tri_of(*order == 2);
    if (finite == Tri::no) return Tri::no;
    return order_two;
  }

  nlohmann::json to_json() const {
    nlohmann::json j;
    j["description"] = description;
    j["order"] = order ? nlohmann::json(*order) : nlohmann::json(finite == Tri::no ? "infinite" : "unknown");
    j["finite"] = tri_to_json(finite);
    j["inner_amenable"] = tri_to_json(inner_amenable);
    j["amenable"] = tri_to_json(amenable);
    j["abelian"] = tri_to_json(abelian);
    return j;
  }
};

// Applies the automatic rules: finite groups carry no atomless mean and are
// amenable; infinite abelian groups are inner amenable.
inline void settle_facts(GroupFacts& f, const std::string& where) {
  auto set = [&](Tri& slot, Tri v, const char* what) {
    if (slot != Tri::unknown && slot != v)
      throw Error(ErrorCode::schema, std::string("annotation contradicts derived fact: ") + what, where);
    slot = v;
  };
  if (f.order_two == Tri::yes && !f.order) f.order = 2;
  if (f.order) set(f.order_two, tri_of(*f.order == 2), "order_two");
  if (f.order) set(f.finite, Tri::yes, "finite");
  if (f.order && *f.order == 0) throw Error(ErrorCode::schema, "order must be positive", where);
  if (f.finite == Tri::no) set(f.order_two, Tri::no, "order_two");
  if (f.finite == Tri::yes) {
    set(f.inner_amenable, Tri::no, "finite groups are not inner amenable");
    set(f.amenable, Tri::yes, "finite groups are amenable");
  }
  if (f.finite == Tri::no && f.abelian == Tri::yes) {
    set(f.inner_amenable, Tri::yes, "infinite abelian groups are inner amenable");
    set(f.amenable, Tri::yes, "abelian groups are amenable");
  }
  if (f.order && *f.order == 1 && f.abelian == Tri::unknown) f.abelian = Tri::yes;
}

inline GroupFacts facts_of_basic(const BasicGroup& g) {
  GroupFacts f;
  f.description = g.describe();
  if (g.finite()) f.order = static_cast<std::uint64_t>(g.size());
  f.finite = tri_of(g.finite());
  f.abelian = tri_of(g.abelian());
  settle_facts(f, "");
  return f;
}

enum class Outcome { inner_amenable, not_inner_amenable, conditional };

inline const char* outcome_name(Outcome o) {
  switch (o) {
    case Outcome::inner_amenable: return "InnerAmenable";
    case Outcome::not_inner_amenable: return "NotInnerAmenable";
    case Outcome::conditional: return "ConditionalOn";
  }
  return "";
}

struct Verdict {
  Outcome result = Outcome::conditional;
  nlohmann::json witness = nlohmann::json::object();
  std::string provenance;
  std::vector<std::string> unresolved;
  std::string explanation;

  Tri tri() const {
    if (result == Outcome::inner_amenable) return Tri::yes;
    if (result == Outcome::not_inner_amenable) return Tri::no;
    return Tri::unknown;
  }

  nlohmann::json to_json() const {
    nlohmann::json j;
    j["schema"] = "inam.verdict/1";
    j["result"] = outcome_name(result);
    j["provenance"] = provenance;
    j["witness"] = witness;
    j["unresolved"] = unresolved;
    j["explanation"] = explanation;
    return j;
  }
};

inline Verdict make_verdict(Outcome r, std::string prov, nlohmann::json witness, std::string why,
                            std::vector<std::string> unresolved = {}) {
  Verdict v;
  v.result = r;
  v.provenance = std::move(prov);
  v.witness = std::move(witness);
  v.explanation = std::move(why);
  v.unresolved = std::move(unresolved);
  if ((r == Outcome::conditional) != !v.unresolved.empty())
    throw std::logic_error("unresolved list must be nonempty exactly for ConditionalOn");
  return v;
}

inline std::string join_strings(const std::vector<std::string>& xs, const std::string& sep) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) out += (i ? sep : "") + xs[i];
  return out;
}

inline void add_unique(std::vector<std::string>& xs, const std::string& s) {
  if (std::find(xs.begin(), xs.end(), s) == xs.end()) xs.push_back(s);
}

inline Verdict classify_spec(const nlohmann::json& j, const Assumptions& as, const std::string& where = "$");
inline GroupFacts facts_from_spec(const nlohmann::json& j, const Assumptions& as, const std::string& where);

// ---------------------------------------------------------------------------
// Direct products.

inline Verdict product_reduction(const std::vector<Verdict>& factors, const std::vector<std::string>& names) {
  if (factors.empty()) throw Error(ErrorCode::schema, "product needs at least one factor");
  std::vector<std::string> open;
  for (std::size_t i = 0; i < factors.size(); ++i) {
    if (factors[i].result == Outcome::inner_amenable)
      return make_verdict(Outcome::inner_amenable, "product.factor",
                          {{"factor", names[i]}, {"factor_provenance", factors[i].provenance}},
                          "factor " + names[i] + " is inner amenable, hence so is the product");
    if (factors[i].result == Outcome::conditional)
      for (const auto& u : factors[i].unresolved) add_unique(open, names[i] + "." + u);
  }
  if (open.empty())
    return make_verdict(Outcome::not_inner_amenable, "product.all-factors", {{"factors", names}},
                        "no factor is inner amenable, hence neither is the product");
  return make_verdict(Outcome::conditional, "product.open-factor", {{"factors", names}},
                      "no factor is known to be inner amenable and some are undecided", open);
}

// ---------------------------------------------------------------------------
// Graph products.

inline Verdict classify_graph_product(const SimpGraph& g, const std::vector<GroupFacts>& vf) {
  if (static_cast<int>(vf.size()) != g.size()) throw Error(ErrorCode::schema, "one annotation per vertex");
  if (g.size() == 0) throw Error(ErrorCode::trivial_group, "empty graph gives the trivial group");
  for (int v = 0; v < g.size(); ++v)
    if (vf[v].trivial()) throw Error(ErrorCode::trivial_group, "vertex group is trivial", "vertex_groups." + g.name(v));
  const Mask all = g.all();
  std::vector<std::string> open, why_not;
  // Clause (a).
  for (int v = 0; v < g.size(); ++v) {
    if (g.closed_nbhd(v) != all) continue;
    Tri t = vf[v].inner_amenable;
    if (t == Tri::yes)
      return make_verdict(Outcome::inner_amenable, "graph-product.clause-a", {{"clause", "a"}, {"vertex", g.name(v)}},
                          "N(" + g.name(v) + ") is every vertex and G_" + g.name(v) +
                              " is inner amenable, so it is a direct factor");
    if (t == Tri::unknown) add_unique(open, g.name(v) + ".inner_amenable");
    else why_not.push_back("G_" + g.name(v) + " is central but not inner amenable");
  }
  // Clause (b).
  for (int a = 0; a < g.size(); ++a)
    for (int b = a + 1; b < g.size(); ++b) {
      if (g.closed_nbhd(a) != (all & ~bit(b)) || g.closed_nbhd(b) != (all & ~bit(a))) continue;
      Tri t = tri_and(vf[a].is_order_two(), vf[b].is_order_two());
      if (t == Tri::yes)
        return make_verdict(Outcome::inner_amenable, "graph-product.clause-b",
                            {{"clause", "b"}, {"pair", {g.name(a), g.name(b)}}},
                            "N(" + g.name(a) + ") and N(" + g.name(b) +
                                ") miss exactly each other and both groups are Z/2, giving a D-infinity factor");
      if (t == Tri::unknown) {
        if (vf[a].is_order_two() == Tri::unknown) add_unique(open, g.name(a) + ".order_two");
        if (vf[b].is_order_two() == Tri::unknown) add_unique(open, g.name(b) + ".order_two");
      } else {
        why_not.push_back("pair (" + g.name(a) + "," + g.name(b) + ") is not Z/2 x Z/2");
      }
    }
  if (!open.empty())
    return make_verdict(Outcome::conditional, "graph-product.open-annotation", nlohmann::json::object(),
                        "a clause is blocked only by unknown vertex annotations", open);
  std::string why = why_not.empty() ? "no vertex with N(v) = V and no pair with complementary neighbourhoods"
                                    : join_strings(why_not, "; ");
  return make_verdict(Outcome::not_inner_amenable, "graph-product.no-clause", {{"central_or_paired", why_not}}, why);
}

enum class RightAngledMode { raag, racg };

// Specialization to all-Z or all-Z/2 vertex groups, cross-checked against
// the general classifier.
inline Verdict classify_raag_racg(const SimpGraph& g, RightAngledMode mode) {
  if (g.size() == 0) throw Error(ErrorCode::trivial_group, "empty graph gives the trivial group");
  Verdict v;
  const Mask all = g.all();
  if (mode == RightAngledMode::raag) {
    auto comp = g.complement();
    int iso = -1;
    for (int x = 0; x < g.size() && iso < 0; ++x)
      if (comp.adj(x) == 0) iso = x;
    if (iso >= 0)
      v = make_verdict(Outcome::inner_amenable, "raag.central-vertex", {{"clause", "a"}, {"vertex", g.name(iso)}},
                       "vertex " + g.name(iso) + " is isolated in the complement graph, so Z splits off as a direct factor");
    else
      v = make_verdict(Outcome::not_inner_amenable, "raag.no-central-vertex", nlohmann::json::object(),
                       "the complement graph has no isolated vertex, so no Z direct factor");
  } else {
    std::optional<std::pair<int, int>> pair;
    for (int a = 0; a < g.size() && !pair; ++a)
      for (int b = a + 1; b < g.size() && !pair; ++b)
        if (g.closed_nbhd(a) == (all & ~bit(b)) && g.closed_nbhd(b) == (all & ~bit(a))) pair = std::make_pair(a, b);
    if (pair)
      v = make_verdict(Outcome::inner_amenable, "racg.clause-b",
                       {{"clause", "b"}, {"pair", {g.name(pair->first), g.name(pair->second)}}},
                       "vertices " + g.name(pair->first) + " and " + g.name(pair->second) +
                           " span a D-infinity direct factor");
    else
      v = make_verdict(Outcome::not_inner_amenable, "racg.no-pair", nlohmann::json::object(),
                       "no pair of vertices whose neighbourhoods miss exactly each other");
  }
  GroupFacts vg = facts_of_basic(mode == RightAngledMode::raag ? BasicGroup::integers() : BasicGroup::cyclic(2));
  auto general = classify_graph_product(g, std::vector<GroupFacts>(g.size(), vg));
  if (general.result != v.result) throw std::logic_error("right-angled classifier disagrees with graph-product rule");
  v.witness["cross_check"] = general.provenance;
  return v;
}

// ---------------------------------------------------------------------------
// Amalgams and HNN extensions.

struct AmalgamFacts {
  GroupFacts a, b, h;
  Tri nondegenerate = Tri::unknown;
  nlohmann::json indices = nlohmann::json::object();
};

struct HnnFacts {
  GroupFacts k, h;
  Tri ascending = Tri::unknown;
  nlohmann::json indices = nlohmann::json::object();
};

inline Verdict classify_amalgam(const AmalgamFacts& f, const Assumptions& as) {
  if (f.nondegenerate == Tri::no)
    return make_verdict(Outcome::conditional, "amalgam.degenerate", {{"indices", f.indices}},
                        "the amalgam is degenerate, so the characterization does not apply",
                        {"theorem_inapplicable:degenerate"});
  if (f.nondegenerate == Tri::unknown)
    return make_verdict(Outcome::conditional, "amalgam.nondegeneracy-unknown", {{"indices", f.indices}},
                        "the indices of H in A and B are not known", {"nondegenerate"});
  if (f.h.finite == Tri::yes)
    return make_verdict(Outcome::not_inner_amenable, "amalgam.finite-edge-group",
                        {{"indices", f.indices}, {"edge_group", f.h.to_json()}},
                        "every conjugation invariant mean concentrates on H, and an atomless mean cannot live on the "
                        "finite group H");
  const std::pair<const char*, const GroupFacts*> parts[] = {{"A", &f.a}, {"B", &f.b}, {"H", &f.h}};
  for (auto [name, gf] : parts)
    if (gf->inner_amenable == Tri::no)
      return make_verdict(Outcome::not_inner_amenable, "amalgam.inherited", {{"not_inner_amenable", name}},
                          std::string("inner amenability passes to A, B and H, but ") + name + " is not inner amenable");
  Tri m = resolve(Tri::unknown, as, "matching_means", "matching_means");
  if (m == Tri::yes)
    return make_verdict(Outcome::inner_amenable, "amalgam.matching-means", {{"affirmed", "matching_means"}},
                        "matching atomless conjugation invariant means on A and B concentrated on H were affirmed");
  if (m == Tri::no)
    return make_verdict(Outcome::not_inner_amenable, "amalgam.matching-means", {{"refuted", "matching_means"}},
                        "matching means on A and B concentrated on H were ruled out");
  return make_verdict(Outcome::conditional, "amalgam.matching-means", {{"indices", f.indices}},
                      "inner amenable exactly when A and B carry atomless conjugation invariant means concentrated on "
                      "H that agree on subsets of H",
                      {"matching_means"});
}

inline Verdict classify_hnn(const HnnFacts& f, const Assumptions& as) {
  if (f.ascending == Tri::yes)
    return make_verdict(Outcome::conditional, "hnn.ascending", {{"indices", f.indices}},
                        "the extension is ascending, so the characterization does not apply",
                        {"theorem_inapplicable:ascending"});
  if (f.ascending == Tri::unknown)
    return make_verdict(Outcome::conditional, "hnn.ascending-unknown", {{"indices", f.indices}},
                        "it is not known whether H or phi(H) equals K", {"non_ascending"});
  if (f.h.finite == Tri::yes)
    return make_verdict(Outcome::not_inner_amenable, "hnn.finite-edge-group",
                        {{"indices", f.indices}, {"edge_group", f.h.to_json()}},
                        "every conjugation invariant mean concentrates on H, which is finite");
  const std::pair<const char*, const GroupFacts*> parts[] = {{"K", &f.k}, {"H", &f.h}};
  for (auto [name, gf] : parts)
    if (gf->inner_amenable == Tri::no)
      return make_verdict(Outcome::not_inner_amenable, "hnn.inherited", {{"not_inner_amenable", name}},
                          std::string("inner amenability passes to K and H, but ") + name + " is not inner amenable");
  Tri m = resolve(Tri::unknown, as, "phi_compatible_mean", "phi_compatible_mean");
  if (m == Tri::yes)
    return make_verdict(Outcome::inner_amenable, "hnn.phi-compatible-mean", {{"affirmed", "phi_compatible_mean"}},
                        "an atomless conjugation invariant mean on K with m(H) = 1 and m(E) = m(phi(E)) was affirmed");
  if (m == Tri::no)
    return make_verdict(Outcome::not_inner_amenable, "hnn.phi-compatible-mean", {{"refuted", "phi_compatible_mean"}},
                        "a phi-compatible mean on K concentrated on H was ruled out");
  return make_verdict(Outcome::conditional, "hnn.phi-compatible-mean", {{"indices", f.indices}},
                      "inner amenable exactly when K carries an atomless conjugation invariant mean m with m(H) = 1 "
                      "and m(E) = m(phi(E)) for E in H",
                      {"phi_compatible_mean"});
}

// ---------------------------------------------------------------------------
// Wreath products.

struct ActionFacts {
  std::string description;
  Tri x_finite = Tri::unknown;
  Tri has_finite_orbit = Tri::unknown;
  Tri has_infinite_orbit = Tri::unknown;
  Tri infinitely_many_finite_orbits = Tri::unknown;
  Tri free = Tri::unknown;               // all stabilizers trivial
  Tri trivial = Tri::unknown;            // all stabilizers are K
  Tri common_infinite_stabilizer_abelian = Tri::unknown;  // K abelian, K_x = L infinite for every x
  Tri atomless_invariant_mean = Tri::unknown;
  Tri stabilizer_mean = Tri::unknown;
};

struct WreathFacts {
  GroupFacts h, k;
  ActionFacts act;
};

inline Verdict classify_wreath(const WreathFacts& f, const Assumptions& as) {
  if (f.h.trivial()) throw Error(ErrorCode::trivial_group, "lamp group H is trivial", "H");
  const auto& a = f.act;
  std::vector<std::string> open;

  // Clause (1): atomless K-invariant mean on X.
  Tri c1 = Tri::unknown;
  if (a.x_finite == Tri::yes) c1 = Tri::no;
  else if (tri_and(f.k.amenable, a.has_infinite_orbit) == Tri::yes) c1 = Tri::yes;
  else if (tri_and(tri_not(a.x_finite), a.infinitely_many_finite_orbits) == Tri::yes) c1 = Tri::yes;
  if (a.atomless_invariant_mean != Tri::unknown) {
    if (c1 != Tri::unknown && c1 != a.atomless_invariant_mean)
      throw Error(ErrorCode::schema, "action annotation contradicts derived clause (1)", "action");
    c1 = a.atomless_invariant_mean;
  }
  c1 = resolve(c1, as, "action.admits_atomless_invariant_mean", "action");
  if (c1 == Tri::yes) {
    std::string why = a.has_infinite_orbit == Tri::yes && f.k.amenable == Tri::yes
                          ? "K is amenable and has an infinite orbit on X, so X carries an atomless K-invariant mean"
                          : "X carries an atomless K-invariant mean";
    if (a.infinitely_many_finite_orbits == Tri::yes) why = "X has infinitely many finite orbits; a limit of orbit averages is an atomless K-invariant mean";
    return make_verdict(Outcome::inner_amenable, "wreath.clause-1", {{"clause", 1}, {"action", a.description}}, why);
  }

  // Clause (2): H inner amenable and a finite orbit.
  Tri c2 = tri_and(f.h.inner_amenable, a.has_finite_orbit);
  if (c2 == Tri::yes)
    return make_verdict(Outcome::inner_amenable, "wreath.clause-2", {{"clause", 2}, {"action", a.description}},
                        "H is inner amenable and K has a finite orbit on X");

  // Clause (3): atomless conjugation invariant mean on K with m(K_x) = 1.
  Tri c3 = Tri::unknown;
  if (f.k.finite == Tri::yes) c3 = Tri::no;
  else if (a.free == Tri::yes) c3 = Tri::no;
  else if (a.trivial == Tri::yes) c3 = f.k.inner_amenable;
  else if (a.common_infinite_stabilizer_abelian == Tri::yes) c3 = Tri::yes;
  if (a.stabilizer_mean != Tri::unknown) {
    if (c3 != Tri::unknown && c3 != a.stabilizer_mean)
      throw Error(ErrorCode::schema, "action annotation contradicts derived clause (3)", "action");
    c3 = a.stabilizer_mean;
  }
  c3 = resolve(c3, as, "action.stabilizer_mean", "action");
  if (c3 == Tri::yes)
    return make_verdict(Outcome::inner_amenable, "wreath.clause-3", {{"clause", 3}, {"action", a.description}},
                        "K carries an atomless conjugation invariant mean giving every stabilizer K_x full measure");

  if (c1 == Tri::no && c2 == Tri::no && c3 == Tri::no) {
    std::vector<std::string> why;
    why.push_back(a.x_finite == Tri::yes ? "(1) fails: X is finite" : "(1) fails");
    why.push_back(f.h.inner_amenable == Tri::no ? "(2) fails: H is not inner amenable"
                                                : "(2) fails: no finite orbit");
    why.push_back(f.k.finite == Tri::yes ? "(3) fails: K is finite"
                  : a.free == Tri::yes   ? "(3) fails: stabilizers are trivial"
                                         : "(3) fails");
    return make_verdict(Outcome::not_inner_amenable, "wreath.no-clause", {{"clauses", {1, 2, 3}}},
                        join_strings(why, "; "));
  }
  if (c1 == Tri::unknown) open.push_back("action.admits_atomless_invariant_mean");
  if (c2 == Tri::unknown) {
    if (f.h.inner_amenable == Tri::unknown) open.push_back("H.inner_amenable");
    if (a.has_finite_orbit == Tri::unknown) open.push_back("action.has_finite_orbit");
  }
  if (c3 == Tri::unknown) open.push_back("action.stabilizer_mean");
  return make_verdict(Outcome::conditional, "wreath.open-clause", {{"action", a.description}},
                      "no clause holds outright and some are undecided", open);
}

// ---------------------------------------------------------------------------
// Spec parsing.

namespace detail {

inline bool is_basic_kind(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string()) return false;
  auto k = j["kind"].get<std::string>();
  return k == "cyclic" || k == "integers" || k == "table";
}

inline Tri read_tri(const nlohmann::json& j, const char* key, const std::string& where) {
  if (!j.is_object() || !j.contains(key) || j[key].is_null()) return Tri::unknown;
  const auto& v = j[key];
  if (v.is_boolean()) return tri_of(v.get<bool>());
  if (v.is_string() && v.get<std::string>() == "unknown") return Tri::unknown;
  throw Error(ErrorCode::schema, std::string(key) + " must be true, false, null or \"unknown\"", where + "." + key);
}

// Index value: positive integer or "infinite"; nullopt if absent. 0 means infinite.
inline std::optional<std::int64_t> read_index(const nlohmann::json& j, const char* key, const std::string& where) {
  if (!j.contains(key) || j[key].is_null()) return std::nullopt;
  const auto& v = j[key];
  if (v.is_string() && v.get<std::string>() == "infinite") return 0;
  if (v.is_number_integer() && v.get<std::int64_t>() >= 1) return v.get<std::int64_t>();
  throw Error(ErrorCode::schema, "index must be a positive integer or \"infinite\"", where + "." + key);
}

inline nlohmann::json index_json(std::int64_t i) { return i == 0 ? nlohmann::json("infinite") : nlohmann::json(i); }

inline void apply_fact_overrides(GroupFacts& f, const nlohmann::json& ann, const Assumptions& as,
                                 const std::string& where) {
  auto merge = [&](Tri& slot, Tri v, const char* what) {
    if (v == Tri::unknown) return;
    if (slot != Tri::unknown && slot != v)
      throw Error(ErrorCode::schema, std::string("annotation contradicts derived fact: ") + what, where);
    slot = v;
  };
  if (ann.is_object()) {
    merge(f.finite, read_tri(ann, "finite", where), "finite");
    merge(f.inner_amenable, read_tri(ann, "inner_amenable", where), "inner_amenable");
    merge(f.amenable, read_tri(ann, "amenable", where), "amenable");
    merge(f.abelian, read_tri(ann, "abelian", where), "abelian");
    merge(f.order_two, read_tri(ann, "order_two", where), "order_two");
  }
  settle_facts(f, where);
  f.finite = resolve(f.finite, as, "finite", where);
  f.inner_amenable = resolve(f.inner_amenable, as, "inner_amenable", where);
  f.amenable = resolve(f.amenable, as, "amenable", where);
  f.abelian = resolve(f.abelian, as, "abelian", where);
  f.order_two = resolve(f.is_order_two(), as, "order_two", where);
  settle_facts(f, where);
}

inline std::vector<GroupFacts> vertex_facts(const SimpGraph& g, const nlohmann::json& vg, const Assumptions& as,
                                            const std::string& where) {
  std::vector<GroupFacts> out;
  for (int v = 0; v < g.size(); ++v) {
    std::string loc = where + ".vertex_groups." + g.name(v);
    const nlohmann::json* spec = nullptr;
    if (vg.is_object()) {
      if (!vg.contains(g.name(v))) throw Error(ErrorCode::schema, "missing vertex group", loc);
      spec = &vg[g.name(v)];
    } else if (vg.is_array() && static_cast<int>(vg.size()) == g.size()) {
      spec = &vg[v];
    } else {
      throw Error(ErrorCode::schema, "vertex_groups must map every vertex", where + ".vertex_groups");
    }
    out.push_back(facts_from_spec(*spec, sub_assumptions(as, g.name(v)), loc));
  }
  return out;
}

inline ActionFacts action_facts(const nlohmann::json& aj, const GroupFacts& k, const std::optional<BasicGroup>& kb,
                                const std::string& where) {
  ActionFacts a;
  if (aj.is_object() && aj.value("type", "") == "abstract") {
    a.description = aj.value("description", std::string("abstract"));
    if (aj.contains("points")) {
      const auto& p = aj["points"];
      if (p.is_string() && p.get<std::string>() == "infinite") a.x_finite = Tri::no;
      else if (p.is_number_integer() && p.get<std::int64_t>() >= 1) a.x_finite = Tri::yes;
      else throw Error(ErrorCode::schema, "points must be a positive integer or \"infinite\"", where + ".points");
    }
    a.has_finite_orbit = read_tri(aj, "has_finite_orbit", where);
    Tri all_inf = read_tri(aj, "all_orbits_infinite", where);
    if (all_inf == Tri::yes) {
      if (a.has_finite_orbit == Tri::yes) throw Error(ErrorCode::schema, "orbit annotations conflict", where);
      a.has_finite_orbit = Tri::no;
      a.has_infinite_orbit = Tri::yes;
      a.infinitely_many_finite_orbits = Tri::no;
      a.x_finite = Tri::no;
    } else if (all_inf == Tri::no && a.has_finite_orbit == Tri::unknown) {
      a.has_finite_orbit = Tri::yes;
    }
    if (a.x_finite == Tri::yes) {
      a.has_finite_orbit = Tri::yes;
      a.has_infinite_orbit = Tri::no;
      a.infinitely_many_finite_orbits = Tri::no;
    }
    if (k.finite == Tri::yes) {
      a.has_infinite_orbit = Tri::no;
      a.has_finite_orbit = Tri::yes;
      a.infinitely_many_finite_orbits = tri_not(a.x_finite);
    }
    a.free = read_tri(aj, "free", where);
    a.trivial = read_tri(aj, "trivial", where);
    a.atomless_invariant_mean = read_tri(aj, "admits_atomless_invariant_mean", where);
    a.stabilizer_mean = read_tri(aj, "stabilizer_mean", where);
    return a;
  }
  PointAction pa;
  if (!aj.is_null()) pa = parse_action(aj, where);
  a.description = pa.describe();
  switch (pa.type) {
    case PointAction::Type::regular:
      a.x_finite = k.finite;
      a.has_finite_orbit = k.finite;
      a.has_infinite_orbit = tri_not(k.finite);
      a.infinitely_many_finite_orbits = Tri::no;
      a.free = Tri::yes;
      a.trivial = k.order ? tri_of(*k.order == 1) : tri_not(k.finite);
      if (k.finite == Tri::no) a.trivial = Tri::no;
      break;
    case PointAction::Type::trivial:
      if (pa.points < 0) throw Error(ErrorCode::schema, "negative point count", where + ".points");
      a.x_finite = tri_of(pa.points > 0);
      a.has_finite_orbit = Tri::yes;
      a.has_infinite_orbit = Tri::no;
      a.infinitely_many_finite_orbits = tri_of(pa.points == 0);
      a.trivial = Tri::yes;
      a.free = k.order ? tri_of(*k.order == 1) : Tri::no;
      a.description = pa.points ? pa.describe() : "trivial(infinite)";
      break;
    case PointAction::Type::permutation: {
      if (!kb || !kb->finite()) throw Error(ErrorCode::schema, "permutation action needs a concrete finite K", where);
      // Validated by constructing the wreath product with a dummy lamp group.
      WreathGroup check(BasicGroup::cyclic(2), *kb, pa);
      const auto& act = check.action();
      const auto m = act.points;
      a.x_finite = Tri::yes;
      a.has_finite_orbit = Tri::yes;
      a.has_infinite_orbit = Tri::no;
      a.infinitely_many_finite_orbits = Tri::no;
      bool fr = true, tr = true;
      for (std::int64_t x = 0; x < m; ++x) {
        std::int64_t fixers = 0;
        for (std::int64_t g = 0; g < kb->size(); ++g) fixers += act.perm[g][x] == x;
        fr = fr && fixers == 1;
        tr = tr && fixers == kb->size();
      }
      a.free = tri_of(fr);
      a.trivial = tri_of(tr);
      break;
    }
    case PointAction::Type::translation_mod:
      if (!kb || kb->type() != BasicGroup::Type::integers || pa.points < 1)
        throw Error(ErrorCode::schema, "mod action needs K = Z and a positive modulus", where);
      a.x_finite = Tri::yes;
      a.has_finite_orbit = Tri::yes;
      a.has_infinite_orbit = Tri::no;
      a.infinitely_many_finite_orbits = Tri::no;
      a.free = Tri::no;
      a.trivial = tri_of(pa.points == 1);
      a.common_infinite_stabilizer_abelian = Tri::yes;
      break;
  }
  return a;
}

}  // namespace detail

inline AmalgamFacts amalgam_facts(const nlohmann::json& j, const Assumptions& as, const std::string& where) {
  AmalgamFacts f;
  const auto& aj = require_field(j, "A", where);
  const auto& bj = require_field(j, "B", where);
  nlohmann::json hj = j.contains("H") ? j["H"] : nlohmann::json{{"kind", "cyclic"}, {"order", 1}};
  f.a = facts_from_spec(aj, sub_assumptions(as, "A"), where + ".A");
  f.b = facts_from_spec(bj, sub_assumptions(as, "B"), where + ".B");
  f.h = facts_from_spec(hj, sub_assumptions(as, "H"), where + ".H");
  bool concrete = detail::is_basic_kind(aj) && detail::is_basic_kind(bj) && detail::is_basic_kind(hj) &&
                  f.a.finite == Tri::yes && f.b.finite == Tri::yes && f.h.finite == Tri::yes;
  if (concrete) {
    auto g = parse_amalgam(j, where);
    f.indices = {{"A", g->index(0)}, {"B", g->index(1)}};
    f.nondegenerate = tri_of(g->nondegenerate());
  } else {
    auto ia = detail::read_index(j, "index_A", where), ib = detail::read_index(j, "index_B", where);
    if (ia && ib) {
      auto ge = [](std::int64_t i, std::int64_t k) { return i == 0 || i >= k; };
      f.indices = {{"A", detail::index_json(*ia)}, {"B", detail::index_json(*ib)}};
      f.nondegenerate = tri_of(ge(*ia, 2) && ge(*ib, 2) && (ge(*ia, 3) || ge(*ib, 3)));
    }
    Tri given = detail::read_tri(j, "nondegenerate", where);
    if (given != Tri::unknown) {
      if (f.nondegenerate != Tri::unknown && f.nondegenerate != given)
        throw Error(ErrorCode::schema, "nondegenerate contradicts the indices", where);
      f.nondegenerate = given;
    }
  }
  f.nondegenerate = resolve(f.nondegenerate, as, "nondegenerate", where);
  return f;
}

inline HnnFacts hnn_facts(const nlohmann::json& j, const Assumptions& as, const std::string& where) {
  HnnFacts f;
  const auto& kj = require_field(j, "K", where);
  const auto& hj = require_field(j, "H", where);
  f.k = facts_from_spec(kj, sub_assumptions(as, "K"), where + ".K");
  if (hj.is_array()) {
    auto g = parse_hnn(j, where);
    f.h = GroupFacts{};
    f.h.description = "subgroup of order " + std::to_string(g->subgroup().size());
    f.h.order = g->subgroup().size();
    detail::apply_fact_overrides(f.h, nullptr, sub_assumptions(as, "H"), where + ".H");
    f.indices = {{"H", g->index_h()}, {"phi(H)", g->index_image()}};
    f.ascending = tri_of(g->ascending());
  } else {
    f.h = facts_from_spec(hj, sub_assumptions(as, "H"), where + ".H");
    auto ih = detail::read_index(j, "index_H", where), ip = detail::read_index(j, "index_phiH", where);
    if (ih && ip) {
      f.indices = {{"H", detail::index_json(*ih)}, {"phi(H)", detail::index_json(*ip)}};
      f.ascending = tri_of(*ih == 1 || *ip == 1);
    }
    Tri given = detail::read_tri(j, "ascending", where);
    if (given != Tri::unknown) {
      if (f.ascending != Tri::unknown && f.ascending != given)
        throw Error(ErrorCode::schema, "ascending contradicts the indices", where);
      f.ascending = given;
    }
  }
  f.ascending = tri_not(resolve(tri_not(f.ascending), as, "non_ascending", where));
  return f;
}

inline WreathFacts wreath_facts(const nlohmann::json& j, const Assumptions& as, const std::string& where) {
  WreathFacts f;
  const auto& hj = require_field(j, "H", where);
  const auto& kj = require_field(j, "K", where);
  f.h = facts_from_spec(hj, sub_assumptions(as, "H"), where + ".H");
  f.k = facts_from_spec(kj, sub_assumptions(as, "K"), where + ".K");
  if (f.h.trivial()) throw Error(ErrorCode::trivial_group, "lamp group H is trivial", where + ".H");
  std::optional<BasicGroup> kb;
  if (detail::is_basic_kind(kj)) kb = parse_basic_group(kj, where + ".K");
  f.act = detail::action_facts(j.contains("action") ? j["action"] : nlohmann::json(), f.k, kb, where + ".action");
  auto sub = sub_assumptions(as, "action");
  f.act.x_finite = resolve(f.act.x_finite, sub, "finite", where + ".action");
  f.act.has_finite_orbit = resolve(f.act.has_finite_orbit, sub, "has_finite_orbit", where + ".action");
  return f;
}

// Facts about a group given by a spec: computed for concrete groups,
// read for "abstract" ones, classified recursively for composites.
inline GroupFacts facts_from_spec(const nlohmann::json& j, const Assumptions& as, const std::string& where) {
  auto kind = spec_kind(j, where);
  GroupFacts f;
  const nlohmann::json ann = j.contains("annotations") ? j["annotations"] : nlohmann::json();
  if (kind == "cyclic" || kind == "integers" || kind == "table") {
    f = facts_of_basic(parse_basic_group(j, where));
  } else if (kind == "abstract") {
    f.description = j.value("name", std::string("abstract group"));
    if (j.contains("order") && !j["order"].is_null()) {
      const auto& o = j["order"];
      if (o.is_string() && o.get<std::string>() == "infinite") f.finite = Tri::no;
      else if (o.is_number_integer() && o.get<std::int64_t>() >= 1) f.order = o.get<std::uint64_t>();
      else throw Error(ErrorCode::schema, "order must be a positive integer, \"infinite\" or null", where + ".order");
    }
    detail::apply_fact_overrides(f, j, Assumptions{}, where);
  } else {
    Verdict v = classify_spec(j, as, where);
    f.inner_amenable = v.tri();
    f.description = kind;
    if (kind == "graph_product" || kind == "raag" || kind == "racg") {
      auto g = SimpGraph::from_json(require_field(j, "graph", where), where + ".graph");
      std::vector<GroupFacts> vf;
      if (kind == "graph_product") vf = detail::vertex_facts(g, require_field(j, "vertex_groups", where), as, where);
      else vf.assign(g.size(), facts_of_basic(kind == "raag" ? BasicGroup::integers() : BasicGroup::cyclic(2)));
      bool complete = true;
      for (int v2 = 0; v2 < g.size(); ++v2) complete = complete && g.closed_nbhd(v2) == g.all();
      Tri fin = Tri::yes, am = Tri::yes, ab = Tri::yes;
      std::uint64_t ord = 1;
      for (const auto& x : vf) {
        fin = tri_and(fin, x.finite);
        am = tri_and(am, x.amenable);
        ab = tri_and(ab, x.abelian);
        if (x.order) ord *= *x.order;
      }
      if (complete) {
        f.finite = fin;
        if (fin == Tri::yes) {
          bool all_known = true;
          for (const auto& x : vf) all_known = all_known && x.order.has_value();
          if (all_known) f.order = ord;
        }
        f.amenable = am;
        f.abelian = ab;
      } else {
        f.finite = Tri::no;
        // A non-edge {v, w} gives a retract G_v * G_w, amenable only for Z/2 * Z/2.
        for (int a = 0; a < g.size(); ++a)
          for (int b = a + 1; b < g.size(); ++b)
            if (!g.adjacent(a, b) && tri_or(tri_not(vf[a].is_order_two()), tri_not(vf[b].is_order_two())) == Tri::yes)
              f.amenable = Tri::no;
        f.abelian = Tri::no;
      }
    } else if (kind == "amalgam") {
      auto af = amalgam_facts(j, as, where);
      if (af.nondegenerate == Tri::yes) {
        f.finite = Tri::no;
        f.amenable = Tri::no;
        f.abelian = Tri::no;
      }
    } else if (kind == "hnn") {
      auto hf = hnn_facts(j, as, where);
      f.finite = Tri::no;
      if (hf.ascending == Tri::no) {
        f.amenable = Tri::no;
        f.abelian = Tri::no;
      }
    } else if (kind == "wreath") {
      auto wf = wreath_facts(j, as, where);
      f.finite = tri_and(tri_and(wf.h.finite, wf.k.finite), wf.act.x_finite);
      f.amenable = tri_and(wf.h.amenable, wf.k.amenable);
    } else if (kind == "product") {
      f.finite = Tri::yes;
      f.amenable = Tri::yes;
      f.abelian = Tri::yes;
      std::size_t i = 0;
      for (const auto& fj : require_field(j, "factors", where)) {
        auto slot = "factor" + std::to_string(i);
        auto x = facts_from_spec(fj, sub_assumptions(as, slot), where + ".factors[" + std::to_string(i) + "]");
        ++i;
        f.finite = tri_and(f.finite, x.finite);
        f.amenable = tri_and(f.amenable, x.amenable);
        f.abelian = tri_and(f.abelian, x.abelian);
      }
    }
  }
  detail::apply_fact_overrides(f, ann, as, where);
  return f;
}

inline Verdict verdict_from_facts(const GroupFacts& f) {
  if (f.inner_amenable == Tri::yes) {
    bool derived = f.finite == Tri::no && f.abelian == Tri::yes;
    return make_verdict(Outcome::inner_amenable, derived ? "abelian-infinite" : "annotation",
                        {{"facts", f.to_json()}},
                        derived ? "an infinite abelian group is inner amenable" : "inner amenability was annotated");
  }
  if (f.inner_amenable == Tri::no) {
    bool derived = f.finite == Tri::yes;
    return make_verdict(Outcome::not_inner_amenable, derived ? "finite-group" : "annotation", {{"facts", f.to_json()}},
                        derived ? "a finite group admits no atomless mean" : "non inner amenability was annotated");
  }
  return make_verdict(Outcome::conditional, "annotation", {{"facts", f.to_json()}},
                      "nothing is known about " + f.description, {"inner_amenable"});
}

namespace detail {

inline Verdict classify_dispatch(const nlohmann::json& j, const Assumptions& as, const std::string& where) {
  auto kind = spec_kind(j, where);
  if (kind == "graph_product") {
    auto g = SimpGraph::from_json(require_field(j, "graph", where), where + ".graph");
    return classify_graph_product(g, vertex_facts(g, require_field(j, "vertex_groups", where), as, where));
  }
  if (kind == "raag" || kind == "racg") {
    auto g = SimpGraph::from_json(require_field(j, "graph", where), where + ".graph");
    return classify_raag_racg(g, kind == "raag" ? RightAngledMode::raag : RightAngledMode::racg);
  }
  if (kind == "amalgam") return classify_amalgam(amalgam_facts(j, as, where), as);
  if (kind == "hnn") return classify_hnn(hnn_facts(j, as, where), as);
  if (kind == "wreath") return classify_wreath(wreath_facts(j, as, where), as);
  if (kind == "product") {
    const auto& fs = require_field(j, "factors", where);
    if (!fs.is_array() || fs.empty()) throw Error(ErrorCode::schema, "factors must be a nonempty array", where);
    std::vector<Verdict> vs;
    std::vector<std::string> names;
    for (std::size_t i = 0; i < fs.size(); ++i) {
      names.push_back("factor" + std::to_string(i));
      vs.push_back(classify_spec(fs[i], sub_assumptions(as, names.back()), where + ".factors[" + std::to_string(i) + "]"));
    }
    return product_reduction(vs, names);
  }
  if (kind == "cyclic" || kind == "integers" || kind == "table" || kind == "abstract")
    return verdict_from_facts(facts_from_spec(j, as, where));
  throw Error(ErrorCode::schema, "unknown kind " + kind, where + ".kind");
}

}  // namespace detail

// Classifies a group spec. An "assume" object inside the spec is merged
// under the caller's assumptions. The normal subgroup rule (an inner
// amenable normal subgroup with amenable quotient) is applied last.
inline Verdict classify_spec(const nlohmann::json& j, const Assumptions& as_in, const std::string& where) {
  Assumptions as = j.contains("assume") ? parse_assumptions(j["assume"], where + ".assume") : Assumptions{};
  for (const auto& [k, v] : as_in) as[k] = v;
  Verdict v = detail::classify_dispatch(j, as, where);
  // Annotations on the composite itself.
  if (j.contains("annotations")) {
    Tri ann = detail::read_tri(j["annotations"], "inner_amenable", where + ".annotations");
    if (ann != Tri::unknown) {
      if (v.tri() != Tri::unknown && v.tri() != ann)
        throw Error(ErrorCode::schema, "annotation contradicts the derived verdict", where + ".annotations");
      if (v.tri() == Tri::unknown)
        v = make_verdict(ann == Tri::yes ? Outcome::inner_amenable : Outcome::not_inner_amenable, "annotation",
                         {{"open", v.unresolved}}, "verdict annotated on the group");
    }
  }
  auto it = as.find("normal_ia_amenable_quotient");
  if (it != as.end() && it->second) {
    if (v.result == Outcome::not_inner_amenable)
      throw Error(ErrorCode::schema, "normal_ia_amenable_quotient contradicts the derived verdict " + v.provenance,
                  where);
    if (v.result == Outcome::conditional)
      v = make_verdict(Outcome::inner_amenable, "normal-subgroup.amenable-quotient",
                       {{"affirmed", "normal_ia_amenable_quotient"}, {"superseded", v.unresolved}},
                       "an inner amenable normal subgroup with amenable quotient was affirmed");
  }
  return v;
}

// CLI modes: graph-product, raag, racg, amalgam, hnn, wreath.
inline Verdict classify_mode(const std::string& mode, const nlohmann::json& j, const Assumptions& as) {
  nlohmann::json spec = j;
  std::string want = mode == "graph-product" ? "graph_product" : mode;
  static const std::set<std::string> modes{"graph_product", "raag", "racg", "amalgam", "hnn", "wreath"};
  if (!modes.count(want)) throw Error(ErrorCode::schema, "unknown classify mode " + mode);
  if (!spec.is_object()) throw Error(ErrorCode::schema, "spec must be an object");
  if (!spec.contains("kind")) spec["kind"] = want;
  std::string kind = spec_kind(spec, "$");
  if (want == "raag" || want == "racg") {
    if (kind == "graph_product") {
      auto g = SimpGraph::from_json(require_field(spec, "graph", "$"), "$.graph");
      auto vf = detail::vertex_facts(g, require_field(spec, "vertex_groups", "$"), as, "$");
      const auto& vg = spec["vertex_groups"];
      for (int v = 0; v < g.size(); ++v) {
        const auto& one = vg.is_object() ? vg[g.name(v)] : vg[v];
        bool ok = want == "raag" ? one.value("kind", "") == "integers" : vf[v].is_order_two() == Tri::yes;
        if (!ok) throw Error(ErrorCode::schema, "mixed vertex groups", "$.vertex_groups." + g.name(v));
      }
      spec.erase("vertex_groups");
      spec["kind"] = want;
      kind = want;
    }
  }
  if (kind != want) throw Error(ErrorCode::schema, "spec kind " + kind + " does not match mode " + mode, "$.kind");
  return classify_spec(spec, as);
}

}  // namespace inam

#endif  // INAM_CLASSIFY_HPP_
