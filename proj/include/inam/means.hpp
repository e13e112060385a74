#ifndef INAM_MEANS_HPP_
#define INAM_MEANS_HPP_

#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "group_ops.hpp"
#include "rational.hpp"

namespace inam {

template <typename K, typename S>
S l1_distance(const std::map<K, S>& a, const std::map<K, S>& b) {
  S d(0);
  auto ia = a.begin();
  auto ib = b.begin();
  while (ia != a.end() || ib != b.end()) {
    if (ib == b.end() || (ia != a.end() && ia->first < ib->first)) {
      d += ArithTraits<S>::abs(ia->second);
      ++ia;
    } else if (ia == a.end() || ib->first < ia->first) {
      d += ArithTraits<S>::abs(ib->second);
      ++ib;
    } else {
      d += ArithTraits<S>::abs(ia->second - ib->second);
      ++ia;
      ++ib;
    }
  }
  return d;
}

template <typename K, typename S>
S total_mass(const std::map<K, S>& a) {
  S t(0);
  for (const auto& [k, v] : a) t += v;
  return t;
}

// Finitely supported probability vector on canonical elements of one group.
template <typename S = Rational>
struct ProbVec {
  GroupCtx ctx;
  std::map<Elt, S> mass;

  S at(const Elt& g) const {
    auto it = mass.find(g);
    return it == mass.end() ? S(0) : it->second;
  }
  S total() const { return total_mass(mass); }
  std::size_t size() const { return mass.size(); }

  void add(const Elt& g, const S& v) {
    if (v == S(0)) return;
    auto& slot = mass[g];
    slot += v;
    if (slot == S(0)) mass.erase(g);
  }

  bool is_probability() const {
    for (const auto& [g, v] : mass)
      if (v < S(0)) return false;
    return ArithTraits<S>::abs(total() - S(1)) <= ArithTraits<S>::tolerance();
  }

  static ProbVec point(GroupCtx ctx, const Elt& g) {
    ProbVec p{std::move(ctx), {}};
    p.mass[g] = S(1);
    return p;
  }

  static ProbVec uniform(GroupCtx ctx, const std::vector<Elt>& support) {
    ProbVec p{std::move(ctx), {}};
    std::set<Elt> s(support.begin(), support.end());
    if (s.empty()) throw Error(ErrorCode::zero_mass, "uniform vector on an empty set");
    const S w = ArithTraits<S>::from_ratio(1, static_cast<long>(s.size()));
    for (const auto& g : s) p.mass[g] = w;
    return p;
  }

  nlohmann::json to_json() const {
    nlohmann::json j;
    j["schema"] = "inam.probvec/1";
    j["arith"] = ArithTraits<S>::tag;
    auto entries = nlohmann::json::array();
    for (const auto& [g, v] : mass) entries.push_back({{"element", ctx->elt_to_json(g)}, {"mass", ArithTraits<S>::to_json(v)}});
    j["entries"] = entries;
    return j;
  }

  static ProbVec from_json(GroupCtx ctx, const nlohmann::json& j) {
    ProbVec p{ctx, {}};
    const auto& entries = j.is_array() ? j : require_entries(j);
    for (std::size_t i = 0; i < entries.size(); ++i) {
      const auto& e = entries[i];
      if (!e.is_object() || !e.contains("element") || !e.contains("mass"))
        throw Error(ErrorCode::schema, "entry needs element and mass", "entries[" + std::to_string(i) + "]");
      S v = ArithTraits<S>::from_json(e["mass"]);
      if (v < S(0)) throw Error(ErrorCode::schema, "negative mass", "entries[" + std::to_string(i) + "]");
      p.add(ctx->element_from_json(e["element"]), v);
    }
    if (!p.is_probability()) throw Error(ErrorCode::schema, "masses do not sum to 1", "entries");
    return p;
  }

 private:
  static const nlohmann::json& require_entries(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("entries") || !j["entries"].is_array())
      throw Error(ErrorCode::schema, "probability vector needs an entries array");
    return j["entries"];
  }
};

template <typename S>
void require_same_context(const ProbVec<S>& a, const ProbVec<S>& b) {
  if (a.ctx != b.ctx) throw Error(ErrorCode::mixed_contexts, "vectors live over different group contexts");
}

// (m*n)(x) = sum_g m(g) n(g^-1 x)
template <typename S>
ProbVec<S> convolve(const ProbVec<S>& m, const ProbVec<S>& n) {
  require_same_context(m, n);
  ProbVec<S> out{m.ctx, {}};
  for (const auto& [g, a] : m.mass)
    for (const auto& [h, b] : n.mass) out.add(m.ctx->multiply(g, h), a * b);
  return out;
}

template <typename S>
ProbVec<S> reverse(const ProbVec<S>& m) {
  ProbVec<S> out{m.ctx, {}};
  for (const auto& [g, a] : m.mass) out.add(m.ctx->inverse(g), a);
  return out;
}

// Pushforward along f; f returning nullopt on the support is an error.
template <typename S, typename F>
auto pushforward(const ProbVec<S>& m, F f) {
  using Opt = std::invoke_result_t<F, const Elt&>;
  using Label = typename Opt::value_type;
  std::map<Label, S> out;
  for (const auto& [g, a] : m.mass) {
    auto l = f(g);
    if (!l) throw Error(ErrorCode::partial_map, "map undefined at " + m.ctx->to_string(g));
    out[*l] += a;
  }
  return out;
}

// Pushforward along a group-valued map (stays a ProbVec).
template <typename S>
ProbVec<S> push_elements(const ProbVec<S>& m, const std::function<Elt(const Elt&)>& f) {
  ProbVec<S> out{m.ctx, {}};
  for (const auto& [g, a] : m.mass) out.add(f(g), a);
  return out;
}

template <typename S>
ProbVec<S> conjugate_vector(const ProbVec<S>& m, const Elt& k) {
  auto ki = m.ctx->inverse(k);
  return push_elements<S>(m, [&](const Elt& x) { return m.ctx->multiply(m.ctx->multiply(k, x), ki); });
}

template <typename S>
S mass_of(const ProbVec<S>& m, const std::function<bool(const Elt&)>& a) {
  S t(0);
  for (const auto& [g, v] : m.mass)
    if (a(g)) t += v;
  return t;
}

template <typename S>
ProbVec<S> normalized_restriction(const ProbVec<S>& m, const std::function<bool(const Elt&)>& a) {
  const S w = mass_of(m, a);
  if (w == S(0)) throw Error(ErrorCode::zero_mass, "restriction to a null set");
  ProbVec<S> out{m.ctx, {}};
  for (const auto& [g, v] : m.mass)
    if (a(g)) out.mass[g] = v / w;
  return out;
}

// Spreads each coset's mass uniformly over the coset gN. Labels are
// representatives g; two labels in one coset are rejected.
template <typename S>
ProbVec<S> finite_normal_lift(const GroupCtx& ctx, const std::map<Elt, S>& m0, const Subgroup& n) {
  if (!n.elements) throw Error(ErrorCode::undecidable_membership, "N must be finite with known elements");
  const auto& ne = *n.elements;
  const S share = ArithTraits<S>::from_ratio(1, static_cast<long>(ne.size()));
  ProbVec<S> out{ctx, {}};
  std::set<Elt> covered;
  for (const auto& [g, v] : m0) {
    for (const auto& x : ne) {
      auto y = ctx->multiply(g, x);
      if (!covered.insert(y).second)
        throw Error(ErrorCode::non_coset_labels, "two labels name the same coset: " + ctx->to_string(g));
      out.add(y, v * share);
    }
  }
  return out;
}

// sum over representatives g of weights(g) * (g m_H g^-1)
template <typename S>
ProbVec<S> transversal_average(const ProbVec<S>& mh, const std::map<Elt, S>& weights) {
  ProbVec<S> out{mh.ctx, {}};
  for (const auto& [g, w] : weights) {
    auto c = conjugate_vector(mh, g);
    for (const auto& [x, v] : c.mass) out.add(x, w * v);
  }
  return out;
}

using Pair = std::pair<Elt, Elt>;

// p~ = sum_y p(π^-1 y) p^y ⊗ p^y, i.e. p~(x0, x1) = p(x0) p(x1) / q(π x0)
// on pairs in a common block.
template <typename S, typename Label>
std::map<Pair, S> tilde_lift(const ProbVec<S>& p, const std::function<std::optional<Label>(const Elt&)>& pi) {
  std::map<Label, std::vector<std::pair<Elt, S>>> blocks;
  std::map<Label, S> q;
  for (const auto& [x, v] : p.mass) {
    auto y = pi(x);
    if (!y) throw Error(ErrorCode::partial_map, "partition undefined at " + p.ctx->to_string(x));
    blocks[*y].emplace_back(x, v);
    q[*y] += v;
  }
  std::map<Pair, S> out;
  for (const auto& [y, members] : blocks) {
    const S qy = q[y];
    for (const auto& [x0, a] : members)
      for (const auto& [x1, b] : members) out[{x0, x1}] = a * b / qy;
  }
  return out;
}

template <typename S>
S diagonal_mass(const std::map<Pair, S>& pt) {
  S t(0);
  for (const auto& [xy, v] : pt)
    if (xy.first == xy.second) t += v;
  return t;
}

using Action = std::function<Elt(const Elt& g, const Elt& x)>;

inline Action conjugation_action(const GroupCtx& ctx) {
  return [ctx](const Elt& g, const Elt& x) { return ctx->conjugate(g, x); };
}

template <typename S>
ProbVec<S> act_on_vector(const ProbVec<S>& p, const Action& act, const Elt& g) {
  return push_elements<S>(p, [&](const Elt& x) { return act(g, x); });
}

template <typename S>
struct InequalityReport {
  S lhs{0};
  S rhs{0};
  bool ok = false;
};

// ‖g p~ − p~‖₁ <= 5 ‖g p − p‖₁ after checking that g permutes the blocks
// met by supp p ∪ g^-1 supp p.
template <typename S, typename Label>
InequalityReport<S> lifting_defect_check(const ProbVec<S>& p,
                                         const std::function<std::optional<Label>(const Elt&)>& pi,
                                         const Action& act, const Elt& g) {
  const auto gi = p.ctx->inverse(g);
  std::vector<Elt> dom;
  std::set<Elt> seen;
  for (const auto& [x, v] : p.mass) {
    for (const auto& y : {x, act(gi, x)})
      if (seen.insert(y).second) dom.push_back(y);
  }
  std::vector<Label> before, after;
  for (const auto& x : dom) {
    auto a = pi(x), b = pi(act(g, x));
    if (!a || !b) throw Error(ErrorCode::partial_map, "partition undefined near " + p.ctx->to_string(x));
    before.push_back(*a);
    after.push_back(*b);
  }
  for (std::size_t i = 0; i < dom.size(); ++i)
    for (std::size_t j = i + 1; j < dom.size(); ++j)
      if ((before[i] == before[j]) != (after[i] == after[j]))
        throw Error(ErrorCode::non_equivariant, "g does not permute the partition blocks");
  auto pt = tilde_lift<S, Label>(p, pi);
  std::map<Pair, S> gpt;
  for (const auto& [xy, v] : pt) gpt[{act(g, xy.first), act(g, xy.second)}] += v;
  InequalityReport<S> r;
  r.lhs = l1_distance(gpt, pt);
  r.rhs = S(5) * l1_distance(act_on_vector(p, act, g).mass, p.mass);
  r.ok = approx_leq<S>(r.lhs, r.rhs);
  return r;
}

// (m̌*m)(H) >= sum over cosets of m(gH)^2
template <typename S>
InequalityReport<S> convolution_bound_check(const ProbVec<S>& m, const Subgroup& h) {
  if (!h.coset_key) throw Error(ErrorCode::undecidable_membership, "subgroup needs a coset key");
  InequalityReport<S> r;
  r.lhs = mass_of(convolve(reverse(m), m), h.contains);
  std::map<Elt, S> cosets;
  for (const auto& [g, v] : m.mass) cosets[h.coset_key(g)] += v;
  for (const auto& [c, v] : cosets) r.rhs += v * v;
  r.ok = approx_leq<S>(r.rhs, r.lhs);
  return r;
}

template <typename S>
struct StationarityReport {
  S right_defect{0};  // ‖n*m − n‖₁
  S left_defect{0};   // ‖m*n − n‖₁
  S n_mass{0};
  S m_mass{0};
  bool hypothesis = false;  // n(H) = 1 and some defect <= ε
  bool ok = true;           // m(H) >= 1 − ε whenever the hypothesis holds
  bool sharp_ok = true;     // m(H) >= 1 − defect/2
};

template <typename S>
StationarityReport<S> stationarity_transfer_check(const ProbVec<S>& n, const ProbVec<S>& m, const Subgroup& h,
                                                  const S& eps) {
  StationarityReport<S> r;
  r.right_defect = l1_distance(convolve(n, m).mass, n.mass);
  r.left_defect = l1_distance(convolve(m, n).mass, n.mass);
  r.n_mass = mass_of(n, h.contains);
  r.m_mass = mass_of(m, h.contains);
  const bool full = ArithTraits<S>::abs(r.n_mass - S(1)) <= ArithTraits<S>::tolerance();
  for (const S& d : {r.right_defect, r.left_defect}) {
    if (full && approx_leq<S>(d, eps)) {
      r.hypothesis = true;
      if (!approx_leq<S>(S(1) - eps, r.m_mass)) r.ok = false;
    }
    if (full && !approx_leq<S>(S(1) - d / S(2), r.m_mass)) r.sharp_ok = false;
  }
  return r;
}

// Displacement ‖α(k)p − p‖₁ under conjugation for each k in F; mass pushed
// outside `carrier` (if given) is counted in full by construction.
template <typename S>
struct Defect {
  std::vector<S> per_generator;
  S max{0};
};

template <typename S>
Defect<S> conjugation_defect(const ProbVec<S>& p, const std::vector<Elt>& f) {
  Defect<S> d;
  for (const auto& k : f) {
    auto v = l1_distance(conjugate_vector(p, k).mass, p.mass);
    d.per_generator.push_back(v);
    if (d.max < v) d.max = v;
  }
  return d;
}

}  // namespace inam

#endif  // INAM_MEANS_HPP_
