#ifndef INAM_GROUP_OPS_HPP_
#define INAM_GROUP_OPS_HPP_

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "amalgam.hpp"
#include "graph_product.hpp"
#include "hnn.hpp"
#include "wreath.hpp"

namespace inam {

inline std::size_t default_cap() {
  if (const char* env = std::getenv("INAM_CAP")) {
    char* end = nullptr;
    auto v = std::strtoull(env, &end, 10);
    if (end != env && v > 0) return static_cast<std::size_t>(v);
  }
  return 1000000;
}

struct Ball {
  std::vector<Elt> elements;  // BFS order
  std::vector<int> length;
  std::unordered_map<Elt, std::size_t, EltHash> index;

  std::size_t size() const { return elements.size(); }
  bool contains(const Elt& g) const { return index.count(g) != 0; }
  int length_of(const Elt& g) const { return length.at(index.at(g)); }
};

// Word-length ball by breadth-first right multiplication with the context's
// generators. radius < 0 runs to saturation (finite groups only).
inline Ball ball(const Group& g, int radius, std::size_t cap = default_cap()) {
  Ball b;
  auto add = [&](const Elt& e, int len) {
    if (b.index.emplace(e, b.elements.size()).second) {
      b.elements.push_back(e);
      b.length.push_back(len);
      if (b.elements.size() > cap)
        throw Error(ErrorCode::cap_exceeded, "ball exceeds cap after " + std::to_string(b.elements.size()) +
                                                 " elements (cap " + std::to_string(cap) + ")");
    }
  };
  if (radius < 0 && !g.order()) throw Error(ErrorCode::unsupported, "unbounded ball of an infinite group");
  add(g.identity(), 0);
  const auto gens = g.generators();
  std::size_t begin = 0;
  for (int r = 1; radius < 0 || r <= radius; ++r) {
    std::size_t end = b.elements.size();
    if (begin == end) break;
    for (std::size_t i = begin; i < end; ++i)
      for (const auto& s : gens) add(g.multiply(b.elements[i], s), r);
    begin = end;
  }
  return b;
}

inline Ball ball(const GroupCtx& g, int radius, std::size_t cap = default_cap()) { return ball(*g, radius, cap); }

inline std::vector<Elt> sorted_elements(const Ball& b) {
  auto v = b.elements;
  std::sort(v.begin(), v.end());
  return v;
}

// {h g h^-1 : |h| <= bound}
inline std::set<Elt> conjugacy_class(const Group& ctx, const Elt& g, int bound, std::size_t cap = default_cap()) {
  if (bound < 0) throw Error(ErrorCode::schema, "conjugator bound must be non-negative");
  std::set<Elt> out;
  for (const auto& h : ball(ctx, bound, cap).elements) out.insert(ctx.conjugate(h, g));
  return out;
}

inline std::vector<Elt> centralizer(const Group& ctx, const std::vector<Elt>& s, const std::vector<Elt>& domain) {
  std::vector<Elt> out;
  for (const auto& g : domain) {
    bool ok = true;
    for (const auto& x : s)
      if (!(ctx.multiply(g, x) == ctx.multiply(x, g))) {
        ok = false;
        break;
      }
    if (ok) out.push_back(g);
  }
  return out;
}

// A subgroup given by a decidable membership test, optionally with its
// finite element list and a left-coset key (x H -> canonical label).
struct Subgroup {
  std::function<bool(const Elt&)> contains;
  std::optional<std::vector<Elt>> elements;
  std::function<Elt(const Elt&)> coset_key;
  std::string description;

  bool finite() const { return elements.has_value(); }
};

inline Subgroup make_finite_subgroup(const GroupCtx& ctx, std::vector<Elt> elems, std::string desc = "finite") {
  std::set<Elt> s(elems.begin(), elems.end());
  if (!s.count(ctx->identity())) throw Error(ErrorCode::not_closed, "subgroup lacks the identity", desc);
  for (const auto& a : s)
    for (const auto& b : s)
      if (!s.count(ctx->multiply(a, b))) throw Error(ErrorCode::not_closed, "subset not closed", desc);
  std::vector<Elt> sorted(s.begin(), s.end());
  Subgroup h;
  h.contains = [s](const Elt& g) { return s.count(g) != 0; };
  h.elements = sorted;
  h.coset_key = [ctx, sorted](const Elt& g) {
    Elt best = ctx->multiply(g, sorted.front());
    for (const auto& x : sorted) best = std::min(best, ctx->multiply(g, x));
    return best;
  };
  h.description = std::move(desc);
  return h;
}

inline Subgroup trivial_subgroup(const GroupCtx& ctx) { return make_finite_subgroup(ctx, {ctx->identity()}, "trivial"); }

// Closure of a finite generating set inside a group, bounded by cap.
inline std::vector<Elt> generated_subgroup(const Group& ctx, const std::vector<Elt>& gens, std::size_t cap = 100000) {
  std::set<Elt> seen{ctx.identity()};
  std::vector<Elt> frontier{ctx.identity()}, out{ctx.identity()};
  while (!frontier.empty()) {
    std::vector<Elt> next;
    for (const auto& x : frontier)
      for (const auto& s : gens) {
        auto y = ctx.multiply(x, s);
        if (seen.insert(y).second) {
          if (seen.size() > cap) throw Error(ErrorCode::cap_exceeded, "generated subgroup exceeds cap");
          out.push_back(y);
          next.push_back(y);
        }
      }
    frontier = std::move(next);
  }
  std::sort(out.begin(), out.end());
  return out;
}

// nZ inside the integers.
inline Subgroup multiples_subgroup(std::int64_t n) {
  Subgroup h;
  h.contains = [n](const Elt& g) { return g.data.at(0) % n == 0; };
  h.coset_key = [n](const Elt& g) { return Elt{{((g.data.at(0) % n) + n) % n}}; };
  h.description = std::to_string(n) + "Z";
  return h;
}

// The special subgroup G_S of a graph product.
inline Subgroup vertex_subgroup(std::shared_ptr<const GraphProductGroup> gp, Mask s) {
  Subgroup h;
  h.contains = [gp, s](const Elt& g) { return gp->in_subgroup(g, s); };
  h.coset_key = [gp, s](const Elt& g) { return gp->strip_suffix(g, s); };
  std::string d = "G_{";
  for (int v : mask_members(s)) d += (d.size() > 3 ? "," : "") + gp->graph().name(v);
  h.description = d + "}";
  return h;
}

// x G_S x^-1, the stabilizer of the vertex x G_S.
inline Subgroup conjugate_vertex_subgroup(std::shared_ptr<const GraphProductGroup> gp, const Elt& x, Mask s) {
  Subgroup h;
  auto xi = gp->inverse(x);
  h.contains = [gp, x, xi, s](const Elt& g) { return gp->in_subgroup(gp->multiply(gp->multiply(xi, g), x), s); };
  h.coset_key = [gp, x, xi, s](const Elt& g) {
    return gp->multiply(gp->strip_suffix(gp->multiply(g, x), s), xi);
  };
  h.description = "stabilizer of " + gp->to_string(x) + " G_S";
  return h;
}

inline Subgroup predicate_subgroup(std::function<bool(const Elt&)> f, std::string desc) {
  Subgroup h;
  h.contains = std::move(f);
  h.description = std::move(desc);
  return h;
}

inline Subgroup centralizer_subgroup(const GroupCtx& ctx, std::vector<Elt> s) {
  return predicate_subgroup(
      [ctx, s](const Elt& g) {
        for (const auto& x : s)
          if (!(ctx->multiply(g, x) == ctx->multiply(x, g))) return false;
        return true;
      },
      "centralizer");
}

struct RelativeCentralizer {
  std::vector<Elt> elements;
  bool in_normalizer = true;
  // |result| / |C(S) ∩ C(M) ∩ domain| when the domain is a whole finite group.
  std::optional<std::size_t> core_index;
};

// {g in domain : g (sM) g^-1 = sM for all s in S}
inline RelativeCentralizer relative_centralizer_mod(const Group& ctx, const Subgroup& m, const std::vector<Elt>& s,
                                                    const std::vector<Elt>& domain, bool domain_is_group = false) {
  if (!m.elements) throw Error(ErrorCode::undecidable_membership, "M must be given as a finite element list");
  const auto& mel = *m.elements;
  RelativeCentralizer out;
  std::vector<std::set<Elt>> cosets;
  for (const auto& x : s) {
    std::set<Elt> c;
    for (const auto& y : mel) c.insert(ctx.multiply(x, y));
    cosets.push_back(std::move(c));
  }
  for (const auto& g : domain) {
    auto gi = ctx.inverse(g);
    bool ok = true;
    for (const auto& c : cosets) {
      for (const auto& y : c)
        if (!c.count(ctx.multiply(ctx.multiply(g, y), gi))) {
          ok = false;
          break;
        }
      if (!ok) break;
    }
    if (ok) out.elements.push_back(g);
  }
  std::size_t core = 0;
  for (const auto& g : out.elements) {
    auto gi = ctx.inverse(g);
    bool cs = true, cm = true;
    for (const auto& y : mel) {
      auto c = ctx.multiply(ctx.multiply(g, y), gi);
      if (!m.contains(c)) out.in_normalizer = false;
      if (!(c == y)) cm = false;
    }
    for (const auto& x : s)
      if (!(ctx.multiply(g, x) == ctx.multiply(x, g))) cs = false;
    if (cs && cm) ++core;
  }
  if (domain_is_group && core > 0) out.core_index = out.elements.size() / core;
  return out;
}

struct CyclicReduction {
  Elt conjugator;
  Elt core;
  std::size_t core_length = 0;
  bool elliptic = true;
  std::int64_t translation_length = 0;
};

// g = conjugator * core * conjugator^-1 with core cyclically reduced.
inline CyclicReduction cyclic_reduction(const Group& ctx, const Elt& g) {
  CyclicReduction out;
  out.conjugator = ctx.identity();
  out.core = g;
  if (const auto* am = dynamic_cast<const AmalgamGroup*>(&ctx)) {
    while (AmalgamGroup::syllable_count(out.core) >= 2 &&
           AmalgamGroup::syllable_factor(out.core, 0) ==
               AmalgamGroup::syllable_factor(out.core, AmalgamGroup::syllable_count(out.core) - 1)) {
      auto y = am->last_syllable(out.core);
      out.core = am->conjugate(y, out.core);
      out.conjugator = am->multiply(out.conjugator, am->inverse(y));
    }
    out.core_length = am->length(out.core);
    out.elliptic = out.core_length <= 1;
    out.translation_length = out.elliptic ? 0 : static_cast<std::int64_t>(out.core_length);
    return out;
  }
  if (const auto* hn = dynamic_cast<const HnnGroup*>(&ctx)) {
    for (;;) {
      const auto n = HnnGroup::t_length(out.core);
      if (n == 0) break;
      auto cn = out.core.data[2 * n];
      if (cn != hn->base().id()) {
        auto y = hn->base_elt(cn);
        out.core = hn->conjugate(y, out.core);
        out.conjugator = hn->multiply(out.conjugator, hn->inverse(y));
      }
      const auto k0 = out.core.data[0];
      const int e1 = static_cast<int>(out.core.data[1]);
      const int en = static_cast<int>(out.core.data[2 * n - 1]);
      if (en == -e1 && (en > 0 ? hn->in_h(k0) : hn->in_image(k0))) {
        auto z = hn->stable(en);
        out.core = hn->conjugate(z, out.core);
        out.conjugator = hn->multiply(out.conjugator, hn->inverse(z));
        continue;
      }
      break;
    }
    out.core_length = HnnGroup::t_length(out.core);
    out.elliptic = out.core_length == 0;
    out.translation_length = static_cast<std::int64_t>(out.core_length);
    return out;
  }
  throw Error(ErrorCode::unsupported, "cyclic reduction needs an amalgam or HNN context");
}

}  // namespace inam

#endif  // INAM_GROUP_OPS_HPP_
