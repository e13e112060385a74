#ifndef INAM_LOCATION_HPP_
#define INAM_LOCATION_HPP_

#include <map>
#include <numeric>
#include <set>
#include <vector>

#include "means.hpp"

namespace inam {

template <typename S>
struct LocationReport {
  S diagonal_mass{0};        // p~(Δ)
  std::map<Elt, S> q;        // block label -> p(block)
  std::map<Elt, S> s;        // block label -> max_x p^y(x)
  std::vector<Elt> y_r;      // blocks with s > r
  std::vector<Elt> x_set;    // chosen argmax per block
  S s_integral{0};           // ∫ s dq
  S q_of_y_r{0};
  S p_of_x{0};
  S lhs{0};                  // p((X ∩ π^-1 Y_r) ∖ C(h))
  S rhs{0};                  // ‖p − α(h)p‖₁ / (2r − 1)
  bool ok = false;
  bool diagonal_bound_ok = false;   // p~(Δ) <= ∫ s dq
  bool threshold_bound_ok = false;  // ∫ s dq <= r + (1 − r) q(Y_r)
  bool argmax_identity_ok = false;  // p(X) = ∫ s dq
  std::size_t conjugators = 0;
};

struct UnionFind {
  std::vector<std::size_t> parent;
  explicit UnionFind(std::size_t n = 0) : parent(n) { std::iota(parent.begin(), parent.end(), std::size_t{0}); }
  std::size_t add() {
    parent.push_back(parent.size());
    return parent.size() - 1;
  }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  bool unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (b < a) std::swap(a, b);
    parent[b] = a;
    return true;
  }
};

// Runs the finitary location argument: blocks are orbits of conjugation by the
// elements of K ∩ N reachable as words of length <= bound in k_gens, plus h.
template <typename S>
LocationReport<S> location_experiment(const ProbVec<S>& p, const std::vector<Elt>& k_gens, const Subgroup& n,
                                      const Elt& h, const S& r, int bound = 2) {
  const auto& G = *p.ctx;
  if (!n.contains(h)) throw Error(ErrorCode::not_in_subgroup, "h is not in N");
  if (!(S(1) / S(2) < r && r < S(1))) throw Error(ErrorCode::schema, "threshold r must lie in (1/2, 1)");

  std::set<Elt> words{G.identity()};
  std::vector<Elt> frontier{G.identity()};
  for (int i = 0; i < bound; ++i) {
    std::vector<Elt> next;
    for (const auto& w : frontier)
      for (const auto& k : k_gens)
        for (const auto& y : {G.multiply(w, k), G.multiply(w, G.inverse(k))})
          if (words.insert(y).second) next.push_back(y);
    frontier = std::move(next);
  }
  std::vector<Elt> conj;
  for (const auto& w : words)
    if (n.contains(w)) conj.push_back(w);
  conj.push_back(h);

  std::map<Elt, std::size_t> id;
  std::vector<Elt> elems;
  UnionFind uf;
  auto node = [&](const Elt& x) {
    auto [it, fresh] = id.emplace(x, elems.size());
    if (fresh) {
      elems.push_back(x);
      uf.add();
    }
    return it->second;
  };
  for (const auto& [x, v] : p.mass) {
    auto a = node(x);
    for (const auto& c : conj) uf.unite(a, node(G.conjugate(c, x)));
  }
  // Block label: least element of the component.
  std::map<std::size_t, Elt> label;
  for (std::size_t i = 0; i < elems.size(); ++i) {
    auto root = uf.find(i);
    auto it = label.find(root);
    if (it == label.end() || elems[i] < it->second) label[root] = elems[i];
  }
  auto block = [&](const Elt& x) { return label.at(uf.find(id.at(x))); };

  LocationReport<S> rep;
  rep.conjugators = conj.size();
  std::map<Elt, Elt> argmax;
  for (const auto& [x, v] : p.mass) rep.q[block(x)] += v;
  for (const auto& [x, v] : p.mass) {
    auto y = block(x);
    const S py = v / rep.q[y];
    rep.diagonal_mass += v * py;
    auto it = rep.s.find(y);
    // Strict comparison under increasing Elt order keeps the least argmax.
    if (it == rep.s.end() || it->second < py) {
      rep.s[y] = py;
      argmax[y] = x;
    }
  }
  for (const auto& [y, sy] : rep.s) {
    rep.s_integral += rep.q[y] * sy;
    rep.x_set.push_back(argmax[y]);
    rep.p_of_x += p.at(argmax[y]);
    if (r < sy) {
      rep.y_r.push_back(y);
      rep.q_of_y_r += rep.q[y];
      const auto& x = argmax[y];
      if (!(G.conjugate(h, x) == x)) rep.lhs += p.at(x);
    }
  }
  rep.rhs = l1_distance(p.mass, conjugate_vector(p, h).mass) / (S(2) * r - S(1));
  rep.ok = approx_leq<S>(rep.lhs, rep.rhs);
  rep.diagonal_bound_ok = approx_leq<S>(rep.diagonal_mass, rep.s_integral);
  rep.threshold_bound_ok = approx_leq<S>(rep.s_integral, r + (S(1) - r) * rep.q_of_y_r);
  rep.argmax_identity_ok = ArithTraits<S>::abs(rep.p_of_x - rep.s_integral) <= ArithTraits<S>::tolerance();
  return rep;
}

}  // namespace inam

#endif  // INAM_LOCATION_HPP_
