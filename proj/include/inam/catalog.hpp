#ifndef INAM_CATALOG_HPP_
#define INAM_CATALOG_HPP_

#include <algorithm>
#include <memory>
#include <numeric>
#include <set>
#include <vector>

#include "group_ops.hpp"

namespace inam::catalog {

// Symmetric group on n letters as a Cayley table, permutations in
// lexicographic order (identity first), product (pq)(i) = p(q(i)).
inline BasicGroup symmetric(int n) {
  std::vector<std::vector<int>> perms;
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  do perms.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  const int m = static_cast<int>(perms.size());
  std::vector<std::string> names;
  for (const auto& q : perms) {
    std::string s;
    for (int x : q) s += static_cast<char>('1' + x);
    names.push_back(s);
  }
  std::vector<std::vector<int>> mul(m, std::vector<int>(m));
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) {
      std::vector<int> c(n);
      for (int i = 0; i < n; ++i) c[i] = perms[a][perms[b][i]];
      mul[a][b] = static_cast<int>(std::find(perms.begin(), perms.end(), c) - perms.begin());
    }
  return BasicGroup::table(names, mul);
}

inline std::shared_ptr<const GraphProductGroup> free_product(std::vector<BasicGroup> groups) {
  SimpGraph g(static_cast<int>(groups.size()));
  return std::make_shared<GraphProductGroup>(g, std::move(groups));
}

// Graph product with cyclic vertex groups of the given orders.
inline std::shared_ptr<const GraphProductGroup> cyclic_graph_product(const SimpGraph& g,
                                                                     const std::vector<std::int64_t>& orders) {
  std::vector<BasicGroup> groups;
  for (auto n : orders) groups.push_back(BasicGroup::cyclic(n));
  return std::make_shared<GraphProductGroup>(g, std::move(groups));
}

inline std::shared_ptr<const GraphProductGroup> z2_free_z3() {
  SimpGraph g(std::vector<std::string>{"a", "b"});
  return std::make_shared<GraphProductGroup>(g, std::vector{BasicGroup::cyclic(2), BasicGroup::cyclic(3)});
}

inline std::shared_ptr<const GraphProductGroup> z2_times_z3() {
  SimpGraph g(std::vector<std::string>{"v", "w"});
  g.add_edge(0, 1);
  return std::make_shared<GraphProductGroup>(g, std::vector{BasicGroup::cyclic(2), BasicGroup::cyclic(3)});
}

inline std::shared_ptr<const GraphProductGroup> infinite_dihedral() {
  return free_product({BasicGroup::cyclic(2), BasicGroup::cyclic(2)});
}

inline std::shared_ptr<const GraphProductGroup> free_group2() {
  return free_product({BasicGroup::integers(), BasicGroup::integers()});
}

// Z/2 * Z/3 as an amalgam over the trivial group.
inline std::shared_ptr<const AmalgamGroup> psl2z_amalgam() {
  return std::make_shared<AmalgamGroup>(BasicGroup::cyclic(2), BasicGroup::cyclic(3), BasicGroup::cyclic(1),
                                        std::map<std::int64_t, std::int64_t>{{0, 0}},
                                        std::map<std::int64_t, std::int64_t>{{0, 0}});
}

// Z/4 *_{Z/2} Z/6.
inline std::shared_ptr<const AmalgamGroup> sl2z_amalgam() {
  return std::make_shared<AmalgamGroup>(BasicGroup::cyclic(4), BasicGroup::cyclic(6), BasicGroup::cyclic(2),
                                        std::map<std::int64_t, std::int64_t>{{0, 0}, {1, 2}},
                                        std::map<std::int64_t, std::int64_t>{{0, 0}, {1, 3}});
}

// HNN extension of Z/4 along the identity of {0, 2}; not ascending.
inline std::shared_ptr<const HnnGroup> hnn_z4() {
  return std::make_shared<HnnGroup>(BasicGroup::cyclic(4), std::vector<std::int64_t>{0, 2},
                                    std::map<std::int64_t, std::int64_t>{{0, 0}, {2, 2}});
}

// Z/2 wr Z with the regular action.
inline std::shared_ptr<const WreathGroup> lamplighter() {
  return std::make_shared<WreathGroup>(BasicGroup::cyclic(2), BasicGroup::integers(), PointAction{});
}

// All subgroups of a finite group, as sorted element lists (closures of pairs).
inline std::vector<std::vector<Elt>> subgroups(const Group& g) {
  auto all = ball(g, -1).elements;
  std::set<std::vector<Elt>> out;
  for (std::size_t i = 0; i < all.size(); ++i)
    for (std::size_t j = i; j < all.size(); ++j) out.insert(generated_subgroup(g, {all[i], all[j]}));
  return {out.begin(), out.end()};
}

}  // namespace inam::catalog

#endif  // INAM_CATALOG_HPP_
