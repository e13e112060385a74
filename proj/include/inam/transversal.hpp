#ifndef INAM_TRANSVERSAL_HPP_
#define INAM_TRANSVERSAL_HPP_

#include <map>
#include <string>
#include <vector>

#include "basic_group.hpp"

namespace inam {

// A subgroup S of a finite basic group G with its right-coset transversal:
// every x factors uniquely as x = s * rep(x), s in S. The representative of
// S itself is the identity, other cosets use their smallest value.
struct RightTransversal {
  std::vector<char> member;
  std::vector<std::int64_t> rep;
  std::vector<std::int64_t> part;
  std::int64_t index = 1;

  RightTransversal() = default;

  RightTransversal(const BasicGroup& g, const std::vector<std::int64_t>& subset) {
    const auto n = g.size();
    member.assign(n, 0);
    for (auto s : subset) member.at(s) = 1;
    rep.assign(n, -1);
    part.assign(n, 0);
    index = 0;
    for (std::int64_t x = 0; x < n; ++x) {
      if (rep[x] >= 0) continue;
      std::int64_t r = member[x] ? g.id() : x;
      ++index;
      for (std::int64_t s = 0; s < n; ++s) {
        if (!member[s]) continue;
        auto y = g.mul(s, r);
        rep[y] = r;
        part[y] = s;
      }
    }
  }

  bool contains(std::int64_t x) const { return member.at(x) != 0; }
};

inline void require_subgroup(const BasicGroup& g, const std::vector<std::int64_t>& subset,
                             const std::string& where) {
  std::vector<char> in(g.size(), 0);
  for (auto s : subset) {
    if (!g.valid(s)) throw Error(ErrorCode::schema, "subset element out of range", where);
    in[s] = 1;
  }
  if (!in[g.id()]) throw Error(ErrorCode::not_closed, "subset lacks the identity", where);
  for (auto a : subset)
    for (auto b : subset)
      if (!in[g.mul(a, b)])
        throw Error(ErrorCode::not_closed, "subset not closed under multiplication", where);
}

// Checks that `image` (indexed by the values of `src`) is an injective
// homomorphism src -> dst.
inline void require_embedding(const BasicGroup& src, const BasicGroup& dst,
                              const std::map<std::int64_t, std::int64_t>& image,
                              const std::string& where) {
  std::map<std::int64_t, std::int64_t> back;
  for (auto [a, fa] : image) {
    if (!dst.valid(fa)) throw Error(ErrorCode::schema, "image out of range", where);
    if (!back.emplace(fa, a).second) throw Error(ErrorCode::non_injective, "map is not injective", where);
  }
  for (auto [a, fa] : image)
    for (auto [b, fb] : image) {
      auto ab = image.find(src.mul(a, b));
      if (ab == image.end()) throw Error(ErrorCode::partial_map, "map undefined on a product", where);
      if (ab->second != dst.mul(fa, fb))
        throw Error(ErrorCode::not_homomorphism, "map is not a homomorphism", where);
    }
}

}  // namespace inam

#endif  // INAM_TRANSVERSAL_HPP_
