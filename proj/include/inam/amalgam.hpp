#ifndef INAM_AMALGAM_HPP_
#define INAM_AMALGAM_HPP_

#include <array>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "transversal.hpp"

namespace inam {

// Amalgamated free product A *_H B of finite groups. An element is stored
// as [h, f1, c1, f2, c2, ...] meaning h * c1 * c2 * ... with h in H, the
// factors f_i in {0 = A, 1 = B} alternating, and each c_i a non-trivial
// right-coset representative of H in its factor.
class AmalgamGroup : public Group {
 public:
  AmalgamGroup(BasicGroup a, BasicGroup b, BasicGroup h, std::map<std::int64_t, std::int64_t> embed_a,
               std::map<std::int64_t, std::int64_t> embed_b)
      : f_{std::move(a), std::move(b)}, h_(std::move(h)) {
    if (!f_[0].finite() || !f_[1].finite() || !h_.finite())
      throw Error(ErrorCode::unsupported, "amalgam arithmetic needs finite factors");
    std::array<std::map<std::int64_t, std::int64_t>, 2> emb{std::move(embed_a), std::move(embed_b)};
    for (int i = 0; i < 2; ++i) {
      const std::string where = i == 0 ? "embed_A" : "embed_B";
      if (static_cast<std::int64_t>(emb[i].size()) != h_.size())
        throw Error(ErrorCode::partial_map, "embedding must be defined on all of H", where);
      require_embedding(h_, f_[i], emb[i], where);
      embed_[i].assign(h_.size(), 0);
      back_[i].assign(f_[i].size(), -1);
      std::vector<std::int64_t> image;
      for (auto [x, y] : emb[i]) {
        embed_[i][x] = y;
        back_[i][y] = x;
        image.push_back(y);
      }
      tr_[i] = RightTransversal(f_[i], image);
    }
  }

  const BasicGroup& factor(int i) const { return f_.at(i); }
  const BasicGroup& edge_group() const { return h_; }
  std::int64_t embed(int i, std::int64_t h) const { return embed_[i].at(h); }
  bool in_edge_image(int i, std::int64_t x) const { return tr_[i].contains(x); }
  std::int64_t index(int i) const { return tr_[i].index; }

  // Nondegenerate: both indices >= 2 and one of them >= 3.
  bool nondegenerate() const {
    return index(0) >= 2 && index(1) >= 2 && (index(0) >= 3 || index(1) >= 3);
  }

  static std::size_t syllable_count(const Elt& g) { return (g.data.size() - 1) / 2; }

  // Britton length: number of factor syllables of a reduced word.
  std::size_t length(const Elt& g) const {
    auto n = syllable_count(g);
    if (n == 0) return g.data[0] == h_.id() ? 0 : 1;
    return n;
  }

  Elt factor_elt(int i, std::int64_t x) const { return letter(Letter{i, x, 0}); }
  Elt edge_elt(std::int64_t h) const { return Elt{{h}}; }

  // Factor of the i-th syllable (0-based), or -1 for elements of H.
  static int syllable_factor(const Elt& g, std::size_t i) { return static_cast<int>(g.data.at(1 + 2 * i)); }

  // Last syllable as an element of its factor.
  Elt last_syllable(const Elt& g) const {
    auto n = syllable_count(g);
    return factor_elt(static_cast<int>(g.data[2 * n - 1]), g.data[2 * n]);
  }

  std::string kind() const override { return "amalgam"; }
  Elt identity() const override { return Elt{{h_.id()}}; }

  Elt multiply(const Elt& a, const Elt& b) const override {
    Elt w = a;
    rmul_h(w, b.data[0]);
    for (std::size_t i = 1; i + 1 < b.data.size(); i += 2) rmul_factor(w, static_cast<int>(b.data[i]), b.data[i + 1]);
    return w;
  }

  Elt inverse(const Elt& a) const override {
    Elt w = identity();
    for (std::size_t i = a.data.size() - 1; i >= 2; i -= 2) {
      int f = static_cast<int>(a.data[i - 1]);
      rmul_factor(w, f, f_[f].inv(a.data[i]));
    }
    rmul_h(w, h_.inv(a.data[0]));
    return w;
  }

  Elt letter(const Letter& l) const override {
    Elt w = identity();
    if (l.slot == 2) {
      if (!h_.valid(l.value)) throw Error(ErrorCode::unknown_letter, "letter outside H");
      rmul_h(w, l.value);
      return w;
    }
    if ((l.slot != 0 && l.slot != 1) || !f_[l.slot].valid(l.value))
      throw Error(ErrorCode::unknown_letter, "letter outside the factors");
    rmul_factor(w, l.slot, l.value);
    return w;
  }

  std::vector<Elt> generators() const override {
    std::vector<Elt> out;
    std::set<Elt> seen;
    for (int i = 0; i < 2; ++i)
      for (auto x : f_[i].factor_generators()) {
        auto e = factor_elt(i, x);
        if (seen.insert(e).second) out.push_back(e);
      }
    return out;
  }

  std::optional<std::uint64_t> order() const override {
    if (index(0) == 1 || index(1) == 1)
      return static_cast<std::uint64_t>(std::max(f_[0].size(), f_[1].size()));
    return std::nullopt;
  }

  nlohmann::json elt_to_json(const Elt& e) const override {
    auto out = nlohmann::json::array();
    if (e.data[0] != h_.id()) out.push_back({"H", h_.value_to_json(e.data[0])});
    for (std::size_t i = 1; i + 1 < e.data.size(); i += 2) {
      int f = static_cast<int>(e.data[i]);
      out.push_back({f == 0 ? "A" : "B", f_[f].value_to_json(e.data[i + 1])});
    }
    return out;
  }

  Letter letter_from_json(const nlohmann::json& pair) const override {
    if (!pair.is_array() || pair.size() != 2 || !pair[0].is_string())
      throw Error(ErrorCode::unknown_letter, "letter must be [A|B|H, value]: " + pair.dump());
    auto lab = pair[0].get<std::string>();
    if (lab == "A") return Letter{0, f_[0].value_from_json(pair[1], pair.dump()), 0};
    if (lab == "B") return Letter{1, f_[1].value_from_json(pair[1], pair.dump()), 0};
    if (lab == "H") return Letter{2, h_.value_from_json(pair[1], pair.dump()), 0};
    throw Error(ErrorCode::unknown_letter, "unknown factor label " + lab);
  }

  std::string generator_convention() const override {
    return "amalgam: all non-identity elements of A and of B";
  }

 private:
  // w <- w * h for h in H: the H-part travels left through the syllables.
  void rmul_h(Elt& w, std::int64_t h) const {
    for (std::size_t i = w.data.size() - 1; i >= 2 && h != h_.id(); i -= 2) {
      int f = static_cast<int>(w.data[i - 1]);
      auto x = f_[f].mul(w.data[i], embed_[f][h]);
      w.data[i] = tr_[f].rep[x];
      h = back_[f][tr_[f].part[x]];
    }
    w.data[0] = h_.mul(w.data[0], h);
  }

  // w <- w * y for y in factor f.
  void rmul_factor(Elt& w, int f, std::int64_t y) const {
    const std::size_t n = syllable_count(w);
    std::int64_t x = y;
    if (n > 0 && w.data[2 * n - 1] == f) {
      x = f_[f].mul(w.data[2 * n], y);
      w.data.resize(w.data.size() - 2);
    }
    rmul_h(w, back_[f][tr_[f].part[x]]);
    auto r = tr_[f].rep[x];
    if (r != f_[f].id()) {
      w.data.push_back(f);
      w.data.push_back(r);
    }
  }

  std::array<BasicGroup, 2> f_;
  BasicGroup h_;
  std::array<std::vector<std::int64_t>, 2> embed_;
  std::array<std::vector<std::int64_t>, 2> back_;
  std::array<RightTransversal, 2> tr_;
};

}  // namespace inam

#endif  // INAM_AMALGAM_HPP_
