#ifndef INAM_WREATH_HPP_
#define INAM_WREATH_HPP_

#include <map>
#include <string>
#include <vector>

#include "basic_group.hpp"

namespace inam {

// Action of K on a set X of integer points.
struct PointAction {
  enum class Type { regular, trivial, permutation, translation_mod };

  Type type = Type::regular;
  // trivial: number of points, 0 for countably many; translation_mod: modulus.
  std::int64_t points = 0;
  // permutation: perm[k][x] = k . x
  std::vector<std::vector<std::int64_t>> perm;

  std::string describe() const {
    switch (type) {
      case Type::regular: return "regular";
      case Type::trivial: return points ? "trivial(" + std::to_string(points) + ")" : "trivial(infinite)";
      case Type::permutation: return "permutation(" + std::to_string(perm.empty() ? 0 : perm[0].size()) + ")";
      case Type::translation_mod: return "mod(" + std::to_string(points) + ")";
    }
    return "";
  }
};

// Restricted wreath product H wr_X K = (sum over X of H) ⋊ K. An element
// f·k is stored as [k, x1, h1, x2, h2, ...] with x1 < x2 < ... the support
// of f and h_i = f(x_i) != 1.
class WreathGroup : public Group {
 public:
  WreathGroup(BasicGroup h, BasicGroup k, PointAction action)
      : h_(std::move(h)), k_(std::move(k)), act_(std::move(action)) {
    if (h_.finite() && h_.size() == 1) throw Error(ErrorCode::trivial_group, "lamp group H is trivial", "H");
    switch (act_.type) {
      case PointAction::Type::regular: break;
      case PointAction::Type::trivial:
        if (act_.points < 0) throw Error(ErrorCode::schema, "negative point count", "action.points");
        break;
      case PointAction::Type::permutation: {
        if (!k_.finite()) throw Error(ErrorCode::schema, "permutation action needs finite K", "action");
        if (static_cast<std::int64_t>(act_.perm.size()) != k_.size())
          throw Error(ErrorCode::schema, "one permutation per element of K", "action.perm");
        const auto m = static_cast<std::int64_t>(act_.perm[0].size());
        for (std::int64_t a = 0; a < k_.size(); ++a) {
          if (static_cast<std::int64_t>(act_.perm[a].size()) != m)
            throw Error(ErrorCode::schema, "permutations of different sizes", "action.perm");
          std::vector<char> seen(m, 0);
          for (auto x : act_.perm[a]) {
            if (x < 0 || x >= m || seen[x]) throw Error(ErrorCode::schema, "not a permutation", "action.perm");
            seen[x] = 1;
          }
        }
        for (std::int64_t a = 0; a < k_.size(); ++a)
          for (std::int64_t b = 0; b < k_.size(); ++b)
            for (std::int64_t x = 0; x < m; ++x)
              if (act_.perm[k_.mul(a, b)][x] != act_.perm[a][act_.perm[b][x]])
                throw Error(ErrorCode::not_homomorphism, "permutations do not form an action", "action.perm");
        act_.points = m;
        break;
      }
      case PointAction::Type::translation_mod:
        if (k_.type() != BasicGroup::Type::integers || act_.points < 1)
          throw Error(ErrorCode::schema, "mod action needs K = Z and a positive modulus", "action");
        break;
    }
  }

  const BasicGroup& lamp_group() const { return h_; }
  const BasicGroup& acting_group() const { return k_; }
  const PointAction& action() const { return act_; }

  std::int64_t act(std::int64_t k, std::int64_t x) const {
    switch (act_.type) {
      case PointAction::Type::regular: return k_.mul(k, x);
      case PointAction::Type::trivial: return x;
      case PointAction::Type::permutation: return act_.perm[k][x];
      case PointAction::Type::translation_mod: return (((x + k) % act_.points) + act_.points) % act_.points;
    }
    return x;
  }

  bool valid_point(std::int64_t x) const {
    switch (act_.type) {
      case PointAction::Type::regular: return k_.valid(x);
      case PointAction::Type::trivial: return act_.points == 0 || (x >= 0 && x < act_.points);
      case PointAction::Type::permutation:
      case PointAction::Type::translation_mod: return x >= 0 && x < act_.points;
    }
    return false;
  }

  // nullopt: X infinite.
  std::optional<std::int64_t> point_count() const {
    switch (act_.type) {
      case PointAction::Type::regular:
        if (k_.finite()) return k_.size();
        return std::nullopt;
      case PointAction::Type::trivial:
        if (act_.points) return act_.points;
        return std::nullopt;
      default: return act_.points;
    }
  }

  bool has_finite_orbit() const {
    return act_.type != PointAction::Type::regular || k_.finite();
  }
  bool all_orbits_infinite() const {
    return act_.type == PointAction::Type::regular && !k_.finite();
  }

  std::string kind() const override { return "wreath"; }
  Elt identity() const override { return Elt{{k_.id()}}; }

  Elt multiply(const Elt& a, const Elt& b) const override {
    auto fa = lamps(a);
    const auto k = a.data[0];
    for (std::size_t i = 1; i + 1 < b.data.size(); i += 2) {
      auto x = act(k, b.data[i]);
      auto it = fa.find(x);
      auto v = h_.mul(it == fa.end() ? h_.id() : it->second, b.data[i + 1]);
      if (v == h_.id()) {
        if (it != fa.end()) fa.erase(it);
      } else {
        fa[x] = v;
      }
    }
    return pack(k_.mul(k, b.data[0]), fa);
  }

  Elt inverse(const Elt& a) const override {
    const auto ki = k_.inv(a.data[0]);
    std::map<std::int64_t, std::int64_t> f;
    for (std::size_t i = 1; i + 1 < a.data.size(); i += 2) f[act(ki, a.data[i])] = h_.inv(a.data[i + 1]);
    return pack(ki, f);
  }

  Elt letter(const Letter& l) const override {
    if (l.slot == 0) {
      if (!k_.valid(l.value)) throw Error(ErrorCode::unknown_letter, "letter outside K");
      return Elt{{l.value}};
    }
    if (l.slot != 1 || !h_.valid(l.value) || !valid_point(l.aux))
      throw Error(ErrorCode::unknown_letter, "lamp letter outside H or X");
    if (l.value == h_.id()) return identity();
    return Elt{{k_.id(), l.aux, l.value}};
  }

  std::vector<Elt> generators() const override {
    std::vector<Elt> out;
    for (auto x : k_.factor_generators()) out.push_back(Elt{{x}});
    for (auto v : h_.factor_generators()) out.push_back(Elt{{k_.id(), 0, v}});
    return out;
  }

  std::optional<std::uint64_t> order() const override {
    auto pts = point_count();
    if (!pts || !h_.finite() || !k_.finite()) return std::nullopt;
    std::uint64_t total = static_cast<std::uint64_t>(k_.size());
    for (std::int64_t i = 0; i < *pts; ++i) total *= static_cast<std::uint64_t>(h_.size());
    return total;
  }

  nlohmann::json elt_to_json(const Elt& e) const override {
    auto out = nlohmann::json::array();
    for (std::size_t i = 1; i + 1 < e.data.size(); i += 2)
      out.push_back({"lamp", {e.data[i], h_.value_to_json(e.data[i + 1])}});
    if (e.data[0] != k_.id()) out.push_back({"K", k_.value_to_json(e.data[0])});
    return out;
  }

  Letter letter_from_json(const nlohmann::json& pair) const override {
    if (!pair.is_array() || pair.size() != 2 || !pair[0].is_string())
      throw Error(ErrorCode::unknown_letter, "letter must be [K|lamp, value]: " + pair.dump());
    auto lab = pair[0].get<std::string>();
    if (lab == "K") return Letter{0, k_.value_from_json(pair[1], pair.dump()), 0};
    if (lab == "lamp" && pair[1].is_array() && pair[1].size() == 2 && pair[1][0].is_number_integer())
      return Letter{1, h_.value_from_json(pair[1][1], pair.dump()), pair[1][0].get<std::int64_t>()};
    throw Error(ErrorCode::unknown_letter, "unknown wreath letter " + pair.dump());
  }

  std::string generator_convention() const override {
    return "wreath: generators of K plus non-identity lamps of H at point 0";
  }

 private:
  static std::map<std::int64_t, std::int64_t> lamps(const Elt& a) {
    std::map<std::int64_t, std::int64_t> f;
    for (std::size_t i = 1; i + 1 < a.data.size(); i += 2) f[a.data[i]] = a.data[i + 1];
    return f;
  }

  static Elt pack(std::int64_t k, const std::map<std::int64_t, std::int64_t>& f) {
    Elt e{{k}};
    for (auto [x, v] : f) {
      e.data.push_back(x);
      e.data.push_back(v);
    }
    return e;
  }

  BasicGroup h_;
  BasicGroup k_;
  PointAction act_;
};

}  // namespace inam

#endif  // INAM_WREATH_HPP_
