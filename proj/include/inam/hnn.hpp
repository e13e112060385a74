#ifndef INAM_HNN_HPP_
#define INAM_HNN_HPP_

#include <map>
#include <string>
#include <vector>

#include "transversal.hpp"

namespace inam {

// HNN extension K*_φ of a finite group K along φ: H -> K, with the relation
// t h t^-1 = φ(h). An element is stored as [k0, e1, c1, e2, c2, ...] meaning
// k0 t^e1 c1 t^e2 c2 ..., e_i = ±1. After t the coefficient is a right-coset
// representative of H in K, after t^-1 one of φ(H); no pinch t^e 1 t^-e.
class HnnGroup : public Group {
 public:
  HnnGroup(BasicGroup k, std::vector<std::int64_t> h, std::map<std::int64_t, std::int64_t> phi)
      : k_(std::move(k)), h_(std::move(h)) {
    if (!k_.finite()) throw Error(ErrorCode::unsupported, "HNN arithmetic needs a finite base group");
    require_subgroup(k_, h_, "H");
    if (phi.size() != h_.size()) throw Error(ErrorCode::partial_map, "phi must be defined on all of H", "phi");
    for (auto x : h_)
      if (!phi.count(x)) throw Error(ErrorCode::partial_map, "phi undefined on an element of H", "phi");
    require_embedding(k_, k_, phi, "phi");
    phi_.assign(k_.size(), -1);
    phi_inv_.assign(k_.size(), -1);
    std::vector<std::int64_t> image;
    for (auto [x, y] : phi) {
      phi_[x] = y;
      phi_inv_[y] = x;
      image.push_back(y);
    }
    image_ = image;
    tr_plus_ = RightTransversal(k_, h_);
    tr_minus_ = RightTransversal(k_, image_);
  }

  const BasicGroup& base() const { return k_; }
  const std::vector<std::int64_t>& subgroup() const { return h_; }
  const std::vector<std::int64_t>& image() const { return image_; }
  bool in_h(std::int64_t x) const { return tr_plus_.contains(x); }
  bool in_image(std::int64_t x) const { return tr_minus_.contains(x); }
  std::int64_t phi(std::int64_t x) const { return phi_.at(x); }
  std::int64_t phi_inv(std::int64_t x) const { return phi_inv_.at(x); }
  std::int64_t index_h() const { return tr_plus_.index; }
  std::int64_t index_image() const { return tr_minus_.index; }
  bool ascending() const { return index_h() == 1 || index_image() == 1; }

  static std::size_t t_length(const Elt& g) { return (g.data.size() - 1) / 2; }

  Elt base_elt(std::int64_t x) const { return Elt{{x}}; }
  Elt stable(int e) const {
    Elt w = identity();
    rmul_t(w, e);
    return w;
  }

  std::string kind() const override { return "hnn"; }
  Elt identity() const override { return Elt{{k_.id()}}; }

  Elt multiply(const Elt& a, const Elt& b) const override {
    Elt w = a;
    rmul_k(w, b.data[0]);
    for (std::size_t i = 1; i + 1 < b.data.size(); i += 2) {
      rmul_t(w, static_cast<int>(b.data[i]));
      rmul_k(w, b.data[i + 1]);
    }
    return w;
  }

  Elt inverse(const Elt& a) const override {
    Elt w = identity();
    for (std::size_t i = a.data.size() - 1; i >= 2; i -= 2) {
      rmul_k(w, k_.inv(a.data[i]));
      rmul_t(w, -static_cast<int>(a.data[i - 1]));
    }
    rmul_k(w, k_.inv(a.data[0]));
    return w;
  }

  Elt letter(const Letter& l) const override {
    Elt w = identity();
    if (l.slot == 0) {
      if (!k_.valid(l.value)) throw Error(ErrorCode::unknown_letter, "letter outside K");
      rmul_k(w, l.value);
      return w;
    }
    if (l.slot != 1) throw Error(ErrorCode::unknown_letter, "unknown HNN letter slot");
    int e = l.value < 0 ? -1 : 1;
    for (std::int64_t i = 0; i < (l.value < 0 ? -l.value : l.value); ++i) rmul_t(w, e);
    return w;
  }

  std::vector<Elt> generators() const override {
    std::vector<Elt> out;
    for (auto x : k_.factor_generators()) out.push_back(base_elt(x));
    out.push_back(stable(1));
    out.push_back(stable(-1));
    return out;
  }

  std::optional<std::uint64_t> order() const override { return std::nullopt; }

  nlohmann::json elt_to_json(const Elt& e) const override {
    auto out = nlohmann::json::array();
    if (e.data[0] != k_.id()) out.push_back({"K", k_.value_to_json(e.data[0])});
    for (std::size_t i = 1; i + 1 < e.data.size(); i += 2) {
      out.push_back({"t", e.data[i]});
      if (e.data[i + 1] != k_.id()) out.push_back({"K", k_.value_to_json(e.data[i + 1])});
    }
    return out;
  }

  Letter letter_from_json(const nlohmann::json& pair) const override {
    if (!pair.is_array() || pair.size() != 2 || !pair[0].is_string())
      throw Error(ErrorCode::unknown_letter, "letter must be [K|t, value]: " + pair.dump());
    auto lab = pair[0].get<std::string>();
    if (lab == "K") return Letter{0, k_.value_from_json(pair[1], pair.dump()), 0};
    if (lab == "t" && pair[1].is_number_integer()) return Letter{1, pair[1].get<std::int64_t>(), 0};
    throw Error(ErrorCode::unknown_letter, "unknown HNN letter " + pair.dump());
  }

  std::string generator_convention() const override {
    return "hnn: all non-identity elements of K plus t, t^-1";
  }

  // w <- w * y for y in K: subgroup parts travel left through the t-letters.
  void rmul_k(Elt& w, std::int64_t y) const {
    for (std::size_t i = w.data.size() - 1; i >= 2; i -= 2) {
      int e = static_cast<int>(w.data[i - 1]);
      const auto& tr = e > 0 ? tr_plus_ : tr_minus_;
      auto x = k_.mul(w.data[i], y);
      w.data[i] = tr.rep[x];
      auto s = tr.part[x];
      y = e > 0 ? phi_[s] : phi_inv_[s];
      if (y == k_.id()) return;
    }
    w.data[0] = k_.mul(w.data[0], y);
  }

  // w <- w * t^e.
  void rmul_t(Elt& w, int e) const {
    const std::size_t n = t_length(w);
    if (n > 0 && w.data[2 * n - 1] == -e && w.data[2 * n] == k_.id()) {
      w.data.resize(w.data.size() - 2);
      return;
    }
    w.data.push_back(e);
    w.data.push_back(k_.id());
  }

 private:
  BasicGroup k_;
  std::vector<std::int64_t> h_;
  std::vector<std::int64_t> image_;
  std::vector<std::int64_t> phi_;
  std::vector<std::int64_t> phi_inv_;
  RightTransversal tr_plus_;
  RightTransversal tr_minus_;
};

}  // namespace inam

#endif  // INAM_HNN_HPP_
