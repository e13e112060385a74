#ifndef INAM_GRAPH_PRODUCT_HPP_
#define INAM_GRAPH_PRODUCT_HPP_

#include <string>
#include <utility>
#include <vector>

#include "basic_group.hpp"
#include "simp_graph.hpp"

namespace inam {

// Graph product G_Γ of basic vertex groups. An element is stored as its
// syllable sequence [v1, x1, v2, x2, ...]: reduced, and the lexicographically
// least shuffle (by vertex index) among equivalent reduced words.
class GraphProductGroup : public Group {
 public:
  struct Syllable {
    int v;
    std::int64_t x;
  };

  GraphProductGroup(SimpGraph graph, std::vector<BasicGroup> vertex_groups)
      : graph_(std::move(graph)), groups_(std::move(vertex_groups)) {
    if (static_cast<int>(groups_.size()) != graph_.size())
      throw Error(ErrorCode::schema, "one vertex group per vertex required", "vertex_groups");
  }

  const SimpGraph& graph() const { return graph_; }
  const BasicGroup& vertex_group(int v) const { return groups_.at(v); }
  const std::vector<BasicGroup>& vertex_groups() const { return groups_; }

  static std::vector<Syllable> syllables(const Elt& g) {
    std::vector<Syllable> out;
    for (std::size_t i = 0; i + 1 < g.data.size(); i += 2)
      out.push_back({static_cast<int>(g.data[i]), g.data[i + 1]});
    return out;
  }

  static std::size_t syllable_length(const Elt& g) { return g.data.size() / 2; }

  // Appends one syllable to a reduced word, keeping it reduced.
  void append_syllable(std::vector<Syllable>& w, int v, std::int64_t x) const {
    const auto& G = groups_[v];
    if (x == G.id()) return;
    for (int i = static_cast<int>(w.size()) - 1; i >= 0; --i) {
      if (w[i].v == v) {
        w[i].x = G.mul(w[i].x, x);
        if (w[i].x == G.id()) w.erase(w.begin() + i);
        return;
      }
      if (!graph_.adjacent(w[i].v, v)) break;
    }
    w.push_back({v, x});
  }

  // Lex-least linear extension of the non-commutation order.
  Elt normal_form(const std::vector<Syllable>& w) const {
    const std::size_t n = w.size();
    std::vector<int> indeg(n, 0);
    std::vector<std::vector<int>> after(n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (!graph_.adjacent(w[i].v, w[j].v)) {
          after[i].push_back(static_cast<int>(j));
          ++indeg[j];
        }
    std::vector<char> done(n, 0);
    Elt out;
    out.data.reserve(2 * n);
    for (std::size_t step = 0; step < n; ++step) {
      int best = -1;
      for (std::size_t i = 0; i < n; ++i)
        if (!done[i] && indeg[i] == 0 && (best < 0 || w[i].v < w[best].v)) best = static_cast<int>(i);
      done[best] = 1;
      for (int j : after[best]) --indeg[j];
      out.data.push_back(w[best].v);
      out.data.push_back(w[best].x);
    }
    return out;
  }

  // Shortest representative of the coset g G_S.
  Elt strip_suffix(const Elt& g, Mask s) const {
    auto w = syllables(g);
    std::vector<char> keep(w.size(), 1);
    for (int i = static_cast<int>(w.size()) - 1; i >= 0; --i) {
      if (!(s & bit(w[i].v))) continue;
      bool free = true;
      for (std::size_t j = i + 1; j < w.size() && free; ++j)
        if (keep[j] && !graph_.adjacent(w[i].v, w[j].v)) free = false;
      if (free) keep[i] = 0;
    }
    std::vector<Syllable> kept;
    for (std::size_t i = 0; i < w.size(); ++i)
      if (keep[i]) kept.push_back(w[i]);
    return normal_form(kept);
  }

  bool in_subgroup(const Elt& g, Mask s) const {
    for (std::size_t i = 0; i < g.data.size(); i += 2)
      if (!(s & bit(static_cast<int>(g.data[i])))) return false;
    return true;
  }

  Elt syllable_elt(int v, std::int64_t x) const {
    if (x == groups_.at(v).id()) return {};
    return Elt{{v, x}};
  }

  std::string kind() const override { return "graph_product"; }
  Elt identity() const override { return {}; }

  Elt multiply(const Elt& a, const Elt& b) const override {
    auto w = syllables(a);
    for (const auto& s : syllables(b)) append_syllable(w, s.v, s.x);
    return normal_form(w);
  }

  Elt inverse(const Elt& a) const override {
    auto w = syllables(a);
    std::vector<Syllable> r;
    for (auto it = w.rbegin(); it != w.rend(); ++it) r.push_back({it->v, groups_[it->v].inv(it->x)});
    return normal_form(r);
  }

  Elt letter(const Letter& l) const override {
    if (l.slot < 0 || l.slot >= graph_.size() || !groups_[l.slot].valid(l.value))
      throw Error(ErrorCode::unknown_letter, "letter outside the declared vertex groups");
    return syllable_elt(l.slot, l.value);
  }

  std::vector<Elt> generators() const override {
    std::vector<Elt> out;
    for (int v = 0; v < graph_.size(); ++v)
      for (auto x : groups_[v].factor_generators()) out.push_back(syllable_elt(v, x));
    return out;
  }

  std::optional<std::uint64_t> order() const override {
    // Finite iff the non-trivial vertex groups are finite and pairwise adjacent.
    std::uint64_t total = 1;
    for (int v = 0; v < graph_.size(); ++v) {
      if (!groups_[v].finite()) return std::nullopt;
      if (groups_[v].size() == 1) continue;
      for (int w = 0; w < graph_.size(); ++w)
        if (w != v && !(groups_[w].finite() && groups_[w].size() == 1) && !graph_.adjacent(v, w))
          return std::nullopt;
      total *= static_cast<std::uint64_t>(groups_[v].size());
    }
    return total;
  }

  nlohmann::json elt_to_json(const Elt& e) const override {
    auto out = nlohmann::json::array();
    for (const auto& s : syllables(e)) out.push_back({graph_.name(s.v), groups_[s.v].value_to_json(s.x)});
    return out;
  }

  Letter letter_from_json(const nlohmann::json& pair) const override {
    if (!pair.is_array() || pair.size() != 2 || !pair[0].is_string())
      throw Error(ErrorCode::unknown_letter, "letter must be [vertex, value]: " + pair.dump());
    int v = graph_.index_of(pair[0].get<std::string>());
    if (v < 0) throw Error(ErrorCode::unknown_letter, "unknown vertex " + pair[0].dump());
    return Letter{v, groups_[v].value_from_json(pair[1], pair.dump()), 0};
  }

  std::string generator_convention() const override {
    return "graph_product: union of vertex-group generators (finite: all non-identity, integers: +-1)";
  }

 private:
  SimpGraph graph_;
  std::vector<BasicGroup> groups_;
};

}  // namespace inam

#endif  // INAM_GRAPH_PRODUCT_HPP_
