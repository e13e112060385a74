#ifndef INAM_BASIC_GROUP_HPP_
#define INAM_BASIC_GROUP_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "elt.hpp"
#include "error.hpp"

namespace inam {

// Cyclic groups, the integers and finite groups given by a Cayley table.
// Elements are encoded as a single value: a residue, an integer, or a row
// index of the table.
class BasicGroup : public Group {
 public:
  enum class Type { cyclic, integers, table };

  static BasicGroup cyclic(std::int64_t n) {
    if (n < 1) throw Error(ErrorCode::schema, "cyclic order must be positive", "order");
    BasicGroup g;
    g.type_ = Type::cyclic;
    g.n_ = n;
    return g;
  }

  static BasicGroup integers() {
    BasicGroup g;
    g.type_ = Type::integers;
    return g;
  }

  // Validates the Latin square, identity, inverses and associativity.
  static BasicGroup table(std::vector<std::string> names, std::vector<std::vector<int>> mul,
                          const std::string& where = "") {
    const int n = static_cast<int>(mul.size());
    if (n == 0) throw Error(ErrorCode::non_group_table, "empty table", where + "mul");
    if (!names.empty() && static_cast<int>(names.size()) != n)
      throw Error(ErrorCode::schema, "elements and mul sizes differ", where + "elements");
    if (names.empty())
      for (int i = 0; i < n; ++i) names.push_back(std::to_string(i));
    for (int i = 0; i < n; ++i) {
      if (static_cast<int>(mul[i].size()) != n)
        throw Error(ErrorCode::non_group_table, "row has wrong length",
                    where + "mul[" + std::to_string(i) + "]");
      std::vector<char> seen(n, 0);
      for (int j = 0; j < n; ++j) {
        int v = mul[i][j];
        if (v < 0 || v >= n)
          throw Error(ErrorCode::non_group_table, "entry out of range",
                      where + "mul[" + std::to_string(i) + "][" + std::to_string(j) + "]");
        if (seen[v])
          throw Error(ErrorCode::non_group_table, "row is not a permutation",
                      where + "mul[" + std::to_string(i) + "]");
        seen[v] = 1;
      }
    }
    for (int j = 0; j < n; ++j) {
      std::vector<char> seen(n, 0);
      for (int i = 0; i < n; ++i) {
        if (seen[mul[i][j]])
          throw Error(ErrorCode::non_group_table, "column is not a permutation",
                      where + "mul[*][" + std::to_string(j) + "]");
        seen[mul[i][j]] = 1;
      }
    }
    int e = -1;
    for (int i = 0; i < n && e < 0; ++i) {
      bool ok = true;
      for (int j = 0; j < n && ok; ++j) ok = mul[i][j] == j && mul[j][i] == j;
      if (ok) e = i;
    }
    if (e < 0) throw Error(ErrorCode::non_group_table, "no identity element", where + "mul");
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        for (int c = 0; c < n; ++c)
          if (mul[mul[a][b]][c] != mul[a][mul[b][c]])
            throw Error(ErrorCode::non_associative,
                        "(" + names[a] + names[b] + ")" + names[c] + " != " + names[a] + "(" +
                            names[b] + names[c] + ")",
                        where + "mul");
    BasicGroup g;
    g.type_ = Type::table;
    g.n_ = n;
    g.e_ = e;
    g.names_ = std::move(names);
    g.mul_ = std::move(mul);
    g.inv_.assign(n, 0);
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        if (g.mul_[a][b] == e) g.inv_[a] = b;
    return g;
  }

  Type type() const { return type_; }
  bool finite() const { return type_ != Type::integers; }
  std::int64_t size() const { return n_; }

  std::int64_t id() const { return type_ == Type::table ? e_ : 0; }

  std::int64_t mul(std::int64_t a, std::int64_t b) const {
    switch (type_) {
      case Type::cyclic: return (a + b) % n_;
      case Type::integers: return a + b;
      case Type::table: return mul_[a][b];
    }
    return 0;
  }

  std::int64_t inv(std::int64_t a) const {
    switch (type_) {
      case Type::cyclic: return a == 0 ? 0 : n_ - a;
      case Type::integers: return -a;
      case Type::table: return inv_[a];
    }
    return 0;
  }

  bool valid(std::int64_t v) const {
    return type_ == Type::integers || (v >= 0 && v < n_);
  }

  // All element values of a finite group, identity first.
  std::vector<std::int64_t> elements() const {
    if (!finite()) throw Error(ErrorCode::unsupported, "element list of an infinite group");
    std::vector<std::int64_t> out{id()};
    for (std::int64_t v = 0; v < n_; ++v)
      if (v != id()) out.push_back(v);
    return out;
  }

  // Generators contributed when this group is a factor of a larger group.
  std::vector<std::int64_t> factor_generators() const {
    if (type_ == Type::integers) return {1, -1};
    auto all = elements();
    return {all.begin() + 1, all.end()};
  }

  bool abelian() const {
    if (type_ != Type::table) return true;
    for (int a = 0; a < n_; ++a)
      for (int b = 0; b < n_; ++b)
        if (mul_[a][b] != mul_[b][a]) return false;
    return true;
  }

  std::int64_t element_order(std::int64_t v) const {
    if (type_ == Type::integers) return v == 0 ? 1 : 0;
    std::int64_t k = 1, x = v;
    while (x != id()) {
      x = mul(x, v);
      ++k;
    }
    return k;
  }

  nlohmann::json value_to_json(std::int64_t v) const {
    if (type_ == Type::table) return names_[v];
    return v;
  }

  std::int64_t value_from_json(const nlohmann::json& j, const std::string& where = "") const {
    if (type_ == Type::table) {
      if (j.is_string()) {
        for (int i = 0; i < n_; ++i)
          if (names_[i] == j.get<std::string>()) return i;
        throw Error(ErrorCode::unknown_letter, "no table element " + j.dump(), where);
      }
      if (j.is_number_integer() && valid(j.get<std::int64_t>())) return j.get<std::int64_t>();
      throw Error(ErrorCode::unknown_letter, "bad table element " + j.dump(), where);
    }
    if (!j.is_number_integer()) throw Error(ErrorCode::unknown_letter, "expected integer", where);
    std::int64_t v = j.get<std::int64_t>();
    if (type_ == Type::cyclic) v = ((v % n_) + n_) % n_;
    return v;
  }

  const std::vector<std::string>& names() const { return names_; }
  const std::vector<std::vector<int>>& table_rows() const { return mul_; }

  std::string describe() const {
    switch (type_) {
      case Type::cyclic: return "Z/" + std::to_string(n_);
      case Type::integers: return "Z";
      case Type::table: return "table(" + std::to_string(n_) + ")";
    }
    return "";
  }

  // Group interface: a standalone basic group.
  std::string kind() const override {
    switch (type_) {
      case Type::cyclic: return "cyclic";
      case Type::integers: return "integers";
      case Type::table: return "table";
    }
    return "";
  }
  Elt identity() const override { return Elt{{id()}}; }
  Elt multiply(const Elt& a, const Elt& b) const override {
    return Elt{{mul(a.data.at(0), b.data.at(0))}};
  }
  Elt inverse(const Elt& a) const override { return Elt{{inv(a.data.at(0))}}; }
  Elt letter(const Letter& l) const override {
    if (l.slot != 0 || !valid(l.value))
      throw Error(ErrorCode::unknown_letter, "letter outside " + describe());
    return Elt{{l.value}};
  }
  std::vector<Elt> generators() const override {
    std::vector<Elt> out;
    if (type_ == Type::cyclic) {
      if (n_ > 1) out.push_back(Elt{{1}});
      if (n_ > 2) out.push_back(Elt{{n_ - 1}});
    } else {
      for (auto v : factor_generators()) out.push_back(Elt{{v}});
    }
    return out;
  }
  std::optional<std::uint64_t> order() const override {
    if (!finite()) return std::nullopt;
    return static_cast<std::uint64_t>(n_);
  }
  nlohmann::json elt_to_json(const Elt& e) const override {
    auto out = nlohmann::json::array();
    if (e.data.at(0) != id()) out.push_back({"g", value_to_json(e.data[0])});
    return out;
  }
  Letter letter_from_json(const nlohmann::json& pair) const override {
    const auto& v = pair.is_array() && pair.size() == 2 ? pair[1] : pair;
    return Letter{0, value_from_json(v), 0};
  }
  std::string generator_convention() const override {
    if (type_ == Type::cyclic) return "cyclic: {g, g^-1}";
    if (type_ == Type::integers) return "integers: {+1, -1}";
    return "table: all non-identity elements";
  }

 private:
  BasicGroup() = default;

  Type type_ = Type::cyclic;
  std::int64_t n_ = 1;
  std::int64_t e_ = 0;
  std::vector<std::string> names_;
  std::vector<std::vector<int>> mul_;
  std::vector<int> inv_;
};

}  // namespace inam

#endif  // INAM_BASIC_GROUP_HPP_
