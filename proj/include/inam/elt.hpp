#ifndef INAM_ELT_HPP_
#define INAM_ELT_HPP_

#include <compare>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

namespace inam {

// Quoted DOT identifier.
inline std::string dot_quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + '"';
}

// Canonical group element. The meaning of `data` is fixed by the owning
// group kind; two elements of one group are equal iff their data agree.
struct Elt {
  std::vector<std::int64_t> data;

  bool operator==(const Elt&) const = default;
};

// Shortlex: shorter encodings first, then lexicographic. This is the
// "canonical enumeration order" used for every deterministic tie-break.
inline bool operator<(const Elt& a, const Elt& b) {
  if (a.data.size() != b.data.size()) return a.data.size() < b.data.size();
  return a.data < b.data;
}

struct EltHash {
  std::size_t operator()(const Elt& e) const noexcept {
    std::uint64_t h = 0x9e3779b97f4a7c15ULL ^ e.data.size();
    for (auto v : e.data) {
      h ^= static_cast<std::uint64_t>(v) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    return static_cast<std::size_t>(h);
  }
};

// A generator-letter. `slot` names the vertex / factor / stable letter,
// `value` the element inside it, `aux` an extra coordinate (wreath lamps).
struct Letter {
  int slot = 0;
  std::int64_t value = 0;
  std::int64_t aux = 0;
};

using Word = std::vector<Letter>;

class Group {
 public:
  virtual ~Group() = default;

  virtual std::string kind() const = 0;
  virtual Elt identity() const = 0;
  virtual Elt multiply(const Elt& a, const Elt& b) const = 0;
  virtual Elt inverse(const Elt& a) const = 0;
  virtual Elt letter(const Letter& l) const = 0;
  // Generating set used by balls and conjugator bounds.
  virtual std::vector<Elt> generators() const = 0;
  // nullopt means infinite.
  virtual std::optional<std::uint64_t> order() const = 0;
  virtual nlohmann::json elt_to_json(const Elt& e) const = 0;
  // Parses one [label, value] pair.
  virtual Letter letter_from_json(const nlohmann::json& pair) const = 0;
  virtual std::string generator_convention() const = 0;

  bool is_identity(const Elt& e) const { return e == identity(); }

  Elt canonicalize(const Word& w) const {
    Elt acc = identity();
    for (const auto& l : w) acc = multiply(acc, letter(l));
    return acc;
  }

  Elt element_from_json(const nlohmann::json& j) const {
    Word w;
    if (!j.is_array()) throw std::invalid_argument("element must be an array of pairs");
    for (const auto& p : j) w.push_back(letter_from_json(p));
    return canonicalize(w);
  }

  Elt conjugate(const Elt& k, const Elt& g) const {
    return multiply(multiply(k, g), inverse(k));
  }

  Elt power(const Elt& g, std::int64_t n) const {
    Elt base = n < 0 ? inverse(g) : g;
    std::uint64_t m = n < 0 ? static_cast<std::uint64_t>(-n) : static_cast<std::uint64_t>(n);
    Elt acc = identity();
    while (m) {
      if (m & 1) acc = multiply(acc, base);
      base = multiply(base, base);
      m >>= 1;
    }
    return acc;
  }

  std::string to_string(const Elt& e) const { return elt_to_json(e).dump(); }
};

using GroupCtx = std::shared_ptr<const Group>;

}  // namespace inam

#endif  // INAM_ELT_HPP_
