#ifndef INAM_SPEC_JSON_HPP_
#define INAM_SPEC_JSON_HPP_

#include <fstream>
#include <map>
#include <memory>
#include <sstream>
#include <string>

#include "group_ops.hpp"

namespace inam {

inline const nlohmann::json& require_field(const nlohmann::json& j, const char* key, const std::string& where) {
  if (!j.is_object() || !j.contains(key))
    throw Error(ErrorCode::schema, std::string("missing field '") + key + "'", where);
  return j.at(key);
}

inline std::string spec_kind(const nlohmann::json& j, const std::string& where) {
  const auto& k = require_field(j, "kind", where);
  if (!k.is_string()) throw Error(ErrorCode::schema, "kind must be a string", where + ".kind");
  return k.get<std::string>();
}

inline BasicGroup parse_basic_group(const nlohmann::json& j, const std::string& where) {
  auto kind = spec_kind(j, where);
  if (kind == "cyclic") {
    const auto& o = require_field(j, "order", where);
    if (!o.is_number_integer()) throw Error(ErrorCode::schema, "order must be an integer", where + ".order");
    return BasicGroup::cyclic(o.get<std::int64_t>());
  }
  if (kind == "integers") return BasicGroup::integers();
  if (kind == "table") {
    std::vector<std::string> names;
    if (j.contains("elements")) {
      for (const auto& e : j["elements"]) names.push_back(e.is_string() ? e.get<std::string>() : e.dump());
    }
    const auto& mul = require_field(j, "mul", where);
    if (!mul.is_array()) throw Error(ErrorCode::schema, "mul must be an array of rows", where + ".mul");
    std::vector<std::vector<int>> rows;
    for (std::size_t i = 0; i < mul.size(); ++i) {
      std::vector<int> row;
      if (!mul[i].is_array()) throw Error(ErrorCode::schema, "row must be an array", where + ".mul[" + std::to_string(i) + "]");
      for (const auto& x : mul[i]) {
        if (x.is_number_integer()) {
          row.push_back(x.get<int>());
        } else if (x.is_string()) {
          auto it = std::find(names.begin(), names.end(), x.get<std::string>());
          if (it == names.end())
            throw Error(ErrorCode::schema, "unknown element " + x.dump(), where + ".mul[" + std::to_string(i) + "]");
          row.push_back(static_cast<int>(it - names.begin()));
        } else {
          throw Error(ErrorCode::schema, "table entries are indices or names", where + ".mul");
        }
      }
      rows.push_back(std::move(row));
    }
    return BasicGroup::table(names, rows, where + ".");
  }
  throw Error(ErrorCode::schema, "expected cyclic, integers or table, got " + kind, where + ".kind");
}

inline std::int64_t parse_value(const BasicGroup& g, const nlohmann::json& j, const std::string& where) {
  try {
    return g.value_from_json(j, where);
  } catch (const Error& e) {
    throw Error(ErrorCode::schema, e.what(), where);
  }
}

// Embedding H -> F given as a list of images (in the order of H's values)
// or as an object {h: f}.
inline std::map<std::int64_t, std::int64_t> parse_map(const BasicGroup& src, const BasicGroup& dst,
                                                      const nlohmann::json& j, const std::string& where) {
  std::map<std::int64_t, std::int64_t> m;
  if (j.is_array()) {
    if (static_cast<std::int64_t>(j.size()) != src.size())
      throw Error(ErrorCode::partial_map, "one image per element required", where);
    for (std::size_t i = 0; i < j.size(); ++i) m[static_cast<std::int64_t>(i)] = parse_value(dst, j[i], where);
  } else if (j.is_object()) {
    for (auto it = j.begin(); it != j.end(); ++it) {
      nlohmann::json key = it.key();
      if (src.type() != BasicGroup::Type::table) key = std::stoll(it.key());
      m[parse_value(src, key, where)] = parse_value(dst, it.value(), where);
    }
  } else {
    throw Error(ErrorCode::schema, "map must be an array or object", where);
  }
  return m;
}

inline PointAction parse_action(const nlohmann::json& j, const std::string& where) {
  PointAction a;
  if (j.is_string()) {
    if (j.get<std::string>() == "regular") return a;
    throw Error(ErrorCode::schema, "unknown action " + j.dump(), where);
  }
  auto type = require_field(j, "type", where).get<std::string>();
  if (type == "regular") {
    a.type = PointAction::Type::regular;
  } else if (type == "trivial") {
    a.type = PointAction::Type::trivial;
    a.points = j.value("points", 0);
  } else if (type == "permutation") {
    a.type = PointAction::Type::permutation;
    a.perm = require_field(j, "perm", where).get<std::vector<std::vector<std::int64_t>>>();
  } else if (type == "mod") {
    a.type = PointAction::Type::translation_mod;
    a.points = require_field(j, "modulus", where).get<std::int64_t>();
  } else {
    throw Error(ErrorCode::schema, "unknown action type " + type, where + ".type");
  }
  return a;
}

inline std::shared_ptr<const GraphProductGroup> parse_graph_product(const nlohmann::json& j, const std::string& where) {
  auto graph = SimpGraph::from_json(require_field(j, "graph", where), where + ".graph");
  const auto& vg = require_field(j, "vertex_groups", where);
  std::vector<BasicGroup> groups;
  for (int v = 0; v < graph.size(); ++v) {
    std::string loc = where + ".vertex_groups." + graph.name(v);
    if (vg.is_object()) {
      if (!vg.contains(graph.name(v))) throw Error(ErrorCode::schema, "missing vertex group", loc);
      groups.push_back(parse_basic_group(vg[graph.name(v)], loc));
    } else if (vg.is_array() && static_cast<int>(vg.size()) == graph.size()) {
      groups.push_back(parse_basic_group(vg[v], loc));
    } else {
      throw Error(ErrorCode::schema, "vertex_groups must map every vertex", where + ".vertex_groups");
    }
  }
  return std::make_shared<GraphProductGroup>(std::move(graph), std::move(groups));
}

inline std::shared_ptr<const AmalgamGroup> parse_amalgam(const nlohmann::json& j, const std::string& where) {
  auto a = parse_basic_group(require_field(j, "A", where), where + ".A");
  auto b = parse_basic_group(require_field(j, "B", where), where + ".B");
  auto h = j.contains("H") ? parse_basic_group(j["H"], where + ".H") : BasicGroup::cyclic(1);
  std::map<std::int64_t, std::int64_t> ea{{0, a.id()}}, eb{{0, b.id()}};
  if (j.contains("embed_A")) ea = parse_map(h, a, j["embed_A"], where + ".embed_A");
  if (j.contains("embed_B")) eb = parse_map(h, b, j["embed_B"], where + ".embed_B");
  if (h.size() > 1 && (!j.contains("embed_A") || !j.contains("embed_B")))
    throw Error(ErrorCode::schema, "non-trivial H needs embed_A and embed_B", where);
  return std::make_shared<AmalgamGroup>(a, b, h, ea, eb);
}

inline std::shared_ptr<const HnnGroup> parse_hnn(const nlohmann::json& j, const std::string& where) {
  auto k = parse_basic_group(require_field(j, "K", where), where + ".K");
  const auto& hj = require_field(j, "H", where);
  if (!hj.is_array()) throw Error(ErrorCode::schema, "H must be a list of K elements", where + ".H");
  std::vector<std::int64_t> h;
  for (const auto& x : hj) h.push_back(parse_value(k, x, where + ".H"));
  const auto& pj = require_field(j, "phi", where);
  if (!pj.is_array() || pj.size() != h.size())
    throw Error(ErrorCode::partial_map, "phi must list one image per element of H", where + ".phi");
  std::map<std::int64_t, std::int64_t> phi;
  for (std::size_t i = 0; i < h.size(); ++i) phi[h[i]] = parse_value(k, pj[i], where + ".phi");
  try {
    return std::make_shared<HnnGroup>(k, h, phi);
  } catch (const Error& e) {
    throw Error(e.code(), e.what(), where + "." + e.where());
  }
}

inline std::shared_ptr<const WreathGroup> parse_wreath(const nlohmann::json& j, const std::string& where) {
  auto h = parse_basic_group(require_field(j, "H", where), where + ".H");
  auto k = parse_basic_group(require_field(j, "K", where), where + ".K");
  PointAction a;
  if (j.contains("action")) a = parse_action(j["action"], where + ".action");
  return std::make_shared<WreathGroup>(h, k, a);
}

// Builds an arithmetic context from a JSON group spec.
inline GroupCtx parse_group_spec(const nlohmann::json& j, const std::string& where = "$") {
  auto kind = spec_kind(j, where);
  if (kind == "cyclic" || kind == "integers" || kind == "table")
    return std::make_shared<BasicGroup>(parse_basic_group(j, where));
  if (kind == "graph_product") return parse_graph_product(j, where);
  if (kind == "amalgam") return parse_amalgam(j, where);
  if (kind == "hnn") return parse_hnn(j, where);
  if (kind == "wreath") return parse_wreath(j, where);
  throw Error(ErrorCode::schema, "unknown kind " + kind, where + ".kind");
}

inline nlohmann::json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::io, "cannot open " + path);
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::schema, e.what(), path);
  }
}

inline GroupCtx parse_group_spec_text(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::schema, e.what(), "$");
  }
  return parse_group_spec(j);
}

}  // namespace inam

#endif  // INAM_SPEC_JSON_HPP_
