#ifndef CDLAB_CHAIN_COMPLEX_JSON_HPP
#define CDLAB_CHAIN_COMPLEX_JSON_HPP

#include <fstream>
#include <set>
#include <sstream>
#include <string>

#include <json.hpp>

#include "cdlab/chain_complex.hpp"

namespace cdlab {

/// Reads `{"name": str, "cells": [{"id": str, "dim": int}], "boundary": {"id": [ids...]}}`.
/// Missing boundary entries mean an empty boundary; unknown keys are ignored.
inline ChainComplex complex_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw ComplexError("chain complex JSON must be an object");
  if (!j.contains("cells") || !j["cells"].is_array()) throw ComplexError("missing 'cells' array");

  ChainComplex c(j.value("name", std::string{}));
  std::set<std::string> ids;
  for (const auto& cell : j["cells"]) {
    if (!cell.is_object() || !cell.contains("id") || !cell["id"].is_string() || !cell.contains("dim") ||
        !cell["dim"].is_number_integer())
      throw ComplexError("each cell needs a string 'id' and an integer 'dim'");
    const auto id = cell["id"].get<std::string>();
    if (!ids.insert(id).second) throw ComplexError("duplicate cell id '" + id + "'");
    c.add_cell(id, cell["dim"].get<int>());
  }

  if (j.contains("boundary")) {
    const auto& bd = j["boundary"];
    if (!bd.is_object()) throw ComplexError("'boundary' must be an object");
    for (const auto& [id, faces] : bd.items()) {
      if (!ids.count(id)) throw ComplexError("boundary given for unknown cell '" + id + "'");
      if (!faces.is_array()) throw ComplexError("boundary of '" + id + "' must be an array");
      std::vector<std::string> list;
      std::set<std::string> seen;
      for (const auto& f : faces) {
        if (!f.is_string()) throw ComplexError("boundary of '" + id + "' must list cell ids");
        auto name = f.get<std::string>();
        if (!seen.insert(name).second) throw ComplexError("duplicate face '" + name + "' in boundary of '" + id + "'");
        list.push_back(std::move(name));
      }
      c.set_boundary(id, std::move(list));
    }
  }
  return c;
}

inline ChainComplex complex_from_json_text(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ComplexError(std::string("JSON parse error: ") + e.what());
  }
  return complex_from_json(j);
}

inline ChainComplex load_complex(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ComplexError("cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return complex_from_json_text(ss.str());
}

inline nlohmann::json complex_to_json(const ChainComplex& c) {
  nlohmann::json j;
  j["name"] = c.name();
  j["cells"] = nlohmann::json::array();
  nlohmann::json bd = nlohmann::json::object();
  for (const auto& e : c.entries()) {
    j["cells"].push_back({{"id", e.id}, {"dim", e.dim}});
    if (!e.boundary.empty()) bd[e.id] = e.boundary;
  }
  j["boundary"] = bd;
  return j;
}

/// Same cells, same dimensions, same boundary sets (order-insensitive).
inline bool same_complex(const ChainComplex& a, const ChainComplex& b) {
  if (a.size() != b.size()) return false;
  for (const auto& e : a.entries()) {
    if (!b.has_cell(e.id) || b.dim_of(e.id) != e.dim) return false;
    const auto& other = b.boundary_of(e.id);
    if (std::set<std::string>(e.boundary.begin(), e.boundary.end()) !=
        std::set<std::string>(other.begin(), other.end()))
      return false;
  }
  return true;
}

}  // namespace cdlab

#endif  // CDLAB_CHAIN_COMPLEX_JSON_HPP
