#pragma once

// Array file format (JSON, 1-based):
//   {"shape":[n1,...,nm], "k":k, "phi":[[y...], ...]}   image tuple per domain cell, row-major
//   {"shape":[n1,...,nm], "k":k, "dots":[[a1,...,am], ...]}
// Writers emit both fields with dots sorted; readers accept either and
// cross-validate when both are present.

#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "costas_nd/analysis.hpp"
#include "costas_nd/core.hpp"

namespace costas_nd {

using json = nlohmann::json;

/// Malformed input: bad JSON, missing/ill-typed fields, invalid geometry
/// or a non-bijective phi table.
class ParseError : public Error {
 public:
  using Error::Error;
};

inline json one_based(std::span<const int> v) {
  json j = json::array();
  for (int x : v) j.push_back(x + 1);
  return j;
}

inline json to_json(const PermutationArray& p) {
  json phi = json::array();
  for (Index x = 0; x < p.order(); ++x) phi.push_back(one_based(p.image(x)));
  json dots = json::array();
  for (const Dot& d : p.dots().dots()) dots.push_back(one_based(d.span()));
  return json{{"shape", p.shape().sizes()}, {"k", p.split().k()}, {"phi", phi}, {"dots", dots}};
}

/// A parsed array file. `permutation` is absent when a dots-only file does
/// not describe the graph of a bijection for its split.
struct ArrayDocument {
  BinaryArray array;
  int k = 1;
  std::optional<PermutationArray> permutation;
};

namespace detail {

inline std::vector<int> int_tuple(const json& j, const std::string& where, bool minus_one) {
  if (!j.is_array()) throw ParseError(where + ": expected an array of integers");
  std::vector<int> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_number_integer())
      throw ParseError(where + "[" + std::to_string(i) + "]: expected an integer");
    out.push_back(j[i].get<int>() - (minus_one ? 1 : 0));
  }
  return out;
}

}  // namespace detail

inline ArrayDocument array_from_json(const json& j) {
  if (!j.is_object()) throw ParseError("top level: expected a JSON object");
  if (!j.contains("shape")) throw ParseError("missing field 'shape'");
  if (!j.contains("k")) throw ParseError("missing field 'k'");
  if (!j.contains("phi") && !j.contains("dots"))
    throw ParseError("need field 'phi' or 'dots'");
  if (!j["k"].is_number_integer()) throw ParseError("field 'k': expected an integer");

  ArrayDocument doc;
  SplitShape split;
  try {
    split = SplitShape(Shape(detail::int_tuple(j["shape"], "field 'shape'", false)),
                       j["k"].get<int>());
  } catch (const ParseError&) {
    throw;
  } catch (const Error& e) {
    throw ParseError(std::string("field 'shape'/'k': ") + e.what());
  }
  doc.k = split.k();

  std::optional<PermutationArray> from_phi;
  if (j.contains("phi")) {
    const json& phi = j["phi"];
    if (!phi.is_array()) throw ParseError("field 'phi': expected an array of tuples");
    std::vector<std::vector<int>> images;
    for (std::size_t x = 0; x < phi.size(); ++x)
      images.push_back(detail::int_tuple(phi[x], "field 'phi'[" + std::to_string(x) + "]", true));
    try {
      from_phi = from_bijection(split, images);
    } catch (const Error& e) {
      throw ParseError(std::string("field 'phi': ") + e.what());
    }
  }

  std::optional<BinaryArray> from_dots;
  if (j.contains("dots")) {
    const json& dots = j["dots"];
    if (!dots.is_array()) throw ParseError("field 'dots': expected an array of tuples");
    std::vector<Dot> pts;
    for (std::size_t i = 0; i < dots.size(); ++i)
      pts.emplace_back(detail::int_tuple(dots[i], "field 'dots'[" + std::to_string(i) + "]", true));
    try {
      from_dots = BinaryArray(split.shape(), std::move(pts));
    } catch (const Error& e) {
      throw ParseError(std::string("field 'dots': ") + e.what());
    }
  }

  if (from_phi && from_dots && from_phi->dots() != *from_dots)
    throw ParseError("fields 'phi' and 'dots' describe different arrays");

  if (from_phi) {
    doc.array = from_phi->dots();
    doc.permutation = std::move(from_phi);
  } else {
    doc.array = std::move(*from_dots);
    try {
      doc.permutation = as_permutation(doc.array, doc.k);
    } catch (const Error&) {
      doc.permutation.reset();
    }
  }
  return doc;
}

inline ArrayDocument parse_array(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  return array_from_json(j);
}

inline ArrayDocument read_array_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_array(ss.str());
}

inline void write_array_file(const std::string& path, const PermutationArray& p) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path);
  out << to_json(p).dump(2) << '\n';
}

inline json to_json(const WindowWitness& w) {
  auto pair = [](const PointPair& p) {
    return json{{"alpha", one_based(p.alpha)}, {"omega", one_based(p.omega)}};
  };
  return json{{"offset", one_based(w.offset)}, {"pair1", pair(w.first)}, {"pair2", pair(w.second)}};
}

inline WindowWitness witness_from_json(const json& j) {
  auto pair = [](const json& p, const std::string& name) {
    return PointPair{detail::int_tuple(p.at("alpha"), name + ".alpha", true),
                     detail::int_tuple(p.at("omega"), name + ".omega", true)};
  };
  return WindowWitness{detail::int_tuple(j.at("offset"), "offset", true), pair(j.at("pair1"), "pair1"),
                       pair(j.at("pair2"), "pair2")};
}

}  // namespace costas_nd
