#pragma once

// JSON reports for analyses and searches. Everything that can vary between
// identical invocations lives under "timing" so the rest compares
// byte-for-byte.

#include <limits>
#include <optional>
#include <string>

#include <json.hpp>

#include "costas_nd/analysis.hpp"
#include "costas_nd/io.hpp"
#include "costas_nd/rational.hpp"
#include "costas_nd/search.hpp"

namespace costas_nd {

struct AnalysisReport {
  Index order = 0;
  bool is_costas = false;
  bool is_modular_costas = false;
  bool is_periodic_costas = false;
  Index t_set_size = 0;
  Index h_set_size = 0;
  Index h_multiset_size = 0;
  Index margin = 0;
  std::optional<Rational> theta;
  std::optional<bool> theta_test;
  std::optional<WindowWitness> witness;
  HalfBreakdown breakdown;
};

inline AnalysisReport analyze(const PermutationArray& p) {
  const BinaryArray a = p.dots();
  AnalysisReport r;
  r.order = p.order();
  r.is_costas = is_costas(a);
  r.is_modular_costas = is_modular_costas(a);
  r.is_periodic_costas = is_periodic_costas(a);
  r.t_set_size = t_set_size(p.split());
  r.h_set_size = h_set_size(p.split());
  r.h_multiset_size = h_multiset(a).total();
  r.margin = r.h_multiset_size - r.h_set_size;
  if (p.split().k() == p.shape().dims() - 1 && p.order() % 2 == 0) {
    r.theta = theta(p.split());
    r.theta_test = theta_test(p.split());
  }
  if (auto pw = pigeonhole_witness(p))
    r.witness = construct_witness(a, pw->first, pw->second);
  else
    r.witness = find_witness(a);
  r.breakdown = half_breakdown(p);
  return r;
}

inline json to_json(const AnalysisReport& r, bool debug = false) {
  json j{{"order", r.order},
         {"is_costas", r.is_costas},
         {"is_modular_costas", r.is_modular_costas},
         {"is_periodic_costas", r.is_periodic_costas},
         {"t_set_size", r.t_set_size},
         {"h_set_size", r.h_set_size},
         {"h_multiset_size", r.h_multiset_size},
         {"margin", r.margin},
         {"theta", r.theta ? json(to_string(*r.theta)) : json(nullptr)},
         {"witness", r.witness ? to_json(*r.witness) : json(nullptr)}};
  if (debug) {
    const auto& b = r.breakdown;
    j["debug"] = {{"multiset_U", b.multiset_u}, {"multiset_V", b.multiset_v},
                  {"multiset_U_and_V", b.multiset_uv}, {"set_U", b.set_u},
                  {"set_V", b.set_v}, {"set_U_and_V", b.set_uv},
                  {"theta_test", r.theta_test ? json(*r.theta_test) : json(nullptr)}};
  }
  return j;
}

// Exact count as a JSON number when it fits in 64 bits, else a decimal string.
inline json total_json(const BigCount& c) {
  if (c <= std::numeric_limits<std::uint64_t>::max()) return json(c.convert_to<std::uint64_t>());
  return json(c.str());
}

inline json to_json(const SearchSpec& spec, const SearchResult& r) {
  json costas_ex = json::array();
  for (const auto& p : r.costas_exemplars) costas_ex.push_back(to_json(p));
  json periodic_ex = json::array();
  for (const auto& p : r.periodic_exemplars) periodic_ex.push_back(to_json(p));
  json spec_j{{"shape", spec.split.shape().sizes()},
              {"k", spec.split.k()},
              {"mode", to_string(spec.mode)},
              {"symmetry_reduction", spec.symmetry_reduction},
              {"parallel_width", spec.parallel_width},
              {"node_budget", spec.node_budget ? json(*spec.node_budget) : json(nullptr)},
              {"emit_arrays", spec.emit_arrays},
              {"exact_costas_count", spec.exact_costas_count}};
  json j{{"spec", spec_j},
         {"total_bijections", total_json(r.total_bijections)},
         {"counts",
          {{"costas", r.costas},
           {"costas_exact", r.costas_exact},
           {"periodic", r.periodic ? json(*r.periodic) : json(nullptr)}}},
         {"nodes_visited", r.nodes_visited},
         {"complete", r.complete},
         {"symmetry_applied", r.symmetry_applied},
         {"checkpoint_path", r.checkpoint_path.empty() ? json(nullptr) : json(r.checkpoint_path)},
         {"exemplars", {{"costas", costas_ex}, {"periodic", periodic_ex}}},
         {"timing", {{"wall_time_seconds", r.wall_time_seconds}}}};
  return j;
}

inline std::string summary_line(const SearchResult& r) {
  std::string s = "total=" + r.total_bijections.str();
  s += " costas=" + std::to_string(r.costas);
  if (!r.costas_exact) s += "(partial)";
  s += " periodic=" + (r.periodic ? std::to_string(*r.periodic) : std::string("n/a"));
  s += std::string(" complete=") + (r.complete ? "true" : "false");
  return s;
}

}  // namespace costas_nd
