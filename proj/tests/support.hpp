#pragma once

#include <string>
#include <vector>

#include "costas_nd/costas_nd.hpp"
#include "costas_nd/sampling.hpp"
#include "oracles.hpp"

#ifndef COSTAS_ND_DATA_DIR
#error "COSTAS_ND_DATA_DIR must point at the fixture directory"
#endif

namespace testing_support {

inline std::string data_path(const std::string& name) { return std::string(COSTAS_ND_DATA_DIR) + "/" + name; }

inline oracle::Points points(const costas_nd::BinaryArray& a) {
  oracle::Points out;
  for (const auto& d : a.dots()) out.push_back(d.v);
  return out;
}

inline std::vector<int> sizes(const costas_nd::Shape& s) { return {s.sizes().begin(), s.sizes().end()}; }

/// Converts 1-based dot coordinates to a binary array.
inline costas_nd::BinaryArray one_based_array(std::vector<int> shape, const std::vector<std::vector<int>>& dots) {
  std::vector<costas_nd::Dot> ds;
  for (auto d : dots) {
    for (int& c : d) --c;
    ds.emplace_back(std::move(d));
  }
  return costas_nd::BinaryArray(costas_nd::Shape(std::move(shape)), std::move(ds));
}

/// The periodic Costas 2x2|4 array with 1-based dots (1,1,1),(1,2,2),(2,2,3),(2,1,4).
inline costas_nd::PermutationArray periodic_2x2x4() {
  return costas_nd::as_permutation(one_based_array({2, 2, 4}, {{1, 1, 1}, {1, 2, 2}, {2, 2, 3}, {2, 1, 4}}), 2);
}

}  // namespace testing_support
