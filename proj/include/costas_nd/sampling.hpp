#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <set>
#include <vector>

#include "costas_nd/core.hpp"

namespace costas_nd {

/// Default seed for every randomized suite.
inline constexpr std::uint64_t kDefaultSeed = 20240601;

inline PermutationArray random_permutation_array(const SplitShape& split, std::mt19937_64& rng) {
  std::vector<Index> table(static_cast<std::size_t>(split.order()));
  for (Index i = 0; i < split.order(); ++i) table[static_cast<std::size_t>(i)] = i;
  std::shuffle(table.begin(), table.end(), rng);
  return PermutationArray(split, std::move(table));
}

/// Nonempty sets E inside one block of the split with every n_i even.
inline std::vector<std::set<int>> admissible_half_sets(const SplitShape& split) {
  std::vector<std::set<int>> out;
  auto block = [&](int lo, int hi) {
    std::vector<int> even;
    for (int i = lo; i < hi; ++i)
      if (split.shape()[i] % 2 == 0) even.push_back(i);
    for (std::uint32_t mask = 1; mask < (1u << even.size()); ++mask) {
      std::set<int> e;
      for (std::size_t b = 0; b < even.size(); ++b)
        if (mask & (1u << b)) e.insert(even[b]);
      out.push_back(std::move(e));
    }
  };
  block(0, split.k());
  block(split.k(), split.dims());
  return out;
}

/// Split shapes with order <= max_order and all sides in [2, max_order],
/// up to max_dims coordinates. Shapes are listed once per ordered side
/// tuple and split index.
inline std::vector<SplitShape> split_shapes_up_to(int max_order, int max_dims) {
  std::vector<SplitShape> out;
  std::vector<int> sizes;
  auto rec = [&](auto&& self, Index prod) -> void {
    const int m = static_cast<int>(sizes.size());
    if (m >= 2) {
      for (int k = 1; k < m; ++k) {
        const Index x = product(std::span<const int>(sizes).subspan(0, static_cast<std::size_t>(k)));
        const Index y = product(std::span<const int>(sizes).subspan(static_cast<std::size_t>(k)));
        if (x == y && x <= max_order) out.emplace_back(Shape(sizes), k);
      }
    }
    if (m == max_dims) return;
    for (int s = 2; prod * s <= Index{max_order} * max_order; ++s) {
      sizes.push_back(s);
      self(self, prod * s);
      sizes.pop_back();
    }
  };
  rec(rec, 1);
  return out;
}

}  // namespace costas_nd
