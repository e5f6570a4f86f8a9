#pragma once

// Registry of reproducible results. Each claim runs a check, compares it to
// its registered expectation and reports a one-line verdict.

#include <functional>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "costas_nd/analysis.hpp"
#include "costas_nd/sampling.hpp"
#include "costas_nd/search.hpp"

namespace costas_nd {

struct ClaimOptions {
  std::uint64_t seed = kDefaultSeed;
  int threads = 1;
};

struct ClaimOutcome {
  bool pass = false;
  std::string detail;
};

struct Claim {
  std::string id;
  std::string description;
  bool long_running = false;
  std::function<ClaimOutcome(const ClaimOptions&)> run;
};

namespace claims {

inline ClaimOutcome census_2x2x4(const ClaimOptions& o) {
  SearchSpec spec{SplitShape({2, 2, 4}, 2), SearchMode::periodic};
  spec.parallel_width = o.threads;
  const auto r = enumerate(spec);
  const bool ok = r.complete && r.total_bijections == 24 && r.costas_exact && r.costas == 16 &&
                  r.periodic == 8u;
  return {ok, "total=" + r.total_bijections.str() + " costas=" + std::to_string(r.costas) +
                  " periodic=" + std::to_string(r.periodic.value_or(0))};
}

inline ClaimOutcome no_periodic(const SplitShape& split, bool reduce, const ClaimOptions& o) {
  SearchSpec spec{split, SearchMode::periodic};
  spec.parallel_width = o.threads;
  spec.symmetry_reduction = reduce;
  spec.exact_costas_count = !reduce;
  const auto r = enumerate(spec);
  const bool ok = r.complete && r.periodic == 0u && r.total_bijections == factorial(split.order());
  return {ok, split.to_string() + ": total=" + r.total_bijections.str() +
                  " periodic=" + std::to_string(r.periodic.value_or(0)) +
                  " complete=" + (r.complete ? "true" : "false") +
                  " nodes=" + std::to_string(r.nodes_visited)};
}

inline ClaimOutcome taylor_2d(const ClaimOptions& o) {
  std::ostringstream os;
  bool ok = true;
  for (int n = 2; n <= 7; ++n) {
    const auto r = taylor_scan(n, o.threads);
    const std::uint64_t expected = n == 2 ? 2 : 0;
    ok = ok && r.complete && r.periodic == expected;
    os << "n=" << n << ":" << r.periodic.value_or(0) << " ";
  }
  return {ok, os.str()};
}

inline ClaimOutcome odd_order_family(const ClaimOptions&) {
  std::uint64_t checked = 0, failures = 0;
  for (const SplitShape& split : {SplitShape({3, 3}, 1), SplitShape({5, 5}, 1), SplitShape({7, 7}, 1),
                                  SplitShape({3, 3, 9}, 2)}) {
    for_each_bijection(split, [&](const PermutationArray& p) {
      ++checked;
      if (is_periodic_costas(p.dots()) || !pigeonhole_witness(p)) ++failures;
    });
  }
  return {failures == 0, std::to_string(checked) + " arrays, " + std::to_string(failures) + " failures"};
}

inline ClaimOutcome modular_nonexistence(const ClaimOptions&) {
  std::uint64_t checked = 0, failures = 0;
  for (const SplitShape& split : {SplitShape({2, 2, 4}, 2), SplitShape({2, 4, 8}, 2), SplitShape({2, 2}, 1),
                                  SplitShape({3, 3}, 1), SplitShape({4, 4}, 1), SplitShape({5, 5}, 1)}) {
    for_each_bijection(split, [&](const PermutationArray& p) {
      ++checked;
      const BinaryArray a = p.dots();
      if (is_modular_costas(a) || toroidal_multiset(a).repeats() < p.order() - 1) ++failures;
    });
  }
  return {failures == 0, std::to_string(checked) + " arrays, " + std::to_string(failures) + " failures"};
}

inline std::vector<SplitShape> sample_shapes() {
  return {SplitShape({2, 2, 4}, 2), SplitShape({2, 3, 6}, 2), SplitShape({2, 4, 8}, 2),
          SplitShape({3, 4, 12}, 2), SplitShape({2, 6, 12}, 2), SplitShape({6, 2, 3}, 1),
          SplitShape({2, 2, 2, 2}, 2), SplitShape({2, 2, 2, 8}, 3), SplitShape({3, 3, 9}, 2),
          SplitShape({5, 5}, 1), SplitShape({8, 8}, 1), SplitShape({12, 12}, 1)};
}

inline ClaimOutcome counting_lemma(const ClaimOptions& o) {
  std::mt19937_64 rng(o.seed);
  std::vector<SplitShape> shapes;
  for (const auto& s : sample_shapes())
    if (s.order() % 2 == 0) shapes.push_back(s);
  int failures = 0;
  for (int c = 0; c < 200; ++c) {
    const SplitShape& split = shapes[rng() % shapes.size()];
    const auto sets = admissible_half_sets(split);
    const auto& E = sets[rng() % sets.size()];
    const auto p = random_permutation_array(split, rng);
    if (h_E_count(p, E) * [&] {
          Index prod = 1;
          for (int i : E) prod *= split.shape()[i];
          return prod;
        }() != split.order() * split.order())
      ++failures;
  }
  return {failures == 0, "200 cases, " + std::to_string(failures) + " failures"};
}

inline ClaimOutcome inclusion_exclusion(const ClaimOptions& o) {
  std::mt19937_64 rng(o.seed);
  int failures = 0;
  for (int c = 0; c < 1000; ++c) {
    std::vector<int> K(1 + rng() % 6);
    for (int& x : K) x = 1 + static_cast<int>(rng() % 20);
    const auto [lhs, rhs] = inclusion_exclusion_identity(K);
    if (lhs != rhs) ++failures;
  }
  return {failures == 0, "1000 multisets, " + std::to_string(failures) + " failures"};
}

inline ClaimOutcome window_multiset_lemma(const ClaimOptions& o) {
  std::mt19937_64 rng(o.seed);
  const auto shapes = sample_shapes();
  int failures = 0;
  for (int c = 0; c < 500; ++c) {
    const auto p = random_permutation_array(shapes[static_cast<std::size_t>(c) % shapes.size()], rng);
    const BinaryArray a = p.dots();
    const VectorMultiset base = toroidal_multiset(a);
    for (const auto& w : windows(a))
      if (toroidal_multiset(w.array) != base) {
        ++failures;
        break;
      }
  }
  return {failures == 0, "500 arrays, " + std::to_string(failures) + " failures"};
}

/// One-dimensional-image split shapes (domain sides non-decreasing) of even
/// order at most max_order.
inline std::vector<SplitShape> one_dim_image_shapes(int max_order) {
  std::vector<SplitShape> out;
  std::vector<int> dom;
  auto rec = [&](auto&& self, int prod) -> void {
    if (!dom.empty() && prod % 2 == 0) {
      auto sizes = dom;
      sizes.push_back(prod);
      out.emplace_back(Shape(sizes), static_cast<int>(dom.size()));
    }
    for (int s = dom.empty() ? 2 : dom.back(); prod * s <= max_order; ++s) {
      dom.push_back(s);
      self(self, prod * s);
      dom.pop_back();
    }
  };
  rec(rec, 1);
  return out;
}

struct ThetaShapeCheck {
  SplitShape split;
  bool full_search = false;
  bool pass = false;
  std::string detail;
};

/// For a theta-certified shape: a complete pruned search when order <=
/// full_search_max_order, otherwise a budget-capped search plus spot
/// checks on Costas exemplars and random permutation arrays.
inline ThetaShapeCheck check_theta_shape(const SplitShape& split, int full_search_max_order,
                                         std::uint64_t spot_budget, std::mt19937_64& rng) {
  ThetaShapeCheck c{split};
  SearchSpec spec{split, SearchMode::periodic};
  spec.exact_costas_count = false;
  spec.symmetry_reduction = true;
  std::ostringstream os;
  if (split.order() <= full_search_max_order) {
    c.full_search = true;
    const auto r = enumerate(spec);
    c.pass = r.complete && r.periodic == 0u;
    os << "full search periodic=" << r.periodic.value_or(0) << " nodes=" << r.nodes_visited;
    c.detail = os.str();
    return c;
  }
  spec.node_budget = spot_budget;
  const auto partial = enumerate(spec);
  bool ok = partial.periodic == 0u;

  SearchSpec ex{split, SearchMode::costas};
  ex.emit_arrays = true;
  ex.exemplar_limit = 20;
  ex.stop_at_exemplar_limit = true;
  ex.node_budget = spot_budget;
  const auto found = enumerate(ex);
  for (const auto& p : found.costas_exemplars) ok = ok && !is_periodic_costas(p.dots());

  const int random_checks = 100;
  for (int i = 0; i < random_checks; ++i) {
    const auto p = random_permutation_array(split, rng);
    ok = ok && big_lemma_margin(p) < split.order() - 1 && !is_periodic_costas(p.dots());
  }
  c.pass = ok;
  os << "budget-capped search periodic=" << partial.periodic.value_or(0)
     << " nodes=" << partial.nodes_visited << ", costas exemplars checked="
     << found.costas_exemplars.size() << ", random arrays checked=" << random_checks;
  c.detail = os.str();
  return c;
}

inline std::vector<ThetaShapeCheck> theta_certificates(int max_order, int full_search_max_order,
                                                       std::uint64_t spot_budget, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<ThetaShapeCheck> out;
  for (const auto& split : one_dim_image_shapes(max_order))
    if (theta_test(split)) out.push_back(check_theta_shape(split, full_search_max_order, spot_budget, rng));
  return out;
}

inline ClaimOutcome theta_claim(const ClaimOptions& o) {
  const auto checks = theta_certificates(24, 16, 20'000'000, o.seed);
  bool ok = !checks.empty();
  std::ostringstream os;
  for (const auto& c : checks) {
    ok = ok && c.pass;
    os << c.split.to_string() << (c.pass ? ":ok " : ":FAIL ");
  }
  return {ok, os.str()};
}

}  // namespace claims

inline const std::vector<Claim>& claim_registry() {
  static const std::vector<Claim> registry = {
      {"census-2x2x4", "2x2|4: 24 bijections, 16 Costas, 8 periodic Costas", false, claims::census_2x2x4},
      {"no-periodic-2x4x8", "2x4|8: no periodic Costas among all 8! bijections", false,
       [](const ClaimOptions& o) { return claims::no_periodic(SplitShape({2, 4, 8}, 2), false, o); }},
      {"no-periodic-4x4x16", "4x4|16: no periodic Costas among all 16! bijections", true,
       [](const ClaimOptions& o) { return claims::no_periodic(SplitShape({4, 4, 16}, 2), true, o); }},
      {"no-periodic-2x8x16", "2x8|16: no periodic Costas among all 16! bijections", true,
       [](const ClaimOptions& o) { return claims::no_periodic(SplitShape({2, 8, 16}, 2), true, o); }},
      {"taylor-2d-n3..7", "2D periodic Costas: 2 at n=2, none for n=3..7", false, claims::taylor_2d},
      {"odd-order-family", "odd order: never periodic Costas, pigeonhole witness always present", false,
       claims::odd_order_family},
      {"modular-nonexistence", "no permutation array is modular Costas; at least n-1 repeated toroidal vectors",
       false, claims::modular_nonexistence},
      {"counting-lemma", "|H_E| * prod_{i in E} n_i = n^2 on random arrays", false, claims::counting_lemma},
      {"inclusion-exclusion", "inclusion-exclusion identity holds exactly for random multisets", false,
       claims::inclusion_exclusion},
      {"theta-certificates", "theta-certified shapes of even order <= 24 have no periodic Costas", true,
       claims::theta_claim},
      {"window-multiset-lemma", "every window has the toroidal multiset of the array", false,
       claims::window_multiset_lemma},
  };
  return registry;
}

inline const Claim* find_claim(const std::string& id) {
  for (const auto& c : claim_registry())
    if (c.id == id) return &c;
  return nullptr;
}

}  // namespace costas_nd
