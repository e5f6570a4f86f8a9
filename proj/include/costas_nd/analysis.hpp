#pragma once

// Toroidal-vector multisets, the value sets T and H of a split shape, the
// Costas / modular / periodic predicates, window enumeration of the
// periodic extension, and the explicit repeated-difference witness.

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "costas_nd/core.hpp"
#include "costas_nd/rational.hpp"

namespace costas_nd {

/// Count table over toroidal vectors.
class VectorMultiset {
 public:
  void add(const ToroidalVector& v, Index times = 1) {
    if (times <= 0) return;
    counts_[v] += times;
    total_ += times;
  }
  Index count(const ToroidalVector& v) const {
    auto it = counts_.find(v);
    return it == counts_.end() ? 0 : it->second;
  }
  Index total() const { return total_; }
  std::size_t distinct() const { return counts_.size(); }
  bool empty() const { return total_ == 0; }
  const std::map<ToroidalVector, Index>& counts() const& { return counts_; }
  std::map<ToroidalVector, Index> counts() && { return std::move(counts_); }

  /// Sum over multiplicities of (count - 1): how many occurrences exceed
  /// the first one.
  Index repeats() const {
    Index r = 0;
    for (const auto& [v, c] : counts_) r += c - 1;
    return r;
  }

  friend bool operator==(const VectorMultiset&, const VectorMultiset&) = default;

 private:
  std::map<ToroidalVector, Index> counts_;
  Index total_ = 0;
};

/// True iff some component equals half the matching side.
inline bool has_half_component(const ToroidalVector& v, const Shape& shape) {
  for (int i = 0; i < shape.dims(); ++i)
    if (shape[i] % 2 == 0 && 2 * v[static_cast<std::size_t>(i)] == shape[i]) return true;
  return false;
}

inline VectorMultiset toroidal_multiset(const BinaryArray& a) {
  if (a.size() < 2) throw Error("toroidal multiset needs at least 2 dots");
  VectorMultiset ms;
  for (const Dot& alpha : a.dots())
    for (const Dot& omega : a.dots())
      if (alpha != omega) ms.add(toroidal_vector(alpha, omega, a.shape()));
  return ms;
}

inline VectorMultiset h_multiset(const BinaryArray& a) {
  VectorMultiset out;
  for (const auto& [v, c] : toroidal_multiset(a).counts())
    if (has_half_component(v, a.shape())) out.add(v, c);
  return out;
}

namespace detail {

inline bool block_nonzero(std::span<const int> v) {
  return std::any_of(v.begin(), v.end(), [](int x) { return x != 0; });
}

inline bool in_t_set(const ToroidalVector& v, const SplitShape& split) {
  const auto k = static_cast<std::size_t>(split.k());
  return block_nonzero(v.span().subspan(0, k)) && block_nonzero(v.span().subspan(k));
}

}  // namespace detail

/// |T| = (n-1)^2.
inline Index t_set_size(const SplitShape& split) {
  return (split.order() - 1) * (split.order() - 1);
}

/// All toroidal vectors with nonzero domain part and nonzero image part,
/// in lexicographic order.
inline std::vector<ToroidalVector> t_set(const SplitShape& split) {
  const auto sizes = split.shape().sizes();
  std::vector<ToroidalVector> out;
  const Index total = product(sizes);
  for (Index i = 0; i < total; ++i) {
    ToroidalVector v(delinearize(i, sizes));
    if (detail::in_t_set(v, split)) out.push_back(std::move(v));
  }
  return out;
}

inline std::vector<ToroidalVector> h_set(const SplitShape& split) {
  std::vector<ToroidalVector> out;
  for (auto& v : t_set(split))
    if (has_half_component(v, split.shape())) out.push_back(std::move(v));
  return out;
}

inline Index h_set_size(const SplitShape& split) {
  return static_cast<Index>(h_set(split).size());
}

/// Exact theta = 1 - prod_{i in E} (n_i - 1)/n_i over the even domain
/// sides. Defined for shapes with a one-dimensional image and even order.
inline Rational theta(const SplitShape& split) {
  if (split.k() != split.dims() - 1) throw Error("theta needs a one-dimensional image (k = m-1)");
  if (split.order() % 2 != 0) throw Error("theta needs even order");
  Rational prod(1);
  for (int n : split.domain_sizes())
    if (n % 2 == 0) prod *= Rational(n - 1, n);
  return Rational(1) - prod;
}

inline Rational theta_threshold(const SplitShape& split) {
  const Index n = split.order();
  return Rational(n - 2, 2 * n);
}

/// theta < (n-2)/(2n): every permutation array on the shape then has a
/// window with a repeated difference vector.
inline bool theta_test(const SplitShape& split) {
  return theta(split) < theta_threshold(split);
}

/// |H| for one-dimensional-image shapes of even order from the counts
/// |U| = (n-1) n theta, |V| = n-1, |U cap V| = n theta.
inline std::optional<Index> h_set_size_closed_form(const SplitShape& split) {
  if (split.k() != split.dims() - 1 || split.order() % 2 != 0) return std::nullopt;
  const Index n = split.order();
  const Rational ntheta = Rational(n) * theta(split);
  if (ntheta.denominator() != 1) throw Error("n*theta is not an integer");
  const Index nt = ntheta.numerator();
  return (n - 1) * (nt + 1) - nt;
}

/// Count of every T vector (zeros included). Throws if some toroidal
/// vector of the array falls outside T.
inline std::map<ToroidalVector, Index> frequency_table(const BinaryArray& a,
                                                       const SplitShape& split) {
  if (a.shape() != split.shape()) throw Error("array shape does not match split shape");
  std::map<ToroidalVector, Index> table;
  for (auto& v : t_set(split)) table.emplace(std::move(v), 0);
  for (const auto& [v, c] : toroidal_multiset(a).counts()) {
    auto it = table.find(v);
    if (it == table.end())
      throw Error("toroidal vector <" + join(v.span()) +
                  "> lies outside T; array is not permutation-structured");
    it->second = c;
  }
  return table;
}

namespace detail {

// Dense collision table over difference vectors of one shape: component i
// ranges over [-(n_i-1), n_i-1].
class DifferenceTable {
 public:
  explicit DifferenceTable(const Shape& shape) : sizes_(shape.sizes().begin(), shape.sizes().end()) {
    strides_.resize(sizes_.size());
    Index s = 1;
    for (std::size_t i = sizes_.size(); i-- > 0;) {
      strides_[i] = s;
      s *= 2 * sizes_[i] - 1;
    }
    seen_.assign(static_cast<std::size_t>(s), 0);
  }

  Index key(const int* alpha, const int* omega) const {
    Index k = 0;
    for (std::size_t i = 0; i < sizes_.size(); ++i)
      k += (omega[i] - alpha[i] + sizes_[i] - 1) * strides_[i];
    return k;
  }

  // Distinctness of all ordered-pair differences of a flat d x m point set.
  bool all_distinct(const std::vector<int>& pts, std::size_t d) {
    const std::size_t m = sizes_.size();
    std::vector<Index> touched;
    touched.reserve(d * d);
    bool ok = true;
    for (std::size_t p = 0; p < d && ok; ++p)
      for (std::size_t q = 0; q < d; ++q) {
        if (p == q) continue;
        const Index k = key(&pts[p * m], &pts[q * m]);
        if (seen_[static_cast<std::size_t>(k)]) {
          ok = false;
          break;
        }
        seen_[static_cast<std::size_t>(k)] = 1;
        touched.push_back(k);
      }
    for (Index k : touched) seen_[static_cast<std::size_t>(k)] = 0;
    return ok;
  }

 private:
  std::vector<int> sizes_;
  std::vector<Index> strides_;
  std::vector<char> seen_;
};

inline std::vector<int> flatten(const BinaryArray& a) {
  std::vector<int> pts;
  pts.reserve(a.size() * static_cast<std::size_t>(a.shape().dims()));
  for (const Dot& d : a.dots()) pts.insert(pts.end(), d.v.begin(), d.v.end());
  return pts;
}

}  // namespace detail

/// No two ordered dot pairs share a difference vector.
inline bool is_costas(const BinaryArray& a) {
  detail::DifferenceTable table(a.shape());
  return table.all_distinct(detail::flatten(a), a.size());
}

/// No repeated toroidal vectors. Never true for a permutation array of
/// order > 1, since n(n-1) vectors land in (n-1)^2 values.
inline bool is_modular_costas(const BinaryArray& a) {
  if (a.size() < 2) return true;
  for (const auto& [v, c] : toroidal_multiset(a).counts())
    if (c > 1) return false;
  return true;
}

/// Offsets kappa with kappa_i in [0, n_i), in lexicographic order.
inline std::vector<std::vector<int>> window_offsets(const Shape& shape) {
  std::vector<std::vector<int>> out;
  const Index total = shape.volume();
  out.reserve(static_cast<std::size_t>(total));
  for (Index i = 0; i < total; ++i) out.push_back(delinearize(i, shape.sizes()));
  return out;
}

/// The shape-sized window of the periodic extension whose lower corner is
/// kappa, re-indexed so that kappa maps to the origin. Any integer offset
/// is accepted; offsets congruent mod n_i give the same window.
inline BinaryArray window(const BinaryArray& a, std::span<const int> offset) {
  std::vector<int> t(offset.begin(), offset.end());
  for (int& x : t) x = -x;
  return translate(a, t);
}

struct Window {
  std::vector<int> offset;
  BinaryArray array;
};

inline std::vector<Window> windows(const BinaryArray& a) {
  std::vector<Window> out;
  for (auto& off : window_offsets(a.shape())) {
    BinaryArray w = window(a, off);
    out.push_back({std::move(off), std::move(w)});
  }
  return out;
}

/// First offset (lexicographic) whose window has a repeated difference
/// vector, if any.
inline std::optional<std::vector<int>> first_failing_window(const BinaryArray& a) {
  const Shape& shape = a.shape();
  const auto m = static_cast<std::size_t>(shape.dims());
  const std::vector<int> base = detail::flatten(a);
  std::vector<int> pts(base.size());
  detail::DifferenceTable table(shape);
  for (Index w = 0; w < shape.volume(); ++w) {
    const std::vector<int> off = delinearize(w, shape.sizes());
    for (std::size_t p = 0; p < a.size(); ++p)
      for (std::size_t i = 0; i < m; ++i)
        pts[p * m + i] = floor_mod(base[p * m + i] - off[i], shape[static_cast<int>(i)]);
    if (!table.all_distinct(pts, a.size())) return off;
  }
  return std::nullopt;
}

/// Every window of the periodic extension is Costas. Windows are scanned
/// in lexicographic offset order, stopping at the first failure.
inline bool is_periodic_costas(const BinaryArray& a) {
  return !first_failing_window(a).has_value();
}

struct DotPair {
  Dot alpha;
  Dot omega;
  friend bool operator==(const DotPair&, const DotPair&) = default;
};

struct PointPair {
  std::vector<int> alpha;
  std::vector<int> omega;
  friend bool operator==(const PointPair&, const PointPair&) = default;
};

/// Two point pairs of the periodic extension with equal difference
/// vectors, all four points inside the window with lower corner `offset`.
struct WindowWitness {
  std::vector<int> offset;
  PointPair first;
  PointPair second;
  friend bool operator==(const WindowWitness&, const WindowWitness&) = default;
};

class WitnessPreconditionError : public Error {
 public:
  WitnessPreconditionError(int coordinate, const std::string& what)
      : Error(what), coordinate_(coordinate) {}
  /// 0-based coordinate that violates the precondition, or -1 if the
  /// failure is not tied to one coordinate.
  int coordinate() const { return coordinate_; }

 private:
  int coordinate_;
};

/// Checks the three witness invariants: equal difference vectors, all
/// points inside one shape-sized box at the offset, all points dots of the
/// periodic extension. Also rejects degenerate (coinciding) pairs.
inline bool validate_witness(const BinaryArray& a, const WindowWitness& w) {
  const Shape& shape = a.shape();
  const auto m = static_cast<std::size_t>(shape.dims());
  const std::vector<int>* pts[4] = {&w.first.alpha, &w.first.omega, &w.second.alpha,
                                    &w.second.omega};
  if (w.offset.size() != m) return false;
  for (const auto* p : pts)
    if (p->size() != m) return false;
  if (w.first.alpha == w.first.omega || w.second.alpha == w.second.omega) return false;
  if (w.first == w.second) return false;
  for (std::size_t i = 0; i < m; ++i)
    if (w.first.omega[i] - w.first.alpha[i] != w.second.omega[i] - w.second.alpha[i])
      return false;
  for (const auto* p : pts)
    for (std::size_t i = 0; i < m; ++i)
      if ((*p)[i] < w.offset[i] || (*p)[i] > w.offset[i] + shape[static_cast<int>(i)] - 1)
        return false;
  for (const auto* p : pts)
    if (!periodic_value(a, *p)) return false;
  return true;
}

/// Does coordinate i of the two pairs satisfy the condition under which
/// the window construction goes through? Only coordinates where the
/// toroidal component is exactly half the side can fail.
inline bool witness_condition_holds(const Shape& shape, const DotPair& p1, const DotPair& p2,
                                    int i) {
  const auto u = static_cast<std::size_t>(i);
  const int n = shape[i];
  const int h = floor_mod(p1.omega[u] - p1.alpha[u], n);
  if (2 * h != n) return true;
  if (p1.omega[u] - p1.alpha[u] == p2.omega[u] - p2.alpha[u]) return true;
  return p1.alpha[u] != p2.omega[u] && p2.alpha[u] != p1.omega[u];
}

/// Builds a window of the periodic extension in which the two pairs
/// (sharing a toroidal vector) become equal difference vectors. Each
/// coordinate is handled independently by shifting one of the four
/// points by +-n_i.
inline WindowWitness construct_witness(const BinaryArray& a, const DotPair& pair1,
                                       const DotPair& pair2) {
  const Shape& shape = a.shape();
  const int m = shape.dims();
  for (const Dot* d : {&pair1.alpha, &pair1.omega, &pair2.alpha, &pair2.omega})
    if (!a.contains(*d))
      throw WitnessPreconditionError(-1, "point (" + join(d->span()) + ") is not a dot");
  if (pair1.alpha == pair1.omega || pair2.alpha == pair2.omega)
    throw WitnessPreconditionError(-1, "degenerate pair");
  if (pair1 == pair2) throw WitnessPreconditionError(-1, "the two pairs coincide");
  if (toroidal_vector(pair1.alpha, pair1.omega, shape) !=
      toroidal_vector(pair2.alpha, pair2.omega, shape))
    throw WitnessPreconditionError(-1, "pairs do not share a toroidal vector");

  WindowWitness w;
  w.offset.assign(static_cast<std::size_t>(m), 0);
  w.first = {pair1.alpha.v, pair1.omega.v};
  w.second = {pair2.alpha.v, pair2.omega.v};

  for (int i = 0; i < m; ++i) {
    const auto u = static_cast<std::size_t>(i);
    const int n = shape[i];
    if (!witness_condition_holds(shape, pair1, pair2, i))
      throw WitnessPreconditionError(
          i, "coordinate " + std::to_string(i + 1) +
                 ": half-length component with unequal differences and a shared endpoint");
    const int d1 = pair1.omega[u] - pair1.alpha[u];
    const int d2 = pair2.omega[u] - pair2.alpha[u];
    if (d1 == d2) continue;  // offset 0, points unchanged
    const int h = floor_mod(d1, n);

    // P carries the negative difference h - n, Q the positive one h.
    PointPair& P = (d1 < 0) ? w.first : w.second;
    PointPair& Q = (d1 < 0) ? w.second : w.first;
    const int aP = P.alpha[u];
    const int wQ = Q.omega[u];
    if (aP < wQ) {
      Q.omega[u] -= n;
      w.offset[u] = Q.omega[u];
    } else if (wQ < aP) {
      P.alpha[u] -= n;
      w.offset[u] = P.alpha[u];
    } else if (2 * h < n) {
      P.omega[u] += n;
      w.offset[u] = Q.alpha[u];
    } else {
      Q.alpha[u] += n;
      w.offset[u] = P.omega[u];
    }
  }
  if (!validate_witness(a, w)) throw std::logic_error("constructed witness failed validation");
  return w;
}

/// A toroidal vector with the first two ordered dot pairs realizing it.
struct RepeatedToroidal {
  ToroidalVector tau;
  DotPair first;
  DotPair second;
};

namespace detail {

// For each toroidal vector, its first two realizing pairs in (alpha, omega)
// lexicographic order, plus its multiplicity.
struct Realizations {
  Index count = 0;
  std::vector<DotPair> pairs;
};

inline std::map<ToroidalVector, Realizations> realizations(const BinaryArray& a,
                                                           std::size_t keep) {
  std::map<ToroidalVector, Realizations> out;
  for (const Dot& alpha : a.dots())
    for (const Dot& omega : a.dots()) {
      if (alpha == omega) continue;
      auto& r = out[toroidal_vector(alpha, omega, a.shape())];
      ++r.count;
      if (r.pairs.size() < keep) r.pairs.push_back({alpha, omega});
    }
  return out;
}

}  // namespace detail

/// |H_A| - |H|: the slack in the pigeonhole argument. Below n-1 forces a
/// repeated toroidal vector without any half-length component.
inline Index big_lemma_margin(const PermutationArray& p) {
  return h_multiset(p.dots()).total() - h_set_size(p.split());
}

/// Lexicographically smallest repeated toroidal vector with no half-length
/// component, with its first two realizing pairs. Always present when the
/// margin is below n-1.
inline std::optional<RepeatedToroidal> pigeonhole_witness(const PermutationArray& p) {
  const BinaryArray a = p.dots();
  const Shape& shape = a.shape();
  const auto& dots = a.dots();
  // Row-major keys order toroidal vectors lexicographically.
  const Index space = shape.volume();
  std::vector<std::int32_t> first(static_cast<std::size_t>(space), -1), second(first);
  const auto d = static_cast<std::int32_t>(dots.size());
  std::vector<int> tau(static_cast<std::size_t>(shape.dims()));
  for (std::int32_t x = 0; x < d; ++x)
    for (std::int32_t y = 0; y < d; ++y) {
      if (x == y) continue;
      for (int i = 0; i < shape.dims(); ++i)
        tau[static_cast<std::size_t>(i)] = floor_mod(dots[static_cast<std::size_t>(y)][static_cast<std::size_t>(i)] -
                                                         dots[static_cast<std::size_t>(x)][static_cast<std::size_t>(i)],
                                                     shape[i]);
      const auto key = static_cast<std::size_t>(linearize(tau, shape.sizes()));
      const std::int32_t code = x * d + y;
      if (first[key] < 0)
        first[key] = code;
      else if (second[key] < 0)
        second[key] = code;
    }
  for (Index key = 0; key < space; ++key) {
    const auto u = static_cast<std::size_t>(key);
    if (second[u] < 0) continue;
    ToroidalVector t(delinearize(key, shape.sizes()));
    if (has_half_component(t, shape)) continue;
    auto pair = [&](std::int32_t code) {
      return DotPair{dots[static_cast<std::size_t>(code / d)], dots[static_cast<std::size_t>(code % d)]};
    };
    return RepeatedToroidal{std::move(t), pair(first[u]), pair(second[u])};
  }
  return std::nullopt;
}

/// Any window witness for the array: scans repeated toroidal vectors in
/// lexicographic order and, for each, ordered pairs of realizing pairs
/// until one satisfies the construction's condition.
inline std::optional<WindowWitness> find_witness(const BinaryArray& a) {
  if (a.size() < 2) return std::nullopt;
  for (const auto& [tau, r] : detail::realizations(a, a.size() * a.size())) {
    if (r.count < 2) continue;
    for (std::size_t x = 0; x < r.pairs.size(); ++x)
      for (std::size_t y = x + 1; y < r.pairs.size(); ++y) {
        bool ok = true;
        for (int i = 0; i < a.shape().dims() && ok; ++i)
          ok = witness_condition_holds(a.shape(), r.pairs[x], r.pairs[y], i);
        if (ok) return construct_witness(a, r.pairs[x], r.pairs[y]);
      }
  }
  return std::nullopt;
}

/// Number of toroidal vectors with h_i = n_i/2 for every i in E (0-based
/// coordinates). E must be nonempty, lie within one block of the split
/// and pick only even sides.
inline Index h_E_count(const PermutationArray& p, const std::set<int>& E) {
  const Shape& shape = p.shape();
  const int k = p.split().k();
  if (E.empty()) throw Error("E must be nonempty");
  const bool in_domain = *E.rbegin() < k && *E.begin() >= 0;
  const bool in_image = *E.begin() >= k && *E.rbegin() < shape.dims();
  if (!in_domain && !in_image) throw Error("E must lie inside the domain block or the image block");
  for (int i : E)
    if (shape[i] % 2 != 0)
      throw Error("side " + std::to_string(i + 1) + " of E has odd length " +
                  std::to_string(shape[i]));
  Index c = 0;
  for (const auto& [v, cnt] : toroidal_multiset(p.dots()).counts()) {
    const bool all_half = std::all_of(E.begin(), E.end(), [&](int i) {
      return 2 * v[static_cast<std::size_t>(i)] == shape[i];
    });
    if (all_half) c += cnt;
  }
  return c;
}

/// n^2 / prod_{i in E} n_i.
inline Index h_E_closed_form(const SplitShape& split, const std::set<int>& E) {
  Index denom = 1;
  for (int i : E) denom *= split.shape()[i];
  return split.order() * split.order() / denom;
}

/// Both sides of
///   sum_{nonempty I} (-1)^{|I|+1} / prod_{i in I} n_i  =  1 - prod (n_i - 1)/n_i
/// evaluated exactly.
inline std::pair<Rational, Rational> inclusion_exclusion_identity(std::span<const int> K) {
  if (K.empty()) throw Error("multiset K must be nonempty");
  if (K.size() > 24) throw Error("multiset K too large for subset expansion");
  for (int n : K)
    if (n < 1) throw Error("entries of K must be natural numbers");
  Rational lhs(0);
  const std::uint32_t subsets = 1u << K.size();
  for (std::uint32_t mask = 1; mask < subsets; ++mask) {
    Rational term(1);
    int bits = 0;
    for (std::size_t i = 0; i < K.size(); ++i)
      if (mask & (1u << i)) {
        term /= K[i];
        ++bits;
      }
    lhs += (bits % 2 == 1) ? term : -term;
  }
  Rational prod(1);
  for (int n : K) prod *= Rational(n - 1, n);
  return {lhs, Rational(1) - prod};
}

/// Inclusion-exclusion pieces behind |H_A| and |H| split by whether the
/// half-length component sits in the domain block (U) or the image block (V).
struct HalfBreakdown {
  Index multiset_u = 0, multiset_v = 0, multiset_uv = 0;
  Index set_u = 0, set_v = 0, set_uv = 0;
};

inline HalfBreakdown half_breakdown(const PermutationArray& p) {
  const Shape& shape = p.shape();
  const int k = p.split().k();
  auto classify = [&](const ToroidalVector& v) {
    bool u = false, w = false;
    for (int i = 0; i < shape.dims(); ++i)
      if (shape[i] % 2 == 0 && 2 * v[static_cast<std::size_t>(i)] == shape[i])
        (i < k ? u : w) = true;
    return std::pair{u, w};
  };
  HalfBreakdown b;
  for (const auto& [v, c] : toroidal_multiset(p.dots()).counts()) {
    auto [u, w] = classify(v);
    if (u) b.multiset_u += c;
    if (w) b.multiset_v += c;
    if (u && w) b.multiset_uv += c;
  }
  for (const auto& v : h_set(p.split())) {
    auto [u, w] = classify(v);
    if (u) ++b.set_u;
    if (w) ++b.set_v;
    if (u && w) ++b.set_uv;
  }
  return b;
}

}  // namespace costas_nd
