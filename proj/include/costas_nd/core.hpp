#pragma once

// Shapes, dots, vectors and permutation arrays.
//
// All coordinates are 0-based internally: coordinate i of a dot lies in
// [0, n_i). Conversion to the 1-based convention happens only at the I/O
// boundary (see io.hpp).

#include <algorithm>
#include <compare>
#include <cstdint>
#include <numeric>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace costas_nd {

using Index = std::int64_t;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline int floor_mod(Index a, int n) {
  const Index r = a % n;
  return static_cast<int>(r < 0 ? r + n : r);
}

inline std::string join(std::span<const int> values, const char* sep = ",") {
  std::ostringstream os;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) os << sep;
    os << values[i];
  }
  return os.str();
}

// Fixed-arity integer tuple with a tag so dots and the two vector kinds
// cannot be mixed up.
template <class Tag>
struct Tuple {
  std::vector<int> v;

  Tuple() = default;
  explicit Tuple(std::vector<int> values) : v(std::move(values)) {}
  Tuple(std::initializer_list<int> values) : v(values) {}

  std::size_t size() const { return v.size(); }
  int operator[](std::size_t i) const { return v[i]; }
  int& operator[](std::size_t i) { return v[i]; }
  std::span<const int> span() const { return v; }
  bool is_zero() const {
    return std::all_of(v.begin(), v.end(), [](int x) { return x == 0; });
  }

  friend bool operator==(const Tuple&, const Tuple&) = default;
  friend auto operator<=>(const Tuple&, const Tuple&) = default;
};

struct DotTag {};
struct DifferenceTag {};
struct ToroidalTag {};

/// A position inside an index set, 0-based.
using Dot = Tuple<DotTag>;
/// Signed componentwise difference omega - alpha of two distinct dots.
using DifferenceVector = Tuple<DifferenceTag>;
/// Difference reduced componentwise mod n_i, each component in [0, n_i).
using ToroidalVector = Tuple<ToroidalTag>;

class Shape {
 public:
  Shape() = default;
  explicit Shape(std::vector<int> sizes) : sizes_(std::move(sizes)) {
    if (sizes_.size() < 2) throw Error("shape needs at least 2 dimensions");
    for (std::size_t i = 0; i < sizes_.size(); ++i)
      if (sizes_[i] < 2)
        throw Error("shape side " + std::to_string(i + 1) + " must be >= 2");
  }

  int dims() const { return static_cast<int>(sizes_.size()); }
  int operator[](int i) const { return sizes_[static_cast<std::size_t>(i)]; }
  std::span<const int> sizes() const { return sizes_; }
  Index volume() const {
    return std::accumulate(sizes_.begin(), sizes_.end(), Index{1},
                           std::multiplies<>());
  }
  bool contains(std::span<const int> coords) const {
    if (coords.size() != sizes_.size()) return false;
    for (std::size_t i = 0; i < coords.size(); ++i)
      if (coords[i] < 0 || coords[i] >= sizes_[i]) return false;
    return true;
  }
  std::string to_string() const { return join(sizes_, "x"); }

  friend bool operator==(const Shape&, const Shape&) = default;

 private:
  std::vector<int> sizes_;
};

inline Index product(std::span<const int> sizes) {
  return std::accumulate(sizes.begin(), sizes.end(), Index{1},
                         std::multiplies<>());
}

/// Row-major (last coordinate fastest) index of coords in a box.
inline Index linearize(std::span<const int> coords, std::span<const int> sizes) {
  Index idx = 0;
  for (std::size_t i = 0; i < sizes.size(); ++i) idx = idx * sizes[i] + coords[i];
  return idx;
}

inline std::vector<int> delinearize(Index idx, std::span<const int> sizes) {
  std::vector<int> out(sizes.size());
  for (std::size_t i = sizes.size(); i-- > 0;) {
    out[i] = static_cast<int>(idx % sizes[i]);
    idx /= sizes[i];
  }
  return out;
}

/// A shape together with the split index k separating the domain block
/// X = first k sides from the image block Y = remaining sides.
class SplitShape {
 public:
  SplitShape() = default;
  SplitShape(Shape shape, int k) : shape_(std::move(shape)), k_(k) {
    if (k_ < 1 || k_ >= shape_.dims())
      throw Error("split index k=" + std::to_string(k_) + " out of range [1," +
                  std::to_string(shape_.dims() - 1) + "]");
    const Index x = product(domain_sizes());
    const Index y = product(image_sizes());
    if (x != y)
      throw Error("shape " + shape_.to_string() + " with k=" + std::to_string(k_) +
                  ": domain size " + std::to_string(x) + " != image size " +
                  std::to_string(y));
    order_ = x;
  }
  SplitShape(std::vector<int> sizes, int k) : SplitShape(Shape(std::move(sizes)), k) {}

  const Shape& shape() const { return shape_; }
  int k() const { return k_; }
  int dims() const { return shape_.dims(); }
  Index order() const { return order_; }
  std::span<const int> domain_sizes() const {
    return shape_.sizes().subspan(0, static_cast<std::size_t>(k_));
  }
  std::span<const int> image_sizes() const {
    return shape_.sizes().subspan(static_cast<std::size_t>(k_));
  }
  std::string to_string() const {
    return shape_.to_string() + "|k=" + std::to_string(k_);
  }

  friend bool operator==(const SplitShape&, const SplitShape&) = default;

 private:
  Shape shape_;
  int k_ = 1;
  Index order_ = 0;
};

/// Unique dot congruent to alpha componentwise mod n_i.
inline Dot reduce(std::span<const int> alpha, const Shape& shape) {
  if (static_cast<int>(alpha.size()) != shape.dims())
    throw Error("arity mismatch: tuple has " + std::to_string(alpha.size()) +
                " components, shape has " + std::to_string(shape.dims()));
  std::vector<int> out(alpha.size());
  for (int i = 0; i < shape.dims(); ++i) out[i] = floor_mod(alpha[i], shape[i]);
  return Dot(std::move(out));
}

inline DifferenceVector difference_vector(const Dot& alpha, const Dot& omega) {
  if (alpha.size() != omega.size()) throw Error("arity mismatch between dots");
  if (alpha == omega) throw Error("difference vector of a dot with itself");
  std::vector<int> d(alpha.size());
  for (std::size_t i = 0; i < d.size(); ++i) d[i] = omega[i] - alpha[i];
  return DifferenceVector(std::move(d));
}

inline ToroidalVector toroidal_vector(const Dot& alpha, const Dot& omega,
                                      const Shape& shape) {
  if (alpha.size() != omega.size() || static_cast<int>(alpha.size()) != shape.dims())
    throw Error("arity mismatch between dots and shape");
  if (alpha == omega) throw Error("toroidal vector of a dot with itself");
  std::vector<int> t(alpha.size());
  for (int i = 0; i < shape.dims(); ++i) t[i] = floor_mod(omega[i] - alpha[i], shape[i]);
  return ToroidalVector(std::move(t));
}

/// Binary array stored as its sorted, duplicate-free dot list.
class BinaryArray {
 public:
  BinaryArray() = default;
  BinaryArray(Shape shape, std::vector<Dot> dots)
      : shape_(std::move(shape)), dots_(std::move(dots)) {
    for (const Dot& d : dots_)
      if (!shape_.contains(d.span()))
        throw Error("dot (" + join(d.span()) + ") outside shape " + shape_.to_string());
    std::sort(dots_.begin(), dots_.end());
    if (std::adjacent_find(dots_.begin(), dots_.end()) != dots_.end())
      throw Error("duplicate dot in binary array");
  }

  const Shape& shape() const { return shape_; }
  const std::vector<Dot>& dots() const& { return dots_; }
  std::vector<Dot> dots() && { return std::move(dots_); }
  std::size_t size() const { return dots_.size(); }
  bool contains(const Dot& d) const {
    return std::binary_search(dots_.begin(), dots_.end(), d);
  }

  friend bool operator==(const BinaryArray&, const BinaryArray&) = default;

 private:
  Shape shape_;
  std::vector<Dot> dots_;
};

/// Value of the periodic extension at an arbitrary integer tuple.
inline bool periodic_value(const BinaryArray& a, std::span<const int> alpha) {
  return a.contains(reduce(alpha, a.shape()));
}

/// Permutation array defined by a bijection phi: X -> Y. The table holds,
/// for every domain cell in row-major order, the row-major index of its
/// image tuple.
class PermutationArray {
 public:
  PermutationArray() = default;
  PermutationArray(SplitShape split, std::vector<Index> table)
      : split_(std::move(split)), table_(std::move(table)) {
    const Index n = split_.order();
    if (static_cast<Index>(table_.size()) != n)
      throw Error("phi table has " + std::to_string(table_.size()) +
                  " entries, expected " + std::to_string(n));
    std::vector<char> seen(static_cast<std::size_t>(n), 0);
    for (std::size_t x = 0; x < table_.size(); ++x) {
      const Index y = table_[x];
      if (y < 0 || y >= n)
        throw Error("image index " + std::to_string(y) + " out of Y");
      if (seen[static_cast<std::size_t>(y)]++)
        throw Error("phi is not injective: image (" +
                    join(delinearize(y, split_.image_sizes())) + ") repeats");
    }
  }

  const SplitShape& split() const { return split_; }
  const Shape& shape() const { return split_.shape(); }
  Index order() const { return split_.order(); }
  std::span<const Index> table() const { return table_; }

  std::vector<int> domain_cell(Index x) const { return delinearize(x, split_.domain_sizes()); }
  std::vector<int> image(Index x) const {
    return delinearize(table_[static_cast<std::size_t>(x)], split_.image_sizes());
  }

  BinaryArray dots() const {
    std::vector<Dot> out;
    out.reserve(table_.size());
    for (Index x = 0; x < order(); ++x) {
      std::vector<int> c = domain_cell(x);
      const std::vector<int> y = image(x);
      c.insert(c.end(), y.begin(), y.end());
      out.emplace_back(std::move(c));
    }
    return BinaryArray(shape(), std::move(out));
  }

  friend bool operator==(const PermutationArray&, const PermutationArray&) = default;

 private:
  SplitShape split_;
  std::vector<Index> table_;
};

/// Builds a permutation array from image tuples (0-based), one per domain
/// cell in row-major order.
inline PermutationArray from_bijection(const SplitShape& split,
                                       const std::vector<std::vector<int>>& images) {
  if (static_cast<Index>(images.size()) != split.order())
    throw Error("phi table must list " + std::to_string(split.order()) +
                " image tuples, got " + std::to_string(images.size()));
  const auto ysizes = split.image_sizes();
  std::vector<Index> table;
  table.reserve(images.size());
  for (std::size_t x = 0; x < images.size(); ++x) {
    const auto& y = images[x];
    if (y.size() != ysizes.size())
      throw Error("image tuple " + std::to_string(x + 1) + " has wrong arity");
    for (std::size_t i = 0; i < y.size(); ++i)
      if (y[i] < 0 || y[i] >= ysizes[i])
        throw Error("image tuple (" + join(y) + ") out of Y");
    table.push_back(linearize(y, ysizes));
  }
  return PermutationArray(split, std::move(table));
}

/// Recovers the bijection behind a dot set; throws unless the dots are
/// the graph of a bijection X -> Y for the given split.
inline PermutationArray as_permutation(const BinaryArray& a, int k) {
  SplitShape split(a.shape(), k);
  const Index n = split.order();
  if (static_cast<Index>(a.size()) != n)
    throw Error("array has " + std::to_string(a.size()) + " dots, order is " +
                std::to_string(n));
  std::vector<Index> table(static_cast<std::size_t>(n), -1);
  for (const Dot& d : a.dots()) {
    const auto s = d.span();
    const Index x = linearize(s.subspan(0, static_cast<std::size_t>(k)), split.domain_sizes());
    if (table[static_cast<std::size_t>(x)] != -1)
      throw Error("domain cell (" + join(s.subspan(0, static_cast<std::size_t>(k))) +
                  ") has two dots");
    table[static_cast<std::size_t>(x)] =
        linearize(s.subspan(static_cast<std::size_t>(k)), split.image_sizes());
  }
  return PermutationArray(split, std::move(table));
}

/// Array of the inverse bijection: image block first, domain block second.
inline PermutationArray invert(const PermutationArray& p) {
  const auto& s = p.shape().sizes();
  const auto k = static_cast<std::size_t>(p.split().k());
  std::vector<int> sizes(s.begin() + static_cast<std::ptrdiff_t>(k), s.end());
  sizes.insert(sizes.end(), s.begin(), s.begin() + static_cast<std::ptrdiff_t>(k));
  SplitShape inv_split(Shape(std::move(sizes)), p.shape().dims() - p.split().k());
  std::vector<Index> inv(static_cast<std::size_t>(p.order()));
  for (Index x = 0; x < p.order(); ++x)
    inv[static_cast<std::size_t>(p.table()[static_cast<std::size_t>(x)])] = x;
  return PermutationArray(std::move(inv_split), std::move(inv));
}

namespace detail {
inline void check_permutation(std::span<const int> sigma, std::size_t n, const char* what) {
  if (sigma.size() != n)
    throw Error(std::string(what) + " permutation has arity " +
                std::to_string(sigma.size()) + ", expected " + std::to_string(n));
  std::vector<char> seen(n, 0);
  for (int s : sigma) {
    if (s < 0 || static_cast<std::size_t>(s) >= n || seen[static_cast<std::size_t>(s)]++)
      throw Error(std::string(what) + " is not a permutation of 0.." + std::to_string(n - 1));
  }
}
}  // namespace detail

/// Reorders coordinates within each block: new domain coordinate j is old
/// coordinate sigma_x[j]; new image coordinate j is old image coordinate
/// sigma_y[j]. Side lengths travel with their coordinates.
inline PermutationArray permute_coords(const PermutationArray& p,
                                       std::span<const int> sigma_x,
                                       std::span<const int> sigma_y) {
  const int m = p.shape().dims();
  const int k = p.split().k();
  detail::check_permutation(sigma_x, static_cast<std::size_t>(k), "domain");
  detail::check_permutation(sigma_y, static_cast<std::size_t>(m - k), "image");
  std::vector<int> full(static_cast<std::size_t>(m));
  for (int j = 0; j < k; ++j) full[j] = sigma_x[j];
  for (int j = 0; j < m - k; ++j) full[k + j] = k + sigma_y[j];

  std::vector<int> sizes(static_cast<std::size_t>(m));
  for (int j = 0; j < m; ++j) sizes[j] = p.shape()[full[j]];
  Shape shape(std::move(sizes));
  std::vector<Dot> dots;
  for (const Dot& d : p.dots().dots()) {
    std::vector<int> c(static_cast<std::size_t>(m));
    for (int j = 0; j < m; ++j) c[j] = d[static_cast<std::size_t>(full[j])];
    dots.emplace_back(std::move(c));
  }
  return as_permutation(BinaryArray(std::move(shape), std::move(dots)), k);
}

/// Cyclic relabeling: every dot alpha becomes reduce(alpha + t).
inline BinaryArray translate(const BinaryArray& a, std::span<const int> t) {
  if (static_cast<int>(t.size()) != a.shape().dims()) throw Error("arity mismatch in translation");
  std::vector<Dot> dots;
  dots.reserve(a.size());
  std::vector<int> c(t.size());
  for (const Dot& d : a.dots()) {
    for (std::size_t i = 0; i < t.size(); ++i) c[i] = d[i] + t[i];
    dots.push_back(reduce(c, a.shape()));
  }
  return BinaryArray(a.shape(), std::move(dots));
}

inline PermutationArray translate(const PermutationArray& p, std::span<const int> t) {
  return as_permutation(translate(p.dots(), t), p.split().k());
}

}  // namespace costas_nd
