#pragma once

// Exhaustive enumeration of the bijections of a split shape.
//
// The tree assigns domain cells in row-major order, trying unused image
// tuples in ascending order. Three modes:
//   all       no pruning; every leaf is classified by the analysis module
//   costas    prune on any repeated difference vector
//   periodic  costas pruning, plus tracking of repeated toroidal vectors
//             without a half-length component; such a repeat forces a
//             window with a repeated difference, so the subtree cannot
//             hold a periodic Costas array. Survivors are confirmed with
//             the full window scan.
//
// Work is split into prefix units (partial assignments of the first few
// cells) that run independently and are merged by summation, so counts do
// not depend on the number of threads.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>
#include <optional>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>
#include <json.hpp>

#include "costas_nd/analysis.hpp"
#include "costas_nd/core.hpp"

namespace costas_nd {

enum class SearchMode { all, costas, periodic };

inline std::string to_string(SearchMode m) {
  switch (m) {
    case SearchMode::all: return "all";
    case SearchMode::costas: return "costas";
    case SearchMode::periodic: return "periodic";
  }
  return "?";
}

inline SearchMode parse_mode(const std::string& s) {
  if (s == "all") return SearchMode::all;
  if (s == "costas") return SearchMode::costas;
  if (s == "periodic") return SearchMode::periodic;
  throw Error("unknown search mode '" + s + "' (expected all|costas|periodic)");
}

struct SearchSpec {
  SplitShape split;
  SearchMode mode = SearchMode::periodic;
  /// Fix phi(first cell) to the first image tuple and scale the periodic
  /// count by n. Only applied once translation invariance is certified.
  bool symmetry_reduction = false;
  int parallel_width = 1;
  std::optional<std::uint64_t> node_budget;
  bool emit_arrays = false;
  std::optional<std::size_t> exemplar_limit;
  /// Stop (incomplete) once exemplar_limit target exemplars are found.
  bool stop_at_exemplar_limit = false;
  /// Periodic mode only: when false, subtrees already ruled out for
  /// periodicity are cut, and the Costas count becomes a lower bound.
  bool exact_costas_count = true;
  std::string checkpoint_path;
  std::uint64_t checkpoint_interval = 1'000'000'000;
};

using BigCount = boost::multiprecision::cpp_int;

struct SearchResult {
  BigCount total_bijections = 0;
  std::uint64_t costas = 0;
  bool costas_exact = false;
  std::optional<std::uint64_t> periodic;
  std::uint64_t nodes_visited = 0;
  bool complete = false;
  bool symmetry_applied = false;
  std::vector<PermutationArray> costas_exemplars;
  std::vector<PermutationArray> periodic_exemplars;
  double wall_time_seconds = 0.0;
  std::string checkpoint_path;
};

inline BigCount factorial(Index n) {
  if (n < 0) throw Error("factorial of a negative number");
  BigCount f = 1;
  for (Index i = 2; i <= n; ++i) f *= i;
  return f;
}

/// Enumerates all bijections of a split shape in row-major / ascending
/// order (no pruning). Intended for small shapes and test oracles.
template <class Fn>
void for_each_bijection(const SplitShape& split, Fn&& fn) {
  std::vector<Index> table(static_cast<std::size_t>(split.order()));
  for (Index i = 0; i < split.order(); ++i) table[static_cast<std::size_t>(i)] = i;
  do {
    fn(PermutationArray(split, table));
  } while (std::next_permutation(table.begin(), table.end()));
}

struct SymmetryCertificate {
  bool certified = false;
  bool exhaustive = false;
  std::uint64_t arrays_checked = 0;
  std::string failure;
};

/// Checks that is_periodic_costas is invariant under every cyclic
/// translation of the shape. Exhaustive for order <= 8; above that a
/// seeded sample of `samples` random bijections is checked against all
/// translations.
inline SymmetryCertificate symmetry_certificate(const SplitShape& split, std::size_t samples = 200,
                                                std::uint64_t seed = 1) {
  SymmetryCertificate cert;
  const auto offsets = window_offsets(split.shape());
  auto check = [&](const PermutationArray& p) {
    const BinaryArray a = p.dots();
    const bool base = is_periodic_costas(a);
    ++cert.arrays_checked;
    for (const auto& t : offsets) {
      if (is_periodic_costas(translate(a, t)) != base) {
        std::string phi;
        for (Index y : p.table()) phi += std::to_string(y + 1) + " ";
        cert.failure = "translation (" + join(t) + ") changes periodicity of phi = " + phi;
        return false;
      }
    }
    return true;
  };
  if (split.order() <= 8) {
    cert.exhaustive = true;
    bool ok = true;
    for_each_bijection(split, [&](const PermutationArray& p) {
      if (ok) ok = check(p);
    });
    cert.certified = ok;
    return cert;
  }
  std::mt19937_64 rng(seed);
  std::vector<Index> table(static_cast<std::size_t>(split.order()));
  for (std::size_t s = 0; s < samples; ++s) {
    for (Index i = 0; i < split.order(); ++i) table[static_cast<std::size_t>(i)] = i;
    std::shuffle(table.begin(), table.end(), rng);
    if (!check(PermutationArray(split, table))) return cert;
  }
  cert.certified = true;
  return cert;
}

namespace detail {

inline std::mutex& certificate_mutex() {
  static std::mutex mu;
  return mu;
}

// Certificates are cached per split; a failure anywhere disables
// reduction for every later search.
inline bool translation_reduction_allowed(const SplitShape& split) {
  static std::map<std::string, bool> cache;
  static bool disabled = false;
  std::lock_guard lock(certificate_mutex());
  if (disabled) return false;
  auto it = cache.find(split.to_string());
  if (it != cache.end()) return it->second;
  const bool ok = symmetry_certificate(split).certified;
  if (!ok) disabled = true;
  cache[split.to_string()] = ok;
  return ok;
}

// Precomputed key tables shared by all workers.
struct SearchTables {
  int n = 0;
  std::vector<std::vector<int>> domain, image;
  // key(j -> i) = dkey[j*n+i] + ikey[yj*n+yi], same split for toroidal keys.
  std::vector<Index> dkey, ikey, tdkey, tikey;
  std::vector<char> in_h;
  Index diff_space = 0, torus_space = 0;

  explicit SearchTables(const SplitShape& split) {
    n = static_cast<int>(split.order());
    const auto xs = split.domain_sizes();
    const auto ys = split.image_sizes();
    for (int c = 0; c < n; ++c) {
      domain.push_back(delinearize(c, xs));
      image.push_back(delinearize(c, ys));
    }
    const auto sizes = split.shape().sizes();
    const std::size_t m = sizes.size();
    const std::size_t k = xs.size();
    std::vector<Index> dstride(m), tstride(m);
    Index ds = 1, ts = 1;
    for (std::size_t i = m; i-- > 0;) {
      dstride[i] = ds;
      tstride[i] = ts;
      ds *= 2 * sizes[i] - 1;
      ts *= sizes[i];
    }
    diff_space = ds;
    torus_space = ts;
    const auto nn = static_cast<std::size_t>(n) * static_cast<std::size_t>(n);
    dkey.resize(nn);
    ikey.resize(nn);
    tdkey.resize(nn);
    tikey.resize(nn);
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) {
        Index d = 0, t = 0, di = 0, ti = 0;
        for (std::size_t i = 0; i < k; ++i) {
          const int delta = domain[b][i] - domain[a][i];
          d += (delta + sizes[i] - 1) * dstride[i];
          t += floor_mod(delta, sizes[i]) * tstride[i];
        }
        for (std::size_t i = 0; i < m - k; ++i) {
          const int delta = image[b][i] - image[a][i];
          di += (delta + sizes[k + i] - 1) * dstride[k + i];
          ti += floor_mod(delta, sizes[k + i]) * tstride[k + i];
        }
        const auto idx = static_cast<std::size_t>(a) * static_cast<std::size_t>(n) +
                         static_cast<std::size_t>(b);
        dkey[idx] = d;
        tdkey[idx] = t;
        ikey[idx] = di;
        tikey[idx] = ti;
      }
    in_h.assign(static_cast<std::size_t>(ts), 0);
    for (Index t = 0; t < ts; ++t)
      in_h[static_cast<std::size_t>(t)] =
          has_half_component(ToroidalVector(delinearize(t, sizes)), split.shape()) ? 1 : 0;
  }
};

struct UnitResult {
  std::uint64_t costas = 0;
  std::uint64_t periodic = 0;
  std::uint64_t nodes = 0;
  std::vector<std::vector<Index>> costas_exemplars;
  std::vector<std::vector<Index>> periodic_exemplars;
  bool done = false;
};

struct SharedState {
  std::atomic<std::uint64_t> session_nodes{0};
  std::atomic<std::uint64_t> target_exemplars{0};
  std::atomic<bool> stop{false};
  std::atomic<bool> budget_hit{false};
};

class Worker {
 public:
  Worker(const SearchSpec& spec, const SearchTables& tables, SharedState& shared)
      : spec_(spec),
        t_(tables),
        shared_(shared),
        n_(tables.n),
        assign_(static_cast<std::size_t>(tables.n), -1),
        used_(static_cast<std::size_t>(tables.n), 0) {
    if (spec.mode != SearchMode::all) diff_seen_.assign(static_cast<std::size_t>(t_.diff_space), 0);
    if (spec.mode == SearchMode::periodic)
      tcount_.assign(static_cast<std::size_t>(t_.torus_space), 0);
  }

  // Places cell `cell` := y. Returns false (state unchanged) if a pruning
  // rule rejects the node.
  bool place(int cell, int y) {
    if (spec_.mode != SearchMode::all) {
      int j = 0;
      bool ok = true;
      for (; j < cell; ++j) {
        const Index k1 = diff_key(j, cell, assign_[j], y);
        const Index k2 = diff_key(cell, j, y, assign_[j]);
        if (diff_seen_[k1] || diff_seen_[k2]) {
          ok = false;
          break;
        }
        diff_seen_[k1] = 1;
        diff_seen_[k2] = 1;
      }
      if (!ok) {
        for (int i = 0; i < j; ++i) {
          diff_seen_[diff_key(i, cell, assign_[i], y)] = 0;
          diff_seen_[diff_key(cell, i, y, assign_[i])] = 0;
        }
        return false;
      }
    }
    if (spec_.mode == SearchMode::periodic) {
      for (int j = 0; j < cell; ++j) {
        bump(torus_key(j, cell, assign_[j], y));
        bump(torus_key(cell, j, y, assign_[j]));
      }
      if (!spec_.exact_costas_count && excess_ > 0) {
        unplace_vectors(cell, y);
        return false;
      }
    }
    assign_[static_cast<std::size_t>(cell)] = y;
    used_[static_cast<std::size_t>(y)] = 1;
    return true;
  }

  void unplace(int cell) {
    const int y = assign_[static_cast<std::size_t>(cell)];
    unplace_vectors(cell, y);
    assign_[static_cast<std::size_t>(cell)] = -1;
    used_[static_cast<std::size_t>(y)] = 0;
  }

  // Full subtree below `cell` (cells < cell already placed).
  void dfs(int cell, UnitResult& out) {
    if (shared_.stop.load(std::memory_order_relaxed)) return;
    if (cell == n_) {
      leaf(out);
      return;
    }
    for (int y = 0; y < n_; ++y) {
      if (used_[static_cast<std::size_t>(y)]) continue;
      if (!count_node(out)) return;
      if (!place(cell, y)) continue;
      dfs(cell + 1, out);
      unplace(cell);
      if (shared_.stop.load(std::memory_order_relaxed)) return;
    }
  }

  bool count_node(UnitResult& out) {
    ++out.nodes;
    if (++pending_ == 4096) flush();
    return !shared_.stop.load(std::memory_order_relaxed);
  }

  void flush() {
    const auto total = shared_.session_nodes.fetch_add(pending_) + pending_;
    pending_ = 0;
    if (spec_.node_budget && total > *spec_.node_budget) {
      shared_.budget_hit = true;
      shared_.stop = true;
    }
  }

  const std::vector<int>& assignment() const { return assign_; }

 private:
  Index diff_key(int a, int b, int ya, int yb) const {
    return t_.dkey[static_cast<std::size_t>(a * n_ + b)] + t_.ikey[static_cast<std::size_t>(ya * n_ + yb)];
  }
  Index torus_key(int a, int b, int ya, int yb) const {
    return t_.tdkey[static_cast<std::size_t>(a * n_ + b)] + t_.tikey[static_cast<std::size_t>(ya * n_ + yb)];
  }
  void bump(Index key) {
    if (tcount_[static_cast<std::size_t>(key)]++ >= 1 && !t_.in_h[static_cast<std::size_t>(key)]) ++excess_;
  }
  void drop(Index key) {
    if (--tcount_[static_cast<std::size_t>(key)] >= 1 && !t_.in_h[static_cast<std::size_t>(key)]) --excess_;
  }
  void unplace_vectors(int cell, int y) {
    for (int j = 0; j < cell; ++j) {
      if (spec_.mode != SearchMode::all) {
        diff_seen_[diff_key(j, cell, assign_[j], y)] = 0;
        diff_seen_[diff_key(cell, j, y, assign_[j])] = 0;
      }
      if (spec_.mode == SearchMode::periodic) {
        drop(torus_key(j, cell, assign_[j], y));
        drop(torus_key(cell, j, y, assign_[j]));
      }
    }
  }

  std::vector<Index> table() const { return {assign_.begin(), assign_.end()}; }

  void record(std::vector<std::vector<Index>>& list, bool target) {
    if (!spec_.emit_arrays) return;
    if (spec_.exemplar_limit && list.size() >= *spec_.exemplar_limit) return;
    list.push_back(table());
    if (target && spec_.stop_at_exemplar_limit && spec_.exemplar_limit &&
        shared_.target_exemplars.fetch_add(1) + 1 >= *spec_.exemplar_limit)
      shared_.stop = true;
  }

  void leaf(UnitResult& out) {
    if (spec_.mode == SearchMode::all) {
      const BinaryArray a = PermutationArray(spec_.split, table()).dots();
      if (is_costas(a)) {
        ++out.costas;
        record(out.costas_exemplars, false);
        if (is_periodic_costas(a)) {
          ++out.periodic;
          record(out.periodic_exemplars, false);
        }
      }
      return;
    }
    ++out.costas;
    record(out.costas_exemplars, spec_.mode == SearchMode::costas);
    if (spec_.mode == SearchMode::periodic && excess_ == 0 &&
        is_periodic_costas(PermutationArray(spec_.split, table()).dots())) {
      ++out.periodic;
      record(out.periodic_exemplars, true);
    }
  }

  const SearchSpec& spec_;
  const SearchTables& t_;
  SharedState& shared_;
  int n_;
  std::vector<int> assign_;
  std::vector<char> used_;
  std::vector<char> diff_seen_;
  std::vector<int> tcount_;
  Index excess_ = 0;
  std::uint64_t pending_ = 0;
};

inline nlohmann::json spec_echo(const SearchSpec& spec, bool symmetry_applied) {
  return {{"shape", spec.split.shape().sizes()},
          {"k", spec.split.k()},
          {"mode", to_string(spec.mode)},
          {"symmetry_reduction", symmetry_applied},
          {"exact_costas_count", spec.exact_costas_count}};
}

inline nlohmann::json unit_to_json(const UnitResult& u) {
  return {{"costas", u.costas},
          {"periodic", u.periodic},
          {"nodes", u.nodes},
          {"costas_exemplars", u.costas_exemplars},
          {"periodic_exemplars", u.periodic_exemplars}};
}

inline UnitResult unit_from_json(const nlohmann::json& j) {
  UnitResult u;
  u.costas = j.at("costas").get<std::uint64_t>();
  u.periodic = j.at("periodic").get<std::uint64_t>();
  u.nodes = j.at("nodes").get<std::uint64_t>();
  u.costas_exemplars = j.at("costas_exemplars").get<std::vector<std::vector<Index>>>();
  u.periodic_exemplars = j.at("periodic_exemplars").get<std::vector<std::vector<Index>>>();
  u.done = true;
  return u;
}

// Single owner of the checkpoint file.
class Checkpoint {
 public:
  Checkpoint(std::string path, nlohmann::json header) : path_(std::move(path)), header_(std::move(header)) {}

  bool enabled() const { return !path_.empty(); }

  // Completed units from a previous session with a matching header.
  std::map<std::size_t, UnitResult> load() const {
    std::map<std::size_t, UnitResult> done;
    if (!enabled() || !std::filesystem::exists(path_)) return done;
    std::ifstream in(path_);
    nlohmann::json j;
    try {
      in >> j;
    } catch (const nlohmann::json::exception&) {
      throw Error("checkpoint " + path_ + " is unreadable");
    }
    if (j.value("header", nlohmann::json()) != header_)
      throw Error("checkpoint " + path_ + " belongs to a different search");
    for (const auto& [key, unit] : j.at("units").items()) done[std::stoul(key)] = unit_from_json(unit);
    return done;
  }

  void save(const std::vector<UnitResult>& units) {
    if (!enabled()) return;
    std::lock_guard lock(mu_);
    nlohmann::json j;
    j["header"] = header_;
    j["units"] = nlohmann::json::object();
    for (std::size_t i = 0; i < units.size(); ++i)
      if (units[i].done) j["units"][std::to_string(i)] = unit_to_json(units[i]);
    const std::string tmp = path_ + ".tmp";
    {
      std::ofstream out(tmp);
      if (!out) throw Error("cannot write checkpoint " + tmp);
      out << j.dump() << '\n';
    }
    std::filesystem::rename(tmp, path_);
  }

  std::mutex& mutex() { return mu_; }

 private:
  std::string path_;
  nlohmann::json header_;
  std::mutex mu_;
};

inline bool table_less(const PermutationArray& a, const PermutationArray& b) {
  return std::lexicographical_compare(a.table().begin(), a.table().end(), b.table().begin(),
                                      b.table().end());
}

}  // namespace detail

/// Runs the search described by `spec`.
inline SearchResult enumerate(const SearchSpec& spec) {
  using clock = std::chrono::steady_clock;
  const auto start = clock::now();
  const SplitShape& split = spec.split;
  const int n = static_cast<int>(split.order());
  if (n > 64) throw Error("order " + std::to_string(n) + " is beyond the supported search range");
  if (spec.parallel_width < 1) throw Error("parallel width must be positive");

  SearchResult result;
  result.total_bijections = factorial(n);
  result.checkpoint_path = spec.checkpoint_path;
  result.symmetry_applied =
      spec.symmetry_reduction && n > 1 && detail::translation_reduction_allowed(split);

  const detail::SearchTables tables(split);
  detail::SharedState shared;

  // Expand prefixes level by level until there are enough units.
  std::size_t target_units = static_cast<std::size_t>(spec.parallel_width) * 8;
  if (spec.parallel_width == 1) target_units = 1;
  if (!spec.checkpoint_path.empty()) target_units = std::max<std::size_t>(target_units, 4096);

  detail::UnitResult prefix_stats;
  detail::Worker expander(spec, tables, shared);
  std::vector<std::vector<int>> prefixes{{}};
  if (result.symmetry_applied) {
    ++prefix_stats.nodes;
    expander.place(0, 0);
    expander.unplace(0);
    prefixes = {{0}};
  }
  auto replay = [&](detail::Worker& w, const std::vector<int>& prefix) {
    for (std::size_t c = 0; c < prefix.size(); ++c)
      if (!w.place(static_cast<int>(c), prefix[c])) throw std::logic_error("prefix replay rejected");
  };
  auto rewind = [](detail::Worker& w, std::size_t depth) {
    for (std::size_t c = depth; c-- > 0;) w.unplace(static_cast<int>(c));
  };
  while (prefixes.size() < target_units && !prefixes.empty() &&
         static_cast<int>(prefixes.front().size()) < n - 1) {
    std::vector<std::vector<int>> next;
    for (const auto& prefix : prefixes) {
      replay(expander, prefix);
      const int cell = static_cast<int>(prefix.size());
      std::vector<char> used(static_cast<std::size_t>(n), 0);
      for (int y : prefix) used[static_cast<std::size_t>(y)] = 1;
      for (int y = 0; y < n; ++y) {
        if (used[static_cast<std::size_t>(y)]) continue;
        ++prefix_stats.nodes;
        if (!expander.place(cell, y)) continue;
        expander.unplace(cell);
        auto longer = prefix;
        longer.push_back(y);
        next.push_back(std::move(longer));
      }
      rewind(expander, prefix.size());
    }
    prefixes = std::move(next);
  }

  nlohmann::json header = detail::spec_echo(spec, result.symmetry_applied);
  header["units"] = prefixes.size();
  header["prefix_depth"] = prefixes.empty() ? 0 : prefixes.front().size();
  detail::Checkpoint checkpoint(spec.checkpoint_path, header);
  std::vector<detail::UnitResult> units(prefixes.size());
  for (auto& [i, u] : checkpoint.load())
    if (i < units.size()) units[i] = std::move(u);
  shared.session_nodes = prefix_stats.nodes;

  std::atomic<std::size_t> next_unit{0};
  std::atomic<std::uint64_t> since_save{0};
  auto work = [&]() {
    detail::Worker w(spec, tables, shared);
    for (;;) {
      const std::size_t i = next_unit.fetch_add(1);
      if (i >= units.size() || shared.stop) break;
      if (units[i].done) continue;
      detail::UnitResult r;
      replay(w, prefixes[i]);
      w.dfs(static_cast<int>(prefixes[i].size()), r);
      rewind(w, prefixes[i].size());
      w.flush();
      r.done = !shared.stop;
      {
        std::lock_guard lock(checkpoint.mutex());
        units[i] = std::move(r);
      }
      if (since_save.fetch_add(units[i].nodes) + units[i].nodes >= spec.checkpoint_interval) {
        since_save = 0;
        std::vector<detail::UnitResult> snapshot;
        {
          std::lock_guard lock(checkpoint.mutex());
          snapshot = units;
        }
        checkpoint.save(snapshot);
      }
    }
  };
  if (spec.parallel_width == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < spec.parallel_width; ++t) pool.emplace_back(work);
    for (auto& th : pool) th.join();
  }
  checkpoint.save(units);

  result.nodes_visited = prefix_stats.nodes;
  std::uint64_t costas = 0, periodic = 0;
  bool all_done = true;
  for (const auto& u : units) {
    result.nodes_visited += u.nodes;
    costas += u.costas;
    periodic += u.periodic;
    all_done = all_done && u.done;
    for (const auto& t : u.costas_exemplars)
      result.costas_exemplars.emplace_back(split, std::vector<Index>(t.begin(), t.end()));
    for (const auto& t : u.periodic_exemplars)
      result.periodic_exemplars.emplace_back(split, std::vector<Index>(t.begin(), t.end()));
  }
  result.complete = all_done && !shared.stop;
  result.costas = costas;
  result.costas_exact = result.complete && !result.symmetry_applied &&
                        (spec.mode != SearchMode::periodic || spec.exact_costas_count);
  if (spec.mode == SearchMode::all) result.costas_exact = result.complete;

  if (spec.mode != SearchMode::costas) {
    if (result.symmetry_applied) {
      // Each image translation orbit has exactly n members, one per value
      // of phi(first cell).
      periodic *= static_cast<std::uint64_t>(n);
      std::vector<PermutationArray> orbit;
      for (const auto& p : result.periodic_exemplars)
        for (Index y = 0; y < n; ++y) {
          std::vector<int> t(static_cast<std::size_t>(split.dims()), 0);
          const auto shift = delinearize(y, split.image_sizes());
          std::copy(shift.begin(), shift.end(), t.begin() + split.k());
          orbit.push_back(translate(p, t));
        }
      result.periodic_exemplars = std::move(orbit);
    }
    result.periodic = periodic;
  }
  std::sort(result.costas_exemplars.begin(), result.costas_exemplars.end(), detail::table_less);
  std::sort(result.periodic_exemplars.begin(), result.periodic_exemplars.end(), detail::table_less);
  if (spec.exemplar_limit) {
    if (result.costas_exemplars.size() > *spec.exemplar_limit)
      result.costas_exemplars.resize(*spec.exemplar_limit);
    if (result.periodic_exemplars.size() > *spec.exemplar_limit)
      result.periodic_exemplars.resize(*spec.exemplar_limit);
  }
  result.wall_time_seconds = std::chrono::duration<double>(clock::now() - start).count();
  return result;
}

class PruningMismatch : public Error {
 public:
  using Error::Error;
};

/// Naive enumeration against the pruned search: identical counts and
/// identical exemplar sets, or PruningMismatch naming the first divergent
/// assignment.
inline bool verify_pruning(const SplitShape& split) {
  if (split.order() > 8) throw Error("verify_pruning needs a domain of at most 8 cells");
  SearchSpec naive{split, SearchMode::all};
  naive.emit_arrays = true;
  SearchSpec pruned = naive;
  pruned.mode = SearchMode::periodic;
  SearchSpec periodic_only = pruned;
  periodic_only.exact_costas_count = false;
  SearchSpec costas_only = pruned;
  costas_only.mode = SearchMode::costas;

  const SearchResult a = enumerate(naive);
  const SearchResult b = enumerate(pruned);
  const SearchResult c = enumerate(periodic_only);
  const SearchResult d = enumerate(costas_only);

  auto first_diff = [](const std::vector<PermutationArray>& x, const std::vector<PermutationArray>& y) {
    std::vector<PermutationArray> sym;
    std::set_symmetric_difference(x.begin(), x.end(), y.begin(), y.end(), std::back_inserter(sym),
                                  detail::table_less);
    std::string phi;
    if (!sym.empty())
      for (Index v : sym.front().table()) phi += std::to_string(v + 1) + " ";
    return phi;
  };
  auto expect_same = [&](const std::vector<PermutationArray>& x,
                         const std::vector<PermutationArray>& y, const char* what) {
    if (x != y)
      throw PruningMismatch(std::string(what) + " exemplars differ on " + split.to_string() +
                            ", first divergent phi = " + first_diff(x, y));
  };
  if (a.costas != b.costas || a.costas != d.costas)
    throw PruningMismatch("costas counts differ on " + split.to_string());
  if (a.periodic != b.periodic || a.periodic != c.periodic)
    throw PruningMismatch("periodic counts differ on " + split.to_string());
  expect_same(a.costas_exemplars, b.costas_exemplars, "costas");
  expect_same(a.costas_exemplars, d.costas_exemplars, "costas");
  expect_same(a.periodic_exemplars, b.periodic_exemplars, "periodic");
  expect_same(a.periodic_exemplars, c.periodic_exemplars, "periodic");
  return true;
}

/// Periodic-Costas count for two-dimensional order n.
inline SearchResult taylor_scan(int n, int parallel_width = 1) {
  if (n < 2 || n > 12) throw Error("taylor scan supports 2 <= n <= 12");
  SearchSpec spec{SplitShape({n, n}, 1), SearchMode::periodic};
  spec.parallel_width = parallel_width;
  return enumerate(spec);
}

/// Whether a periodic Costas array on this split would agree with the
/// conjectured shape: n = 2^k on the side with more coordinates, every
/// side length there equal to 2.
inline bool conjecture_allows(const SplitShape& split) {
  const auto big = split.k() >= split.dims() - split.k() ? split.domain_sizes() : split.image_sizes();
  return std::all_of(big.begin(), big.end(), [](int s) { return s == 2; }) &&
         split.order() == (Index{1} << big.size());
}

struct ScanEntry {
  SplitShape split;
  SearchResult result;
  bool conjecture_allows_shape = false;
  /// A periodic Costas array was found where the conjecture forbids one.
  bool counterexample = false;
  std::string status;
};

/// Periodic-Costas counts for each shape under a node budget. Counts use
/// periodic-only pruning and certified translation reduction.
inline std::vector<ScanEntry> conjecture_scan(const std::vector<SplitShape>& shapes,
                                              std::optional<std::uint64_t> budget,
                                              int parallel_width = 1) {
  std::vector<ScanEntry> out;
  for (const auto& split : shapes) {
    SearchSpec spec{split, SearchMode::periodic};
    spec.exact_costas_count = false;
    spec.symmetry_reduction = true;
    spec.node_budget = budget;
    spec.parallel_width = parallel_width;
    spec.emit_arrays = true;
    spec.exemplar_limit = 64;
    ScanEntry e{split, enumerate(spec)};
    e.conjecture_allows_shape = conjecture_allows(split);
    const std::uint64_t found = e.result.periodic.value_or(0);
    e.counterexample = found > 0 && !e.conjecture_allows_shape;
    if (e.counterexample)
      e.status = "COUNTEREXAMPLE";
    else if (!e.result.complete)
      e.status = found > 0 ? "partial (periodic found, shape allowed)" : "partial (budget exhausted)";
    else
      e.status = "consistent";
    out.push_back(std::move(e));
  }
  return out;
}

}  // namespace costas_nd
