#include <gtest/gtest.h>

#include <filesystem>

#include "support.hpp"

using namespace costas_nd;
using testing_support::points;

namespace {

SearchResult run(const SplitShape& split, SearchMode mode, int threads = 1) {
  SearchSpec spec{split, mode};
  spec.parallel_width = threads;
  spec.emit_arrays = true;
  return enumerate(spec);
}

struct BruteCounts {
  long total = 0, costas = 0, periodic = 0;
  std::set<oracle::Points> costas_set, periodic_set;
};

BruteCounts brute(const SplitShape& split) {
  BruteCounts b;
  const auto sizes = testing_support::sizes(split.shape());
  oracle::for_each_permutation_array(sizes, split.k(), [&](oracle::Points dots) {
    std::sort(dots.begin(), dots.end());
    ++b.total;
    if (!oracle::is_costas(dots)) return;
    ++b.costas;
    b.costas_set.insert(dots);
    if (oracle::is_periodic_costas(dots, sizes)) {
      ++b.periodic;
      b.periodic_set.insert(dots);
    }
  });
  return b;
}

std::set<oracle::Points> as_set(const std::vector<PermutationArray>& ps) {
  std::set<oracle::Points> out;
  for (const auto& p : ps) out.insert(points(p.dots()));
  return out;
}

std::filesystem::path temp_file(const std::string& name) {
  auto p = std::filesystem::temp_directory_path() / name;
  std::filesystem::remove(p);
  return p;
}

}  // namespace

TEST(Factorial, ExactBeyondSixtyFourBits) {
  EXPECT_EQ(factorial(0), 1);
  EXPECT_EQ(factorial(8), 40320);
  EXPECT_EQ(factorial(24).str(), "620448401733239439360000");
  EXPECT_THROW(factorial(-1), Error);
}

TEST(Enumerate, Census2x2x4) {
  const auto r = run(SplitShape({2, 2, 4}, 2), SearchMode::periodic);
  EXPECT_EQ(r.total_bijections, 24);
  EXPECT_EQ(r.costas, 16u);
  EXPECT_TRUE(r.costas_exact);
  EXPECT_EQ(r.periodic, 8u);
  EXPECT_TRUE(r.complete);
  EXPECT_EQ(summary_line(r), "total=24 costas=16 periodic=8 complete=true");
}

TEST(Enumerate, Order8NoPeriodic) {
  const auto r = run(SplitShape({2, 4, 8}, 2), SearchMode::periodic);
  EXPECT_EQ(r.total_bijections, 40320);
  EXPECT_EQ(r.periodic, 0u);
  EXPECT_TRUE(r.complete);
}

TEST(Enumerate, Order3) {
  const auto r = run(SplitShape({3, 3}, 1), SearchMode::periodic);
  EXPECT_EQ(r.total_bijections, 6);
  EXPECT_EQ(r.costas, 4u);
  EXPECT_EQ(r.periodic, 0u);
}

TEST(Enumerate, MatchesBruteForceCountsAndExemplars) {
  for (const SplitShape& split : {SplitShape({2, 2, 4}, 2), SplitShape({4, 2, 2}, 1), SplitShape({2, 2}, 1),
                                  SplitShape({4, 4}, 1), SplitShape({5, 5}, 1), SplitShape({2, 3, 6}, 2),
                                  SplitShape({2, 2, 2, 2}, 2)}) {
    const auto b = brute(split);
    for (SearchMode mode : {SearchMode::all, SearchMode::costas, SearchMode::periodic}) {
      const auto r = run(split, mode);
      EXPECT_EQ(r.total_bijections, b.total) << split.to_string();
      EXPECT_EQ(long(r.costas), b.costas) << split.to_string() << " " << to_string(mode);
      EXPECT_EQ(as_set(r.costas_exemplars), b.costas_set) << split.to_string();
      if (mode != SearchMode::costas) {
        EXPECT_EQ(long(*r.periodic), b.periodic) << split.to_string();
        EXPECT_EQ(as_set(r.periodic_exemplars), b.periodic_set) << split.to_string();
      } else {
        EXPECT_FALSE(r.periodic.has_value());
      }
    }
  }
}

TEST(Enumerate, PeriodicSubsetOfCostas) {
  const auto r = run(SplitShape({2, 2, 2, 2}, 2), SearchMode::periodic);
  EXPECT_LE(*r.periodic, r.costas);
  const auto costas = as_set(r.costas_exemplars);
  for (const auto& p : r.periodic_exemplars) {
    EXPECT_TRUE(is_costas(p.dots()));
    EXPECT_TRUE(costas.count(points(p.dots())));
  }
}

TEST(Enumerate, DeterministicAcrossThreadCounts) {
  for (const SplitShape& split : {SplitShape({2, 4, 8}, 2), SplitShape({7, 7}, 1)}) {
    for (bool periodic_only : {false, true}) {
      SearchSpec spec{split, SearchMode::periodic};
      spec.emit_arrays = true;
      spec.exact_costas_count = !periodic_only;
      const auto one = enumerate(spec);
      for (int threads : {2, 3}) {
        spec.parallel_width = threads;
        const auto many = enumerate(spec);
        EXPECT_EQ(many.costas, one.costas);
        EXPECT_EQ(many.periodic, one.periodic);
        EXPECT_EQ(many.nodes_visited, one.nodes_visited) << split.to_string() << " threads=" << threads;
        EXPECT_EQ(many.costas_exemplars, one.costas_exemplars);
        EXPECT_EQ(to_json(spec, many)["counts"], to_json(spec, one)["counts"]);
      }
    }
  }
}

TEST(Enumerate, IdenticalSpecsGiveIdenticalJsonApartFromTiming) {
  SearchSpec spec{SplitShape({2, 2, 4}, 2), SearchMode::periodic};
  spec.emit_arrays = true;
  json a = to_json(spec, enumerate(spec));
  json b = to_json(spec, enumerate(spec));
  a.erase("timing");
  b.erase("timing");
  EXPECT_EQ(a.dump(), b.dump());
}

TEST(Enumerate, PruningNeverAddsNodesOrChangesCounts) {
  for (const SplitShape& split : {SplitShape({2, 4, 8}, 2), SplitShape({6, 6}, 1), SplitShape({2, 3, 6}, 2)}) {
    const auto all = run(split, SearchMode::all);
    const auto costas = run(split, SearchMode::costas);
    const auto periodic = run(split, SearchMode::periodic);
    SearchSpec po{split, SearchMode::periodic};
    po.exact_costas_count = false;
    const auto periodic_only = enumerate(po);
    EXPECT_GE(all.nodes_visited, costas.nodes_visited);
    EXPECT_GE(periodic.nodes_visited, periodic_only.nodes_visited);
    EXPECT_GE(costas.nodes_visited, periodic_only.nodes_visited);
    EXPECT_EQ(all.costas, costas.costas);
    EXPECT_EQ(all.costas, periodic.costas);
    EXPECT_EQ(all.periodic, periodic.periodic);
    EXPECT_EQ(all.periodic, periodic_only.periodic);
    EXPECT_FALSE(periodic_only.costas_exact);
    EXPECT_LE(periodic_only.costas, all.costas);
  }
}

TEST(Enumerate, BudgetGivesPartialResult) {
  SearchSpec spec{SplitShape({2, 4, 8}, 2), SearchMode::periodic};
  spec.node_budget = 500;
  const auto r = enumerate(spec);
  EXPECT_FALSE(r.complete);
  EXPECT_FALSE(r.costas_exact);
  EXPECT_EQ(r.total_bijections, 40320);
  EXPECT_LT(r.costas, 3800u);
  EXPECT_EQ(summary_line(r).find("complete=false") != std::string::npos, true);
}

TEST(Enumerate, ExemplarLimitAndEarlyStop) {
  SearchSpec spec{SplitShape({2, 4, 8}, 2), SearchMode::costas};
  spec.emit_arrays = true;
  spec.exemplar_limit = 5;
  const auto full = enumerate(spec);
  EXPECT_TRUE(full.complete);
  EXPECT_EQ(full.costas_exemplars.size(), 5u);
  spec.stop_at_exemplar_limit = true;
  const auto early = enumerate(spec);
  EXPECT_FALSE(early.complete);
  EXPECT_EQ(early.costas_exemplars.size(), 5u);
  EXPECT_LT(early.nodes_visited, full.nodes_visited);
}

TEST(Enumerate, RejectsBadSpecs) {
  SearchSpec spec{SplitShape({2, 2, 4}, 2), SearchMode::periodic};
  spec.parallel_width = 0;
  EXPECT_THROW(enumerate(spec), Error);
  EXPECT_THROW(parse_mode("fast"), Error);
  EXPECT_EQ(parse_mode("costas"), SearchMode::costas);
}

TEST(Enumerate, ExemplarsRoundTripAndRevalidate) {
  const auto r = run(SplitShape({2, 2, 2, 2}, 2), SearchMode::periodic);
  ASSERT_EQ(r.periodic, 16u);
  ASSERT_EQ(r.periodic_exemplars.size(), 16u);
  for (const auto& p : r.periodic_exemplars) {
    const auto doc = parse_array(to_json(p).dump());
    EXPECT_TRUE(is_periodic_costas(doc.array));
    EXPECT_EQ(*doc.permutation, p);
  }
}

TEST(Checkpoint, ResumeMatchesFreshRun) {
  const auto path = temp_file("costas_nd_resume.json");
  SearchSpec spec{SplitShape({2, 4, 8}, 2), SearchMode::periodic};
  spec.emit_arrays = true;
  spec.exemplar_limit = 10;
  const auto fresh = enumerate(spec);

  spec.checkpoint_path = path.string();
  spec.checkpoint_interval = 1000;
  spec.node_budget = 20000;
  const auto partial = enumerate(spec);
  EXPECT_FALSE(partial.complete);
  ASSERT_TRUE(std::filesystem::exists(path));

  spec.node_budget.reset();
  const auto resumed = enumerate(spec);
  EXPECT_TRUE(resumed.complete);
  EXPECT_EQ(resumed.costas, fresh.costas);
  EXPECT_EQ(resumed.periodic, fresh.periodic);
  EXPECT_EQ(resumed.costas_exemplars, fresh.costas_exemplars);
  EXPECT_LT(resumed.nodes_visited - partial.nodes_visited, fresh.nodes_visited);

  // A checkpoint for one search cannot be resumed by another.
  SearchSpec other{SplitShape({2, 4, 8}, 2), SearchMode::costas};
  other.checkpoint_path = path.string();
  EXPECT_THROW(enumerate(other), Error);
  std::filesystem::remove(path);
}

TEST(Symmetry, CertificateExamples) {
  for (const SplitShape& split : {SplitShape({2, 2, 4}, 2), SplitShape({3, 3}, 1), SplitShape({2, 2}, 1)}) {
    const auto c = symmetry_certificate(split);
    EXPECT_TRUE(c.certified) << split.to_string() << ": " << c.failure;
    EXPECT_TRUE(c.exhaustive);
    EXPECT_EQ(c.arrays_checked, std::uint64_t(factorial(split.order())));
  }
  const auto sampled = symmetry_certificate(SplitShape({3, 3, 9}, 2), 50);
  EXPECT_TRUE(sampled.certified);
  EXPECT_FALSE(sampled.exhaustive);
}

TEST(Symmetry, ReducedPeriodicCountMatchesFullCount) {
  for (const SplitShape& split : {SplitShape({2, 2, 4}, 2), SplitShape({2, 2}, 1), SplitShape({2, 2, 2, 2}, 2),
                                  SplitShape({4, 4}, 1), SplitShape({2, 4, 8}, 2)}) {
    SearchSpec spec{split, SearchMode::periodic};
    spec.emit_arrays = true;
    const auto full = enumerate(spec);
    spec.symmetry_reduction = true;
    const auto reduced = enumerate(spec);
    EXPECT_TRUE(reduced.symmetry_applied);
    EXPECT_EQ(reduced.periodic, full.periodic) << split.to_string();
    EXPECT_EQ(reduced.periodic_exemplars, full.periodic_exemplars) << split.to_string();
    EXPECT_LT(reduced.nodes_visited, full.nodes_visited);
    EXPECT_FALSE(reduced.costas_exact);
  }
}

TEST(VerifyPruning, Examples) {
  EXPECT_TRUE(verify_pruning(SplitShape({2, 2, 4}, 2)));
  EXPECT_TRUE(verify_pruning(SplitShape({2, 4, 8}, 2)));
  EXPECT_TRUE(verify_pruning(SplitShape({4, 4}, 1)));
  EXPECT_THROW(verify_pruning(SplitShape({3, 3, 9}, 2)), Error);
}

TEST(TaylorScan, SmallOrders) {
  EXPECT_EQ(taylor_scan(2).periodic, 2u);
  for (int n = 3; n <= 6; ++n) EXPECT_EQ(taylor_scan(n).periodic, 0u) << n;
  EXPECT_EQ(taylor_scan(6).costas, 116u);
  EXPECT_THROW(taylor_scan(1), Error);
}

TEST(Conjecture, ShapePredicate) {
  EXPECT_TRUE(conjecture_allows(SplitShape({2, 2, 4}, 2)));
  EXPECT_TRUE(conjecture_allows(SplitShape({2, 2, 2, 2}, 2)));
  EXPECT_TRUE(conjecture_allows(SplitShape({2, 2}, 1)));
  EXPECT_FALSE(conjecture_allows(SplitShape({4, 4}, 1)));
  EXPECT_FALSE(conjecture_allows(SplitShape({2, 4, 8}, 2)));
  EXPECT_FALSE(conjecture_allows(SplitShape({3, 3, 9}, 2)));
}

TEST(Conjecture, ScanExamples) {
  const auto entries =
      conjecture_scan({SplitShape({2, 2, 4}, 2), SplitShape({3, 3, 9}, 2), SplitShape({2, 6, 12}, 2)}, std::nullopt, 1);
  ASSERT_EQ(entries.size(), 3u);
  EXPECT_EQ(entries[0].result.periodic, 8u);
  EXPECT_FALSE(entries[0].counterexample);
  EXPECT_EQ(entries[1].result.periodic, 0u);
  EXPECT_TRUE(entries[1].result.complete);
  EXPECT_EQ(entries[2].result.periodic, 0u);
  EXPECT_TRUE(entries[2].result.complete);
  for (const auto& e : entries) EXPECT_FALSE(e.counterexample);
}

TEST(Conjecture, BudgetCapIsReportedNotThrown) {
  const auto entries = conjecture_scan({SplitShape({8, 8}, 1), SplitShape({2, 6, 12}, 2)}, 100, 1);
  ASSERT_EQ(entries.size(), 2u);
  for (const auto& e : entries) {
    EXPECT_FALSE(e.result.complete);
    EXPECT_FALSE(e.status.empty());
  }
}
