#include <gtest/gtest.h>

#include <algorithm>
#include <set>

#include "support/oracles.hpp"
#include "vlat/partitions.hpp"

namespace vlat {
namespace {

using testing::Q;
using testing::VecQ;

std::vector<VecQ> pieces_of(const ComponentRange<Rational>& range) {
  std::vector<VecQ> out;
  for (const auto& c : range) out.push_back(c.piece);
  return out;
}

TEST(Components, SmallCases) {
  EXPECT_EQ(pieces_of(enumerate_components(VecQ{1, 1})),
            (std::vector<VecQ>{{0, 0}, {1, 0}, {0, 1}, {1, 1}}));
  EXPECT_EQ(pieces_of(enumerate_components(VecQ{1, 0})), (std::vector<VecQ>{{0, 0}, {1, 0}}));
}

TEST(Components, MatchBruteForceGridSearch) {
  // Every x on a fine grid in [0, e] with x ∧ (e − x) = 0 must be listed,
  // and nothing else.
  const VecQ e{2, 3};
  std::vector<VecQ> brute;
  for (int a = 0; a <= 8; ++a)
    for (int b = 0; b <= 12; ++b) {
      const VecQ x{testing::frac(a, 4), testing::frac(b, 4)};
      if (meet(x, VecQ(e - x)) == VecQ::zeros(2)) brute.push_back(x);
    }
  auto listed = pieces_of(enumerate_components(e));
  const auto less = [](const VecQ& u, const VecQ& v) {
    return std::lexicographical_compare(u.begin(), u.end(), v.begin(), v.end());
  };
  std::sort(brute.begin(), brute.end(), less);
  std::sort(listed.begin(), listed.end(), less);
  EXPECT_EQ(listed, brute);
}

TEST(Components, EveryPieceIsAComponentAndCountIsPowerOfSupport) {
  SeededRng rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = static_cast<std::size_t>(rng.between(1, 7));
    VecQ e(n);
    std::size_t supp = 0;
    for (std::size_t i = 0; i < n; ++i) {
      e[i] = rng.below(3) == 0 ? Q(0) : rng.rational(1, 4, 3);
      if (e[i] != 0) ++supp;
    }
    std::size_t count = 0;
    for (const auto& c : enumerate_components(e)) {
      EXPECT_TRUE(is_component(e, c.piece));
      ++count;
    }
    EXPECT_EQ(count, std::size_t{1} << supp);
  }
}

TEST(Components, CapIsEnforced) {
  EXPECT_THROW(enumerate_components(VecQ::ones(5), 4), EnumerationLimit);
  EXPECT_THROW(enumerate_components(VecQ{1, -1}), std::invalid_argument);
}

TEST(DisjointPartitions, SmallCases) {
  std::vector<std::vector<VecQ>> got;
  for (const auto& p : disjoint_partitions(VecQ{1, 1}, 2)) got.push_back(p.pieces());
  EXPECT_EQ(got, (std::vector<std::vector<VecQ>>{{{1, 1}}, {{1, 0}, {0, 1}}}));

  std::size_t atoms = 0;
  for (const auto& p : disjoint_partitions(VecQ{1}, 4)) {
    EXPECT_EQ(p.pieces(), (std::vector<VecQ>{{1}}));
    ++atoms;
  }
  EXPECT_EQ(atoms, 1U);
}

TEST(DisjointPartitions, CountsMatchSetPartitionNumbers) {
  for (std::size_t n = 1; n <= 7; ++n) {
    for (std::size_t k = 1; k <= n; ++k) {
      std::size_t count = 0;
      for (const auto& p : disjoint_partitions(VecQ::ones(n), k)) {
        EXPECT_LE(p.size(), k);
        ++count;
      }
      EXPECT_EQ(count, testing::partitions_at_most(n, k)) << "n=" << n << " k=" << k;
    }
    std::size_t all = 0;
    for (const auto& p : disjoint_partitions(VecQ::ones(n), n)) {
      (void)p;
      ++all;
    }
    EXPECT_EQ(all, testing::bell(n));
  }
  std::size_t three = 0;
  for (const auto& p : disjoint_partitions(VecQ{1, 1, 1}, 3)) {
    (void)p;
    ++three;
  }
  EXPECT_EQ(three, 5U);
}

TEST(DisjointPartitions, PiecesArePairwiseDisjointComponents) {
  const VecQ e{2, 0, Q(1, 3), 5};
  std::set<std::vector<std::string>> seen;
  for (const auto& p : disjoint_partitions(e, 4)) {
    VecQ total(4);
    std::vector<std::string> key;
    for (std::size_t a = 0; a < p.size(); ++a) {
      EXPECT_TRUE(is_component(e, p[a]));
      total += p[a];
      for (std::size_t b = a + 1; b < p.size(); ++b) EXPECT_EQ(meet(p[a], p[b]), VecQ::zeros(4));
      std::string s;
      for (const auto& x : p[a]) s += to_string(x) + ",";
      key.push_back(s);
    }
    EXPECT_EQ(total, e);
    std::sort(key.begin(), key.end());
    EXPECT_TRUE(seen.insert(key).second) << "duplicate partition";
  }
  EXPECT_EQ(seen.size(), testing::bell(3));
}

TEST(AtomicPartition, SplitsIntoAtoms) {
  EXPECT_EQ(atomic_partition(VecQ{2, 0, 3}).pieces(), (std::vector<VecQ>{{2, 0, 0}, {0, 0, 3}}));
  const auto p = atomic_partition(VecQ{1, 1});
  EXPECT_EQ(p.pieces(), (std::vector<VecQ>{{1, 0}, {0, 1}}));
  EXPECT_EQ(p[0] + p[1], (VecQ{1, 1}));
}

TEST(Partition, RejectsBadPieces) {
  EXPECT_THROW(Partition<Rational>(VecQ{1, 1}, {VecQ{1, 0}}), InvariantViolation);
  EXPECT_THROW(Partition<Rational>(VecQ{1, 1}, {VecQ{2, 1}, VecQ{-1, 0}}), InvariantViolation);
  EXPECT_THROW(Partition<Rational>(VecQ{1, 1}, {}), InvariantViolation);
}

TEST(DyadicPartition, LevelsAreNestedRefinements) {
  const VecQ w{1, 2, 3, 4, 5};
  for (unsigned level = 0; level < 4; ++level) {
    const auto coarse = dyadic_partition(w, level);
    const auto fine = dyadic_partition(w, level + 1);
    // Every fine piece lies inside exactly one coarse piece.
    for (const auto& f : fine.pieces()) {
      int containing = 0;
      for (const auto& c : coarse.pieces()) {
        if (meet(f, c) == f) ++containing;
      }
      EXPECT_EQ(containing, 1);
    }
  }
  EXPECT_EQ(dyadic_partition(w, 3).pieces(), atomic_partition(w).pieces());
}

TEST(RandomConvexPartition, SumsExactlyAndIsSeeded) {
  SeededRng a(9), b(9);
  const VecQ w{Q(7, 3), 1, 0, 4};
  for (int trial = 0; trial < 20; ++trial) {
    const auto p = random_convex_partition(w, 3, a);
    const auto q = random_convex_partition(w, 3, b);
    EXPECT_EQ(p.pieces(), q.pieces());
    VecQ total(4);
    for (const auto& piece : p.pieces()) total += piece;
    EXPECT_EQ(total, w);
  }
}

TEST(PartitionFamily, StrategiesProduceExpectedShapes) {
  const VecQ w{1, 2, 3};
  EXPECT_EQ(partition_family(w, PartitionStrategy::trivial()).size(), 1U);
  EXPECT_EQ(partition_family(w, PartitionStrategy::atomic()).front().size(), 3U);
  EXPECT_EQ(partition_family(w, PartitionStrategy::random_convex(2, 7, 1)).size(), 7U);
  EXPECT_EQ(partition_family(w, PartitionStrategy::all_disjoint(3)).size(), 5U);
  EXPECT_THROW(partition_family(w, PartitionStrategy::random_convex(2, 0, 1)), EmptyStrategy);
  EXPECT_THROW(partition_family(VecQ{1, -1}, PartitionStrategy::atomic()), std::invalid_argument);
}

}  // namespace
}  // namespace vlat
