#include <gtest/gtest.h>

#include "support/oracles.hpp"
#include "vlat/regular_op.hpp"

namespace vlat {
namespace {

using testing::MatQ;
using testing::Q;
using testing::VecQ;

TEST(RegularOperator, ApplyExamples) {
  EXPECT_EQ(apply(MatQ::identity(2), VecQ{3, 5}), (VecQ{3, 5}));
  EXPECT_EQ(apply(MatQ{{1, -1}}, VecQ{1, 1}), (VecQ{0}));
  EXPECT_EQ(apply(MatQ{{1, 2}, {0, 3}}, VecQ{1, 1}), (VecQ{3, 3}));
  EXPECT_THROW(apply(MatQ{{1, 2}}, VecQ{1}), DimensionMismatch);
  EXPECT_THROW(MatQ(0, 2), DimensionMismatch);
  EXPECT_THROW((MatQ{{1, 2}, {3}}), DimensionMismatch);
}

TEST(RegularOperator, ClosedFormsOnExamples) {
  const MatQ a{{1, -2}, {-3, 4}};
  EXPECT_EQ(modulus_closed_form(a), (MatQ{{1, 2}, {3, 4}}));
  EXPECT_EQ(modulus_closed_form(MatQ(-a)), modulus_closed_form(a));
  const MatQ pos{{1, 2}, {0, 3}};
  EXPECT_EQ(modulus_closed_form(pos), pos);
  EXPECT_EQ(meet_closed_form(MatQ::identity(2), MatQ{{0, 1}, {1, 0}}), MatQ::zeros(2, 2));
  const MatQ c{{0, 2}, {-1, 0}};
  const MatQ aa{{1, -1}, {0, 1}};
  EXPECT_EQ(join_closed_form(aa, c), (MatQ{{1, 2}, {0, 1}}));
  EXPECT_EQ(join_closed_form(aa, c), MatQ(pos_part(MatQ(aa - c)) + c));
}

TEST(RegularOperator, LatticeDualityOnRandomMatrices) {
  SeededRng rng(21);
  for (int trial = 0; trial < 100; ++trial) {
    const auto s = testing::random_matrix(rng, 3, 3);
    const auto t = testing::random_matrix(rng, 3, 3);
    EXPECT_EQ(join_closed_form(s, t), MatQ(-meet_closed_form(MatQ(-s), MatQ(-t))));
    EXPECT_EQ(pos_part(s) - neg_part(s), s);
    EXPECT_EQ(pos_part(s) + neg_part(s), modulus_closed_form(s));
  }
}

TEST(RegularOperator, RankOne) {
  EXPECT_EQ(rank_one(VecQ{1, 0}, VecQ{1, 1}), (MatQ{{1, 0}, {1, 0}}));
  SeededRng rng(4);
  for (int trial = 0; trial < 50; ++trial) {
    VecQ xp(3), y(2), w(3);
    for (auto* v : {&xp, &y, &w})
      for (std::size_t i = 0; i < v->dim(); ++i) (*v)[i] = rng.rational(-4, 4, 5);
    const auto r = rank_one(xp, y);
    EXPECT_EQ(modulus_closed_form(r), rank_one(abs(xp), abs(y)));
    EXPECT_EQ(apply(r, w), VecQ(dot(xp, w) * y));
  }
}

TEST(RegularOperator, KroneckerAndVec) {
  SeededRng rng(8);
  for (int trial = 0; trial < 30; ++trial) {
    const auto t = testing::random_matrix(rng, 2, 3);
    EXPECT_EQ(unvec(vec(t), 2, 3), t);
    // vec is column-major.
    EXPECT_EQ(vec(t)[1], t(1, 0));
    EXPECT_EQ(vec(t)[2], t(0, 1));
  }
  EXPECT_EQ(kron(MatQ{{1, 2}}, MatQ{{0, 1}, {1, 0}}), (MatQ{{0, 1, 0, 2}, {1, 0, 2, 0}}));
}

TEST(ModulusOracle, SpecExamples) {
  const MatQ b{{1, -1}};
  const VecQ w{1, 1};
  EXPECT_EQ(modulus_oracle(b, w, PartitionStrategy::trivial()), (VecQ{0}));
  EXPECT_EQ(modulus_oracle(b, w, PartitionStrategy::atomic()), (VecQ{2}));
  EXPECT_EQ(modulus_oracle(MatQ{{1, -2}, {-3, 4}}, w, PartitionStrategy::atomic()), (VecQ{3, 7}));
  const MatQ pos{{1, 2}, {3, 0}};
  for (const auto& s : {PartitionStrategy::trivial(), PartitionStrategy::atomic(), PartitionStrategy::dyadic(0),
                        PartitionStrategy::random_convex(3, 5, 2), PartitionStrategy::all_disjoint(2)}) {
    EXPECT_EQ(modulus_oracle(pos, w, s), apply(pos, w));
  }
}

TEST(ModulusOracle, AtomicAttainsAndCoarserStaysBelow) {
  SeededRng rng(31);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t rows = static_cast<std::size_t>(rng.between(1, 3));
    const std::size_t cols = static_cast<std::size_t>(rng.between(1, 4));
    const auto b = testing::random_matrix(rng, rows, cols);
    const auto w = testing::random_positive_vector(rng, cols);
    const auto expected = testing::times(map_entries(b, [](const Q& x) { return testing::qabs(x); }), w);
    EXPECT_EQ(modulus_oracle(b, w, PartitionStrategy::atomic()), expected);
    EXPECT_EQ(modulus_oracle(b, w, PartitionStrategy::all_disjoint(cols)), expected);
    EXPECT_TRUE(leq(modulus_oracle(b, w, PartitionStrategy::random_convex(3, 4, trial)), expected));
    EXPECT_TRUE(leq(testing::two_piece_grid_sup(b, w, 3), expected));
  }
}

TEST(MeetOracle, Examples) {
  const VecQ w{1, 1};
  EXPECT_EQ(meet_oracle(MatQ::identity(2), MatQ{{0, 1}, {1, 0}}, w, PartitionStrategy::atomic()),
            VecQ::zeros(2));
  const MatQ s{{1, 2}, {3, 4}};
  for (const auto& strat : {PartitionStrategy::trivial(), PartitionStrategy::atomic()}) {
    EXPECT_EQ(meet_oracle(s, s, w, strat), apply(s, w));
  }
  EXPECT_EQ(meet_oracle(MatQ{{2}}, MatQ{{3}}, VecQ{1}, PartitionStrategy::atomic()), (VecQ{2}));
  EXPECT_THROW(meet_oracle(MatQ{{-1}}, MatQ{{3}}, VecQ{1}, PartitionStrategy::atomic()), std::invalid_argument);
}

TEST(MeetOracle, AtomicEqualsEntrywiseMinimum) {
  SeededRng rng(12);
  for (int trial = 0; trial < 100; ++trial) {
    const auto s = testing::random_positive_matrix(rng, 3, 3);
    const auto t = testing::random_positive_matrix(rng, 3, 3);
    const auto w = testing::random_positive_vector(rng, 3);
    MatQ m(3, 3);
    for (std::size_t r = 0; r < 3; ++r)
      for (std::size_t c = 0; c < 3; ++c) m(r, c) = s(r, c) < t(r, c) ? s(r, c) : t(r, c);
    const auto exact = testing::times(m, w);
    EXPECT_EQ(meet_oracle(s, t, w, PartitionStrategy::atomic()), exact);
    EXPECT_TRUE(leq(exact, meet_oracle(s, t, w, PartitionStrategy::trivial())));
  }
}

TEST(OperatorPartition, SplitsReproduceTheTarget) {
  SeededRng rng(14);
  for (int trial = 0; trial < 60; ++trial) {
    const auto t = testing::random_positive_matrix(rng, 2, 3);
    for (bool signed_pieces : {false, true}) {
      const auto split = random_split(t, 4, signed_pieces, rng);
      MatQ total(2, 3), plain(2, 3);
      for (const auto& p : split.pieces()) {
        total += modulus_closed_form(p);
        plain += p;
      }
      EXPECT_EQ(total, t);
      if (!signed_pieces) {
        EXPECT_EQ(plain, t);
      }
    }
    const auto atoms = atomic_split(t);
    for (const auto& p : atoms.pieces()) EXPECT_LE(support(vec(p)).size(), 1U);
  }
  EXPECT_THROW(OperatorPartition<Rational>(MatQ{{1}}, {MatQ{{2}}}), InvariantViolation);
}

TEST(OperatorPartition, BandSplitIdentity) {
  SeededRng rng(15);
  for (int trial = 0; trial < 100; ++trial) {
    const auto t = testing::random_positive_matrix(rng, 3, 3);
    VecQ v(3);
    for (std::size_t i = 0; i < 3; ++i) v[i] = rng.rational(-3, 3, 4);
    const auto split = band_split(t, v);
    const auto& tp = split.pieces()[0];
    const auto& tq = split.pieces()[1];
    EXPECT_EQ(modulus_closed_form(tp) + modulus_closed_form(tq), t);
    EXPECT_EQ(apply(MatQ(tp + tq), v), apply(t, abs(v)));
  }
}

}  // namespace
}  // namespace vlat
