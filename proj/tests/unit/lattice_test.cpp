#include <gtest/gtest.h>

#include "support/oracles.hpp"
#include "vlat/errors.hpp"
#include "vlat/lattice.hpp"
#include "vlat/scalar.hpp"

namespace vlat {
namespace {

using testing::Q;
using testing::VecQ;

TEST(Scalar, ParsesFractionsIntegersAndDecimals) {
  EXPECT_EQ(parse_rational("3/4"), Q(3, 4));
  EXPECT_EQ(parse_rational("-6/8"), Q(-3, 4));
  EXPECT_EQ(parse_rational("7"), Q(7));
  EXPECT_EQ(parse_rational("1.25"), Q(5, 4));
  EXPECT_EQ(parse_rational("-0.5"), Q(-1, 2));
  EXPECT_EQ(to_string(parse_rational("6/8")), "3/4");
}

TEST(Scalar, RejectsMalformedText) {
  EXPECT_THROW(parse_rational("1/0"), ParseError);
  EXPECT_THROW(parse_rational("abc"), ParseError);
  EXPECT_THROW(parse_rational(""), ParseError);
  EXPECT_THROW(parse_rational("1/2/3"), ParseError);
}

TEST(Scalar, ToleranceAppliesOnlyToDoubles) {
  EXPECT_TRUE(approx_equal(1.0, 1.0 + 1e-12, Tolerance{}));
  EXPECT_FALSE(approx_equal(1.0, 1.001, Tolerance{}));
  EXPECT_FALSE(approx_equal(Q(1), Q(Q(1) + Q(1, 1000000) * Q(1, 1000000)), Tolerance{}));
}

TEST(LatticeVector, ComponentwiseOperations) {
  const VecQ u{1, -2}, v{0, 5};
  EXPECT_EQ(meet(u, v), (VecQ{0, -2}));
  EXPECT_EQ(meet(u, u), u);
  EXPECT_EQ(meet(VecQ{1, 0}, VecQ{0, 1}), (VecQ{0, 0}));
  EXPECT_EQ(abs(u), (VecQ{1, 2}));
  EXPECT_EQ(pos_part(u), (VecQ{1, 0}));
  EXPECT_EQ(neg_part(u), (VecQ{0, 2}));
  const VecQ w{3, -4};
  EXPECT_EQ(pos_part(w) - neg_part(w), w);
  EXPECT_EQ(meet(pos_part(w), neg_part(w)), VecQ::zeros(2));
}

TEST(LatticeVector, RejectsMismatchedAndEmpty) {
  EXPECT_THROW(VecQ(0), DimensionMismatch);
  EXPECT_THROW(meet(VecQ{1, 2}, VecQ{1}), DimensionMismatch);
  EXPECT_THROW(VecQ::unit(2, 2), IndexOutOfRange);
}

TEST(LatticeVector, RieszIdentitiesHoldOnRandomVectors) {
  SeededRng rng(11);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = static_cast<std::size_t>(rng.between(1, 6));
    VecQ x(n), y(n);
    for (std::size_t i = 0; i < n; ++i) {
      x[i] = rng.rational(-5, 5, 8);
      y[i] = rng.rational(-5, 5, 8);
    }
    EXPECT_EQ(join(x, VecQ(-x)), abs(x));
    EXPECT_EQ(pos_part(x) + neg_part(x), abs(x));
    EXPECT_EQ(meet(x, y) + join(x, y), x + y);
    EXPECT_EQ(join(x, y), VecQ(-meet(VecQ(-x), VecQ(-y))));
    EXPECT_TRUE(is_positive(abs(x)));
    EXPECT_EQ(is_positive(x), x == pos_part(x));
    // Triangle inequality in the lattice sense.
    EXPECT_TRUE(leq(abs(x + y), abs(x) + abs(y)));
  }
}

TEST(LatticeVector, FloatModeUsesTolerance) {
  const LatticeVector<double> a{1.0, -1e-12};
  EXPECT_TRUE(is_positive(a, Tolerance{1e-9}));
  EXPECT_FALSE(is_positive(a, Tolerance{0.0}));
  EXPECT_TRUE(approx_equal(a, LatticeVector<double>{1.0, 0.0}));
}

TEST(BandProjection, MasksCoordinates) {
  const BandProjection p(2, {1});
  const VecQ x{3, 5};
  EXPECT_EQ(p.apply(x), (VecQ{0, 5}));
  EXPECT_EQ(p.complement().apply(x), (VecQ{3, 0}));
  EXPECT_EQ(p.apply(x) + p.complement().apply(x), x);
  EXPECT_EQ(p.compose(p), p);
  EXPECT_THROW(BandProjection(2, {2}), IndexOutOfRange);
}

TEST(BandProjection, GeneratedByPositivePartRecoversIt) {
  SeededRng rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = static_cast<std::size_t>(rng.between(1, 6));
    VecQ v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = rng.rational(-3, 3, 4);
    const auto p = BandProjection::generated_by(pos_part(v));
    EXPECT_EQ(p.apply(v), pos_part(v));
    EXPECT_EQ(p.complement().apply(v), VecQ(-neg_part(v)));
    EXPECT_EQ(p.apply(p.apply(v)), p.apply(v));
  }
}

}  // namespace
}  // namespace vlat
