#include <cmath>
#include <cstring>
#include <stdexcept>
#include <vector>

#include <gtest/gtest.h>

#include "embopt/embedding.hpp"
#include "embopt/functions.hpp"

namespace {

using embopt::GaussianMatrix;
using embopt::HighPoint;
using embopt::LowPoint;
using embopt::MatrixTag;
using embopt::RngStream;

bool bit_equal(double a, double b) { return std::memcmp(&a, &b, sizeof(double)) == 0; }

TEST(Project, ZeroVectorGivesOrigin) {
  RngStream s(1, embopt::stream_id::kEmbedding);
  const GaussianMatrix a = embopt::sample_matrix(50, 4, s);
  const HighPoint x = embopt::project(a, LowPoint{{0, 0, 0, 0}});
  for (double v : x.coords) EXPECT_EQ(v, 0.0);
}

TEST(Project, ClipsFirstCoordinateOfTwoByOne) {
  const GaussianMatrix a(2, 1, {2.0, 0.5});
  const HighPoint x = embopt::project(a, LowPoint{{1.0}});
  ASSERT_EQ(x.dim(), 2u);
  EXPECT_EQ(x.coords[0], 1.0);
  EXPECT_EQ(x.coords[1], 0.5);
}

TEST(Project, InactiveClippingReturnsAyExactly) {
  const GaussianMatrix a(3, 2, {0.25, -0.5, 0.125, 0.25, -0.75, 0.125});
  const LowPoint y{{0.5, 1.0}};
  const std::vector<double> ay = a.multiply(y);
  const HighPoint x = embopt::project(a, y);
  for (std::size_t i = 0; i < ay.size(); ++i) {
    ASSERT_LE(std::abs(ay[i]), 1.0);
    EXPECT_TRUE(bit_equal(x.coords[i], ay[i]));
  }
}

TEST(Project, RejectsDimensionMismatch) {
  const GaussianMatrix a(2, 1, {1.0, 1.0});
  EXPECT_THROW(embopt::project(a, LowPoint{{1.0, 2.0}}), std::invalid_argument);
}

TEST(Project, FuzzedOutputsStayInUnitBoxAndAreIdempotent) {
  RngStream s(7, embopt::stream_id::kEmbedding);
  RngStream pts(7, 77);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + pts.next_below(40);
    const std::size_t d = 1 + pts.next_below(6);
    const GaussianMatrix a = embopt::sample_matrix(n, d, s);
    LowPoint y;
    for (std::size_t j = 0; j < d; ++j) y.coords.push_back(pts.next_uniform(-100, 100));
    const HighPoint x = embopt::project(a, y);
    for (double v : x.coords) {
      ASSERT_GE(v, -1.0);
      ASSERT_LE(v, 1.0);
    }
    // Clipping an in-box point again changes nothing.
    for (double v : x.coords) EXPECT_EQ(embopt::clip_unit(v), v);
  }
}

TEST(Project, StreamedMatchesMaterializedBitForBit) {
  RngStream pts(3, 33);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 1 + pts.next_below(300);
    const std::size_t d = 1 + pts.next_below(12);
    const MatrixTag tag{pts.next_u64(), 1 + pts.next_below(5), pts.next_below(1000)};
    LowPoint y;
    for (std::size_t j = 0; j < d; ++j) y.coords.push_back(pts.next_uniform(-5, 5));
    const HighPoint a = embopt::project(embopt::regenerate_matrix(n, d, tag), y);
    const HighPoint b = embopt::project_streamed(n, tag, y);
    ASSERT_EQ(a.dim(), b.dim());
    for (std::size_t i = 0; i < n; ++i) ASSERT_TRUE(bit_equal(a.coords[i], b.coords[i])) << i;
  }
}

TEST(SampleMatrix, SameStreamStateGivesSameMatrix) {
  RngStream s1(99, embopt::stream_id::kEmbedding);
  RngStream s2 = s1;
  const GaussianMatrix a = embopt::sample_matrix(20, 3, s1);
  const GaussianMatrix b = embopt::sample_matrix(20, 3, s2);
  EXPECT_EQ(a.entries(), b.entries());
  ASSERT_TRUE(a.tag().has_value());
  EXPECT_EQ(*a.tag(), *b.tag());
  // The next draw differs.
  const GaussianMatrix c = embopt::sample_matrix(20, 3, s1);
  EXPECT_NE(a.entries(), c.entries());
}

TEST(SampleMatrix, TagRegeneratesMatrix) {
  RngStream s(5, embopt::stream_id::kEmbedding);
  embopt::sample_matrix(10, 2, s);
  const GaussianMatrix a = embopt::sample_matrix(10, 2, s);
  const GaussianMatrix b = embopt::regenerate_matrix(10, 2, *a.tag());
  EXPECT_EQ(a.entries(), b.entries());
}

TEST(SampleMatrix, MeanWithinCltBoundLargeN) {
  // n = 1e4, d = 10: 1e5 entries of variance 1/n; the mean has standard
  // error 1/sqrt(n * d * n).
  const std::size_t n = 10000;
  const std::size_t d = 10;
  RngStream s(2024, embopt::stream_id::kEmbedding);
  const GaussianMatrix a = embopt::sample_matrix(n, d, s);
  double sum = 0.0;
  for (double e : a.entries()) sum += e;
  const double mean = sum / static_cast<double>(n * d);
  const double se = 1.0 / std::sqrt(static_cast<double>(n * d) * static_cast<double>(n));
  EXPECT_LE(std::abs(mean), 3.0 * se);
}

TEST(SampleMatrix, PooledVarianceSmallN) {
  // n = 100, d = 5, 20 matrices: pooled variance within 5% of 1/n.
  const std::size_t n = 100;
  const std::size_t d = 5;
  RngStream s(11, embopt::stream_id::kEmbedding);
  double sum = 0.0;
  double sq = 0.0;
  std::size_t count = 0;
  for (int m = 0; m < 20; ++m) {
    const embopt::GaussianMatrix a = embopt::sample_matrix(n, d, s);
    for (double e : a.entries()) {
      sum += e;
      sq += e * e;
      ++count;
    }
  }
  const double mean = sum / static_cast<double>(count);
  const double var = sq / static_cast<double>(count - 1) - mean * mean * static_cast<double>(count) / static_cast<double>(count - 1);
  EXPECT_NEAR(var, 0.01, 0.05 * 0.01);
}

TEST(StochasticObjective, ZeroVectorOnEllipsoidIsAlwaysZero) {
  const embopt::Objective f = embopt::make_function("ellipsoid", 3, 40, 8);
  embopt::StochasticObjective g(f, embopt::make_low_space(3, 0.3),
                                RngStream(8, embopt::stream_id::kEmbedding), 20);
  for (int i = 0; i < 20; ++i) {
    const auto r = g.evaluate(LowPoint{{0, 0, 0}});
    ASSERT_TRUE(r);
    EXPECT_EQ(r->value, 0.0);
  }
  EXPECT_TRUE(g.exhausted());
  EXPECT_FALSE(g.evaluate(LowPoint{{0, 0, 0}}).has_value());
  EXPECT_EQ(g.evaluations(), 20u);
}

TEST(StochasticObjective, RepeatedCallsDifferButStayAboveOptimumAndReplay) {
  const embopt::Objective f = embopt::make_function("rosenbrock", 2, 30, 4);
  embopt::StochasticObjective g(f, embopt::make_low_space(2, 0.3),
                                RngStream(4, embopt::stream_id::kEmbedding), 10);
  const LowPoint y{{1.5, -2.0}};
  const auto a = g.evaluate(y);
  const auto b = g.evaluate(y);
  ASSERT_TRUE(a && b);
  EXPECT_NE(a->value, b->value);
  EXPECT_GE(a->value, f.f_star());
  EXPECT_GE(b->value, f.f_star());
  ASSERT_TRUE(a->matrix && b->matrix);
  EXPECT_NE(a->matrix->draw, b->matrix->draw);
  EXPECT_TRUE(bit_equal(g.replay(*a), a->value));
  EXPECT_TRUE(bit_equal(g.replay(*b), b->value));
  EXPECT_EQ(g.evaluations(), 2u);  // replay consumes nothing
  const HighPoint x = g.reconstruct(*a);
  EXPECT_TRUE(bit_equal(f(x), a->value));
}

TEST(StochasticObjective, CounterMatchesTargetCalls) {
  const embopt::Objective base = embopt::make_function("ackley", 2, 25, 1);
  std::size_t calls = 0;
  const embopt::Objective counted(
      "counted", base.n(), base.effective_coords(),
      [&](std::span<const double> z) {
        ++calls;
        return base.evaluate_effective(z);
      },
      base.f_star());
  embopt::StochasticObjective g(counted, embopt::make_low_space(2, 0.3),
                                RngStream(1, embopt::stream_id::kEmbedding), 37);
  RngStream pts(1, 9);
  while (g.evaluate(LowPoint{{pts.next_uniform(-6, 6), pts.next_uniform(-6, 6)}})) {
  }
  EXPECT_EQ(g.evaluations(), 37u);
  EXPECT_EQ(calls, 37u);
}

TEST(IdentityEmbedding, ClipsAndRequiresMatchingDimension) {
  const embopt::Objective f = embopt::make_linear(1, 2.0);
  embopt::IdentityEmbedding g(f, embopt::BoxSpace::symmetric(1, 2.0), 3);
  EXPECT_EQ(g.evaluate(LowPoint{{0.5}})->value, 1.0);
  EXPECT_EQ(g.evaluate(LowPoint{{1.7}})->value, 2.0);
  EXPECT_EQ(g.evaluate(LowPoint{{-1.7}})->value, -2.0);
  EXPECT_FALSE(g.evaluate(LowPoint{{0.0}}).has_value());
  const embopt::Objective wide = embopt::make_linear(3, 1.0);
  EXPECT_THROW(embopt::IdentityEmbedding(wide, embopt::BoxSpace::symmetric(1, 2.0), 3),
               std::invalid_argument);
}

}  // namespace
