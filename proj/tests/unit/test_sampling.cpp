#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "chebsub/sampling.hpp"
#include "oracles.hpp"

using namespace chebsub;

namespace {
std::vector<double> column(const NodeSet& s, Eigen::Index l = 0) {
    std::vector<double> v(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) v[i] = s.points()(static_cast<Eigen::Index>(i), l);
    return v;
}
}  // namespace

TEST(Budget, KnownValues) {
    EXPECT_EQ(oversampled_budget(107), 2000u);
    EXPECT_EQ(oversampled_budget(2), 6u);
    EXPECT_EQ(oversampled_budget(10), 93u);
}

TEST(Budget, RejectsTooSmallDimension) {
    EXPECT_THROW(oversampled_budget(1), DomainError);
    EXPECT_THROW(oversampled_budget(0), DomainError);
}

TEST(Pushforward, MapsAnchorPoints) {
    EXPECT_DOUBLE_EQ(chebyshev_pushforward(0.0), 1.0);
    EXPECT_DOUBLE_EQ(chebyshev_pushforward(1.0), -1.0);
    EXPECT_DOUBLE_EQ(chebyshev_pushforward(-1.0), -1.0);
    EXPECT_NEAR(chebyshev_pushforward(0.5), 0.0, 1e-16);
}

TEST(Pushforward, ChebyshevDrawIsCosineOfUniformDraw) {
    const auto u = draw_uniform(3, 1000, 42);
    const auto c = draw_chebyshev(3, 1000, 42);
    for (Eigen::Index i = 0; i < u.points().size(); ++i)
        ASSERT_EQ(c.points().data()[i], std::cos(std::numbers::pi * u.points().data()[i]));
}

TEST(Sampling, IsDeterministicGivenSeed) {
    for (auto m : {Measure::Chebyshev, Measure::Uniform}) {
        const auto a = draw_nodes(m, 4, 300, 123);
        const auto b = draw_nodes(m, 4, 300, 123);
        EXPECT_EQ(a.points(), b.points());
        EXPECT_EQ(a.measure(), m);
        EXPECT_EQ(a.seed(), 123u);
    }
}

TEST(Sampling, DifferentSeedsGiveDifferentPoints) {
    for (auto m : {Measure::Chebyshev, Measure::Uniform}) {
        const auto a = draw_nodes(m, 2, 1, 1);
        const auto b = draw_nodes(m, 2, 1, 2);
        EXPECT_NE(a.points().row(0), b.points().row(0));
    }
}

TEST(Sampling, PointsStayInCube) {
    const auto c = draw_chebyshev(5, 20000, 3);
    const auto u = draw_uniform(5, 20000, 3);
    EXPECT_LE(c.points().cwiseAbs().maxCoeff(), 1.0);
    EXPECT_LE(u.points().cwiseAbs().maxCoeff(), 1.0);
}

TEST(Sampling, UniformMeanAndKolmogorovSmirnov) {
    const auto u = draw_uniform(1, 100000, 2024);
    const auto v = column(u);
    double mean = 0.0;
    for (double x : v) mean += x;
    mean /= static_cast<double>(v.size());
    EXPECT_NEAR(mean, 0.0, 0.01);
    EXPECT_LT(oracle::ks_statistic(v, [](double x) { return 0.5 * (x + 1.0); }), 0.01);
}

TEST(Sampling, ChebyshevKolmogorovSmirnovAgainstArcsine) {
    const auto c = draw_chebyshev(1, 100000, 77);
    EXPECT_LT(oracle::ks_statistic(column(c), oracle::arcsine_cdf), 0.01);
}

TEST(Sampling, ChebyshevNodesConcentrateAtBoundary) {
    const auto c = draw_chebyshev(1, 100000, 5);
    std::size_t outer = 0;
    for (double x : column(c)) outer += std::abs(x) > 0.9;
    const double expected = 2.0 * (0.5 - std::asin(0.9) / std::numbers::pi);
    EXPECT_NEAR(expected, 0.287, 0.001);
    EXPECT_NEAR(static_cast<double>(outer) / 100000.0, expected, 0.02);
}

TEST(Sampling, RejectsBadParameters) {
    EXPECT_THROW(draw_uniform(0, 10, 1), ParameterError);
    EXPECT_THROW(draw_chebyshev(2, 0, 1), ParameterError);
}

TEST(NodeSet, RejectsCoordinatesOutsideCube) {
    RowMatrix p(2, 2);
    p << 0.0, 0.5, 1.2, 0.0;
    EXPECT_THROW(NodeSet(p, Measure::Uniform, 0), DomainError);
}

TEST(NodeSet, SubsetKeepsOrderAndParent) {
    const auto all = draw_chebyshev(2, 20, 8);
    const std::vector<std::size_t> J{1, 4, 7, 19};
    const auto sub = all.subset(J);
    ASSERT_EQ(sub.size(), 4u);
    ASSERT_NE(sub.parent(), nullptr);
    EXPECT_EQ(sub.parent()->points(), all.points());
    EXPECT_EQ(sub.parent_indices(), J);
    for (std::size_t r = 0; r < J.size(); ++r) EXPECT_EQ(sub.point(r), all.point(J[r]));
    EXPECT_THROW((void)all.subset({20}), ParameterError);
}
