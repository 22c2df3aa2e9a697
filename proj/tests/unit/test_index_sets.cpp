#include <gtest/gtest.h>

#include <algorithm>
#include <set>

#include "chebsub/index_sets.hpp"
#include "oracles.hpp"

using namespace chebsub;

namespace {

std::vector<std::vector<std::uint32_t>> as_vectors(const MultiIndexSet& s) {
    std::vector<std::vector<std::uint32_t>> out;
    for (const auto& k : s) out.push_back(k.entries());
    return out;
}

}  // namespace

TEST(HyperbolicCross, TwoDimensionalRadiusTwentyHas107Indices) {
    EXPECT_EQ(enumerate_hyperbolic_cross(2, 20).size(), 107u);
}

TEST(HyperbolicCross, OneDimensionalCrossIsZeroToR) {
    const auto s = enumerate_hyperbolic_cross(1, 5);
    ASSERT_EQ(s.size(), 6u);
    for (std::uint32_t k = 0; k <= 5; ++k) EXPECT_EQ(s[k], MultiIndex({k}));
}

TEST(HyperbolicCross, RadiusOneIsBinaryCube) {
    const auto s = enumerate_hyperbolic_cross(3, 1);
    ASSERT_EQ(s.size(), 8u);
    for (const auto& k : s)
        for (auto kl : k.entries()) EXPECT_LE(kl, 1u);
}

TEST(HyperbolicCross, TwoDimensionalRadiusFourHas17Indices) {
    // {0..4}x{0,1} (10), {0,1}x{2,3,4} (6), (2,2) (1)
    EXPECT_EQ(enumerate_hyperbolic_cross(2, 4).size(), 17u);
    EXPECT_EQ(oracle::brute_force_cross(2, 4).size(), 17u);
}

TEST(HyperbolicCross, MatchesBruteForceForSmallDimensions) {
    for (std::size_t d = 1; d <= 3; ++d)
        for (std::uint32_t R = 1; R <= 20; ++R)
            EXPECT_EQ(as_vectors(enumerate_hyperbolic_cross(d, R)), oracle::brute_force_cross(d, R))
                << "d=" << d << " R=" << R;
}

TEST(HyperbolicCross, IsLexicographicWithoutDuplicates) {
    const auto s = enumerate_hyperbolic_cross(4, 30);
    EXPECT_TRUE(std::is_sorted(s.begin(), s.end()));
    EXPECT_EQ(std::adjacent_find(s.begin(), s.end()), s.end());
    for (const auto& k : s) EXPECT_LE(k.cross_weight(), 30u);
}

TEST(HyperbolicCross, IsMonotoneInRadius) {
    for (std::size_t d = 1; d <= 4; ++d) {
        auto prev = enumerate_hyperbolic_cross(d, 1);
        for (std::uint32_t R = 2; R <= 30; ++R) {
            auto cur = enumerate_hyperbolic_cross(d, R);
            for (const auto& k : prev) EXPECT_TRUE(cur.contains(k)) << k.to_string() << " lost at R=" << R;
            prev = std::move(cur);
        }
    }
}

TEST(HyperbolicCross, IsDownwardClosed) {
    const auto s = enumerate_hyperbolic_cross(3, 24);
    for (const auto& k : s) {
        for (std::size_t l = 0; l < k.dim(); ++l) {
            if (k[l] == 0) continue;
            auto e = k.entries();
            --e[l];
            EXPECT_TRUE(s.contains(MultiIndex(e))) << k.to_string();
        }
    }
}

TEST(HyperbolicCross, IsSymmetricUnderCoordinatePermutation) {
    const auto s = enumerate_hyperbolic_cross(3, 17);
    std::set<std::vector<std::uint32_t>> all;
    for (const auto& k : s) all.insert(k.entries());
    for (const auto& k : s) {
        auto e = k.entries();
        std::sort(e.begin(), e.end());
        do {
            EXPECT_TRUE(all.count(e));
        } while (std::next_permutation(e.begin(), e.end()));
    }
}

TEST(HyperbolicCross, RejectsDegenerateArguments) {
    EXPECT_THROW(enumerate_hyperbolic_cross(0, 5), DomainError);
    EXPECT_THROW(enumerate_hyperbolic_cross(2, 0), DomainError);
}

TEST(MultiIndex, SerializesWithPipes) {
    EXPECT_EQ(MultiIndex({3, 0, 12}).to_string(), "3|0|12");
    EXPECT_EQ(MultiIndex({3, 0, 12}).cross_weight(), 36u);
}
