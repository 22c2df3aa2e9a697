#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <numbers>
#include <random>
#include <string_view>
#include <vector>

#include "chebsub/errors.hpp"
#include "chebsub/matrix.hpp"

namespace chebsub {

enum class Measure { Chebyshev, Uniform };

inline std::string_view to_string(Measure m) {
    return m == Measure::Chebyshev ? "cheb" : "uniform";
}

/// Seeded 64-bit stream. mt19937_64 is fully specified by the standard, and the
/// conversion to doubles is done here (not by std::uniform_real_distribution,
/// whose output is implementation-defined) so streams match across toolchains.
class RandomStream {
public:
    explicit RandomStream(std::uint64_t seed, std::uint64_t stream = 0) {
        std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                          static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
        engine_.seed(seq);
    }

    /// Uniform on [0, 1) with 53 random bits.
    double canonical() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    /// Uniform on [-1, 1).
    double symmetric() { return 2.0 * canonical() - 1.0; }

private:
    std::mt19937_64 engine_;
};

/// Points in [-1,1]^d, one per row, in draw order.
class NodeSet {
public:
    NodeSet(RowMatrix points, Measure measure, std::uint64_t seed)
        : points_(std::move(points)), measure_(measure), seed_(seed) {
        for (Eigen::Index i = 0; i < points_.size(); ++i) {
            double v = points_.data()[i];
            if (!(v >= -1.0 && v <= 1.0)) throw DomainError("node coordinate outside [-1,1]");
        }
    }

    [[nodiscard]] std::size_t dim() const noexcept { return static_cast<std::size_t>(points_.cols()); }
    [[nodiscard]] std::size_t size() const noexcept { return static_cast<std::size_t>(points_.rows()); }
    [[nodiscard]] const RowMatrix& points() const noexcept { return points_; }
    [[nodiscard]] auto point(std::size_t i) const { return points_.row(static_cast<Eigen::Index>(i)); }
    [[nodiscard]] Measure measure() const noexcept { return measure_; }
    [[nodiscard]] std::uint64_t seed() const noexcept { return seed_; }

    [[nodiscard]] const NodeSet* parent() const noexcept { return parent_.get(); }
    [[nodiscard]] const std::vector<std::size_t>& parent_indices() const noexcept { return parent_indices_; }

    /// Rows `J` of this set, order preserved; the result remembers its parent.
    [[nodiscard]] NodeSet subset(const std::vector<std::size_t>& J) const {
        RowMatrix sub(static_cast<Eigen::Index>(J.size()), points_.cols());
        for (std::size_t r = 0; r < J.size(); ++r) {
            if (J[r] >= size()) throw ParameterError("subset index out of range");
            sub.row(static_cast<Eigen::Index>(r)) = points_.row(static_cast<Eigen::Index>(J[r]));
        }
        NodeSet out(std::move(sub), measure_, seed_);
        out.parent_ = std::make_shared<const NodeSet>(*this);
        out.parent_indices_ = J;
        return out;
    }

private:
    RowMatrix points_;
    Measure measure_;
    std::uint64_t seed_;
    std::shared_ptr<const NodeSet> parent_;
    std::vector<std::size_t> parent_indices_;
};

/// M = ceil(4 m ln m).
inline std::size_t oversampled_budget(std::size_t m) {
    if (m < 2) throw DomainError("oversampled budget needs m >= 2");
    const double md = static_cast<double>(m);
    return static_cast<std::size_t>(std::ceil(4.0 * md * std::log(md)));
}

namespace detail {

inline RowMatrix draw_symmetric_uniform(std::size_t dim, std::size_t count, std::uint64_t seed) {
    if (dim == 0) throw ParameterError("sampling: dimension must be >= 1");
    if (count == 0) throw ParameterError("sampling: count must be >= 1");
    RandomStream rng(seed);
    RowMatrix pts(static_cast<Eigen::Index>(count), static_cast<Eigen::Index>(dim));
    for (Eigen::Index i = 0; i < pts.size(); ++i) pts.data()[i] = rng.symmetric();
    return pts;
}

}  // namespace detail

/// Map a uniform variate on [-1,1] to the arcsine (Chebyshev) distribution.
inline double chebyshev_pushforward(double u) { return std::cos(std::numbers::pi * u); }

inline NodeSet draw_uniform(std::size_t dim, std::size_t count, std::uint64_t seed) {
    return {detail::draw_symmetric_uniform(dim, count, seed), Measure::Uniform, seed};
}

/// Each coordinate is cos(pi U) with U from the same stream draw_uniform uses.
inline NodeSet draw_chebyshev(std::size_t dim, std::size_t count, std::uint64_t seed) {
    RowMatrix pts = detail::draw_symmetric_uniform(dim, count, seed);
    for (Eigen::Index i = 0; i < pts.size(); ++i) pts.data()[i] = chebyshev_pushforward(pts.data()[i]);
    return {std::move(pts), Measure::Chebyshev, seed};
}

inline NodeSet draw_nodes(Measure measure, std::size_t dim, std::size_t count, std::uint64_t seed) {
    return measure == Measure::Chebyshev ? draw_chebyshev(dim, count, seed) : draw_uniform(dim, count, seed);
}

}  // namespace chebsub
