#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <span>
#include <string_view>
#include <vector>

#include "chebsub/errors.hpp"
#include "chebsub/index_sets.hpp"
#include "chebsub/matrix.hpp"
#include "chebsub/sampling.hpp"

namespace chebsub {

/// Chebyshev: orthonormal in L2 of the Chebyshev measure.
/// HalfPeriodCosine: orthonormal in L2([-1,1]) with Lebesgue measure.
enum class BasisTag { Chebyshev, HalfPeriodCosine };

inline std::string_view to_string(BasisTag b) {
    return b == BasisTag::Chebyshev ? "cheb" : "hpc";
}

/// The measure under which a basis is sampled and its error is measured.
inline Measure natural_measure(BasisTag b) {
    return b == BasisTag::Chebyshev ? Measure::Chebyshev : Measure::Uniform;
}

namespace detail {

inline void check_unit_interval(double x, const char* who) {
    if (!(x >= -1.0 && x <= 1.0)) throw DomainError(std::string(who) + ": argument outside [-1,1]");
}

}  // namespace detail

/// sqrt(2)^{min{1,k}} cos(k arccos x)
inline double cheb_1d(std::uint32_t k, double x) {
    detail::check_unit_interval(x, "cheb_1d");
    if (k == 0) return 1.0;
    return std::numbers::sqrt2 * std::cos(static_cast<double>(k) * std::acos(x));
}

/// sqrt(2)^{-delta_{0,k}} cos(pi k (x+1)/2)
inline double hpc_1d(std::uint32_t k, double x) {
    detail::check_unit_interval(x, "hpc_1d");
    if (k == 0) return 1.0 / std::numbers::sqrt2;
    return std::cos(std::numbers::pi * static_cast<double>(k) * (x + 1.0) / 2.0);
}

inline double basis_1d(BasisTag basis, std::uint32_t k, double x) {
    return basis == BasisTag::Chebyshev ? cheb_1d(k, x) : hpc_1d(k, x);
}

namespace detail {

template <class OneD>
double tensor_product(const MultiIndex& k, std::span<const double> x, OneD&& one_d) {
    if (k.dim() != x.size()) throw DomainError("tensor basis: multi-index and point dimensions differ");
    double v = 1.0;
    for (std::size_t l = 0; l < x.size(); ++l) v *= one_d(k[l], x[l]);
    return v;
}

}  // namespace detail

inline double cheb_tensor(const MultiIndex& k, std::span<const double> x) {
    return detail::tensor_product(k, x, cheb_1d);
}

inline double hpc_tensor(const MultiIndex& k, std::span<const double> x) {
    return detail::tensor_product(k, x, hpc_1d);
}

inline double basis_tensor(BasisTag basis, const MultiIndex& k, std::span<const double> x) {
    return basis == BasisTag::Chebyshev ? cheb_tensor(k, x) : hpc_tensor(k, x);
}

/// Row `i` of a row-major matrix as a span.
inline std::span<const double> row_span(const RowMatrix& m, std::size_t i) {
    return {m.data() + static_cast<Eigen::Index>(i) * m.cols(), static_cast<std::size_t>(m.cols())};
}

/// Entry (i, j) = basis_{k_j}(x^i), optionally scaled by (#nodes)^{-1/2}.
struct DesignMatrix {
    RowMatrix values;
    BasisTag basis = BasisTag::Chebyshev;
    bool normalized = false;

    [[nodiscard]] std::size_t rows() const noexcept { return static_cast<std::size_t>(values.rows()); }
    [[nodiscard]] std::size_t cols() const noexcept { return static_cast<std::size_t>(values.cols()); }
};

/// Per-coordinate 1-d tables T_k(x_l), k <= kmax, so each entry is a product
/// of table lookups in the same order cheb_tensor / hpc_tensor multiply.
inline RowMatrix evaluate_basis(const RowMatrix& points, const MultiIndexSet& indices, BasisTag basis) {
    const auto n = points.rows();
    const auto d = static_cast<std::size_t>(points.cols());
    if (d != indices.dim()) throw DomainError("design matrix: node and index dimensions differ");
    const std::uint32_t kmax = indices.max_entry();
    const auto m = static_cast<Eigen::Index>(indices.size());

    RowMatrix out(n, m);
    std::vector<double> table(d * (kmax + 1));
    for (Eigen::Index i = 0; i < n; ++i) {
        for (std::size_t l = 0; l < d; ++l) {
            const double x = points(i, static_cast<Eigen::Index>(l));
            for (std::uint32_t k = 0; k <= kmax; ++k) table[l * (kmax + 1) + k] = basis_1d(basis, k, x);
        }
        for (Eigen::Index j = 0; j < m; ++j) {
            const MultiIndex& k = indices[static_cast<std::size_t>(j)];
            double v = 1.0;
            for (std::size_t l = 0; l < d; ++l) v *= table[l * (kmax + 1) + k[l]];
            out(i, j) = v;
        }
    }
    return out;
}

inline DesignMatrix design_matrix(const NodeSet& nodes, const MultiIndexSet& indices, BasisTag basis,
                                  bool normalized) {
    DesignMatrix dm{evaluate_basis(nodes.points(), indices, basis), basis, normalized};
    if (normalized && nodes.size() > 0) dm.values *= 1.0 / std::sqrt(static_cast<double>(nodes.size()));
    return dm;
}

}  // namespace chebsub
