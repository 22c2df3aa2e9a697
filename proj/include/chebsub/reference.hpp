#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <map>
#include <numbers>
#include <span>
#include <vector>

#include "chebsub/bases.hpp"
#include "chebsub/errors.hpp"
#include "chebsub/index_sets.hpp"

namespace chebsub {

/// Black-box function on a subset of R^d.
using Function = std::function<double(std::span<const double>)>;

/// Cutout of the piecewise quadratic B-spline; x = 0 belongs to the left piece.
inline double bspline_b2(double x) {
    detail::check_unit_interval(x, "bspline_b2");
    if (x <= 0.0) return -x * x / 4.0 - x / 2.0 + 0.5;
    return x * x / 8.0 - x / 2.0 + 0.5;
}

/// f(x) = prod_l B_2(x_l)
inline double test_function(std::span<const double> x) {
    double v = 1.0;
    for (double xl : x) v *= bspline_b2(xl);
    return v;
}

namespace detail {

// sin(k pi / 2) for integer k, exactly.
inline double sin_half_pi(std::uint64_t k) {
    switch (k % 4) {
        case 1: return 1.0;
        case 3: return -1.0;
        default: return 0.0;
    }
}

}  // namespace detail

/// Coefficient of the normalized T_k in the Chebyshev expansion of B_2.
inline double b2_cheb_coeff(std::uint64_t k) {
    constexpr double pi = std::numbers::pi;
    constexpr double sqrt2 = std::numbers::sqrt2;
    switch (k) {
        case 0: return 15.0 / 32.0;
        case 1: return -(pi - 1.0) / (2.0 * pi * sqrt2);
        case 2: return -1.0 / (32.0 * sqrt2);
        default: break;
    }
    const double s = detail::sin_half_pi(k);
    if (s == 0.0) return 0.0;
    const double kd = static_cast<double>(k);
    return -(3.0 / (2.0 * pi * sqrt2)) * s / (kd * (kd * kd - 4.0));
}

/// Coefficient of V_k in the half-period cosine expansion of B_2.
inline double b2_hpc_coeff(std::uint64_t k) {
    constexpr double pi = std::numbers::pi;
    if (k == 0) return 23.0 / (24.0 * std::numbers::sqrt2);
    const double kd = static_cast<double>(k);
    const double sign = (k % 2 == 0) ? 1.0 : -1.0;
    return 6.0 * detail::sin_half_pi(k) / (pi * pi * pi * kd * kd * kd) - sign / (pi * pi * kd * kd);
}

inline double b2_coeff(BasisTag basis, std::uint64_t k) {
    return basis == BasisTag::Chebyshev ? b2_cheb_coeff(k) : b2_hpc_coeff(k);
}

/// Coefficient of the tensor test function: product of 1-d coefficients.
inline double tensor_coeff(const MultiIndex& k, BasisTag basis) {
    double v = 1.0;
    for (auto kl : k.entries()) v *= b2_coeff(basis, kl);
    return v;
}

/// Exact expansion coefficients of a target function together with its squared
/// norm in the measure the basis is orthonormal for.
struct CoefficientOracle {
    BasisTag basis = BasisTag::Chebyshev;
    std::function<double(const MultiIndex&)> coeff;
    double norm_squared = 0.0;
    /// Upper bound on the series truncation error in norm_squared.
    double remainder_bound = 0.0;
    /// 1-d cutoff K used for norm_squared (0 when the norm is exact).
    std::size_t tail_cutoff = 0;
};

/// Oracle for the tensor B_2 test function in `dim` dimensions. The squared
/// norm is the 1-d coefficient series up to K, raised to the d-th power.
///
/// Remainder of the 1-d series beyond K:
///   Chebyshev: |c_k| <= c/(k(k^2-4)), c = 3/(2 pi sqrt 2), so the tail is <= c^2 / (K (K^2-4)^2).
///   half-period cosine: |c_k| <= (6/pi^3 + 1/pi^2)/k^2, so the tail is <= c^2 / (3 K^3).
inline CoefficientOracle b2_oracle(BasisTag basis, std::size_t dim, std::size_t tail_cutoff = 100000) {
    if (tail_cutoff < 3) throw ParameterError("b2_oracle: tail cutoff must be >= 3");
    double s1 = 0.0;
    for (std::size_t k = tail_cutoff + 1; k-- > 0;) {
        const double c = b2_coeff(basis, k);
        s1 += c * c;
    }
    constexpr double pi = std::numbers::pi;
    const double K = static_cast<double>(tail_cutoff);
    double r1 = 0.0;
    if (basis == BasisTag::Chebyshev) {
        const double c = 3.0 / (2.0 * pi * std::numbers::sqrt2);
        r1 = c * c / (K * (K * K - 4.0) * (K * K - 4.0));
    } else {
        const double c = 6.0 / (pi * pi * pi) + 1.0 / (pi * pi);
        r1 = c * c / (3.0 * K * K * K);
    }
    const double d = static_cast<double>(dim);
    CoefficientOracle o;
    o.basis = basis;
    o.coeff = [basis](const MultiIndex& k) { return tensor_coeff(k, basis); };
    o.norm_squared = std::pow(s1, d);
    o.remainder_bound = std::pow(s1 + r1, d) - o.norm_squared;
    o.tail_cutoff = tail_cutoff;
    return o;
}

/// Oracle for a finite expansion sum_k c_k basis_k; the norm is exact.
inline CoefficientOracle finite_oracle(BasisTag basis, std::map<MultiIndex, double> coefficients) {
    CoefficientOracle o;
    o.basis = basis;
    for (const auto& [k, c] : coefficients) o.norm_squared += c * c;
    o.coeff = [table = std::move(coefficients)](const MultiIndex& k) {
        auto it = table.find(k);
        return it == table.end() ? 0.0 : it->second;
    };
    return o;
}

/// g(x) = f(cos(pi x_1), ..., cos(pi x_d)): even and 2-periodic in each coordinate.
inline Function periodize_cos(Function f) {
    return [f = std::move(f)](std::span<const double> x) {
        std::vector<double> y(x.size());
        for (std::size_t l = 0; l < x.size(); ++l) y[l] = std::cos(std::numbers::pi * x[l]);
        return f(y);
    };
}

/// 2^{-d} int_{[-1,1]^d} g(x) exp(-pi i k.x) dx by the equispaced trapezoidal
/// rule with N points per dimension (exact for trigonometric polynomials of
/// degree < N - |k|).
inline std::complex<double> fourier_coeff(const Function& g, const std::vector<std::int64_t>& k, std::size_t grid) {
    if (k.empty()) throw ParameterError("fourier_coeff: empty frequency");
    std::int64_t kmax = 0;
    for (auto kl : k) kmax = std::max<std::int64_t>(kmax, std::llabs(kl));
    if (grid < static_cast<std::size_t>(4 * kmax + 4))
        throw ParameterError("fourier_coeff: grid must satisfy N >= 4 max|k| + 4");
    const std::size_t d = k.size();
    std::vector<double> nodes(grid);
    for (std::size_t j = 0; j < grid; ++j) nodes[j] = -1.0 + 2.0 * static_cast<double>(j) / static_cast<double>(grid);

    std::vector<std::size_t> counter(d, 0);
    std::vector<double> x(d);
    std::complex<double> sum{0.0, 0.0};
    for (;;) {
        double phase = 0.0;
        for (std::size_t l = 0; l < d; ++l) {
            x[l] = nodes[counter[l]];
            phase += static_cast<double>(k[l]) * x[l];
        }
        sum += g(x) * std::polar(1.0, -std::numbers::pi * phase);
        std::size_t l = 0;
        while (l < d && ++counter[l] == grid) counter[l++] = 0;
        if (l == d) break;
    }
    return sum / std::pow(static_cast<double>(grid), static_cast<double>(d));
}

}  // namespace chebsub
