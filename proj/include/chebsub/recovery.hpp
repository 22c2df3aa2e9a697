#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>

#include <Eigen/QR>
#include <Eigen/SVD>

#include "chebsub/bases.hpp"
#include "chebsub/errors.hpp"
#include "chebsub/index_sets.hpp"
#include "chebsub/reference.hpp"
#include "chebsub/sampling.hpp"
#include "chebsub/subsampling.hpp"

namespace chebsub {

/// f ~ sum_{k in indices} c_k basis_k
struct Approximant {
    MultiIndexSet indices;
    Vector coefficients;
    BasisTag basis = BasisTag::Chebyshev;
};

struct LeastSquaresFit {
    Approximant approximant;
    double residual_norm = 0.0;
    /// Frame bounds of the normalized design matrix the fit was solved on.
    FrameBounds bounds;
};

/// Smallest admissible singular value of the normalized design matrix.
inline constexpr double kRankThreshold = 1e-10;

/// Minimizes ||L c - y||_2 with Householder QR; refuses rank-deficient systems.
inline LeastSquaresFit least_squares_fit(const NodeSet& nodes, const Vector& samples, const MultiIndexSet& indices,
                                         BasisTag basis) {
    if (static_cast<std::size_t>(samples.size()) != nodes.size())
        throw ParameterError("least_squares_fit: sample count differs from node count");
    if (nodes.size() < indices.size())
        throw ParameterError("least_squares_fit: underdetermined system (" + std::to_string(nodes.size()) +
                             " samples for " + std::to_string(indices.size()) + " coefficients)");
    const RowMatrix L = evaluate_basis(nodes.points(), indices, basis);
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(L);
    const Eigen::Index m = L.cols();
    const Eigen::MatrixXd r = qr.matrixQR().topRows(m).triangularView<Eigen::Upper>();
    const Vector sv = Eigen::BDCSVD<Eigen::MatrixXd>(r).singularValues() / std::sqrt(static_cast<double>(L.rows()));
    const double smallest = sv(sv.size() - 1);
    if (!(smallest > kRankThreshold))
        throw SingularityError("least_squares_fit: design matrix is rank deficient (normalized smallest singular value " +
                                   std::to_string(smallest) + ")",
                               smallest);

    LeastSquaresFit fit{Approximant{indices, qr.solve(samples), basis}, 0.0, {smallest, sv(0)}};
    fit.residual_norm = (L * fit.approximant.coefficients - samples).norm();
    return fit;
}

inline Vector sample_function(const Function& f, const NodeSet& nodes) {
    Vector y(static_cast<Eigen::Index>(nodes.size()));
    for (std::size_t i = 0; i < nodes.size(); ++i) y(static_cast<Eigen::Index>(i)) = f(row_span(nodes.points(), i));
    return y;
}

inline double evaluate_approximant(const Approximant& approx, std::span<const double> x) {
    if (x.size() != approx.indices.dim()) throw DomainError("evaluate_approximant: point dimension mismatch");
    double v = 0.0;
    for (std::size_t j = 0; j < approx.indices.size(); ++j)
        v += approx.coefficients(static_cast<Eigen::Index>(j)) * basis_tensor(approx.basis, approx.indices[j], x);
    return v;
}

/// Batched evaluation at the rows of `points`.
inline Vector evaluate_approximant(const Approximant& approx, const RowMatrix& points) {
    if (static_cast<std::size_t>(points.cols()) != approx.indices.dim())
        throw DomainError("evaluate_approximant: point dimension mismatch");
    return evaluate_basis(points, approx.indices, approx.basis) * approx.coefficients;
}

enum class ErrorMethod { Parseval, MonteCarlo };
enum class NormMeasure { ChebyshevWeighted, Lebesgue };

inline std::string_view to_string(ErrorMethod m) { return m == ErrorMethod::Parseval ? "parseval" : "mc"; }
inline std::string_view to_string(NormMeasure m) { return m == NormMeasure::ChebyshevWeighted ? "cheb" : "lebesgue"; }

/// L2(rho_D) for the Chebyshev basis, L2(D) for the half-period cosine basis.
inline NormMeasure norm_measure(BasisTag basis) {
    return basis == BasisTag::Chebyshev ? NormMeasure::ChebyshevWeighted : NormMeasure::Lebesgue;
}

struct ErrorReport {
    double value = 0.0;
    ErrorMethod method = ErrorMethod::Parseval;
    NormMeasure measure = NormMeasure::ChebyshevWeighted;
    // Parseval metadata
    std::size_t tail_cutoff = 0;
    double remainder_bound = 0.0;
    double in_set_error_squared = 0.0;
    double tail_energy = 0.0;
    // Monte Carlo metadata
    std::size_t mc_points = 0;
    std::uint64_t seed = 0;
    double standard_error = 0.0;
};

/// ||f - approx||^2 = sum_{k in Lambda} (c_k - fhat_k)^2 + (||f||^2 - sum_{k in Lambda} fhat_k^2)
inline ErrorReport l2_error_parseval(const CoefficientOracle& exact, const Approximant& approx) {
    if (exact.basis != approx.basis) throw ParameterError("l2_error_parseval: oracle and approximant bases differ");
    double in_set = 0.0;
    double captured = 0.0;
    for (std::size_t j = 0; j < approx.indices.size(); ++j) {
        const double fk = exact.coeff(approx.indices[j]);
        const double diff = approx.coefficients(static_cast<Eigen::Index>(j)) - fk;
        in_set += diff * diff;
        captured += fk * fk;
    }
    ErrorReport rep;
    rep.method = ErrorMethod::Parseval;
    rep.measure = norm_measure(approx.basis);
    rep.tail_cutoff = exact.tail_cutoff;
    rep.remainder_bound = exact.remainder_bound;
    rep.in_set_error_squared = in_set;
    rep.tail_energy = std::max(0.0, exact.norm_squared - captured);
    rep.value = std::sqrt(in_set + rep.tail_energy);
    return rep;
}

/// Monte Carlo estimate of ||f - approx|| in L2(rho_D) (Chebyshev draws) or
/// L2(D) (uniform draws, scaled by the volume 2^d). The standard error is
/// propagated to the root by the delta method.
inline ErrorReport l2_error_montecarlo(const Function& f, const Approximant& approx, NormMeasure measure,
                                       std::size_t count, std::uint64_t seed) {
    if (count < 100) throw ParameterError("l2_error_montecarlo: need at least 100 points");
    const std::size_t d = approx.indices.dim();
    const NodeSet pts = measure == NormMeasure::ChebyshevWeighted ? draw_chebyshev(d, count, seed)
                                                                  : draw_uniform(d, count, seed);
    const double scale = measure == NormMeasure::ChebyshevWeighted ? 1.0 : std::pow(2.0, static_cast<double>(d));

    // Welford over squared residuals, evaluated in row chunks.
    constexpr Eigen::Index kChunk = 4096;
    double mean = 0.0, m2 = 0.0;
    std::size_t seen = 0;
    const auto n = static_cast<Eigen::Index>(count);
    for (Eigen::Index r = 0; r < n; r += kChunk) {
        const Eigen::Index h = std::min(kChunk, n - r);
        const RowMatrix chunk = pts.points().middleRows(r, h);
        const Vector approx_vals = evaluate_approximant(approx, chunk);
        for (Eigen::Index i = 0; i < h; ++i) {
            const double e = f(row_span(chunk, static_cast<std::size_t>(i))) - approx_vals(i);
            const double sq = e * e;
            ++seen;
            const double delta = sq - mean;
            mean += delta / static_cast<double>(seen);
            m2 += delta * (sq - mean);
        }
    }
    const double var = m2 / static_cast<double>(count - 1);
    const double se_mean = std::sqrt(var / static_cast<double>(count));

    ErrorReport rep;
    rep.method = ErrorMethod::MonteCarlo;
    rep.measure = measure;
    rep.mc_points = count;
    rep.seed = seed;
    rep.value = std::sqrt(scale * mean);
    rep.standard_error = rep.value > 0.0 ? scale * se_mean / (2.0 * rep.value) : std::sqrt(scale * se_mean);
    return rep;
}

}  // namespace chebsub
