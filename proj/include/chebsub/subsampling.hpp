#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>
#include <Eigen/QR>
#include <Eigen/SVD>

#include "chebsub/bases.hpp"
#include "chebsub/errors.hpp"
#include "chebsub/matrix.hpp"

namespace chebsub {

/// Extreme singular values of a normalized design matrix (#X)^{-1/2}[basis_k(x)].
struct FrameBounds {
    double a_min = 0.0;
    double b_max = 0.0;
};

/// Singular values (descending) of a dense matrix. Tall inputs are reduced by
/// Householder QR first so the SVD only sees the square triangular factor.
inline Vector singular_values(const RowMatrix& a) {
    if (a.rows() == 0 || a.cols() == 0) throw ParameterError("singular values of an empty matrix");
    if (a.rows() > a.cols()) {
        Eigen::HouseholderQR<Eigen::MatrixXd> qr(a);
        Eigen::MatrixXd r = qr.matrixQR().topRows(a.cols()).triangularView<Eigen::Upper>();
        return Eigen::BDCSVD<Eigen::MatrixXd>(r).singularValues();
    }
    return Eigen::BDCSVD<Eigen::MatrixXd>(Eigen::MatrixXd(a)).singularValues();
}

inline FrameBounds frame_bounds(const DesignMatrix& matrix) {
    if (!matrix.normalized) throw ParameterError("frame_bounds expects a normalized design matrix");
    if (matrix.rows() == 0 || matrix.cols() == 0) throw ParameterError("frame_bounds of an empty matrix");
    Vector sv = singular_values(matrix.values);
    // Fewer rows than columns: the Gram matrix is singular, lower bound is 0.
    const double a = matrix.rows() < matrix.cols() ? 0.0 : sv(sv.size() - 1);
    return {a, sv(0)};
}

/// Frame bounds from the unnormalized Gram matrix U^T U of `count` vectors.
inline FrameBounds frame_bounds_from_gram(const Eigen::MatrixXd& gram, std::size_t count) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(gram, Eigen::EigenvaluesOnly);
    const auto& ev = es.eigenvalues();
    const double c = static_cast<double>(count);
    return {std::sqrt(std::max(ev(0), 0.0) / c), std::sqrt(std::max(ev(ev.size() - 1), 0.0) / c)};
}

/// 89 (b+1)^2 / (b-1)^3
inline double guarantee_constant(double b) {
    return 89.0 * (b + 1.0) * (b + 1.0) / ((b - 1.0) * (b - 1.0) * (b - 1.0));
}

/// ceil(b m), robust against b*m landing a few ulps above an integer.
inline std::size_t selection_size(double b, std::size_t m) {
    return static_cast<std::size_t>(std::ceil(b * static_cast<double>(m) - 1e-9));
}

struct SubsampleOptions {
    /// Barrier scale: initial barrier -1/kappa, potential budget kappa*m (in
    /// whitened units where the full frame sums to (M/m) I). 0 selects 2/(b-1).
    double kappa = 0.0;
    /// Candidates scored together per GEMM.
    std::size_t block = 32;
    /// Selections between exact barrier advances; 0 selects max(1, m/16).
    std::size_t refresh_interval = 0;
    /// Scan order over the input vectors (a permutation of 0..M-1). Empty
    /// means index order.
    std::vector<std::size_t> priority;
};

struct SubsampleResult {
    std::vector<std::size_t> J;               ///< selected rows, ascending
    std::vector<std::size_t> selection_order; ///< same rows in the order they were picked
    double b = 0.0;
    double guarantee_constant = 0.0;
    /// lambda_min( (C/m) G_J - (1/M) G_M ) with unnormalized Gram matrices.
    double margin = 0.0;
    /// Acceptance slack 1e-9 * b_max^2 of the full frame.
    double tolerance = 0.0;
    FrameBounds full_bounds;
    /// Final lower barrier: certified lower bound on lambda_min of the selected
    /// whitened frame, in units where the full frame sums to (M/m) I.
    double barrier = 0.0;
    std::size_t fallback_steps = 0;
    std::size_t m = 0;
    std::size_t M = 0;

    [[nodiscard]] bool guarantee_holds() const noexcept { return margin >= -tolerance; }
};

namespace detail {

inline Eigen::MatrixXd gram(const RowMatrix& u) {
    Eigen::MatrixXd g = Eigen::MatrixXd::Zero(u.cols(), u.cols());
    g.selfadjointView<Eigen::Lower>().rankUpdate(u.transpose());
    return g.selfadjointView<Eigen::Lower>();
}

inline Eigen::MatrixXd gram_rows(const RowMatrix& u, const std::vector<std::size_t>& rows) {
    RowMatrix sub(static_cast<Eigen::Index>(rows.size()), u.cols());
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r] >= static_cast<std::size_t>(u.rows())) throw ParameterError("subset index out of range");
        sub.row(static_cast<Eigen::Index>(r)) = u.row(static_cast<Eigen::Index>(rows[r]));
    }
    return gram(sub);
}

inline double guarantee_margin(const Eigen::MatrixXd& gram_full, std::size_t M, const Eigen::MatrixXd& gram_sub,
                               double constant) {
    const double m = static_cast<double>(gram_full.rows());
    Eigen::MatrixXd diff = (constant / m) * gram_sub - gram_full / static_cast<double>(M);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(diff, Eigen::EigenvaluesOnly);
    return es.eigenvalues()(0);
}

// Lower-barrier state over whitened vectors w_i (sum_i w_i w_i^T = (M/m) I).
//   A   = sum_{j in J} w_j w_j^T
//   ell < lambda_min(A), Phi = tr (A - ell I)^{-1}, B = (A - ell I)^{-1}
class LowerBarrier {
public:
    LowerBarrier(Eigen::Index m, double kappa)
        : a_(Eigen::MatrixXd::Zero(m, m)),
          b_(kappa * Eigen::MatrixXd::Identity(m, m)),
          ell_(-1.0 / kappa),
          budget_(kappa * static_cast<double>(m)),
          phi_(budget_),
          trace_b2_(kappa * kappa * static_cast<double>(m)) {}

    [[nodiscard]] const Eigen::MatrixXd& inverse() const noexcept { return b_; }
    [[nodiscard]] double trace_inverse_squared() const noexcept { return trace_b2_; }
    [[nodiscard]] double barrier() const noexcept { return ell_; }
    [[nodiscard]] double potential() const noexcept { return phi_; }

    // Sherman-Morrison at fixed barrier.
    void add(const Vector& w) {
        a_.noalias() += w * w.transpose();
        const Vector bw = b_ * w;
        const double s = w.dot(bw);
        b_.noalias() -= (bw * bw.transpose()) / (1.0 + s);
        phi_ -= bw.squaredNorm() / (1.0 + s);
        trace_b2_ = b_.squaredNorm();
    }

    // Advance the barrier as far as the potential budget allows, then rebuild
    // B exactly. Phi_ell(A) is increasing in ell on (-inf, lambda_min(A)).
    void advance() {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(a_, Eigen::EigenvaluesOnly);
        const Vector& mu = es.eigenvalues();
        auto phi_at = [&](double ell) { return (mu.array() - ell).inverse().sum(); };
        double lo = ell_;
        double hi = mu(0);
        if (phi_at(lo) < budget_) {
            for (int it = 0; it < 200 && hi - lo > 1e-15 * std::max(1.0, std::abs(hi)); ++it) {
                const double mid = 0.5 * (lo + hi);
                if (mid <= lo || mid >= hi) break;
                (phi_at(mid) <= budget_ ? lo : hi) = mid;
            }
        }
        ell_ = lo;
        phi_ = phi_at(ell_);
        Eigen::MatrixXd shifted = a_;
        shifted.diagonal().array() -= ell_;
        Eigen::LLT<Eigen::MatrixXd> llt(shifted);
        b_ = llt.solve(Eigen::MatrixXd::Identity(a_.rows(), a_.cols()));
        b_ = 0.5 * (b_ + b_.transpose()).eval();
        trace_b2_ = (mu.array() - ell_).inverse().square().sum();
    }

private:
    Eigen::MatrixXd a_;
    Eigen::MatrixXd b_;
    double ell_;
    double budget_;
    double phi_;
    double trace_b2_;
};

}  // namespace detail

/// Constructive lower-frame-bound subsampling. Selects #J = ceil(b m) of the M
/// rows of `vectors` such that
///     (1/M) sum_i |<w,u^i>|^2 <= C(b) (1/m) sum_{j in J} |<w,u^j>|^2,
///     C(b) = 89 (b+1)^2/(b-1)^3,
/// and reports the verified margin of that inequality.
///
/// The rows are whitened against the full Gram matrix and then picked greedily
/// under a lower barrier ell with potential Phi = tr (A - ell I)^{-1}. A
/// candidate w is admissible when its rank-one update lowers the potential by
/// at least delta * tr (A - ell I)^{-2}, delta = 1/(m (1 + kappa)), the
/// amount that pays for advancing the barrier by delta. Candidates are scanned
/// cyclically (in `priority` order) in blocks; the best admissible candidate
/// of the first block holding one is taken, and if a whole cycle has none the
/// candidate with the largest potential drop is taken instead. Every
/// `refresh_interval` picks the barrier is moved to the largest value keeping
/// Phi within its budget.
///
/// Takes the matrix by value and whitens it in place.
inline SubsampleResult bss_subsample(RowMatrix vectors, double b, const SubsampleOptions& options = {}) {
    const Eigen::Index M = vectors.rows();
    const Eigen::Index m = vectors.cols();
    if (M == 0 || m == 0) throw ParameterError("bss_subsample: empty frame");
    const double md = static_cast<double>(m);
    if (!(b > 1.0 + 1.0 / md)) throw ParameterError("bss_subsample: oversampling factor must exceed 1 + 1/m");
    const std::size_t target = selection_size(b, static_cast<std::size_t>(m));
    if (static_cast<std::size_t>(M) < target)
        throw ParameterError("bss_subsample: need M >= ceil(b m) = " + std::to_string(target) + " vectors, got " +
                             std::to_string(M));

    std::vector<std::size_t> order = options.priority;
    if (order.empty()) {
        order.resize(static_cast<std::size_t>(M));
        std::iota(order.begin(), order.end(), std::size_t{0});
    } else {
        std::vector<char> seen(static_cast<std::size_t>(M), 0);
        if (order.size() != static_cast<std::size_t>(M)) throw ParameterError("priority must be a permutation of 0..M-1");
        for (auto i : order) {
            if (i >= static_cast<std::size_t>(M) || seen[i]) throw ParameterError("priority must be a permutation of 0..M-1");
            seen[i] = 1;
        }
    }

    SubsampleResult result;
    result.b = b;
    result.guarantee_constant = guarantee_constant(b);
    result.m = static_cast<std::size_t>(m);
    result.M = static_cast<std::size_t>(M);

    const Eigen::MatrixXd gram_full = detail::gram(vectors);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> full(gram_full);
    const Vector& lam = full.eigenvalues();
    const double Md = static_cast<double>(M);
    result.full_bounds = {std::sqrt(std::max(lam(0), 0.0) / Md), std::sqrt(lam(m - 1) / Md)};
    result.tolerance = 1e-9 * result.full_bounds.b_max * result.full_bounds.b_max;
    if (!(lam(0) > 1e-12 * lam(m - 1)))
        throw SingularityError("bss_subsample: frame vectors do not span R^" + std::to_string(m) +
                                   " (smallest Gram eigenvalue " + std::to_string(lam(0)) + ", largest " +
                                   std::to_string(lam(m - 1)) + ")",
                               lam(0));

    // w_i^T = sqrt(M/m) u_i^T Q Lambda^{-1/2}
    const Eigen::MatrixXd whiten =
        full.eigenvectors() * (lam.array().rsqrt() * std::sqrt(Md / md)).matrix().asDiagonal();
    const Eigen::MatrixXd unwhiten =
        (lam.array().sqrt() * std::sqrt(md / Md)).matrix().asDiagonal() * full.eigenvectors().transpose();
    constexpr Eigen::Index kRowBlock = 512;
    for (Eigen::Index r = 0; r < M; r += kRowBlock) {
        const Eigen::Index h = std::min(kRowBlock, M - r);
        vectors.middleRows(r, h) = (vectors.middleRows(r, h) * whiten).eval();
    }

    const double kappa = options.kappa > 0.0 ? options.kappa : 2.0 / (b - 1.0);
    const double delta = 1.0 / (md * (1.0 + kappa));
    const std::size_t block = std::max<std::size_t>(1, options.block);
    const std::size_t refresh =
        options.refresh_interval > 0 ? options.refresh_interval : std::max<std::size_t>(1, result.m / 16);

    detail::LowerBarrier state(m, kappa);
    std::vector<char> taken(static_cast<std::size_t>(M), 0);
    std::size_t cursor = 0;  // position in `order`
    std::size_t since_refresh = 0;
    std::vector<std::size_t> cand;
    cand.reserve(block);
    RowMatrix wb(static_cast<Eigen::Index>(block), m);

    auto pick = [&](std::size_t row, std::size_t pos) {
        taken[row] = 1;
        result.selection_order.push_back(row);
        cursor = (pos + 1) % order.size();
        state.add(vectors.row(static_cast<Eigen::Index>(row)).transpose());
        if (++since_refresh >= refresh || result.selection_order.size() == target) {
            state.advance();
            since_refresh = 0;
        }
    };

    if (static_cast<std::size_t>(M) == target) {
        for (std::size_t p = 0; p < order.size(); ++p) pick(order[p], p);
    }

    while (result.selection_order.size() < target) {
        const std::size_t remaining = static_cast<std::size_t>(M) - result.selection_order.size();
        const double threshold = delta * state.trace_inverse_squared();
        std::size_t scanned = 0;
        std::size_t pos = cursor;
        double best_drop = -1.0;
        std::size_t best_row = 0, best_pos = 0;
        bool found = false;
        std::vector<std::size_t> cand_pos;
        while (scanned < remaining && !found) {
            cand.clear();
            cand_pos.clear();
            while (cand.size() < block && scanned + cand.size() < remaining) {
                const std::size_t row = order[pos];
                if (!taken[row]) {
                    cand.push_back(row);
                    cand_pos.push_back(pos);
                }
                pos = (pos + 1) % order.size();
            }
            const auto cnt = static_cast<Eigen::Index>(cand.size());
            for (Eigen::Index c = 0; c < cnt; ++c) wb.row(c) = vectors.row(static_cast<Eigen::Index>(cand[c]));
            const RowMatrix y = wb.topRows(cnt) * state.inverse();
            const Vector s = wb.topRows(cnt).cwiseProduct(y).rowwise().sum();
            const Vector q = y.rowwise().squaredNorm();

            double block_best = -1.0;
            Eigen::Index block_arg = -1;
            for (Eigen::Index c = 0; c < cnt; ++c) {
                const double drop = q(c) / (1.0 + s(c));
                if (drop > best_drop) {
                    best_drop = drop;
                    best_row = cand[c];
                    best_pos = cand_pos[c];
                }
                if (drop >= threshold && drop > block_best) {
                    block_best = drop;
                    block_arg = c;
                }
            }
            scanned += cand.size();
            if (block_arg >= 0) {
                found = true;
                best_row = cand[block_arg];
                best_pos = cand_pos[block_arg];
            }
        }
        if (!found) ++result.fallback_steps;
        pick(best_row, best_pos);
    }

    result.barrier = state.barrier();
    result.J = result.selection_order;
    std::sort(result.J.begin(), result.J.end());

    // Selected Gram in the original coordinates: G_J = T^{-T} (sum_J w w^T) T^{-1}.
    const Eigen::MatrixXd a_sel = detail::gram_rows(vectors, result.J);
    const Eigen::MatrixXd gram_sel = unwhiten.transpose() * a_sel * unwhiten;
    result.margin = detail::guarantee_margin(gram_full, result.M, gram_sel, result.guarantee_constant);
    return result;
}

inline SubsampleResult bss_subsample(const DesignMatrix& vectors, double b, const SubsampleOptions& options = {}) {
    return bss_subsample(RowMatrix(vectors.values), b, options);
}

/// Independent check of the subsampling inequality on the original vectors:
/// smallest eigenvalue of (C/m) G_J - (1/M) G_M.
inline double verify_guarantee(const RowMatrix& full, const std::vector<std::size_t>& J, double constant) {
    if (full.rows() == 0 || full.cols() == 0) throw ParameterError("verify_guarantee: empty matrix");
    return detail::guarantee_margin(detail::gram(full), static_cast<std::size_t>(full.rows()),
                                    detail::gram_rows(full, J), constant);
}

inline double verify_guarantee(const DesignMatrix& full, const SubsampleResult& result) {
    return verify_guarantee(full.values, result.J, result.guarantee_constant);
}

}  // namespace chebsub
