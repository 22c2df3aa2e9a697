#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <map>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "chebsub/bases.hpp"
#include "chebsub/errors.hpp"
#include "chebsub/index_sets.hpp"
#include "chebsub/recovery.hpp"
#include "chebsub/reference.hpp"
#include "chebsub/sampling.hpp"
#include "chebsub/subsampling.hpp"

namespace chebsub {

struct ExperimentConfig {
    std::size_t dim = 3;
    std::vector<std::uint64_t> radii;
    double b = 1.1;
    BasisTag basis = BasisTag::Chebyshev;
    std::uint64_t seed = 1;
    std::size_t repeats = 3;
    /// Smoothness of the reference problem; only used for the reference curve.
    double expected_rate = 2.5;
    /// Extra Monte Carlo error estimate per record when > 0.
    std::size_t mc_points = 0;
    SubsampleOptions subsample;

    void validate() const {
        if (dim == 0) throw ParameterError("experiment: dimension must be >= 1");
        if (!(b > 1.0)) throw ParameterError("experiment: oversampling factor must exceed 1");
        if (radii.empty()) throw ParameterError("experiment: no radii");
        if (!std::is_sorted(radii.begin(), radii.end()) ||
            std::adjacent_find(radii.begin(), radii.end()) != radii.end())
            throw ParameterError("experiment: radii must be strictly ascending");
        if (repeats == 0) throw ParameterError("experiment: repeats must be >= 1");
    }
};

/// One (d, R, seed) cell. Column order of the CSV follows the field order.
struct ExperimentRecord {
    std::size_t d = 0;
    std::uint64_t R = 0;
    std::size_t m = 0;
    std::size_t M = 0;
    std::size_t n = 0;
    double b = 0.0;
    BasisTag basis = BasisTag::Chebyshev;
    ErrorMethod error_method = ErrorMethod::Parseval;
    double error = 0.0;
    double a_before = 0.0;
    double b_before = 0.0;
    double a_after = 0.0;
    double b_after = 0.0;
    std::uint64_t seed = 0;
    std::int64_t ms = 0;

    // Not serialized.
    double margin = 0.0;
    double mc_error = std::numeric_limits<double>::quiet_NaN();
    double mc_standard_error = std::numeric_limits<double>::quiet_NaN();
};

/// Everything one pipeline run produces.
struct PipelineRun {
    MultiIndexSet indices;
    NodeSet nodes;
    NodeSet subset;
    SubsampleResult subsample;
    LeastSquaresFit fit;
    ErrorReport error;
    ExperimentRecord record;
};

/// Reference decay n^{-s} (log n)^{s(d-1)+1/2}.
inline double reference_curve(double n, double s, std::size_t d) {
    return std::pow(n, -s) * std::pow(std::log(n), s * static_cast<double>(d - 1) + 0.5);
}

/// Deterministic per-cell seed (splitmix64 finalizer over the inputs).
inline std::uint64_t cell_seed(std::uint64_t seed, std::uint64_t radius, std::uint64_t repeat) {
    auto mix = [](std::uint64_t z) {
        z += 0x9e3779b97f4a7c15ULL;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    };
    return mix(mix(mix(seed) ^ radius) ^ (repeat * 0x632be59bd9b4e019ULL));
}

/// Hyperbolic cross -> M = ceil(4 m ln m) random nodes from the basis' measure
/// -> subsampling at oversampling b -> least squares on the test function ->
/// Parseval error (plus Monte Carlo when mc_points > 0).
/// Throws GuaranteeError when the subsampling inequality fails verification.
inline PipelineRun run_pipeline(std::size_t dim, std::uint64_t radius, BasisTag basis, double b, std::uint64_t seed,
                                const SubsampleOptions& options = {}, std::size_t mc_points = 0) {
    const auto start = std::chrono::steady_clock::now();
    MultiIndexSet indices = enumerate_hyperbolic_cross(dim, radius);
    const std::size_t m = indices.size();
    const std::size_t M = oversampled_budget(m);
    NodeSet nodes = draw_nodes(natural_measure(basis), dim, M, seed);

    SubsampleResult sub = bss_subsample(evaluate_basis(nodes.points(), indices, basis), b, options);
    if (!sub.guarantee_holds())
        throw GuaranteeError("subsampling guarantee failed: d=" + std::to_string(dim) + " R=" + std::to_string(radius) +
                                 " b=" + std::to_string(b) + " seed=" + std::to_string(seed) +
                                 " margin=" + std::to_string(sub.margin) + " tol=" + std::to_string(sub.tolerance),
                             sub.margin);

    NodeSet subset = nodes.subset(sub.J);
    const Vector y = sample_function(test_function, subset);
    LeastSquaresFit fit = least_squares_fit(subset, y, indices, basis);
    ErrorReport err = l2_error_parseval(b2_oracle(basis, dim), fit.approximant);

    ExperimentRecord rec;
    rec.d = dim;
    rec.R = radius;
    rec.m = m;
    rec.M = M;
    rec.n = sub.J.size();
    rec.b = b;
    rec.basis = basis;
    rec.error_method = ErrorMethod::Parseval;
    rec.error = err.value;
    rec.a_before = sub.full_bounds.a_min;
    rec.b_before = sub.full_bounds.b_max;
    rec.a_after = fit.bounds.a_min;
    rec.b_after = fit.bounds.b_max;
    rec.seed = seed;
    rec.margin = sub.margin;
    if (mc_points > 0) {
        const ErrorReport mc =
            l2_error_montecarlo(test_function, fit.approximant, norm_measure(basis), mc_points, cell_seed(seed, radius, 977));
        rec.mc_error = mc.value;
        rec.mc_standard_error = mc.standard_error;
    }
    rec.ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count();
    return {std::move(indices), std::move(nodes), std::move(subset), std::move(sub), std::move(fit), err, rec};
}

/// Both arms of the frame-bound demonstration on Lambda_{d,R}:
/// Chebyshev nodes with the Chebyshev basis, uniform nodes with the
/// half-period cosine basis. Uses config.dim, config.radii.front(), config.b
/// and config.seed.
inline std::vector<PipelineRun> run_frame_bound_demo(const ExperimentConfig& config) {
    config.validate();
    std::vector<PipelineRun> arms;
    for (BasisTag basis : {BasisTag::Chebyshev, BasisTag::HalfPeriodCosine})
        arms.push_back(run_pipeline(config.dim, config.radii.front(), basis, config.b, config.seed, config.subsample,
                                    config.mc_points));
    return arms;
}

/// One record per (R, repeat); repeat r of radius R uses cell_seed(seed, R, r).
template <class Progress>
std::vector<ExperimentRecord> run_error_sweep(const ExperimentConfig& config, Progress&& progress) {
    config.validate();
    std::vector<ExperimentRecord> records;
    for (auto radius : config.radii) {
        for (std::size_t rep = 0; rep < config.repeats; ++rep) {
            const auto seed = cell_seed(config.seed, radius, rep);
            records.push_back(
                run_pipeline(config.dim, radius, config.basis, config.b, seed, config.subsample, config.mc_points).record);
            progress(records.back());
        }
    }
    return records;
}

inline std::vector<ExperimentRecord> run_error_sweep(const ExperimentConfig& config) {
    return run_error_sweep(config, [](const ExperimentRecord&) {});
}

/// One record per (d, basis, R): the repeat with the median error (lower
/// median for even counts). First-appearance order is kept.
inline std::vector<ExperimentRecord> median_by_radius(const std::vector<ExperimentRecord>& records) {
    using Key = std::tuple<std::size_t, int, std::uint64_t>;
    std::vector<Key> order;
    std::map<Key, std::vector<ExperimentRecord>> groups;
    for (const auto& r : records) {
        Key key{r.d, static_cast<int>(r.basis), r.R};
        auto [it, inserted] = groups.try_emplace(key);
        if (inserted) order.push_back(key);
        it->second.push_back(r);
    }
    std::vector<ExperimentRecord> out;
    for (const auto& key : order) {
        auto group = groups[key];
        std::sort(group.begin(), group.end(), [](const auto& a, const auto& b) { return a.error < b.error; });
        out.push_back(group[(group.size() - 1) / 2]);
    }
    return out;
}

/// Least-squares slope of log(error) against log(n) over records with
/// n in [n_min, n_max].
inline double fit_decay_rate(const std::vector<ExperimentRecord>& records, double n_min, double n_max) {
    std::vector<double> xs, ys;
    for (const auto& r : records) {
        const double n = static_cast<double>(r.n);
        if (n >= n_min && n <= n_max && r.error > 0.0) {
            xs.push_back(std::log(n));
            ys.push_back(std::log(r.error));
        }
    }
    if (xs.size() < 4)
        throw ParameterError("fit_decay_rate: need at least 4 records in range, got " + std::to_string(xs.size()));
    const double k = static_cast<double>(xs.size());
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        mx += xs[i];
        my += ys[i];
    }
    mx /= k;
    my /= k;
    double sxy = 0.0, sxx = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sxy += (xs[i] - mx) * (ys[i] - my);
        sxx += (xs[i] - mx) * (xs[i] - mx);
    }
    if (!(sxx > 0.0)) throw ParameterError("fit_decay_rate: all records share one n");
    return sxy / sxx;
}

/// Desk-scale default radii per dimension (m from roughly 100 to 2000-2700).
inline std::vector<std::uint64_t> default_radii(std::size_t dim) {
    switch (dim) {
        case 2: return {20, 40, 80, 160, 320};
        case 3: return {6, 10, 15, 20, 25, 30, 36, 42, 48, 60, 72, 88};
        case 4: return {3, 4, 6, 8, 10, 12, 16, 20, 24, 28};
        case 5: return {2, 3, 4, 6, 8, 10, 12, 13};
        default: return {2, 3, 4, 5, 6};
    }
}

}  // namespace chebsub
