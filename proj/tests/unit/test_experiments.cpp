#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "chebsub/experiments.hpp"
#include "chebsub/io.hpp"

using namespace chebsub;

namespace {

std::vector<ExperimentRecord> synthetic(double c, double rate, std::initializer_list<std::size_t> ns) {
    std::vector<ExperimentRecord> out;
    for (auto n : ns) {
        ExperimentRecord r;
        r.n = n;
        r.error = c * std::pow(static_cast<double>(n), rate);
        out.push_back(r);
    }
    return out;
}

}  // namespace

TEST(DecayRate, RecoversExactPowerLaws) {
    EXPECT_NEAR(fit_decay_rate(synthetic(1.0, -2.5, {100, 300, 700, 1000, 2000}), 1, 1e9), -2.5, 1e-10);
    EXPECT_NEAR(fit_decay_rate(synthetic(42.0, -1.5, {100, 300, 700, 1000, 2000}), 1, 1e9), -1.5, 1e-10);
}

TEST(DecayRate, UsesOnlyRecordsInRange) {
    auto recs = synthetic(1.0, -2.0, {300, 500, 800, 1200});
    auto outlier = synthetic(1.0, 5.0, {5000});
    recs.insert(recs.end(), outlier.begin(), outlier.end());
    EXPECT_NEAR(fit_decay_rate(recs, 300, 1500), -2.0, 1e-10);
    EXPECT_THROW(fit_decay_rate(recs, 400, 1500), ParameterError);
}

TEST(ReferenceCurve, MatchesFormula) {
    EXPECT_NEAR(reference_curve(1000.0, 2.5, 3), std::pow(1000.0, -2.5) * std::pow(std::log(1000.0), 5.5), 1e-18);
}

TEST(Config, Validation) {
    ExperimentConfig c;
    c.radii = {5, 10};
    EXPECT_NO_THROW(c.validate());
    c.radii = {10, 5};
    EXPECT_THROW(c.validate(), ParameterError);
    c.radii = {};
    EXPECT_THROW(c.validate(), ParameterError);
    c.radii = {5};
    c.b = 1.0;
    EXPECT_THROW(c.validate(), ParameterError);
}

TEST(Pipeline, ReferenceRunOnTwoDimensionalCross) {
    const auto run = run_pipeline(2, 20, BasisTag::Chebyshev, 1.1, 1);
    const auto& r = run.record;
    EXPECT_EQ(r.m, 107u);
    EXPECT_EQ(r.M, 2000u);
    EXPECT_LE(r.n, 118u);
    EXPECT_EQ(run.subset.size(), r.n);
    EXPECT_EQ(run.subset.parent_indices(), run.subsample.J);
    EXPECT_GE(r.margin, -run.subsample.tolerance);
    EXPECT_LT(r.error, 1e-3);
    EXPECT_GT(r.error, 0.0);
    EXPECT_GT(r.a_after, 0.0);
    EXPECT_LE(r.a_after, r.b_after);
    EXPECT_EQ(r.error_method, ErrorMethod::Parseval);
}

TEST(FrameBoundDemo, RunsBothArmsReproducibly) {
    ExperimentConfig c;
    c.dim = 2;
    c.radii = {20};
    c.seed = 9;
    const auto a = run_frame_bound_demo(c);
    const auto b = run_frame_bound_demo(c);
    ASSERT_EQ(a.size(), 2u);
    EXPECT_EQ(a[0].record.basis, BasisTag::Chebyshev);
    EXPECT_EQ(a[0].nodes.measure(), Measure::Chebyshev);
    EXPECT_EQ(a[1].record.basis, BasisTag::HalfPeriodCosine);
    EXPECT_EQ(a[1].nodes.measure(), Measure::Uniform);
    for (int arm = 0; arm < 2; ++arm) {
        EXPECT_EQ(a[arm].subsample.J, b[arm].subsample.J);
        EXPECT_EQ(a[arm].record.error, b[arm].record.error);
        EXPECT_EQ(a[arm].record.a_after, b[arm].record.a_after);
    }
}

TEST(Sweep, RecordsRespectBudgetsAndShrinkWithRadius) {
    ExperimentConfig c;
    c.dim = 3;
    c.radii = {4, 6, 8, 12, 16};
    c.repeats = 3;
    const auto recs = run_error_sweep(c);
    ASSERT_EQ(recs.size(), 15u);
    for (const auto& r : recs) {
        EXPECT_EQ(r.M, oversampled_budget(r.m));
        EXPECT_LE(r.n, selection_size(c.b, r.m));
        EXPECT_EQ(r.d, 3u);
    }
    const auto med = median_by_radius(recs);
    ASSERT_EQ(med.size(), 5u);
    int inversions = 0;
    for (std::size_t i = 1; i < med.size(); ++i) inversions += med[i].error > med[i - 1].error;
    EXPECT_LE(inversions, 1);
}

TEST(Sweep, SeedsAreDistinctPerCell) {
    EXPECT_NE(cell_seed(1, 10, 0), cell_seed(1, 10, 1));
    EXPECT_NE(cell_seed(1, 10, 0), cell_seed(1, 11, 0));
    EXPECT_NE(cell_seed(1, 10, 0), cell_seed(2, 10, 0));
    EXPECT_EQ(cell_seed(7, 3, 2), cell_seed(7, 3, 2));
}

TEST(Median, PicksLowerMedianPerRadius) {
    std::vector<ExperimentRecord> recs(4);
    recs[0].R = 5, recs[0].error = 3.0;
    recs[1].R = 5, recs[1].error = 1.0;
    recs[2].R = 5, recs[2].error = 2.0;
    recs[3].R = 7, recs[3].error = 9.0;
    const auto med = median_by_radius(recs);
    ASSERT_EQ(med.size(), 2u);
    EXPECT_EQ(med[0].error, 2.0);
    EXPECT_EQ(med[1].error, 9.0);
}

TEST(Io, RecordsRoundTripThroughCsv) {
    ExperimentConfig c;
    c.dim = 2;
    c.radii = {6, 9};
    c.repeats = 2;
    c.basis = BasisTag::HalfPeriodCosine;
    const auto recs = run_error_sweep(c);
    std::stringstream ss;
    io::write_records_csv(ss, recs);
    std::string header;
    std::getline(std::stringstream(ss.str()), header);
    EXPECT_EQ(header, "d,R,m,M,n,b,basis,error_method,error,a_before,b_before,a_after,b_after,seed,ms");
    const auto back = io::read_records_csv(ss);
    ASSERT_EQ(back.size(), recs.size());
    for (std::size_t i = 0; i < recs.size(); ++i) {
        EXPECT_EQ(back[i].R, recs[i].R);
        EXPECT_EQ(back[i].n, recs[i].n);
        EXPECT_EQ(back[i].basis, recs[i].basis);
        EXPECT_EQ(back[i].error, recs[i].error);
        EXPECT_EQ(back[i].a_after, recs[i].a_after);
        EXPECT_EQ(back[i].seed, recs[i].seed);
    }
}

TEST(Io, NodesRoundTripBitExactly) {
    const auto nodes = draw_chebyshev(3, 40, 5);
    std::stringstream ss;
    io::write_nodes_csv(ss, nodes);
    const auto back = io::read_nodes_csv(ss, 3, Measure::Chebyshev, 5);
    EXPECT_EQ(back.points(), nodes.points());
    std::stringstream bad("0.1,0.2\n");
    EXPECT_THROW(io::read_nodes_csv(bad, 3, Measure::Chebyshev), ParameterError);
}

TEST(Io, DesignMatrixHeaderUsesPipeSeparatedIndices) {
    RowMatrix p(1, 2);
    p << 0.5, 0.5;
    const auto idx = enumerate_hyperbolic_cross(2, 1);
    std::stringstream ss;
    io::write_design_csv(ss, design_matrix(NodeSet(p, Measure::Chebyshev, 0), idx, BasisTag::Chebyshev, false), idx);
    std::string header, row;
    std::getline(ss, header);
    std::getline(ss, row);
    EXPECT_EQ(header, "0|0,0|1,1|0,1|1");
    EXPECT_EQ(row.substr(0, 2), "1,");
}
