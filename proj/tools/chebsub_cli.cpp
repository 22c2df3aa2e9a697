#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "chebsub/chebsub.hpp"

using namespace chebsub;
using json = nlohmann::json;

namespace {

constexpr int kExitParameter = 2;
constexpr int kExitGuarantee = 3;
constexpr int kExitNumerical = 4;

const std::map<std::string, BasisTag> kBasisNames{{"cheb", BasisTag::Chebyshev}, {"hpc", BasisTag::HalfPeriodCosine}};
const std::map<std::string, Measure> kMeasureNames{{"cheb", Measure::Chebyshev}, {"uniform", Measure::Uniform}};
const std::map<std::string, ErrorMethod> kErrorNames{{"parseval", ErrorMethod::Parseval}, {"mc", ErrorMethod::MonteCarlo}};

std::ofstream open_out(const std::string& path) {
    std::ofstream os(path);
    if (!os) throw ParameterError("cannot open '" + path + "' for writing");
    return os;
}

NodeSet load_nodes(const std::string& path, std::size_t dim, BasisTag basis) {
    std::ifstream is(path);
    if (!is) throw ParameterError("cannot open '" + path + "'");
    return io::read_nodes_csv(is, dim, natural_measure(basis));
}

// Writes to `path`, or to stdout when the path is empty or "-".
template <class Fn>
void emit(const std::string& path, Fn&& fn) {
    if (path.empty() || path == "-") {
        fn(std::cout);
    } else {
        auto os = open_out(path);
        fn(os);
    }
}

void dump_matrix(const std::string& path, const DesignMatrix& dm, const MultiIndexSet& idx) {
    if (path.empty()) return;
    auto os = open_out(path);
    io::write_design_csv(os, dm, idx);
}

json bounds_json(const FrameBounds& fb) { return {{"a_min", fb.a_min}, {"b_max", fb.b_max}}; }

json record_json(const ExperimentRecord& r) {
    return {{"d", r.d},          {"R", r.R},
            {"m", r.m},          {"M", r.M},
            {"n", r.n},          {"b", r.b},
            {"basis", std::string(to_string(r.basis))},
            {"error", r.error},  {"a_before", r.a_before},
            {"b_before", r.b_before}, {"a_after", r.a_after},
            {"b_after", r.b_after},   {"margin", r.margin},
            {"seed", r.seed},    {"ms", r.ms}};
}

struct SweepArgs {
    std::size_t dim = 3;
    std::vector<std::uint64_t> radii;
    std::uint64_t seed = 1;
    std::size_t repeats = 3;
    double b = 1.1;
    std::size_t mc_points = 0;
    std::string out;
};

void add_sweep_options(CLI::App* app, SweepArgs& a) {
    app->add_option("--dim", a.dim, "dimension d")->check(CLI::Range(1, 12));
    app->add_option("--radii", a.radii, "hyperbolic-cross radii (default depends on d)")->delimiter(',');
    app->add_option("--seed", a.seed, "base seed");
    app->add_option("--repeats", a.repeats, "seeds per radius")->check(CLI::PositiveNumber);
    app->add_option("--b", a.b, "oversampling factor");
    app->add_option("--mc", a.mc_points, "also estimate each error by Monte Carlo with this many points");
    app->add_option("--out", a.out, "records CSV (default stdout)");
}

void run_sweep(const SweepArgs& a, BasisTag basis) {
    ExperimentConfig c;
    c.dim = a.dim;
    c.radii = a.radii.empty() ? default_radii(a.dim) : a.radii;
    c.b = a.b;
    c.basis = basis;
    c.seed = a.seed;
    c.repeats = a.repeats;
    c.mc_points = a.mc_points;
    const auto records = run_error_sweep(c, [&](const ExperimentRecord& r) {
        std::fprintf(stderr, "d=%zu R=%llu m=%zu n=%zu seed=%llu error=%.6e a_after=%.4f (%lld ms)", r.d,
                     static_cast<unsigned long long>(r.R), r.m, r.n, static_cast<unsigned long long>(r.seed), r.error,
                     r.a_after, static_cast<long long>(r.ms));
        if (a.mc_points > 0) std::fprintf(stderr, " mc=%.6e+-%.1e", r.mc_error, r.mc_standard_error);
        std::fputc('\n', stderr);
    });
    emit(a.out, [&](std::ostream& os) { io::write_records_csv(os, records); });
    for (const auto& r : median_by_radius(records))
        std::fprintf(stderr, "median n=%zu error=%.6e reference=%.6e\n", r.n, r.error,
                     reference_curve(static_cast<double>(r.n), c.expected_rate, c.dim));
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Subsampled least-squares recovery on hyperbolic crosses"};
    app.require_subcommand(1);

    // cross
    std::size_t dim = 2;
    std::uint64_t radius = 20;
    bool list = false;
    std::string out;
    auto* cross = app.add_subcommand("cross", "size (and optionally members) of Lambda_{d,R}");
    cross->add_option("--dim", dim, "dimension d")->required();
    cross->add_option("--radius", radius, "radius R")->required();
    cross->add_flag("--list", list, "print the multi-indices as CSV after the size");
    cross->add_option("--out", out, "write the index list here instead of stdout");

    // sample
    std::string measure_name = "cheb";
    std::size_t count = 0;
    std::uint64_t seed = 1;
    auto* sample = app.add_subcommand("sample", "draw random nodes");
    sample->add_option("--measure", measure_name)->check(CLI::IsMember({"cheb", "uniform"}));
    sample->add_option("--dim", dim)->required();
    sample->add_option("--count", count)->required();
    sample->add_option("--seed", seed);
    sample->add_option("--out", out, "nodes CSV (default stdout)");

    // subsample
    std::string nodes_path, basis_name = "cheb", dump_path;
    double b = 1.1;
    auto* subsample = app.add_subcommand("subsample", "select ceil(b m) nodes preserving the lower frame bound");
    subsample->add_option("--nodes", nodes_path)->required()->check(CLI::ExistingFile);
    subsample->add_option("--dim", dim)->required();
    subsample->add_option("--radius", radius)->required();
    subsample->add_option("--basis", basis_name)->check(CLI::IsMember({"cheb", "hpc"}));
    subsample->add_option("--b", b);
    subsample->add_option("--out", out, "selected node rows (default stdout)");
    subsample->add_option("--dump-matrix", dump_path, "write the full design matrix CSV here");

    // recover
    std::string function_name = "b2tensor", error_name = "parseval";
    std::size_t mc_points = 1000000;
    bool with_coefficients = false;
    auto* recover = app.add_subcommand("recover", "least-squares fit of the test function and its L2 error");
    recover->add_option("--nodes", nodes_path)->required()->check(CLI::ExistingFile);
    recover->add_option("--dim", dim)->required();
    recover->add_option("--radius", radius)->required();
    recover->add_option("--basis", basis_name)->check(CLI::IsMember({"cheb", "hpc"}));
    recover->add_option("--function", function_name)->check(CLI::IsMember({"b2tensor"}));
    recover->add_option("--error", error_name)->check(CLI::IsMember({"parseval", "mc"}));
    recover->add_option("--mc-points", mc_points, "Monte Carlo sample count");
    recover->add_option("--seed", seed, "Monte Carlo seed");
    recover->add_flag("--coefficients", with_coefficients, "include the fitted coefficients");
    recover->add_option("--out", out, "result JSON (default stdout)");
    recover->add_option("--dump-matrix", dump_path, "write the design matrix CSV here");

    // coeffs
    std::uint64_t kmax = 10;
    auto* coeffs = app.add_subcommand("coeffs", "closed-form 1-d coefficients of the B-spline");
    coeffs->add_option("--basis", basis_name)->check(CLI::IsMember({"cheb", "hpc"}));
    coeffs->add_option("--kmax", kmax)->required();

    // fig2
    std::size_t repeats = 1;
    auto* fig2 = app.add_subcommand("fig2", "frame bounds before/after subsampling on Lambda_{2,20}, both arms");
    fig2->add_option("--seed", seed);
    fig2->add_option("--repeats", repeats, "consecutive seeds to run")->check(CLI::PositiveNumber);
    fig2->add_option("--b", b);
    fig2->add_option("--out", out, "directory for node sets and the records CSV");

    // fig3 / fig4
    SweepArgs fig3_args, fig4_args;
    auto* fig3 = app.add_subcommand("fig3", "error sweep with the Chebyshev basis");
    add_sweep_options(fig3, fig3_args);
    auto* fig4 = app.add_subcommand("fig4", "error sweep with the half-period cosine basis");
    add_sweep_options(fig4, fig4_args);

    // rate
    std::string in_path;
    double nmin = 300, nmax = 1500;
    auto* rate = app.add_subcommand("rate", "log-log decay rate of median errors per (d, basis)");
    rate->add_option("--in", in_path)->required()->check(CLI::ExistingFile);
    rate->add_option("--nmin", nmin);
    rate->add_option("--nmax", nmax);

    CLI11_PARSE(app, argc, argv);

    try {
        if (*cross) {
            const auto idx = enumerate_hyperbolic_cross(dim, radius);
            std::cout << "m=" << idx.size() << '\n';
            if (list)
                emit(out, [&](std::ostream& os) {
                    for (const auto& k : idx) os << k.to_string(',') << '\n';
                });
        } else if (*sample) {
            const auto nodes = draw_nodes(kMeasureNames.at(measure_name), dim, count, seed);
            emit(out, [&](std::ostream& os) { io::write_nodes_csv(os, nodes); });
        } else if (*subsample) {
            const BasisTag basis = kBasisNames.at(basis_name);
            const auto nodes = load_nodes(nodes_path, dim, basis);
            const auto idx = enumerate_hyperbolic_cross(dim, radius);
            const auto full = design_matrix(nodes, idx, basis, false);
            dump_matrix(dump_path, full, idx);
            const auto res = bss_subsample(full, b);
            const double margin = verify_guarantee(full, res);
            const auto subset = nodes.subset(res.J);
            const auto after = frame_bounds(design_matrix(subset, idx, basis, true));
            emit(out, [&](std::ostream& os) { io::write_nodes_csv(os, subset); });
            const json meta{{"m", idx.size()},
                            {"M", nodes.size()},
                            {"n", res.J.size()},
                            {"b", b},
                            {"guarantee_constant", res.guarantee_constant},
                            {"margin", margin},
                            {"tolerance", res.tolerance},
                            {"a_min_before", res.full_bounds.a_min},
                            {"b_max_before", res.full_bounds.b_max},
                            {"a_min_after", after.a_min},
                            {"b_max_after", after.b_max},
                            {"J", res.J}};
            std::cout << meta.dump() << std::endl;
            if (margin < -res.tolerance) {
                std::cerr << "guarantee verification failed: margin " << margin << '\n';
                return kExitGuarantee;
            }
        } else if (*recover) {
            const BasisTag basis = kBasisNames.at(basis_name);
            const auto nodes = load_nodes(nodes_path, dim, basis);
            const auto idx = enumerate_hyperbolic_cross(dim, radius);
            dump_matrix(dump_path, design_matrix(nodes, idx, basis, false), idx);
            const auto fit = least_squares_fit(nodes, sample_function(test_function, nodes), idx, basis);
            const ErrorReport err = kErrorNames.at(error_name) == ErrorMethod::Parseval
                                        ? l2_error_parseval(b2_oracle(basis, dim), fit.approximant)
                                        : l2_error_montecarlo(test_function, fit.approximant, norm_measure(basis),
                                                              mc_points, seed);
            json res{{"d", dim},
                     {"R", radius},
                     {"m", idx.size()},
                     {"n", nodes.size()},
                     {"basis", basis_name},
                     {"function", function_name},
                     {"error", err.value},
                     {"error_method", std::string(to_string(err.method))},
                     {"measure", std::string(to_string(err.measure))},
                     {"residual_norm", fit.residual_norm},
                     {"frame_bounds", bounds_json(fit.bounds)}};
            if (err.method == ErrorMethod::Parseval) {
                res["tail_cutoff"] = err.tail_cutoff;
                res["remainder_bound"] = err.remainder_bound;
                res["tail_energy"] = err.tail_energy;
                res["in_set_error_squared"] = err.in_set_error_squared;
            } else {
                res["mc_points"] = err.mc_points;
                res["seed"] = err.seed;
                res["standard_error"] = err.standard_error;
            }
            if (with_coefficients) {
                json cs = json::array();
                for (std::size_t j = 0; j < idx.size(); ++j)
                    cs.push_back({{"k", idx[j].entries()},
                                  {"c", fit.approximant.coefficients(static_cast<Eigen::Index>(j))}});
                res["coefficients"] = std::move(cs);
            }
            emit(out, [&](std::ostream& os) { os << res.dump(2) << '\n'; });
        } else if (*coeffs) {
            const BasisTag basis = kBasisNames.at(basis_name);
            std::cout << "k,coefficient\n" << std::setprecision(17);
            for (std::uint64_t k = 0; k <= kmax; ++k) std::cout << k << ',' << b2_coeff(basis, k) << '\n';
        } else if (*fig2) {
            const std::filesystem::path dir = out.empty() ? std::filesystem::path(".") : std::filesystem::path(out);
            std::filesystem::create_directories(dir);
            std::vector<ExperimentRecord> records;
            for (std::size_t r = 0; r < repeats; ++r) {
                ExperimentConfig c;
                c.dim = 2;
                c.radii = {20};
                c.b = b;
                c.seed = seed + r;
                for (const auto& arm : run_frame_bound_demo(c)) {
                    const std::string tag = std::string(to_string(arm.record.basis)) + "_seed" + std::to_string(c.seed);
                    auto nodes_os = open_out((dir / (tag + "_nodes.csv")).string());
                    io::write_nodes_csv(nodes_os, arm.nodes);
                    auto subset_os = open_out((dir / (tag + "_subset.csv")).string());
                    io::write_nodes_csv(subset_os, arm.subset);
                    std::cout << record_json(arm.record).dump() << std::endl;
                    records.push_back(arm.record);
                }
            }
            auto os = open_out((dir / "fig2.csv").string());
            io::write_records_csv(os, records);
        } else if (*fig3) {
            run_sweep(fig3_args, BasisTag::Chebyshev);
        } else if (*fig4) {
            run_sweep(fig4_args, BasisTag::HalfPeriodCosine);
        } else if (*rate) {
            std::ifstream is(in_path);
            const auto records = io::read_records_csv(is);
            std::map<std::pair<std::size_t, std::string>, std::vector<ExperimentRecord>> groups;
            for (const auto& r : records) groups[{r.d, std::string(to_string(r.basis))}].push_back(r);
            std::cout << "d,basis,points,slope\n";
            for (const auto& [key, recs] : groups) {
                const auto med = median_by_radius(recs);
                std::cout << key.first << ',' << key.second << ',' << med.size() << ','
                          << fit_decay_rate(med, nmin, nmax) << '\n';
            }
        }
    } catch (const GuaranteeError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitGuarantee;
    } catch (const SingularityError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitNumerical;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitParameter;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitParameter;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
