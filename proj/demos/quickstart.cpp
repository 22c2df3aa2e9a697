// Recover the tensor B-spline on Lambda_{2,20} from 118 subsampled Chebyshev nodes.
#include <iostream>

#include "chebsub/chebsub.hpp"

int main() {
    using namespace chebsub;
    const auto indices = enumerate_hyperbolic_cross(2, 20);
    const auto nodes = draw_chebyshev(2, oversampled_budget(indices.size()), 1);

    const auto full = design_matrix(nodes, indices, BasisTag::Chebyshev, false);
    const auto sub = bss_subsample(full, 1.1);
    const auto subset = nodes.subset(sub.J);

    const auto fit = least_squares_fit(subset, sample_function(test_function, subset), indices, BasisTag::Chebyshev);
    const auto err = l2_error_parseval(b2_oracle(BasisTag::Chebyshev, 2), fit.approximant);

    std::cout << "m = " << indices.size() << ", M = " << nodes.size() << ", n = " << subset.size() << '\n'
              << "frame bounds before: [" << sub.full_bounds.a_min << ", " << sub.full_bounds.b_max << "]\n"
              << "frame bounds after:  [" << fit.bounds.a_min << ", " << fit.bounds.b_max << "]\n"
              << "guarantee margin:    " << sub.margin << (sub.guarantee_holds() ? " (holds)" : " (VIOLATED)") << '\n'
              << "L2 error:            " << err.value << '\n';
    return sub.guarantee_holds() ? 0 : 1;
}
