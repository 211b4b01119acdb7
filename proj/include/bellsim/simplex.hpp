#pragma once

#include <cstddef>
#include <vector>

namespace bellsim {

// Phase-1 simplex feasibility test for {A x = b, x >= 0} on small dense
// systems. Redundant rows are pruned by Gaussian elimination before the
// artificial-variable phase; Bland's rule prevents cycling on the
// degenerate marginal systems this is used for.
struct FeasibilityLP {
    std::vector<std::vector<double>> rows;  // equality constraint coefficients
    std::vector<double> rhs;
};

struct SimplexResult {
    bool feasible = false;
    std::vector<double> x;          // a feasible point when feasible
    double phase1_objective = 0.0;  // residual infeasibility measure
    std::size_t kept_rows = 0;      // independent constraints after pruning
    std::size_t pivots = 0;
};

SimplexResult solve_feasibility(const FeasibilityLP& lp, double pivot_tol = 1e-11,
                                double feasibility_tol = 1e-9);

}  // namespace bellsim
