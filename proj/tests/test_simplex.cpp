#include <doctest.h>

#include <stdexcept>

#include <random>

#include "bellsim/simplex.hpp"

using namespace bellsim;

TEST_CASE("feasible system with a known solution") {
    // x0 + x1 = 1, x0 - x1 = 0 -> x = (0.5, 0.5)
    FeasibilityLP lp;
    lp.rows = {{1.0, 1.0}, {1.0, -1.0}};
    lp.rhs = {1.0, 0.0};
    const SimplexResult r = solve_feasibility(lp);
    REQUIRE(r.feasible);
    CHECK(r.x[0] == doctest::Approx(0.5));
    CHECK(r.x[1] == doctest::Approx(0.5));
}

TEST_CASE("infeasible through sign constraints") {
    // x0 + x1 = -1 has no nonnegative solution.
    FeasibilityLP lp;
    lp.rows = {{1.0, 1.0}};
    lp.rhs = {-1.0};
    CHECK_FALSE(solve_feasibility(lp).feasible);
}

TEST_CASE("redundant rows are pruned, inconsistent duplicates rejected") {
    FeasibilityLP lp;
    lp.rows = {{1.0, 1.0}, {2.0, 2.0}, {1.0, 0.0}};
    lp.rhs = {1.0, 2.0, 0.25};
    const SimplexResult r = solve_feasibility(lp);
    REQUIRE(r.feasible);
    CHECK(r.kept_rows == 2);
    CHECK(r.x[0] == doctest::Approx(0.25));
    CHECK(r.x[1] == doctest::Approx(0.75));

    lp.rhs = {1.0, 3.0, 0.25};  // duplicate row with contradictory rhs
    CHECK_FALSE(solve_feasibility(lp).feasible);
}

TEST_CASE("random systems: returned points satisfy the constraints") {
    std::mt19937_64 rng(97);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    for (int t = 0; t < 200; ++t) {
        // Build Ax = b from a known nonnegative solution so the system is
        // guaranteed feasible.
        const std::size_t n = 6, m = 4;
        std::vector<double> x_true(n);
        for (double& v : x_true) v = unif(rng);
        FeasibilityLP lp;
        for (std::size_t i = 0; i < m; ++i) {
            std::vector<double> row(n);
            double b = 0.0;
            for (std::size_t j = 0; j < n; ++j) {
                row[j] = unif(rng);
                b += row[j] * x_true[j];
            }
            lp.rows.push_back(std::move(row));
            lp.rhs.push_back(b);
        }
        const SimplexResult r = solve_feasibility(lp);
        REQUIRE(r.feasible);
        for (std::size_t i = 0; i < m; ++i) {
            double lhs = 0.0;
            for (std::size_t j = 0; j < n; ++j) lhs += lp.rows[i][j] * r.x[j];
            CHECK(lhs == doctest::Approx(lp.rhs[i]).epsilon(1e-8));
        }
        for (double v : r.x) CHECK(v >= -1e-12);
    }
}
