#include "bellsim/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace bellsim {

namespace {

// Indices of a maximal linearly independent subset of rows, found by
// eliminating each row against the pivots kept so far. Dependent rows whose
// reduced right-hand side exceeds rhs_tol make the system inconsistent.
std::vector<std::size_t> independent_rows(const FeasibilityLP& lp, double pivot_tol,
                                          double rhs_tol, bool* consistent) {
    const std::size_t n = lp.rows.empty() ? 0 : lp.rows.front().size();
    std::vector<std::vector<double>> reduced;   // rows in echelon form
    std::vector<std::size_t> pivot_col;
    std::vector<std::size_t> kept;
    *consistent = true;

    for (std::size_t r = 0; r < lp.rows.size(); ++r) {
        std::vector<double> row = lp.rows[r];
        double rhs = lp.rhs[r];
        for (std::size_t k = 0; k < reduced.size(); ++k) {
            const double factor = row[pivot_col[k]];
            if (factor == 0.0) continue;
            for (std::size_t j = 0; j < n; ++j) row[j] -= factor * reduced[k][j];
            rhs -= factor * reduced[k][n];
        }
        std::size_t best = n;
        double best_abs = pivot_tol;
        for (std::size_t j = 0; j < n; ++j) {
            if (std::abs(row[j]) > best_abs) {
                best_abs = std::abs(row[j]);
                best = j;
            }
        }
        if (best == n) {
            if (std::abs(rhs) > rhs_tol) *consistent = false;
            continue;
        }
        const double inv = 1.0 / row[best];
        for (std::size_t j = 0; j < n; ++j) row[j] *= inv;
        rhs *= inv;
        row.push_back(rhs);
        reduced.push_back(std::move(row));
        pivot_col.push_back(best);
        kept.push_back(r);
    }
    return kept;
}

}  // namespace

SimplexResult solve_feasibility(const FeasibilityLP& lp, double pivot_tol,
                                double feasibility_tol) {
    if (lp.rows.size() != lp.rhs.size()) {
        throw std::invalid_argument("solve_feasibility: rows/rhs size mismatch");
    }
    const std::size_t n = lp.rows.empty() ? 0 : lp.rows.front().size();
    for (const auto& row : lp.rows) {
        if (row.size() != n) throw std::invalid_argument("solve_feasibility: ragged rows");
    }

    SimplexResult result;
    bool consistent = true;
    const std::vector<std::size_t> kept = independent_rows(lp, pivot_tol, feasibility_tol,
                                                           &consistent);
    result.kept_rows = kept.size();
    if (!consistent) {
        result.feasible = false;
        result.phase1_objective = 1.0;
        return result;
    }

    const std::size_t m = kept.size();
    if (m == 0) {
        result.feasible = true;
        result.x.assign(n, 0.0);
        return result;
    }

    // Tableau columns: n structural variables, m artificials, rhs.
    const std::size_t cols = n + m + 1;
    std::vector<std::vector<double>> t(m + 1, std::vector<double>(cols, 0.0));
    std::vector<std::size_t> basis(m);
    for (std::size_t i = 0; i < m; ++i) {
        const auto& src = lp.rows[kept[i]];
        const double sign = lp.rhs[kept[i]] < 0.0 ? -1.0 : 1.0;
        for (std::size_t j = 0; j < n; ++j) t[i][j] = sign * src[j];
        t[i][n + i] = 1.0;
        t[i][cols - 1] = sign * lp.rhs[kept[i]];
        basis[i] = n + i;
    }
    // Objective: minimize the sum of artificials. With the artificial basis
    // the reduced-cost row is minus the sum of the constraint rows.
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < n; ++j) t[m][j] -= t[i][j];
        t[m][cols - 1] -= t[i][cols - 1];
    }

    const std::size_t max_pivots = 10000;
    while (true) {
        // Bland: entering variable = lowest index with negative reduced cost.
        std::size_t enter = cols - 1;
        for (std::size_t j = 0; j + 1 < cols; ++j) {
            if (t[m][j] < -pivot_tol) {
                enter = j;
                break;
            }
        }
        if (enter == cols - 1) break;

        // Ratio test; ties broken by lowest basis index (Bland).
        std::size_t leave = m;
        double best_ratio = 0.0;
        for (std::size_t i = 0; i < m; ++i) {
            if (t[i][enter] > pivot_tol) {
                const double ratio = t[i][cols - 1] / t[i][enter];
                if (leave == m || ratio < best_ratio ||
                    (ratio == best_ratio && basis[i] < basis[leave])) {
                    leave = i;
                    best_ratio = ratio;
                }
            }
        }
        if (leave == m) {
            // Phase-1 objective is bounded below by zero, so no entering
            // column can be ray-unbounded; treat as converged.
            break;
        }

        const double piv = t[leave][enter];
        for (std::size_t j = 0; j < cols; ++j) t[leave][j] /= piv;
        for (std::size_t i = 0; i <= m; ++i) {
            if (i == leave) continue;
            const double f = t[i][enter];
            if (f == 0.0) continue;
            for (std::size_t j = 0; j < cols; ++j) t[i][j] -= f * t[leave][j];
        }
        basis[leave] = enter;
        if (++result.pivots > max_pivots) {
            throw std::runtime_error("solve_feasibility: pivot limit exceeded");
        }
    }

    result.phase1_objective = -t[m][cols - 1];
    result.feasible = result.phase1_objective <= feasibility_tol;
    if (result.feasible) {
        result.x.assign(n, 0.0);
        for (std::size_t i = 0; i < m; ++i) {
            if (basis[i] < n) result.x[basis[i]] = std::max(0.0, t[i][cols - 1]);
        }
    }
    return result;
}

}  // namespace bellsim
