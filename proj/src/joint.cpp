#include "bellsim/joint.hpp"

#include <cmath>
#include <stdexcept>

#include "bellsim/kernels.hpp"
#include "bellsim/simplex.hpp"

namespace bellsim {

ConsistencyReport check_consistency(const ExperimentQuartet& q, double tol) {
    ConsistencyReport r;
    r.tolerance = tol;
    r.per_observable[0] = std::abs(q.pair(PairKind::A1A2).marginal_first(Outcome::plus) -
                                   q.pair(PairKind::A1B2).marginal_first(Outcome::plus));
    r.per_observable[1] = std::abs(q.pair(PairKind::B1A2).marginal_first(Outcome::plus) -
                                   q.pair(PairKind::B1B2).marginal_first(Outcome::plus));
    r.per_observable[2] = std::abs(q.pair(PairKind::A1A2).marginal_second(Outcome::plus) -
                                   q.pair(PairKind::B1A2).marginal_second(Outcome::plus));
    r.per_observable[3] = std::abs(q.pair(PairKind::A1B2).marginal_second(Outcome::plus) -
                                   q.pair(PairKind::B1B2).marginal_second(Outcome::plus));
    r.max_discrepancy = 0.0;
    for (double d : r.per_observable) r.max_discrepancy = std::max(r.max_discrepancy, d);
    r.pass = r.max_discrepancy <= tol;
    return r;
}

namespace {

// Marginal constraint rows: for each pair and outcome combination, the
// atoms whose bits match, plus one normalization row.
FeasibilityLP marginal_lp(const ExperimentQuartet& q) {
    FeasibilityLP lp;
    for (int p = 0; p < 4; ++p) {
        const PairKind kind = static_cast<PairKind>(p);
        for (int x = 0; x < 2; ++x)
            for (int y = 0; y < 2; ++y) {
                std::vector<double> row(16, 0.0);
                for (int idx = 0; idx < 16; ++idx) {
                    const int a1 = (idx >> 3) & 1, b1 = (idx >> 2) & 1;
                    const int a2 = (idx >> 1) & 1, b2 = idx & 1;
                    int first = 0, second = 0;
                    switch (kind) {
                        case PairKind::A1A2: first = a1; second = a2; break;
                        case PairKind::A1B2: first = a1; second = b2; break;
                        case PairKind::B1A2: first = b1; second = a2; break;
                        case PairKind::B1B2: first = b1; second = b2; break;
                    }
                    if (first == x && second == y) row[idx] = 1.0;
                }
                lp.rows.push_back(std::move(row));
                lp.rhs.push_back(q.pair(kind).p(outcome_from_index(x), outcome_from_index(y)));
            }
    }
    lp.rows.emplace_back(16, 1.0);
    lp.rhs.push_back(1.0);
    return lp;
}

}  // namespace

FeasibilityResult joint_exists(const ExperimentQuartet& quartet, double tol) {
    const ConsistencyReport consistency = check_consistency(quartet, tol);
    if (!consistency.pass) {
        throw std::invalid_argument("joint_exists: quartet marginals are inconsistent");
    }

    const SimplexResult lp = solve_feasibility(marginal_lp(quartet), 1e-11, tol);

    FeasibilityResult result;
    if (lp.feasible) {
        result.status = FeasibilityResult::Status::feasible;
        std::array<double, 16> atoms{};
        for (int i = 0; i < 16; ++i) atoms[i] = lp.x[i];
        result.witness = QuadrivariateDistribution::from_raw(atoms, /*normalize=*/true);
    } else {
        result.status = FeasibilityResult::Status::infeasible;
        const BchsReport report = bchs_all_variants(quartet, tol);
        const int idx = report.most_violated_index();
        BchsCertificate cert;
        cert.variant_index = idx >= 0 ? idx : report.worst_high_index;
        cert.value = report.values[cert.variant_index];
        cert.label = bchs_variants()[cert.variant_index].label;
        result.certificate = std::move(cert);
    }
    return result;
}

bool fine_equivalence(const ExperimentQuartet& quartet) {
    const bool lp_feasible = joint_exists(quartet).feasible();
    const bool bchs_ok = bchs_all_variants(quartet).satisfied;
    return lp_feasible == bchs_ok;
}

QuadrivariateDistribution product_joint(const QuasiObjectivisticModel& model,
                                        const QuartetSettings& settings) {
    if (model.space.kind != HiddenVariableSpace::Kind::finite_grid) {
        throw std::invalid_argument("product_joint: finite hidden-variable space required");
    }
    const std::vector<double> pa1 = tabulate_response(model.space, model.response1, settings.a1);
    const std::vector<double> pb1 = tabulate_response(model.space, model.response1, settings.b1);
    const std::vector<double> pa2 = tabulate_response(model.space, model.response2, settings.a2);
    const std::vector<double> pb2 = tabulate_response(model.space, model.response2, settings.b2);
    double out[16];
    kernels::quad_atoms(model.space.weight.data(), pa1.data(), pb1.data(), pa2.data(), pb2.data(),
                        pa1.size(), out);
    std::array<double, 16> atoms{};
    for (int i = 0; i < 16; ++i) atoms[i] = out[i];
    return QuadrivariateDistribution::from_raw(atoms, /*normalize=*/true);
}

}  // namespace bellsim
