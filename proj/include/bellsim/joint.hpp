#pragma once

#include <optional>
#include <string>

#include "bellsim/distributions.hpp"
#include "bellsim/hidden_variables.hpp"
#include "bellsim/inequalities.hpp"

namespace bellsim {

// Existence of a quadrivariate joint distribution with the four given pair
// marginals, decided by linear-programming feasibility over the 16 atoms.

struct ConsistencyReport {
    bool pass = false;
    double max_discrepancy = 0.0;
    // Disagreement between the two marginal estimates of A1, B1, A2, B2.
    std::array<double, 4> per_observable{};
    double tolerance = 0.0;
};

// Local commutativity check: each single-observable marginal must agree
// between the two experiments that contain the observable.
ConsistencyReport check_consistency(const ExperimentQuartet& quartet, double tol = 1e-9);

struct BchsCertificate {
    int variant_index = -1;
    double value = 0.0;
    std::string label;
};

struct FeasibilityResult {
    enum class Status { feasible, infeasible };
    Status status = Status::infeasible;
    std::optional<QuadrivariateDistribution> witness;
    std::optional<BchsCertificate> certificate;

    bool feasible() const { return status == Status::feasible; }
};

// Throws std::invalid_argument when the quartet fails check_consistency.
FeasibilityResult joint_exists(const ExperimentQuartet& quartet, double tol = 1e-9);

// True when LP feasibility and satisfaction of every BCHS variant agree;
// holds identically for consistent inputs.
bool fine_equivalence(const ExperimentQuartet& quartet);

// Explicit joint of a local model over its finite hidden-variable space:
// atoms = sum_l w(l) p(a1|l) p(b1|l) p(a2|l) p(b2|l). Its pair marginals
// are the model's bivariates, so those always satisfy every BCHS variant.
QuadrivariateDistribution product_joint(const QuasiObjectivisticModel& model,
                                        const QuartetSettings& settings);

}  // namespace bellsim
