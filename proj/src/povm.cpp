#include "bellsim/povm.hpp"

#include <cmath>
#include <stdexcept>

namespace bellsim {

ArmConfig ArmConfig::make(double gamma, Angle theta, Angle theta_prime) {
    if (!(gamma >= 0.0 && gamma <= 1.0)) {
        throw std::invalid_argument("ArmConfig: gamma must lie in [0, 1]");
    }
    return ArmConfig{gamma, theta, theta_prime};
}

ArmPOVM arm_povm(const ArmConfig& config) {
    if (!(config.gamma >= 0.0 && config.gamma <= 1.0)) {
        throw std::invalid_argument("arm_povm: gamma must lie in [0, 1]");
    }
    const double g = config.gamma;
    const ProjectorPair e = polarization_projectors(config.theta);
    const ProjectorPair f = polarization_projectors(config.theta_prime);
    std::array<ComplexMatrix, 4> elems{ComplexMatrix(2), ComplexMatrix(2), ComplexMatrix(2),
                                       ComplexMatrix(2)};
    // (+,+) stays zero
    elems[1] = g * e.plus;                                 // (+,-)
    elems[2] = (1.0 - g) * f.plus;                         // (-,+)
    elems[3] = g * e.minus + (1.0 - g) * f.minus;          // (-,-)
    return ArmPOVM(std::move(elems));
}

BivariateDistribution arm_probabilities(const DensityMatrix& rho1, const ArmConfig& config) {
    if (rho1.dim() != 2) throw std::invalid_argument("arm_probabilities: one-arm state required");
    if (!(config.gamma >= 0.0 && config.gamma <= 1.0)) {
        throw std::invalid_argument("arm_probabilities: gamma must lie in [0, 1]");
    }
    const double g = config.gamma;
    const ProjectorPair e = polarization_projectors(config.theta);
    const ProjectorPair f = polarization_projectors(config.theta_prime);
    const double e_plus = trace_product(rho1.matrix(), e.plus).real();
    const double f_plus = trace_product(rho1.matrix(), f.plus).real();
    std::array<double, 4> t{};
    t[0] = 0.0;                                        // (+,+)
    t[1] = g * e_plus;                                 // (+,-)
    t[2] = (1.0 - g) * f_plus;                         // (-,+)
    t[3] = 1.0 - g * e_plus - (1.0 - g) * f_plus;      // (-,-)
    return BivariateDistribution::from_raw(t);
}

PairPOVM pair_povm(const ExperimentConfig& config) {
    const ArmPOVM r1 = arm_povm(config.arm1);
    const ArmPOVM r2 = arm_povm(config.arm2);
    std::array<ComplexMatrix, 16> elems;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (int k = 0; k < 2; ++k)
                for (int l = 0; l < 2; ++l) {
                    const Outcome a1 = outcome_from_index(i), b1 = outcome_from_index(j);
                    const Outcome a2 = outcome_from_index(k), b2 = outcome_from_index(l);
                    elems[PairPOVM::index(a1, b1, a2, b2)] =
                        kron(r1.element(a1, b1), r2.element(a2, b2));
                }
    return PairPOVM(std::move(elems));
}

QuadrivariateDistribution quad_probabilities(const ExperimentConfig& config) {
    if (config.state.dim() != 4) {
        throw std::invalid_argument("quad_probabilities: pair state required");
    }
    const PairPOVM povm = pair_povm(config);
    std::array<double, 16> atoms{};
    for (int idx = 0; idx < 16; ++idx) {
        atoms[idx] = trace_product(config.state.matrix(), povm.elements()[idx]).real();
    }
    return QuadrivariateDistribution::from_raw(atoms, /*normalize=*/true);
}

}  // namespace bellsim
