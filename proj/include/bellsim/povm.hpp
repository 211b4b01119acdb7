#pragma once

#include <array>

#include "bellsim/quantum.hpp"

namespace bellsim {

// Generalized Aspect experiment: each arm replaces the switch by a mirror
// of transmissivity gamma, so both polarization observables of that arm are
// measured jointly (and non-ideally) by a four-outcome POVM.

struct ArmConfig {
    double gamma = 1.0;   // mirror transmissivity
    Angle theta;          // direction of the transmitted-beam observable
    Angle theta_prime;    // direction of the reflected-beam observable

    static ArmConfig make(double gamma, Angle theta, Angle theta_prime);
};

// Elements indexed by (a, b), the yes/no registrations of the transmitted
// and reflected detectors. Element (+,+) is the zero operator: one photon
// cannot fire both detectors.
class ArmPOVM {
public:
    explicit ArmPOVM(std::array<ComplexMatrix, 4> elems) : elems_(std::move(elems)) {}

    const ComplexMatrix& element(Outcome a, Outcome b) const {
        return elems_[static_cast<int>(a) * 2 + static_cast<int>(b)];
    }
    const std::array<ComplexMatrix, 4>& elements() const { return elems_; }

private:
    std::array<ComplexMatrix, 4> elems_;
};

ArmPOVM arm_povm(const ArmConfig& config);

// Detection table [[0, g<E+>], [(1-g)<F+>, 1 - g<E+> - (1-g)<F+>]] for one arm.
BivariateDistribution arm_probabilities(const DensityMatrix& rho1, const ArmConfig& config);

struct ExperimentConfig {
    ArmConfig arm1;
    ArmConfig arm2;
    DensityMatrix state;  // dim 4
};

// Sixteen dim-4 elements R_{ijkl} = R1_{ij} (x) R2_{kl}.
class PairPOVM {
public:
    explicit PairPOVM(std::array<ComplexMatrix, 16> elems) : elems_(std::move(elems)) {}

    static int index(Outcome a1, Outcome b1, Outcome a2, Outcome b2) {
        return QuadrivariateDistribution::index(a1, b1, a2, b2);
    }

    const ComplexMatrix& element(Outcome a1, Outcome b1, Outcome a2, Outcome b2) const {
        return elems_[index(a1, b1, a2, b2)];
    }
    const std::array<ComplexMatrix, 16>& elements() const { return elems_; }

private:
    std::array<ComplexMatrix, 16> elems_;
};

PairPOVM pair_povm(const ExperimentConfig& config);

// Joint detection statistics of all four detectors, p = Tr rho R_{ijkl}.
QuadrivariateDistribution quad_probabilities(const ExperimentConfig& config);

}  // namespace bellsim
