#pragma once

#include "bellsim/angle.hpp"
#include "bellsim/complex_matrix.hpp"
#include "bellsim/distributions.hpp"

namespace bellsim {

// Two-photon polarization quantum mechanics on the basis
// |HH>, |HV>, |VH>, |VV> (H = polarization along angle 0). Outcome +1
// means transmission at the instrument's angle theta, so the dichotomic
// observable is A = E_plus - E_minus.

enum class BellKind { phi_plus, phi_minus, psi_plus, psi_minus };

const char* bell_kind_name(BellKind k);

// Positive unit-trace operator; dim 4 for the pair, dim 2 for one arm.
class DensityMatrix {
public:
    // Validates Hermiticity (1e-10), unit trace (1e-12) and positivity
    // (eigenvalues >= -1e-10).
    static DensityMatrix from_matrix(ComplexMatrix m);

    const ComplexMatrix& matrix() const { return m_; }
    std::size_t dim() const { return m_.dim(); }

    double purity() const;  // Tr rho^2

private:
    explicit DensityMatrix(ComplexMatrix m) : m_(std::move(m)) {}
    ComplexMatrix m_;
};

// Projectors onto the linear-polarization directions theta and theta + pi/2.
struct ProjectorPair {
    ComplexMatrix plus;
    ComplexMatrix minus;
    Angle angle;
};

ProjectorPair polarization_projectors(Angle theta);

DensityMatrix bell_state(BellKind kind);

DensityMatrix maximally_mixed(std::size_t dim);

// Tensor product of two one-arm states.
DensityMatrix product_state(const DensityMatrix& rho1, const DensityMatrix& rho2);

// Reduced state of one arm; arm is 1 or 2.
DensityMatrix partial_trace(const DensityMatrix& rho, int arm);

// <A(theta1) x A(theta2)> with A = E_plus - E_minus; clamped to [-1, 1].
double correlation(const DensityMatrix& rho, Angle theta1, Angle theta2);

// p(a1, a2) = Tr rho (E^{a1}(theta1) x E^{a2}(theta2)).
BivariateDistribution projective_bivariate(const DensityMatrix& rho, Angle theta1, Angle theta2);

// The four ideal compatible-pair experiments at the given settings.
ExperimentQuartet projective_quartet(const DensityMatrix& rho, const QuartetSettings& s);

}  // namespace bellsim
