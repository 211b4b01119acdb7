#include "bellsim/quantum.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace bellsim {

const char* bell_kind_name(BellKind k) {
    switch (k) {
        case BellKind::phi_plus: return "phi_plus";
        case BellKind::phi_minus: return "phi_minus";
        case BellKind::psi_plus: return "psi_plus";
        case BellKind::psi_minus: return "psi_minus";
    }
    return "?";
}

DensityMatrix DensityMatrix::from_matrix(ComplexMatrix m) {
    if (m.dim() != 2 && m.dim() != 4) {
        throw std::invalid_argument("DensityMatrix: dim must be 2 or 4");
    }
    if (m.hermiticity_error() > 1e-10) {
        throw std::invalid_argument("DensityMatrix: not Hermitian within tolerance");
    }
    if (std::abs(m.trace() - Complex{1.0, 0.0}) > 1e-12) {
        throw std::invalid_argument("DensityMatrix: trace must be 1 within 1e-12");
    }
    if (min_eigenvalue(m) < -1e-10) {
        throw std::invalid_argument("DensityMatrix: not positive semidefinite");
    }
    return DensityMatrix(std::move(m));
}

double DensityMatrix::purity() const { return trace_product(m_, m_).real(); }

ProjectorPair polarization_projectors(Angle theta) {
    const double c = std::cos(theta.radians());
    const double s = std::sin(theta.radians());
    ComplexMatrix plus(2);
    plus.at(0, 0) = c * c;
    plus.at(0, 1) = c * s;
    plus.at(1, 0) = c * s;
    plus.at(1, 1) = s * s;
    ComplexMatrix minus = ComplexMatrix::identity(2) - plus;
    return ProjectorPair{std::move(plus), std::move(minus), theta};
}

DensityMatrix bell_state(BellKind kind) {
    const double r = 1.0 / std::sqrt(2.0);
    std::array<Complex, 4> v{};
    switch (kind) {
        case BellKind::phi_plus: v = {r, 0.0, 0.0, r}; break;
        case BellKind::phi_minus: v = {r, 0.0, 0.0, -r}; break;
        case BellKind::psi_plus: v = {0.0, r, r, 0.0}; break;
        case BellKind::psi_minus: v = {0.0, r, -r, 0.0}; break;
    }
    ComplexMatrix m(4);
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) m.at(i, j) = v[i] * std::conj(v[j]);
    return DensityMatrix::from_matrix(std::move(m));
}

DensityMatrix maximally_mixed(std::size_t dim) {
    return DensityMatrix::from_matrix((1.0 / static_cast<double>(dim)) *
                                      ComplexMatrix::identity(dim));
}

DensityMatrix product_state(const DensityMatrix& rho1, const DensityMatrix& rho2) {
    if (rho1.dim() != 2 || rho2.dim() != 2) {
        throw std::invalid_argument("product_state: both inputs must be one-arm states");
    }
    return DensityMatrix::from_matrix(kron(rho1.matrix(), rho2.matrix()));
}

DensityMatrix partial_trace(const DensityMatrix& rho, int arm) {
    if (rho.dim() != 4) throw std::invalid_argument("partial_trace: pair state required");
    if (arm != 1 && arm != 2) throw std::invalid_argument("partial_trace: arm must be 1 or 2");
    ComplexMatrix r(2);
    const ComplexMatrix& m = rho.matrix();
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j)
            for (std::size_t k = 0; k < 2; ++k) {
                // arm 1 keeps the first tensor factor, arm 2 the second
                if (arm == 1)
                    r.at(i, j) += m.at(i * 2 + k, j * 2 + k);
                else
                    r.at(i, j) += m.at(k * 2 + i, k * 2 + j);
            }
    return DensityMatrix::from_matrix(std::move(r));
}

double correlation(const DensityMatrix& rho, Angle theta1, Angle theta2) {
    if (rho.dim() != 4) throw std::invalid_argument("correlation: pair state required");
    const ProjectorPair e1 = polarization_projectors(theta1);
    const ProjectorPair e2 = polarization_projectors(theta2);
    const ComplexMatrix obs = kron(e1.plus - e1.minus, e2.plus - e2.minus);
    const double v = trace_product(rho.matrix(), obs).real();
    return std::clamp(v, -1.0, 1.0);
}

BivariateDistribution projective_bivariate(const DensityMatrix& rho, Angle theta1, Angle theta2) {
    if (rho.dim() != 4) throw std::invalid_argument("projective_bivariate: pair state required");
    const ProjectorPair e1 = polarization_projectors(theta1);
    const ProjectorPair e2 = polarization_projectors(theta2);
    const ComplexMatrix* p1[2] = {&e1.plus, &e1.minus};
    const ComplexMatrix* p2[2] = {&e2.plus, &e2.minus};
    std::array<double, 4> t{};
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            t[i * 2 + j] = trace_product(rho.matrix(), kron(*p1[i], *p2[j])).real();
    return BivariateDistribution::from_raw(t, /*normalize=*/true);
}

ExperimentQuartet projective_quartet(const DensityMatrix& rho, const QuartetSettings& s) {
    return ExperimentQuartet(projective_bivariate(rho, s.a1, s.a2),
                             projective_bivariate(rho, s.a1, s.b2),
                             projective_bivariate(rho, s.b1, s.a2),
                             projective_bivariate(rho, s.b1, s.b2));
}

}  // namespace bellsim
