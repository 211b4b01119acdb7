#pragma once

#include <span>
#include <string>
#include <vector>

#include "bellsim/distributions.hpp"

namespace bellsim {

// |<A1A2> - <A1B2>| - <B1B2> - <B1A2>; the classical bound is 2.
double bell_lhs(const CorrelationQuad& c);

// p(b1,a2) + p(b1,b2) + p(a1,b2) - p(a1,a2) - p(b1) - p(b2), every
// probability taken at outcome +. Lies in [-1, 0] whenever a joint
// distribution of all four observables exists.
double bchs_value(const ExperimentQuartet& quartet, double singles_b1, double singles_b2);

// One relabeled form of the BCHS expression, stored as an affine functional
// over the eight quartet coordinates (pair ++ probabilities in kAllPairs
// order, then + singles of A1, B1, A2, B2) plus a constant. All
// coefficients are integers by construction.
struct BchsVariant {
    std::array<int, 4> pair_coeff;
    std::array<int, 4> single_coeff;
    int constant;
    std::string label;

    double evaluate(const std::array<double, 4>& pair_pp,
                    const std::array<double, 4>& singles) const;
};

// The deduplicated orbit of the BCHS expression under exchanging the two
// observables of each side and flipping outcomes per observable.
const std::vector<BchsVariant>& bchs_variants();

struct BchsReport {
    double worst_low = 0.0;    // smallest variant value (must stay >= -1)
    double worst_high = 0.0;   // largest variant value (must stay <= 0)
    bool satisfied = false;
    int worst_low_index = -1;
    int worst_high_index = -1;
    std::vector<double> values;

    // Index and signed amount of the largest excursion outside [-1, 0],
    // or (-1, 0) when satisfied.
    int most_violated_index() const;
    double violation() const;
};

// Evaluates every variant; satisfied iff all values lie in
// [-1 - tol, 0 + tol]. Throws if the quartet's single-observable marginals
// disagree beyond consistency_tol.
BchsReport bchs_all_variants(const ExperimentQuartet& quartet, double tol = 1e-9,
                             double consistency_tol = 1e-9);

// Ensemble CHSH value from preassigned-outcome quadruples: the four
// correlations are averages over the same list, so the result never
// exceeds 2 (up to round-off).
double finite_ensemble_chsh(std::span<const OutcomeQuadruple> quadruples);

}  // namespace bellsim
