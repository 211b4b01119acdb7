#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <string>

#include "bellsim/angle.hpp"

namespace bellsim {

enum class Outcome : int { plus = 0, minus = 1 };

inline int outcome_value(Outcome o) { return o == Outcome::plus ? +1 : -1; }
inline Outcome outcome_from_index(int i) { return i == 0 ? Outcome::plus : Outcome::minus; }
inline char outcome_char(Outcome o) { return o == Outcome::plus ? '+' : '-'; }

// The four compatible observable pairs of a Bell experiment, in the fixed
// order used throughout: (A1,A2), (A1,B2), (B1,A2), (B1,B2).
enum class PairKind : int { A1A2 = 0, A1B2 = 1, B1A2 = 2, B1B2 = 3 };

inline const char* pair_name(PairKind k) {
    switch (k) {
        case PairKind::A1A2: return "A1A2";
        case PairKind::A1B2: return "A1B2";
        case PairKind::B1A2: return "B1A2";
        case PairKind::B1B2: return "B1B2";
    }
    return "?";
}

constexpr std::array<PairKind, 4> kAllPairs = {PairKind::A1A2, PairKind::A1B2, PairKind::B1A2,
                                               PairKind::B1B2};

// Measurement directions for the four observables A1, B1 (side 1) and
// A2, B2 (side 2).
struct QuartetSettings {
    Angle a1, b1, a2, b2;

    Angle side1(PairKind k) const {
        return (k == PairKind::A1A2 || k == PairKind::A1B2) ? a1 : b1;
    }
    Angle side2(PairKind k) const {
        return (k == PairKind::A1A2 || k == PairKind::B1A2) ? a2 : b2;
    }
};

// Directions at which the CHSH expression for the phi_plus state reaches
// its quantum maximum 2*sqrt(2).
QuartetSettings chsh_optimal_settings();

// Normalized outcome table over {+,-}^2.
class BivariateDistribution {
public:
    BivariateDistribution();  // uniform

    // Clamps entries in [-1e-12, 0) to zero, rejects anything more negative,
    // and requires the sum to be 1 within 1e-12 unless normalize is set.
    static BivariateDistribution from_raw(const std::array<double, 4>& entries,
                                          bool normalize = false);

    double p(Outcome first, Outcome second) const {
        return entries_[static_cast<int>(first) * 2 + static_cast<int>(second)];
    }

    double marginal_first(Outcome o) const;
    double marginal_second(Outcome o) const;

    const std::array<double, 4>& entries() const { return entries_; }

private:
    std::array<double, 4> entries_;
};

double correlation_of(const BivariateDistribution& b);

double l_inf_distance(const BivariateDistribution& a, const BivariateDistribution& b);

// Normalized outcome table over {+,-}^4, atom index bits (a1,b1,a2,b2),
// most significant bit a1, bit value 1 = minus.
class QuadrivariateDistribution {
public:
    QuadrivariateDistribution();  // uniform

    static QuadrivariateDistribution from_raw(const std::array<double, 16>& atoms,
                                              bool normalize = false);

    static int index(Outcome a1, Outcome b1, Outcome a2, Outcome b2) {
        return (static_cast<int>(a1) << 3) | (static_cast<int>(b1) << 2) |
               (static_cast<int>(a2) << 1) | static_cast<int>(b2);
    }

    double atom(Outcome a1, Outcome b1, Outcome a2, Outcome b2) const {
        return atoms_[index(a1, b1, a2, b2)];
    }
    double atom(int idx) const { return atoms_[idx]; }

    const std::array<double, 16>& atoms() const { return atoms_; }

private:
    std::array<double, 16> atoms_;
};

double l_inf_distance(const QuadrivariateDistribution& a, const QuadrivariateDistribution& b);

// Sums out the two untouched outcome indices and renormalizes.
BivariateDistribution marginal_pair(const QuadrivariateDistribution& quad, PairKind pair);

// One joint outcome quadruple with a preassigned value per observable.
struct OutcomeQuadruple {
    int a1, b1, a2, b2;  // each +1 or -1
};

// The ensemble correlations entering Bell's inequality.
struct CorrelationQuad {
    double e_a1a2 = 0.0, e_a1b2 = 0.0, e_b1a2 = 0.0, e_b1b2 = 0.0;
};

// Bivariate statistics of the four compatible-pair experiments.
class ExperimentQuartet {
public:
    ExperimentQuartet() = default;
    ExperimentQuartet(BivariateDistribution a1a2, BivariateDistribution a1b2,
                      BivariateDistribution b1a2, BivariateDistribution b1b2);

    static ExperimentQuartet from_quad(const QuadrivariateDistribution& quad);

    const BivariateDistribution& pair(PairKind k) const {
        return pairs_[static_cast<int>(k)];
    }

    CorrelationQuad correlations() const;

    // Single-observable +1 marginals, averaged over the two experiments that
    // contain the observable. Order: A1, B1, A2, B2.
    std::array<double, 4> singles() const;

    // Largest disagreement between the two marginal estimates of any single
    // observable (0 for quartets derived from one joint distribution).
    double singles_discrepancy() const;

private:
    std::array<BivariateDistribution, 4> pairs_;
};

}  // namespace bellsim
