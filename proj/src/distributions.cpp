#include "bellsim/distributions.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace bellsim {

QuartetSettings chsh_optimal_settings() {
    return QuartetSettings{Angle(0.0), Angle(kPi / 4.0), Angle(-kPi / 8.0),
                           Angle(-3.0 * kPi / 8.0)};
}

namespace {

template <std::size_t N>
std::array<double, N> checked_table(const std::array<double, N>& raw, bool normalize,
                                    double sum_tol, const char* what) {
    std::array<double, N> t = raw;
    for (double& v : t) {
        if (std::isnan(v)) throw std::invalid_argument(std::string(what) + ": NaN entry");
        if (v < -1e-12) throw std::invalid_argument(std::string(what) + ": negative entry");
        if (v < 0.0) v = 0.0;
    }
    double sum = 0.0;
    for (double v : t) sum += v;
    if (normalize) {
        if (sum <= 0.0) throw std::invalid_argument(std::string(what) + ": zero total");
        for (double& v : t) v /= sum;
    } else if (std::abs(sum - 1.0) > sum_tol) {
        throw std::invalid_argument(std::string(what) + ": entries do not sum to 1");
    }
    return t;
}

}  // namespace

BivariateDistribution::BivariateDistribution() { entries_.fill(0.25); }

BivariateDistribution BivariateDistribution::from_raw(const std::array<double, 4>& entries,
                                                      bool normalize) {
    BivariateDistribution b;
    b.entries_ = checked_table(entries, normalize, 1e-12, "BivariateDistribution");
    return b;
}

double BivariateDistribution::marginal_first(Outcome o) const {
    return p(o, Outcome::plus) + p(o, Outcome::minus);
}

double BivariateDistribution::marginal_second(Outcome o) const {
    return p(Outcome::plus, o) + p(Outcome::minus, o);
}

double correlation_of(const BivariateDistribution& b) {
    return b.p(Outcome::plus, Outcome::plus) + b.p(Outcome::minus, Outcome::minus) -
           b.p(Outcome::plus, Outcome::minus) - b.p(Outcome::minus, Outcome::plus);
}

double l_inf_distance(const BivariateDistribution& a, const BivariateDistribution& b) {
    double d = 0.0;
    for (int i = 0; i < 4; ++i) d = std::max(d, std::abs(a.entries()[i] - b.entries()[i]));
    return d;
}

QuadrivariateDistribution::QuadrivariateDistribution() { atoms_.fill(1.0 / 16.0); }

QuadrivariateDistribution QuadrivariateDistribution::from_raw(const std::array<double, 16>& atoms,
                                                              bool normalize) {
    QuadrivariateDistribution q;
    q.atoms_ = checked_table(atoms, normalize, 1e-9, "QuadrivariateDistribution");
    return q;
}

double l_inf_distance(const QuadrivariateDistribution& a, const QuadrivariateDistribution& b) {
    double d = 0.0;
    for (int i = 0; i < 16; ++i) d = std::max(d, std::abs(a.atom(i) - b.atom(i)));
    return d;
}

BivariateDistribution marginal_pair(const QuadrivariateDistribution& quad, PairKind pair) {
    std::array<double, 4> m{};
    for (int i = 0; i < 16; ++i) {
        const int a1 = (i >> 3) & 1, b1 = (i >> 2) & 1, a2 = (i >> 1) & 1, b2 = i & 1;
        int first = 0, second = 0;
        switch (pair) {
            case PairKind::A1A2: first = a1; second = a2; break;
            case PairKind::A1B2: first = a1; second = b2; break;
            case PairKind::B1A2: first = b1; second = a2; break;
            case PairKind::B1B2: first = b1; second = b2; break;
        }
        m[first * 2 + second] += quad.atom(i);
    }
    return BivariateDistribution::from_raw(m, /*normalize=*/true);
}

ExperimentQuartet::ExperimentQuartet(BivariateDistribution a1a2, BivariateDistribution a1b2,
                                     BivariateDistribution b1a2, BivariateDistribution b1b2)
    : pairs_{a1a2, a1b2, b1a2, b1b2} {}

ExperimentQuartet ExperimentQuartet::from_quad(const QuadrivariateDistribution& quad) {
    return ExperimentQuartet(marginal_pair(quad, PairKind::A1A2),
                             marginal_pair(quad, PairKind::A1B2),
                             marginal_pair(quad, PairKind::B1A2),
                             marginal_pair(quad, PairKind::B1B2));
}

CorrelationQuad ExperimentQuartet::correlations() const {
    CorrelationQuad c;
    c.e_a1a2 = correlation_of(pair(PairKind::A1A2));
    c.e_a1b2 = correlation_of(pair(PairKind::A1B2));
    c.e_b1a2 = correlation_of(pair(PairKind::B1A2));
    c.e_b1b2 = correlation_of(pair(PairKind::B1B2));
    return c;
}

std::array<double, 4> ExperimentQuartet::singles() const {
    const double a1 = 0.5 * (pair(PairKind::A1A2).marginal_first(Outcome::plus) +
                             pair(PairKind::A1B2).marginal_first(Outcome::plus));
    const double b1 = 0.5 * (pair(PairKind::B1A2).marginal_first(Outcome::plus) +
                             pair(PairKind::B1B2).marginal_first(Outcome::plus));
    const double a2 = 0.5 * (pair(PairKind::A1A2).marginal_second(Outcome::plus) +
                             pair(PairKind::B1A2).marginal_second(Outcome::plus));
    const double b2 = 0.5 * (pair(PairKind::A1B2).marginal_second(Outcome::plus) +
                             pair(PairKind::B1B2).marginal_second(Outcome::plus));
    return {a1, b1, a2, b2};
}

double ExperimentQuartet::singles_discrepancy() const {
    const double a1 = std::abs(pair(PairKind::A1A2).marginal_first(Outcome::plus) -
                               pair(PairKind::A1B2).marginal_first(Outcome::plus));
    const double b1 = std::abs(pair(PairKind::B1A2).marginal_first(Outcome::plus) -
                               pair(PairKind::B1B2).marginal_first(Outcome::plus));
    const double a2 = std::abs(pair(PairKind::A1A2).marginal_second(Outcome::plus) -
                               pair(PairKind::B1A2).marginal_second(Outcome::plus));
    const double b2 = std::abs(pair(PairKind::A1B2).marginal_second(Outcome::plus) -
                               pair(PairKind::B1B2).marginal_second(Outcome::plus));
    return std::max(std::max(a1, b1), std::max(a2, b2));
}

}  // namespace bellsim
