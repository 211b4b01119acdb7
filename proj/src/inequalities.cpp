#include "bellsim/inequalities.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace bellsim {

double bell_lhs(const CorrelationQuad& c) {
    return std::abs(c.e_a1a2 - c.e_a1b2) - c.e_b1b2 - c.e_b1a2;
}

double bchs_value(const ExperimentQuartet& quartet, double singles_b1, double singles_b2) {
    if (!(singles_b1 >= 0.0 && singles_b1 <= 1.0 && singles_b2 >= 0.0 && singles_b2 <= 1.0)) {
        throw std::invalid_argument("bchs_value: singles must lie in [0, 1]");
    }
    const auto pp = [&](PairKind k) {
        return quartet.pair(k).p(Outcome::plus, Outcome::plus);
    };
    return pp(PairKind::B1A2) + pp(PairKind::B1B2) + pp(PairKind::A1B2) - pp(PairKind::A1A2) -
           singles_b1 - singles_b2;
}

double BchsVariant::evaluate(const std::array<double, 4>& pair_pp,
                             const std::array<double, 4>& singles) const {
    double v = static_cast<double>(constant);
    for (int i = 0; i < 4; ++i) v += pair_coeff[i] * pair_pp[i];
    for (int i = 0; i < 4; ++i) v += single_coeff[i] * singles[i];
    return v;
}

namespace {

// Observables in singles order: A1=0, B1=1, A2=2, B2=3.
constexpr int kA1 = 0, kB1 = 1, kA2 = 2, kB2 = 3;

int pair_index(int side1_obs, int side2_obs) {
    if (side1_obs == kA1) return side2_obs == kA2 ? 0 : 1;
    return side2_obs == kA2 ? 2 : 3;
}

struct VariantBuilder {
    std::array<int, 4> pair{};
    std::array<int, 4> single{};
    int constant = 0;
    const std::array<int, 4>& flips;

    explicit VariantBuilder(const std::array<int, 4>& f) : flips(f) {}

    // Adds sign * p(U = +after flip, V = +after flip) expanded into the
    // unflipped coordinates.
    void add_pair(int u, int v, int sign) {
        const int fu = flips[u], fv = flips[v];
        const int pi = pair_index(u, v);
        if (!fu && !fv) {
            pair[pi] += sign;
        } else if (fu && !fv) {
            single[v] += sign;
            pair[pi] -= sign;
        } else if (!fu && fv) {
            single[u] += sign;
            pair[pi] -= sign;
        } else {
            constant += sign;
            single[u] -= sign;
            single[v] -= sign;
            pair[pi] += sign;
        }
    }

    void add_single(int u, int sign) {
        if (flips[u]) {
            constant += sign;
            single[u] -= sign;
        } else {
            single[u] += sign;
        }
    }
};

std::vector<BchsVariant> build_variants() {
    std::vector<BchsVariant> out;
    const char* obs_name[4] = {"A1", "B1", "A2", "B2"};
    for (int x1 : {kA1, kB1}) {
        for (int x2 : {kA2, kB2}) {
            const int x1_alt = (x1 == kA1) ? kB1 : kA1;
            const int x2_alt = (x2 == kA2) ? kB2 : kA2;
            for (int mask = 0; mask < 16; ++mask) {
                const std::array<int, 4> flips = {(mask >> 0) & 1, (mask >> 1) & 1,
                                                  (mask >> 2) & 1, (mask >> 3) & 1};
                VariantBuilder b(flips);
                // Same shape as the reference expression: in its terms the
                // roles are x1 = B1, x2 = B2.
                b.add_pair(x1, x2_alt, +1);
                b.add_pair(x1, x2, +1);
                b.add_pair(x1_alt, x2, +1);
                b.add_pair(x1_alt, x2_alt, -1);
                b.add_single(x1, -1);
                b.add_single(x2, -1);

                const bool duplicate = std::any_of(out.begin(), out.end(), [&](const BchsVariant& v) {
                    return v.pair_coeff == b.pair && v.single_coeff == b.single &&
                           v.constant == b.constant;
                });
                if (duplicate) continue;

                BchsVariant v;
                v.pair_coeff = b.pair;
                v.single_coeff = b.single;
                v.constant = b.constant;
                std::string label = std::string("x1=") + obs_name[x1] + " x2=" + obs_name[x2] +
                                    " flips=";
                for (int i = 0; i < 4; ++i) label += flips[i] ? '-' : '+';
                v.label = std::move(label);
                out.push_back(std::move(v));
            }
        }
    }
    return out;
}

}  // namespace

const std::vector<BchsVariant>& bchs_variants() {
    static const std::vector<BchsVariant> variants = build_variants();
    return variants;
}

int BchsReport::most_violated_index() const {
    const double low_excess = -1.0 - worst_low;
    const double high_excess = worst_high - 0.0;
    if (low_excess <= 0.0 && high_excess <= 0.0) return -1;
    return low_excess > high_excess ? worst_low_index : worst_high_index;
}

double BchsReport::violation() const {
    return std::max(std::max(-1.0 - worst_low, worst_high), 0.0);
}

BchsReport bchs_all_variants(const ExperimentQuartet& quartet, double tol,
                             double consistency_tol) {
    if (quartet.singles_discrepancy() > consistency_tol) {
        throw std::invalid_argument("bchs_all_variants: inconsistent single-observable marginals");
    }
    const std::array<double, 4> singles = quartet.singles();
    std::array<double, 4> pair_pp;
    for (int i = 0; i < 4; ++i) {
        pair_pp[i] = quartet.pair(static_cast<PairKind>(i)).p(Outcome::plus, Outcome::plus);
    }

    const auto& variants = bchs_variants();
    BchsReport r;
    r.values.reserve(variants.size());
    r.worst_low = 1e300;
    r.worst_high = -1e300;
    for (std::size_t i = 0; i < variants.size(); ++i) {
        const double v = variants[i].evaluate(pair_pp, singles);
        r.values.push_back(v);
        if (v < r.worst_low) {
            r.worst_low = v;
            r.worst_low_index = static_cast<int>(i);
        }
        if (v > r.worst_high) {
            r.worst_high = v;
            r.worst_high_index = static_cast<int>(i);
        }
    }
    r.satisfied = r.worst_low >= -1.0 - tol && r.worst_high <= tol;
    return r;
}

double finite_ensemble_chsh(std::span<const OutcomeQuadruple> quadruples) {
    if (quadruples.empty()) {
        throw std::invalid_argument("finite_ensemble_chsh: empty ensemble");
    }
    double s_a1a2 = 0.0, s_a1b2 = 0.0, s_b1a2 = 0.0, s_b1b2 = 0.0;
    for (const OutcomeQuadruple& q : quadruples) {
        if (q.a1 * q.a1 != 1 || q.b1 * q.b1 != 1 || q.a2 * q.a2 != 1 || q.b2 * q.b2 != 1) {
            throw std::invalid_argument("finite_ensemble_chsh: outcomes must be +1 or -1");
        }
        s_a1a2 += q.a1 * q.a2;
        s_a1b2 += q.a1 * q.b2;
        s_b1a2 += q.b1 * q.a2;
        s_b1b2 += q.b1 * q.b2;
    }
    const double n = static_cast<double>(quadruples.size());
    CorrelationQuad c;
    c.e_a1a2 = s_a1a2 / n;
    c.e_a1b2 = s_a1b2 / n;
    c.e_b1a2 = s_b1a2 / n;
    c.e_b1b2 = s_b1b2 / n;
    return bell_lhs(c);
}

}  // namespace bellsim
