#include <doctest.h>

#include <stdexcept>

#include <random>

#include "bellsim/joint.hpp"
#include "bellsim/povm.hpp"
#include "bellsim/quantum.hpp"

using namespace bellsim;

namespace {

QuadrivariateDistribution random_quad(std::mt19937_64& rng) {
    std::exponential_distribution<double> expo(1.0);
    std::array<double, 16> atoms{};
    for (double& a : atoms) a = expo(rng);
    return QuadrivariateDistribution::from_raw(atoms, /*normalize=*/true);
}

ExperimentQuartet noisy_pr_quartet(double weight) {
    auto biv = [&](double e) {
        const double c = weight * e;
        return BivariateDistribution::from_raw(
            {(1.0 + c) / 4.0, (1.0 - c) / 4.0, (1.0 - c) / 4.0, (1.0 + c) / 4.0});
    };
    return ExperimentQuartet(biv(1.0), biv(-1.0), biv(-1.0), biv(-1.0));
}

double witness_marginal_error(const FeasibilityResult& r, const ExperimentQuartet& q) {
    REQUIRE(r.witness.has_value());
    const ExperimentQuartet w = ExperimentQuartet::from_quad(*r.witness);
    double err = 0.0;
    for (PairKind k : kAllPairs) err = std::max(err, l_inf_distance(w.pair(k), q.pair(k)));
    return err;
}

}  // namespace

TEST_CASE("consistency report") {
    std::mt19937_64 rng(3);
    const ExperimentQuartet good = ExperimentQuartet::from_quad(random_quad(rng));
    const ConsistencyReport ok = check_consistency(good);
    CHECK(ok.pass);
    CHECK(ok.max_discrepancy <= 1e-15);

    const ExperimentQuartet quantum =
        projective_quartet(bell_state(BellKind::phi_plus), chsh_optimal_settings());
    CHECK(check_consistency(quantum).max_discrepancy <= 1e-12);

    auto b_60 = BivariateDistribution::from_raw({0.3, 0.3, 0.2, 0.2});
    auto b_40 = BivariateDistribution::from_raw({0.2, 0.2, 0.3, 0.3});
    const ConsistencyReport bad = check_consistency(ExperimentQuartet(b_60, b_40, b_60, b_60));
    CHECK_FALSE(bad.pass);
    CHECK(bad.max_discrepancy == doctest::Approx(0.2));
    CHECK_THROWS_AS(joint_exists(ExperimentQuartet(b_60, b_40, b_60, b_60)),
                    std::invalid_argument);
}

TEST_CASE("explicit quads are feasible and the witness reproduces the marginals") {
    std::mt19937_64 rng(13);
    for (int t = 0; t < 100; ++t) {
        const ExperimentQuartet q = ExperimentQuartet::from_quad(random_quad(rng));
        const FeasibilityResult r = joint_exists(q);
        REQUIRE(r.feasible());
        CHECK(witness_marginal_error(r, q) <= 1e-8);
    }
}

TEST_CASE("quantum optimal-angle quartet is infeasible with a violated certificate") {
    const ExperimentQuartet q =
        projective_quartet(bell_state(BellKind::phi_plus), chsh_optimal_settings());
    const FeasibilityResult r = joint_exists(q);
    REQUIRE_FALSE(r.feasible());
    REQUIRE(r.certificate.has_value());
    const double v = r.certificate->value;
    CHECK((v > 1e-9 || v < -1.0 - 1e-9));
    // Both extreme variants are violated by the same margin (sqrt(2)-1)/2.
    const double excess = std::max(v - 0.0, -1.0 - v);
    CHECK(excess == doctest::Approx((std::sqrt(2.0) - 1.0) / 2.0).epsilon(1e-9));
}

TEST_CASE("PR box: noiseless infeasible, boundary feasible") {
    CHECK_FALSE(joint_exists(noisy_pr_quartet(1.0)).feasible());
    const FeasibilityResult boundary = joint_exists(noisy_pr_quartet(0.5));
    CHECK(boundary.feasible());  // CHSH exactly 2
    CHECK(joint_exists(noisy_pr_quartet(0.49)).feasible());
    CHECK_FALSE(joint_exists(noisy_pr_quartet(0.51)).feasible());
}

TEST_CASE("fine equivalence on random and boundary-spanning quartets") {
    std::mt19937_64 rng(19);
    for (int t = 0; t < 300; ++t) {
        CHECK(fine_equivalence(ExperimentQuartet::from_quad(random_quad(rng))));
    }
    for (int i = 0; i <= 100; ++i) {
        CHECK(fine_equivalence(noisy_pr_quartet(i / 100.0)));
    }
}

TEST_CASE("LP decision is invariant under outcome flips and observable relabeling") {
    std::mt19937_64 rng(23);
    auto flip_first = [](const BivariateDistribution& b) {
        return BivariateDistribution::from_raw(
            {b.p(Outcome::minus, Outcome::plus), b.p(Outcome::minus, Outcome::minus),
             b.p(Outcome::plus, Outcome::plus), b.p(Outcome::plus, Outcome::minus)});
    };
    for (int t = 0; t < 50; ++t) {
        const double w = (t % 11) / 10.0;
        const ExperimentQuartet q = noisy_pr_quartet(w);
        const bool base = joint_exists(q).feasible();

        // Flip outcomes of A1 (affects the two experiments containing A1).
        const ExperimentQuartet flipped(flip_first(q.pair(PairKind::A1A2)),
                                        flip_first(q.pair(PairKind::A1B2)),
                                        q.pair(PairKind::B1A2), q.pair(PairKind::B1B2));
        CHECK(joint_exists(flipped).feasible() == base);

        // Swap the roles of A1 and B1.
        const ExperimentQuartet swapped(q.pair(PairKind::B1A2), q.pair(PairKind::B1B2),
                                        q.pair(PairKind::A1A2), q.pair(PairKind::A1B2));
        CHECK(joint_exists(swapped).feasible() == base);
    }
}

TEST_CASE("generalized-experiment marginals always admit a joint") {
    const QuartetSettings s = chsh_optimal_settings();
    const DensityMatrix rho = bell_state(BellKind::phi_plus);
    for (double g1 : {0.0, 0.3, 0.5, 1.0}) {
        for (double g2 : {0.0, 0.7, 1.0}) {
            const ExperimentConfig config{ArmConfig::make(g1, s.a1, s.b1),
                                          ArmConfig::make(g2, s.a2, s.b2), rho};
            const ExperimentQuartet q =
                ExperimentQuartet::from_quad(quad_probabilities(config));
            const FeasibilityResult r = joint_exists(q);
            CHECK(r.feasible());
        }
    }
}

TEST_CASE("product_joint on hand-built models") {
    // Single-point hidden variable, deterministic all-plus responses.
    QuasiObjectivisticModel point{
        HiddenVariableSpace::finite_grid({0.5}, {1.0}),
        ResponseFunction::constant(1.0), ResponseFunction::constant(1.0)};
    const QuartetSettings s = chsh_optimal_settings();
    const QuadrivariateDistribution j1 = product_joint(point, s);
    CHECK(j1.atom(Outcome::plus, Outcome::plus, Outcome::plus, Outcome::plus) ==
          doctest::Approx(1.0));

    // Two-point space, opposite deterministic responses.
    QuasiObjectivisticModel two{
        HiddenVariableSpace::finite_grid({0.2, 1.2}, {0.5, 0.5}),
        ResponseFunction("step", [](double lambda, const Angle&) { return lambda < 1.0 ? 1.0 : 0.0; },
                         true),
        ResponseFunction("step", [](double lambda, const Angle&) { return lambda < 1.0 ? 1.0 : 0.0; },
                         true)};
    const QuadrivariateDistribution j2 = product_joint(two, s);
    CHECK(j2.atom(Outcome::plus, Outcome::plus, Outcome::plus, Outcome::plus) ==
          doctest::Approx(0.5));
    CHECK(j2.atom(Outcome::minus, Outcome::minus, Outcome::minus, Outcome::minus) ==
          doctest::Approx(0.5));
}

TEST_CASE("product_joint of the saw-tooth model matches its bivariates and obeys Bell") {
    QuasiObjectivisticModel model{HiddenVariableSpace::uniform_grid(360),
                                  ResponseFunction::sawtooth(), ResponseFunction::sawtooth()};
    const QuartetSettings s = chsh_optimal_settings();
    const QuadrivariateDistribution joint = product_joint(model, s);
    const ExperimentQuartet from_joint = ExperimentQuartet::from_quad(joint);
    const ExperimentQuartet direct = hv_quartet(model, s);
    for (PairKind k : kAllPairs) {
        CHECK(l_inf_distance(from_joint.pair(k), direct.pair(k)) <= 1e-12);
    }
    CHECK(bell_lhs(from_joint.correlations()) <= 2.0 + 1e-9);
    CHECK(bchs_all_variants(from_joint).satisfied);
}
