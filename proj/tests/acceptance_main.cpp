// Acceptance suite: one checked criterion per line, PASS/FAIL, nonzero exit
// when anything fails. Criterion 10 drives the installed CLI binary, passed
// in with --cli <path>.

#include <array>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "bellsim/io.hpp"
#include "bellsim/joint.hpp"
#include "bellsim/macrostate.hpp"
#include "bellsim/povm.hpp"
#include "oracles.hpp"

using namespace bellsim;
namespace fs = std::filesystem;

namespace {

int g_failures = 0;

void report(int criterion, bool pass, const std::string& detail) {
    std::printf("%s criterion %2d: %s\n", pass ? "PASS" : "FAIL", criterion, detail.c_str());
    if (!pass) ++g_failures;
}

DensityMatrix density_from_oracle2(const oracle::Mat<2>& m) {
    std::vector<Complex> entries(4);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) entries[i * 2 + j] = m[i][j];
    return DensityMatrix::from_matrix(ComplexMatrix(2, std::move(entries)));
}

// 1. CHSH maximum at the stated settings, checked against an independent
//    direct-trace computation.
void criterion_1() {
    const QuartetSettings s = chsh_optimal_settings();
    const double lhs =
        bell_lhs(projective_quartet(bell_state(BellKind::phi_plus), s).correlations());
    const double target = 2.0 * std::sqrt(2.0);

    const oracle::Mat<4> rho = oracle::phi_plus();
    const double t[4] = {0.0, M_PI / 4.0, -M_PI / 8.0, -3.0 * M_PI / 8.0};
    const double e_a1a2 = oracle::direct_correlation(rho, t[0], t[2]);
    const double e_a1b2 = oracle::direct_correlation(rho, t[0], t[3]);
    const double e_b1a2 = oracle::direct_correlation(rho, t[1], t[2]);
    const double e_b1b2 = oracle::direct_correlation(rho, t[1], t[3]);
    const double oracle_lhs = std::abs(e_a1a2 - e_a1b2) - e_b1b2 - e_b1a2;

    const bool pass = std::abs(lhs - target) <= 1e-9 && std::abs(oracle_lhs - target) <= 1e-9;
    std::ostringstream os;
    os << "CHSH maximum 2*sqrt(2): bell_lhs = " << lhs << ", direct-trace oracle = "
       << oracle_lhs;
    report(1, pass, os.str());
}

// 2. Structure of the one-arm detection table on random states.
void criterion_2() {
    std::mt19937_64 rng(1001);
    double worst = 0.0;
    bool zero_ok = true, sum_ok = true;
    for (int trial = 0; trial < 200; ++trial) {
        const oracle::Mat<2> m = oracle::random_density<2>(rng);
        const DensityMatrix rho = density_from_oracle2(m);
        std::uniform_real_distribution<double> unif(0.0, M_PI);
        const double theta = unif(rng), theta_prime = unif(rng);
        const double e_plus = oracle::trace(oracle::mul(m, oracle::rotation_projector(theta)))
                                  .real();
        const double f_plus =
            oracle::trace(oracle::mul(m, oracle::rotation_projector(theta_prime))).real();
        for (int g = 0; g <= 10; ++g) {
            const double gamma = g / 10.0;
            const BivariateDistribution table = arm_probabilities(
                rho, ArmConfig::make(gamma, Angle(theta), Angle(theta_prime)));
            if (table.p(Outcome::plus, Outcome::plus) != 0.0) zero_ok = false;
            worst = std::max(worst,
                             std::abs(table.marginal_first(Outcome::plus) - gamma * e_plus));
            worst = std::max(worst, std::abs(table.marginal_second(Outcome::plus) -
                                             (1.0 - gamma) * f_plus));
            double sum = 0.0;
            for (double v : table.entries()) sum += v;
            if (std::abs(sum - 1.0) > 1e-12) sum_ok = false;
        }
    }
    const bool pass = zero_ok && sum_ok && worst <= 1e-12;
    std::ostringstream os;
    os << "arm table: entry (+,+) always 0, marginals gamma<E+> and (1-gamma)<F+> "
          "(max deviation "
       << worst << "), rows normalized";
    report(2, pass, os.str());
}

// 3. POVM completeness, positivity and factorization over the gamma grid.
void criterion_3() {
    std::mt19937_64 rng(1003);
    std::uniform_real_distribution<double> unif(0.0, M_PI);
    double worst_complete = 0.0, worst_eig = 0.0, worst_factor = 0.0;

    for (int trial = 0; trial < 200; ++trial) {
        const ArmConfig config =
            ArmConfig::make((trial % 11) / 10.0, Angle(unif(rng)), Angle(unif(rng)));
        const ArmPOVM povm = arm_povm(config);
        ComplexMatrix sum(2);
        for (const ComplexMatrix& el : povm.elements()) {
            sum = sum + el;
            worst_eig = std::min(worst_eig, min_eigenvalue(el));
        }
        worst_complete =
            std::max(worst_complete, max_abs_diff(sum, ComplexMatrix::identity(2)));
    }

    for (int trial = 0; trial < 20; ++trial) {
        const Angle t1(unif(rng)), t1p(unif(rng)), t2(unif(rng)), t2p(unif(rng));
        for (int g1 = 0; g1 <= 10; ++g1) {
            for (int g2 = 0; g2 <= 10; ++g2) {
                const ExperimentConfig config{ArmConfig::make(g1 / 10.0, t1, t1p),
                                              ArmConfig::make(g2 / 10.0, t2, t2p),
                                              bell_state(BellKind::phi_plus)};
                const PairPOVM pair = pair_povm(config);
                const ArmPOVM r1 = arm_povm(config.arm1);
                const ArmPOVM r2 = arm_povm(config.arm2);
                ComplexMatrix sum(4);
                for (int i = 0; i < 2; ++i)
                    for (int j = 0; j < 2; ++j)
                        for (int k = 0; k < 2; ++k)
                            for (int l = 0; l < 2; ++l) {
                                const Outcome a1 = outcome_from_index(i),
                                              b1 = outcome_from_index(j),
                                              a2 = outcome_from_index(k),
                                              b2 = outcome_from_index(l);
                                const ComplexMatrix& el = pair.element(a1, b1, a2, b2);
                                sum = sum + el;
                                worst_eig = std::min(worst_eig, min_eigenvalue(el));
                                worst_factor = std::max(
                                    worst_factor,
                                    max_abs_diff(el, kron(r1.element(a1, b1),
                                                          r2.element(a2, b2))));
                            }
                worst_complete =
                    std::max(worst_complete, max_abs_diff(sum, ComplexMatrix::identity(4)));
            }
        }
    }
    const bool pass = worst_complete <= 1e-12 && worst_eig >= -1e-10 && worst_factor <= 1e-12;
    std::ostringstream os;
    os << "POVM laws: completeness " << worst_complete << ", min eigenvalue " << worst_eig
       << ", factorization " << worst_factor;
    report(3, pass, os.str());
}

// 4. Fine equivalence between LP feasibility and the BCHS variant sweep.
void criterion_4() {
    SplitMix64 rng(1004);
    std::size_t agreements = 0, total = 0, infeasible = 0;
    for (int i = 0; i < 1000; ++i) {
        std::array<double, 16> atoms{};
        for (double& a : atoms) a = -std::log(1.0 - rng.uniform());
        const ExperimentQuartet q = ExperimentQuartet::from_quad(
            QuadrivariateDistribution::from_raw(atoms, /*normalize=*/true));
        if (joint_exists(q).feasible() == bchs_all_variants(q).satisfied) ++agreements;
        ++total;
    }
    for (int i = 0; i < 1000; ++i) {
        const double w = i / 999.0;
        auto biv = [&](double e) {
            const double c = w * e;
            return BivariateDistribution::from_raw(
                {(1.0 + c) / 4.0, (1.0 - c) / 4.0, (1.0 - c) / 4.0, (1.0 + c) / 4.0});
        };
        const ExperimentQuartet q(biv(1.0), biv(-1.0), biv(-1.0), biv(-1.0));
        const bool lp = joint_exists(q).feasible();
        if (!lp) ++infeasible;
        if (lp == bchs_all_variants(q).satisfied) ++agreements;
        ++total;
    }
    const bool pass = agreements == total && infeasible > 0;
    std::ostringstream os;
    os << "Fine equivalence: " << agreements << "/" << total
       << " LP-vs-BCHS agreements (boundary-spanning set, " << infeasible << " infeasible)";
    report(4, pass, os.str());
}

// 5. Possessed-values bound, exhaustive and random.
void criterion_5() {
    bool pass = oracle::exhaustive_quadruple_max() <= 2.0;
    double worst = -1e300;
    for (int bits = 0; bits < 16; ++bits) {
        const OutcomeQuadruple q{(bits & 8) ? 1 : -1, (bits & 4) ? 1 : -1, (bits & 2) ? 1 : -1,
                                 (bits & 1) ? 1 : -1};
        worst = std::max(worst, finite_ensemble_chsh(std::vector<OutcomeQuadruple>{q}));
    }
    SplitMix64 rng(1005);
    std::vector<OutcomeQuadruple> ensemble;
    for (int t = 0; t < 100000; ++t) {
        ensemble.resize(1 + rng.size_below(64));
        for (auto& q : ensemble) {
            const std::uint64_t bits = rng.next_u64();
            q = {(bits & 8) ? 1 : -1, (bits & 4) ? 1 : -1, (bits & 2) ? 1 : -1,
                 (bits & 1) ? 1 : -1};
        }
        worst = std::max(worst, finite_ensemble_chsh(ensemble));
    }
    pass = pass && worst <= 2.0 + 1e-12;
    std::ostringstream os;
    os << "preassigned-values bound: max ensemble CHSH " << worst
       << " over 16 exhaustive types and 1e5 random ensembles";
    report(5, pass, os.str());
}

// 6. Random quasi-objectivistic models obey Bell and admit the product joint.
void criterion_6() {
    SplitMix64 rng(1006);
    double worst_chsh = -1e300, worst_marginal = 0.0;
    bool all_feasible = true;
    for (int t = 0; t < 10000; ++t) {
        const std::size_t n = 4 + rng.size_below(28);
        std::vector<double> lambda(n), weights(n);
        double sum = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            lambda[i] = (i + 0.5) * kPi / n;
            weights[i] = rng.uniform() + 1e-3;
            sum += weights[i];
        }
        double acc = 0.0;
        for (std::size_t i = 0; i + 1 < n; ++i) {
            weights[i] /= sum;
            acc += weights[i];
        }
        weights[n - 1] = 1.0 - acc;

        const QuartetSettings s{Angle(rng.uniform() * kPi), Angle(rng.uniform() * kPi),
                                Angle(rng.uniform() * kPi), Angle(rng.uniform() * kPi)};
        const bool deterministic = (t % 2) == 0;
        auto table = [&] {
            std::vector<double> v(n);
            for (double& x : v) x = deterministic ? std::floor(rng.uniform() * 2.0) : rng.uniform();
            return v;
        };
        std::map<double, std::vector<double>> t1, t2;
        t1[s.a1.radians()] = table();
        t1[s.b1.radians()] = table();
        t2[s.a2.radians()] = table();
        t2[s.b2.radians()] = table();
        const QuasiObjectivisticModel model{
            HiddenVariableSpace::finite_grid(std::move(lambda), std::move(weights)),
            ResponseFunction::tabulated(std::move(t1), n, deterministic),
            ResponseFunction::tabulated(std::move(t2), n, deterministic)};

        worst_chsh = std::max(worst_chsh, hv_chsh(model, s));
        const ExperimentQuartet quartet = hv_quartet(model, s);
        if (!joint_exists(quartet).feasible()) all_feasible = false;
        const ExperimentQuartet witness =
            ExperimentQuartet::from_quad(product_joint(model, s));
        for (PairKind k : kAllPairs) {
            worst_marginal =
                std::max(worst_marginal, l_inf_distance(witness.pair(k), quartet.pair(k)));
        }
    }
    const bool pass = worst_chsh <= 2.0 + 1e-9 && all_feasible && worst_marginal <= 1e-8;
    std::ostringstream os;
    os << "1e4 random LHV models: max exact CHSH " << worst_chsh
       << ", all LP-feasible, product-joint marginal error " << worst_marginal;
    report(6, pass, os.str());
}

// 7. Generalized experiment satisfies every variant in the interior; the
//    four standard Aspect quads are distinct and their cross-marginals
//    disagree.
void criterion_7() {
    const QuartetSettings s = chsh_optimal_settings();
    const DensityMatrix rho = bell_state(BellKind::phi_plus);

    bool interior_ok = true;
    for (int g1 = 1; g1 <= 9; ++g1) {
        for (int g2 = 1; g2 <= 9; ++g2) {
            const ExperimentConfig config{ArmConfig::make(g1 / 10.0, s.a1, s.b1),
                                          ArmConfig::make(g2 / 10.0, s.a2, s.b2), rho};
            const ExperimentQuartet q =
                ExperimentQuartet::from_quad(quad_probabilities(config));
            if (!bchs_all_variants(q).satisfied) interior_ok = false;
        }
    }

    std::array<QuadrivariateDistribution, 4> corners;
    const double gammas[2] = {1.0, 0.0};
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            const ExperimentConfig config{ArmConfig::make(gammas[i], s.a1, s.b1),
                                          ArmConfig::make(gammas[j], s.a2, s.b2), rho};
            corners[i * 2 + j] = quad_probabilities(config);
        }
    double min_pairwise = 1e300;
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j)
            min_pairwise = std::min(min_pairwise, l_inf_distance(corners[i], corners[j]));

    // Each corner experiment measures one pair ideally; its quad does not
    // return the projective bivariate of the other experiments as marginal.
    double max_cross_mismatch = 0.0;
    for (int c = 0; c < 4; ++c) {
        for (int p = 0; p < 4; ++p) {
            if (p == c) continue;
            const PairKind k = static_cast<PairKind>(p);
            const BivariateDistribution projective =
                projective_bivariate(rho, s.side1(k), s.side2(k));
            max_cross_mismatch = std::max(
                max_cross_mismatch, l_inf_distance(marginal_pair(corners[c], k), projective));
        }
    }
    const bool pass = interior_ok && min_pairwise > 1e-6 && max_cross_mismatch > 1e-3;
    std::ostringstream os;
    os << "generalized experiment: 81 interior quartets satisfy all variants, corner quads "
          "min pairwise Linf "
       << min_pairwise << ", max cross-marginal mismatch " << max_cross_mismatch;
    report(7, pass, os.str());
}

// 8. Contextual reproduction of the quantum statistics.
void criterion_8() {
    const QuartetSettings s = chsh_optimal_settings();
    const DensityMatrix rho = bell_state(BellKind::phi_plus);
    const MacrostateModel target = quantum_target_model(rho, s);

    double worst = 0.0;
    for (PairKind k : kAllPairs) {
        worst = std::max(worst, l_inf_distance(macro_bivariate(target, k),
                                               projective_bivariate(rho, s.side1(k), s.side2(k))));
    }
    const FeasibilityResult blocked = attempt_quad_construction(target);
    const bool cert_ok = !blocked.feasible() && blocked.certificate.has_value() &&
                         (blocked.certificate->value > 1e-9 ||
                          blocked.certificate->value < -1.0 - 1e-9);

    const QuasiObjectivisticModel quasi{HiddenVariableSpace::uniform_grid(720),
                                        ResponseFunction::sawtooth(),
                                        ResponseFunction::sawtooth()};
    const FeasibilityResult allowed = attempt_quad_construction(macrostate_from_quasi(quasi, s));

    const bool pass = worst <= 1e-9 && cert_ok && allowed.feasible();
    std::ostringstream os;
    os << "contextual model: quartet reproduction error " << worst
       << ", construction infeasible with BCHS certificate at Bell-violating settings, "
          "feasible when context-independent";
    report(8, pass, os.str());
}

// 9. Relaxation endpoints and the crossing of the classical bound.
void criterion_9() {
    const MacrostateModel target =
        quantum_target_model(bell_state(BellKind::phi_plus), chsh_optimal_settings());
    const ResponseFunction germ = ResponseFunction::noisy_sawtooth(0.9);
    RelaxationParams params;
    params.tau = 64.0;
    params.diffusion = 1.0;
    params.samples = 100000;
    params.seed = 1009;
    const std::vector<std::size_t> windows = {0, 16, 32, 48, 64, 128, 6400};
    const auto curve = relaxation_sweep(target, germ, germ, params, windows);

    const RelaxPoint& start = curve.front();
    const RelaxPoint& end = curve.back();
    const bool start_ok = start.chsh <= 2.0 + 3.0 * start.sigma;
    const bool end_ok = std::abs(end.chsh - 2.0 * std::sqrt(2.0)) <= 3.0 * end.sigma;
    bool crossed = false;
    for (std::size_t i = 1; i < curve.size(); ++i) {
        if (curve[i - 1].chsh <= 2.0 && curve[i].chsh > 2.0) crossed = true;
    }
    const bool pass = start_ok && end_ok && crossed;
    std::ostringstream os;
    os << "relaxation endpoints: window 0 CHSH " << start.chsh << " (sigma " << start.sigma
       << "), window 100*tau CHSH " << end.chsh << " (sigma " << end.sigma
       << "), curve crosses 2: " << (crossed ? "yes" : "no");
    report(9, pass, os.str());
}

// 10. CLI reproducibility across thread counts, plus the exit-code contract.
struct CliRun {
    int exit_code = -1;
    std::string output;
};

CliRun run_cli(const std::string& cli, const std::string& args, const fs::path& out_file) {
    const std::string cmd = cli + " " + args + " > /dev/null 2>&1";
    const int rc = std::system(cmd.c_str());
    CliRun run;
    run.exit_code = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
    if (!out_file.empty() && fs::exists(out_file)) {
        std::ifstream in(out_file, std::ios::binary);
        std::ostringstream ss;
        ss << in.rdbuf();
        run.output = ss.str();
    }
    return run;
}

void criterion_10(const std::string& cli) {
    if (cli.empty()) {
        report(10, false, "CLI path not provided (--cli)");
        return;
    }
    const fs::path dir = fs::temp_directory_path() / "bellsim_acceptance";
    fs::create_directories(dir);

    const std::vector<std::pair<std::string, std::string>> jobs = {
        {"sweep", "gamma-sweep --grid 0 0.5 1 --seed 99"},
        {"hv", "hv-run --method mc -n 200000 --seed 99"},
        {"relax", "relax-sweep -n 20000 --windows 0 32 6400 --seed 99"},
        {"macro", "macro-run --seed 99"},
    };
    bool identical = true;
    for (const auto& [name, args] : jobs) {
        std::string reference;
        for (unsigned threads : {1u, 4u, 8u}) {
            const fs::path out = dir / (name + "_" + std::to_string(threads) + ".csv");
            std::string full = args + " -o " + out.string();
            if (name != "macro") full += " --threads " + std::to_string(threads);
            const CliRun run = run_cli(cli, full, out);
            if (run.exit_code != 0 || run.output.empty()) {
                identical = false;
                break;
            }
            if (threads == 1u) {
                reference = run.output;
            } else if (run.output != reference) {
                identical = false;
            }
        }
    }

    // Exit-code contract: malformed input 2, infeasible joint 3.
    const fs::path bad_json = dir / "bad.json";
    std::ofstream(bad_json) << "{ not json";
    const CliRun bad = run_cli(cli, "joint --input " + bad_json.string(), fs::path());

    const fs::path quantum_json = dir / "quantum_quartet.json";
    {
        const ExperimentQuartet q =
            projective_quartet(bell_state(BellKind::phi_plus), chsh_optimal_settings());
        std::ofstream(quantum_json) << io::quartet_to_json(q).dump(2);
    }
    const fs::path joint_out = dir / "joint.csv";
    const CliRun infeasible =
        run_cli(cli, "joint --input " + quantum_json.string() + " -o " + joint_out.string(),
                joint_out);

    const bool exit_codes_ok = bad.exit_code == 2 && infeasible.exit_code == 3;
    const bool pass = identical && exit_codes_ok;
    std::ostringstream os;
    os << "CLI: byte-identical outputs at 1/4/8 threads "
       << (identical ? "yes" : "NO") << "; exit codes (malformed=2, infeasible=3) "
       << (exit_codes_ok ? "ok" : "WRONG");
    report(10, pass, os.str());
}

}  // namespace

int main(int argc, char** argv) {
    std::string cli;
    for (int i = 1; i + 1 < argc; ++i) {
        if (std::string(argv[i]) == "--cli") cli = argv[i + 1];
    }

    criterion_1();
    criterion_2();
    criterion_3();
    criterion_4();
    criterion_5();
    criterion_6();
    criterion_7();
    criterion_8();
    criterion_9();
    criterion_10(cli);

    if (g_failures == 0) {
        std::printf("all acceptance criteria passed\n");
        return 0;
    }
    std::printf("%d acceptance criteria FAILED\n", g_failures);
    return 1;
}
