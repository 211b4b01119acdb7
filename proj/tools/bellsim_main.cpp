// bellsim: simulate Bell and generalized Aspect experiments, evaluate
// Bell/BCHS inequalities, decide joint-distribution existence by LP, and run
// hidden-variables and contextual macrostate models.
//
// Exit codes: 0 success, 2 input error, 3 domain-negative result (no joint
// distribution exists / a checked property failed).

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "bellsim/io.hpp"
#include "bellsim/joint.hpp"
#include "bellsim/macrostate.hpp"
#include "bellsim/parallel.hpp"
#include "bellsim/version.hpp"

using namespace bellsim;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInputError = 2;
constexpr int kExitDomainNegative = 3;

struct OutputTarget {
    std::string path = "-";

    int write(const std::string& content) const {
        if (path == "-") {
            std::cout << content;
            return kExitOk;
        }
        std::ofstream out(path, std::ios::binary);
        if (!out) {
            std::cerr << "error: cannot open output file \"" << path << "\"\n";
            return kExitInputError;
        }
        out << content;
        return kExitOk;
    }
};

std::string fmt(double v) { return io::format_number(v); }

QuartetSettings settings_from_degrees(double a1, double b1, double a2, double b2) {
    return QuartetSettings{Angle::from_degrees(a1), Angle::from_degrees(b1),
                           Angle::from_degrees(a2), Angle::from_degrees(b2)};
}

DensityMatrix state_by_name(const std::string& name) {
    return io::density_from_json(io::json(name));
}

void append_quartet_summary(std::ostringstream& os, const ExperimentQuartet& quartet,
                            const char* prefix) {
    const BchsReport report = bchs_all_variants(quartet);
    os << prefix << "_bell_lhs," << fmt(bell_lhs(quartet.correlations())) << "\n";
    os << prefix << "_bchs_worst_low," << fmt(report.worst_low) << "\n";
    os << prefix << "_bchs_worst_high," << fmt(report.worst_high) << "\n";
    os << prefix << "_bchs_satisfied," << (report.satisfied ? "yes" : "no") << "\n";
}

// --- aspect -----------------------------------------------------------------

struct AspectOptions {
    std::string config_path;
    double gamma1 = 0.5, gamma2 = 0.5;
    std::string state = "phi_plus";
    double a1 = 0.0, b1 = 45.0, a2 = -22.5, b2 = -67.5;  // degrees
    std::string format = "csv";
};

int run_aspect(const AspectOptions& opt, const OutputTarget& output, std::uint64_t seed) {
    ExperimentConfig config = [&] {
        if (!opt.config_path.empty()) {
            return io::experiment_config_from_json(io::load_json_file(opt.config_path));
        }
        const QuartetSettings s = settings_from_degrees(opt.a1, opt.b1, opt.a2, opt.b2);
        return ExperimentConfig{ArmConfig::make(opt.gamma1, s.a1, s.b1),
                                ArmConfig::make(opt.gamma2, s.a2, s.b2),
                                state_by_name(opt.state)};
    }();

    const QuadrivariateDistribution quad = quad_probabilities(config);
    const ExperimentQuartet quad_marginals = ExperimentQuartet::from_quad(quad);
    const QuartetSettings s{config.arm1.theta, config.arm1.theta_prime, config.arm2.theta,
                            config.arm2.theta_prime};
    const ExperimentQuartet projective = projective_quartet(config.state, s);
    const FeasibilityResult joint = joint_exists(quad_marginals);

    std::ostringstream os;
    const std::vector<std::pair<std::string, std::string>> params = {
        {"gamma1", fmt(config.arm1.gamma)},
        {"gamma2", fmt(config.arm2.gamma)},
        {"theta1", fmt(config.arm1.theta.radians())},
        {"theta1_prime", fmt(config.arm1.theta_prime.radians())},
        {"theta2", fmt(config.arm2.theta.radians())},
        {"theta2_prime", fmt(config.arm2.theta_prime.radians())},
    };

    if (opt.format == "json") {
        io::json j;
        j["metadata"] = {{"tool", "bellsim"},
                         {"version", kVersion},
                         {"subcommand", "aspect"},
                         {"seed", seed}};
        for (const auto& [k, v] : params) j["metadata"][k] = v;
        j["quad"] = io::quad_to_json(quad);
        j["quad_marginals"] = io::quartet_to_json(quad_marginals);
        j["projective_quartet"] = io::quartet_to_json(projective);
        j["quad_marginals_bell_lhs"] = bell_lhs(quad_marginals.correlations());
        j["projective_bell_lhs"] = bell_lhs(projective.correlations());
        j["joint_exists"] = joint.feasible() ? "feasible" : "infeasible";
        return output.write(j.dump(2) + "\n");
    }

    io::write_metadata(os, "aspect", seed, params);
    os << "record,value\n";
    append_quartet_summary(os, quad_marginals, "quad_marginals");
    append_quartet_summary(os, projective, "projective");
    os << "joint_exists," << (joint.feasible() ? "feasible" : "infeasible") << "\n";
    os << "\n";
    io::write_quad_csv(os, quad);
    os << "\n";
    io::write_quartet_csv(os, quad_marginals);
    return output.write(os.str());
}

// --- gamma-sweep ------------------------------------------------------------

struct GammaSweepOptions {
    std::vector<double> grid = {0.0, 0.25, 0.5, 0.75, 1.0};
    std::string state = "phi_plus";
    double a1 = 0.0, b1 = 45.0, a2 = -22.5, b2 = -67.5;
    unsigned threads = 1;
};

int run_gamma_sweep(const GammaSweepOptions& opt, const OutputTarget& output,
                    std::uint64_t seed) {
    for (double g : opt.grid) {
        if (!(g >= 0.0 && g <= 1.0)) {
            std::cerr << "error: gamma grid values must lie in [0, 1]\n";
            return kExitInputError;
        }
    }
    if (opt.grid.empty()) {
        std::cerr << "error: gamma grid must not be empty\n";
        return kExitInputError;
    }
    const QuartetSettings s = settings_from_degrees(opt.a1, opt.b1, opt.a2, opt.b2);
    const DensityMatrix rho = state_by_name(opt.state);

    struct Row {
        double g1, g2, lhs;
        bool feasible;
    };
    const std::size_t n = opt.grid.size() * opt.grid.size();
    std::vector<Row> rows(n);
    parallel_for_units(n, opt.threads, [&](std::size_t idx) {
        const double g1 = opt.grid[idx / opt.grid.size()];
        const double g2 = opt.grid[idx % opt.grid.size()];
        const ExperimentConfig config{ArmConfig::make(g1, s.a1, s.b1),
                                      ArmConfig::make(g2, s.a2, s.b2), rho};
        const ExperimentQuartet quartet = ExperimentQuartet::from_quad(quad_probabilities(config));
        rows[idx] = Row{g1, g2, bell_lhs(quartet.correlations()),
                        joint_exists(quartet).feasible()};
    });

    std::ostringstream os;
    std::ostringstream grid_str;
    for (std::size_t i = 0; i < opt.grid.size(); ++i) {
        grid_str << (i ? " " : "") << fmt(opt.grid[i]);
    }
    io::write_metadata(os, "gamma-sweep", seed,
                       {{"grid", grid_str.str()},
                        {"a1_deg", fmt(opt.a1)},
                        {"b1_deg", fmt(opt.b1)},
                        {"a2_deg", fmt(opt.a2)},
                        {"b2_deg", fmt(opt.b2)}});
    os << "gamma1,gamma2,bell_lhs,joint\n";
    for (const Row& r : rows) {
        os << fmt(r.g1) << ',' << fmt(r.g2) << ',' << fmt(r.lhs) << ','
           << (r.feasible ? "feasible" : "infeasible") << "\n";
    }
    return output.write(os.str());
}

// --- joint ------------------------------------------------------------------

int run_joint(const std::string& input, const OutputTarget& output, std::uint64_t seed) {
    const ExperimentQuartet quartet = io::quartet_from_json(io::load_json_file(input));
    const ConsistencyReport consistency = check_consistency(quartet);
    if (!consistency.pass) {
        std::cerr << "error: inconsistent quartet, max marginal discrepancy "
                  << fmt(consistency.max_discrepancy) << "\n";
        return kExitInputError;
    }
    const FeasibilityResult result = joint_exists(quartet);

    std::ostringstream os;
    io::write_metadata(os, "joint", seed, {{"input", input}});
    os << "record,value\n";
    os << "status," << (result.feasible() ? "feasible" : "infeasible") << "\n";
    os << "max_marginal_discrepancy," << fmt(consistency.max_discrepancy) << "\n";
    if (result.feasible()) {
        os << "\n";
        io::write_quad_csv(os, *result.witness);
    } else {
        os << "certificate_variant," << result.certificate->label << "\n";
        os << "certificate_value," << fmt(result.certificate->value) << "\n";
    }
    const int write_rc = output.write(os.str());
    if (write_rc != kExitOk) return write_rc;
    return result.feasible() ? kExitOk : kExitDomainNegative;
}

// --- hv-run -----------------------------------------------------------------

struct HvOptions {
    std::string model_path;
    std::string family1 = "sawtooth", family2 = "sawtooth";
    double eta = 0.9, p = 0.5;
    std::size_t grid_n = 3600;
    double a1 = 0.0, b1 = 45.0, a2 = -22.5, b2 = -67.5;
    std::string method = "exact";
    std::size_t n = 100000;
    unsigned threads = 1;
};

ResponseFunction family_by_name(const std::string& name, double eta, double p) {
    if (name == "sawtooth") return ResponseFunction::sawtooth();
    if (name == "noisy-sawtooth") return ResponseFunction::noisy_sawtooth(eta);
    if (name == "malus") return ResponseFunction::malus();
    if (name == "constant") return ResponseFunction::constant(p);
    throw std::invalid_argument("unknown response family \"" + name + "\"");
}

int run_hv(const HvOptions& opt, const OutputTarget& output, std::uint64_t seed) {
    io::HvRunSpec spec = [&] {
        if (!opt.model_path.empty()) {
            return io::hv_spec_from_json(io::load_json_file(opt.model_path));
        }
        return io::HvRunSpec{
            QuasiObjectivisticModel{HiddenVariableSpace::uniform_grid(opt.grid_n),
                                    family_by_name(opt.family1, opt.eta, opt.p),
                                    family_by_name(opt.family2, opt.eta, opt.p)},
            settings_from_degrees(opt.a1, opt.b1, opt.a2, opt.b2)};
    }();

    SamplingMethod method = ExactSum{};
    if (opt.method == "mc") {
        method = MonteCarlo{seed, opt.n, opt.threads};
    } else if (opt.method != "exact") {
        std::cerr << "error: method must be \"exact\" or \"mc\"\n";
        return kExitInputError;
    }

    const ExperimentQuartet quartet = hv_quartet(spec.model, spec.settings, method);
    // Sampled quartets carry statistical noise in their singles; widen the
    // consistency gate of the variant sweep accordingly.
    const double consistency_tol =
        opt.method == "mc" ? 10.0 / std::sqrt(static_cast<double>(opt.n)) : 1e-9;

    std::ostringstream os;
    io::write_metadata(
        os, "hv-run", seed,
        {{"response1", spec.model.response1.name()},
         {"response2", spec.model.response2.name()},
         {"method", opt.method},
         {"samples", opt.method == "mc" ? std::to_string(opt.n) : std::string("-")},
         {"a1", fmt(spec.settings.a1.radians())},
         {"b1", fmt(spec.settings.b1.radians())},
         {"a2", fmt(spec.settings.a2.radians())},
         {"b2", fmt(spec.settings.b2.radians())}});
    os << "record,value\n";
    os << "chsh," << fmt(bell_lhs(quartet.correlations())) << "\n";
    const BchsReport report = bchs_all_variants(quartet, 1e-9, consistency_tol);
    os << "bchs_worst_low," << fmt(report.worst_low) << "\n";
    os << "bchs_worst_high," << fmt(report.worst_high) << "\n";
    os << "\n";
    io::write_quartet_csv(os, quartet);
    return output.write(os.str());
}

// --- macro-run ---------------------------------------------------------------

struct MacroOptions {
    std::string model_path;
    std::string state = "phi_plus";
    double a1 = 0.0, b1 = 45.0, a2 = -22.5, b2 = -67.5;
    std::size_t contextual_rounds = 10000;
};

int run_macro(const MacroOptions& opt, const OutputTarget& output, std::uint64_t seed) {
    const MacrostateModel model = [&] {
        if (!opt.model_path.empty()) {
            return io::macro_model_from_json(io::load_json_file(opt.model_path));
        }
        return quantum_target_model(state_by_name(opt.state),
                                    settings_from_degrees(opt.a1, opt.b1, opt.a2, opt.b2));
    }();

    const ExperimentQuartet quartet = macro_quartet(model);
    const FeasibilityResult construction = attempt_quad_construction(model);
    const LocalRestrictionReport local = check_local_restriction(model);

    std::ostringstream os;
    io::write_metadata(os, "macro-run", seed,
                       {{"contexts", "A1A2 A1B2 B1A2 B1B2"},
                        {"context_independent", model.context_independent() ? "yes" : "no"}});
    os << "record,value\n";
    os << "chsh," << fmt(macro_chsh(model)) << "\n";
    os << "construction," << (construction.feasible() ? "feasible" : "infeasible") << "\n";
    if (!construction.feasible()) {
        os << "certificate_variant," << construction.certificate->label << "\n";
        os << "certificate_value," << fmt(construction.certificate->value) << "\n";
    }
    os << "local_restriction," << (local.holds ? "holds" : "fails") << "\n";
    os << "local_restriction_deviation," << fmt(local.max_deviation) << "\n";

    if (opt.contextual_rounds > 0 && opt.model_path.empty()) {
        // Contextual-values demo over the four standard Aspect experiments.
        const QuartetSettings s = settings_from_degrees(opt.a1, opt.b1, opt.a2, opt.b2);
        const DensityMatrix rho = state_by_name(opt.state);
        std::array<QuadrivariateDistribution, 4> quads;
        const double gammas[2] = {1.0, 0.0};
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) {
                const ExperimentConfig config{ArmConfig::make(gammas[i], s.a1, s.b1),
                                              ArmConfig::make(gammas[j], s.a2, s.b2), rho};
                quads[i * 2 + j] = quad_probabilities(config);
            }
        const ContextualValuesReport demo =
            contextual_values_demo(quads, opt.contextual_rounds, seed);
        os << "contextual_rounds," << demo.rounds << "\n";
        os << "contextual_inconsistent_fraction," << fmt(demo.inconsistent_fraction) << "\n";
    }
    os << "\n";
    io::write_quartet_csv(os, quartet);
    return output.write(os.str());
}

// --- relax-sweep ---------------------------------------------------------------

struct RelaxOptions {
    double tau = 64.0;
    double diffusion = 1.0;
    double eta = 0.9;
    std::size_t samples = 100000;
    std::vector<std::size_t> windows = {0, 8, 16, 32, 48, 64, 96, 128, 256, 6400};
    std::string state = "phi_plus";
    double a1 = 0.0, b1 = 45.0, a2 = -22.5, b2 = -67.5;
    unsigned threads = 1;
};

int run_relax(const RelaxOptions& opt, const OutputTarget& output, std::uint64_t seed) {
    if (!(opt.tau > 0.0)) {
        std::cerr << "error: tau must be positive\n";
        return kExitInputError;
    }
    const MacrostateModel model = quantum_target_model(
        state_by_name(opt.state), settings_from_degrees(opt.a1, opt.b1, opt.a2, opt.b2));
    const ResponseFunction germ = ResponseFunction::noisy_sawtooth(opt.eta);

    RelaxationParams params;
    params.tau = opt.tau;
    params.diffusion = opt.diffusion;
    params.germ_eta = opt.eta;
    params.seed = seed;
    params.samples = opt.samples;
    params.threads = opt.threads;

    const auto curve = relaxation_sweep(model, germ, germ, params, opt.windows);

    std::ostringstream os;
    io::write_metadata(os, "relax-sweep", seed,
                       {{"tau", fmt(opt.tau)},
                        {"diffusion", fmt(opt.diffusion)},
                        {"eta", fmt(opt.eta)},
                        {"samples", std::to_string(opt.samples)}});
    os << "window,window_over_tau,chsh,sigma\n";
    for (const RelaxPoint& p : curve) {
        os << p.window << ',' << fmt(p.window_over_tau) << ',' << fmt(p.chsh) << ','
           << fmt(p.sigma) << "\n";
    }
    return output.write(os.str());
}

// --- fine-check ----------------------------------------------------------------

int run_fine_check(std::size_t count, const OutputTarget& output, std::uint64_t seed) {
    SplitMix64 rng(seed);
    std::size_t agree = 0, feasible_count = 0;
    const std::size_t half = count / 2;
    for (std::size_t i = 0; i < count; ++i) {
        ExperimentQuartet q;
        if (i < half) {
            std::array<double, 16> atoms{};
            for (double& a : atoms) a = -std::log(1.0 - rng.uniform());
            q = ExperimentQuartet::from_quad(
                QuadrivariateDistribution::from_raw(atoms, /*normalize=*/true));
        } else {
            const double w = static_cast<double>(i - half) / std::max<std::size_t>(1, count - half - 1);
            auto biv = [&](double e) {
                const double c = w * e;
                return BivariateDistribution::from_raw(
                    {(1.0 + c) / 4.0, (1.0 - c) / 4.0, (1.0 - c) / 4.0, (1.0 + c) / 4.0});
            };
            q = ExperimentQuartet(biv(1.0), biv(-1.0), biv(-1.0), biv(-1.0));
        }
        const bool lp = joint_exists(q).feasible();
        const bool bchs = bchs_all_variants(q).satisfied;
        if (lp == bchs) ++agree;
        if (lp) ++feasible_count;
    }

    std::ostringstream os;
    io::write_metadata(os, "fine-check", seed, {{"count", std::to_string(count)}});
    os << "record,value\n";
    os << "instances," << count << "\n";
    os << "agreements," << agree << "\n";
    os << "feasible," << feasible_count << "\n";
    os << "agreement_fraction," << fmt(static_cast<double>(agree) / count) << "\n";
    const int write_rc = output.write(os.str());
    if (write_rc != kExitOk) return write_rc;
    return agree == count ? kExitOk : kExitDomainNegative;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Bell/BCHS inequality and generalized Aspect experiment toolkit"};
    app.set_version_flag("--version", std::string("bellsim ") + kVersion);
    app.require_subcommand(1);
    app.fallthrough();

    OutputTarget output;
    std::uint64_t seed = 12345;
    app.add_option("-o,--output", output.path, "Output file, '-' for stdout");
    app.add_option("--seed", seed, "Base seed recorded in every output");

    AspectOptions aspect;
    CLI::App* aspect_cmd =
        app.add_subcommand("aspect", "Generalized Aspect experiment: quad POVM statistics");
    aspect_cmd->add_option("--config", aspect.config_path, "ExperimentConfig JSON file");
    aspect_cmd->add_option("--gamma1", aspect.gamma1, "Arm-1 transmissivity")
        ->check(CLI::Range(0.0, 1.0));
    aspect_cmd->add_option("--gamma2", aspect.gamma2, "Arm-2 transmissivity")
        ->check(CLI::Range(0.0, 1.0));
    aspect_cmd->add_option("--state", aspect.state, "Bell state name");
    aspect_cmd->add_option("--a1", aspect.a1, "A1 direction, degrees");
    aspect_cmd->add_option("--b1", aspect.b1, "B1 direction, degrees");
    aspect_cmd->add_option("--a2", aspect.a2, "A2 direction, degrees");
    aspect_cmd->add_option("--b2", aspect.b2, "B2 direction, degrees");
    aspect_cmd->add_option("--format", aspect.format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));

    GammaSweepOptions sweep;
    CLI::App* sweep_cmd = app.add_subcommand("gamma-sweep", "Sweep both transmissivities");
    sweep_cmd->add_option("--grid", sweep.grid, "Gamma grid values");
    sweep_cmd->add_option("--state", sweep.state, "Bell state name");
    sweep_cmd->add_option("--a1", sweep.a1, "A1 direction, degrees");
    sweep_cmd->add_option("--b1", sweep.b1, "B1 direction, degrees");
    sweep_cmd->add_option("--a2", sweep.a2, "A2 direction, degrees");
    sweep_cmd->add_option("--b2", sweep.b2, "B2 direction, degrees");
    sweep_cmd->add_option("--threads", sweep.threads, "Worker threads");

    std::string joint_input;
    CLI::App* joint_cmd =
        app.add_subcommand("joint", "LP feasibility of a quadrivariate joint distribution");
    joint_cmd->add_option("--input", joint_input, "Quartet JSON file")->required();

    HvOptions hv;
    CLI::App* hv_cmd = app.add_subcommand("hv-run", "Quasi-objectivistic hidden-variables model");
    hv_cmd->add_option("--model", hv.model_path, "Model JSON file");
    hv_cmd->add_option("--family1", hv.family1,
                       "Side-1 response family (sawtooth, noisy-sawtooth, malus, constant)");
    hv_cmd->add_option("--family2", hv.family2, "Side-2 response family");
    hv_cmd->add_option("--eta", hv.eta, "noisy-sawtooth noise parameter");
    hv_cmd->add_option("--p", hv.p, "constant response probability");
    hv_cmd->add_option("--grid-n", hv.grid_n, "Lambda grid size");
    hv_cmd->add_option("--a1", hv.a1, "A1 direction, degrees");
    hv_cmd->add_option("--b1", hv.b1, "B1 direction, degrees");
    hv_cmd->add_option("--a2", hv.a2, "A2 direction, degrees");
    hv_cmd->add_option("--b2", hv.b2, "B2 direction, degrees");
    hv_cmd->add_option("--method", hv.method, "exact or mc");
    hv_cmd->add_option("-n,--samples", hv.n, "Monte Carlo samples");
    hv_cmd->add_option("--threads", hv.threads, "Worker threads");

    MacroOptions macro;
    CLI::App* macro_cmd = app.add_subcommand("macro-run", "Contextual macrostate model");
    macro_cmd->add_option("--model", macro.model_path, "Macro model JSON file");
    macro_cmd->add_option("--state", macro.state, "Bell state name");
    macro_cmd->add_option("--a1", macro.a1, "A1 direction, degrees");
    macro_cmd->add_option("--b1", macro.b1, "B1 direction, degrees");
    macro_cmd->add_option("--a2", macro.a2, "A2 direction, degrees");
    macro_cmd->add_option("--b2", macro.b2, "B2 direction, degrees");
    macro_cmd->add_option("--contextual-rounds", macro.contextual_rounds,
                          "Rounds of the contextual-values demo (0 disables)");

    RelaxOptions relax;
    CLI::App* relax_cmd =
        app.add_subcommand("relax-sweep", "Relaxation-time toy: CHSH vs averaging window");
    relax_cmd->add_option("--tau", relax.tau, "Relaxation time in steps");
    relax_cmd->add_option("--diffusion", relax.diffusion, "Cell hops per tau");
    relax_cmd->add_option("--eta", relax.eta, "Germ noise parameter");
    relax_cmd->add_option("-n,--samples", relax.samples, "Trials per window and context");
    relax_cmd->add_option("--windows", relax.windows, "Averaging windows in steps");
    relax_cmd->add_option("--state", relax.state, "Bell state name");
    relax_cmd->add_option("--a1", relax.a1, "A1 direction, degrees");
    relax_cmd->add_option("--b1", relax.b1, "B1 direction, degrees");
    relax_cmd->add_option("--a2", relax.a2, "A2 direction, degrees");
    relax_cmd->add_option("--b2", relax.b2, "B2 direction, degrees");
    relax_cmd->add_option("--threads", relax.threads, "Worker threads");

    std::size_t fine_count = 2000;
    CLI::App* fine_cmd =
        app.add_subcommand("fine-check", "LP feasibility vs BCHS-variant agreement sweep");
    fine_cmd->add_option("--count", fine_count, "Number of generated quartets");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help, --version
        app.exit(e);
        return kExitInputError;
    }

    try {
        if (aspect_cmd->parsed()) return run_aspect(aspect, output, seed);
        if (sweep_cmd->parsed()) return run_gamma_sweep(sweep, output, seed);
        if (joint_cmd->parsed()) return run_joint(joint_input, output, seed);
        if (hv_cmd->parsed()) return run_hv(hv, output, seed);
        if (macro_cmd->parsed()) return run_macro(macro, output, seed);
        if (relax_cmd->parsed()) return run_relax(relax, output, seed);
        if (fine_cmd->parsed()) return run_fine_check(fine_count, output, seed);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInputError;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    }
    return kExitOk;
}
