#include "bellsim/io.hpp"

#include <cstdio>
#include <fstream>
#include <ostream>
#include <stdexcept>

#include "bellsim/version.hpp"

namespace bellsim::io {

namespace {

constexpr const char* kDensitySchema = "bellsim.density_matrix.v1";
constexpr const char* kQuartetSchema = "bellsim.quartet.v1";
constexpr const char* kExperimentSchema = "bellsim.experiment_config.v1";
constexpr const char* kHvSchema = "bellsim.hv_model.v1";
constexpr const char* kMacroSchema = "bellsim.macro_model.v1";

[[noreturn]] void fail(const std::string& what) { throw std::invalid_argument(what); }

void require_schema(const json& j, const char* schema) {
    if (!j.is_object()) fail("expected a JSON object");
    if (!j.contains("schema") || j.at("schema") != schema) {
        fail(std::string("expected schema \"") + schema + "\"");
    }
}

double get_number(const json& j, const char* key) {
    if (!j.contains(key) || !j.at(key).is_number()) {
        fail(std::string("missing numeric field \"") + key + "\"");
    }
    return j.at(key).get<double>();
}

}  // namespace

std::string format_number(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

json density_to_json(const DensityMatrix& rho) {
    json j;
    j["schema"] = kDensitySchema;
    j["dim"] = rho.dim();
    std::vector<double> flat;
    flat.reserve(2 * rho.dim() * rho.dim());
    for (const Complex& c : rho.matrix().entries()) {
        flat.push_back(c.real());
        flat.push_back(c.imag());
    }
    j["entries"] = std::move(flat);
    return j;
}

DensityMatrix density_from_json(const json& j) {
    if (j.is_string()) {
        const std::string name = j.get<std::string>();
        if (name == "phi_plus") return bell_state(BellKind::phi_plus);
        if (name == "phi_minus") return bell_state(BellKind::phi_minus);
        if (name == "psi_plus") return bell_state(BellKind::psi_plus);
        if (name == "psi_minus") return bell_state(BellKind::psi_minus);
        if (name == "maximally_mixed") return maximally_mixed(4);
        fail("unknown state name \"" + name + "\"");
    }
    require_schema(j, kDensitySchema);
    const auto dim = j.at("dim").get<std::size_t>();
    const auto flat = j.at("entries").get<std::vector<double>>();
    if (flat.size() != 2 * dim * dim) fail("density matrix entry count mismatch");
    std::vector<Complex> entries(dim * dim);
    for (std::size_t i = 0; i < entries.size(); ++i) {
        entries[i] = Complex{flat[2 * i], flat[2 * i + 1]};
    }
    return DensityMatrix::from_matrix(ComplexMatrix(dim, std::move(entries)));
}

namespace {

json bivariate_to_json(const BivariateDistribution& b) {
    return json::array({json::array({b.p(Outcome::plus, Outcome::plus),
                                     b.p(Outcome::plus, Outcome::minus)}),
                        json::array({b.p(Outcome::minus, Outcome::plus),
                                     b.p(Outcome::minus, Outcome::minus)})});
}

BivariateDistribution bivariate_from_json(const json& j) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_array() || j[0].size() != 2 ||
        !j[1].is_array() || j[1].size() != 2) {
        fail("bivariate table must be a 2x2 array");
    }
    std::array<double, 4> t = {j[0][0].get<double>(), j[0][1].get<double>(),
                               j[1][0].get<double>(), j[1][1].get<double>()};
    return BivariateDistribution::from_raw(t, /*normalize=*/true);
}

const char* pair_key(PairKind k) {
    switch (k) {
        case PairKind::A1A2: return "a1a2";
        case PairKind::A1B2: return "a1b2";
        case PairKind::B1A2: return "b1a2";
        case PairKind::B1B2: return "b1b2";
    }
    return "?";
}

}  // namespace

json quartet_to_json(const ExperimentQuartet& q) {
    json pairs;
    for (PairKind k : kAllPairs) pairs[pair_key(k)] = bivariate_to_json(q.pair(k));
    json j;
    j["schema"] = kQuartetSchema;
    j["pairs"] = std::move(pairs);
    return j;
}

ExperimentQuartet quartet_from_json(const json& j) {
    require_schema(j, kQuartetSchema);
    if (!j.contains("pairs")) fail("quartet: missing \"pairs\"");
    const json& pairs = j.at("pairs");
    std::array<BivariateDistribution, 4> b;
    for (int i = 0; i < 4; ++i) {
        const char* key = pair_key(static_cast<PairKind>(i));
        if (!pairs.contains(key)) fail(std::string("quartet: missing pair \"") + key + "\"");
        b[i] = bivariate_from_json(pairs.at(key));
    }
    return ExperimentQuartet(b[0], b[1], b[2], b[3]);
}

namespace {

json arm_to_json(const ArmConfig& arm) {
    json j;
    j["gamma"] = arm.gamma;
    j["theta"] = arm.theta.radians();
    j["theta_prime"] = arm.theta_prime.radians();
    return j;
}

ArmConfig arm_from_json(const json& j) {
    return ArmConfig::make(get_number(j, "gamma"), Angle(get_number(j, "theta")),
                           Angle(get_number(j, "theta_prime")));
}

}  // namespace

json experiment_config_to_json(const ExperimentConfig& config) {
    json j;
    j["schema"] = kExperimentSchema;
    j["arm1"] = arm_to_json(config.arm1);
    j["arm2"] = arm_to_json(config.arm2);
    j["state"] = density_to_json(config.state);
    return j;
}

ExperimentConfig experiment_config_from_json(const json& j) {
    require_schema(j, kExperimentSchema);
    if (!j.contains("arm1") || !j.contains("arm2") || !j.contains("state")) {
        fail("experiment config: arm1, arm2 and state are required");
    }
    ExperimentConfig config{arm_from_json(j.at("arm1")), arm_from_json(j.at("arm2")),
                            density_from_json(j.at("state"))};
    if (config.state.dim() != 4) fail("experiment config: state must have dim 4");
    return config;
}

json settings_to_json(const QuartetSettings& s) {
    json j;
    j["a1"] = s.a1.radians();
    j["b1"] = s.b1.radians();
    j["a2"] = s.a2.radians();
    j["b2"] = s.b2.radians();
    return j;
}

QuartetSettings settings_from_json(const json& j) {
    return QuartetSettings{Angle(get_number(j, "a1")), Angle(get_number(j, "b1")),
                           Angle(get_number(j, "a2")), Angle(get_number(j, "b2"))};
}

namespace {

json response_to_json(const ResponseFunction& r) {
    // Only the named families round-trip; tabulated responses are not part
    // of the file format.
    json j;
    j["family"] = r.name();
    for (const auto& [key, value] : r.params()) j[key] = value;
    return j;
}

ResponseFunction response_from_json(const json& j) {
    if (!j.contains("family")) fail("response: missing \"family\"");
    const std::string family = j.at("family").get<std::string>();
    if (family == "sawtooth") return ResponseFunction::sawtooth();
    if (family == "noisy_sawtooth") return ResponseFunction::noisy_sawtooth(get_number(j, "eta"));
    if (family == "malus") return ResponseFunction::malus();
    if (family == "constant") return ResponseFunction::constant(get_number(j, "p"));
    fail("unknown response family \"" + family + "\"");
}

}  // namespace

json hv_spec_to_json(const HvRunSpec& spec) {
    json j;
    j["schema"] = kHvSchema;
    json space;
    if (spec.model.space.kind == HiddenVariableSpace::Kind::finite_grid) {
        space["kind"] = "finite_grid";
        space["n"] = spec.model.space.lambda.size();
    } else {
        space["kind"] = "continuous_circle";
    }
    j["space"] = std::move(space);
    j["response1"] = response_to_json(spec.model.response1);
    j["response2"] = response_to_json(spec.model.response2);
    j["settings"] = settings_to_json(spec.settings);
    return j;
}

HvRunSpec hv_spec_from_json(const json& j) {
    require_schema(j, kHvSchema);
    if (!j.contains("space") || !j.contains("response1") || !j.contains("response2") ||
        !j.contains("settings")) {
        fail("hv model: space, response1, response2 and settings are required");
    }
    const json& space_j = j.at("space");
    HiddenVariableSpace space;
    const std::string kind = space_j.value("kind", "finite_grid");
    if (kind == "finite_grid") {
        space = HiddenVariableSpace::uniform_grid(space_j.value("n", std::size_t{3600}));
    } else if (kind == "continuous_circle") {
        space = HiddenVariableSpace::continuous_circle();
    } else {
        fail("unknown space kind \"" + kind + "\"");
    }
    QuasiObjectivisticModel model{std::move(space), response_from_json(j.at("response1")),
                                  response_from_json(j.at("response2"))};
    return HvRunSpec{std::move(model), settings_from_json(j.at("settings"))};
}

json macro_model_to_json(const MacrostateModel& model) {
    json j;
    j["schema"] = kMacroSchema;
    j["kind"] = "explicit";
    j["grid_n"] = model.grid_n();
    json contexts = json::array();
    for (int i = 0; i < 4; ++i) {
        const ContextData& c = model.context(static_cast<PairKind>(i));
        json cj;
        cj["side1"] = c.context.side1 == Side1Obs::A1 ? "A1" : "B1";
        cj["side2"] = c.context.side2 == Side2Obs::A2 ? "A2" : "B2";
        cj["setting1"] = c.context.setting1.radians();
        cj["setting2"] = c.context.setting2.radians();
        cj["weights"] = c.weights;
        cj["resp1"] = c.resp1;
        cj["resp2"] = c.resp2;
        contexts.push_back(std::move(cj));
    }
    j["contexts"] = std::move(contexts);
    return j;
}

MacrostateModel macro_model_from_json(const json& j) {
    require_schema(j, kMacroSchema);
    const std::string kind = j.value("kind", "explicit");
    const auto grid_n = j.value("grid_n", std::size_t{3600});
    if (kind == "quantum_target") {
        if (!j.contains("state") || !j.contains("settings")) {
            fail("macro model: quantum_target needs state and settings");
        }
        return quantum_target_model(density_from_json(j.at("state")),
                                    settings_from_json(j.at("settings")), grid_n);
    }
    if (kind != "explicit") fail("unknown macro model kind \"" + kind + "\"");
    if (!j.contains("contexts") || !j.at("contexts").is_array() || j.at("contexts").size() != 4) {
        fail("macro model: exactly four contexts required");
    }
    std::array<ContextData, 4> contexts;
    for (int i = 0; i < 4; ++i) {
        const json& cj = j.at("contexts")[i];
        ContextData c;
        const std::string s1 = cj.value("side1", "");
        const std::string s2 = cj.value("side2", "");
        if ((s1 != "A1" && s1 != "B1") || (s2 != "A2" && s2 != "B2")) {
            fail("macro model: context sides must be A1/B1 and A2/B2");
        }
        c.context.side1 = s1 == "A1" ? Side1Obs::A1 : Side1Obs::B1;
        c.context.side2 = s2 == "A2" ? Side2Obs::A2 : Side2Obs::B2;
        c.context.setting1 = Angle(get_number(cj, "setting1"));
        c.context.setting2 = Angle(get_number(cj, "setting2"));
        c.weights = cj.at("weights").get<std::vector<double>>();
        c.resp1 = cj.at("resp1").get<std::vector<double>>();
        c.resp2 = cj.at("resp2").get<std::vector<double>>();
        double acc = 0.0;
        for (double w : c.weights) {
            c.arcs.emplace_back(acc, std::min(1.0, acc + w));
            acc += w;
        }
        if (!c.arcs.empty()) c.arcs.back().second = 1.0;
        contexts[static_cast<int>(context_pair(c.context.side1, c.context.side2))] = std::move(c);
    }
    return MacrostateModel(grid_n, std::move(contexts));
}

json quad_to_json(const QuadrivariateDistribution& quad) {
    json atoms = json::array();
    for (int i = 0; i < 16; ++i) atoms.push_back(quad.atom(i));
    json j;
    j["atoms"] = std::move(atoms);
    j["order"] = "bits (a1,b1,a2,b2), most significant a1, 1 = minus";
    return j;
}

json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail("cannot open \"" + path + "\"");
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        fail("JSON parse error in \"" + path + "\": " + e.what());
    }
    return j;
}

void write_metadata(std::ostream& os, const std::string& subcommand, std::uint64_t seed,
                    const std::vector<std::pair<std::string, std::string>>& params) {
    os << "# bellsim " << kVersion << "\n";
    os << "# subcommand: " << subcommand << "\n";
    os << "# seed: " << seed << "\n";
    for (const auto& [key, value] : params) os << "# " << key << ": " << value << "\n";
}

void write_quad_csv(std::ostream& os, const QuadrivariateDistribution& quad) {
    os << "a1,b1,a2,b2,probability\n";
    for (int i = 0; i < 16; ++i) {
        os << (((i >> 3) & 1) ? '-' : '+') << ',' << (((i >> 2) & 1) ? '-' : '+') << ','
           << (((i >> 1) & 1) ? '-' : '+') << ',' << ((i & 1) ? '-' : '+') << ','
           << format_number(quad.atom(i)) << "\n";
    }
}

void write_quartet_csv(std::ostream& os, const ExperimentQuartet& quartet) {
    os << "pair,p_pp,p_pm,p_mp,p_mm\n";
    for (PairKind k : kAllPairs) {
        const BivariateDistribution& b = quartet.pair(k);
        os << pair_name(k) << ',' << format_number(b.p(Outcome::plus, Outcome::plus)) << ','
           << format_number(b.p(Outcome::plus, Outcome::minus)) << ','
           << format_number(b.p(Outcome::minus, Outcome::plus)) << ','
           << format_number(b.p(Outcome::minus, Outcome::minus)) << "\n";
    }
}

}  // namespace bellsim::io
