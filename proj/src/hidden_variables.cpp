#include "bellsim/hidden_variables.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <optional>
#include <stdexcept>

#include "bellsim/kernels.hpp"
#include "bellsim/inequalities.hpp"
#include "bellsim/parallel.hpp"

namespace bellsim {

HiddenVariableSpace HiddenVariableSpace::uniform_grid(std::size_t n) {
    if (n == 0) throw std::invalid_argument("HiddenVariableSpace: empty grid");
    HiddenVariableSpace s;
    s.kind = Kind::finite_grid;
    s.lambda.resize(n);
    s.weight.assign(n, 1.0 / static_cast<double>(n));
    for (std::size_t k = 0; k < n; ++k) {
        s.lambda[k] = (static_cast<double>(k) + 0.5) * kPi / static_cast<double>(n);
    }
    return s;
}

HiddenVariableSpace HiddenVariableSpace::finite_grid(std::vector<double> lambda,
                                                     std::vector<double> weight) {
    if (lambda.empty() || lambda.size() != weight.size()) {
        throw std::invalid_argument("HiddenVariableSpace: points/weights mismatch");
    }
    const double sum = std::accumulate(weight.begin(), weight.end(), 0.0);
    if (std::abs(sum - 1.0) > 1e-12) {
        throw std::invalid_argument("HiddenVariableSpace: weights must sum to 1");
    }
    for (double w : weight) {
        if (w < 0.0) throw std::invalid_argument("HiddenVariableSpace: negative weight");
    }
    HiddenVariableSpace s;
    s.kind = Kind::finite_grid;
    s.lambda = std::move(lambda);
    s.weight = std::move(weight);
    return s;
}

HiddenVariableSpace HiddenVariableSpace::continuous_circle() {
    HiddenVariableSpace s;
    s.kind = Kind::continuous_circle;
    return s;
}

ResponseFunction ResponseFunction::sawtooth() {
    return ResponseFunction(
        "sawtooth",
        [](double lambda, const Angle& setting) {
            return std::cos(2.0 * (setting.radians() - lambda)) >= 0.0 ? 1.0 : 0.0;
        },
        /*deterministic=*/true);
}

ResponseFunction ResponseFunction::noisy_sawtooth(double eta) {
    if (!(eta >= 0.0 && eta <= 1.0)) {
        throw std::invalid_argument("noisy_sawtooth: eta must lie in [0, 1]");
    }
    return ResponseFunction(
        "noisy_sawtooth",
        [eta](double lambda, const Angle& setting) {
            const double s = std::cos(2.0 * (setting.radians() - lambda)) >= 0.0 ? 1.0 : 0.0;
            return 0.5 * (1.0 - eta) + eta * s;
        },
        eta == 1.0, {{"eta", eta}});
}

ResponseFunction ResponseFunction::malus() {
    return ResponseFunction(
        "malus",
        [](double lambda, const Angle& setting) {
            const double c = std::cos(setting.radians() - lambda);
            return c * c;
        },
        /*deterministic=*/false);
}

ResponseFunction ResponseFunction::constant(double p) {
    if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("constant: p must lie in [0, 1]");
    return ResponseFunction(
        "constant", [p](double, const Angle&) { return p; }, p == 0.0 || p == 1.0, {{"p", p}});
}

ResponseFunction ResponseFunction::tabulated(std::map<double, std::vector<double>> tables,
                                             std::size_t grid_n, bool deterministic) {
    if (grid_n == 0) throw std::invalid_argument("tabulated: empty grid");
    for (const auto& [setting, table] : tables) {
        if (table.size() != grid_n) {
            throw std::invalid_argument("tabulated: table size must equal grid size");
        }
        for (double v : table) {
            if (!(v >= 0.0 && v <= 1.0)) {
                throw std::invalid_argument("tabulated: probabilities must lie in [0, 1]");
            }
            if (deterministic && v != 0.0 && v != 1.0) {
                throw std::invalid_argument(
                    "tabulated: deterministic response must take values 0 or 1 only");
            }
        }
    }
    return ResponseFunction(
        "tabulated",
        [tables = std::move(tables), grid_n](double lambda, const Angle& setting) {
            const auto it = tables.find(setting.radians());
            if (it == tables.end()) {
                throw std::invalid_argument("tabulated response: unknown setting");
            }
            auto cell = static_cast<std::size_t>(lambda / kPi * static_cast<double>(grid_n));
            if (cell >= grid_n) cell = grid_n - 1;
            return it->second[cell];
        },
        deterministic);
}

std::vector<double> tabulate_response(const HiddenVariableSpace& space,
                                      const ResponseFunction& response, Angle setting) {
    if (space.kind != HiddenVariableSpace::Kind::finite_grid) {
        throw std::invalid_argument("tabulate_response: finite grid required");
    }
    std::vector<double> p(space.lambda.size());
    for (std::size_t k = 0; k < p.size(); ++k) {
        const double v = response(space.lambda[k], setting);
        if (!(v >= 0.0 && v <= 1.0)) {
            throw std::invalid_argument("response probability outside [0, 1]");
        }
        p[k] = v;
    }
    return p;
}

namespace {

BivariateDistribution bivariate_from_moments(const kernels::PairMoments& m) {
    std::array<double, 4> t{};
    t[0] = m.s12;
    t[1] = m.s1 - m.s12;
    t[2] = m.s2 - m.s12;
    t[3] = m.s0 - m.s1 - m.s2 + m.s12;
    return BivariateDistribution::from_raw(t, /*normalize=*/true);
}

BivariateDistribution hv_bivariate_exact(const QuasiObjectivisticModel& model, Angle theta1,
                                         Angle theta2) {
    if (model.space.kind != HiddenVariableSpace::Kind::finite_grid) {
        throw std::invalid_argument("hv_bivariate: exact_sum requires a finite grid");
    }
    const std::vector<double> p1 = tabulate_response(model.space, model.response1, theta1);
    const std::vector<double> p2 = tabulate_response(model.space, model.response2, theta2);
    const kernels::PairMoments m = kernels::pair_moments(model.space.weight.data(), p1.data(),
                                                         p2.data(), p1.size());
    return bivariate_from_moments(m);
}

BivariateDistribution hv_bivariate_mc(const QuasiObjectivisticModel& model, Angle theta1,
                                      Angle theta2, const MonteCarlo& mc,
                                      std::uint64_t stream_base) {
    if (mc.n == 0) throw std::invalid_argument("hv_bivariate: monte_carlo needs n >= 1");
    const bool grid = model.space.kind == HiddenVariableSpace::Kind::finite_grid;
    std::optional<CumulativeSampler> sampler;
    if (grid) sampler.emplace(model.space.weight);

    constexpr std::size_t kChunk = 1 << 14;
    const std::size_t chunks = (mc.n + kChunk - 1) / kChunk;
    std::vector<std::array<std::int64_t, 4>> counts(chunks, std::array<std::int64_t, 4>{});

    parallel_for_units(chunks, mc.threads, [&](std::size_t c) {
        SplitMix64 rng(derive_seed(mc.seed, stream_base + c));
        const std::size_t begin = c * kChunk;
        const std::size_t end = std::min(mc.n, begin + kChunk);
        std::array<std::int64_t, 4>& local = counts[c];
        for (std::size_t i = begin; i < end; ++i) {
            double lam;
            if (grid) {
                lam = model.space.lambda[sampler->sample(rng)];
            } else {
                lam = rng.uniform() * kPi;
            }
            const bool plus1 = rng.bernoulli(model.response1(lam, theta1));
            const bool plus2 = rng.bernoulli(model.response2(lam, theta2));
            local[(plus1 ? 0 : 2) + (plus2 ? 0 : 1)] += 1;
        }
    });

    std::array<double, 4> t{};
    for (const auto& local : counts) {
        for (int i = 0; i < 4; ++i) t[i] += static_cast<double>(local[i]);
    }
    return BivariateDistribution::from_raw(t, /*normalize=*/true);
}

}  // namespace

BivariateDistribution hv_bivariate(const QuasiObjectivisticModel& model, Angle theta1,
                                   Angle theta2, const SamplingMethod& method) {
    if (std::holds_alternative<ExactSum>(method)) {
        return hv_bivariate_exact(model, theta1, theta2);
    }
    return hv_bivariate_mc(model, theta1, theta2, std::get<MonteCarlo>(method), 0);
}

ExperimentQuartet hv_quartet(const QuasiObjectivisticModel& model, const QuartetSettings& s,
                             const SamplingMethod& method) {
    std::array<BivariateDistribution, 4> b;
    for (int i = 0; i < 4; ++i) {
        const PairKind k = static_cast<PairKind>(i);
        if (std::holds_alternative<ExactSum>(method)) {
            b[i] = hv_bivariate_exact(model, s.side1(k), s.side2(k));
        } else {
            const MonteCarlo& mc = std::get<MonteCarlo>(method);
            // Distinct stream block per pair so the four experiments use
            // independent samples.
            const std::size_t chunks = (mc.n + (1 << 14) - 1) / (1 << 14);
            b[i] = hv_bivariate_mc(model, s.side1(k), s.side2(k), mc,
                                   static_cast<std::uint64_t>(i) * chunks);
        }
    }
    return ExperimentQuartet(b[0], b[1], b[2], b[3]);
}

double hv_chsh(const QuasiObjectivisticModel& model, const QuartetSettings& s,
               const SamplingMethod& method) {
    return bell_lhs(hv_quartet(model, s, method).correlations());
}

LhvFitReport best_lhv_fit(const std::function<double(double)>& target_correlation,
                          const QuasiObjectivisticModel& model, std::size_t grid_points) {
    if (grid_points == 0) throw std::invalid_argument("best_lhv_fit: empty grid");
    LhvFitReport r;
    r.grid_points = grid_points;
    for (std::size_t i = 0; i < grid_points; ++i) {
        const double delta = static_cast<double>(i) * kPi / static_cast<double>(grid_points);
        const double model_corr =
            correlation_of(hv_bivariate(model, Angle(delta), Angle(0.0)));
        const double dev = std::abs(model_corr - target_correlation(delta));
        if (dev > r.max_abs_deviation) {
            r.max_abs_deviation = dev;
            r.argmax_delta = delta;
        }
    }
    return r;
}

}  // namespace bellsim
