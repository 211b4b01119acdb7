#include "bellsim/macrostate.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <stdexcept>

#include "bellsim/kernels.hpp"
#include "bellsim/parallel.hpp"

namespace bellsim {

PairKind context_pair(Side1Obs s1, Side2Obs s2) {
    const int i = (s1 == Side1Obs::B1 ? 2 : 0) + (s2 == Side2Obs::B2 ? 1 : 0);
    return static_cast<PairKind>(i);
}

MeasurementContext make_context(PairKind pair, const QuartetSettings& settings) {
    MeasurementContext c;
    const int i = static_cast<int>(pair);
    c.side1 = (i & 2) ? Side1Obs::B1 : Side1Obs::A1;
    c.side2 = (i & 1) ? Side2Obs::B2 : Side2Obs::A2;
    c.setting1 = settings.side1(pair);
    c.setting2 = settings.side2(pair);
    return c;
}

namespace {

void validate_context(const ContextData& c, std::size_t grid_n) {
    const std::size_t m = c.weights.size();
    if (m == 0) throw std::invalid_argument("MacrostateModel: context without macrostates");
    if (c.resp1.size() != m || c.resp2.size() != m || c.arcs.size() != m) {
        throw std::invalid_argument("MacrostateModel: context field sizes disagree");
    }
    double sum = 0.0;
    for (double w : c.weights) {
        if (w < 0.0) throw std::invalid_argument("MacrostateModel: negative macrostate weight");
        sum += w;
    }
    if (std::abs(sum - 1.0) > 1e-12) {
        throw std::invalid_argument("MacrostateModel: macrostate weights must sum to 1");
    }
    for (std::size_t i = 0; i < m; ++i) {
        if (!(c.resp1[i] >= 0.0 && c.resp1[i] <= 1.0 && c.resp2[i] >= 0.0 && c.resp2[i] <= 1.0)) {
            throw std::invalid_argument("MacrostateModel: response outside [0, 1]");
        }
        if (!(c.arcs[i].first >= 0.0 && c.arcs[i].second <= 1.0 + 1e-12 &&
              c.arcs[i].first <= c.arcs[i].second)) {
            throw std::invalid_argument("MacrostateModel: malformed basin arc");
        }
    }
    if (grid_n == 0) throw std::invalid_argument("MacrostateModel: empty grid");
}

std::vector<std::pair<double, double>> cumulative_arcs(const std::vector<double>& weights) {
    std::vector<std::pair<double, double>> arcs;
    arcs.reserve(weights.size());
    double acc = 0.0;
    for (double w : weights) {
        arcs.emplace_back(acc, std::min(1.0, acc + w));
        acc += w;
    }
    arcs.back().second = 1.0;
    return arcs;
}

}  // namespace

MacrostateModel::MacrostateModel(std::size_t grid_n, std::array<ContextData, 4> contexts)
    : grid_n_(grid_n), contexts_(std::move(contexts)) {
    for (int i = 0; i < 4; ++i) {
        validate_context(contexts_[i], grid_n_);
        const PairKind expected = static_cast<PairKind>(i);
        if (context_pair(contexts_[i].context.side1, contexts_[i].context.side2) != expected) {
            throw std::invalid_argument("MacrostateModel: contexts out of order");
        }
    }
}

QuartetSettings MacrostateModel::settings() const {
    QuartetSettings s;
    s.a1 = context(PairKind::A1A2).context.setting1;
    s.b1 = context(PairKind::B1A2).context.setting1;
    s.a2 = context(PairKind::A1A2).context.setting2;
    s.b2 = context(PairKind::A1B2).context.setting2;
    // The same observable must carry the same direction in both contexts.
    if (!(context(PairKind::A1B2).context.setting1 == s.a1 &&
          context(PairKind::B1B2).context.setting1 == s.b1 &&
          context(PairKind::B1A2).context.setting2 == s.a2 &&
          context(PairKind::B1B2).context.setting2 == s.b2)) {
        throw std::invalid_argument("MacrostateModel: settings disagree across contexts");
    }
    return s;
}

bool MacrostateModel::context_independent(double tol) const {
    const ContextData& ref = context(PairKind::A1A2);
    const std::size_t m = ref.weights.size();
    for (int i = 1; i < 4; ++i) {
        if (contexts_[i].weights.size() != m) return false;
        for (std::size_t j = 0; j < m; ++j) {
            if (std::abs(contexts_[i].weights[j] - ref.weights[j]) > tol) return false;
        }
    }
    auto same = [&](const std::vector<double>& a, const std::vector<double>& b) {
        for (std::size_t j = 0; j < m; ++j) {
            if (std::abs(a[j] - b[j]) > tol) return false;
        }
        return true;
    };
    return same(context(PairKind::A1A2).resp1, context(PairKind::A1B2).resp1) &&
           same(context(PairKind::B1A2).resp1, context(PairKind::B1B2).resp1) &&
           same(context(PairKind::A1A2).resp2, context(PairKind::B1A2).resp2) &&
           same(context(PairKind::A1B2).resp2, context(PairKind::B1B2).resp2);
}

Macrostate MacrostateModel::macrostate(PairKind k, std::size_t m) const {
    const ContextData& c = context(k);
    if (m >= c.weights.size()) throw std::invalid_argument("macrostate: index out of range");
    Macrostate state;
    state.id = std::string(pair_name(k)) + "/" + std::to_string(m);
    state.occupation.assign(grid_n_, 0.0);
    const auto [lo, hi] = c.arcs[m];
    if (hi <= lo) return state;
    // Uniform occupation of the basin arc, cells weighted by overlap.
    double total = 0.0;
    for (std::size_t cell = 0; cell < grid_n_; ++cell) {
        const double clo = static_cast<double>(cell) / static_cast<double>(grid_n_);
        const double chi = static_cast<double>(cell + 1) / static_cast<double>(grid_n_);
        const double overlap = std::max(0.0, std::min(hi, chi) - std::max(lo, clo));
        state.occupation[cell] = overlap;
        total += overlap;
    }
    if (total > 0.0) {
        for (double& v : state.occupation) v /= total;
    }
    return state;
}

BivariateDistribution macro_bivariate(const MacrostateModel& model, PairKind context) {
    const ContextData& c = model.context(context);
    const kernels::PairMoments m = kernels::pair_moments(c.weights.data(), c.resp1.data(),
                                                         c.resp2.data(), c.weights.size());
    std::array<double, 4> t{};
    t[0] = m.s12;
    t[1] = m.s1 - m.s12;
    t[2] = m.s2 - m.s12;
    t[3] = m.s0 - m.s1 - m.s2 + m.s12;
    return BivariateDistribution::from_raw(t, /*normalize=*/true);
}

BivariateDistribution macro_bivariate(const MacrostateModel& model,
                                      const MeasurementContext& context) {
    const PairKind k = context_pair(context.side1, context.side2);
    const MeasurementContext& stored = model.context(k).context;
    if (!(stored.setting1 == context.setting1 && stored.setting2 == context.setting2)) {
        throw std::invalid_argument("macro_bivariate: context not in the model's map");
    }
    return macro_bivariate(model, k);
}

ExperimentQuartet macro_quartet(const MacrostateModel& model) {
    return ExperimentQuartet(macro_bivariate(model, PairKind::A1A2),
                             macro_bivariate(model, PairKind::A1B2),
                             macro_bivariate(model, PairKind::B1A2),
                             macro_bivariate(model, PairKind::B1B2));
}

double macro_chsh(const MacrostateModel& model) {
    return bell_lhs(macro_quartet(model).correlations());
}

MacrostateModel quantum_target_model(const DensityMatrix& state, const QuartetSettings& settings,
                                     std::size_t grid_n) {
    std::array<ContextData, 4> contexts;
    for (int i = 0; i < 4; ++i) {
        const PairKind k = static_cast<PairKind>(i);
        const BivariateDistribution target =
            projective_bivariate(state, settings.side1(k), settings.side2(k));
        ContextData c;
        c.context = make_context(k, settings);
        // One macrostate per outcome pair (+,+), (+,-), (-,+), (-,-).
        c.weights = {target.p(Outcome::plus, Outcome::plus), target.p(Outcome::plus, Outcome::minus),
                     target.p(Outcome::minus, Outcome::plus),
                     target.p(Outcome::minus, Outcome::minus)};
        c.resp1 = {1.0, 1.0, 0.0, 0.0};
        c.resp2 = {1.0, 0.0, 1.0, 0.0};
        c.arcs = cumulative_arcs(c.weights);
        contexts[i] = std::move(c);
    }
    return MacrostateModel(grid_n, std::move(contexts));
}

MacrostateModel macrostate_from_quasi(const QuasiObjectivisticModel& model,
                                      const QuartetSettings& settings) {
    if (model.space.kind != HiddenVariableSpace::Kind::finite_grid) {
        throw std::invalid_argument("macrostate_from_quasi: finite grid required");
    }
    const std::size_t n = model.space.lambda.size();
    std::array<ContextData, 4> contexts;
    for (int i = 0; i < 4; ++i) {
        const PairKind k = static_cast<PairKind>(i);
        ContextData c;
        c.context = make_context(k, settings);
        c.weights = model.space.weight;
        c.resp1 = tabulate_response(model.space, model.response1, settings.side1(k));
        c.resp2 = tabulate_response(model.space, model.response2, settings.side2(k));
        c.arcs = cumulative_arcs(c.weights);
        contexts[i] = std::move(c);
    }
    return MacrostateModel(n, std::move(contexts));
}

FeasibilityResult attempt_quad_construction(const MacrostateModel& model) {
    if (model.context_independent()) {
        // The shared macrostate family supplies one response per
        // observable, so the product construction is an explicit joint.
        const std::vector<double>& w = model.context(PairKind::A1A2).weights;
        const std::vector<double>& pa1 = model.context(PairKind::A1A2).resp1;
        const std::vector<double>& pb1 = model.context(PairKind::B1A2).resp1;
        const std::vector<double>& pa2 = model.context(PairKind::A1A2).resp2;
        const std::vector<double>& pb2 = model.context(PairKind::A1B2).resp2;
        double out[16];
        kernels::quad_atoms(w.data(), pa1.data(), pb1.data(), pa2.data(), pb2.data(), w.size(),
                            out);
        std::array<double, 16> atoms{};
        for (int i = 0; i < 16; ++i) atoms[i] = out[i];
        FeasibilityResult r;
        r.status = FeasibilityResult::Status::feasible;
        r.witness = QuadrivariateDistribution::from_raw(atoms, /*normalize=*/true);
        return r;
    }
    return joint_exists(macro_quartet(model));
}

LocalRestrictionReport check_local_restriction(const MacrostateModel& model, double tol) {
    LocalRestrictionReport r;
    // Side marginals of the macrostate weights must depend on the own-side
    // observable only, the joint weights must factorize, and the responses
    // must be side-local.
    double dev = 0.0;
    const std::size_t m = model.context(PairKind::A1A2).weights.size();
    for (int i = 1; i < 4; ++i) {
        if (model.context(static_cast<PairKind>(i)).weights.size() != m) {
            r.holds = false;
            r.max_deviation = 1.0;
            return r;
        }
    }
    // Weight factorization per context is not defined for a flat macrostate
    // list; the restriction is judged on observable statistics instead: the
    // response-weighted side marginals must agree between the two contexts
    // sharing the observable, and within each context the joint response
    // statistics must factorize into the side marginals.
    for (int i = 0; i < 4; ++i) {
        const PairKind k = static_cast<PairKind>(i);
        const BivariateDistribution b = macro_bivariate(model, k);
        const double p1 = b.marginal_first(Outcome::plus);
        const double p2 = b.marginal_second(Outcome::plus);
        dev = std::max(dev, std::abs(b.p(Outcome::plus, Outcome::plus) - p1 * p2));
    }
    const auto side1_plus = [&](PairKind k) {
        return macro_bivariate(model, k).marginal_first(Outcome::plus);
    };
    const auto side2_plus = [&](PairKind k) {
        return macro_bivariate(model, k).marginal_second(Outcome::plus);
    };
    dev = std::max(dev, std::abs(side1_plus(PairKind::A1A2) - side1_plus(PairKind::A1B2)));
    dev = std::max(dev, std::abs(side1_plus(PairKind::B1A2) - side1_plus(PairKind::B1B2)));
    dev = std::max(dev, std::abs(side2_plus(PairKind::A1A2) - side2_plus(PairKind::B1A2)));
    dev = std::max(dev, std::abs(side2_plus(PairKind::A1B2) - side2_plus(PairKind::B1B2)));
    r.max_deviation = dev;
    r.holds = dev <= tol;
    return r;
}

ContextualValuesReport contextual_values_demo(
    const std::array<QuadrivariateDistribution, 4>& quad_per_context, std::size_t rounds,
    std::uint64_t seed) {
    std::array<std::unique_ptr<CumulativeSampler>, 4> samplers;
    for (int c = 0; c < 4; ++c) {
        samplers[c] = std::make_unique<CumulativeSampler>(std::vector<double>(
            quad_per_context[c].atoms().begin(), quad_per_context[c].atoms().end()));
    }
    // Which assignment coordinates each context pins down (bit positions in
    // the atom index): context A1A2 measures a1 and a2, and so on.
    static constexpr std::array<std::array<int, 2>, 4> kMeasuredBits = {{
        {3, 1},  // A1A2
        {3, 0},  // A1B2
        {2, 1},  // B1A2
        {2, 0},  // B1B2
    }};

    SplitMix64 rng(seed);
    std::size_t consistent = 0;
    for (std::size_t round = 0; round < rounds; ++round) {
        std::array<int, 4> sampled{};
        for (int c = 0; c < 4; ++c) sampled[c] = static_cast<int>(samplers[c]->sample(rng));
        bool any = false;
        for (int assign = 0; assign < 16 && !any; ++assign) {
            bool ok = true;
            for (int c = 0; c < 4 && ok; ++c) {
                for (int bit : kMeasuredBits[c]) {
                    if (((assign >> bit) & 1) != ((sampled[c] >> bit) & 1)) {
                        ok = false;
                        break;
                    }
                }
            }
            any = ok;
        }
        if (any) ++consistent;
    }
    ContextualValuesReport report;
    report.rounds = rounds;
    report.consistent_rounds = consistent;
    report.inconsistent_fraction =
        rounds == 0 ? 0.0
                    : static_cast<double>(rounds - consistent) / static_cast<double>(rounds);
    return report;
}

namespace {

struct ContextRelaxData {
    const ContextData* data;
    std::vector<double> cum_hi;  // upper arc bounds for basin lookup
};

std::size_t basin_of(const ContextRelaxData& c, double x) {
    const auto it = std::upper_bound(c.cum_hi.begin(), c.cum_hi.end(), x);
    return std::min<std::size_t>(static_cast<std::size_t>(it - c.cum_hi.begin()),
                                 c.cum_hi.size() - 1);
}

}  // namespace

std::vector<RelaxPoint> relaxation_sweep(const MacrostateModel& equilibrium,
                                         const ResponseFunction& germ1,
                                         const ResponseFunction& germ2,
                                         const RelaxationParams& params,
                                         const std::vector<std::size_t>& windows) {
    if (!(params.tau > 0.0)) throw std::invalid_argument("relaxation_sweep: tau must be > 0");
    if (params.samples == 0) throw std::invalid_argument("relaxation_sweep: samples must be >= 1");
    const double alpha = std::isinf(params.tau) ? 0.0 : std::min(1.0, 1.0 / params.tau);
    const double pdif = std::isinf(params.tau) ? 0.0 : std::min(1.0, params.diffusion / params.tau);
    const double step = 1.0 / static_cast<double>(equilibrium.grid_n());

    std::array<ContextRelaxData, 4> ctx;
    for (int i = 0; i < 4; ++i) {
        ctx[i].data = &equilibrium.context(static_cast<PairKind>(i));
        for (const auto& arc : ctx[i].data->arcs) ctx[i].cum_hi.push_back(arc.second);
    }

    std::vector<RelaxPoint> curve;
    curve.reserve(windows.size());
    for (std::size_t wi = 0; wi < windows.size(); ++wi) {
        const std::size_t window = windows[wi];
        RelaxPoint point;
        point.window = window;
        point.window_over_tau = std::isinf(params.tau)
                                    ? 0.0
                                    : static_cast<double>(window) / params.tau;

        double sigma_sq = 0.0;
        for (int c = 0; c < 4; ++c) {
            const ContextRelaxData& cd = ctx[c];
            const Angle setting1 = cd.data->context.setting1;
            const Angle setting2 = cd.data->context.setting2;

            constexpr std::size_t kChunk = 1 << 12;
            const std::size_t chunks = (params.samples + kChunk - 1) / kChunk;
            std::vector<std::int64_t> prod_sums(chunks, 0);

            parallel_for_units(chunks, params.threads, [&](std::size_t chunk) {
                std::int64_t local = 0;
                const std::size_t begin = chunk * kChunk;
                const std::size_t end = std::min(params.samples, begin + kChunk);
                for (std::size_t trial = begin; trial < end; ++trial) {
                    // One stream per (context, trial): every window observes
                    // the same prepared ensemble, so frozen dynamics give
                    // window-independent results exactly.
                    const std::uint64_t stream =
                        (static_cast<std::uint64_t>(c) << 40) + trial;
                    SplitMix64 rng(derive_seed(params.seed, stream));

                    double x = rng.uniform();  // context-independent preparation
                    std::size_t pre = 0;
                    double q1_sum = 0.0, q2_sum = 0.0;
                    std::size_t basin = 0;
                    bool relaxed = false;
                    std::size_t relaxed_samples = 0;
                    for (std::size_t t = 0;; ++t) {
                        ++pre;
                        q1_sum += germ1(kPi * x, setting1);
                        q2_sum += germ2(kPi * x, setting2);
                        if (t == window) break;
                        if (alpha > 0.0 && rng.bernoulli(alpha)) {
                            relaxed = true;
                            basin = basin_of(cd, x);
                            relaxed_samples = window - t;
                            break;
                        }
                        if (pdif > 0.0 && rng.bernoulli(pdif)) {
                            x += rng.bernoulli(0.5) ? step : -step;
                            if (x >= 1.0) x -= 1.0;
                            if (x < 0.0) x += 1.0;
                        }
                    }

                    double p1, p2;
                    if (relaxed && relaxed_samples > pre) {
                        p1 = cd.data->resp1[basin];
                        p2 = cd.data->resp2[basin];
                    } else {
                        p1 = q1_sum / static_cast<double>(pre);
                        p2 = q2_sum / static_cast<double>(pre);
                    }
                    const int x1 = rng.bernoulli(p1) ? 1 : -1;
                    const int x2 = rng.bernoulli(p2) ? 1 : -1;
                    local += x1 * x2;
                }
                prod_sums[chunk] = local;
            });

            std::int64_t total = 0;
            for (std::int64_t s : prod_sums) total += s;
            const double e = static_cast<double>(total) / static_cast<double>(params.samples);
            point.correlations[c] = e;
            sigma_sq += (1.0 - e * e) / static_cast<double>(params.samples);
        }

        CorrelationQuad cq;
        cq.e_a1a2 = point.correlations[0];
        cq.e_a1b2 = point.correlations[1];
        cq.e_b1a2 = point.correlations[2];
        cq.e_b1b2 = point.correlations[3];
        point.chsh = bell_lhs(cq);
        point.sigma = std::sqrt(sigma_sq);
        curve.push_back(point);
    }
    return curve;
}

}  // namespace bellsim
