#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "bellsim/joint.hpp"
#include "bellsim/quantum.hpp"

namespace bellsim {

// Contextual macrostate framework: measurement outcomes are conditioned on
// context-dependent macrostates (occupation measures over the hidden
// variable circle) instead of instantaneous microstates. A model that is
// secretly context-independent collapses to the quasi-objectivistic case
// and therefore satisfies Bell's inequality; genuinely contextual models
// can reproduce the quantum statistics.

enum class Side1Obs { A1, B1 };
enum class Side2Obs { A2, B2 };

struct MeasurementContext {
    Side1Obs side1 = Side1Obs::A1;
    Side2Obs side2 = Side2Obs::A2;
    Angle setting1;
    Angle setting2;
};

// Contexts are stored in PairKind order: (A1,A2), (A1,B2), (B1,A2), (B1,B2).
PairKind context_pair(Side1Obs s1, Side2Obs s2);
MeasurementContext make_context(PairKind pair, const QuartetSettings& settings);

// One macrostate: an ergodic-occupation vector over the lambda grid plus
// the side responses conditioned on it.
struct Macrostate {
    std::string id;
    std::vector<double> occupation;  // normalized weights over the grid
};

struct ContextData {
    MeasurementContext context;
    std::vector<double> weights;  // rho over this context's macrostates
    std::vector<double> resp1;    // p(side-1 outcome + | macrostate)
    std::vector<double> resp2;
    // Relaxation basin of each macrostate on the unit circle [0, 1);
    // consecutive arcs with lengths proportional to the weights.
    std::vector<std::pair<double, double>> arcs;
};

class MacrostateModel {
public:
    MacrostateModel(std::size_t grid_n, std::array<ContextData, 4> contexts);

    const ContextData& context(PairKind k) const { return contexts_[static_cast<int>(k)]; }
    std::size_t grid_n() const { return grid_n_; }

    QuartetSettings settings() const;

    // Preconditions of the explicit product construction: all contexts
    // share one macrostate family and the response to an observable does
    // not depend on the partner context.
    bool context_independent(double tol = 1e-12) const;

    // Occupation vector of one macrostate, materialized on the grid.
    Macrostate macrostate(PairKind k, std::size_t m) const;

private:
    std::size_t grid_n_;
    std::array<ContextData, 4> contexts_;
};

BivariateDistribution macro_bivariate(const MacrostateModel& model, PairKind context);

// Checked lookup; throws if the context (observables and settings) does not
// match the model's stored context.
BivariateDistribution macro_bivariate(const MacrostateModel& model,
                                      const MeasurementContext& context);

ExperimentQuartet macro_quartet(const MacrostateModel& model);

double macro_chsh(const MacrostateModel& model);

// Contextual model whose four macro bivariates equal the projective
// quantum statistics of the given state: each context carries one
// macrostate per outcome pair, weighted by the quantum probability, with
// deterministic side-factorized responses.
MacrostateModel quantum_target_model(const DensityMatrix& state, const QuartetSettings& settings,
                                     std::size_t grid_n = 3600);

// Degenerate embedding of a quasi-objectivistic model: every grid cell is
// its own macrostate and all contexts share the family.
MacrostateModel macrostate_from_quasi(const QuasiObjectivisticModel& model,
                                      const QuartetSettings& settings);

// Context-independent models yield the explicit product joint; contextual
// ones fall back to the LP decision on the model's quartet.
FeasibilityResult attempt_quad_construction(const MacrostateModel& model);

// Whether the model's contextuality is carried by the local setting alone:
// requires per-context macrostate weights to factorize into independent
// side marginals that depend only on the own-side observable, with
// side-local responses. Reports the largest deviation found.
struct LocalRestrictionReport {
    bool holds = false;
    double max_deviation = 0.0;
};
LocalRestrictionReport check_local_restriction(const MacrostateModel& model, double tol = 1e-9);

// Samples one outcome quadruple per context and round (contexts in
// PairKind order) and counts the rounds admitting no context-independent
// value assignment for the observables measured in each context.
struct ContextualValuesReport {
    std::size_t rounds = 0;
    std::size_t consistent_rounds = 0;
    double inconsistent_fraction = 0.0;
};
ContextualValuesReport contextual_values_demo(
    const std::array<QuadrivariateDistribution, 4>& quad_per_context, std::size_t rounds,
    std::uint64_t seed);

// Ergodic relaxation toy. A microstate prepared context-independently on
// the circle diffuses under a context-dependent kernel: with rate 1/tau it
// drops into the local equilibrium of the basin it currently occupies, and
// it hops between neighbouring grid cells with rate diffusion/tau.
// Outcomes are conditioned on the occupation time-averaged over a window of
// T+1 samples: whichever part dominates, the unrelaxed path (averaged
// quasi-objectivistic germ responses) or the equilibrated macrostate
// (the model's contextual responses), decides the response probabilities.
struct RelaxationParams {
    double tau = 64.0;       // relaxation time in steps; may be infinite
    double diffusion = 1.0;  // expected cell hops per tau
    double germ_eta = 0.9;   // noise of the bundled pre-relaxation responses
    std::uint64_t seed = 12345;
    std::size_t samples = 100000;  // trials per window and context
    unsigned threads = 1;
};

struct RelaxPoint {
    std::size_t window = 0;
    double window_over_tau = 0.0;
    double chsh = 0.0;
    double sigma = 0.0;  // Monte Carlo standard error of the CHSH estimate
    std::array<double, 4> correlations{};
};

std::vector<RelaxPoint> relaxation_sweep(const MacrostateModel& equilibrium,
                                         const ResponseFunction& germ1,
                                         const ResponseFunction& germ2,
                                         const RelaxationParams& params,
                                         const std::vector<std::size_t>& windows);

}  // namespace bellsim
