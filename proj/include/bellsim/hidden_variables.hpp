#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <variant>
#include <vector>

#include "bellsim/distributions.hpp"
#include "bellsim/rng.hpp"

namespace bellsim {

// Hidden-variable space: the polarization circle [0, pi), either as a finite
// weighted grid (exact sums and sampling) or as the continuous circle with
// uniform density (sampling only).
struct HiddenVariableSpace {
    enum class Kind { finite_grid, continuous_circle };

    Kind kind = Kind::finite_grid;
    std::vector<double> lambda;   // finite_grid: points
    std::vector<double> weight;   // finite_grid: density, sums to 1 within 1e-12

    // Midpoint grid of n cells over [0, pi), uniform weights.
    static HiddenVariableSpace uniform_grid(std::size_t n);
    static HiddenVariableSpace finite_grid(std::vector<double> lambda,
                                           std::vector<double> weight);
    static HiddenVariableSpace continuous_circle();
};

// p(outcome = +1 | lambda, own setting). Locality is structural: the
// function never sees the remote setting.
class ResponseFunction {
public:
    using Fn = std::function<double(double lambda, const Angle& setting)>;

    ResponseFunction(std::string name, Fn fn, bool deterministic,
                     std::map<std::string, double> params = {})
        : name_(std::move(name)),
          fn_(std::move(fn)),
          deterministic_(deterministic),
          params_(std::move(params)) {}

    double operator()(double lambda, const Angle& setting) const { return fn_(lambda, setting); }

    bool deterministic() const { return deterministic_; }
    const std::string& name() const { return name_; }
    const std::map<std::string, double>& params() const { return params_; }

    // +1 iff the analyzer at theta lies within pi/4 of lambda (mod pi/2);
    // perfect correlations at equal settings, triangle-wave correlation law.
    static ResponseFunction sawtooth();
    // sawtooth mixed with a coin: p = (1 - eta)/2 + eta * sawtooth.
    static ResponseFunction noisy_sawtooth(double eta);
    // Malus law, p = cos^2(theta - lambda).
    static ResponseFunction malus();
    static ResponseFunction constant(double p);
    // Per-setting tables over a uniform n-cell grid; lookup requires the
    // exact setting used to build the table.
    static ResponseFunction tabulated(std::map<double, std::vector<double>> tables,
                                      std::size_t grid_n, bool deterministic);

private:
    std::string name_;
    Fn fn_;
    bool deterministic_;
    std::map<std::string, double> params_;
};

struct QuasiObjectivisticModel {
    HiddenVariableSpace space;
    ResponseFunction response1;
    ResponseFunction response2;

    bool deterministic() const {
        return response1.deterministic() && response2.deterministic();
    }
};

struct ExactSum {};
struct MonteCarlo {
    std::uint64_t seed = 0;
    std::size_t n = 0;
    unsigned threads = 1;
};
using SamplingMethod = std::variant<ExactSum, MonteCarlo>;

BivariateDistribution hv_bivariate(const QuasiObjectivisticModel& model, Angle theta1,
                                   Angle theta2, const SamplingMethod& method = ExactSum{});

ExperimentQuartet hv_quartet(const QuasiObjectivisticModel& model, const QuartetSettings& s,
                             const SamplingMethod& method = ExactSum{});

double hv_chsh(const QuasiObjectivisticModel& model, const QuartetSettings& s,
               const SamplingMethod& method = ExactSum{});

struct LhvFitReport {
    double max_abs_deviation = 0.0;
    double argmax_delta = 0.0;
    std::size_t grid_points = 0;
};

// Maximum deviation between the model's correlation at settings
// (delta, 0) and the target correlation, over a uniform grid of
// differences delta in [0, pi).
LhvFitReport best_lhv_fit(const std::function<double(double)>& target_correlation,
                          const QuasiObjectivisticModel& model, std::size_t grid_points = 100);

// Response values tabulated on the model grid; building block for the
// kernel-based exact sums.
std::vector<double> tabulate_response(const HiddenVariableSpace& space,
                                      const ResponseFunction& response, Angle setting);

}  // namespace bellsim
