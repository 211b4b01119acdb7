#include "bellsim/rng.hpp"

#include <algorithm>
#include <stdexcept>

namespace bellsim {

CumulativeSampler::CumulativeSampler(const std::vector<double>& weights) {
    if (weights.empty()) throw std::invalid_argument("CumulativeSampler: empty weights");
    cumulative_.reserve(weights.size());
    double sum = 0.0;
    for (double w : weights) {
        if (w < 0.0) throw std::invalid_argument("CumulativeSampler: negative weight");
        sum += w;
        cumulative_.push_back(sum);
    }
    if (sum <= 0.0) throw std::invalid_argument("CumulativeSampler: zero total weight");
    for (double& c : cumulative_) c /= sum;
    cumulative_.back() = 1.0;
}

std::size_t CumulativeSampler::sample(SplitMix64& rng) const {
    const double u = rng.uniform();
    const auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), u);
    return static_cast<std::size_t>(std::min<std::ptrdiff_t>(
        it - cumulative_.begin(), static_cast<std::ptrdiff_t>(cumulative_.size()) - 1));
}

}  // namespace bellsim
