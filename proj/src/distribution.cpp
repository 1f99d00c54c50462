#include "envrisk/distribution.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "envrisk/errors.hpp"

namespace envrisk {

double DiscreteDistribution::mean() const {
    double m = 0.0;
    for (std::size_t i = 0; i < values.size(); ++i) m += probs[i] * values[i];
    return m;
}

DiscreteDistribution build_distribution(std::vector<double> values, std::vector<double> weights) {
    if (values.size() != weights.size())
        fail(errc::length_mismatch, "values has " + std::to_string(values.size()) +
                                        " entries, weights has " + std::to_string(weights.size()));
    if (values.empty()) fail(errc::empty_input, "no atoms");

    for (std::size_t i = 0; i < values.size(); ++i) {
        if (!std::isfinite(values[i]) || !std::isfinite(weights[i]))
            fail(errc::non_finite_value, "atom " + std::to_string(i));
        if (weights[i] < 0.0)
            fail(errc::negative_weight, "atom " + std::to_string(i) + " has weight " +
                                            std::to_string(weights[i]));
    }

    std::vector<std::size_t> order(values.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });

    DiscreteDistribution d;
    d.values.reserve(values.size());
    d.probs.reserve(values.size());
    for (std::size_t k : order) {
        const double v = values[k];
        const double w = weights[k];
        // Merge atoms closer than 1e-12 relative to magnitude; the first
        // atom of a run keeps its value.
        if (!d.values.empty() && v - d.values.back() <= 1e-12 * std::max(1.0, std::abs(v))) {
            d.probs.back() += w;
        } else {
            d.values.push_back(v);
            d.probs.push_back(w);
        }
    }

    const double total = std::accumulate(d.probs.begin(), d.probs.end(), 0.0);
    if (total <= 0.0) fail(errc::zero_total_weight, "total weight is " + std::to_string(total));

    std::size_t out = 0;
    for (std::size_t i = 0; i < d.values.size(); ++i) {
        if (d.probs[i] == 0.0) continue; // zero-probability atoms are dropped
        d.values[out] = d.values[i];
        d.probs[out] = d.probs[i] / total;
        ++out;
    }
    d.values.resize(out);
    d.probs.resize(out);
    return d;
}

double survival(const DiscreteDistribution& d, double t) {
    // Backward accumulation keeps small tail probabilities exact.
    double s = 0.0;
    for (std::size_t i = d.size(); i-- > 0;) {
        if (d.values[i] > t) s += d.probs[i];
        else break;
    }
    return s;
}

double cdf(const DiscreteDistribution& d, double t) {
    double c = 0.0;
    for (std::size_t i = 0; i < d.size() && d.values[i] <= t; ++i) c += d.probs[i];
    return c;
}

} // namespace envrisk
