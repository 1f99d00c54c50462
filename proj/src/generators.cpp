#include "envrisk/generators.hpp"

#include <algorithm>
#include <cmath>

namespace envrisk {

DiscreteDistribution random_distribution(CounterRng& rng, int n_atoms, double lo, double hi) {
    std::vector<double> values(static_cast<std::size_t>(n_atoms));
    std::vector<double> weights(static_cast<std::size_t>(n_atoms));
    for (auto& v : values) v = rng.uniform(lo, hi);
    for (auto& w : weights) w = rng.exponential();
    return build_distribution(std::move(values), std::move(weights));
}

std::vector<double> random_simplex(CounterRng& rng, int n) {
    std::vector<double> p(static_cast<std::size_t>(n));
    double total = 0.0;
    for (auto& pi : p) {
        pi = rng.exponential() + 1e-3; // keep entries away from zero
        total += pi;
    }
    for (auto& pi : p) pi /= total;
    return p;
}

DistortionFn random_concave_pwl(CounterRng& rng, int n_knots) {
    // Decreasing positive slopes integrate to a concave non-decreasing g;
    // rescaling both axes pins (0,0) and (1,1).
    std::vector<double> slopes(static_cast<std::size_t>(n_knots - 1));
    for (auto& s : slopes) s = rng.uniform(0.05, 1.0);
    std::sort(slopes.begin(), slopes.end(), std::greater<>());
    std::vector<std::pair<double, double>> knots;
    knots.emplace_back(0.0, 0.0);
    double u = 0.0, v = 0.0;
    const double du = 1.0 / static_cast<double>(n_knots - 1);
    for (std::size_t i = 0; i < slopes.size(); ++i) {
        u += du;
        v += slopes[i] * du;
        knots.emplace_back(u, v);
    }
    knots.back().first = 1.0;
    const double scale = knots.back().second;
    for (auto& [ku, kv] : knots) kv /= scale;
    knots.back().second = 1.0;
    return DistortionFn::pwl(std::move(knots));
}

DistortionFn random_concave_distortion(CounterRng& rng) {
    switch (rng.uniform_int(0, 3)) {
        case 0: return DistortionFn::identity();
        case 1: return DistortionFn::avar(rng.uniform(0.5, 0.99));
        case 2: return DistortionFn::power(rng.uniform(0.3, 1.0));
        default: return random_concave_pwl(rng, rng.uniform_int(3, 6));
    }
}

ScenarioTable random_coupled_table(CounterRng& rng, int n_states, int rows_per_state) {
    ScenarioTable t;
    t.has_y = true;
    for (int s = 0; s < n_states; ++s) {
        // States spaced at least 0.5 apart so distinct-value grouping is stable.
        const double z = static_cast<double>(s) + rng.uniform(0.0, 0.4);
        for (int r = 0; r < rows_per_state; ++r) {
            t.weight.push_back(rng.uniform(0.2, 1.0));
            t.x.push_back(rng.uniform(-5.0, 5.0));
            t.y.push_back(rng.uniform(-5.0, 5.0));
            t.z.push_back(z);
        }
    }
    return t;
}

} // namespace envrisk
