#include "envrisk/classical.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "envrisk/env_measure.hpp"
#include "envrisk/errors.hpp"

namespace envrisk {

LevelMeasure LevelMeasure::make(std::vector<double> levels, std::vector<double> weights) {
    const DiscreteDistribution d = build_distribution(std::move(levels), std::move(weights));
    if (d.min() <= 0.0 || d.max() >= 1.0)
        fail(errc::domain_error, "levels must lie strictly inside (0,1)");
    LevelMeasure mu;
    mu.levels = d.values;
    mu.weights = d.probs;
    return mu;
}

namespace {

void require_level_open(double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0))
        fail(errc::domain_error, "level " + std::to_string(alpha) + " outside (0,1)");
}

// Exact integral of the lower quantile over (lo, hi]: the quantile equals
// value k on the cdf step (F_{k-1}, F_k].
double quantile_integral(const DiscreteDistribution& d, double lo, double hi) {
    double acc = 0.0;
    double f_prev = 0.0;
    for (std::size_t k = 0; k < d.size(); ++k) {
        // Pin the final cdf level to 1 so the top step always closes.
        const double f_k = k + 1 == d.size() ? 1.0 : f_prev + d.probs[k];
        const double overlap = std::min(f_k, hi) - std::max(f_prev, lo);
        if (overlap > 0.0) acc += d.values[k] * overlap;
        f_prev = f_k;
    }
    return acc;
}

} // namespace

double var(const DiscreteDistribution& d, double alpha) {
    require_level_open(alpha);
    double cum = 0.0;
    for (std::size_t k = 0; k < d.size(); ++k) {
        cum += d.probs[k];
        if (cum >= alpha) return d.values[k];
    }
    return d.max(); // cdf never crossed alpha within rounding
}

double avar(const DiscreteDistribution& d, double alpha) {
    require_level_open(alpha);
    return quantile_integral(d, alpha, 1.0) / (1.0 - alpha);
}

double wvar(const DiscreteDistribution& d, const LevelMeasure& mu) {
    double acc = 0.0;
    for (std::size_t i = 0; i < mu.levels.size(); ++i)
        acc += mu.weights[i] * avar(d, mu.levels[i]);
    return acc;
}

double rvar(const DiscreteDistribution& d, double a1, double a2) {
    // closed endpoints are fine here: [0, 1] integrates the whole quantile
    // function and returns the mean
    if (!(a1 >= 0.0 && a2 <= 1.0))
        fail(errc::invalid_probability, "rvar window outside [0,1]");
    if (!(a1 < a2)) fail(errc::domain_error, "rvar needs a1 < a2");
    return quantile_integral(d, a1, a2) / (a2 - a1);
}

RecoveryCheck wvar_recovery_check(const DiscreteDistribution& d, const LevelMeasure& mu) {
    ConditionalModel m;
    m.state_probs = build_distribution(mu.levels, mu.weights);
    m.states = m.state_probs.values;
    m.conditionals.assign(m.states.size(), d);

    EnvMeasureSpec spec;
    spec.inner = StateFamilyRule::level_from_state(DistortionFn::Family::avar, m.states.front(),
                                                   m.states.back());
    spec.outer = DistortionFn::identity();

    RecoveryCheck c;
    c.classical = wvar(d, mu);
    c.layered = env_risk(m, spec);
    c.abs_delta = std::abs(c.classical - c.layered);
    return c;
}

RecoveryCheck rvar_recovery_check(const DiscreteDistribution& d, double a1, double a2,
                                  int n_states) {
    // same closed-window domain as rvar; the discretized levels below are
    // interior even at the endpoints
    if (!(a1 >= 0.0 && a2 <= 1.0))
        fail(errc::invalid_probability, "rvar window outside [0,1]");
    if (!(a1 < a2)) fail(errc::domain_error, "rvar needs a1 < a2");
    if (n_states < 1) fail(errc::domain_error, "need at least one state");

    // Midpoint discretization of the uniform level density on (a1, a2).
    const double h = (a2 - a1) / n_states;
    std::vector<double> levels(static_cast<std::size_t>(n_states));
    for (int j = 0; j < n_states; ++j)
        levels[static_cast<std::size_t>(j)] = a1 + (j + 0.5) * h;

    ConditionalModel m;
    m.state_probs = build_distribution(levels, std::vector<double>(levels.size(), 1.0));
    m.states = m.state_probs.values;
    m.conditionals.assign(m.states.size(), d);

    EnvMeasureSpec spec;
    spec.inner = StateFamilyRule::level_from_state(DistortionFn::Family::var, m.states.front(),
                                                   m.states.back());
    spec.outer = DistortionFn::identity();

    RecoveryCheck c;
    c.classical = rvar(d, a1, a2);
    c.layered = env_risk(m, spec);
    c.abs_delta = std::abs(c.classical - c.layered);
    return c;
}

} // namespace envrisk
