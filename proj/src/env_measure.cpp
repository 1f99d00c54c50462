#include "envrisk/env_measure.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <string>

#include "envrisk/errors.hpp"
#include "envrisk/generators.hpp"
#include "envrisk/parallel.hpp"

namespace envrisk {

double inner_risk(const ConditionalModel& m, std::size_t z_index, const EnvMeasureSpec& spec) {
    if (z_index >= m.n_states())
        fail(errc::index_out_of_range, "state index " + std::to_string(z_index) + " of " +
                                           std::to_string(m.n_states()));
    return choquet_distorted(m.conditionals[z_index], resolve_state(spec.inner, m.states[z_index]));
}

RiskProfile risk_profile_serial(const ConditionalModel& m, const EnvMeasureSpec& spec) {
    RiskProfile p;
    p.states = m.states;
    p.probs = m.state_probs.probs;
    p.values.resize(m.n_states());
    for (std::size_t i = 0; i < m.n_states(); ++i) p.values[i] = inner_risk(m, i, spec);
    return p;
}

RiskProfile risk_profile(const ConditionalModel& m, const EnvMeasureSpec& spec) {
    RiskProfile p;
    p.states = m.states;
    p.probs = m.state_probs.probs;
    p.values.resize(m.n_states());
    const auto n = static_cast<std::ptrdiff_t>(m.n_states());
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) num_threads(worker_count())
#endif
    for (std::ptrdiff_t i = 0; i < n; ++i)
        p.values[static_cast<std::size_t>(i)] = inner_risk(m, static_cast<std::size_t>(i), spec);
    return p;
}

double env_risk(const RiskProfile& profile, const DistortionFn& outer) {
    const DiscreteDistribution law = build_distribution(profile.values, profile.probs);
    return choquet_distorted(law, outer);
}

double env_risk(const ConditionalModel& m, const EnvMeasureSpec& spec) {
    return env_risk(risk_profile(m, spec), spec.outer);
}

std::vector<std::pair<double, double>> recover_inner_distortion(const ConditionalModel& m,
                                                                std::size_t z_index,
                                                                const StateRiskFunctional& probe,
                                                                std::span<const double> grid,
                                                                int uniform_atoms) {
    if (z_index >= m.n_states())
        fail(errc::index_out_of_range, "state index " + std::to_string(z_index) + " of " +
                                           std::to_string(m.n_states()));
    if (uniform_atoms < 1) fail(errc::domain_error, "uniform grid needs at least 1 atom");
    const int ua = uniform_atoms;

    std::vector<std::pair<double, double>> out;
    out.reserve(grid.size());
    for (double u : grid) {
        if (u < 0.0 || u > 1.0)
            fail(errc::domain_error, "grid level " + std::to_string(u) + " outside [0,1]");
        const long j = std::lround(u * ua);
        if (std::abs(u - static_cast<double>(j) / ua) > 1e-12)
            fail(errc::grid_not_attainable,
                 "level " + std::to_string(u) + " is not a multiple of 1/" + std::to_string(ua));
        // Indicator of the top j atoms of the uniform grid variable: the
        // conditional law of the loss is Bernoulli with success mass j/ua.
        std::vector<double> values(static_cast<std::size_t>(ua));
        std::vector<double> weights(static_cast<std::size_t>(ua), 1.0);
        for (int i = 1; i <= ua; ++i)
            values[static_cast<std::size_t>(i - 1)] = i > ua - j ? 1.0 : 0.0;
        const DiscreteDistribution law = build_distribution(std::move(values), std::move(weights));
        out.emplace_back(u, probe(law, m.states[z_index]));
    }
    return out;
}

std::vector<std::pair<double, double>> recover_outer_distortion(const ConditionalModel& m,
                                                                const EnvMeasureSpec& spec,
                                                                std::span<const double> levels) {
    const std::size_t n = m.n_states();
    const std::vector<double>& p = m.state_probs.probs;

    // Subset sums of the state probabilities, dense over bitmasks when the
    // state count is small, prefix sums otherwise.
    std::vector<double> sums;
    bool dense = n <= 20;
    if (dense) {
        sums.resize(std::size_t{1} << n, 0.0);
        for (std::size_t mask = 1; mask < sums.size(); ++mask) {
            const std::size_t low = mask & (mask - 1);
            const int bit = std::countr_zero(mask);
            sums[mask] = sums[low] + p[static_cast<std::size_t>(bit)];
        }
    } else {
        sums.resize(n + 1, 0.0);
        for (std::size_t i = 0; i < n; ++i) sums[i + 1] = sums[i] + p[i];
    }

    std::vector<std::pair<double, double>> out;
    out.reserve(levels.size());
    for (double u : levels) {
        std::size_t found = sums.size();
        for (std::size_t mask = 0; mask < sums.size(); ++mask)
            if (std::abs(sums[mask] - u) <= 1e-12) {
                found = mask;
                break;
            }
        if (found == sums.size())
            fail(errc::level_not_attainable,
                 "no state set carries probability " + std::to_string(u));

        // Loss = indicator that the state lands in the chosen set; the
        // conditionals are degenerate so any inner distortion passes it
        // through unchanged.
        ConditionalModel ind;
        ind.states = m.states;
        ind.state_probs = m.state_probs;
        ind.conditionals.reserve(n);
        for (std::size_t i = 0; i < n; ++i) {
            const bool in_set = dense ? ((found >> i) & 1U) != 0 : i < found;
            ind.conditionals.push_back(build_distribution({in_set ? 1.0 : 0.0}, {1.0}));
        }
        out.emplace_back(u, env_risk(ind, spec));
    }
    return out;
}

namespace {

struct TrialSlacks {
    double monotonicity;
    double translation;
    double homogeneity;
    double subadditivity;
};

TrialSlacks run_coherence_trial(CounterRng& rng, const EnvMeasureSpec& spec) {
    const int n_states = rng.uniform_int(2, 5);
    const int rows = rng.uniform_int(2, 6);
    const ScenarioTable t = random_coupled_table(rng, n_states, rows);
    const Binning binning = Binning::distinct();

    const double rho_x = env_risk(conditional_model_over(t, binning, t.x), spec);
    const double rho_y = env_risk(conditional_model_over(t, binning, t.y), spec);

    std::vector<double> v(t.rows());

    // Y >= X pointwise on the shared rows.
    for (std::size_t i = 0; i < t.rows(); ++i) v[i] = t.x[i] + rng.uniform(0.0, 2.0);
    const double rho_dominating = env_risk(conditional_model_over(t, binning, v), spec);

    const double a = rng.uniform(-3.0, 3.0);
    for (std::size_t i = 0; i < t.rows(); ++i) v[i] = t.x[i] + a;
    const double rho_shift = env_risk(conditional_model_over(t, binning, v), spec);

    const double c = rng.uniform(0.1, 4.0);
    for (std::size_t i = 0; i < t.rows(); ++i) v[i] = c * t.x[i];
    const double rho_scaled = env_risk(conditional_model_over(t, binning, v), spec);

    for (std::size_t i = 0; i < t.rows(); ++i) v[i] = t.x[i] + t.y[i];
    const double rho_sum = env_risk(conditional_model_over(t, binning, v), spec);

    TrialSlacks s;
    s.monotonicity = rho_x - rho_dominating;
    s.translation = std::abs(rho_shift - rho_x - a);
    s.homogeneity = std::abs(rho_scaled - c * rho_x) / std::max(1.0, std::abs(c * rho_x));
    s.subadditivity = rho_sum - rho_x - rho_y;
    return s;
}

CoherenceReport run_coherence(std::uint64_t seed, int trials, const EnvMeasureSpec* fixed_spec) {
    CoherenceReport r;
    r.trials = trials;
    std::vector<TrialSlacks> slacks(static_cast<std::size_t>(trials));
    const auto n = static_cast<std::ptrdiff_t>(trials);
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) num_threads(worker_count())
#endif
    for (std::ptrdiff_t i = 0; i < n; ++i) {
        CounterRng rng(seed, static_cast<std::uint64_t>(i));
        if (fixed_spec) {
            slacks[static_cast<std::size_t>(i)] = run_coherence_trial(rng, *fixed_spec);
        } else {
            EnvMeasureSpec spec;
            spec.inner = StateFamilyRule::constant(random_concave_distortion(rng));
            spec.outer = random_concave_distortion(rng);
            slacks[static_cast<std::size_t>(i)] = run_coherence_trial(rng, spec);
        }
    }
    for (const TrialSlacks& s : slacks) {
        r.worst_monotonicity = std::max(r.worst_monotonicity, s.monotonicity);
        r.worst_translation = std::max(r.worst_translation, s.translation);
        r.worst_homogeneity = std::max(r.worst_homogeneity, s.homogeneity);
        r.worst_subadditivity = std::max(r.worst_subadditivity, s.subadditivity);
        if (s.monotonicity > 1e-9) ++r.monotonicity_violations;
        if (s.translation > 1e-9) ++r.translation_violations;
        if (s.homogeneity > 1e-9) ++r.homogeneity_violations;
        if (s.subadditivity > 1e-9) ++r.subadditivity_violations;
    }
    return r;
}

} // namespace

CoherenceReport coherence_suite(std::uint64_t seed, int trials, const EnvMeasureSpec& spec) {
    if (!is_concave(spec.inner) || !is_concave(spec.outer))
        fail(errc::non_concave_spec, "coherence sweep needs concave inner and outer distortions");
    return run_coherence(seed, trials, &spec);
}

CoherenceReport coherence_suite_mixed(std::uint64_t seed, int trials) {
    return run_coherence(seed, trials, nullptr);
}

} // namespace envrisk
