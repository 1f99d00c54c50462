#include "envrisk/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "envrisk/background.hpp"
#include "envrisk/dual.hpp"
#include "envrisk/generators.hpp"
#include "envrisk/random.hpp"

namespace envrisk {

namespace {

DistortionFn family_cycle(CounterRng& rng, int which) {
    switch (which % 5) {
        case 0: return DistortionFn::identity();
        case 1: return DistortionFn::avar(rng.uniform(0.5, 0.99));
        case 2: return DistortionFn::var(rng.uniform(0.5, 0.99));
        case 3: return DistortionFn::power(rng.uniform(0.2, 1.0));
        default: return random_concave_pwl(rng, rng.uniform_int(3, 6));
    }
}

} // namespace

RecoverySuiteReport run_recovery_suite(std::uint64_t seed, int models) {
    RecoverySuiteReport rep;
    rep.models = models;
    for (int i = 0; i < models; ++i) {
        CounterRng rng(seed, static_cast<std::uint64_t>(i));
        const ScenarioTable t = random_coupled_table(rng, rng.uniform_int(2, 5), rng.uniform_int(2, 5));
        const ConditionalModel model = build_conditional_model(t, Binning::distinct());

        EnvMeasureSpec spec;
        spec.inner = StateFamilyRule::constant(family_cycle(rng, i));
        spec.outer = family_cycle(rng, i + 3);

        // Inner round-trip at multiples of 1/100.
        const std::size_t z_index =
            static_cast<std::size_t>(rng.uniform_int(0, static_cast<int>(model.n_states()) - 1));
        const std::vector<double> grid{0.0, 0.01, 0.25, 0.5, 0.75, 0.99, 1.0};
        const StateRiskFunctional probe = [&](const DiscreteDistribution& d, double z) {
            return choquet_distorted(d, resolve_state(spec.inner, z));
        };
        const DistortionFn inner_fn = resolve_state(spec.inner, model.states[z_index]);
        for (const auto& [u, got] : recover_inner_distortion(model, z_index, probe, grid)) {
            const double delta = std::abs(got - eval(inner_fn, u));
            rep.worst_inner_delta = std::max(rep.worst_inner_delta, delta);
            if (delta > 1e-12) ++rep.violations;
            ++rep.probes;
        }

        // Outer round-trip at the prefix sums of the state law.
        std::vector<double> levels{0.0};
        double cum = 0.0;
        for (double p : model.state_probs.probs) levels.push_back(cum += p);
        for (const auto& [u, got] : recover_outer_distortion(model, spec, levels)) {
            const double delta = std::abs(got - eval(spec.outer, u));
            rep.worst_outer_delta = std::max(rep.worst_outer_delta, delta);
            if (delta > 1e-12) ++rep.violations;
            ++rep.probes;
        }
    }
    return rep;
}

BackgroundSuiteReport run_background_suite(std::uint64_t seed, int models) {
    BackgroundSuiteReport rep;
    rep.models = models;
    for (int i = 0; i < models; ++i) {
        CounterRng rng(seed, static_cast<std::uint64_t>(i));
        const int n = rng.uniform_int(3, 12);
        const bool lattice = i % 3 == 2; // coarse values force phi ties
        std::vector<double> w(static_cast<std::size_t>(n)), x(w.size()), y(w.size());
        for (std::size_t k = 0; k < w.size(); ++k) {
            w[k] = rng.uniform(0.2, 1.0);
            x[k] = rng.uniform(-3.0, 3.0);
            y[k] = rng.uniform(-3.0, 3.0);
            if (lattice) {
                x[k] = std::round(x[k] * 2.0) / 2.0;
                y[k] = std::round(y[k] * 2.0) / 2.0;
            }
        }
        const JointLossModel m = build_joint_model(w, x, y);
        const SmoothConcaveG g =
            i % 2 == 0 ? SmoothConcaveG::quadratic() : SmoothConcaveG::power(0.7);

        bool bad = false;
        const SandwichReport s = sandwich_check(m, g);
        rep.worst_sandwich_slack = std::max(rep.worst_sandwich_slack, s.worst_slack);
        rep.worst_gamma_gap = std::max(rep.worst_gamma_gap, std::abs(s.gamma - s.gamma_ls));
        if (s.worst_slack > 1e-9 || std::abs(s.gamma - s.gamma_ls) > 1e-9) bad = true;

        const HlHrTable t = build_hL_hR(m, g);
        for (std::size_t k = 0; k < t.levels.size(); ++k) {
            rep.worst_bound_order =
                std::max(rep.worst_bound_order, t.h_right[k] - t.h_left[k]);
            if (t.h_right[k] > t.h_left[k] + 1e-12) bad = true;
        }

        // Recompute the s-jumps from the public marginal and compare.
        const DiscreteDistribution ls = ls_measure(m, g);
        if (ls.size() != m.n_levels()) {
            bad = true;
        } else {
            double below = 0.0, mass_sum = 0.0;
            for (std::size_t k = 0; k < m.n_levels(); ++k) {
                const double tail_incl = 1.0 - below; // P(Z >= z_k)
                below += m.z_probs[k];
                // P(Z > z_max) is exactly zero; 1 - sum leaves an fp residual
                // that g with unbounded slope at 0 would inflate.
                const double tail_excl =
                    k + 1 == m.n_levels() ? 0.0 : std::max(1.0 - below, 0.0);
                const double mass = eval(g, std::min(tail_incl, 1.0)) - eval(g, tail_excl);
                mass_sum += mass;
                const double gap = std::abs(mass - ls.probs[k]);
                rep.worst_ls_mass_error = std::max(rep.worst_ls_mass_error, gap);
                if (gap > 1e-12) bad = true;
            }
            rep.worst_ls_mass_error =
                std::max(rep.worst_ls_mass_error, std::abs(mass_sum - 1.0));
            if (std::abs(mass_sum - 1.0) > 1e-12) bad = true;
        }

        if (bad) ++rep.violations;
    }
    return rep;
}

DualSuiteReport run_dual_suite(std::uint64_t seed, int models, long trials_per_model) {
    DualSuiteReport rep;
    rep.models = models;
    rep.trials_per_model = trials_per_model;
    rep.worst_overshoot = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < models; ++i) {
        CounterRng rng(seed, static_cast<std::uint64_t>(i));
        const TwoLayerFiniteModel m = random_two_layer_model(rng, 6, 6);
        const DualGapReport r = dual_gap_check(m, trials_per_model, rng.next_u64());
        rep.exceed_count += r.exceed_count;
        const double gap = std::abs(r.attained - r.primal);
        rep.worst_attained_gap = std::max(rep.worst_attained_gap, gap);
        if (gap > 1e-9) ++rep.attainment_failures;
        rep.worst_overshoot = std::max(rep.worst_overshoot, r.max_random - r.primal);
    }
    return rep;
}

} // namespace envrisk
