#include "envrisk/dual.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "envrisk/env_measure.hpp"
#include "envrisk/errors.hpp"
#include "envrisk/generators.hpp"
#include "envrisk/parallel.hpp"

namespace envrisk {

namespace {

void require_simplex(std::span<const double> p) {
    double total = 0.0;
    for (double pi : p) {
        if (pi < 0.0) fail(errc::invalid_probability, "negative probability");
        total += pi;
    }
    if (std::abs(total - 1.0) > 1e-9)
        fail(errc::invalid_probability, "probabilities sum to " + std::to_string(total));
}

} // namespace

void validate(const TwoLayerFiniteModel& m) {
    const std::size_t n = m.n_states();
    if (n == 0) fail(errc::empty_input, "no states");
    if (n > 8) fail(errc::too_large, "state count " + std::to_string(n) + " exceeds 8");
    if (m.cond_probs.size() != n || m.inner.size() != n || m.loss.size() != n)
        fail(errc::length_mismatch, "per-state arrays disagree with state count");
    require_simplex(m.state_probs);
    if (!is_concave(m.outer)) fail(errc::non_concave, "outer distortion");
    for (std::size_t z = 0; z < n; ++z) {
        const std::size_t g = m.cond_probs[z].size();
        if (g == 0) fail(errc::empty_input, "state " + std::to_string(z) + " has no points");
        if (g > 8) fail(errc::too_large, "ground size exceeds 8 at state " + std::to_string(z));
        if (m.loss[z].size() != g)
            fail(errc::length_mismatch, "loss row length at state " + std::to_string(z));
        require_simplex(m.cond_probs[z]);
        if (!is_concave(m.inner[z]))
            fail(errc::non_concave, "inner distortion at state " + std::to_string(z));
    }
}

std::vector<double> greedy_core_measure(std::span<const double> p, const DistortionFn& g,
                                        std::span<const double> x) {
    if (p.size() != x.size()) fail(errc::length_mismatch, "probability and payoff lengths differ");
    if (p.empty()) fail(errc::empty_input, "empty ground");
    require_simplex(p);
    if (!is_concave(g)) fail(errc::non_concave, "greedy measure needs a concave distortion");

    std::vector<std::size_t> order(p.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return x[a] > x[b]; });
    std::vector<double> q(p.size());
    double cum = 0.0;
    double g_prev = 0.0;
    for (std::size_t i : order) {
        cum += p[i];
        const double g_cum = eval(g, std::min(cum, 1.0));
        q[i] = g_cum - g_prev;
        g_prev = g_cum;
    }
    return q;
}

bool verify_dominated(std::span<const double> q, std::span<const double> p,
                      const DistortionFn& g) {
    const std::size_t n = p.size();
    if (q.size() != n) fail(errc::length_mismatch, "measure and probability lengths differ");
    if (n > 12) fail(errc::too_large, "domination check capped at ground size 12");
    const std::size_t size = std::size_t{1} << n;
    std::vector<double> psum(size, 0.0), qsum(size, 0.0);
    for (std::size_t mask = 1; mask < size; ++mask) {
        const std::size_t low = mask & (mask - 1);
        const auto bit = static_cast<std::size_t>(std::countr_zero(mask));
        psum[mask] = psum[low] + p[bit];
        qsum[mask] = qsum[low] + q[bit];
    }
    for (std::size_t mask = 0; mask < size; ++mask)
        if (qsum[mask] > eval(g, std::min(psum[mask], 1.0)) + 1e-12) return false;
    return true;
}

double dual_value(const TwoLayerFiniteModel& m, const DualPair& pair) {
    if (pair.q1.size() != m.n_states() || pair.q2.size() != m.n_states())
        fail(errc::length_mismatch, "pair size disagrees with model");
    if (!verify_dominated(pair.q1, m.state_probs, m.outer))
        fail(errc::not_dominated, "outer measure");
    double acc = 0.0;
    for (std::size_t z = 0; z < m.n_states(); ++z) {
        if (!verify_dominated(pair.q2[z], m.cond_probs[z], m.inner[z]))
            fail(errc::not_dominated, "conditional measure at state " + std::to_string(z));
        double inner = 0.0;
        for (std::size_t w = 0; w < m.loss[z].size(); ++w)
            inner += pair.q2[z][w] * m.loss[z][w];
        acc += pair.q1[z] * inner;
    }
    return acc;
}

DualPair nested_greedy_pair(const TwoLayerFiniteModel& m) {
    validate(m);
    DualPair pair;
    pair.q2.resize(m.n_states());
    std::vector<double> state_values(m.n_states());
    for (std::size_t z = 0; z < m.n_states(); ++z) {
        pair.q2[z] = greedy_core_measure(m.cond_probs[z], m.inner[z], m.loss[z]);
        double v = 0.0;
        for (std::size_t w = 0; w < m.loss[z].size(); ++w)
            v += pair.q2[z][w] * m.loss[z][w];
        state_values[z] = v;
    }
    pair.q1 = greedy_core_measure(m.state_probs, m.outer, state_values);
    return pair;
}

double primal_value(const TwoLayerFiniteModel& m) {
    validate(m);
    ConditionalModel cm;
    cm.states.resize(m.n_states());
    std::iota(cm.states.begin(), cm.states.end(), 0.0);
    cm.state_probs = build_distribution(cm.states, m.state_probs);
    cm.states = cm.state_probs.values;
    std::vector<std::pair<double, DistortionFn>> entries;
    for (std::size_t z = 0; z < m.n_states(); ++z) {
        cm.conditionals.push_back(build_distribution(m.loss[z], m.cond_probs[z]));
        entries.emplace_back(cm.states[z], m.inner[z]);
    }
    EnvMeasureSpec spec;
    spec.inner = StateFamilyRule::table(std::move(entries), DistortionFn::identity());
    spec.outer = m.outer;
    return env_risk(cm, spec);
}

namespace {

DualPair blend_toward(const DualPair& greedy, const DualPair& raw, double lambda) {
    DualPair out = greedy;
    for (std::size_t z = 0; z < out.q1.size(); ++z) {
        out.q1[z] = lambda * raw.q1[z] + (1.0 - lambda) * greedy.q1[z];
        for (std::size_t w = 0; w < out.q2[z].size(); ++w)
            out.q2[z][w] = lambda * raw.q2[z][w] + (1.0 - lambda) * greedy.q2[z][w];
    }
    return out;
}

bool pair_dominated(const TwoLayerFiniteModel& m, const DualPair& pair) {
    if (!verify_dominated(pair.q1, m.state_probs, m.outer)) return false;
    for (std::size_t z = 0; z < m.n_states(); ++z)
        if (!verify_dominated(pair.q2[z], m.cond_probs[z], m.inner[z])) return false;
    return true;
}

} // namespace

DualGapReport dual_gap_check(const TwoLayerFiniteModel& m, long trials, std::uint64_t seed) {
    validate(m);
    DualGapReport rep;
    rep.trials = trials;
    rep.primal = primal_value(m);
    const DualPair greedy = nested_greedy_pair(m);
    rep.attained = dual_value(m, greedy);

    std::vector<double> values(static_cast<std::size_t>(trials));
#ifdef _OPENMP
#pragma omp parallel for schedule(static) num_threads(worker_count())
#endif
    for (long i = 0; i < trials; ++i) {
        CounterRng rng(seed, static_cast<std::uint64_t>(i));
        DualPair raw;
        raw.q1 = random_simplex(rng, static_cast<int>(m.n_states()));
        raw.q2.resize(m.n_states());
        for (std::size_t z = 0; z < m.n_states(); ++z)
            raw.q2[z] = random_simplex(rng, static_cast<int>(m.cond_probs[z].size()));
        // Halve the blend weight until domination holds; lambda = 0 is the
        // greedy pair itself, which is dominated by construction.
        DualPair candidate = raw;
        double lambda = 1.0;
        int steps = 0;
        while (!pair_dominated(m, candidate)) {
            lambda *= 0.5;
            ++steps;
            candidate = steps > 60 ? greedy : blend_toward(greedy, raw, lambda);
        }
        values[static_cast<std::size_t>(i)] = dual_value(m, candidate);
    }
    rep.max_random = -std::numeric_limits<double>::infinity();
    for (double v : values) {
        rep.max_random = std::max(rep.max_random, v);
        if (v > rep.primal + 1e-9) ++rep.exceed_count;
    }
    rep.ok = rep.exceed_count == 0 && std::abs(rep.attained - rep.primal) <= 1e-9;
    return rep;
}

TwoLayerFiniteModel random_two_layer_model(CounterRng& rng, int max_states, int max_ground) {
    TwoLayerFiniteModel m;
    const int n_states = rng.uniform_int(2, max_states);
    m.state_probs = random_simplex(rng, n_states);
    m.outer = random_concave_distortion(rng);
    m.cond_probs.resize(static_cast<std::size_t>(n_states));
    m.inner.resize(static_cast<std::size_t>(n_states));
    m.loss.resize(static_cast<std::size_t>(n_states));
    for (int z = 0; z < n_states; ++z) {
        const int g = rng.uniform_int(2, max_ground);
        m.cond_probs[static_cast<std::size_t>(z)] = random_simplex(rng, g);
        m.inner[static_cast<std::size_t>(z)] = random_concave_distortion(rng);
        auto& row = m.loss[static_cast<std::size_t>(z)];
        row.resize(static_cast<std::size_t>(g));
        for (auto& v : row) v = rng.uniform(-5.0, 5.0);
    }
    return m;
}

} // namespace envrisk
