// Times the OpenMP risk-profile kernel against the serial reference on a
// synthetic model and confirms they agree bit-for-bit.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <vector>

#include "envrisk/env_measure.hpp"
#include "envrisk/normal.hpp"
#include "envrisk/parallel.hpp"

using namespace envrisk;

namespace {

ConditionalModel synthetic_model(int n_states, int atoms_per_state) {
    std::vector<double> states(static_cast<std::size_t>(n_states));
    for (int k = 0; k < n_states; ++k)
        states[static_cast<std::size_t>(k)] =
            std::exp(0.2 * norm_ppf((k + 0.5) / static_cast<double>(n_states)));

    ConditionalModel m;
    m.state_probs = build_distribution(states, std::vector<double>(states.size(), 1.0));
    m.states = m.state_probs.values;
    m.conditionals.reserve(states.size());
    const auto n_atoms = static_cast<std::size_t>(atoms_per_state);
    for (double z : m.states) {
        std::vector<double> values(n_atoms), weights(n_atoms);
        for (std::size_t j = 0; j < n_atoms; ++j) {
            const double t = -8.0 + 16.0 * (static_cast<double>(j) + 0.5) / atoms_per_state;
            values[j] = 1.0 - z + 0.1 * t;
            weights[j] = norm_pdf(t);
        }
        m.conditionals.push_back(build_distribution(std::move(values), std::move(weights)));
    }
    return m;
}

double time_ms(const std::function<RiskProfile()>& fn, RiskProfile& out, int reps) {
    double best = 1e300;
    for (int i = 0; i < reps; ++i) {
        const auto t0 = std::chrono::steady_clock::now();
        out = fn();
        const auto t1 = std::chrono::steady_clock::now();
        best = std::min(
            best,
            std::chrono::duration_cast<std::chrono::duration<double, std::milli>>(t1 - t0)
                .count());
    }
    return best;
}

} // namespace

int main() {
    EnvMeasureSpec spec;
    spec.inner = StateFamilyRule::constant(DistortionFn::avar(0.95));
    spec.outer = DistortionFn::avar(0.9);

    std::printf("threads: %d\n", worker_count());
    std::printf("%10s %8s %12s %12s %9s %10s\n", "states", "atoms", "serial_ms", "parallel_ms",
                "speedup", "identical");
    for (const auto& [n_states, atoms] : {std::pair{500, 400}, {2000, 400}, {4000, 800}}) {
        const ConditionalModel m = synthetic_model(n_states, atoms);
        RiskProfile serial, parallel;
        const double ts = time_ms([&] { return risk_profile_serial(m, spec); }, serial, 3);
        const double tp = time_ms([&] { return risk_profile(m, spec); }, parallel, 3);
        bool identical = serial.values == parallel.values;
        std::printf("%10d %8d %12.2f %12.2f %9.2f %10s\n", n_states, atoms, ts, tp, ts / tp,
                    identical ? "yes" : "NO");
        if (!identical) return 1;
    }
    return 0;
}
