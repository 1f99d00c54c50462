#ifndef ENVRISK_VERIFY_HPP
#define ENVRISK_VERIFY_HPP

#include <cstdint>

#include "envrisk/env_measure.hpp"

namespace envrisk {

// Randomized structural suites behind the verify command. Each returns a
// violation count plus the worst margins seen, and is reproducible from the
// seed regardless of thread count.

struct RecoverySuiteReport {
    long models = 0;
    long probes = 0;
    long violations = 0;
    double worst_inner_delta = 0.0;
    double worst_outer_delta = 0.0;

    bool ok() const { return violations == 0; }
};

// Round-trips every distortion family through inner and outer recovery on
// random models; deltas past 1e-12 are violations.
RecoverySuiteReport run_recovery_suite(std::uint64_t seed, int models);

struct BackgroundSuiteReport {
    long models = 0;
    long violations = 0;
    double worst_sandwich_slack = 0.0;
    double worst_gamma_gap = 0.0;
    double worst_bound_order = 0.0; // max h_right - h_left over levels
    double worst_ls_mass_error = 0.0;

    bool ok() const { return violations == 0; }
};

// Random joint loss models, alternating the quadratic and power(0.7)
// distortions, every third model on a coarse value lattice to exercise phi
// ties. Violations: sandwich slack > 1e-9, gamma route gap > 1e-9, bound
// order h_left < h_right - 1e-12, L_s mass off 1 by > 1e-12.
BackgroundSuiteReport run_background_suite(std::uint64_t seed, int models);

struct DualSuiteReport {
    long models = 0;
    long trials_per_model = 0;
    long exceed_count = 0;
    long attainment_failures = 0;
    double worst_overshoot = 0.0;     // max random value - primal
    double worst_attained_gap = 0.0;  // max |greedy value - primal|

    bool ok() const { return exceed_count == 0 && attainment_failures == 0; }
};

// Random two-layer models; per model, random dominated pairs must stay at or
// below the primal value and the nested greedy pair must attain it.
DualSuiteReport run_dual_suite(std::uint64_t seed, int models, long trials_per_model);

} // namespace envrisk

#endif
