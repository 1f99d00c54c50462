#ifndef ENVRISK_ENV_MEASURE_HPP
#define ENVRISK_ENV_MEASURE_HPP

#include <cstdint>
#include <functional>
#include <span>
#include <utility>
#include <vector>

#include "envrisk/choquet.hpp"
#include "envrisk/distortion.hpp"
#include "envrisk/scenario.hpp"

namespace envrisk {

// Two-layer distortion measure: an inner distortion per environment state
// applied to the conditional loss law, then an outer distortion applied to
// the law of the resulting per-state risks.
struct EnvMeasureSpec {
    StateFamilyRule inner;
    DistortionFn outer;
};

// Per-state inner risks aligned with the model's states.
struct RiskProfile {
    std::vector<double> states;
    std::vector<double> probs;
    std::vector<double> values;

    std::size_t size() const { return states.size(); }
};

// Choquet integral of the conditional law at state z_index under the
// distortion the rule resolves for that state.
double inner_risk(const ConditionalModel& m, std::size_t z_index, const EnvMeasureSpec& spec);

// Inner risks for every state. The states are independent, so risk_profile
// fans them out over OpenMP; risk_profile_serial is the reference kernel and
// must agree bit-for-bit.
RiskProfile risk_profile(const ConditionalModel& m, const EnvMeasureSpec& spec);
RiskProfile risk_profile_serial(const ConditionalModel& m, const EnvMeasureSpec& spec);

// Outer Choquet integral of the profile-value law. Equal profile values are
// merged before distorting, so the result depends on the profile only
// through its distribution.
double env_risk(const RiskProfile& profile, const DistortionFn& outer);
double env_risk(const ConditionalModel& m, const EnvMeasureSpec& spec);

// Risk functional on a single state's conditional law, used as the probe in
// inner recovery: (loss law, state) -> risk value.
using StateRiskFunctional = std::function<double(const DiscreteDistribution&, double)>;

// Reads the inner distortion back out of a black-box state functional by
// probing it with indicator losses of a synthesized uniform grid variable
// with uniform_atoms atoms. Grid levels must be multiples of
// 1/uniform_atoms. Returns (level, recovered value) pairs.
std::vector<std::pair<double, double>> recover_inner_distortion(const ConditionalModel& m,
                                                                std::size_t z_index,
                                                                const StateRiskFunctional& probe,
                                                                std::span<const double> grid,
                                                                int uniform_atoms = 100);

// Reads the outer distortion back out of the full measure by pricing
// indicator losses of state sets. Each level must match a subset sum of the
// state probabilities within 1e-12. Returns (level, recovered value) pairs.
std::vector<std::pair<double, double>> recover_outer_distortion(const ConditionalModel& m,
                                                                const EnvMeasureSpec& spec,
                                                                std::span<const double> levels);

// Randomized axiom sweep over generated scenario tables under one concave
// spec: monotonicity, translation invariance, positive homogeneity,
// subadditivity. Counts are violations; slacks are the worst margins seen
// (negative margins are fine, positive ones past tolerance are violations).
struct CoherenceReport {
    long trials = 0;
    long monotonicity_violations = 0;
    long translation_violations = 0;
    long homogeneity_violations = 0;
    long subadditivity_violations = 0;
    double worst_monotonicity = 0.0; // max over trials of rho(X) - rho(Y), Y >= X
    double worst_translation = 0.0;  // max |rho(X+a) - rho(X) - a|
    double worst_homogeneity = 0.0;  // max relative |rho(cX) - c rho(X)|
    double worst_subadditivity = 0.0; // max rho(X+Y) - rho(X) - rho(Y)

    bool ok() const {
        return monotonicity_violations + translation_violations + homogeneity_violations +
                   subadditivity_violations ==
               0;
    }
};

// Requires a concave spec (NonConcaveSpec otherwise).
CoherenceReport coherence_suite(std::uint64_t seed, int trials, const EnvMeasureSpec& spec);

// Same sweep with a fresh random concave spec per trial.
CoherenceReport coherence_suite_mixed(std::uint64_t seed, int trials);

} // namespace envrisk

#endif
