#ifndef ENVRISK_CLASSICAL_HPP
#define ENVRISK_CLASSICAL_HPP

#include <vector>

#include "envrisk/distribution.hpp"

namespace envrisk {

// Mixing measure over confidence levels: atoms (level, weight) with levels
// in (0,1); weights are normalized to sum to 1 on construction.
struct LevelMeasure {
    std::vector<double> levels;
    std::vector<double> weights;

    static LevelMeasure make(std::vector<double> levels, std::vector<double> weights);
};

// Lower quantile: inf{ x : P(X <= x) >= alpha }.
double var(const DiscreteDistribution& d, double alpha);

// Average value-at-risk (1/(1-alpha)) * integral of the quantile over
// (alpha, 1], evaluated exactly on the quantile steps.
double avar(const DiscreteDistribution& d, double alpha);

// Weighted combination of avar across the measure's levels.
double wvar(const DiscreteDistribution& d, const LevelMeasure& mu);

// Range value-at-risk (1/(a2-a1)) * integral of the quantile over (a1, a2],
// exact on the quantile steps. Requires 0 < a1 < a2 < 1.
double rvar(const DiscreteDistribution& d, double a1, double a2);

struct RecoveryCheck {
    double classical;  // value straight from the quantile formulas
    double layered;    // value rebuilt through the two-layer measure
    double abs_delta;
};

// Rebuilds wvar as a two-layer measure: the level measure becomes the state
// law, every state shares the loss law, the inner rule reads an avar level
// off the state, the outer distortion is the identity.
RecoveryCheck wvar_recovery_check(const DiscreteDistribution& d, const LevelMeasure& mu);

// Rebuilds rvar by discretizing the uniform level density on (a1, a2) into
// n_states midpoint states with a var-indicator inner rule. Exact once the
// quantile breakpoints of d avoid the midpoint cells.
RecoveryCheck rvar_recovery_check(const DiscreteDistribution& d, double a1, double a2,
                                  int n_states);

} // namespace envrisk

#endif
