#ifndef ENVRISK_GENERATORS_HPP
#define ENVRISK_GENERATORS_HPP

#include <vector>

#include "envrisk/distortion.hpp"
#include "envrisk/distribution.hpp"
#include "envrisk/random.hpp"
#include "envrisk/scenario.hpp"

namespace envrisk {

// Random inputs for the verification suites. Everything is driven by a
// CounterRng so a (seed, stream) pair pins the draw exactly.

// Law with n_atoms distinct values in [lo, hi] and Dirichlet-ish weights.
DiscreteDistribution random_distribution(CounterRng& rng, int n_atoms, double lo, double hi);

// Probability vector of length n, all entries positive.
std::vector<double> random_simplex(CounterRng& rng, int n);

// Concave distortion drawn across families: identity, avar, power, concave
// piecewise-linear.
DistortionFn random_concave_distortion(CounterRng& rng);

// Concave piecewise-linear distortion with n_knots knots (slopes decreasing).
DistortionFn random_concave_pwl(CounterRng& rng, int n_knots);

// Scenario table with n_states distinct states and rows_per_state rows each,
// x and y columns independent uniforms on [-5, 5].
ScenarioTable random_coupled_table(CounterRng& rng, int n_states, int rows_per_state);

} // namespace envrisk

#endif
