#ifndef ENVRISK_CHOQUET_HPP
#define ENVRISK_CHOQUET_HPP

#include <cstdint>
#include <span>
#include <vector>

#include "envrisk/distortion.hpp"
#include "envrisk/distribution.hpp"

namespace envrisk {

// Monotone set function on a small finite ground set, dense over bitmasks:
// values[mask] = capacity of the subset encoded by mask. values[0] = 0,
// values[full] = 1, monotone under set inclusion. Ground size capped at 20.
struct Capacity {
    int ground_size = 0;
    std::vector<double> values;

    double at(std::uint32_t mask) const { return values[mask]; }
    std::uint32_t full_mask() const { return (std::uint32_t{1} << ground_size) - 1; }
};

// Choquet integral of a finitely supported law under a distorted survival
// function: with values x_1 < ... < x_m and S_k = P(X > x_k),
//   x_1 + sum_k (x_{k+1} - x_k) * g(S_k).
double choquet_distorted(const DiscreteDistribution& d, const DistortionFn& g);

// Choquet integral of the vector x against an explicit capacity: sort ground
// points by descending payoff and accumulate capacity values of the top-k
// sets. Ties are broken by ground index; the result does not depend on the
// tie order.
double choquet_capacity(std::span<const double> x, const Capacity& cap);

// Capacity A |-> g(sum_{i in A} p_i) for a probability vector p.
Capacity distort_probability(std::span<const double> p, const DistortionFn& g);

// cap(A u B) + cap(A n B) <= cap(A) + cap(B) + 1e-12 over all pairs.
// Exhaustive, so the ground size is capped at 12.
bool is_submodular(const Capacity& cap);

} // namespace envrisk

#endif
