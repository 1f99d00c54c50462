#include "envrisk/choquet.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <string>

#include "envrisk/errors.hpp"

namespace envrisk {

double choquet_distorted(const DiscreteDistribution& d, const DistortionFn& g) {
    const std::size_t m = d.size();
    if (m == 0) fail(errc::empty_input, "empty distribution");
    // Suffix sums accumulate from the top so survival levels near 0 stay exact.
    double acc = d.values[0];
    double s = 0.0;
    for (std::size_t k = m - 1; k-- > 0;) {
        s += d.probs[k + 1];
        acc += (d.values[k + 1] - d.values[k]) * eval(g, std::min(s, 1.0));
    }
    return acc;
}

double choquet_capacity(std::span<const double> x, const Capacity& cap) {
    const int n = cap.ground_size;
    if (n <= 0 || static_cast<std::size_t>(n) != x.size())
        fail(errc::length_mismatch, "payoff vector has " + std::to_string(x.size()) +
                                        " entries for ground size " + std::to_string(n));
    std::vector<int> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
        return x[static_cast<std::size_t>(a)] > x[static_cast<std::size_t>(b)];
    });
    double acc = 0.0;
    std::uint32_t mask = 0;
    for (int k = 0; k < n; ++k) {
        mask |= std::uint32_t{1} << order[static_cast<std::size_t>(k)];
        const double xk = x[static_cast<std::size_t>(order[static_cast<std::size_t>(k)])];
        const double next =
            k + 1 < n ? x[static_cast<std::size_t>(order[static_cast<std::size_t>(k + 1)])] : 0.0;
        if (k + 1 < n) acc += (xk - next) * cap.at(mask);
        else acc += xk * cap.at(mask); // mask == full, cap == 1
    }
    return acc;
}

Capacity distort_probability(std::span<const double> p, const DistortionFn& g) {
    const std::size_t n = p.size();
    if (n == 0) fail(errc::empty_input, "empty probability vector");
    if (n > 20) fail(errc::too_large, "ground size " + std::to_string(n) + " exceeds 20");
    double total = 0.0;
    for (double pi : p) {
        if (pi < 0.0) fail(errc::invalid_probability, "negative probability " + std::to_string(pi));
        total += pi;
    }
    if (std::abs(total - 1.0) > 1e-9)
        fail(errc::invalid_probability, "probabilities sum to " + std::to_string(total));

    Capacity cap;
    cap.ground_size = static_cast<int>(n);
    const std::size_t size = std::size_t{1} << n;
    std::vector<double> sums(size, 0.0);
    for (std::size_t mask = 1; mask < size; ++mask) {
        const std::size_t low = mask & (mask - 1);
        const int bit = std::countr_zero(mask);
        sums[mask] = sums[low] + p[static_cast<std::size_t>(bit)];
    }
    cap.values.resize(size);
    for (std::size_t mask = 0; mask < size; ++mask)
        cap.values[mask] = eval(g, std::min(sums[mask], 1.0));
    return cap;
}

bool is_submodular(const Capacity& cap) {
    if (cap.ground_size > 12)
        fail(errc::too_large, "submodularity check capped at ground size 12");
    const std::uint32_t size = std::uint32_t{1} << cap.ground_size;
    for (std::uint32_t a = 0; a < size; ++a)
        for (std::uint32_t b = a + 1; b < size; ++b)
            if (cap.at(a | b) + cap.at(a & b) > cap.at(a) + cap.at(b) + 1e-12) return false;
    return true;
}

} // namespace envrisk
