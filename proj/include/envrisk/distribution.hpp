#ifndef ENVRISK_DISTRIBUTION_HPP
#define ENVRISK_DISTRIBUTION_HPP

#include <cstddef>
#include <vector>

namespace envrisk {

// Finitely supported probability law in canonical form: values strictly
// increasing, probs positive and summing to 1 (within 1e-12 after
// normalization). Construct through build_distribution; code that fills the
// fields directly is responsible for keeping the invariant.
struct DiscreteDistribution {
    std::vector<double> values;
    std::vector<double> probs;

    std::size_t size() const { return values.size(); }
    double min() const { return values.front(); }
    double max() const { return values.back(); }
    double mean() const;
};

// Canonicalizes (value, weight) atoms: validates weights, sorts, merges
// values equal within 1e-12 * max(1, |v|), drops zero-weight atoms,
// normalizes by total weight.
DiscreteDistribution build_distribution(std::vector<double> values, std::vector<double> weights);

// P(X > t), right-continuous in t.
double survival(const DiscreteDistribution& d, double t);

// P(X <= t).
double cdf(const DiscreteDistribution& d, double t);

} // namespace envrisk

#endif
