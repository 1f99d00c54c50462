#ifndef ENVRISK_RANDOM_HPP
#define ENVRISK_RANDOM_HPP

#include <cmath>
#include <cstdint>

namespace envrisk {

inline std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

// Counter-based generator: draw i of stream s under seed k is a pure
// function of (k, s, i), so trials can run on any thread layout and still
// reproduce bit-for-bit.
class CounterRng {
  public:
    explicit CounterRng(std::uint64_t seed, std::uint64_t stream = 0)
        : base_(mix64(seed + 0x9E3779B97F4A7C15ULL * mix64(stream + 0xD1B54A32D192ED03ULL))) {}

    std::uint64_t next_u64() { return mix64(base_ + ++counter_ * 0x9E3779B97F4A7C15ULL); }

    // Uniform on [0, 1).
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    // Uniform on {lo, ..., hi} inclusive.
    int uniform_int(int lo, int hi) {
        return lo + static_cast<int>(next_u64() % static_cast<std::uint64_t>(hi - lo + 1));
    }

    double exponential() { return -std::log1p(-uniform()); }

    double normal() {
        // Box-Muller; the first uniform is shifted into (0, 1].
        const double u1 = 1.0 - uniform();
        const double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586477 * u2);
    }

  private:
    std::uint64_t base_;
    std::uint64_t counter_ = 0;
};

} // namespace envrisk

#endif
