#ifndef ENVRISK_DISTORTION_HPP
#define ENVRISK_DISTORTION_HPP

#include <utility>
#include <vector>

namespace envrisk {

// Distortion function g: [0,1] -> [0,1], non-decreasing, g(0)=0, g(1)=1.
// Families:
//   identity   g(u) = u
//   avar       g(u) = min(u / (1 - level), 1)
//   var        g(u) = 0 on [0, 1-level], 1 on (1-level, 1]   (left-continuous at the kink)
//   power      g(u) = u^p, p in (0, 1]
//   pwl        piecewise linear through knots, first (0,0), last (1,1)
struct DistortionFn {
    enum class Family { identity, avar, var, power, pwl };

    Family family = Family::identity;
    double level = 0.0;                          // avar, var
    double p = 1.0;                              // power
    std::vector<std::pair<double, double>> knots; // pwl, (u, g(u)) with u strictly increasing

    static DistortionFn identity();
    static DistortionFn avar(double level);
    static DistortionFn var(double level);
    static DistortionFn power(double p);
    static DistortionFn pwl(std::vector<std::pair<double, double>> knots);
};

// g(u). Arguments within 1e-12 outside [0,1] are clamped; anything further
// out raises DomainError.
double eval(const DistortionFn& g, double u);

// Concavity probe: midpoint concavity over all pairs of a uniform grid of
// grid_n points, slack 1e-10. Piecewise-linear families are decided exactly
// from knot slopes instead.
bool is_concave(const DistortionFn& g, int grid_n = 129);

// Assigns a distortion to each environment state.
struct StateFamilyRule {
    enum class Kind { constant, table, level_from_state };

    Kind kind = Kind::constant;
    DistortionFn fn;                                  // constant
    std::vector<std::pair<double, DistortionFn>> entries; // table, keyed by state
    // level_from_state: family is avar or var, level = clamp(z)
    DistortionFn::Family level_family = DistortionFn::Family::avar;
    double clamp_lo = 0.0;
    double clamp_hi = 1.0;

    static StateFamilyRule constant(DistortionFn fn);
    static StateFamilyRule table(std::vector<std::pair<double, DistortionFn>> entries,
                                 DistortionFn fallback);
    static StateFamilyRule level_from_state(DistortionFn::Family family, double clamp_lo,
                                            double clamp_hi);
};

// Distortion used for state z under the rule. Table lookup matches states
// within 1e-12 * max(1, |z|) and falls back to the default entry.
DistortionFn resolve_state(const StateFamilyRule& rule, double z);

// True when every distortion the rule can produce is concave.
bool is_concave(const StateFamilyRule& rule, int grid_n = 129);

} // namespace envrisk

#endif
