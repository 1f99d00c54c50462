#ifndef ENVRISK_BACKGROUND_HPP
#define ENVRISK_BACKGROUND_HPP

#include <span>
#include <vector>

#include "envrisk/distribution.hpp"

namespace envrisk {

// Loss X carried jointly with background loss Y; the conditioning variable
// is the aggregate Z = X + Y. Atoms are merged into Z-levels at 1e-12
// relative tolerance; phi_values[k] = E[X | Z = z_values[k]].
struct JointLossModel {
    std::vector<double> z_values;
    std::vector<double> z_probs;
    std::vector<double> phi_values;
    // Raw atoms, kept for the expectation-form index. z_group maps each atom
    // to its merged Z-level.
    std::vector<double> atom_weight;
    std::vector<double> atom_x;
    std::vector<std::size_t> z_group;

    std::size_t n_levels() const { return z_values.size(); }
};

JointLossModel build_joint_model(std::span<const double> weight, std::span<const double> x,
                                 std::span<const double> y);

// E[X | Z = z]; z must match a support level (StateNotInSupport otherwise).
double phi(const JointLossModel& m, double z);

double expected_x(const JointLossModel& m);

// Concave distortion with a closed-form derivative:
//   power      g(u) = u^p, p in (0,1)        g'(u) = p u^{p-1}
//   quadratic  g(u) = 1 - (1-u)^2            g'(u) = 2 (1-u)
// The power derivative blows up at 0; the risk index below therefore works
// with exact increments of g across survival jumps, never g' at a point.
struct SmoothConcaveG {
    enum class Family { power, quadratic };

    Family family = Family::quadratic;
    double p = 1.0;

    static SmoothConcaveG power(double p);
    static SmoothConcaveG quadratic();
};

double eval(const SmoothConcaveG& g, double u);
double eval_deriv(const SmoothConcaveG& g, double u);

// L_s, the measure induced by s(z) = 1 - g(P(Z > z)): an atom at each
// Z-level carrying g(P(Z >= z)) - g(P(Z > z)). Masses sum to 1.
DiscreteDistribution ls_measure(const JointLossModel& m, const SmoothConcaveG& g);

// Distorted survival bounds sampled at the attainable levels of
// u(x) = P(phi(Z) > x): h_left(p) = v(u^{-1}(p)), h_right(p) = v(u^{-1+}(p))
// with v(x) = L_s(phi > x). Endpoints follow the inversion conventions
// h(0) = 0, h(1) = 1. Levels ascend and phi levels equal across distinct z
// are merged before inverting.
struct HlHrTable {
    std::vector<double> levels;
    std::vector<double> h_left;
    std::vector<double> h_right;
};

HlHrTable build_hL_hR(const JointLossModel& m, const SmoothConcaveG& g);

enum class Side { left, right };

// Choquet integral of beta |-> h_side(u(beta)), evaluated exactly on the phi
// breakpoints.
double rho_background(const JointLossModel& m, const SmoothConcaveG& g, Side side);

// Background-risk sensitivity index E[X * slope of g across the survival
// jump at Z]. Two independent routes: the expectation form walks raw atoms,
// the L_s form integrates phi under ls_measure. They agree to rounding.
double gamma_sensitivity(const JointLossModel& m, const SmoothConcaveG& g);
double gamma_sensitivity_tail(const JointLossModel& m, const SmoothConcaveG& g);

struct SandwichReport {
    double rho_right = 0.0;
    double gamma = 0.0;
    double gamma_ls = 0.0;
    double rho_left = 0.0;
    double worst_slack = 0.0; // max(rho_right - gamma, gamma - rho_left)
    bool ok = false;          // slack <= 1e-9 and the two gamma routes agree to 1e-9
};

SandwichReport sandwich_check(const JointLossModel& m, const SmoothConcaveG& g);

} // namespace envrisk

#endif
