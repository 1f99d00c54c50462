#include "envrisk/background.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "envrisk/errors.hpp"

namespace envrisk {

JointLossModel build_joint_model(std::span<const double> weight, std::span<const double> x,
                                 std::span<const double> y) {
    const std::size_t n = weight.size();
    if (n == 0) fail(errc::empty_input, "no atoms");
    if (x.size() != n || y.size() != n) fail(errc::length_mismatch, "column lengths differ");

    std::vector<double> z(n);
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        if (!std::isfinite(weight[i]) || !std::isfinite(x[i]) || !std::isfinite(y[i]))
            fail(errc::non_finite_value, "atom " + std::to_string(i + 1));
        if (weight[i] < 0.0) fail(errc::negative_weight, "atom " + std::to_string(i + 1));
        z[i] = x[i] + y[i];
        total += weight[i];
    }
    if (total <= 0.0) fail(errc::zero_total_weight, "weights sum to " + std::to_string(total));

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return z[a] < z[b]; });

    JointLossModel m;
    m.atom_weight.resize(n);
    m.atom_x.resize(n);
    m.z_group.resize(n);
    std::vector<double> level_weight, level_xw;
    for (std::size_t k = 0; k < n; ++k) {
        const std::size_t i = order[k];
        if (m.z_values.empty() ||
            z[i] - m.z_values.back() > 1e-12 * std::max(1.0, std::abs(z[i]))) {
            m.z_values.push_back(z[i]);
            level_weight.push_back(0.0);
            level_xw.push_back(0.0);
        }
        const std::size_t level = m.z_values.size() - 1;
        level_weight[level] += weight[i];
        level_xw[level] += weight[i] * x[i];
        m.atom_weight[k] = weight[i];
        m.atom_x[k] = x[i];
        m.z_group[k] = level;
    }
    // Degenerate levels (all-zero weight) are not meaningful conditioning
    // events; drop them.
    std::size_t out = 0;
    std::vector<std::size_t> remap(m.z_values.size());
    for (std::size_t k = 0; k < m.z_values.size(); ++k) {
        if (level_weight[k] == 0.0) {
            remap[k] = static_cast<std::size_t>(-1);
            continue;
        }
        remap[k] = out;
        m.z_values[out] = m.z_values[k];
        m.z_probs.push_back(level_weight[k] / total);
        m.phi_values.push_back(level_xw[k] / level_weight[k]);
        ++out;
    }
    m.z_values.resize(out);
    std::size_t atom_out = 0;
    for (std::size_t k = 0; k < n; ++k) {
        if (remap[m.z_group[k]] == static_cast<std::size_t>(-1)) continue;
        m.atom_weight[atom_out] = m.atom_weight[k];
        m.atom_x[atom_out] = m.atom_x[k];
        m.z_group[atom_out] = remap[m.z_group[k]];
        ++atom_out;
    }
    m.atom_weight.resize(atom_out);
    m.atom_x.resize(atom_out);
    m.z_group.resize(atom_out);
    if (m.z_values.empty()) fail(errc::zero_total_weight, "all atoms carry zero weight");
    return m;
}

double phi(const JointLossModel& m, double z) {
    for (std::size_t k = 0; k < m.n_levels(); ++k)
        if (std::abs(z - m.z_values[k]) <= 1e-12 * std::max(1.0, std::abs(z)))
            return m.phi_values[k];
    fail(errc::state_not_in_support, "z = " + std::to_string(z));
}

double expected_x(const JointLossModel& m) {
    double acc = 0.0;
    for (std::size_t k = 0; k < m.n_levels(); ++k) acc += m.z_probs[k] * m.phi_values[k];
    return acc;
}

SmoothConcaveG SmoothConcaveG::power(double p) {
    if (!(p > 0.0 && p < 1.0))
        fail(errc::domain_error, "power exponent " + std::to_string(p) + " outside (0,1)");
    SmoothConcaveG g;
    g.family = Family::power;
    g.p = p;
    return g;
}

SmoothConcaveG SmoothConcaveG::quadratic() { return SmoothConcaveG{}; }

double eval(const SmoothConcaveG& g, double u) {
    if (u < 0.0 || u > 1.0) {
        if (u < -1e-12 || u > 1.0 + 1e-12)
            fail(errc::domain_error, "argument " + std::to_string(u) + " outside [0,1]");
        u = std::clamp(u, 0.0, 1.0);
    }
    return g.family == SmoothConcaveG::Family::power ? std::pow(u, g.p)
                                                     : 1.0 - (1.0 - u) * (1.0 - u);
}

double eval_deriv(const SmoothConcaveG& g, double u) {
    if (u < 0.0 || u > 1.0) {
        if (u < -1e-12 || u > 1.0 + 1e-12)
            fail(errc::domain_error, "argument " + std::to_string(u) + " outside [0,1]");
        u = std::clamp(u, 0.0, 1.0);
    }
    return g.family == SmoothConcaveG::Family::power ? g.p * std::pow(u, g.p - 1.0)
                                                     : 2.0 * (1.0 - u);
}

namespace {

// Survival of Z evaluated just below and at each level: T[k] = P(Z >= z_k),
// T[k+1] = P(Z > z_k). Accumulated from the top so small tails stay exact.
std::vector<double> upper_tail(const JointLossModel& m) {
    std::vector<double> t(m.n_levels() + 1, 0.0);
    for (std::size_t k = m.n_levels(); k-- > 0;) t[k] = t[k + 1] + m.z_probs[k];
    return t;
}

// Jump of s(z) = 1 - g(P(Z > z)) at each level.
std::vector<double> ls_masses(const JointLossModel& m, const SmoothConcaveG& g) {
    const std::vector<double> t = upper_tail(m);
    std::vector<double> mass(m.n_levels());
    for (std::size_t k = 0; k < m.n_levels(); ++k)
        mass[k] = eval(g, std::min(t[k], 1.0)) - eval(g, std::min(t[k + 1], 1.0));
    return mass;
}

// phi levels merged across z (ascending), with their P_Z and L_s masses.
struct PhiLevels {
    std::vector<double> value;
    std::vector<double> p_mass;
    std::vector<double> ls_mass;
};

PhiLevels merge_phi_levels(const JointLossModel& m, const SmoothConcaveG& g) {
    const std::vector<double> ls = ls_masses(m, g);
    std::vector<std::size_t> order(m.n_levels());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return m.phi_values[a] < m.phi_values[b]; });
    PhiLevels out;
    for (std::size_t k : order) {
        const double v = m.phi_values[k];
        if (out.value.empty() || v - out.value.back() > 1e-12 * std::max(1.0, std::abs(v))) {
            out.value.push_back(v);
            out.p_mass.push_back(0.0);
            out.ls_mass.push_back(0.0);
        }
        out.p_mass.back() += m.z_probs[k];
        out.ls_mass.back() += ls[k];
    }
    return out;
}

} // namespace

DiscreteDistribution ls_measure(const JointLossModel& m, const SmoothConcaveG& g) {
    return build_distribution(m.z_values, ls_masses(m, g));
}

HlHrTable build_hL_hR(const JointLossModel& m, const SmoothConcaveG& g) {
    const PhiLevels lv = merge_phi_levels(m, g);
    const std::size_t n = lv.value.size();

    // Survivals just above each phi level.
    std::vector<double> u(n, 0.0), v(n, 0.0);
    for (std::size_t j = n - 1; j-- > 0;) {
        u[j] = u[j + 1] + lv.p_mass[j + 1];
        v[j] = v[j + 1] + lv.ls_mass[j + 1];
    }

    HlHrTable t;
    // Ascending levels: u[n-1] = 0 first, u[0] last, then the full level 1.
    for (std::size_t j = n; j-- > 0;) {
        t.levels.push_back(u[j]);
        // u^{-1}(u_j) is the j-th phi level, u^{-1+}(u_j) the next one up.
        t.h_left.push_back(v[j]);
        t.h_right.push_back(j + 1 < n ? v[j + 1] : 0.0);
    }
    t.levels.push_back(1.0);
    t.h_left.push_back(1.0);
    t.h_right.push_back(1.0);
    return t;
}

double rho_background(const JointLossModel& m, const SmoothConcaveG& g, Side side) {
    const PhiLevels lv = merge_phi_levels(m, g);
    const std::size_t n = lv.value.size();
    std::vector<double> u(n, 0.0), v(n, 0.0);
    for (std::size_t j = n - 1; j-- > 0;) {
        u[j] = u[j + 1] + lv.p_mass[j + 1];
        v[j] = v[j + 1] + lv.ls_mass[j + 1];
    }
    // Choquet over the phi steps: h(u(beta)) is constant between
    // breakpoints, h_left(u_j) = v(phi_j), h_right(u_j) = v(phi_{j+1}).
    double acc = lv.value[0];
    for (std::size_t j = 0; j + 1 < n; ++j) {
        const double h = side == Side::left ? v[j] : v[j + 1];
        acc += (lv.value[j + 1] - lv.value[j]) * h;
    }
    return acc;
}

double gamma_sensitivity(const JointLossModel& m, const SmoothConcaveG& g) {
    // Expectation route over raw atoms. The slope factor is the exact
    // increment of g across the survival jump at the atom's Z-level, i.e.
    // g'(xi) for the mean-value point xi inside the jump; unlike a pointwise
    // g'(P(Z > z)) it keeps the integration-by-parts identity exact for
    // atomic laws.
    const std::vector<double> t = upper_tail(m);
    std::vector<double> slope(m.n_levels());
    for (std::size_t k = 0; k < m.n_levels(); ++k)
        slope[k] = (eval(g, std::min(t[k], 1.0)) - eval(g, std::min(t[k + 1], 1.0))) / m.z_probs[k];
    double total_weight = 0.0;
    for (double w : m.atom_weight) total_weight += w;
    double acc = 0.0;
    for (std::size_t i = 0; i < m.atom_weight.size(); ++i)
        acc += m.atom_weight[i] * m.atom_x[i] * slope[m.z_group[i]];
    return acc / total_weight;
}

double gamma_sensitivity_tail(const JointLossModel& m, const SmoothConcaveG& g) {
    // Survival route: integrate phi under L_s through its survival function,
    // exactly on the merged phi breakpoints.
    const PhiLevels lv = merge_phi_levels(m, g);
    const std::size_t n = lv.value.size();
    double acc = lv.value[0];
    double v = 0.0;
    for (std::size_t j = n - 1; j-- > 0;) {
        v += lv.ls_mass[j + 1];
        acc += (lv.value[j + 1] - lv.value[j]) * v;
    }
    return acc;
}

SandwichReport sandwich_check(const JointLossModel& m, const SmoothConcaveG& g) {
    SandwichReport r;
    r.rho_right = rho_background(m, g, Side::right);
    r.rho_left = rho_background(m, g, Side::left);
    r.gamma = gamma_sensitivity(m, g);
    r.gamma_ls = gamma_sensitivity_tail(m, g);
    r.worst_slack = std::max(r.rho_right - r.gamma, r.gamma - r.rho_left);
    r.ok = r.worst_slack <= 1e-9 && std::abs(r.gamma - r.gamma_ls) <= 1e-9;
    return r;
}

} // namespace envrisk
