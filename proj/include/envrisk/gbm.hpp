#ifndef ENVRISK_GBM_HPP
#define ENVRISK_GBM_HPP

#include <span>
#include <vector>

namespace envrisk {

// Hedged-payoff loss against a lognormal underlier: the environment is
// Z = exp(mu + sigma * W) with mu = r - sigma^2 / 2, and the conditional loss
// given Z = z is N(1 - z, sigma2^2). Inner distortion avar(a) on the
// conditional, outer distortion avar(b) on the per-state risks.
struct GbmSpec {
    double r = 0.05;
    double sigma = 0.2;
    double sigma2 = 0.3;
    double a = 0.95;
    double b = 0.95;
};

// Throws DomainError unless sigma > 0, sigma2 > 0, a and b in (0,1).
void validate(const GbmSpec& spec);

// Conditional risk at state z. Affine in z: delta(spec) - z.
double inner_rho_z(double z, const GbmSpec& spec);

// The z-free part of inner_rho_z: 1 + sigma2 * q_a + sigma2/(1-a) * tail(q_a).
double gbm_delta(const GbmSpec& spec);

// Exact outer integral: delta - e^mu * (e^{sigma q_b} - sigma/(1-b) * I)
// with q_b the (1-b)-quantile and I the integral of Phi(x) e^{sigma x} below
// q_b, evaluated by adaptive quadrature to 1e-10.
double closed_form_rho(const GbmSpec& spec);

// Same risk through the generic scenario machinery: n_states equiprobable
// midpoint-quantile states of Z, each conditional a cond_atoms-point midpoint
// discretization of the normal on +-8 sigma2. Deterministic in its inputs.
double pipeline_rho(const GbmSpec& spec, int n_states, int cond_atoms = 400);

struct RMonotonicityReport {
    std::vector<double> r_values;
    std::vector<double> rho_values;
    double min_drop = 0.0;         // smallest rho(r_i) - rho(r_{i+1})
    bool strictly_decreasing = false; // every drop > 1e-10
};

// closed_form_rho across an increasing grid of short rates, with sigma,
// sigma2, a, b taken from base.
RMonotonicityReport r_monotonicity_check(const GbmSpec& base, std::span<const double> r_values);

} // namespace envrisk

#endif
