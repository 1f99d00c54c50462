#include "envrisk/gbm.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <string>

#include "envrisk/distortion.hpp"
#include "envrisk/env_measure.hpp"
#include "envrisk/errors.hpp"
#include "envrisk/normal.hpp"
#include "envrisk/parallel.hpp"
#include "envrisk/scenario.hpp"

namespace envrisk {

void validate(const GbmSpec& spec) {
    if (!(spec.sigma > 0.0)) fail(errc::domain_error, "sigma must be positive");
    if (!(spec.sigma2 > 0.0)) fail(errc::domain_error, "sigma2 must be positive");
    if (!(spec.a > 0.0 && spec.a < 1.0)) fail(errc::domain_error, "a outside (0,1)");
    if (!(spec.b > 0.0 && spec.b < 1.0)) fail(errc::domain_error, "b outside (0,1)");
    if (!std::isfinite(spec.r)) fail(errc::non_finite_value, "r");
}

double gbm_delta(const GbmSpec& spec) {
    const double qa = norm_ppf(spec.a);
    return 1.0 + spec.sigma2 * qa + spec.sigma2 / (1.0 - spec.a) * norm_tail_integral(qa);
}

double inner_rho_z(double z, const GbmSpec& spec) {
    validate(spec);
    return gbm_delta(spec) - z;
}

namespace {

double adaptive_simpson_rec(const std::function<double(double)>& f, double a, double m, double b,
                            double fa, double fm, double fb, double whole, double tol,
                            int depth) {
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = f(lm);
    const double frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    if (depth <= 0 || std::abs(left + right - whole) <= 15.0 * tol)
        return left + right + (left + right - whole) / 15.0;
    return adaptive_simpson_rec(f, a, lm, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           adaptive_simpson_rec(f, m, rm, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double tol) {
    if (!(b > a)) return 0.0;
    const double m = 0.5 * (a + b);
    const double fa = f(a), fm = f(m), fb = f(b);
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return adaptive_simpson_rec(f, a, m, b, fa, fm, fb, whole, tol, 48);
}

} // namespace

double closed_form_rho(const GbmSpec& spec) {
    validate(spec);
    const double mu = spec.r - 0.5 * spec.sigma * spec.sigma;
    const double qb = norm_ppf(1.0 - spec.b);
    // Phi(x) e^{sigma x} is negligible below qb - 120/sigma and below the
    // double-precision floor of Phi.
    const double lo = std::max(-40.0, qb - 120.0 / std::max(spec.sigma, 0.1));
    const double integral = adaptive_simpson(
        [&](double x) { return norm_cdf(x) * std::exp(spec.sigma * x); }, lo, qb, 1e-10);
    const double bracket =
        std::exp(spec.sigma * qb) - spec.sigma / (1.0 - spec.b) * integral;
    return gbm_delta(spec) - std::exp(mu) * bracket;
}

double pipeline_rho(const GbmSpec& spec, int n_states, int cond_atoms) {
    validate(spec);
    if (n_states < 100) fail(errc::domain_error, "pipeline needs at least 100 states");
    if (cond_atoms < 400) fail(errc::domain_error, "conditionals need at least 400 atoms");
    const double mu = spec.r - 0.5 * spec.sigma * spec.sigma;

    // Midpoint-quantile states of the lognormal environment.
    const auto n = static_cast<std::size_t>(n_states);
    std::vector<double> states(n);
    for (std::size_t k = 0; k < n; ++k)
        states[k] = std::exp(mu + spec.sigma * norm_ppf((static_cast<double>(k) + 0.5) / n_states));

    // One standardized midpoint grid on [-8, 8] shared by every state; the
    // tail mass beyond 8 sigma is ~1e-15 and is renormalized away.
    const auto m = static_cast<std::size_t>(cond_atoms);
    std::vector<double> cell_mid(m), cell_weight(m);
    double edge_prev = norm_cdf(-8.0);
    for (std::size_t j = 0; j < m; ++j) {
        const double right = -8.0 + 16.0 * static_cast<double>(j + 1) / cond_atoms;
        const double edge = norm_cdf(right);
        cell_mid[j] = -8.0 + 16.0 * (static_cast<double>(j) + 0.5) / cond_atoms;
        cell_weight[j] = edge - edge_prev;
        edge_prev = edge;
    }

    ConditionalModel model;
    model.state_probs = build_distribution(states, std::vector<double>(n, 1.0));
    model.states = model.state_probs.values;
    model.conditionals.resize(n);
    const auto ns = static_cast<std::ptrdiff_t>(n);
#ifdef _OPENMP
#pragma omp parallel for schedule(static) num_threads(worker_count())
#endif
    for (std::ptrdiff_t k = 0; k < ns; ++k) {
        const double mean = 1.0 - model.states[static_cast<std::size_t>(k)];
        std::vector<double> values(m);
        for (std::size_t j = 0; j < m; ++j) values[j] = mean + spec.sigma2 * cell_mid[j];
        model.conditionals[static_cast<std::size_t>(k)] =
            build_distribution(std::move(values), cell_weight);
    }

    EnvMeasureSpec measure;
    measure.inner = StateFamilyRule::constant(DistortionFn::avar(spec.a));
    measure.outer = DistortionFn::avar(spec.b);
    return env_risk(model, measure);
}

RMonotonicityReport r_monotonicity_check(const GbmSpec& base, std::span<const double> r_values) {
    if (r_values.size() < 2) fail(errc::domain_error, "need at least two rate points");
    RMonotonicityReport rep;
    rep.r_values.assign(r_values.begin(), r_values.end());
    for (double r : r_values) {
        GbmSpec s = base;
        s.r = r;
        rep.rho_values.push_back(closed_form_rho(s));
    }
    rep.min_drop = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i + 1 < rep.rho_values.size(); ++i)
        rep.min_drop = std::min(rep.min_drop, rep.rho_values[i] - rep.rho_values[i + 1]);
    rep.strictly_decreasing = rep.min_drop > 1e-10;
    return rep;
}

} // namespace envrisk
