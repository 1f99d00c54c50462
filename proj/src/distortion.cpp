#include "envrisk/distortion.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "envrisk/errors.hpp"

namespace envrisk {

namespace {

void require_level(double level) {
    if (!(level > 0.0 && level < 1.0))
        fail(errc::domain_error, "level " + std::to_string(level) + " outside (0,1)");
}

} // namespace

DistortionFn DistortionFn::identity() { return DistortionFn{}; }

DistortionFn DistortionFn::avar(double level) {
    require_level(level);
    DistortionFn g;
    g.family = Family::avar;
    g.level = level;
    return g;
}

DistortionFn DistortionFn::var(double level) {
    require_level(level);
    DistortionFn g;
    g.family = Family::var;
    g.level = level;
    return g;
}

DistortionFn DistortionFn::power(double p) {
    if (!(p > 0.0 && p <= 1.0))
        fail(errc::domain_error, "power exponent " + std::to_string(p) + " outside (0,1]");
    DistortionFn g;
    g.family = Family::power;
    g.p = p;
    return g;
}

DistortionFn DistortionFn::pwl(std::vector<std::pair<double, double>> knots) {
    if (knots.size() < 2) fail(errc::domain_error, "pwl needs at least 2 knots");
    if (knots.front() != std::pair<double, double>{0.0, 0.0} ||
        knots.back() != std::pair<double, double>{1.0, 1.0})
        fail(errc::domain_error, "pwl knots must start at (0,0) and end at (1,1)");
    for (std::size_t i = 1; i < knots.size(); ++i) {
        if (!(knots[i].first > knots[i - 1].first))
            fail(errc::domain_error, "pwl knot abscissae must be strictly increasing");
        if (knots[i].second < knots[i - 1].second)
            fail(errc::domain_error, "pwl knot ordinates must be non-decreasing");
    }
    DistortionFn g;
    g.family = Family::pwl;
    g.knots = std::move(knots);
    return g;
}

double eval(const DistortionFn& g, double u) {
    if (u < 0.0 || u > 1.0) {
        if (u < -1e-12 || u > 1.0 + 1e-12)
            fail(errc::domain_error, "distortion argument " + std::to_string(u) + " outside [0,1]");
        u = std::clamp(u, 0.0, 1.0);
    }
    switch (g.family) {
        case DistortionFn::Family::identity: return u;
        case DistortionFn::Family::avar: return std::min(u / (1.0 - g.level), 1.0);
        case DistortionFn::Family::var:
            // Left-continuous at the kink: g(1-level) = 0.
            return u <= 1.0 - g.level ? 0.0 : 1.0;
        case DistortionFn::Family::power: return std::pow(u, g.p);
        case DistortionFn::Family::pwl: {
            const auto& k = g.knots;
            if (u >= 1.0) return 1.0;
            // First segment whose right endpoint lies strictly beyond u.
            std::size_t i = 1;
            while (k[i].first <= u) ++i;
            const double t = (u - k[i - 1].first) / (k[i].first - k[i - 1].first);
            return k[i - 1].second + t * (k[i].second - k[i - 1].second);
        }
    }
    fail(errc::domain_error, "unknown distortion family");
}

bool is_concave(const DistortionFn& g, int grid_n) {
    if (g.family == DistortionFn::Family::pwl) {
        // Exact: concave iff segment slopes are non-increasing.
        double prev = std::numeric_limits<double>::infinity();
        for (std::size_t i = 1; i < g.knots.size(); ++i) {
            const double s = (g.knots[i].second - g.knots[i - 1].second) /
                             (g.knots[i].first - g.knots[i - 1].first);
            if (s > prev * (1.0 + 1e-12) + 1e-12) return false;
            prev = s;
        }
        return true;
    }
    if (grid_n < 3) fail(errc::domain_error, "concavity grid needs at least 3 points");
    std::vector<double> gv(static_cast<std::size_t>(grid_n));
    const double h = 1.0 / (grid_n - 1);
    for (int i = 0; i < grid_n; ++i) gv[static_cast<std::size_t>(i)] = eval(g, i * h);
    for (int i = 0; i < grid_n; ++i)
        for (int j = i + 1; j < grid_n; ++j) {
            const double mid = eval(g, 0.5 * (i + j) * h);
            if (mid + 1e-10 < 0.5 * (gv[static_cast<std::size_t>(i)] + gv[static_cast<std::size_t>(j)]))
                return false;
        }
    return true;
}

StateFamilyRule StateFamilyRule::constant(DistortionFn fn) {
    StateFamilyRule r;
    r.kind = Kind::constant;
    r.fn = std::move(fn);
    return r;
}

StateFamilyRule StateFamilyRule::table(std::vector<std::pair<double, DistortionFn>> entries,
                                       DistortionFn fallback) {
    StateFamilyRule r;
    r.kind = Kind::table;
    r.entries = std::move(entries);
    r.fn = std::move(fallback);
    std::sort(r.entries.begin(), r.entries.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    return r;
}

StateFamilyRule StateFamilyRule::level_from_state(DistortionFn::Family family, double clamp_lo,
                                                  double clamp_hi) {
    if (family != DistortionFn::Family::avar && family != DistortionFn::Family::var)
        fail(errc::domain_error, "level-from-state supports avar and var families");
    if (!(clamp_lo > 0.0 && clamp_lo <= clamp_hi && clamp_hi < 1.0))
        fail(errc::domain_error, "clamp interval must satisfy 0 < lo <= hi < 1");
    StateFamilyRule r;
    r.kind = Kind::level_from_state;
    r.level_family = family;
    r.clamp_lo = clamp_lo;
    r.clamp_hi = clamp_hi;
    return r;
}

DistortionFn resolve_state(const StateFamilyRule& rule, double z) {
    switch (rule.kind) {
        case StateFamilyRule::Kind::constant: return rule.fn;
        case StateFamilyRule::Kind::table: {
            for (const auto& [key, fn] : rule.entries)
                if (std::abs(z - key) <= 1e-12 * std::max(1.0, std::abs(z))) return fn;
            return rule.fn;
        }
        case StateFamilyRule::Kind::level_from_state: {
            const double level = std::clamp(z, rule.clamp_lo, rule.clamp_hi);
            return rule.level_family == DistortionFn::Family::avar ? DistortionFn::avar(level)
                                                                   : DistortionFn::var(level);
        }
    }
    fail(errc::domain_error, "unknown state rule kind");
}

bool is_concave(const StateFamilyRule& rule, int grid_n) {
    switch (rule.kind) {
        case StateFamilyRule::Kind::constant: return is_concave(rule.fn, grid_n);
        case StateFamilyRule::Kind::table: {
            for (const auto& [key, fn] : rule.entries)
                if (!is_concave(fn, grid_n)) return false;
            return is_concave(rule.fn, grid_n);
        }
        case StateFamilyRule::Kind::level_from_state:
            // avar(level) is concave for every level; var never is.
            return rule.level_family == DistortionFn::Family::avar;
    }
    fail(errc::domain_error, "unknown state rule kind");
}

} // namespace envrisk
