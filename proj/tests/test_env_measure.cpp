#include <algorithm>
#include <cmath>
#include <vector>

#include "doctest.h"
#include "envrisk/classical.hpp"
#include "envrisk/env_measure.hpp"
#include "envrisk/errors.hpp"
#include "envrisk/generators.hpp"
#include "envrisk/random.hpp"
#include "envrisk/scenario.hpp"

using namespace envrisk;

namespace {

ConditionalModel random_model(CounterRng& rng, int max_states, int max_atoms) {
    ConditionalModel m;
    const int n = rng.uniform_int(2, max_states);
    std::vector<double> states(static_cast<std::size_t>(n));
    double z = rng.uniform(-2.0, 0.0);
    for (double& s : states) {
        s = z;
        z += rng.uniform(0.5, 1.5);
    }
    std::vector<double> w(states.size());
    for (double& v : w) v = rng.uniform(0.2, 1.0);
    m.state_probs = build_distribution(states, w);
    m.states = m.state_probs.values;
    for (std::size_t i = 0; i < m.states.size(); ++i)
        m.conditionals.push_back(random_distribution(rng, rng.uniform_int(1, max_atoms), -5.0, 5.0));
    return m;
}

EnvMeasureSpec mean_spec() {
    return {StateFamilyRule::constant(DistortionFn::identity()), DistortionFn::identity()};
}

} // namespace

TEST_CASE("identity inner and outer collapse to the plain mean") {
    CounterRng rng(21, 0);
    for (int t = 0; t < 40; ++t) {
        const auto m = random_model(rng, 8, 10);
        double mixed = 0.0;
        for (std::size_t i = 0; i < m.n_states(); ++i)
            mixed += m.state_probs.probs[i] * m.conditionals[i].mean();
        CHECK(env_risk(m, mean_spec()) == doctest::Approx(mixed).epsilon(1e-12));
    }
}

TEST_CASE("profile is computed per state with the resolved inner measure") {
    CounterRng rng(22, 0);
    const auto m = random_model(rng, 5, 8);
    EnvMeasureSpec spec{StateFamilyRule::level_from_state(DistortionFn::Family::avar, 0.3, 0.7),
                        DistortionFn::power(0.5)};
    const auto prof = risk_profile(m, spec);
    REQUIRE(prof.size() == m.n_states());
    for (std::size_t i = 0; i < prof.size(); ++i) {
        const double lvl = std::clamp(m.states[i], 0.3, 0.7);
        CHECK(prof.values[i] == doctest::Approx(avar(m.conditionals[i], lvl)).epsilon(1e-12));
        CHECK(prof.values[i] == inner_risk(m, i, spec));
    }
    CHECK_THROWS_AS(inner_risk(m, m.n_states(), spec), Error);
}

TEST_CASE("serial and parallel profiles are bit-identical") {
    CounterRng rng(23, 0);
    for (int t = 0; t < 10; ++t) {
        const auto m = random_model(rng, 12, 12);
        EnvMeasureSpec spec{StateFamilyRule::constant(random_concave_distortion(rng)),
                            random_concave_distortion(rng)};
        const auto a = risk_profile(m, spec);
        const auto b = risk_profile_serial(m, spec);
        CHECK(a.values == b.values);
        CHECK(a.probs == b.probs);
    }
}

TEST_CASE("state-wise certainty equivalents feed the outer layer law-invariantly") {
    // Two states with equal inner risk must act as one merged outer atom.
    ConditionalModel m;
    m.state_probs = build_distribution({0.0, 1.0, 2.0}, {1.0, 1.0, 2.0});
    m.states = m.state_probs.values;
    m.conditionals = {build_distribution({4.0}, {1.0}), build_distribution({4.0}, {1.0}),
                      build_distribution({9.0}, {1.0})};
    const EnvMeasureSpec spec{StateFamilyRule::constant(DistortionFn::identity()),
                              DistortionFn::power(0.5)};
    // outer law: {4: 1/2, 9: 1/2} -> 4 + 5 * sqrt(1/2)
    CHECK(env_risk(m, spec) == doctest::Approx(4.0 + 5.0 * std::sqrt(0.5)).epsilon(1e-14));
}

TEST_CASE("degenerate conditionals pass any inner measure through") {
    CounterRng rng(24, 0);
    ConditionalModel m;
    m.state_probs = build_distribution({0.0, 1.0, 2.0}, {1.0, 2.0, 1.0});
    m.states = m.state_probs.values;
    m.conditionals = {build_distribution({-1.0}, {1.0}), build_distribution({2.5}, {1.0}),
                      build_distribution({7.0}, {1.0})};
    for (int t = 0; t < 5; ++t) {
        EnvMeasureSpec spec{StateFamilyRule::constant(random_concave_distortion(rng)),
                            DistortionFn::identity()};
        const auto prof = risk_profile(m, spec);
        CHECK(prof.values[0] == -1.0);
        CHECK(prof.values[1] == 2.5);
        CHECK(prof.values[2] == 7.0);
    }
}

TEST_CASE("truncated losses converge to the untruncated value") {
    CounterRng rng(25, 0);
    const auto m = random_model(rng, 6, 10);
    const EnvMeasureSpec spec{StateFamilyRule::constant(DistortionFn::avar(0.8)),
                              DistortionFn::avar(0.6)};
    const double full = env_risk(m, spec);
    double prev_gap = 1e300;
    for (double cap : {1.0, 3.0, 6.0}) {
        ConditionalModel trunc = m;
        for (auto& c : trunc.conditionals) {
            auto v = c.values;
            for (double& x : v) x = std::min(x, cap);
            c = build_distribution(v, c.probs);
        }
        const double gap = full - env_risk(trunc, spec);
        CHECK(gap >= -1e-12);     // truncation can only reduce risk
        CHECK(gap <= prev_gap + 1e-12); // and monotonically less as the cap rises
        prev_gap = gap;
    }
    // atoms live in [-5, 5]; cap at 6 leaves every loss untouched
    CHECK(prev_gap == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("inner distortion recovery returns grid values exactly") {
    CounterRng rng(26, 0);
    const auto m = random_model(rng, 4, 6);
    for (const auto& g : {DistortionFn::avar(0.85), DistortionFn::power(0.6),
                          DistortionFn::pwl({{0.0, 0.0}, {0.25, 0.55}, {1.0, 1.0}})}) {
        const EnvMeasureSpec spec{StateFamilyRule::constant(g), DistortionFn::identity()};
        const auto probe = [&](const DiscreteDistribution& d, double z) {
            return choquet_distorted(d, resolve_state(spec.inner, z));
        };
        const std::vector<double> grid{0.0, 0.01, 0.25, 0.5, 0.75, 0.99, 1.0};
        for (const auto& [u, got] : recover_inner_distortion(m, 1, probe, grid))
            CHECK(std::abs(got - eval(g, u)) <= 1e-12);
    }
}

TEST_CASE("inner recovery rejects levels off the atom grid") {
    CounterRng rng(27, 0);
    const auto m = random_model(rng, 3, 4);
    const auto probe = [](const DiscreteDistribution& d, double) {
        return choquet_distorted(d, DistortionFn::identity());
    };
    CHECK_THROWS_AS(recover_inner_distortion(m, 0, probe, std::vector<double>{0.0051}), Error);
}

TEST_CASE("outer distortion recovery hits subset-sum levels exactly") {
    CounterRng rng(28, 0);
    const auto m = random_model(rng, 6, 5);
    for (const auto& h : {DistortionFn::avar(0.7), DistortionFn::power(0.5)}) {
        EnvMeasureSpec spec{StateFamilyRule::constant(DistortionFn::avar(0.9)), h};
        std::vector<double> levels{0.0};
        double cum = 0.0;
        for (double p : m.state_probs.probs) levels.push_back(cum += p);
        for (const auto& [u, got] : recover_outer_distortion(m, spec, levels))
            CHECK(std::abs(got - eval(h, u)) <= 1e-12);
    }
    EnvMeasureSpec spec{StateFamilyRule::constant(DistortionFn::identity()),
                        DistortionFn::identity()};
    CHECK_THROWS_AS(recover_outer_distortion(m, spec, std::vector<double>{0.123456}), Error);
}

TEST_CASE("coherence suite passes for concave specs and gates non-concave ones") {
    const EnvMeasureSpec good{StateFamilyRule::constant(DistortionFn::avar(0.9)),
                              DistortionFn::power(0.7)};
    const auto rep = coherence_suite(99, 50, good);
    CHECK(rep.ok());
    CHECK(rep.trials == 50);

    const EnvMeasureSpec bad{StateFamilyRule::constant(DistortionFn::var(0.9)),
                             DistortionFn::identity()};
    CHECK_THROWS_AS(coherence_suite(99, 10, bad), Error);
}
