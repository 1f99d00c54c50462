#include <cmath>
#include <vector>

#include "doctest.h"
#include "envrisk/choquet.hpp"
#include "envrisk/classical.hpp"
#include "envrisk/errors.hpp"
#include "envrisk/generators.hpp"
#include "envrisk/random.hpp"

using namespace envrisk;

TEST_CASE("var is the lower alpha-quantile") {
    const auto d = build_distribution({1.0, 2.0, 3.0, 4.0}, {1.0, 1.0, 1.0, 1.0});
    CHECK(var(d, 0.1) == 1.0);
    CHECK(var(d, 0.25) == 1.0); // cdf hits the level exactly -> lower quantile
    CHECK(var(d, 0.26) == 2.0);
    CHECK(var(d, 0.75) == 3.0);
    CHECK(var(d, 0.99) == 4.0);
}

TEST_CASE("avar averages the upper tail exactly through atom splits") {
    const auto d = build_distribution({1.0, 2.0, 3.0, 4.0}, {1.0, 1.0, 1.0, 1.0});
    CHECK(avar(d, 0.75) == doctest::Approx(4.0).epsilon(1e-15));
    // alpha = 0.5 -> top half is {3, 4}
    CHECK(avar(d, 0.5) == doctest::Approx(3.5).epsilon(1e-15));
    // alpha = 0.6 splits the atom at 3: (0.15 * 3 + 0.25 * 4) / 0.4
    CHECK(avar(d, 0.6) == doctest::Approx((0.15 * 3.0 + 0.25 * 4.0) / 0.4).epsilon(1e-15));
    // alpha -> 0 recovers the mean
    CHECK(avar(d, 1e-12) == doctest::Approx(d.mean()).epsilon(1e-9));
}

TEST_CASE("avar equals the distorted integral with the tail-linear distortion") {
    CounterRng rng(31, 0);
    for (int t = 0; t < 60; ++t) {
        const auto d = random_distribution(rng, rng.uniform_int(1, 14), -8.0, 8.0);
        const double a = rng.uniform(0.05, 0.95);
        CHECK(avar(d, a) ==
              doctest::Approx(choquet_distorted(d, DistortionFn::avar(a))).epsilon(1e-12));
    }
}

TEST_CASE("var equals the distorted integral with the indicator distortion") {
    CounterRng rng(32, 0);
    for (int t = 0; t < 60; ++t) {
        const auto d = random_distribution(rng, rng.uniform_int(1, 14), -8.0, 8.0);
        double a = rng.uniform(0.05, 0.95);
        // keep the level away from the cdf jump points so the indicator's
        // half-open convention is unambiguous
        bool on_jump = false;
        double cum = 0.0;
        for (double p : d.probs) {
            cum += p;
            if (std::abs(cum - a) < 1e-9) on_jump = true;
        }
        if (on_jump) continue;
        // the telescoped layer sum reassembles the quantile up to rounding
        CHECK(std::abs(var(d, a) - choquet_distorted(d, DistortionFn::var(a))) <= 1e-12);
    }
}

TEST_CASE("rvar on the uniform four-point law") {
    const auto d = build_distribution({1.0, 2.0, 3.0, 4.0}, {1.0, 1.0, 1.0, 1.0});
    // window [0.25, 0.75] covers atoms 2 and 3 exactly
    CHECK(rvar(d, 0.25, 0.75) == doctest::Approx(2.5).epsilon(1e-15));
    CHECK(rvar(d, 0.0, 1.0) == doctest::Approx(d.mean()).epsilon(1e-15));
    CHECK_THROWS_AS(rvar(d, 0.5, 0.5), Error);
    CHECK_THROWS_AS(rvar(d, 0.7, 0.2), Error);
}

TEST_CASE("wvar mixes avar across the level measure") {
    const auto d = build_distribution({1.0, 5.0, 9.0}, {1.0, 1.0, 1.0});
    const auto mu = LevelMeasure::make({0.3, 0.8}, {0.25, 0.75});
    CHECK(wvar(d, mu) ==
          doctest::Approx(0.25 * avar(d, 0.3) + 0.75 * avar(d, 0.8)).epsilon(1e-14));
    CHECK_THROWS_AS(LevelMeasure::make({0.0, 0.5}, {0.5, 0.5}), Error);
    CHECK_THROWS_AS(LevelMeasure::make({0.5, 1.0}, {0.5, 0.5}), Error);
}

TEST_CASE("wvar rebuilt through the two-layer machinery matches") {
    CounterRng rng(33, 0);
    for (int t = 0; t < 30; ++t) {
        const auto d = random_distribution(rng, rng.uniform_int(2, 12), -5.0, 5.0);
        const int k = rng.uniform_int(1, 4);
        std::vector<double> levels, w;
        double lvl = rng.uniform(0.05, 0.3);
        for (int i = 0; i < k; ++i) {
            levels.push_back(lvl);
            w.push_back(rng.uniform(0.2, 1.0));
            lvl += rng.uniform(0.05, 0.2);
        }
        const auto chk = wvar_recovery_check(d, LevelMeasure::make(levels, w));
        CHECK(chk.abs_delta <= 1e-10);
    }
}

TEST_CASE("rvar rebuilt through discretized interior levels matches") {
    CounterRng rng(34, 0);
    for (int t = 0; t < 10; ++t) {
        const auto d = random_distribution(rng, rng.uniform_int(2, 8), -5.0, 5.0);
        const double a1 = rng.uniform(0.05, 0.4);
        const double a2 = a1 + rng.uniform(0.1, 0.5);
        // worst-case midpoint error on a step quantile is range / n = 2.5e-4
        const auto chk = rvar_recovery_check(d, a1, a2, 40000);
        CHECK(chk.abs_delta <= 1e-3);
    }
    // breakpoint-aligned case: cell edges avoid every cdf jump, so the
    // midpoint rule is exact rather than approximate
    const auto d = build_distribution({1.0, 2.0, 3.0, 4.0}, {1.0, 1.0, 1.0, 1.0});
    const auto chk = rvar_recovery_check(d, 0.25, 0.75, 2);
    CHECK(chk.classical == doctest::Approx(2.5).epsilon(1e-15));
    CHECK(chk.abs_delta <= 1e-12);
}
