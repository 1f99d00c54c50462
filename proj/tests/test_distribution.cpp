#include <cmath>
#include <vector>

#include "doctest.h"
#include "envrisk/distribution.hpp"
#include "envrisk/errors.hpp"
#include "envrisk/random.hpp"

using namespace envrisk;

TEST_CASE("build_distribution sorts, merges, and normalizes") {
    const auto d = build_distribution({3.0, 1.0, 3.0 + 1e-15, 2.0}, {1.0, 2.0, 1.0, 1.0});
    REQUIRE(d.size() == 3);
    CHECK(d.values[0] == 1.0);
    CHECK(d.values[1] == 2.0);
    CHECK(d.values[2] == 3.0); // merged run keeps the anchor value
    CHECK(d.probs[0] == doctest::Approx(0.4).epsilon(1e-14));
    CHECK(d.probs[1] == doctest::Approx(0.2).epsilon(1e-14));
    CHECK(d.probs[2] == doctest::Approx(0.4).epsilon(1e-14));
}

TEST_CASE("build_distribution drops zero-weight atoms") {
    const auto d = build_distribution({1.0, 2.0, 3.0}, {1.0, 0.0, 1.0});
    REQUIRE(d.size() == 2);
    CHECK(d.values[0] == 1.0);
    CHECK(d.values[1] == 3.0);
}

TEST_CASE("build_distribution rejects bad input") {
    CHECK_THROWS_WITH_AS(build_distribution({}, {}), "EmptyInput: no atoms", Error);
    CHECK_THROWS_AS(build_distribution({1.0}, {1.0, 2.0}), Error);
    CHECK_THROWS_AS(build_distribution({1.0, 2.0}, {1.0, -0.5}), Error);
    CHECK_THROWS_AS(build_distribution({1.0, 2.0}, {0.0, 0.0}), Error);
    CHECK_THROWS_AS(build_distribution({1.0, std::nan("")}, {1.0, 1.0}), Error);
    CHECK_THROWS_AS(build_distribution({1.0, 2.0}, {1.0, std::nan("")}), Error);
}

TEST_CASE("mean, survival, and cdf agree with direct sums") {
    const auto d = build_distribution({-1.0, 0.0, 2.0}, {1.0, 1.0, 2.0});
    CHECK(d.mean() == doctest::Approx(0.75).epsilon(1e-15));

    CHECK(survival(d, -2.0) == doctest::Approx(1.0));
    CHECK(survival(d, -1.0) == doctest::Approx(0.75));
    CHECK(survival(d, 0.5) == doctest::Approx(0.5));
    CHECK(survival(d, 2.0) == 0.0);
    CHECK(cdf(d, -2.0) == 0.0);
    CHECK(cdf(d, 0.0) == doctest::Approx(0.5));
    CHECK(cdf(d, 2.0) == doctest::Approx(1.0));

    // P(X > t) + P(X <= t) == 1, including exactly at atoms.
    for (double t : {-2.0, -1.0, -0.5, 0.0, 1.0, 2.0, 3.0})
        CHECK(survival(d, t) + cdf(d, t) == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("canonical form is permutation invariant") {
    CounterRng rng(101, 0);
    for (int t = 0; t < 50; ++t) {
        std::vector<double> v, w;
        const int n = rng.uniform_int(1, 12);
        for (int i = 0; i < n; ++i) {
            v.push_back(rng.uniform(-5.0, 5.0));
            w.push_back(rng.uniform(0.1, 2.0));
        }
        const auto d1 = build_distribution(v, w);
        // rotate the atoms
        std::vector<double> v2(v.begin() + n / 2, v.end()), w2(w.begin() + n / 2, w.end());
        v2.insert(v2.end(), v.begin(), v.begin() + n / 2);
        w2.insert(w2.end(), w.begin(), w.begin() + n / 2);
        const auto d2 = build_distribution(v2, w2);
        REQUIRE(d1.size() == d2.size());
        for (std::size_t i = 0; i < d1.size(); ++i) {
            CHECK(d1.values[i] == d2.values[i]);
            CHECK(d1.probs[i] == doctest::Approx(d2.probs[i]).epsilon(1e-14));
        }
    }
}
