#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "riskconv/errors.hpp"
#include "riskconv/weights.hpp"

using namespace riskconv;

TEST_CASE("explicit schemes pass through") {
    WeightScheme mu({{1, 0.5}, {2, 0.5}});
    CHECK(mu.support_size() == 2);
    CHECK(mu.weight_of(1) == doctest::Approx(0.5));
    CHECK(mu.weight_of(2) == doctest::Approx(0.5));
    CHECK(mu.discarded_mass() == 0.0);
    CHECK(mu.renormalization_factor() == doctest::Approx(1.0));
    CHECK(mu.weight_of(3) == 0.0);

    WeightScheme point({{1, 1.0}});
    CHECK(point.support_size() == 1);
    CHECK(point.weight_of(1) == doctest::Approx(1.0));
}

TEST_CASE("geometric tail truncation") {
    // mu_i = 2^-i from index 1; epsilon 1e-10 keeps the first 34 indices
    WeightScheme mu({}, GeometricTail{0.5, 1}, 1e-10);
    CHECK(mu.support_size() == 34);
    CHECK(mu.discarded_mass() <= std::pow(2.0, -34) + 1e-18);
    CHECK(mu.discarded_mass() > 0.0);
    CHECK(mu.support().front().first == 1);
    CHECK(mu.support().back().first == 34);

    // first weight is 1/2 before renormalization; factor is 1/(1 - discarded)
    CHECK(mu.renormalization_factor() == doctest::Approx(1.0 / (1.0 - mu.discarded_mass())));
    CHECK(mu.weight_of(1) == doctest::Approx(0.5).epsilon(1e-9));

    double total = 0.0;
    for (const auto& [i, w] : mu.support()) total += w;
    CHECK(total == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("mixed explicit entries with a tail") {
    WeightScheme mu({{1, 0.5}}, GeometricTail{0.5, 2}, 1e-10);
    CHECK(mu.weight_of(1) == doctest::Approx(0.5).epsilon(1e-9));
    CHECK(mu.weight_of(2) == doctest::Approx(0.25).epsilon(1e-9));
    CHECK(mu.weight_of(3) == doctest::Approx(0.125).epsilon(1e-9));
}

TEST_CASE("truncation monotonicity") {
    for (double eps = 1e-4; eps >= 1e-12; eps /= 10.0) {
        WeightScheme coarse({}, GeometricTail{0.7, 1}, eps);
        WeightScheme fine({}, GeometricTail{0.7, 1}, eps / 10.0);
        CHECK(fine.support_size() >= coarse.support_size());
        // every index kept at eps stays kept at eps/10
        for (const auto& [i, w] : coarse.support()) {
            CHECK(fine.weight_of(i) > 0.0);
        }
        CHECK(fine.discarded_mass() <= coarse.discarded_mass());
    }
}

TEST_CASE("validation errors") {
    CHECK_THROWS_AS(WeightScheme({{1, 0.7}, {2, 0.7}}), invalid_input);
    CHECK_THROWS_AS(WeightScheme({{1, 0.5}, {1, 0.5}}), invalid_input);
    CHECK_THROWS_AS(WeightScheme({{1, 0.5}, {2, 0.3}}), invalid_input); // mass missing, no tail
    CHECK_THROWS_AS(WeightScheme({{1, -0.5}, {2, 1.5}}), invalid_input);
    CHECK_THROWS_AS(WeightScheme({{1, 0.5}}, GeometricTail{1.5, 2}), invalid_input);
    CHECK_THROWS_AS(WeightScheme({{1, 1.0}}, GeometricTail{0.5, 2}), invalid_input); // no tail mass
    CHECK_THROWS_AS(WeightScheme({{2, 0.5}}, GeometricTail{0.5, 1}), invalid_input); // collision
    CHECK_THROWS_AS(WeightScheme({{1, 1.0}}, std::nullopt, 0.0), invalid_input);
}

TEST_CASE("uniform helper") {
    WeightScheme mu = WeightScheme::uniform(4);
    CHECK(mu.support_size() == 4);
    CHECK(mu.weight_of(3) == doctest::Approx(0.25));
    CHECK(mu.largest_weight() == doctest::Approx(0.25));
}
