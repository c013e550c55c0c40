#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "riskconv/errors.hpp"
#include "riskconv/space.hpp"
#include "test_support.hpp"

using namespace riskconv;
namespace rt = riskconv::testing;

namespace {
Position make_position(const SpacePtr& space, std::initializer_list<double> vals) {
    Eigen::VectorXd v(static_cast<Eigen::Index>(vals.size()));
    Eigen::Index k = 0;
    for (double x : vals) v[k++] = x;
    return Position(space, v);
}
} // namespace

TEST_CASE("space construction and validation") {
    auto space = FiniteProbabilitySpace::equiprobable(4);
    CHECK(space->atom_count() == 4);
    CHECK(space->probability(0) == doctest::Approx(0.25));
    CHECK(space->is_equiprobable());

    Eigen::VectorXd bad(2);
    bad << 0.5, 0.6;
    CHECK_THROWS_AS(FiniteProbabilitySpace::make(bad), invalid_input);

    Eigen::VectorXd nonpos(2);
    nonpos << 1.0, 0.0;
    CHECK_THROWS_AS(FiniteProbabilitySpace::make(nonpos), invalid_input);

    Eigen::VectorXd skew(3);
    skew << 0.2, 0.3, 0.5;
    auto s2 = FiniteProbabilitySpace::make(skew);
    CHECK_FALSE(s2->is_equiprobable());
    CHECK(s2->probabilities().sum() == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("cdf enumerates atoms") {
    auto space = FiniteProbabilitySpace::equiprobable(4);
    Position x = make_position(space, {-3, -1, 2, 5});
    CHECK(cdf(x, -1.0) == doctest::Approx(0.5));
    CHECK(cdf(x, 5.0) == doctest::Approx(1.0));
    CHECK(cdf(x, -3.0000001) == doctest::Approx(0.0));
    // right-continuity: value just above an atom keeps the mass
    CHECK(cdf(x, -1.0 + 1e-9) == doctest::Approx(0.5));
    CHECK_THROWS_AS(cdf(x, std::nan("")), invalid_input);
}

TEST_CASE("left quantile matches the inf definition") {
    auto space = FiniteProbabilitySpace::equiprobable(4);
    Position x = make_position(space, {-3, -1, 2, 5});
    CHECK(left_quantile(x, 0.25) == doctest::Approx(-3.0));
    CHECK(left_quantile(x, 0.26) == doctest::Approx(-1.0));
    CHECK(left_quantile(x, 1.0) == doctest::Approx(5.0));

    Position c = make_position(space, {2.5, 2.5, 2.5, 2.5});
    CHECK(left_quantile(c, 0.1) == doctest::Approx(2.5));
    CHECK(left_quantile(c, 1.0) == doctest::Approx(2.5));

    CHECK_THROWS_AS(left_quantile(x, 0.0), invalid_input);
    CHECK_THROWS_AS(left_quantile(x, 1.5), invalid_input);
}

TEST_CASE("left quantile agrees with sort-and-accumulate oracle") {
    auto gen = rt::rng(20240601);
    std::uniform_real_distribution<double> level(1e-6, 1.0);
    for (int trial = 0; trial < 1000; ++trial) {
        auto space = (trial % 2 == 0) ? FiniteProbabilitySpace::equiprobable(2 + trial % 7)
                                      : rt::random_space(2 + trial % 7, gen);
        Position x = rt::random_position(space, gen);
        const double alpha = level(gen);
        CHECK(left_quantile(x, alpha) == doctest::Approx(rt::quantile_by_sorting(x, alpha)));
    }
}

TEST_CASE("left quantile is nondecreasing in the level") {
    auto gen = rt::rng(7);
    for (int trial = 0; trial < 200; ++trial) {
        auto space = rt::random_space(5, gen);
        Position x = rt::random_position(space, gen);
        double prev = -1e300;
        for (double alpha = 0.05; alpha <= 1.0; alpha += 0.05) {
            const double q = left_quantile(x, alpha);
            CHECK(q >= prev - 1e-12);
            prev = q;
        }
    }
}

TEST_CASE("quantile function reconstruction and integrals") {
    auto space = FiniteProbabilitySpace::equiprobable(4);
    Position x = make_position(space, {-3, -1, 2, 5});
    auto q = quantile_function(x);
    CHECK(q(0.5) == doctest::Approx(-1.0));
    CHECK(q.lower_partial_integral(0.5) == doctest::Approx(-1.0)); // -3*.25 + -1*.25
    CHECK(q.lower_partial_integral(1.0) == doctest::Approx(x.expectation()));
    CHECK(q.upper_tail_integral(0.25) == doctest::Approx(1.25)); // 5*.25
    CHECK(q.upper_tail_integral(1.0) == doctest::Approx(x.expectation()));

    // tied values merge into a single step
    Position tied = make_position(space, {1, 1, 2, 2});
    auto qt = quantile_function(tied);
    CHECK(qt.levels.size() == 2);
    CHECK(qt(0.5) == doctest::Approx(1.0));
    CHECK(qt(0.51) == doctest::Approx(2.0));
}

TEST_CASE("ssd examples") {
    auto two = FiniteProbabilitySpace::equiprobable(2);
    Position x = make_position(two, {-1, 1});
    CHECK(ssd_dominates(x, x));

    Position zero = make_position(two, {0, 0});
    CHECK(ssd_dominates(zero, x)); // E[X | trivial sigma-algebra] dominates X

    Position a = make_position(two, {0, 2});
    Position b = make_position(two, {0, 1});
    CHECK_FALSE(ssd_dominates(a, b)); // E[(a-1)^+] = 0.5 > 0

    auto three = FiniteProbabilitySpace::equiprobable(3);
    CHECK_THROWS_AS(ssd_dominates(x, make_position(three, {0, 0, 0})), structural_error);
}

TEST_CASE("conditional expectation dominates in ssd (Jensen direction)") {
    auto gen = rt::rng(99);
    for (int trial = 0; trial < 300; ++trial) {
        auto space = rt::random_space(6, gen);
        Position x = rt::random_position(space, gen);
        std::uniform_int_distribution<int> labels(0, 2);
        Eigen::VectorXd z(6);
        for (Eigen::Index k = 0; k < 6; ++k) z[k] = labels(gen);
        Position cond = conditional_expectation_given(x, Position(space, z));
        CHECK(ssd_dominates(cond, x, 1e-10));
    }
}

TEST_CASE("conditional expectation examples") {
    auto space = FiniteProbabilitySpace::equiprobable(4);
    Position x = make_position(space, {1, 3, 2, 0});

    Position zc = make_position(space, {7, 7, 7, 7});
    Position m = conditional_expectation_given(x, zc);
    CHECK(m.values().isApproxToConstant(x.expectation(), 1e-14));

    Position self = conditional_expectation_given(x, x);
    CHECK(self.values().isApprox(x.values()));

    Position z = make_position(space, {0, 0, 1, 1});
    Position cond = conditional_expectation_given(x, z);
    CHECK(cond.value(0) == doctest::Approx(2.0));
    CHECK(cond.value(1) == doctest::Approx(2.0));
    CHECK(cond.value(2) == doctest::Approx(1.0));
    CHECK(cond.value(3) == doctest::Approx(1.0));
}

TEST_CASE("comonotone pair examples") {
    auto three = FiniteProbabilitySpace::equiprobable(3);
    CHECK(is_comonotone_pair(make_position(three, {1, 2, 3}), make_position(three, {0, 0, 5})));

    auto two = FiniteProbabilitySpace::equiprobable(2);
    CHECK_FALSE(is_comonotone_pair(make_position(two, {1, 2}), make_position(two, {2, 1})));

    Position c = make_position(two, {4, 4});
    CHECK(is_comonotone_pair(c, make_position(two, {9, -9})));
}

TEST_CASE("comonotonicity is symmetric and invariant under increasing maps") {
    auto gen = rt::rng(2024);
    for (int trial = 0; trial < 200; ++trial) {
        auto space = FiniteProbabilitySpace::equiprobable(5);
        auto [x, y] = rt::random_comonotone_pair(space, gen);
        CHECK(is_comonotone_pair(x, y));
        CHECK(is_comonotone_pair(y, x));
        Eigen::VectorXd fx = x.values().array().exp();
        CHECK(is_comonotone_pair(Position(space, fx), y));

        Position u = rt::random_position(space, gen);
        Position v = rt::random_position(space, gen);
        CHECK(is_comonotone_pair(u, v) == is_comonotone_pair(v, u));
    }
}

TEST_CASE("comonotonic additivity of quantiles") {
    auto gen = rt::rng(31415);
    for (int trial = 0; trial < 200; ++trial) {
        auto space = FiniteProbabilitySpace::equiprobable(4 + trial % 4);
        auto [x, y] = rt::random_comonotone_pair(space, gen);
        Position sum = x + y;
        for (double alpha = 0.1; alpha <= 1.0; alpha += 0.1) {
            CHECK(left_quantile(sum, alpha) ==
                  doctest::Approx(left_quantile(x, alpha) + left_quantile(y, alpha)).epsilon(1e-9));
        }
    }
}
