#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "capjack/special_fn.hpp"
#include "oracles.hpp"

using namespace capjack;
constexpr double pi = std::numbers::pi;

TEST_CASE("gegenbauer_eval matches the generating-function anchors") {
    CHECK(gegenbauer_eval({1.0, 1}, 0.5) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(gegenbauer_eval({0.7, 0}, -0.4) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(gegenbauer_eval({2.3, 0}, 0.9) == doctest::Approx(1.0).epsilon(1e-15));
    // Legendre P2(0.3) = (3 * 0.09 - 1) / 2 = -0.365 exactly.
    CHECK(gegenbauer_eval({0.5, 2}, 0.3) == doctest::Approx(-0.365).epsilon(1e-12));
}

TEST_CASE("gegenbauer_eval rejects bad arguments") {
    CHECK_THROWS_AS(gegenbauer_eval({0.0, 2}, 0.5), std::domain_error);
    CHECK_THROWS_AS(gegenbauer_eval({-1.0, 2}, 0.5), std::domain_error);
    CHECK_THROWS_AS(gegenbauer_eval({1.0, -1}, 0.5), std::domain_error);
    CHECK_THROWS_AS(gegenbauer_eval({1.0, 2}, 1.0 + 1e-9), std::domain_error);
    CHECK_NOTHROW(gegenbauer_eval({1.0, 2}, 1.0 + 1e-13));  // inside the float slack
}

TEST_CASE("gegenbauer_at_one product recurrence") {
    CHECK(gegenbauer_at_one({0.8, 0}) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(gegenbauer_at_one({0.8, 1}) == doctest::Approx(1.6).epsilon(1e-14));
    CHECK(gegenbauer_at_one({1.25, 1}) == doctest::Approx(2.5).epsilon(1e-14));
    // Gamma(5) / (Gamma(4) Gamma(2)) = 24 / 6 = 4.
    CHECK(gegenbauer_at_one({1.0, 3}) == doctest::Approx(4.0).epsilon(1e-14));
    // Large degree stays finite and positive (no Gamma overflow route).
    CHECK(gegenbauer_at_one({0.5, 500}) > 0.0);
    CHECK(std::isfinite(gegenbauer_at_one({2.0, 500})));
}

TEST_CASE("legendre_ratio anchors") {
    for (int n : {3, 4, 5, 6})
        for (int j : {0, 1, 2, 5, 9})
            CHECK(legendre_ratio(n, j, 1.0) == doctest::Approx(1.0).epsilon(1e-12));
    for (int n : {3, 4, 5})
        for (double t : {-0.8, -0.1, 0.6})
            CHECK(legendre_ratio(n, 1, t) == doctest::Approx(t).epsilon(1e-14));
    CHECK(legendre_ratio(3, 2, 0.0) == doctest::Approx(-0.5).epsilon(1e-14));
    CHECK_THROWS_AS(legendre_ratio(2, 1, 0.5), std::domain_error);
}

TEST_CASE("legendre_ratio stays within [-1, 1]") {
    for (int n = 3; n <= 6; ++n)
        for (int j = 0; j <= 64; j += (j < 8 ? 1 : 7))
            for (int i = 0; i <= 2000; ++i) {
                double t = -1.0 + 2.0 * i / 2000.0;
                CHECK(std::abs(legendre_ratio(n, j, t)) <= 1.0 + 1e-12);
            }
}

TEST_CASE("legendre_ratio_all agrees with single-degree evaluation") {
    std::vector<double> all(65);
    for (int n : {3, 5}) {
        legendre_ratio_all(n, 64, 0.37, all);
        for (int j = 0; j <= 64; ++j)
            CHECK(all[static_cast<std::size_t>(j)] ==
                  doctest::Approx(legendre_ratio(n, j, 0.37)).epsilon(1e-14));
    }
}

TEST_CASE("derivative identity d/dt G_j = 2 lambda G_{j-1}^{lambda+1}") {
    for (double lambda : {0.5, 1.0, 1.5})
        for (int j = 1; j <= 12; ++j)
            for (double t = -0.99; t < 0.995; t += 0.18) {
                double fd = oracles::central_diff(
                    [&](double x) { return gegenbauer_eval({lambda, j}, x); }, t, 1e-5);
                double exact = 2.0 * lambda * gegenbauer_eval({lambda + 1.0, j - 1}, t);
                CHECK(fd == doctest::Approx(exact).epsilon(1e-6));
            }
}

TEST_CASE("generating function partial sums") {
    for (double lambda : {0.5, 1.0, 1.5})
        for (double t : {-0.9, -0.3, 0.2, 0.8})
            for (double r : {-0.5, -0.25, 0.1, 0.5}) {
                double partial = 0.0;
                for (int j = 0; j <= 40; ++j)
                    partial += gegenbauer_eval({lambda, j}, t) * std::pow(r, j);
                double closed = std::pow(1.0 - 2.0 * t * r + r * r, -lambda);
                CHECK(partial == doctest::Approx(closed).epsilon(1e-8));
            }
}

TEST_CASE("recurrence agrees with the closed-form expansion") {
    for (double lambda : {0.5, 1.0, 2.0})
        for (int j = 0; j <= 10; ++j)
            for (double t : {-0.7, 0.0, 0.4, 0.95}) {
                double closed = oracles::gegenbauer_closed_form(lambda, j, t);
                CHECK(gegenbauer_eval({lambda, j}, t) == doctest::Approx(closed).epsilon(1e-10));
            }
}

TEST_CASE("sphere volumes") {
    CHECK(sphere_volume(3) == doctest::Approx(4.0 * pi).epsilon(1e-13));
    CHECK(sphere_volume(2) == doctest::Approx(2.0 * pi).epsilon(1e-13));
    CHECK(sphere_volume(4) == doctest::Approx(2.0 * pi * pi).epsilon(1e-13));
    CHECK(sphere_volume(3) == doctest::Approx(12.566370614359172).epsilon(1e-12));
    CHECK_THROWS_AS(sphere_volume(1), std::domain_error);
}
