#include "sharpgrad/errors.hpp"
#include "sharpgrad/geometry.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace sharpgrad;
using namespace sharpgrad::geometry;
constexpr double pi = std::numbers::pi;

TEST_SUITE("geometry") {

TEST_CASE("ball volumes in low dimension")
{
    const double exact[] = {2.0, pi, 4.0 * pi / 3.0, pi * pi / 2.0, 8.0 * pi * pi / 15.0};
    for (int n = 1; n <= 5; ++n) CHECK(omega(n) == doctest::Approx(exact[n - 1]).epsilon(1e-14));
    CHECK(sigma(3) == doctest::Approx(4.0 * pi).epsilon(1e-14));
    // mpmath, 30 digits
    CHECK(omega(20) == doctest::Approx(0.0258068913900140600125982942529).epsilon(1e-13));
}

TEST_CASE("omega_star against the gamma-function ratio")
{
    CHECK(omega_star(3) == 0.75);
    CHECK(omega_star(5) == 0.9375);
    CHECK(omega_star(4) == doctest::Approx(0.848826363156775124100713404653).epsilon(1e-15));
    for (int n = 2; n <= 200; ++n) {
        const double ref = std::exp(std::lgamma(0.5 * n + 1.0) - std::lgamma(0.5 * (n + 1)) - 0.5 * std::log(pi));
        CHECK(omega_star(n) == doctest::Approx(ref).epsilon(1e-12));
    }
    CHECK(sigma_star(7) == doctest::Approx(0.9375).epsilon(1e-15));
    for (int n = 2; n <= 30; ++n) CHECK(sigma_star(n) == doctest::Approx((n - 1.0) / n * omega_star(n)));
}

TEST_CASE("large dimensions stay finite")
{
    CHECK(omega(400) > 0.0);
    CHECK(std::isfinite(omega_star(400)));
    CHECK(omega_star(400) == doctest::Approx(std::sqrt(400.0 / (2.0 * pi))).epsilon(1e-3));
}

TEST_CASE("ratio brackets")
{
    for (int n = 2; n <= 50; ++n) {
        const auto b = ratio_bounds(n, RatioBound::borgwardt);
        const auto a = ratio_bounds(n, RatioBound::alzer);
        CHECK(b.contains_strictly(omega_star(n)));
        CHECK(a.contains_strictly(omega_star(n)));
        CHECK(b.contains(a));
        CHECK(b.lo == doctest::Approx(std::sqrt(n / (2.0 * pi))));
    }
    for (int n = 4; n <= 50; ++n) CHECK(sigma_star_bounds_check(n));
}

TEST_CASE("gamma at half integers")
{
    CHECK(gamma_half_integer(1) == doctest::Approx(std::sqrt(pi)));
    CHECK(gamma_half_integer(2) == 1.0);
    CHECK(gamma_half_integer(7) == doctest::Approx(std::tgamma(3.5)));
}

TEST_CASE("rejects invalid dimensions")
{
    CHECK_THROWS_AS(omega(0), DomainError);
    CHECK_THROWS_AS(ratio_bounds(1, RatioBound::alzer), DomainError);
    CHECK_THROWS_AS(sigma_star_bounds_check(3), DomainError);
}

}
