#include "sharpgrad/constants.hpp"
#include "sharpgrad/errors.hpp"
#include "sharpgrad/geometry.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace sharpgrad;
using namespace sharpgrad::constants;
constexpr double pi = std::numbers::pi;

TEST_SUITE("constants") {

TEST_CASE("presets")
{
    CHECK(preset_beta(5, BoundKind::harmonic) == 2.5);
    CHECK(preset_beta(5, BoundKind::hyperbolic_harmonic) == 4.0);
    CHECK(preset_params(4, BoundKind::hyperbolic_harmonic).alpha == 3.0);
    CHECK(parse_bound_kind("hyperbolic") == BoundKind::hyperbolic_harmonic);
    CHECK(parse_bound_kind(to_string(BoundKind::harmonic)) == BoundKind::harmonic);
    CHECK_THROWS_AS(parse_bound_kind("elliptic"), DomainError);
}

TEST_CASE("gradient bounds at the origin")
{
    CHECK(d_n(3, pi / 2, 1.5) == doctest::Approx(1.5));
    CHECK(d_n(4, 0.3, 2.0) == doctest::Approx(2.0 * geometry::omega_star(4) * std::pow(std::sin(0.3), 3)));
    CHECK(grad0_coefficient(3, BoundKind::harmonic) == 1.5);
    CHECK(grad0_coefficient(3, BoundKind::hyperbolic_harmonic) == doctest::Approx(2.0));
    CHECK(grad0_bound(3, 0.0, BoundKind::harmonic) == doctest::Approx(1.5));
    CHECK(beta_bound(4, 0.5, 2.0) == doctest::Approx(1.5));
}

TEST_CASE("normalized constant C_n")
{
    for (double g : {0.1, 1.0, 2.5}) CHECK(c_n(3, g) == doctest::Approx(1.0).epsilon(1e-12));
    // mpmath oracles
    CHECK(c_n(4, 0.3) == doctest::Approx(0.978744250126320831529179183356).epsilon(1e-12));
    CHECK(c_n(5, 0.3) == doctest::Approx(0.97171273219123038435695794155).epsilon(1e-12));
    CHECK_THROWS_AS(c_n(4, 0.0), DomainError);
    CHECK_THROWS_AS(c_n(4, pi), DomainError);
}

TEST_CASE("pointwise bounds")
{
    CHECK(pointwise_bound(3, 0.0, 0.0, BoundKind::harmonic) == doctest::Approx(1.5));
    CHECK(pointwise_bound(4, 0.5, 0.5, BoundKind::harmonic) == doctest::Approx(2.0 * 0.75 / 0.5));
    CHECK(pointwise_bound(4, 0.5, 0.5, BoundKind::hyperbolic_harmonic) == doctest::Approx(3.0 * 0.75 / 0.75));
    CHECK(question_bound(4, 0.5, 0.5) == doctest::Approx(2.0 * 0.75 / 0.75));
}

TEST_CASE("Liu constants")
{
    CHECK(liu_constant(3) == 1.5);
    CHECK(liu_sharp_constant(3) == doctest::Approx(8.0 / (3.0 * std::sqrt(3.0))));
    CHECK(liu_sharp_constant(4) == liu_constant(4));
    CHECK(liu_constant(4) < 2.0); // 4 omega_star(4) < 4, the counterexample's root cause
}

TEST_CASE("Khavinson Phi_n")
{
    for (int n = 3; n <= 10; ++n) CHECK(khavinson_phi(n, 0.0) == doctest::Approx(2.0 / (n - 1)).epsilon(1e-12));
    CHECK(khavinson_phi(3, 1.0) == doctest::Approx(16.0 / (9.0 * std::sqrt(3.0))).epsilon(1e-14));
    for (double r : {1e-3, 0.2, 0.7, 1.0}) CHECK(std::abs(khavinson_phi_integral(3, r) - khavinson_phi3_closed(r)) < 1e-10);
    // mpmath oracles of the integral
    CHECK(khavinson_phi(4, 0.5) == doctest::Approx(0.6624716013892).epsilon(1e-11));
    CHECK(khavinson_phi(5, 0.9) == doctest::Approx(0.46628106574813205).epsilon(1e-11));
    CHECK(khavinson_phi(4, 1.0) == doctest::Approx(3.0 * std::sqrt(3.0) / 8.0).epsilon(1e-12));
    CHECK(khavinson_gradient_bound(3, 0.0) == doctest::Approx(1.5));
    CHECK(khavinson_hyperbolic_bound(3, 0.5) == doctest::Approx(2.0 / 0.75));
    CHECK_THROWS_AS(khavinson_phi(2, 0.5), DomainError);
    CHECK_THROWS_AS(khavinson_gradient_bound(3, 1.0), DomainError);
}

TEST_CASE("radial envelope on B^3")
{
    const auto e = thyp3_envelope(0.0, 0.0);
    CHECK(e.lo == doctest::Approx(-1.5));
    CHECK(e.hi == doctest::Approx(1.5));
    const auto f = thyp3_envelope(0.5, 0.4);
    const double s = 0.5 * (1.0 - 0.16) / 0.75;
    CHECK(f.lo == doctest::Approx((-3.0 - 0.2) * s));
    CHECK(f.hi == doctest::Approx((3.0 - 0.2) * s));
    CHECK(thyp3_gradient_bound(0.5, 0.4) == doctest::Approx(2.0 * 0.84 / 0.75));
}

}
