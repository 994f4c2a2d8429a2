#include "sharpgrad/cap.hpp"
#include "sharpgrad/errors.hpp"
#include "sharpgrad/geometry.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace sharpgrad;
using namespace sharpgrad::cap;
constexpr double pi = std::numbers::pi;

TEST_SUITE("cap") {

TEST_CASE("a0 against antiderivatives")
{
    for (double g : {0.1, 0.7, 1.5, 2.2, 3.1}) {
        CHECK(a0(2, g) == doctest::Approx(g));
        CHECK(a0(3, g) == doctest::Approx(1.0 - std::cos(g)).epsilon(1e-14));
        CHECK(a0(4, g) == doctest::Approx(0.5 * (g - std::sin(g) * std::cos(g))).epsilon(1e-13));
        const double c = std::cos(g);
        CHECK(a0(5, g) == doctest::Approx(2.0 / 3.0 - c + c * c * c / 3.0).epsilon(1e-13));
    }
}

TEST_CASE("cap area")
{
    for (int n = 2; n <= 12; ++n) {
        CHECK(cap_area(n, 0.0) == 0.0);
        CHECK(cap_area(n, pi) == 1.0);
        CHECK(cap_area(n, 0.5 * pi) == doctest::Approx(0.5).epsilon(1e-14));
        CHECK(cap_area(n, 1.0) + cap_area(n, pi - 1.0) == doctest::Approx(1.0).epsilon(1e-14));
    }
    // mpmath oracles
    CHECK(cap_area(5, 1.0) == doctest::Approx(0.134205421911643567882499858643).epsilon(1e-13));
    CHECK(cap_area(7, 2.5) == doctest::Approx(0.991578243907734220734016419398).epsilon(1e-13));
    CHECK(cap_area(2, 1.0) == doctest::Approx(1.0 / pi));
}

TEST_CASE("cap angle inverts the area")
{
    for (int n = 2; n <= 12; ++n)
        for (int i = 0; i <= 200; ++i) {
            const double a = -1.0 + i / 100.0;
            CHECK(std::abs(cap_area(n, cap_angle(n, a)) - 0.5 * (1.0 + a)) <= 1e-12);
        }
    CHECK(cap_angle(2, 0.5) == doctest::Approx(0.75 * pi).epsilon(1e-15));
    for (double a : {-0.9, -0.3, 0.0, 0.4, 0.95}) CHECK(std::cos(cap_angle(3, a)) == doctest::Approx(-a).epsilon(1e-12));
    CHECK(cap_angle(6, 0.3) == doctest::Approx(1.75137307678261838342093660489).epsilon(1e-13));
    CHECK(cap_angle(9, -1.0) == 0.0);
    CHECK(cap_angle(9, 1.0) == pi);
}

TEST_CASE("cap angle derivative matches differences")
{
    for (int n : {3, 4, 7})
        for (double a : {-0.6, 0.0, 0.5}) {
            const double h = 1e-6;
            const double fd = (cap_angle(n, a + h) - cap_angle(n, a - h)) / (2.0 * h);
            CHECK(cap_angle_derivative(n, a) == doctest::Approx(fd).epsilon(1e-7));
        }
}

TEST_CASE("cap spec")
{
    const auto c = CapSpec::north(3, 0.5);
    CHECK(c.contains(Point{0.0, 0.0, 1.0}));
    CHECK_FALSE(c.contains(Point{1.0, 0.0, 0.0}));
    CHECK_THROWS_AS((CapSpec{3, Point{0.0, 0.0, 2.0}, 0.5}.validate()), DomainError);
    CHECK_THROWS_AS(CapSpec::north(3, 4.0), DomainError);
}

TEST_CASE("domain errors")
{
    CHECK_THROWS_AS(cap_angle(4, 1.5), DomainError);
    CHECK_THROWS_AS(cap_area(4, -0.1), DomainError);
    CHECK_THROWS_AS(cap_area(1, 0.1), DomainError);
}

}
