#include "sharpgrad/cap.hpp"

#include "sharpgrad/errors.hpp"
#include "sharpgrad/geometry.hpp"
#include "sharpgrad/numerics.hpp"

#include <cmath>
#include <numbers>

namespace sharpgrad::cap {

using sharpgrad::detail::require;
constexpr double pi = std::numbers::pi;

CapSpec CapSpec::north(int n, double gamma)
{
    CapSpec c{n, north_pole(n), gamma};
    c.validate();
    return c;
}

void CapSpec::validate() const
{
    require(n >= 2, "CapSpec: dimension must be >= 2");
    require(axis.size() == static_cast<std::size_t>(n), "CapSpec: axis has wrong dimension");
    require(std::abs(norm(axis) - 1.0) <= 1e-12, "CapSpec: axis must be a unit vector");
    require(gamma >= 0.0 && gamma <= pi, "CapSpec: gamma must lie in [0, pi]");
}

bool CapSpec::contains(std::span<const double> y) const { return dot(axis, y) > std::cos(gamma); }

namespace {

void check_domain(int n, double gamma)
{
    require(n >= 2, "cap: dimension must be >= 2");
    require(gamma >= 0.0 && gamma <= pi, "cap: gamma must lie in [0, pi]");
}

const numerics::QuadratureConfig& cap_quadrature()
{
    static const numerics::QuadratureConfig cfg{64, 1e-16, 1e-15, 40};
    return cfg;
}

} // namespace

double a0(int n, double gamma)
{
    check_domain(n, gamma);
    if (n == 2) return gamma;
    if (n == 3) {
        const double s = std::sin(0.5 * gamma);
        return 2.0 * s * s;
    }
    const int power = n - 2;
    // sin^{n-2} peaks at pi/2; split there so panels stay unimodal.
    const double mid[] = {0.5 * pi};
    return numerics::integrate_1d([power](double t) { return std::pow(std::sin(t), power); }, 0.0, gamma,
                                  cap_quadrature(), mid);
}

double cap_area(int n, double gamma)
{
    check_domain(n, gamma);
    if (n == 2) return gamma / pi;
    if (gamma == pi) return 1.0;
    // The complement of a cap is a cap; evaluate the smaller one so that the
    // result stays accurate near A = 1.
    if (gamma > 0.5 * pi) return 1.0 - geometry::sigma_star(n) * a0(n, pi - gamma);
    return geometry::sigma_star(n) * a0(n, gamma);
}

double cap_angle(int n, double a)
{
    require(n >= 2, "cap_angle: dimension must be >= 2");
    require(a >= -1.0 && a <= 1.0, "cap_angle: a must lie in [-1, 1]");
    if (a == -1.0) return 0.0;
    if (a == 1.0) return pi;
    if (a == 0.0) return 0.5 * pi;
    if (n == 2) return 0.5 * pi + 0.5 * pi * a;
    if (n == 3) return std::acos(-a);
    // Solve on the small-cap side and reflect, which also makes
    // cap_angle(n, -a) = pi - cap_angle(n, a) hold exactly.
    if (a > 0.0) return pi - cap_angle(n, -a);
    const double target = 0.5 * (1.0 + a);
    const double s = geometry::sigma_star(n);
    return numerics::find_root_bracketed([&](double g) { return s * a0(n, g) - target; }, 0.0, 0.5 * pi,
                                         1e-15);
}

double cap_angle_derivative(int n, double a)
{
    require(n >= 2, "cap_angle_derivative: dimension must be >= 2");
    require(a > -1.0 && a < 1.0, "cap_angle_derivative: a must lie strictly inside (-1, 1)");
    const double g = cap_angle(n, a);
    return 1.0 / (2.0 * geometry::sigma_star(n) * std::pow(std::sin(g), n - 2));
}

} // namespace sharpgrad::cap
