#include "sharpgrad/constants.hpp"

#include "sharpgrad/cap.hpp"
#include "sharpgrad/errors.hpp"
#include "sharpgrad/numerics.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace sharpgrad::constants {

using sharpgrad::detail::require;
constexpr double pi = std::numbers::pi;

std::string_view to_string(BoundKind kind)
{
    return kind == BoundKind::harmonic ? "harmonic" : "hyperbolic";
}

BoundKind parse_bound_kind(std::string_view name)
{
    if (name == "harmonic") return BoundKind::harmonic;
    if (name == "hyperbolic" || name == "hyperbolic_harmonic") return BoundKind::hyperbolic_harmonic;
    throw DomainError("unknown bound kind '" + std::string(name) + "'");
}

double preset_beta(int n, BoundKind kind) { return kind == BoundKind::harmonic ? 0.5 * n : n - 1.0; }

poisson::PoissonParams preset_params(int n, BoundKind kind)
{
    return kind == BoundKind::harmonic ? poisson::PoissonParams::harmonic(n) : poisson::PoissonParams::hyperbolic(n);
}

double grad0_coefficient(int n, BoundKind kind)
{
    const auto c = geometry::ball_constants(n);
    return kind == BoundKind::harmonic ? 2.0 * c.omega_star : 4.0 * c.sigma_star;
}

double d_n(int n, double gamma, double beta)
{
    require(n >= 2, "d_n: dimension must be >= 2");
    require(beta > 0.0, "d_n: beta must be positive");
    require(gamma >= 0.0 && gamma <= pi, "d_n: gamma must lie in [0, pi]");
    return 4.0 * beta / n * geometry::omega_star(n) * std::pow(std::sin(gamma), n - 1);
}

double c_n(int n, double gamma)
{
    require(n >= 2, "c_n: dimension must be >= 2");
    require(gamma > 0.0 && gamma < pi, "c_n: gamma must lie strictly inside (0, pi)");
    const double complement = cap::cap_area(n, pi - gamma); // 1 - A(gamma) without cancellation
    return std::pow(std::sin(gamma), n - 1) / ((n - 1.0) * cap::a0(n, gamma) * complement);
}

double grad0_bound(int n, double a, BoundKind kind)
{
    require(a >= -1.0 && a <= 1.0, "grad0_bound: a must lie in [-1, 1]");
    return grad0_coefficient(n, kind) * std::pow(std::sin(cap::cap_angle(n, a)), n - 1);
}

double beta_bound(int n, double a, double beta)
{
    require(n >= 3, "beta_bound: stated for n >= 3");
    require(a >= -1.0 && a <= 1.0, "beta_bound: a must lie in [-1, 1]");
    require(beta > 0.0, "beta_bound: beta must be positive");
    return beta * (1.0 - a * a);
}

double pointwise_bound(int n, double a, double x_norm, BoundKind kind)
{
    require(n >= 3, "pointwise_bound: stated for n >= 3");
    require(a >= -1.0 && a <= 1.0, "pointwise_bound: a must lie in [-1, 1]");
    require(x_norm >= 0.0 && x_norm < 1.0, "pointwise_bound: |x| must lie in [0, 1)");
    if (kind == BoundKind::harmonic) return 0.5 * n * (1.0 - a * a) / (1.0 - x_norm);
    return (n - 1.0) * (1.0 - a * a) / (1.0 - x_norm * x_norm);
}

double question_bound(int n, double a, double x_norm)
{
    require(n >= 3, "question_bound: stated for n >= 3");
    require(x_norm >= 0.0 && x_norm < 1.0, "question_bound: |x| must lie in [0, 1)");
    return 0.5 * n * (1.0 - a * a) / (1.0 - x_norm * x_norm);
}

double liu_constant(int n) { return 2.0 * geometry::omega_star(n); }

double liu_sharp_constant(int n)
{
    require(n >= 2, "liu_sharp_constant: dimension must be >= 2");
    return n == 3 ? 8.0 / (3.0 * std::sqrt(3.0)) : liu_constant(n);
}

double khavinson_phi_integral(int n, double r)
{
    require(n >= 3, "khavinson_phi: dimension must be >= 3");
    require(r >= 0.0 && r <= 1.0, "khavinson_phi: r must lie in [0, 1]");
    // The shift is ((n-2)/n) r: the radial kernel derivative pulled back by the
    // boundary Mobius map is -n(t - (n-2)r/n)/(1-r^2).
    const double kink = (n - 2.0) / n * r;
    const double half_power = 0.5 * (n - 2);
    const int sin_power = n - 2;
    // t = cos(theta): (1-t^2)^{(n-3)/2} dt = sin^{n-2}(theta) dtheta and
    // 1 - 2 t r + r^2 = (1-r)^2 + 4 r sin^2(theta/2), free of cancellation at r = 1.
    auto integrand = [&](double theta) {
        const double s = std::sin(0.5 * theta);
        const double denom = (1.0 - r) * (1.0 - r) + 4.0 * r * s * s;
        return std::abs(std::cos(theta) - kink) * std::pow(std::sin(theta), sin_power) / std::pow(denom, half_power);
    };
    std::vector<double> breaks{0.5 * pi};
    if (kink < 1.0) breaks.push_back(std::acos(kink));
    const numerics::QuadratureConfig cfg{64, 1e-14, 1e-13, 40};
    return numerics::integrate_1d(integrand, 0.0, pi, cfg, breaks);
}

double khavinson_phi3_closed(double r)
{
    require(r > 0.0 && r <= 1.0, "khavinson_phi3_closed: r must lie in (0, 1]");
    const double r2 = r * r;
    return 2.0 / 3.0 * (std::pow(1.0 + r2 / 3.0, 1.5) - 1.0 + r2) / r2;
}

double khavinson_phi(int n, double r)
{
    if (n == 3 && r > 1e-3 && r <= 1.0) return khavinson_phi3_closed(r);
    return khavinson_phi_integral(n, r);
}

double khavinson_gradient_bound(int n, double r)
{
    require(r >= 0.0 && r < 1.0, "khavinson_gradient_bound: r must lie in [0, 1)");
    return (n - 1.0) * geometry::omega_star(n) * khavinson_phi(n, r) / (1.0 - r * r);
}

double khavinson_hyperbolic_bound(int n, double r)
{
    require(n >= 3, "khavinson_hyperbolic_bound: stated for n >= 3");
    require(r >= 0.0 && r < 1.0, "khavinson_hyperbolic_bound: r must lie in [0, 1)");
    return 4.0 * geometry::sigma_star(n) / (1.0 - r * r);
}

geometry::Interval thyp3_envelope(double x_norm, double u)
{
    require(x_norm >= 0.0 && x_norm < 1.0, "thyp3_envelope: |x| must lie in [0, 1)");
    require(u >= -1.0 && u <= 1.0, "thyp3_envelope: u must lie in [-1, 1]");
    const double scale = 0.5 * (1.0 - u * u) / (1.0 - x_norm * x_norm);
    return {(-3.0 - x_norm * u) * scale, (3.0 - x_norm * u) * scale};
}

double thyp3_gradient_bound(double x_norm, double u)
{
    require(x_norm >= 0.0 && x_norm < 1.0, "thyp3_gradient_bound: |x| must lie in [0, 1)");
    return 2.0 * (1.0 - u * u) / (1.0 - x_norm * x_norm);
}

} // namespace sharpgrad::constants
