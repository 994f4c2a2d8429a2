#include "sharpgrad/mobius.hpp"

#include "sharpgrad/errors.hpp"

#include <algorithm>
#include <cmath>

namespace sharpgrad::mobius {

using sharpgrad::detail::require;

MobiusMap::MobiusMap(Point center) : center_(std::move(center))
{
    require(!center_.empty(), "MobiusMap: empty center");
    require(norm(center_) < 1.0, "MobiusMap: center must satisfy |x| < 1");
}

Point MobiusMap::apply(std::span<const double> y) const
{
    require(y.size() == center_.size(), "MobiusMap: dimension mismatch");
    require(norm(y) <= 1.0 + 1e-12, "MobiusMap: argument must satisfy |y| <= 1");
    const auto& x = center_;
    const double xx = dot(x, x);
    const double yy = dot(y, y);
    double dist2 = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) dist2 += (y[i] - x[i]) * (y[i] - x[i]);
    const double denom = 1.0 - 2.0 * dot(y, x) + yy * xx;
    Point out(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) out[i] = (dist2 * x[i] - (1.0 - xx) * (y[i] - x[i])) / denom;
    return out;
}

double hyperbolic_distance(std::span<const double> x1, std::span<const double> x2)
{
    require(x1.size() == x2.size(), "hyperbolic_distance: dimension mismatch");
    require(norm(x1) < 1.0 && norm(x2) < 1.0, "hyperbolic_distance: points must lie inside the ball");
    const MobiusMap phi(Point(x1.begin(), x1.end()));
    const double t = std::min(norm(phi.apply(x2)), 1.0);
    return 2.0 * std::atanh(t);
}

double hyperbolic_distance_arccosh(std::span<const double> x1, std::span<const double> x2)
{
    require(x1.size() == x2.size(), "hyperbolic_distance: dimension mismatch");
    double d2 = 0.0;
    for (std::size_t i = 0; i < x1.size(); ++i) d2 += (x1[i] - x2[i]) * (x1[i] - x2[i]);
    const double q = (1.0 - dot(x1, x1)) * (1.0 - dot(x2, x2));
    require(q > 0.0, "hyperbolic_distance: points must lie inside the ball");
    return std::acosh(1.0 + 2.0 * d2 / q);
}

double poincare_distance_1d(double a, double b)
{
    require(a > -1.0 && a < 1.0 && b > -1.0 && b < 1.0, "poincare_distance_1d: points must lie in (-1, 1)");
    return 2.0 * std::atanh(std::abs(a - b) / (1.0 - a * b));
}

double chain_rule_check(const poisson::TransformField& field, std::span<const double> x, double step)
{
    const MobiusMap phi(Point(x.begin(), x.end()));
    const auto composed = [&](std::span<const double> y) { return field.value(phi.apply(y)); };
    const Point origin(x.size(), 0.0);
    const Point lhs = numerics::fd_gradient(composed, origin, step);
    const Point g = field.gradient(x);
    const double q = 1.0 - dot(x, x);
    Point residual(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) residual[i] = lhs[i] + q * g[i];
    return norm(residual);
}

} // namespace sharpgrad::mobius
