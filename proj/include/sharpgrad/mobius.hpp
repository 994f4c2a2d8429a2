#pragma once

// Involutive Mobius automorphisms of the unit ball and hyperbolic distances.
// Both the ball and the interval (-1, 1) carry the curvature -1 metric with
// density 2 / (1 - |t|^2).

#include "sharpgrad/poisson.hpp"
#include "sharpgrad/vec.hpp"

namespace sharpgrad::mobius {

/// phi_x(y) = (|y-x|^2 x - (1-|x|^2)(y-x)) / (1 - 2<y,x> + |y|^2 |x|^2).
/// Exchanges 0 and x and is its own inverse.
class MobiusMap {
public:
    explicit MobiusMap(Point center);

    int n() const { return static_cast<int>(center_.size()); }
    const Point& center() const { return center_; }

    /// Image of y, |y| <= 1.
    Point apply(std::span<const double> y) const;
    Point operator()(std::span<const double> y) const { return apply(y); }

private:
    Point center_;
};

/// 2 artanh |phi_{x1}(x2)|.
double hyperbolic_distance(std::span<const double> x1, std::span<const double> x2);

/// Closed form arccosh(1 + 2|x1-x2|^2 / ((1-|x1|^2)(1-|x2|^2))); used as a cross-check.
double hyperbolic_distance_arccosh(std::span<const double> x1, std::span<const double> x2);

/// Distance between two points of (-1, 1) in the disc metric: 2 artanh(|a-b| / (1-ab)).
double poincare_distance_1d(double a, double b);

/// |FD gradient of h o phi_x at 0 + (1-|x|^2) grad h(x)|.
double chain_rule_check(const poisson::TransformField& field, std::span<const double> x,
                        double step = numerics::kDefaultFdStep);

} // namespace sharpgrad::mobius
