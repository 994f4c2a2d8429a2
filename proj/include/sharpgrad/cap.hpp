#pragma once

// Hyperspherical caps S(axis, gamma) = { y in S^{n-1} : <axis, y> > cos gamma }
// and the normalized-area map gamma -> A_n^cap(gamma) together with its inverse.

#include "sharpgrad/vec.hpp"

namespace sharpgrad::cap {

struct CapSpec {
    int n = 3;
    Point axis;        ///< unit vector; defaults to e_n
    double gamma = 0;  ///< contact angle in [0, pi]

    /// Cap about the north pole e_n.
    static CapSpec north(int n, double gamma);
    void validate() const;
    bool contains(std::span<const double> y) const;
};

/// A_0(gamma) = integral_0^gamma sin^{n-2}(theta) dtheta.
double a0(int n, double gamma);

/// Normalized area sigma_star(n) * A_0(gamma), in [0, 1].
double cap_area(int n, double gamma);

/// Unique gamma_a in [0, pi] with cap_area(n, gamma_a) = (1 + a) / 2.
double cap_angle(int n, double a);

/// gamma'(a) = 1 / (2 sigma_star(n) sin^{n-2} gamma_a), for a in (-1, 1).
double cap_angle_derivative(int n, double a);

} // namespace sharpgrad::cap
