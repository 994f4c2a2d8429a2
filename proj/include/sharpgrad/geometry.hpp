#pragma once

// Volumes of the unit ball B^n and areas of the unit sphere S^{n-1}, their
// consecutive-dimension ratios, and the classical bracketing intervals for
// omega_{n-1}/omega_n.

#include <utility>

namespace sharpgrad::geometry {

struct BallConstants {
    int n = 0;
    double omega_n = 0.0;    ///< n-volume of B^n
    double sigma_n = 0.0;    ///< (n-1)-volume of S^{n-1}, equal to n * omega_n
    double omega_star = 0.0; ///< omega_{n-1} / omega_n
    double sigma_star = 0.0; ///< sigma_{n-1} / sigma_n = ((n-1)/n) omega_star
};

/// Constants of dimension n >= 1. Throws DomainError for n <= 0.
BallConstants ball_constants(int n);

double omega(int n);
double sigma(int n);
double omega_star(int n);
double sigma_star(int n);

/// Gamma at a positive half-integer k/2 by exact recursion from Gamma(1) and Gamma(1/2).
double gamma_half_integer(int k);

enum class RatioBound { borgwardt, alzer };

struct Interval {
    double lo = 0.0;
    double hi = 0.0;

    bool contains_strictly(double v) const { return lo < v && v < hi; }
    bool contains(const Interval& other) const { return lo <= other.lo && other.hi <= hi; }
};

/// Bracket for omega_star(n), n >= 2: sqrt((n+c_lo)/(2 pi)) .. sqrt((n+c_hi)/(2 pi)).
Interval ratio_bounds(int n, RatioBound method);

/// True iff 1/2 < sqrt((n-1)/8) < sigma_star(n) < (n-1)/4. Requires n >= 4.
bool sigma_star_bounds_check(int n);

} // namespace sharpgrad::geometry
