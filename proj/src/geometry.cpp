#include "sharpgrad/geometry.hpp"

#include "sharpgrad/errors.hpp"

#include <array>
#include <cmath>
#include <numbers>

namespace sharpgrad::geometry {

namespace {

constexpr int kTableSize = 512;
// Gamma(n/2 + 1) overflows double past this dimension.
constexpr int kDirectGammaLimit = 170;

double omega_direct(int n)
{
    if (n == 0) return 1.0;
    if (n <= kDirectGammaLimit)
        return std::pow(std::numbers::pi, 0.5 * n) / gamma_half_integer(n + 2);
    return std::exp(0.5 * n * std::log(std::numbers::pi) - std::lgamma(0.5 * n + 1.0));
}

// omega_{n-1}/omega_n without forming either volume. For odd n = 2k+1 the ratio
// is the rational (1/2) prod_{j<=k} (2j+1)/(2j); for even n = 2k it is
// (1/pi) prod_{j<=k} 2j/(2j-1). Small cases are therefore exact in double.
double omega_star_direct(int n)
{
    if (n % 2 == 1) {
        double r = 0.5;
        for (int j = 1; 2 * j + 1 <= n; ++j) r *= (2.0 * j + 1.0) / (2.0 * j);
        return r;
    }
    double r = 1.0;
    for (int j = 1; 2 * j <= n; ++j) r *= (2.0 * j) / (2.0 * j - 1.0);
    return r / std::numbers::pi;
}

BallConstants compute(int n)
{
    BallConstants c;
    c.n = n;
    c.omega_n = omega_direct(n);
    c.sigma_n = n * c.omega_n;
    c.omega_star = omega_star_direct(n);
    c.sigma_star = (n - 1.0) / n * c.omega_star;
    return c;
}

const std::array<BallConstants, kTableSize>& table()
{
    static const auto t = [] {
        std::array<BallConstants, kTableSize> out{};
        for (int n = 1; n < kTableSize; ++n) out[static_cast<std::size_t>(n)] = compute(n);
        return out;
    }();
    return t;
}

} // namespace

double gamma_half_integer(int k)
{
    detail::require(k >= 1, "gamma_half_integer: argument k/2 must be positive");
    double g = (k % 2 == 0) ? 1.0 : std::sqrt(std::numbers::pi);
    for (int j = (k % 2 == 0) ? 2 : 1; j + 2 <= k; j += 2) g *= 0.5 * j;
    return g;
}

BallConstants ball_constants(int n)
{
    detail::require(n >= 1, "ball_constants: dimension must be >= 1");
    if (n < kTableSize) return table()[static_cast<std::size_t>(n)];
    return compute(n);
}

double omega(int n) { return ball_constants(n).omega_n; }
double sigma(int n) { return ball_constants(n).sigma_n; }
double omega_star(int n) { return ball_constants(n).omega_star; }
double sigma_star(int n) { return ball_constants(n).sigma_star; }

Interval ratio_bounds(int n, RatioBound method)
{
    detail::require(n >= 2, "ratio_bounds: dimension must be >= 2");
    const double two_pi = 2.0 * std::numbers::pi;
    if (method == RatioBound::borgwardt)
        return {std::sqrt(n / two_pi), std::sqrt((n + 1.0) / two_pi)};
    return {std::sqrt((n + 0.5) / two_pi), std::sqrt((n + std::numbers::pi / 2.0 - 1.0) / two_pi)};
}

bool sigma_star_bounds_check(int n)
{
    detail::require(n >= 4, "sigma_star_bounds_check: stated for n >= 4");
    const double s = sigma_star(n);
    const double mid = std::sqrt((n - 1.0) / 8.0);
    return 0.5 < mid && mid < s && s < (n - 1.0) / 4.0;
}

} // namespace sharpgrad::geometry
