#pragma once

// Shared numerical kernels: Gauss-Legendre and adaptive 1-D quadrature,
// bracketed root finding, counter-based sampling on S^{n-1}, and central
// finite-difference operators.

#include "sharpgrad/errors.hpp"
#include "sharpgrad/vec.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace sharpgrad::numerics {

struct QuadratureConfig {
    int nodes_1d = 64;
    double abs_tol = 1e-12;
    double rel_tol = 1e-10;
    int max_depth = 30;

    void validate() const;
    /// Same rule, tolerances divided by `factor`.
    QuadratureConfig tightened(double factor) const;
};

struct GaussRule {
    std::vector<double> nodes;   ///< on [-1, 1], ascending
    std::vector<double> weights;
};

/// k-point Gauss-Legendre rule. Rules are computed once per k and shared.
const GaussRule& gauss_legendre(int k);

/// A fixed-size bundle of integrals evaluated together over one set of nodes.
template <std::size_t K>
struct Moments {
    std::array<double, K> v{};

    Moments& operator+=(const Moments& o)
    {
        for (std::size_t i = 0; i < K; ++i) v[i] += o.v[i];
        return *this;
    }
    friend Moments operator+(Moments a, const Moments& b) { return a += b; }
    friend Moments operator-(Moments a, const Moments& b)
    {
        for (std::size_t i = 0; i < K; ++i) a.v[i] -= b.v[i];
        return a;
    }
    friend Moments operator*(double s, Moments a)
    {
        for (auto& x : a.v) x *= s;
        return a;
    }
    double& operator[](std::size_t i) { return v[i]; }
    double operator[](std::size_t i) const { return v[i]; }
};

inline double magnitude(double x) { return std::abs(x); }

template <std::size_t K>
double magnitude(const Moments<K>& m)
{
    double r = 0.0;
    for (double x : m.v) r = std::max(r, std::abs(x));
    return r;
}

namespace detail {

template <class T>
struct PanelEstimate {
    T value;
    double l1; ///< sum of |w f|, the scale for roundoff
};

template <class T, class F>
PanelEstimate<T> gauss_panel(const F& f, double a, double b, const GaussRule& rule)
{
    const double half = 0.5 * (b - a);
    const double mid = 0.5 * (a + b);
    T sum = rule.weights[0] * f(mid + half * rule.nodes[0]);
    double l1 = magnitude(sum);
    for (std::size_t i = 1; i < rule.nodes.size(); ++i) {
        const T term = rule.weights[i] * f(mid + half * rule.nodes[i]);
        l1 += magnitude(term);
        sum += term;
    }
    return {half * sum, std::abs(half) * l1};
}

/// A panel with its one-panel estimate and its two half-panel estimates.
template <class T>
struct Panel {
    double a;
    double b;
    int depth;
    PanelEstimate<T> left;
    PanelEstimate<T> right;
    T value;
    double err;
};

template <class T, class F>
Panel<T> make_panel(const F& f, double a, double b, int depth, const T& whole, const GaussRule& rule)
{
    const double m = 0.5 * (a + b);
    Panel<T> p{a, b, depth, gauss_panel<T>(f, a, m, rule), gauss_panel<T>(f, m, b, rule), T{}, 0.0};
    p.value = p.left.value + p.right.value;
    p.err = magnitude(p.value - whole);
    return p;
}

} // namespace detail

/// Adaptive Gauss-Legendre integration of f over [a, b].
///
/// The interval is first split at every breakpoint strictly inside (a, b);
/// callers declare jumps and kinks of f there so that no panel straddles one.
/// The error of a panel is the gap between its one-panel and two-half-panel
/// estimates; the panel with the largest error is bisected until the summed
/// error is at most max(abs_tol, rel_tol * |I|). T is double or Moments<K>.
template <class T = double, class F>
T integrate_1d(const F& f, double a, double b, const QuadratureConfig& cfg = {},
               std::span<const double> breakpoints = {})
{
    sharpgrad::detail::require(a <= b, "integrate_1d: requires a <= b");
    const GaussRule& rule = gauss_legendre(cfg.nodes_1d);
    std::vector<double> cuts{a};
    for (double p : breakpoints)
        if (p > a && p < b) cuts.push_back(p);
    cuts.push_back(b);
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

    if (b == a) return T{};
    std::vector<detail::Panel<T>> panels;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        const auto whole = detail::gauss_panel<T>(f, cuts[i], cuts[i + 1], rule);
        panels.push_back(detail::make_panel<T>(f, cuts[i], cuts[i + 1], 0, whole.value, rule));
    }
    // Global adaptivity: keep bisecting the panel with the largest error estimate.
    for (;;) {
        T total{};
        double err = 0.0, l1 = 0.0;
        std::size_t worst = 0;
        for (std::size_t i = 0; i < panels.size(); ++i) {
            total += panels[i].value;
            err += panels[i].err;
            l1 += panels[i].left.l1 + panels[i].right.l1;
            if (panels[i].err > panels[worst].err) worst = i;
        }
        const double roundoff = 64.0 * std::numeric_limits<double>::epsilon() * l1;
        if (err <= std::max({cfg.abs_tol, cfg.rel_tol * magnitude(total), roundoff})) return total;
        const auto p = panels[worst];
        if (p.depth >= cfg.max_depth)
            throw ConvergenceError("integrate_1d: max depth exceeded on [" + std::to_string(p.a) + ", " +
                                   std::to_string(p.b) + "], error estimate " + std::to_string(err));
        const double m = 0.5 * (p.a + p.b);
        panels[worst] = detail::make_panel<T>(f, p.a, m, p.depth + 1, p.left.value, rule);
        panels.insert(panels.begin() + static_cast<std::ptrdiff_t>(worst) + 1,
                      detail::make_panel<T>(f, m, p.b, p.depth + 1, p.right.value, rule));
    }
}

/// Root of f in [lo, hi] given f(lo) * f(hi) <= 0. Hybrid of Illinois false
/// position and bisection: a bisection step is forced whenever the bracket
/// failed to halve, so convergence is at least linear. Stops when the bracket
/// is no wider than tol or f vanishes.
double find_root_bracketed(const std::function<double(double)>& f, double lo, double hi,
                           double tol = 1e-14);

struct RandomSeed {
    std::uint64_t seed = 0x5EED;
};

/// Stateless counter-based generator: draw(i) depends only on (seed, i).
class CounterRng {
public:
    explicit CounterRng(RandomSeed seed);

    std::uint64_t bits(std::uint64_t counter) const;
    /// Uniform in the open interval (0, 1).
    double uniform(std::uint64_t counter) const;
    /// Standard normal. Counters 2k and 2k + 1 are the cosine and sine halves
    /// of one Box-Muller pair built from the uniforms at 2k and 2k + 1.
    double normal(std::uint64_t counter) const;
    /// Both normals of pair k, i.e. normal(2k) and normal(2k + 1).
    std::pair<double, double> normal_pair(std::uint64_t pair) const;

private:
    std::uint64_t key_;
};

/// The index-th uniform point of S^{n-1} for the given seed (normalized Gaussian vector).
Point sphere_point(int n, RandomSeed seed, std::uint64_t index);
/// Allocation-free form of sphere_point; out.size() is the dimension.
void sphere_point_into(RandomSeed seed, std::uint64_t index, std::span<double> out);

/// count i.i.d. uniform points on S^{n-1}. Same seed gives the same list.
std::vector<Point> sample_sphere(int n, std::size_t count, RandomSeed seed);

/// Uniform point of the ball of radius `radius` in R^n (a separate counter stream).
Point ball_point(int n, double radius, RandomSeed seed, std::uint64_t index);

using ScalarField = std::function<double(std::span<const double>)>;

constexpr double kDefaultFdStep = 1e-5;

/// Step actually used at x: min(step, (1 - |x|) / 10). Rejects |x| >= 1.
double fd_effective_step(std::span<const double> x, double step);

Point fd_gradient(const ScalarField& h, std::span<const double> x, double step = kDefaultFdStep);

/// (2n+1)-point second-difference Laplacian.
double fd_laplacian(const ScalarField& h, std::span<const double> x, double step = kDefaultFdStep);

struct FdDerivatives {
    double value = 0.0;
    Point gradient;
    double laplacian = 0.0;
};

/// Value, central gradient and Laplacian from one shared (2n+1)-point stencil.
FdDerivatives fd_stencil(const ScalarField& h, std::span<const double> x, double step = kDefaultFdStep);

} // namespace sharpgrad::numerics
