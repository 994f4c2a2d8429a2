#include "sharpgrad/numerics.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <sstream>

namespace sharpgrad {

std::string to_string(std::span<const double> p)
{
    std::ostringstream os;
    os.precision(17);
    os << '[';
    for (std::size_t i = 0; i < p.size(); ++i) os << (i ? "," : "") << p[i];
    os << ']';
    return os.str();
}

} // namespace sharpgrad

namespace sharpgrad::numerics {

using sharpgrad::detail::require;

void QuadratureConfig::validate() const
{
    require(nodes_1d >= 2, "QuadratureConfig: nodes_1d must be >= 2");
    require(abs_tol > 0.0 && rel_tol > 0.0, "QuadratureConfig: tolerances must be positive");
    require(max_depth >= 0, "QuadratureConfig: max_depth must be >= 0");
}

QuadratureConfig QuadratureConfig::tightened(double factor) const
{
    QuadratureConfig c = *this;
    c.abs_tol /= factor;
    c.rel_tol /= factor;
    return c;
}

namespace {

GaussRule build_gauss_legendre(int k)
{
    GaussRule rule;
    rule.nodes.resize(static_cast<std::size_t>(k));
    rule.weights.resize(static_cast<std::size_t>(k));
    for (int i = 0; i < (k + 1) / 2; ++i) {
        double x = std::cos(std::numbers::pi * (i + 0.75) / (k + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = x;
            for (int j = 2; j <= k; ++j) {
                const double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
                p0 = p1;
                p1 = p2;
            }
            dp = k * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        // Recompute the derivative at the converged node for the weight.
        double p0 = 1.0, p1 = x;
        for (int j = 2; j <= k; ++j) {
            const double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
            p0 = p1;
            p1 = p2;
        }
        dp = k * (x * p1 - p0) / (x * x - 1.0);
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        const auto lo = static_cast<std::size_t>(i);
        const auto hi = static_cast<std::size_t>(k - 1 - i);
        rule.nodes[lo] = -x;
        rule.nodes[hi] = x;
        rule.weights[lo] = w;
        rule.weights[hi] = w;
    }
    if (k % 2 == 1) rule.nodes[static_cast<std::size_t>(k / 2)] = 0.0;
    return rule;
}

} // namespace

const GaussRule& gauss_legendre(int k)
{
    require(k >= 2, "gauss_legendre: need at least 2 nodes");
    static std::mutex mutex;
    static std::map<int, std::unique_ptr<GaussRule>> cache;
    std::lock_guard lock(mutex);
    auto& slot = cache[k];
    if (!slot) slot = std::make_unique<GaussRule>(build_gauss_legendre(k));
    return *slot;
}

double find_root_bracketed(const std::function<double(double)>& f, double lo, double hi, double tol)
{
    require(lo <= hi, "find_root_bracketed: lo must not exceed hi");
    double flo = f(lo), fhi = f(hi);
    if (flo == 0.0) return lo;
    if (fhi == 0.0) return hi;
    require(std::signbit(flo) != std::signbit(fhi), "find_root_bracketed: f(lo) and f(hi) do not bracket a root");

    int side = 0; // which end was retained last step, for the Illinois halving
    double width = hi - lo;
    for (int iter = 0; iter < 400 && hi - lo > tol; ++iter) {
        double x = (lo * fhi - hi * flo) / (fhi - flo);
        const double mid = 0.5 * (lo + hi);
        if (!(x > lo && x < hi) || hi - lo > 0.5 * width) x = mid;
        if (x == lo || x == hi) x = mid;
        if (x <= lo || x >= hi) break; // bracket at floating resolution
        width = hi - lo;

        const double fx = f(x);
        if (fx == 0.0) return x;
        if (std::signbit(fx) == std::signbit(flo)) {
            lo = x;
            flo = fx;
            if (side == -1) fhi *= 0.5;
            side = -1;
        } else {
            hi = x;
            fhi = fx;
            if (side == 1) flo *= 0.5;
            side = 1;
        }
    }
    return std::abs(flo) < std::abs(fhi) ? lo : hi;
}

namespace {

// splitmix64 finalizer
std::uint64_t mix(std::uint64_t z)
{
    z += 0x9E3779B97F4A7C15ull;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

} // namespace

CounterRng::CounterRng(RandomSeed seed) : key_(mix(seed.seed)) {}

std::uint64_t CounterRng::bits(std::uint64_t counter) const
{
    return mix(key_ ^ mix(counter ^ 0xD1B54A32D192ED03ull));
}

double CounterRng::uniform(std::uint64_t counter) const
{
    return (static_cast<double>(bits(counter) >> 11) + 0.5) * 0x1.0p-53;
}

std::pair<double, double> CounterRng::normal_pair(std::uint64_t pair) const
{
    const double radius = std::sqrt(-2.0 * std::log(uniform(2 * pair)));
    const double angle = 2.0 * std::numbers::pi * uniform(2 * pair + 1);
    return {radius * std::cos(angle), radius * std::sin(angle)};
}

double CounterRng::normal(std::uint64_t counter) const
{
    const auto [c, s] = normal_pair(counter / 2);
    return counter % 2 == 0 ? c : s;
}

void sphere_point_into(RandomSeed seed, std::uint64_t index, std::span<double> out)
{
    const std::size_t n = out.size();
    require(n >= 2, "sphere_point: dimension must be >= 2");
    const CounterRng rng(seed);
    // Sample i owns the normal pairs [i * ceil(n/2), (i+1) * ceil(n/2)).
    const std::uint64_t pairs = (n + 1) / 2;
    double r = 0.0;
    for (std::uint64_t attempt = 0; r == 0.0; ++attempt) {
        const std::uint64_t base = (index + (attempt << 40)) * pairs;
        for (std::size_t j = 0; j < n; j += 2) {
            const auto [c, s] = rng.normal_pair(base + j / 2);
            out[j] = c;
            if (j + 1 < n) out[j + 1] = s;
        }
        r = norm(out);
    }
    for (auto& v : out) v /= r;
    // A second normalization pins |y| = 1 to the last ulp.
    const double r2 = norm(out);
    for (auto& v : out) v /= r2;
}

Point sphere_point(int n, RandomSeed seed, std::uint64_t index)
{
    require(n >= 2, "sphere_point: dimension must be >= 2");
    Point y(static_cast<std::size_t>(n));
    sphere_point_into(seed, index, y);
    return y;
}

std::vector<Point> sample_sphere(int n, std::size_t count, RandomSeed seed)
{
    require(n >= 2 && count >= 1, "sample_sphere: need n >= 2 and count >= 1");
    std::vector<Point> out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i) out.push_back(sphere_point(n, seed, i));
    return out;
}

Point ball_point(int n, double radius, RandomSeed seed, std::uint64_t index)
{
    const RandomSeed dir_seed{seed.seed ^ 0xA5A5A5A5A5A5A5A5ull};
    Point p = sphere_point(n, dir_seed, index);
    const CounterRng rng(RandomSeed{seed.seed ^ 0x3C3C3C3C3C3C3C3Cull});
    const double s = radius * std::pow(rng.uniform(index), 1.0 / n);
    for (auto& v : p) v *= s;
    return p;
}

double fd_effective_step(std::span<const double> x, double step)
{
    require(step > 0.0, "finite differences: step must be positive");
    const double gap = 1.0 - norm(x);
    require(gap > 1e-9, "finite differences: point " + to_string(x) + " too close to the boundary");
    return std::min(step, gap / 10.0);
}

Point fd_gradient(const ScalarField& h, std::span<const double> x, double step)
{
    const double s = fd_effective_step(x, step);
    Point p(x.begin(), x.end());
    Point g(x.size());
    for (std::size_t k = 0; k < x.size(); ++k) {
        p[k] = x[k] + s;
        const double fp = h(p);
        p[k] = x[k] - s;
        const double fm = h(p);
        p[k] = x[k];
        g[k] = (fp - fm) / (2.0 * s);
    }
    return g;
}

FdDerivatives fd_stencil(const ScalarField& h, std::span<const double> x, double step)
{
    const double s = fd_effective_step(x, step);
    Point p(x.begin(), x.end());
    FdDerivatives d;
    d.value = h(p);
    d.gradient.resize(x.size());
    double second = 0.0;
    for (std::size_t k = 0; k < x.size(); ++k) {
        p[k] = x[k] + s;
        const double fp = h(p);
        p[k] = x[k] - s;
        const double fm = h(p);
        p[k] = x[k];
        d.gradient[k] = (fp - fm) / (2.0 * s);
        second += fp + fm - 2.0 * d.value;
    }
    d.laplacian = second / (s * s);
    return d;
}

double fd_laplacian(const ScalarField& h, std::span<const double> x, double step)
{
    return fd_stencil(h, x, step).laplacian;
}

} // namespace sharpgrad::numerics
