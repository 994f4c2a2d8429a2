#include "sharpgrad/poisson.hpp"

#include "sharpgrad/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace sharpgrad::poisson {

using sharpgrad::detail::require;
using numerics::Moments;
constexpr double pi = std::numbers::pi;

void PoissonParams::validate() const
{
    require(std::isfinite(alpha), "PoissonParams: alpha must be finite");
    require(beta > 0.0 && std::isfinite(beta), "PoissonParams: beta must be positive");
}

namespace {

void require_interior(std::span<const double> x, const char* what)
{
    require(norm(x) < 1.0, std::string(what) + ": point must satisfy |x| < 1");
}

} // namespace

double kernel(int n, const PoissonParams& params, std::span<const double> x, std::span<const double> y)
{
    require(x.size() == static_cast<std::size_t>(n) && y.size() == x.size(), "kernel: dimension mismatch");
    require_interior(x, "kernel");
    const double q = 1.0 - dot(x, x);
    double d2 = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) d2 += (x[i] - y[i]) * (x[i] - y[i]);
    return std::pow(q, params.alpha) * std::pow(d2, -params.beta);
}

Point kernel_gradient(int n, const PoissonParams& params, std::span<const double> x, std::span<const double> y)
{
    require(x.size() == static_cast<std::size_t>(n) && y.size() == x.size(), "kernel_gradient: dimension mismatch");
    require_interior(x, "kernel_gradient");
    const double q = 1.0 - dot(x, x);
    double d2 = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) d2 += (x[i] - y[i]) * (x[i] - y[i]);
    const double scale = std::pow(q, params.alpha - 1.0) * std::pow(d2, -params.beta - 1.0);
    Point g(x.size());
    for (std::size_t i = 0; i < x.size(); ++i)
        g[i] = scale * (-2.0 * params.alpha * x[i] * d2 - 2.0 * params.beta * q * (x[i] - y[i]));
    return g;
}

// ---------------------------------------------------------------------------
// Boundary data

BoundaryFunction::BoundaryFunction(int n, Kind kind, double bound) : n_(n), kind_(std::move(kind)), bound_(bound)
{
    require(n >= 2, "BoundaryFunction: dimension must be >= 2");
    require(bound >= 0.0, "BoundaryFunction: bound must be non-negative");
    if (auto* c = std::get_if<CapSign>(&kind_)) {
        c->cap.validate();
        require(c->cap.n == n, "BoundaryFunction: cap dimension mismatch");
        cos_gamma_ = std::cos(c->cap.gamma);
    } else if (auto* z = std::get_if<Zonal>(&kind_)) {
        require(z->axis.size() == static_cast<std::size_t>(n), "BoundaryFunction: axis dimension mismatch");
        require(std::abs(norm(z->axis) - 1.0) <= 1e-12, "BoundaryFunction: axis must be a unit vector");
        require(static_cast<bool>(z->profile), "BoundaryFunction: empty profile");
    } else {
        require(static_cast<bool>(std::get<General>(kind_).f), "BoundaryFunction: empty function");
    }
}

BoundaryFunction BoundaryFunction::cap_sign(const cap::CapSpec& cap) { return {cap.n, CapSign{cap}, 1.0}; }

BoundaryFunction BoundaryFunction::zonal(Point axis, std::function<double(double)> profile,
                                         std::vector<double> angle_breaks, double bound)
{
    const int n = static_cast<int>(axis.size());
    return {n, Zonal{std::move(axis), std::move(profile), std::move(angle_breaks)}, bound};
}

BoundaryFunction BoundaryFunction::constant(int n, double c)
{
    return zonal(north_pole(n), [c](double) { return c; }, {}, std::abs(c));
}

BoundaryFunction BoundaryFunction::general(int n, std::function<double(std::span<const double>)> f, double bound)
{
    return {n, General{std::move(f)}, bound};
}

double BoundaryFunction::operator()(std::span<const double> y) const
{
    if (const auto* c = std::get_if<CapSign>(&kind_)) return dot(c->cap.axis, y) > cos_gamma_ ? 1.0 : -1.0;
    if (const auto* z = std::get_if<Zonal>(&kind_)) return z->profile(std::clamp(dot(z->axis, y), -1.0, 1.0));
    return std::get<General>(kind_).f(y);
}

const Point& BoundaryFunction::axis() const
{
    if (const auto* c = std::get_if<CapSign>(&kind_)) return c->cap.axis;
    if (const auto* z = std::get_if<Zonal>(&kind_)) return z->axis;
    throw DomainError("BoundaryFunction: general boundary data has no axis");
}

double BoundaryFunction::at_angle(double theta) const
{
    if (const auto* c = std::get_if<CapSign>(&kind_)) return theta < c->cap.gamma ? 1.0 : -1.0;
    if (const auto* z = std::get_if<Zonal>(&kind_)) return z->profile(std::cos(theta));
    throw DomainError("BoundaryFunction: general boundary data is not zonal");
}

std::vector<double> BoundaryFunction::angle_breaks() const
{
    if (const auto* c = std::get_if<CapSign>(&kind_)) return {c->cap.gamma};
    if (const auto* z = std::get_if<Zonal>(&kind_)) return z->angle_breaks;
    return {};
}

// ---------------------------------------------------------------------------
// Transforms

TransformField::TransformField(int n, PoissonParams params, BoundaryFunction boundary, QuadratureConfig quadrature,
                               MonteCarloConfig mc)
    : n_(n), params_(params), boundary_(std::move(boundary)), quadrature_(quadrature), mc_(mc)
{
    require(n >= 2, "TransformField: dimension must be >= 2");
    require(boundary_.n() == n, "TransformField: boundary dimension mismatch");
    params_.validate();
    quadrature_.validate();
    require(mc_.samples >= 2, "TransformField: need at least 2 Monte Carlo samples");
}

TransformField TransformField::with_quadrature(const QuadratureConfig& q) const
{
    return {n_, params_, boundary_, q, mc_};
}

double TransformField::value(std::span<const double> x) const { return evaluate(x).value; }

Point TransformField::gradient(std::span<const double> x) const { return evaluate(x).gradient; }

Evaluation TransformField::evaluate(std::span<const double> x) const
{
    require(x.size() == static_cast<std::size_t>(n_), "transform: point has wrong dimension");
    require_interior(x, "transform");
    if (boundary_.is_zonal()) return reduce_zonal(x);
    const auto mc = monte_carlo(x);
    return {mc.value, mc.gradient};
}

numerics::ScalarField TransformField::as_scalar_field() const
{
    return [self = *this](std::span<const double> p) { return self.value(p); };
}

// The moments integrated over the sphere are
//   M0 = <K f>,  M1 = <K f / d^2>,  M2 = <K f cos(theta) / d^2>,  M3 = <K f sin(theta) cos(phi) / d^2>
// with K = (1-r^2)^alpha d^{-2 beta}, d = |x - y|, theta the angle of y from
// the axis e and phi the angle, inside e^perp, between the components of y and
// x. Then h(x) = M0 and
//   grad h(x) = x (-2 alpha M0 / (1-r^2) - 2 beta M1) + 2 beta (M2 e + M3 u),
// u being the unit direction of the part of x orthogonal to e.
Evaluation TransformField::reduce_zonal(std::span<const double> x) const
{
    using M = Moments<4>;
    const int n = n_;
    const Point& e = boundary_.axis();
    const double r = norm(x);
    const double q = 1.0 - r * r;
    const double qa = std::pow(q, params_.alpha);
    const double beta = params_.beta;
    const double along = dot(x, e);
    Point u(x.begin(), x.end());
    for (std::size_t i = 0; i < u.size(); ++i) u[i] -= along * e[i];
    const double perp = norm(u);
    const bool axial = perp == 0.0;
    if (!axial) {
        for (auto& v : u) v /= perp;
    } else if (n == 2) {
        u = {-e[1], e[0]};
    }
    const double psi = (r == 0.0) ? 0.0 : std::atan2(perp, along);
    const double sin_psi = std::sin(psi);
    const double one_minus_r_sq = (1.0 - r) * (1.0 - r);

    auto moments = [&](double f, double d2, double cos_theta, double sin_theta_cos_phi) {
        const double k = qa * std::pow(d2, -beta);
        const double l = k / d2;
        return M{{k * f, l * f, l * f * cos_theta, l * f * sin_theta_cos_phi}};
    };

    std::vector<double> breaks = boundary_.angle_breaks();
    M total{};
    if (n == 2) {
        // y = cos(s) e + sin(s) u, s in [-pi, pi]; theta = |s|.
        std::vector<double> cuts{0.0, psi};
        for (double b : breaks) {
            cuts.push_back(b);
            cuts.push_back(-b);
        }
        auto integrand = [&](double s) {
            const double half = std::sin(0.5 * (s - psi));
            const double d2 = one_minus_r_sq + 4.0 * r * half * half;
            return moments(boundary_.at_angle(std::abs(s)), d2, std::cos(s), std::sin(s));
        };
        const double weight = numerics::integrate_1d([](double) { return 1.0; }, -pi, pi, quadrature_);
        total = (1.0 / weight) * numerics::integrate_1d<M>(integrand, -pi, pi, quadrature_, cuts);
    } else if (axial) {
        breaks.push_back(psi);
        breaks.push_back(0.5 * pi);
        const int pw = n - 2;
        const double mid[] = {0.5 * pi};
        auto integrand = [&](double theta) {
            const double half = std::sin(0.5 * (theta - psi));
            const double d2 = one_minus_r_sq + 4.0 * r * half * half;
            const double w = std::pow(std::sin(theta), pw);
            return w * moments(boundary_.at_angle(theta), d2, std::cos(theta), 0.0);
        };
        const double weight = numerics::integrate_1d(
            [pw](double t) { return std::pow(std::sin(t), pw); }, 0.0, pi, quadrature_, mid);
        total = (1.0 / weight) * numerics::integrate_1d<M>(integrand, 0.0, pi, quadrature_, breaks);
    } else {
        breaks.push_back(psi);
        const int pw_theta = n - 2;
        const int pw_phi = n - 3;
        const double mid[] = {0.5 * pi};
        auto outer = [&](double theta) {
            const double half = std::sin(0.5 * (theta - psi));
            const double a = half * half;
            const double st = std::sin(theta);
            const double b = st * sin_psi;
            const double f = boundary_.at_angle(theta);
            const double ct = std::cos(theta);
            auto inner = [&](double phi) {
                const double hp = std::sin(0.5 * phi);
                const double d2 = one_minus_r_sq + 4.0 * r * (a + b * hp * hp);
                const double w = pw_phi == 0 ? 1.0 : std::pow(std::sin(phi), pw_phi);
                return w * moments(f, d2, ct, st * std::cos(phi));
            };
            const double wt = std::pow(st, pw_theta);
            return wt * numerics::integrate_1d<M>(inner, 0.0, pi, quadrature_);
        };
        const double w_theta =
            numerics::integrate_1d([&](double t) { return std::pow(std::sin(t), pw_theta); }, 0.0, pi, quadrature_, mid);
        const double w_phi = numerics::integrate_1d(
            [&](double t) { return pw_phi == 0 ? 1.0 : std::pow(std::sin(t), pw_phi); }, 0.0, pi, quadrature_, mid);
        total = (1.0 / (w_theta * w_phi)) * numerics::integrate_1d<M>(outer, 0.0, pi, quadrature_, breaks);
    }

    Evaluation ev;
    ev.value = total[0];
    ev.gradient.assign(x.size(), 0.0);
    const double radial = -2.0 * params_.alpha * total[0] / q - 2.0 * beta * total[1];
    for (std::size_t i = 0; i < x.size(); ++i)
        ev.gradient[i] = x[i] * radial + 2.0 * beta * (total[2] * e[i] + total[3] * u[i]);
    return ev;
}

MonteCarloEstimate TransformField::monte_carlo(std::span<const double> x) const
{
    require(x.size() == static_cast<std::size_t>(n_), "monte_carlo: point has wrong dimension");
    require_interior(x, "monte_carlo");
    const std::size_t dim = x.size();
    const double q = 1.0 - dot(x, x);
    const double qa = std::pow(q, params_.alpha);
    const double a = params_.alpha, b = params_.beta;

    // Plain sums in long double: index 0 is the value, 1..n the gradient components.
    std::vector<long double> sum(dim + 1, 0.0L), sum_sq(dim + 1, 0.0L);
    std::vector<double> sample(dim + 1);
    Point y(dim);
    for (std::size_t i = 0; i < mc_.samples; ++i) {
        numerics::sphere_point_into(mc_.seed, i, y);
        const double f = boundary_(y);
        double d2 = 0.0;
        for (std::size_t k = 0; k < dim; ++k) d2 += (x[k] - y[k]) * (x[k] - y[k]);
        const double kval = qa * std::pow(d2, -b);
        sample[0] = kval * f;
        for (std::size_t k = 0; k < dim; ++k)
            sample[k + 1] = f * kval * (-2.0 * a * x[k] / q - 2.0 * b * (x[k] - y[k]) / d2);
        for (std::size_t k = 0; k <= dim; ++k) {
            sum[k] += sample[k];
            sum_sq[k] += static_cast<long double>(sample[k]) * sample[k];
        }
    }
    const long double nsamp = static_cast<long double>(mc_.samples);
    auto mean = [&](std::size_t k) { return static_cast<double>(sum[k] / nsamp); };
    auto se = [&](std::size_t k) {
        const long double m = sum[k] / nsamp;
        const long double var = (sum_sq[k] - nsamp * m * m) / (nsamp - 1.0L);
        return static_cast<double>(std::sqrt(std::max(var, 0.0L) / nsamp));
    };
    MonteCarloEstimate out;
    out.value = mean(0);
    out.value_se = se(0);
    for (std::size_t k = 0; k < dim; ++k) {
        out.gradient.push_back(mean(k + 1));
        out.gradient_se.push_back(se(k + 1));
    }
    return out;
}

double transform(const TransformField& field, std::span<const double> x) { return field.value(x); }

Point transform_gradient(const TransformField& field, std::span<const double> x) { return field.gradient(x); }

TransformField extremal_field(int n, const PoissonParams& params, double gamma, const QuadratureConfig& q)
{
    return {n, params, BoundaryFunction::cap_sign(cap::CapSpec::north(n, gamma)), q};
}

double radial_derivative(const TransformField& field, std::span<const double> x)
{
    const double r = norm(x);
    require(r > 0.0, "radial_derivative: undefined at the origin");
    return dot(field.gradient(x), x) / r;
}

double laplacian(const TransformField& field, std::span<const double> x, double step)
{
    return numerics::fd_laplacian(field.as_scalar_field(), x, step);
}

double laplacian_h(const TransformField& field, std::span<const double> x, double step)
{
    const auto d = numerics::fd_stencil(field.as_scalar_field(), x, step);
    const double q = 1.0 - dot(x, x);
    return q * q * d.laplacian + 2.0 * (field.n() - 2) * q * dot(x, d.gradient);
}

// ---------------------------------------------------------------------------
// Vector-valued transforms

double largest_singular_value(std::span<const Point> rows)
{
    if (rows.empty()) return 0.0;
    const std::size_t cols = rows.front().size();
    // Gram matrix G = J^T J, then cyclic Jacobi rotations to diagonal form.
    std::vector<double> g(cols * cols, 0.0);
    for (const auto& row : rows) {
        require(row.size() == cols, "largest_singular_value: ragged matrix");
        for (std::size_t i = 0; i < cols; ++i)
            for (std::size_t j = 0; j < cols; ++j) g[i * cols + j] += row[i] * row[j];
    }
    auto at = [&](std::size_t i, std::size_t j) -> double& { return g[i * cols + j]; };
    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = 0.0, diag = 0.0;
        for (std::size_t i = 0; i < cols; ++i) {
            diag += at(i, i) * at(i, i);
            for (std::size_t j = i + 1; j < cols; ++j) off += at(i, j) * at(i, j);
        }
        if (off <= 1e-30 * diag || off == 0.0) break;
        for (std::size_t p = 0; p < cols; ++p) {
            for (std::size_t qi = p + 1; qi < cols; ++qi) {
                const double apq = at(p, qi);
                if (apq == 0.0) continue;
                const double tau = (at(qi, qi) - at(p, p)) / (2.0 * apq);
                const double t = std::copysign(1.0, tau) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;
                for (std::size_t k = 0; k < cols; ++k) {
                    const double gkp = at(k, p), gkq = at(k, qi);
                    at(k, p) = c * gkp - s * gkq;
                    at(k, qi) = s * gkp + c * gkq;
                }
                for (std::size_t k = 0; k < cols; ++k) {
                    const double gpk = at(p, k), gqk = at(qi, k);
                    at(p, k) = c * gpk - s * gqk;
                    at(qi, k) = s * gpk + c * gqk;
                }
            }
        }
    }
    double top = 0.0;
    for (std::size_t i = 0; i < cols; ++i) top = std::max(top, at(i, i));
    return std::sqrt(top);
}

VectorEvaluation vector_transform(std::span<const TransformField> fields, std::span<const double> x)
{
    require(!fields.empty(), "vector_transform: need at least one component");
    const int n = fields.front().n();
    VectorEvaluation out;
    for (const auto& f : fields) {
        require(f.n() == n, "vector_transform: components disagree on dimension");
        auto ev = f.evaluate(x);
        out.value.push_back(ev.value);
        out.jacobian.push_back(std::move(ev.gradient));
    }
    out.operator_norm = largest_singular_value(out.jacobian);
    const double len = norm(out.value);
    if (len <= kVectorZeroTolerance) {
        out.norm_gradient = out.operator_norm;
    } else {
        Point g(x.size(), 0.0);
        for (std::size_t i = 0; i < out.jacobian.size(); ++i)
            for (std::size_t k = 0; k < g.size(); ++k) g[k] += out.jacobian[i][k] * out.value[i] / len;
        out.norm_gradient = norm(g);
    }
    return out;
}

} // namespace sharpgrad::poisson
