#include "sharpgrad/verify.hpp"

#include "sharpgrad/cap.hpp"
#include "sharpgrad/errors.hpp"
#include "sharpgrad/geometry.hpp"
#include "sharpgrad/mobius.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <numbers>

namespace sharpgrad::verify {

using sharpgrad::detail::require;
using constants::BoundKind;
constexpr double pi = std::numbers::pi;

namespace {

constexpr std::size_t kMaxViolations = 32;

std::int64_t now_ms()
{
    using namespace std::chrono;
    return duration_cast<milliseconds>(steady_clock::now().time_since_epoch()).count();
}

std::string fmt(const char* format, double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, format, v);
    return buf;
}

std::string label_at(const std::string& label, std::span<const double> x)
{
    return label + " x=" + to_string(x);
}

/// margin = rhs - lhs, scaled by max(1, |rhs|) so one tolerance serves bounds of any size.
double scaled_margin(double lhs, double rhs) { return (rhs - lhs) / std::max(1.0, std::abs(rhs)); }

std::vector<double> uniform_grid(double lo, double hi, std::size_t count)
{
    std::vector<double> g(count);
    for (std::size_t i = 0; i < count; ++i)
        g[i] = (i + 1 == count) ? hi : lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(count - 1);
    return g;
}

} // namespace

// ---------------------------------------------------------------------------
// ReportBuilder

ReportBuilder::ReportBuilder(std::string theorem_id, int n, double tolerance) : start_ms_(now_ms())
{
    report_.theorem_id = std::move(theorem_id);
    report_.n = n;
    report_.tolerance = tolerance;
}

void ReportBuilder::add(const std::string& input, double lhs, double rhs, double margin)
{
    Witness w{input, lhs, rhs, margin};
    if (std::isnan(margin)) margin = -std::numeric_limits<double>::infinity();
    if (!worst_ || margin < worst_->margin) {
        worst_ = w;
        worst_->margin = margin;
    }
    if (margin < -report_.tolerance && violations_.size() < kMaxViolations) violations_.push_back(w);
}

void ReportBuilder::check_equal(const std::string& name, double value, double target, double tolerance)
{
    const bool ok = std::abs(value - target) <= tolerance;
    report_.checks.push_back({name, value, target, tolerance, ok});
}

void ReportBuilder::check_positive(const std::string& name, double value, bool strict)
{
    const bool ok = strict ? value > 0.0 : value >= 0.0;
    report_.checks.push_back({name, value, 0.0, 0.0, ok});
}

void ReportBuilder::merge(const VerificationReport& other)
{
    for (const auto& w : other.witnesses) add(other.theorem_id + ": " + w.input, w.lhs, w.rhs, w.margin);
    for (auto c : other.checks) {
        c.name = other.theorem_id + ": " + c.name;
        report_.checks.push_back(std::move(c));
    }
}

VerificationReport ReportBuilder::finish()
{
    VerificationReport r = std::move(report_);
    r.grid = grid_;
    r.worst_margin = worst_ ? worst_->margin : 0.0;
    if (worst_) r.witnesses.push_back(*worst_);
    for (auto& v : violations_)
        if (!(worst_ && v.input == worst_->input)) r.witnesses.push_back(std::move(v));
    const bool checks_ok = std::all_of(r.checks.begin(), r.checks.end(), [](const Check& c) { return c.passed; });
    r.passed = r.worst_margin >= -r.tolerance && checks_ok;
    if (!r.passed) {
        for (const auto& c : r.checks)
            if (!c.passed) r.witnesses.push_back({c.name, c.value, c.target, -std::abs(c.value - c.target)});
    }
    r.runtime_ms = now_ms() - start_ms_;
    return r;
}

// ---------------------------------------------------------------------------
// Sample sets

std::vector<Point> sample_points(int n, std::size_t count, double radius, numerics::RandomSeed seed)
{
    std::vector<Point> pts{Point(static_cast<std::size_t>(n), 0.0)};
    for (std::size_t i = 0; i < count; ++i) pts.push_back(numerics::ball_point(n, radius, seed, i));
    return pts;
}

std::vector<std::pair<Point, Point>> sample_pairs(int n, std::size_t count, double radius,
                                                  numerics::RandomSeed seed)
{
    std::vector<std::pair<Point, Point>> out;
    if (count == 0) return out;
    const Point p = numerics::ball_point(n, radius, seed, 0);
    out.emplace_back(p, p);
    for (std::size_t i = 1; i < count; ++i)
        out.emplace_back(numerics::ball_point(n, radius, seed, 2 * i), numerics::ball_point(n, radius, seed, 2 * i + 1));
    return out;
}

NamedField random_zonal_field(int n, const poisson::PoissonParams& params, numerics::RandomSeed seed,
                              std::uint64_t index, const numerics::QuadratureConfig& q)
{
    const numerics::RandomSeed stream{seed.seed * 0x9E3779B97F4A7C15ull + index + 17};
    const numerics::CounterRng rng(stream);
    Point axis = numerics::sphere_point(n, stream, 0);
    char label[96];
    if (index % 2 == 0) {
        // Smooth: 0.95 tanh(cubic in t).
        const double c0 = rng.normal(100), c1 = 1.5 * rng.normal(101), c2 = 1.5 * rng.normal(102),
                     c3 = 1.5 * rng.normal(103);
        std::snprintf(label, sizeof label, "zonal-smooth#%llu", static_cast<unsigned long long>(index));
        auto profile = [=](double t) { return 0.95 * std::tanh(c0 + t * (c1 + t * (c2 + t * c3))); };
        return {label, {n, params, poisson::BoundaryFunction::zonal(std::move(axis), profile, {}, 0.95), q}};
    }
    // Piecewise constant with two jumps.
    double t1 = pi * rng.uniform(200), t2 = pi * rng.uniform(201);
    if (t1 > t2) std::swap(t1, t2);
    const double v0 = 1.9 * rng.uniform(202) - 0.95, v1 = 1.9 * rng.uniform(203) - 0.95,
                 v2 = 1.9 * rng.uniform(204) - 0.95;
    const double c1 = std::cos(t1), c2 = std::cos(t2);
    std::snprintf(label, sizeof label, "zonal-steps#%llu", static_cast<unsigned long long>(index));
    auto profile = [=](double t) { return t > c1 ? v0 : (t > c2 ? v1 : v2); };
    return {label, {n, params, poisson::BoundaryFunction::zonal(std::move(axis), profile, {t1, t2}, 0.95), q}};
}

std::vector<NamedField> default_fields(int n, BoundKind kind, numerics::RandomSeed seed,
                                       const numerics::QuadratureConfig& q)
{
    const auto params = constants::preset_params(n, kind);
    std::vector<NamedField> out;
    for (double g : {0.3, pi / 4, pi / 2, 2.0, 3.0})
        out.push_back({fmt("extremal gamma=%.17g", g), poisson::extremal_field(n, params, g, q)});
    for (std::uint64_t i = 0; i < 3; ++i) out.push_back(random_zonal_field(n, params, seed, i, q));
    return out;
}

std::vector<std::vector<NamedField>> default_vector_data(int n, int m, BoundKind kind, numerics::RandomSeed seed,
                                                         const numerics::QuadratureConfig& q)
{
    require(m >= 1 && m <= n && m <= 3, "default_vector_data: need 1 <= m <= min(n, 3)");
    const auto params = constants::preset_params(n, kind);
    const double linear_scale[] = {0.8, 0.5, 0.3}; // squares sum to 0.98
    const double share = 1.0 / std::sqrt(static_cast<double>(m));
    std::vector<std::vector<NamedField>> out(3);
    for (int i = 0; i < m; ++i) {
        const double c = linear_scale[i];
        out[0].push_back({fmt("linear c=%.2g", c),
                          {n, params, poisson::BoundaryFunction::zonal(basis(n, i), [c](double t) { return c * t; },
                                                                       {}, c),
                           q}});

        const numerics::RandomSeed s{seed.seed + 1000 + static_cast<std::uint64_t>(i)};
        const double gamma = 0.3 + 2.5 * numerics::CounterRng(s).uniform(7);
        cap::CapSpec spec{n, numerics::sphere_point(n, s, 1), gamma};
        out[1].push_back({fmt("cap/sqrt(m) gamma=%.6g", gamma),
                          {n, params,
                           poisson::BoundaryFunction::zonal(
                               spec.axis, [share, ct = std::cos(gamma)](double t) { return t > ct ? share : -share; },
                               {gamma}, share),
                           q}});

        auto smooth = random_zonal_field(n, params, numerics::RandomSeed{seed.seed + 2000}, 2 * static_cast<std::uint64_t>(i), q);
        const auto& z = std::get<poisson::Zonal>(smooth.field.boundary().kind());
        auto scaled = [share, f = z.profile](double t) { return share * f(t); };
        out[2].push_back({smooth.label + "/sqrt(m)",
                          {n, params, poisson::BoundaryFunction::zonal(z.axis, scaled, {}, share * 0.95), q}});
    }
    return out;
}

// ---------------------------------------------------------------------------
// Counterexample

CounterexampleCertificate counterexample(int n, std::optional<double> gamma, double margin,
                                         const numerics::QuadratureConfig& q)
{
    require(n >= 4, "counterexample: the conjecture concerns n >= 4");
    const double liu = constants::liu_constant(n);
    double g = 0.0;
    if (gamma) {
        require(*gamma > 0.0 && *gamma < pi, "counterexample: gamma must lie in (0, pi)");
        g = *gamma;
    } else {
        for (int k = 1;; ++k) {
            g = 0.5 * pi - 0.01 * k;
            if (g <= 0.0)
                throw ConvergenceError("counterexample: no violating cap angle found for n=" + std::to_string(n));
            if (0.5 * n * constants::c_n(n, g) > liu * (1.0 + margin)) break;
        }
    }
    const auto field = poisson::extremal_field(n, poisson::PoissonParams::harmonic(n), g, q);
    const auto ev = field.evaluate(Point(static_cast<std::size_t>(n), 0.0));

    CounterexampleCertificate c;
    c.n = n;
    c.gamma = g;
    c.a = ev.value;
    c.grad_norm = norm(ev.gradient);
    c.liu_rhs = liu * (1.0 - c.a * c.a);
    c.violation_ratio = c.grad_norm / c.liu_rhs;
    c.closed_form = constants::d_n(n, g, 0.5 * n);
    c.relative_agreement = std::abs(c.grad_norm - c.closed_form) / c.closed_form;
    return c;
}

VerificationReport counterexample_report(const CounterexampleCertificate& c)
{
    // Margins here measure the refutation: grad_norm - liu_rhs >= 0 means the conjectured bound fails.
    ReportBuilder b("counterexample", c.n, 0.0);
    b.set_grid("x=0, gamma=" + fmt("%.17g", c.gamma));
    b.add(fmt("gamma=%.17g x=0", c.gamma), c.grad_norm, c.liu_rhs, c.grad_norm - c.liu_rhs);
    b.check_positive("violation_ratio - 1", c.violation_ratio - 1.0);
    b.check_equal("quadrature |grad h0(0)| vs D_n(gamma, n/2) (relative)", c.relative_agreement, 0.0, 1e-6);
    b.check_equal("h0(0) vs 2A - 1", c.a, 2.0 * cap::cap_area(c.n, c.gamma) - 1.0, 1e-10);
    return b.finish();
}

// ---------------------------------------------------------------------------
// Cap-angle inequalities

VerificationReport verify_inq1(int n, std::size_t grid_size)
{
    require(n >= 2, "verify_inq1: dimension must be >= 2");
    require(grid_size >= 3, "verify_inq1: grid_size must be >= 3");
    ReportBuilder b("inq1", n, 1e-10);
    const auto grid = uniform_grid(-1.0, 1.0, grid_size);
    b.set_grid(std::to_string(grid_size) + " uniform points of [-1, 1]" +
               (n == 3 ? " (identity mode)" : n == 2 ? " (reversed mode)" : ""));
    const double k = (n - 1.0) / (4.0 * geometry::sigma_star(n));
    double max_n2_closed_form_gap = 0.0;
    for (double a : grid) {
        const double g = cap::cap_angle(n, a);
        const double s = std::pow(std::sin(g), n - 1);
        const double base = 1.0 - a * a;
        const std::string at = fmt("a=%.17g", a);
        if (n >= 4) {
            b.add(at + " sin^{n-1} >= 1-a^2", base, s, s - base);
            b.add(at + " sin^{n-1} <= (n-1)(1-a^2)/(4 sigma*)", s, k * base, k * base - s);
        } else if (n == 3) {
            b.add(at + " sin^2 = 1-a^2", s, base, -std::abs(s - base));
        } else {
            b.add(at + " sin = cos(pi a/2) <= 1-a^2", s, base, base - s);
            max_n2_closed_form_gap = std::max(max_n2_closed_form_gap, std::abs(s - std::cos(0.5 * pi * a)));
        }
    }
    auto lhs_minus_rhs = [&](double a, bool first) {
        const double s = std::pow(std::sin(cap::cap_angle(n, a)), n - 1);
        return first ? s - (1.0 - a * a) : k * (1.0 - a * a) - s;
    };
    if (n >= 4) {
        for (double a : {-1.0, 0.0, 1.0})
            b.check_equal(fmt("equality of sin^{n-1} >= 1-a^2 at a=%g", a), lhs_minus_rhs(a, true), 0.0, 1e-9);
        for (double a : {-1.0, 1.0})
            b.check_equal(fmt("equality of the upper bound at a=%g", a), lhs_minus_rhs(a, false), 0.0, 1e-9);
    }
    if (n == 2) b.check_equal("sin gamma_a vs cos(pi a/2), max gap", max_n2_closed_form_gap, 0.0, 1e-12);
    return b.finish();
}

VerificationReport verify_section3_auxiliaries(int n, std::size_t grid_size)
{
    require(n >= 4, "verify_section3_auxiliaries: stated for n >= 4");
    require(grid_size >= 3, "verify_section3_auxiliaries: grid_size must be >= 3");
    const double sigma = geometry::sigma_star(n);
    const double nm1 = n - 1.0;
    std::map<double, double> gamma_cache; // each grid value is shared by several auxiliaries
    auto gam = [&](double a) {
        const auto [it, fresh] = gamma_cache.try_emplace(a, 0.0);
        if (fresh) it->second = cap::cap_angle(n, a);
        return it->second;
    };
    auto h = [&](double a) { return std::pow(std::sin(gam(a)), n - 1) - 1.0 + a * a; };
    auto hp = [&](double a) { return nm1 * std::cos(gam(a)) / (2.0 * sigma) + 2.0 * a; };
    auto hpp = [&](double a) { return -nm1 / (4.0 * sigma * sigma) * std::pow(std::sin(gam(a)), 3 - n) + 2.0; };
    auto big_g = [&](double a) { return a + std::cos(gam(a)); };
    auto big_gp = [&](double a) { return 1.0 - std::pow(std::sin(gam(a)), 3 - n) / (2.0 * sigma); };
    auto small_g = [&](double a) { return 1.0 - a * a - 4.0 * sigma / nm1 * std::pow(std::sin(gam(a)), n - 1); };
    auto small_gp = [&](double a) { return -2.0 * a - 2.0 * std::cos(gam(a)); };

    ReportBuilder b("aux3", n, 1e-10);
    b.set_grid(std::to_string(grid_size) + " uniform points of [0, 1]; FD at a in {0.15, 0.35, 0.55, 0.75}");

    b.check_equal("h(0)", h(0.0), 0.0, 1e-12);
    b.check_equal("h(1)", h(1.0), 0.0, 1e-12);
    b.check_equal("h'(0)", hp(0.0), 0.0, 1e-12);
    b.check_equal("h'(1) formula vs 2 - (n-1)/(2 sigma*)", hp(1.0), 2.0 - nm1 / (2.0 * sigma), 1e-12);
    b.check_positive("-h'(1)", -(2.0 - nm1 / (2.0 * sigma)));
    b.check_equal("h''(0) formula vs 2 - (n-1)/(4 sigma*^2)", hpp(0.0), 2.0 - nm1 / (4.0 * sigma * sigma), 1e-12);
    b.check_positive("h''(0)", hpp(0.0));
    b.check_equal("G(0)", big_g(0.0), 0.0, 1e-12);
    b.check_equal("G(1)", big_g(1.0), 0.0, 1e-12);
    b.check_positive("G'(0)", big_gp(0.0));
    b.check_equal("g(1)", small_g(1.0), 0.0, 1e-12);

    const auto grid = uniform_grid(0.0, 1.0, grid_size);
    double min_interior_g = std::numeric_limits<double>::infinity();
    double prev_g = small_g(0.0);
    for (std::size_t i = 1; i < grid.size(); ++i) {
        const double a = grid[i];
        const std::string at = fmt("a=%.17g", a);
        const double gv = small_g(a);
        b.add(at + " h >= 0", 0.0, h(a), h(a));
        b.add(at + " g decreasing", gv, prev_g, prev_g - gv);
        b.add(at + " g >= 0", 0.0, gv, gv);
        prev_g = gv;
        if (i + 1 < grid.size()) {
            const double big = big_g(a);
            b.add(at + " G > 0", 0.0, big, big);
            b.add(at + " g' <= 0", small_gp(a), 0.0, -small_gp(a));
            min_interior_g = std::min(min_interior_g, big);
        }
    }
    b.check_positive("min G on interior grid", min_interior_g);

    // Central differences: error ratio under step halving (O(s^2) => ~4) and agreement at a small step.
    struct Pair {
        const char* name;
        std::function<double(double)> f, df;
        bool second;
    };
    const Pair pairs[] = {{"h'", h, hp, false}, {"h''", h, hpp, true}, {"G'", big_g, big_gp, false},
                          {"g'", small_g, small_gp, false}};
    auto fd = [](const Pair& p, double a, double s) {
        if (p.second) return (p.f(a + s) - 2.0 * p.f(a) + p.f(a - s)) / (s * s);
        return (p.f(a + s) - p.f(a - s)) / (2.0 * s);
    };
    for (const auto& p : pairs) {
        for (double a : {0.15, 0.35, 0.55, 0.75}) {
            const double exact = p.df(a);
            const double e1 = std::abs(fd(p, a, 0.02) - exact);
            const double e2 = std::abs(fd(p, a, 0.01) - exact);
            b.check_equal(fmt(std::string(p.name).append(" step-halving ratio at a=%.2f").c_str(), a), e1 / e2, 4.0, 0.5);
            b.check_equal(fmt(std::string(p.name).append(" vs FD (step 1e-4) at a=%.2f").c_str(), a), fd(p, a, 1e-4),
                          exact, 1e-6);
        }
    }
    return b.finish();
}

// ---------------------------------------------------------------------------
// Pointwise sweeps

namespace {

struct FieldPoint {
    std::size_t field;
    std::size_t point;
};

std::vector<FieldPoint> cross(std::size_t fields, std::size_t points)
{
    std::vector<FieldPoint> out;
    for (std::size_t f = 0; f < fields; ++f)
        for (std::size_t p = 0; p < points; ++p) out.push_back({f, p});
    return out;
}

std::string grid_text(std::size_t fields, std::size_t points, double radius)
{
    return std::to_string(fields) + " fields x " + std::to_string(points) + " points (origin + uniform in |x| <= " +
           fmt("%g", radius) + ")";
}

} // namespace

VerificationReport verify_pointwise(int n, BoundKind kind, std::span<const NamedField> fields,
                                    std::span<const Point> points, const SweepOptions& opt)
{
    require(n >= 3, "verify_pointwise: stated for n >= 3");
    ReportBuilder b(kind == BoundKind::harmonic ? "pointwise-harmonic" : "pointwise-hyperbolic", n, 1e-6);
    b.set_grid(grid_text(fields.size(), points.size(), opt.radius));
    const auto jobs = cross(fields.size(), points.size());
    const auto evals = parallel_map<poisson::Evaluation>(jobs.size(), opt.threads, [&](std::size_t i) {
        return fields[jobs[i].field].field.evaluate(points[jobs[i].point]);
    });
    for (std::size_t i = 0; i < jobs.size(); ++i) {
        const auto& x = points[jobs[i].point];
        const double lhs = norm(evals[i].gradient);
        const double a = std::clamp(evals[i].value, -1.0, 1.0);
        const double rhs = constants::pointwise_bound(n, a, norm(x), kind);
        b.add(label_at(fields[jobs[i].field].label, x), lhs, rhs, scaled_margin(lhs, rhs));
    }
    return b.finish();
}

VerificationReport verify_thyp3(std::span<const NamedField> fields, std::span<const Point> points,
                                const SweepOptions& opt)
{
    ReportBuilder b("thyp3", 3, 1e-6);
    b.set_grid(grid_text(fields.size(), points.size(), opt.radius));
    for (const auto& f : fields) {
        require(f.field.n() == 3, "verify_thyp3: fields must live on B^3");
        require(f.field.params().alpha == 1.0 && f.field.params().beta == 1.5, "verify_thyp3: harmonic preset required");
    }
    const auto jobs = cross(fields.size(), points.size());
    const auto evals = parallel_map<poisson::Evaluation>(jobs.size(), opt.threads, [&](std::size_t i) {
        return fields[jobs[i].field].field.evaluate(points[jobs[i].point]);
    });
    for (std::size_t i = 0; i < jobs.size(); ++i) {
        const auto& x = points[jobs[i].point];
        const double r = norm(x);
        const double u = std::clamp(evals[i].value, -1.0, 1.0);
        const std::string at = label_at(fields[jobs[i].field].label, x);
        const double grad = norm(evals[i].gradient);
        const double gb = constants::thyp3_gradient_bound(r, u);
        b.add(at + " |grad u| <= 2(1-u^2)/(1-|x|^2)", grad, gb, scaled_margin(grad, gb));
        if (r == 0.0) continue;
        const double dr = dot(evals[i].gradient, x) / r;
        const auto env = constants::thyp3_envelope(r, u);
        b.add(at + " D_r u <= upper", dr, env.hi, scaled_margin(dr, env.hi));
        b.add(at + " D_r u >= lower", -dr, -env.lo, scaled_margin(-dr, -env.lo));
    }
    return b.finish();
}

VerificationReport verify_vector(int n, BoundKind kind, std::span<const std::vector<NamedField>> data,
                                 std::span<const Point> points, const SweepOptions& opt)
{
    require(n >= 3, "verify_vector: stated for n >= 3");
    ReportBuilder b(kind == BoundKind::harmonic ? "vector-harmonic" : "vector-hyperbolic", n, 1e-6);
    b.set_grid(grid_text(data.size(), points.size(), opt.radius) + " (vector maps)");
    std::vector<std::vector<poisson::TransformField>> maps;
    for (const auto& components : data) {
        auto& m = maps.emplace_back();
        for (const auto& c : components) m.push_back(c.field);
    }
    const auto jobs = cross(data.size(), points.size());
    const auto evals = parallel_map<poisson::VectorEvaluation>(jobs.size(), opt.threads, [&](std::size_t i) {
        return poisson::vector_transform(maps[jobs[i].field], points[jobs[i].point]);
    });
    double worst_zero_gap = 0.0;
    std::size_t zero_points = 0;
    for (std::size_t i = 0; i < jobs.size(); ++i) {
        const auto& x = points[jobs[i].point];
        const auto& ev = evals[i];
        const double r = norm(x);
        std::string label = "(";
        for (const auto& c : data[jobs[i].field]) label += c.label + (&c == &data[jobs[i].field].back() ? ")" : ", ");
        const std::string at = label_at(label, x);
        const double len = std::min(norm(ev.value), 1.0);
        const double op_bound = kind == BoundKind::harmonic ? 0.5 * n / (1.0 - r) : (n - 1.0) / (1.0 - r * r);
        b.add(at + " |Dh| bound", ev.operator_norm, op_bound, scaled_margin(ev.operator_norm, op_bound));
        const double hh = constants::pointwise_bound(n, len, r, kind);
        b.add(at + " |grad|h|| bound", ev.norm_gradient, hh, scaled_margin(ev.norm_gradient, hh));
        b.add(at + " |grad|h|| <= |Dh|", ev.norm_gradient, ev.operator_norm,
              scaled_margin(ev.norm_gradient, ev.operator_norm));
        if (norm(ev.value) <= poisson::kVectorZeroTolerance) {
            ++zero_points;
            worst_zero_gap = std::max(worst_zero_gap, std::abs(ev.norm_gradient - ev.operator_norm));
        }
    }
    if (zero_points > 0)
        b.check_equal("|grad|h|| = |Dh| where h(x) = 0 (" + std::to_string(zero_points) + " points)", worst_zero_gap,
                      0.0, 1e-10);
    return b.finish();
}

VerificationReport verify_contraction(int n, BoundKind kind, std::span<const NamedField> fields,
                                      std::span<const std::pair<Point, Point>> pairs, const SweepOptions& opt)
{
    require(kind == BoundKind::hyperbolic_harmonic || n == 3,
            "verify_contraction: needs the hyperbolic preset, or the harmonic preset on B^3");
    const double constant = kind == BoundKind::hyperbolic_harmonic ? n - 1.0 : 2.0;
    ReportBuilder b(kind == BoundKind::harmonic ? "contraction-harmonic" : "contraction-hyperbolic", n, 1e-8);
    b.set_grid(std::to_string(fields.size()) + " fields x " + std::to_string(pairs.size()) + " pairs in |x| <= " +
               fmt("%g", opt.radius));
    const auto jobs = cross(fields.size(), pairs.size());
    const auto values = parallel_map<std::pair<double, double>>(jobs.size(), opt.threads, [&](std::size_t i) {
        const auto& f = fields[jobs[i].field].field;
        const auto& [x1, x2] = pairs[jobs[i].point];
        return std::pair{f.value(x1), f.value(x2)};
    });
    for (std::size_t i = 0; i < jobs.size(); ++i) {
        const auto& [x1, x2] = pairs[jobs[i].point];
        const double lhs = mobius::poincare_distance_1d(values[i].first, values[i].second);
        const double rhs = constant * mobius::hyperbolic_distance(x1, x2);
        b.add(fields[jobs[i].field].label + " x1=" + to_string(x1) + " x2=" + to_string(x2), lhs, rhs, rhs - lhs);
    }
    return b.finish();
}

VerificationReport explore_question(int n, std::size_t candidate_count, numerics::RandomSeed seed,
                                    const SweepOptions& opt)
{
    require(n >= 3, "explore_question: stated for n >= 3");
    require(candidate_count >= 1, "explore_question: need at least one candidate");
    const auto params = poisson::PoissonParams::harmonic(n);
    std::vector<NamedField> fields;
    for (std::size_t k = 0; k < candidate_count; ++k) {
        const double g = pi * (k + 0.5) / static_cast<double>(candidate_count);
        fields.push_back({fmt("extremal gamma=%.17g", g), poisson::extremal_field(n, params, g, opt.quadrature)});
    }
    for (std::size_t k = 0; k < candidate_count; ++k)
        fields.push_back(random_zonal_field(n, params, seed, 100 + k, opt.quadrature));
    const auto points = sample_points(n, opt.points, opt.radius, seed);

    ReportBuilder b("question", n, 1e-6);
    const auto jobs = cross(fields.size(), points.size());
    const auto evals = parallel_map<poisson::Evaluation>(jobs.size(), opt.threads, [&](std::size_t i) {
        return fields[jobs[i].field].field.evaluate(points[jobs[i].point]);
    });
    std::size_t rechecked = 0;
    for (std::size_t i = 0; i < jobs.size(); ++i) {
        const auto& x = points[jobs[i].point];
        auto ev = evals[i];
        auto margin_of = [&](const poisson::Evaluation& e) {
            const double rhs = constants::question_bound(n, std::clamp(e.value, -1.0, 1.0), norm(x));
            return std::pair{rhs, scaled_margin(norm(e.gradient), rhs)};
        };
        auto [rhs, margin] = margin_of(ev);
        if (margin < -1e-6) {
            // Re-verify an apparent violation with 10x tighter quadrature before reporting it.
            ++rechecked;
            const auto& f = fields[jobs[i].field].field;
            ev = f.with_quadrature(f.quadrature().tightened(10.0)).evaluate(x);
            std::tie(rhs, margin) = margin_of(ev);
        }
        b.add(label_at(fields[jobs[i].field].label, x), norm(ev.gradient), rhs, margin);
    }
    b.set_grid(grid_text(fields.size(), points.size(), opt.radius) + "; " + std::to_string(rechecked) +
               " apparent violations re-verified with 10x tighter quadrature");
    auto r = b.finish();
    r.informational = true;
    return r;
}

// ---------------------------------------------------------------------------
// Battery helpers

VerificationReport verify_constants(int n)
{
    ReportBuilder b("constants", n, 0.0);
    b.set_grid("omega_n for n=1..5; ratio brackets n=2..50; sigma_star lemma n=4..50; argmax n=1..30");
    const double exact[] = {2.0, pi, 4.0 * pi / 3.0, pi * pi / 2.0, 8.0 * pi * pi / 15.0};
    for (int k = 1; k <= 5; ++k) {
        const double w = geometry::omega(k);
        b.check_equal("omega_" + std::to_string(k) + " relative error", std::abs(w - exact[k - 1]) / exact[k - 1], 0.0,
                      1e-12);
    }
    b.check_equal("2 omega_star(3)", 2.0 * geometry::omega_star(3), 1.5, 0.0);
    b.check_equal("omega_star(5)", geometry::omega_star(5), 0.9375, 0.0);
    b.check_equal("8/(3 sqrt 3) to 4 digits", std::round(8.0 / (3.0 * std::sqrt(3.0)) * 1e4) / 1e4, 1.5396, 1e-12);
    for (int k = 2; k <= 50; ++k) {
        const double w = geometry::omega_star(k);
        const auto bor = geometry::ratio_bounds(k, geometry::RatioBound::borgwardt);
        const auto alz = geometry::ratio_bounds(k, geometry::RatioBound::alzer);
        const std::string at = "n=" + std::to_string(k);
        b.add(at + " borgwardt lower", bor.lo, w, w - bor.lo);
        b.add(at + " borgwardt upper", w, bor.hi, bor.hi - w);
        b.add(at + " alzer lower", alz.lo, w, w - alz.lo);
        b.add(at + " alzer upper", w, alz.hi, alz.hi - w);
        b.add(at + " alzer within borgwardt", bor.lo, alz.lo, std::min(alz.lo - bor.lo, bor.hi - alz.hi));
        if (!(bor.contains_strictly(w) && alz.contains_strictly(w)))
            b.check_positive(at + " omega_star strictly inside both brackets", -1.0);
        if (k >= 4) {
            const double s = geometry::sigma_star(k);
            const double mid = std::sqrt((k - 1.0) / 8.0);
            b.add(at + " sqrt((n-1)/8) < sigma_star", mid, s, s - mid);
            b.add(at + " sigma_star < (n-1)/4", s, (k - 1.0) / 4.0, (k - 1.0) / 4.0 - s);
            if (!geometry::sigma_star_bounds_check(k)) b.check_positive(at + " sigma_star lemma", -1.0);
        }
    }
    int best = 1;
    for (int k = 2; k <= 30; ++k)
        if (geometry::omega(k) > geometry::omega(best)) best = k;
    b.check_equal("argmax omega_n over n=1..30", best, 5, 0.0);
    return b.finish();
}

VerificationReport verify_sharpness(int n, const SweepOptions& opt, std::size_t mc_samples)
{
    ReportBuilder b("sharpness", n, 1e-6);
    const double gammas[] = {0.3, pi / 4, pi / 2, 2.0, 3.0};
    struct Job {
        double gamma;
        BoundKind kind;
    };
    std::vector<Job> jobs;
    for (double g : gammas)
        for (BoundKind k : {BoundKind::harmonic, BoundKind::hyperbolic_harmonic}) jobs.push_back({g, k});
    b.set_grid("x=0; gamma in {0.3, pi/4, pi/2, 2, 3}; beta in {n/2, n-1}; MC " + std::to_string(mc_samples) +
               " samples, seed " + std::to_string(opt.seed.seed));
    struct Result {
        poisson::Evaluation quad;
        poisson::MonteCarloEstimate mc;
    };
    const Point origin(static_cast<std::size_t>(n), 0.0);
    const auto results = parallel_map<Result>(jobs.size(), opt.threads, [&](std::size_t i) {
        const poisson::TransformField f(n, constants::preset_params(n, jobs[i].kind),
                                        poisson::BoundaryFunction::cap_sign(cap::CapSpec::north(n, jobs[i].gamma)),
                                        opt.quadrature, {mc_samples, opt.seed});
        return Result{f.evaluate(origin), mc_samples > 0 ? f.monte_carlo(origin) : poisson::MonteCarloEstimate{}};
    });
    for (std::size_t i = 0; i < jobs.size(); ++i) {
        const double beta = constants::preset_beta(n, jobs[i].kind);
        const double d = constants::d_n(n, jobs[i].gamma, beta);
        const auto& r = results[i];
        const double g = norm(r.quad.gradient);
        const std::string at = fmt("gamma=%.17g", jobs[i].gamma) + fmt(" beta=%g", beta);
        b.add(at + " |grad h0(0)| vs D_n (relative)", g, d, -std::abs(g - d) / d);
        b.check_equal(at + " h0(0) = 2A - 1", r.quad.value, 2.0 * cap::cap_area(n, jobs[i].gamma) - 1.0, 1e-10);
        if (mc_samples > 0) {
            const auto last = static_cast<std::size_t>(n - 1);
            b.check_equal(at + " MC grad_n within 4 SE of D_n", r.mc.gradient[last], d, 4.0 * r.mc.gradient_se[last]);
            for (std::size_t k = 0; k < last; ++k)
                b.check_equal(at + " MC grad_" + std::to_string(k + 1) + " within 4 SE of 0", r.mc.gradient[k], 0.0,
                              4.0 * r.mc.gradient_se[k]);
        }
    }
    return b.finish();
}

VerificationReport verify_phi(int n)
{
    require(n >= 3, "verify_phi: Phi_n is defined for n >= 3");
    ReportBuilder b("phi", n, 0.0);
    b.set_grid("101 uniform points of [0, 1]");
    b.check_equal("Phi_n(0) = 2/(n-1)", constants::khavinson_phi(n, 0.0), 2.0 / (n - 1.0), 1e-10);
    b.check_equal("Khavinson bound at r=0 = 2 omega_star", constants::khavinson_gradient_bound(n, 0.0),
                  2.0 * geometry::omega_star(n), 1e-10);
    const auto grid = uniform_grid(0.0, 1.0, 101);
    std::vector<double> phi(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) phi[i] = constants::khavinson_phi(n, grid[i]);
    const double sign = n == 3 ? 1.0 : -1.0; // increasing for n = 3, decreasing for n >= 4
    double min_step = std::numeric_limits<double>::infinity();
    for (std::size_t i = 1; i < grid.size(); ++i) {
        const double step = sign * (phi[i] - phi[i - 1]);
        b.add(fmt("r=%.17g monotone step", grid[i]), phi[i - 1], phi[i], step);
        min_step = std::min(min_step, step);
    }
    b.check_positive(n == 3 ? "Phi_3 strictly increasing" : "Phi_n strictly decreasing", min_step);
    if (n == 3) {
        double gap = 0.0;
        for (std::size_t i = 1; i < grid.size(); ++i)
            gap = std::max(gap, std::abs(constants::khavinson_phi_integral(3, grid[i]) -
                                         constants::khavinson_phi3_closed(grid[i])));
        b.check_equal("Phi_3 integral vs closed form, max |diff|", gap, 0.0, 1e-8);
        b.check_equal("Phi_3(1) = 16/(9 sqrt 3)", constants::khavinson_phi(3, 1.0), 16.0 / (9.0 * std::sqrt(3.0)), 1e-10);
        b.check_equal("Phi_3 integral at r = 1", constants::khavinson_phi_integral(3, 1.0),
                      16.0 / (9.0 * std::sqrt(3.0)), 1e-10);
        b.check_equal("closed form r -> 0 limit", constants::khavinson_phi3_closed(5e-4), 1.0, 1e-8);
        b.check_equal("closed form vs integral at the r = 1e-3 crossover", constants::khavinson_phi3_closed(1e-3),
                      constants::khavinson_phi_integral(3, 1e-3), 1e-8);
        b.check_equal("sup_r c_3 Phi_3(r) = 8/(3 sqrt 3)", 2.0 * geometry::omega_star(3) * constants::khavinson_phi(3, 1.0),
                      8.0 / (3.0 * std::sqrt(3.0)), 1e-12);
    }
    return b.finish();
}

VerificationReport verify_pde(int n, std::size_t count, const SweepOptions& opt)
{
    ReportBuilder b("pde", n, 0.0);
    b.set_grid(std::to_string(count) + " points uniform in |x| <= " + fmt("%g", opt.radius) +
               " per preset; step " + fmt("%g", poisson::kDefaultLaplacianStep));
    std::vector<Point> points;
    for (std::size_t i = 0; i < count; ++i) points.push_back(numerics::ball_point(n, opt.radius, opt.seed, 5000 + i));
    const double gammas[] = {0.3, 1.0, pi / 2, 2.5};
    auto field_for = [&](BoundKind kind, std::size_t i) -> NamedField {
        const auto params = constants::preset_params(n, kind);
        if (i % 5 == 4) return random_zonal_field(n, params, opt.seed, i, opt.quadrature);
        const double g = gammas[i % 4];
        return {fmt("extremal gamma=%.17g", g), poisson::extremal_field(n, params, g, opt.quadrature)};
    };
    struct Residual {
        std::string label;
        double value;
        double residual;
    };
    for (BoundKind kind : {BoundKind::harmonic, BoundKind::hyperbolic_harmonic}) {
        const auto res = parallel_map<Residual>(points.size(), opt.threads, [&](std::size_t i) {
            const auto nf = field_for(kind, i);
            const auto& x = points[i];
            const auto d = numerics::fd_stencil(nf.field.as_scalar_field(), x, poisson::kDefaultLaplacianStep);
            const double q = 1.0 - dot(x, x);
            const double op = kind == BoundKind::harmonic ? d.laplacian
                                                          : q * q * d.laplacian + 2.0 * (n - 2) * q * dot(x, d.gradient);
            return Residual{nf.label, d.value, op};
        });
        for (std::size_t i = 0; i < points.size(); ++i) {
            const double allowed = 1e-4 * (1.0 + std::abs(res[i].value));
            const std::string op = kind == BoundKind::harmonic ? " |Delta P_{1,n/2}[f]|" : " |Delta_h P_{n-1,n-1}[f]|";
            b.add(label_at(res[i].label, points[i]) + op, std::abs(res[i].residual), allowed,
                  allowed - std::abs(res[i].residual));
        }
    }
    return b.finish();
}

VerificationReport verify_mobius(int n, const SweepOptions& opt)
{
    require(n >= 2, "verify_mobius: dimension must be >= 2");
    ReportBuilder b("mobius", n, 0.0);
    b.set_grid("100 random (x, y) with |x| <= 0.8, |y| <= 0.9; 4 chain-rule points");
    const numerics::RandomSeed sx{opt.seed.seed + 11}, sy{opt.seed.seed + 12}, sz{opt.seed.seed + 13};
    for (std::uint64_t i = 0; i < 100; ++i) {
        const Point x = numerics::ball_point(n, 0.8, sx, i);
        const Point y = numerics::ball_point(n, 0.9, sy, i);
        const Point z = numerics::ball_point(n, 0.9, sz, i);
        const Point on_sphere = numerics::sphere_point(n, sy, i);
        const mobius::MobiusMap phi(x);
        const std::string at = "x=" + to_string(x) + " y=" + to_string(y);
        const double inv = norm(phi(phi(y)) - y);
        b.add(at + " involution", inv, 1e-11, 1e-11 - inv);
        const double bd = std::abs(norm(phi(on_sphere)) - 1.0);
        b.add(at + " boundary preserved", bd, 1e-12, 1e-12 - bd);
        const double fix0 = norm(phi(Point(static_cast<std::size_t>(n), 0.0)) - x);
        const double fixx = norm(phi(x));
        b.add(at + " phi_x(0) = x, phi_x(x) = 0", std::max(fix0, fixx), 1e-14, 1e-14 - std::max(fix0, fixx));
        const double d1 = mobius::hyperbolic_distance(y, z);
        const double d2 = mobius::hyperbolic_distance_arccosh(y, z);
        const double rel = std::abs(d1 - d2) / std::max(1.0, d2);
        b.add(at + " artanh vs arccosh distance", rel, 1e-10, 1e-10 - rel);
        const double inv_d = std::abs(mobius::hyperbolic_distance(phi(y), phi(z)) - d1) / std::max(1.0, d1);
        b.add(at + " distance invariance", inv_d, 1e-10, 1e-10 - inv_d);
    }
    for (double a : {-0.7, -0.2, 0.1, 0.6})
        for (double c : {-0.5, 0.3, 0.9}) {
            const double gap = std::abs(mobius::poincare_distance_1d(a, c) -
                                        mobius::hyperbolic_distance(Point{a, 0.0}, Point{c, 0.0}));
            b.add(fmt("a=%g", a) + fmt(" b=%g 1-D vs disc distance", c), gap, 1e-12, 1e-12 - gap);
        }
    if (n >= 3) {
        for (BoundKind kind : {BoundKind::hyperbolic_harmonic, BoundKind::harmonic}) {
            const auto f = poisson::extremal_field(n, constants::preset_params(n, kind), 1.2, opt.quadrature);
            for (std::uint64_t i = 0; i < 2; ++i) {
                const Point x = numerics::ball_point(n, 0.8, sx, 500 + i);
                const double res = mobius::chain_rule_check(f, x);
                b.add(std::string(constants::to_string(kind)) + " extremal gamma=1.2 x=" + to_string(x) + " chain rule",
                      res, 1e-5, 1e-5 - res);
            }
        }
    }
    return b.finish();
}

} // namespace sharpgrad::verify
