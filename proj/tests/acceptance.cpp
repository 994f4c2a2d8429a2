// Acceptance suite: one PASS/FAIL line per criterion. Oracles are computed
// here from closed forms (lgamma, elementary antiderivatives) wherever the
// library would otherwise be checked against itself.

#include "sharpgrad/cap.hpp"
#include "sharpgrad/cli.hpp"
#include "sharpgrad/constants.hpp"
#include "sharpgrad/geometry.hpp"
#include "sharpgrad/mobius.hpp"
#include "sharpgrad/poisson.hpp"
#include "sharpgrad/verify.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <set>
#include <sstream>
#include <string>
#include <vector>

using namespace sharpgrad;
using constants::BoundKind;
constexpr double pi = std::numbers::pi;

namespace {

struct Outcome {
    bool passed = true;
    std::vector<std::string> notes;

    void expect(bool ok, const std::string& what)
    {
        if (!ok) {
            passed = false;
            notes.push_back("failed: " + what);
        }
    }
    void note(const std::string& s) { notes.push_back(s); }
};

std::string fmt(const char* f, double v)
{
    char buf[96];
    std::snprintf(buf, sizeof buf, f, v);
    return buf;
}

double omega_star_oracle(int n)
{
    return std::exp(std::lgamma(0.5 * n + 1.0) - std::lgamma(0.5 * (n + 1)) - 0.5 * std::log(pi));
}

double d_oracle(int n, double gamma, double beta)
{
    return 4.0 * beta / n * omega_star_oracle(n) * std::pow(std::sin(gamma), n - 1);
}

void expect_report(Outcome& o, const verify::VerificationReport& r)
{
    o.expect(r.passed, r.theorem_id + " n=" + std::to_string(r.n) + " (worst margin " + fmt("%.3g", r.worst_margin) +
                           (r.witnesses.empty() ? std::string() : " at " + r.witnesses.front().input) + ")");
    for (const auto& c : r.checks)
        if (!c.passed) o.note("  check failed: " + c.name + fmt(" value=%.6g", c.value) + fmt(" target=%.6g", c.target));
}

// ---------------------------------------------------------------------------

Outcome closed_form_constants()
{
    Outcome o;
    const double exact[] = {2.0, pi, 4.0 * pi / 3.0, pi * pi / 2.0, 8.0 * pi * pi / 15.0};
    for (int n = 1; n <= 5; ++n) {
        const double rel = std::abs(geometry::omega(n) - exact[n - 1]) / exact[n - 1];
        o.expect(rel <= 1e-12, "omega_" + std::to_string(n) + fmt(" relative error %.3g", rel));
    }
    o.expect(2.0 * geometry::omega_star(3) == 1.5, "2 omega_star(3) == 3/2 exactly");
    o.expect(constants::liu_constant(3) == 1.5, "liu_constant(3) == 3/2");
    const double c = constants::liu_sharp_constant(3);
    o.expect(fmt("%.4f", c) == "1.5396", "8/(3 sqrt 3) prints as 1.5396, got " + fmt("%.6f", c));
    o.note(fmt("8/(3 sqrt 3) = %.17g", c));
    return o;
}

Outcome ratio_brackets()
{
    Outcome o;
    for (int n = 2; n <= 50; ++n) {
        const double w = omega_star_oracle(n);
        o.expect(std::abs(geometry::omega_star(n) - w) <= 1e-12 * w, "omega_star(" + std::to_string(n) + ") vs lgamma");
        const auto b = geometry::ratio_bounds(n, geometry::RatioBound::borgwardt);
        const auto a = geometry::ratio_bounds(n, geometry::RatioBound::alzer);
        const double bl = std::sqrt(n / (2.0 * pi)), bh = std::sqrt((n + 1.0) / (2.0 * pi));
        const double al = std::sqrt((n + 0.5) / (2.0 * pi)), ah = std::sqrt((n + pi / 2.0 - 1.0) / (2.0 * pi));
        o.expect(std::abs(b.lo - bl) < 1e-15 && std::abs(b.hi - bh) < 1e-15 && std::abs(a.lo - al) < 1e-15 &&
                     std::abs(a.hi - ah) < 1e-15,
                 "bracket endpoints for n=" + std::to_string(n));
        o.expect(bl < w && w < bh, "Borgwardt strict for n=" + std::to_string(n));
        o.expect(al < w && w < ah, "Alzer strict for n=" + std::to_string(n));
        o.expect(bl <= al && ah <= bh, "Alzer inside Borgwardt for n=" + std::to_string(n));
        if (n >= 4) {
            const double s = (n - 1.0) / n * w;
            o.expect(0.5 < std::sqrt((n - 1.0) / 8.0) && std::sqrt((n - 1.0) / 8.0) < s && s < (n - 1.0) / 4.0,
                     "sigma_star lemma for n=" + std::to_string(n));
            o.expect(geometry::sigma_star_bounds_check(n), "library lemma check for n=" + std::to_string(n));
        }
    }
    return o;
}

Outcome cap_inversion()
{
    Outcome o;
    double worst = 0.0, worst2 = 0.0, worst3 = 0.0;
    for (int n = 2; n <= 12; ++n)
        for (int i = 0; i <= 200; ++i) {
            const double a = -1.0 + i / 100.0;
            const double g = cap::cap_angle(n, a);
            worst = std::max(worst, std::abs(cap::cap_area(n, g) - 0.5 * (1.0 + a)));
            if (n == 2) worst2 = std::max(worst2, std::abs(g - (0.5 * pi + 0.5 * pi * a)));
            if (n == 3) worst3 = std::max(worst3, std::abs(std::cos(g) + a));
        }
    o.expect(worst <= 1e-12, fmt("|A(gamma_a) - (1+a)/2| max %.3g", worst));
    o.expect(worst2 <= 1e-12, fmt("n=2 closed form max %.3g", worst2));
    o.expect(worst3 <= 1e-12, fmt("n=3 cos gamma = -a max %.3g", worst3));
    // Independent area oracle for n = 4, 5 from antiderivatives of sin^2 and sin^3.
    double worst45 = 0.0;
    for (double g = 0.05; g < pi; g += 0.05) {
        const double a4 = geometry::sigma_star(4) * 0.5 * (g - std::sin(g) * std::cos(g));
        const double c = std::cos(g);
        const double a5 = geometry::sigma_star(5) * (2.0 / 3.0 - c + c * c * c / 3.0);
        worst45 = std::max({worst45, std::abs(cap::cap_area(4, g) - a4), std::abs(cap::cap_area(5, g) - a5)});
    }
    o.expect(worst45 <= 1e-12, fmt("cap area vs antiderivatives (n=4,5) max %.3g", worst45));
    o.note(fmt("max inversion residual %.3g", worst));
    return o;
}

Outcome sharpness()
{
    Outcome o;
    double worst_rel = 0.0, worst_se = 0.0;
    for (int n : {3, 4, 5})
        for (double gamma : {0.3, pi / 4, pi / 2, 2.0, 3.0})
            for (double beta : {0.5 * n, n - 1.0}) {
                const poisson::PoissonParams params{beta == 0.5 * n ? 1.0 : n - 1.0, beta};
                const poisson::TransformField f(n, params,
                                                poisson::BoundaryFunction::cap_sign(cap::CapSpec::north(n, gamma)), {},
                                                poisson::MonteCarloConfig{1'000'000, numerics::RandomSeed{1}});
                const Point origin(static_cast<std::size_t>(n), 0.0);
                const auto ev = f.evaluate(origin);
                const double d = d_oracle(n, gamma, beta);
                const double rel = std::abs(norm(ev.gradient) - d) / d;
                worst_rel = std::max(worst_rel, rel);
                const std::string at = "n=" + std::to_string(n) + fmt(" gamma=%.4g", gamma) + fmt(" beta=%g", beta);
                o.expect(rel <= 1e-6, at + fmt(" quadrature relative error %.3g", rel));
                const auto mc = f.monte_carlo(origin);
                for (int k = 0; k < n; ++k) {
                    const double target = k == n - 1 ? d : 0.0;
                    const double z = std::abs(mc.gradient[k] - target) / mc.gradient_se[k];
                    worst_se = std::max(worst_se, z);
                    o.expect(z <= 4.0, at + " MC component " + std::to_string(k) + fmt(" off by %.2f SE", z));
                }
            }
    o.note(fmt("worst quadrature relative error %.3g", worst_rel) + fmt(", worst MC deviation %.2f SE", worst_se));
    return o;
}

Outcome counterexample()
{
    Outcome o;
    for (int n : {4, 5}) {
        const auto c = verify::counterexample(n, 0.3);
        const double liu = 2.0 * omega_star_oracle(n) * (1.0 - c.a * c.a);
        const double d = d_oracle(n, 0.3, 0.5 * n);
        const std::string at = "n=" + std::to_string(n);
        o.expect(c.grad_norm > liu, at + " |grad h0(0)| > 2 omega_star (1 - h0(0)^2)");
        o.expect(c.violation_ratio >= 1.05, at + fmt(" violation ratio %.6f >= 1.05", c.violation_ratio));
        o.expect(std::abs(c.grad_norm - d) / d <= 1e-6, at + " quadrature vs closed formula");
        o.expect(std::abs(c.a - (2.0 * cap::cap_area(n, 0.3) - 1.0)) <= 1e-10, at + " h0(0) = 2A - 1");
        o.expect(verify::counterexample_report(c).passed, at + " certificate report");
        o.note(at + fmt(" gamma=0.3 ratio=%.6f", c.violation_ratio) + fmt(" grad=%.10f", c.grad_norm) +
               fmt(" liu_rhs=%.10f", c.liu_rhs));
    }
    return o;
}

Outcome inq1()
{
    Outcome o;
    for (int n = 2; n <= 12; ++n) {
        const auto r = verify::verify_inq1(n, 1001);
        expect_report(o, r);
        if (n >= 4) o.expect(r.checks.size() == 5, "n=" + std::to_string(n) + " has all five equality checks");
    }
    // Independent equality checks from the area oracle: a = 0 is the hemisphere.
    for (int n = 4; n <= 12; ++n)
        o.expect(std::abs(std::pow(std::sin(cap::cap_angle(n, 0.0)), n - 1) - 1.0) <= 1e-9,
                 "equality at a=0 for n=" + std::to_string(n));
    return o;
}

Outcome auxiliaries()
{
    Outcome o;
    for (int n = 4; n <= 12; ++n) expect_report(o, verify::verify_section3_auxiliaries(n, 1001));
    return o;
}

Outcome phi_suite()
{
    Outcome o;
    auto closed3 = [](double r) { return 2.0 / 3.0 * (std::pow(1.0 + r * r / 3.0, 1.5) - 1.0 + r * r) / (r * r); };
    for (int n = 3; n <= 10; ++n) {
        const double v = constants::khavinson_phi_integral(n, 0.0);
        o.expect(std::abs(v - 2.0 / (n - 1)) <= 1e-10, "Phi_" + std::to_string(n) + "(0) = 2/(n-1)");
    }
    double gap = 0.0;
    std::vector<double> p3;
    for (int i = 0; i <= 100; ++i) {
        const double r = i / 100.0;
        p3.push_back(constants::khavinson_phi_integral(3, r));
        if (i > 0) gap = std::max(gap, std::abs(p3.back() - closed3(r)));
    }
    o.expect(gap <= 1e-8, fmt("Phi_3 integral vs closed form max |diff| %.3g", gap));
    o.expect(std::abs(constants::khavinson_phi(3, 1.0) - 16.0 / (9.0 * std::sqrt(3.0))) <= 1e-10, "Phi_3(1) = 16/(9 sqrt 3)");
    o.expect(std::abs(constants::khavinson_phi_integral(3, 1.0) - 16.0 / (9.0 * std::sqrt(3.0))) <= 1e-10,
             "Phi_3(1) by quadrature");
    for (int i = 1; i <= 100; ++i) o.expect(p3[i] > p3[i - 1], fmt("Phi_3 increasing at r=%.2f", i / 100.0));
    for (int n = 4; n <= 10; ++n) {
        double prev = constants::khavinson_phi(n, 0.0);
        for (int i = 1; i <= 100; ++i) {
            const double v = constants::khavinson_phi(n, i / 100.0);
            o.expect(v < prev, "Phi_" + std::to_string(n) + fmt(" decreasing at r=%.2f", i / 100.0));
            prev = v;
        }
    }
    o.note(fmt("Phi_3 max |integral - closed form| = %.3g", gap));
    return o;
}

Outcome pde()
{
    Outcome o;
    verify::SweepOptions s;
    for (int n : {3, 4}) {
        const auto r = verify::verify_pde(n, 100, s);
        expect_report(o, r);
        o.note("n=" + std::to_string(n) + fmt(": worst slack below 1e-4(1+|h|) is %.3g", r.worst_margin));
    }
    return o;
}

Outcome pointwise()
{
    Outcome o;
    verify::SweepOptions s;
    for (int n : {3, 4, 5}) {
        const auto pts = verify::sample_points(n, s.points, s.radius, s.seed);
        for (BoundKind k : {BoundKind::harmonic, BoundKind::hyperbolic_harmonic})
            expect_report(o, verify::verify_pointwise(n, k, verify::default_fields(n, k, s.seed), pts, s));
        if (n == 3)
            expect_report(o, verify::verify_thyp3(verify::default_fields(3, BoundKind::harmonic, s.seed), pts, s));
    }
    // Equality on B^3 at the origin for the hemisphere.
    const auto h3 = poisson::extremal_field(3, poisson::PoissonParams::harmonic(3), pi / 2).evaluate(Point(3, 0.0));
    const double g3 = norm(h3.gradient);
    o.expect(std::abs(g3 - 1.5) <= 1e-9 && std::abs(1.5 * (1.0 - h3.value * h3.value) - 1.5) <= 1e-9,
             fmt("n=3 equality |grad h(0)| = %.12f vs 3/2", g3));
    // Strictness on B^4 at the origin: margin (n/2)(1-a^2) - |grad h(0)| over a gamma grid.
    double min_margin = 1e300;
    for (double g = 0.2; g < pi - 0.1; g += 0.1) {
        const auto ev = poisson::extremal_field(4, poisson::PoissonParams::harmonic(4), g).evaluate(Point(4, 0.0));
        min_margin = std::min(min_margin, 2.0 * (1.0 - ev.value * ev.value) - norm(ev.gradient));
    }
    const auto hemi = poisson::extremal_field(4, poisson::PoissonParams::harmonic(4), pi / 2).evaluate(Point(4, 0.0));
    const double hemi_margin = 2.0 - norm(hemi.gradient);
    o.expect(std::abs(hemi_margin - (2.0 - 2.0 * omega_star_oracle(4))) <= 1e-9, "n=4 hemisphere margin = 2 - 2 omega_star(4)");
    o.expect(min_margin > 0.0, fmt("n=4 strictness at x=0 on the gamma grid, min margin %.4g", min_margin));
    o.note(fmt("n=3 equality residual %.3g", std::abs(g3 - 1.5)) + fmt("; n=4 hemisphere margin %.6f", hemi_margin) +
           fmt(", min over gamma grid %.6f", min_margin));
    return o;
}

Outcome vector_valued()
{
    Outcome o;
    verify::SweepOptions s;
    for (int n : {3, 4}) {
        const auto pts = verify::sample_points(n, s.points, s.radius, s.seed);
        for (BoundKind k : {BoundKind::harmonic, BoundKind::hyperbolic_harmonic})
            for (int m : {2, 3}) {
                const auto data = verify::default_vector_data(n, m, k, s.seed);
                const auto r = verify::verify_vector(n, k, data, pts, s);
                expect_report(o, r);
                // Odd data vanishes at the origin, where |grad |h|| and |Dh| coincide.
                std::vector<poisson::TransformField> comps;
                for (const auto& c : data[0]) comps.push_back(c.field);
                const auto ev = poisson::vector_transform(comps, Point(static_cast<std::size_t>(n), 0.0));
                o.expect(norm(ev.value) <= poisson::kVectorZeroTolerance, "odd data vanishes at 0");
                o.expect(std::abs(ev.norm_gradient - ev.operator_norm) <= 1e-10,
                         "n=" + std::to_string(n) + " m=" + std::to_string(m) +
                             fmt(" norm_gradient = operator_norm at h(x)=0, gap %.3g",
                                 std::abs(ev.norm_gradient - ev.operator_norm)));
            }
    }
    return o;
}

Outcome contraction()
{
    Outcome o;
    verify::SweepOptions s;
    auto run = [&](int n, BoundKind k) {
        const auto pairs = verify::sample_pairs(n, 100, s.radius, s.seed);
        const auto r = verify::verify_contraction(n, k, verify::default_fields(n, k, s.seed), pairs, s);
        expect_report(o, r);
        o.note(r.theorem_id + " n=" + std::to_string(n) + fmt(": worst margin %.3g", r.worst_margin));
    };
    run(3, BoundKind::harmonic);
    run(3, BoundKind::hyperbolic_harmonic);
    run(4, BoundKind::hyperbolic_harmonic);
    for (int n : {2, 3, 4}) expect_report(o, verify::verify_mobius(n, s));
    // Chain rule at extra points, against the hyperbolic extremal.
    const auto f = poisson::extremal_field(4, poisson::PoissonParams::hyperbolic(4), 0.8);
    for (std::uint64_t i = 0; i < 3; ++i) {
        const double res = mobius::chain_rule_check(f, numerics::ball_point(4, 0.7, numerics::RandomSeed{77}, i));
        o.expect(res <= 1e-5, fmt("chain rule residual %.3g", res));
    }
    return o;
}

Outcome reproducibility()
{
    Outcome o;
    const std::vector<std::string> args{"report-all", "--n-list", "3,4,5", "--seed", "1", "--no-timestamp"};
    std::ostringstream out1, err1, out2, err2;
    const int c1 = cli::run(args, out1, err1);
    const int c2 = cli::run(args, out2, err2);
    o.expect(c1 == c2, "exit codes agree");
    o.expect(!out1.str().empty(), "output is non-empty");
    o.expect(out1.str() == out2.str(), "byte-identical output");
    o.note("exit code " + std::to_string(c1) + ", " + std::to_string(out1.str().size()) + " bytes");
    return o;
}

struct Criterion {
    int id;
    const char* title;
    double budget_s;
    std::function<Outcome()> run;
};

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Acceptance suite"};
    std::vector<int> only;
    bool verbose = false;
    app.add_option("--only", only, "Run only these criteria")->delimiter(',');
    app.add_flag("-v,--verbose", verbose, "Print notes for passing criteria too");
    CLI11_PARSE(app, argc, argv);

    const std::vector<Criterion> criteria{
        {1, "closed-form constants", 1, closed_form_constants},
        {2, "Borgwardt/Alzer brackets and the sigma_star lemma", 1, ratio_brackets},
        {3, "cap inversion", 5, cap_inversion},
        {4, "sharpness oracle at the origin (quadrature + Monte Carlo)", 60, sharpness},
        {5, "counterexample to the harmonic Schwarz-Pick conjecture", 30, counterexample},
        {6, "cap-angle inequality sweeps", 10, inq1},
        {7, "auxiliary functions h, G, g", 10, auxiliaries},
        {8, "Khavinson Phi_n suite", 20, phi_suite},
        {9, "PDE residuals", 60, pde},
        {10, "pointwise Schwarz-Pick bounds", 60, pointwise},
        {11, "vector-valued bounds", 60, vector_valued},
        {12, "hyperbolic contraction and Mobius identities", 60, contraction},
        {13, "report-all reproducibility", 300, reproducibility},
    };
    const std::set<int> selected(only.begin(), only.end());
    int failures = 0;
    for (const auto& c : criteria) {
        if (!selected.empty() && !selected.count(c.id)) continue;
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o.passed = false;
            o.notes.push_back(std::string("exception: ") + e.what());
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::printf("%s %2d  %-58s %7.1f s (budget %g s)\n", o.passed ? "PASS" : "FAIL", c.id, c.title, secs,
                    c.budget_s);
        if (!o.passed || verbose)
            for (const auto& n : o.notes) std::printf("         %s\n", n.c_str());
        std::fflush(stdout);
        if (!o.passed) ++failures;
    }
    std::printf("%d criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
