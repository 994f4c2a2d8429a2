#pragma once

// Theorem-level verification sweeps. Every sweep returns a VerificationReport
// whose margins follow one sign convention: margin = bound - quantity, so a
// non-negative margin means the inequality holds at that sample.

#include "sharpgrad/constants.hpp"
#include "sharpgrad/numerics.hpp"
#include "sharpgrad/poisson.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace sharpgrad::verify {

struct Witness {
    std::string input;
    double lhs = 0.0;
    double rhs = 0.0;
    double margin = 0.0;
};

/// A scalar fact checked against a target (an equality case, a sign fact, ...).
struct Check {
    std::string name;
    double value = 0.0;
    double target = 0.0;
    double tolerance = 0.0;
    bool passed = false;
};

struct VerificationReport {
    std::string theorem_id;
    int n = 0;
    std::string grid;
    double worst_margin = 0.0;
    double tolerance = 0.0;
    std::vector<Witness> witnesses; ///< worst sample first, then violations by sample index
    std::vector<Check> checks;
    bool passed = false;
    std::int64_t runtime_ms = 0;
    /// Reports that collect evidence (the closing question) never gate a run.
    bool informational = false;
};

/// Accumulates margins in sample order and assembles a report.
class ReportBuilder {
public:
    ReportBuilder(std::string theorem_id, int n, double tolerance);

    void add(const std::string& input, double lhs, double rhs, double margin);
    /// Equality-type check: passes iff |value - target| <= tolerance.
    void check_equal(const std::string& name, double value, double target, double tolerance);
    /// Sign-type check: passes iff value > 0 (strict) or value >= 0.
    void check_positive(const std::string& name, double value, bool strict = true);
    void set_grid(std::string grid) { grid_ = std::move(grid); }
    void merge(const VerificationReport& other);

    VerificationReport finish();

private:
    VerificationReport report_;
    std::string grid_;
    std::optional<Witness> worst_;
    std::vector<Witness> violations_;
    std::int64_t start_ms_;
};

struct SweepOptions {
    numerics::RandomSeed seed{1};
    unsigned threads = 0; ///< 0 = hardware concurrency
    std::size_t points = 50;
    double radius = 0.8;
    numerics::QuadratureConfig quadrature{};
};

struct NamedField {
    std::string label;
    poisson::TransformField field;
};

// ---- sample sets -----------------------------------------------------------

/// The origin followed by `count` uniform points of the ball of radius `radius`.
std::vector<Point> sample_points(int n, std::size_t count, double radius, numerics::RandomSeed seed);

/// Extremal cap fields for gamma in {0.3, pi/4, pi/2, 2, 3} plus random zonal fields
/// (smooth and piecewise constant profiles with values in (-1, 1), random axes).
std::vector<NamedField> default_fields(int n, constants::BoundKind kind, numerics::RandomSeed seed,
                                       const numerics::QuadratureConfig& q = {});

/// Random zonal field with |profile| < 1 on a random axis. `variant` picks the profile family.
NamedField random_zonal_field(int n, const poisson::PoissonParams& params, numerics::RandomSeed seed,
                              std::uint64_t index, const numerics::QuadratureConfig& q = {});

/// Vector data B^n -> closed B^m built from m scalar zonal components whose
/// squared bounds sum to at most 1. Construction 0 is odd (so h(0) = 0).
std::vector<std::vector<NamedField>> default_vector_data(int n, int m, constants::BoundKind kind,
                                                         numerics::RandomSeed seed,
                                                         const numerics::QuadratureConfig& q = {});

// ---- theorem checks --------------------------------------------------------

struct CounterexampleCertificate {
    int n = 0;
    double gamma = 0.0;
    double a = 0.0;              ///< h0(0) by quadrature
    double grad_norm = 0.0;      ///< |grad h0(0)| by quadrature
    double liu_rhs = 0.0;        ///< 2 omega_star(n) (1 - a^2)
    double violation_ratio = 0.0;
    double closed_form = 0.0;    ///< D_n(gamma, n/2)
    double relative_agreement = 0.0; ///< |grad_norm - closed_form| / closed_form
};

/// Harmonic extremal field refuting |grad u| <= 2 omega_star(n)(1-u^2)/(1-|x|^2) at x = 0.
/// Without gamma, scans down from pi/2 in steps of 0.01 until (n/2) C_n(gamma) exceeds
/// 2 omega_star(n) by `margin`. Requires n >= 4.
CounterexampleCertificate counterexample(int n, std::optional<double> gamma = std::nullopt, double margin = 0.01,
                                         const numerics::QuadratureConfig& q = {});
VerificationReport counterexample_report(const CounterexampleCertificate& cert);

/// Both cap-angle inequalities on a uniform grid of [-1, 1]; n = 3 runs the
/// identity sin^2 gamma_a = 1 - a^2 and n = 2 the reversed bound cos(pi a/2) <= 1 - a^2.
VerificationReport verify_inq1(int n, std::size_t grid_size = 1001);

/// Auxiliary functions h, G, g of the cap-angle inequalities: endpoint values,
/// sign facts, and analytic derivatives against finite differences.
VerificationReport verify_section3_auxiliaries(int n, std::size_t grid_size = 1001);

/// Theorem-level pointwise bound for the given preset at every (field, point).
VerificationReport verify_pointwise(int n, constants::BoundKind kind, std::span<const NamedField> fields,
                                    std::span<const Point> points, const SweepOptions& opt = {});

/// Radial derivative envelope on B^3 plus the gradient corollary.
VerificationReport verify_thyp3(std::span<const NamedField> fields, std::span<const Point> points,
                                const SweepOptions& opt = {});

/// Operator norm and |grad |h|| bounds for vector data (each entry of `data` is one map).
VerificationReport verify_vector(int n, constants::BoundKind kind, std::span<const std::vector<NamedField>> data,
                                 std::span<const Point> points, const SweepOptions& opt = {});

/// d_{h_2}(h(x1), h(x2)) <= C d_{h_n}(x1, x2) with C = n-1 (hyperbolic) or C = 2 (harmonic, n = 3).
VerificationReport verify_contraction(int n, constants::BoundKind kind, std::span<const NamedField> fields,
                                      std::span<const std::pair<Point, Point>> pairs, const SweepOptions& opt = {});

/// Evidence for |grad h(x)| <= (n/2)(1-h^2)/(1-|x|^2) over extremal and random zonal
/// harmonic fields. Apparent violations are re-evaluated with 10x tighter quadrature.
VerificationReport explore_question(int n, std::size_t candidate_count, numerics::RandomSeed seed,
                                    const SweepOptions& opt = {});

// ---- battery helpers used by the CLI and acceptance suite -------------------

/// Closed-form ball constants and the ratio brackets (n-independent parts use n in [2, 50]).
VerificationReport verify_constants(int n);
/// |grad h0(0)| by quadrature against D_n(gamma, beta), with a Monte Carlo cross-check.
VerificationReport verify_sharpness(int n, const SweepOptions& opt = {}, std::size_t mc_samples = 1'000'000);
/// Phi_n at 0, monotonicity on a 101-point grid, and the n = 3 closed form.
VerificationReport verify_phi(int n);
/// Laplacian residuals of P_{1,n/2} and hyperbolic-Laplacian residuals of P_{n-1,n-1}.
VerificationReport verify_pde(int n, std::size_t count, const SweepOptions& opt = {});
/// Mobius involution, boundary preservation, distance identities and the chain rule.
VerificationReport verify_mobius(int n, const SweepOptions& opt = {});

/// Random pairs of sample points (first pair is (p, p)).
std::vector<std::pair<Point, Point>> sample_pairs(int n, std::size_t count, double radius, numerics::RandomSeed seed);

/// Runs fn(i) for i in [0, count) on up to `threads` workers; results in index order.
template <class R, class F>
std::vector<R> parallel_map(std::size_t count, unsigned threads, F&& fn);

} // namespace sharpgrad::verify

#include "sharpgrad/detail/parallel.hpp"
