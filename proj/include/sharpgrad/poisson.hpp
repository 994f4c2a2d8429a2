#pragma once

// Generalized Poisson kernel P_{alpha,beta}(x, y) = (1 - |x|^2)^alpha / |x - y|^{2 beta}
// on B^n x S^{n-1}, its transforms of bounded boundary data, and differential
// operators acting on those transforms.
//
// Zonal boundary data (functions of <axis, y>, which includes the +-1 cap
// indicators) is integrated by an exact dimensional reduction: with psi the
// angle between x and the axis, every integral over S^{n-1} collapses to a
// double integral over (theta, phi) in [0, pi]^2 with weight
// sin^{n-2}(theta) sin^{n-3}(phi). The normalizing constant of that weight is
// obtained by integrating the weight itself with the same rule. Non-zonal
// data falls back to Monte Carlo.

#include "sharpgrad/cap.hpp"
#include "sharpgrad/numerics.hpp"
#include "sharpgrad/vec.hpp"

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <variant>
#include <vector>

namespace sharpgrad::poisson {

using numerics::QuadratureConfig;
using numerics::RandomSeed;

struct PoissonParams {
    double alpha = 1.0;
    double beta = 1.0;

    /// (1, n/2): the classical Poisson kernel.
    static PoissonParams harmonic(int n) { return {1.0, 0.5 * n}; }
    /// (n-1, n-1): the Poisson kernel of the hyperbolic Laplacian.
    static PoissonParams hyperbolic(int n) { return {n - 1.0, n - 1.0}; }
    void validate() const;
};

double kernel(int n, const PoissonParams& params, std::span<const double> x, std::span<const double> y);

/// Gradient in x of the kernel; equals 2 beta y at x = 0.
Point kernel_gradient(int n, const PoissonParams& params, std::span<const double> x, std::span<const double> y);

/// +1 on the open cap S(axis, gamma), -1 on its complement.
struct CapSign {
    cap::CapSpec cap;
};

/// f(y) = profile(<axis, y>). `angle_breaks` lists the angles theta in [0, pi]
/// (measured from the axis) where the profile jumps or kinks.
struct Zonal {
    Point axis;
    std::function<double(double)> profile;
    std::vector<double> angle_breaks;
};

/// Arbitrary bounded data; transforms use Monte Carlo.
struct General {
    std::function<double(std::span<const double>)> f;
};

class BoundaryFunction {
public:
    using Kind = std::variant<CapSign, Zonal, General>;

    BoundaryFunction(int n, Kind kind, double bound = 1.0);

    static BoundaryFunction cap_sign(const cap::CapSpec& cap);
    static BoundaryFunction zonal(Point axis, std::function<double(double)> profile,
                                  std::vector<double> angle_breaks = {}, double bound = 1.0);
    static BoundaryFunction constant(int n, double c);
    static BoundaryFunction general(int n, std::function<double(std::span<const double>)> f, double bound = 1.0);

    int n() const { return n_; }
    /// Caller-supplied certificate of sup |f|.
    double bound() const { return bound_; }
    const Kind& kind() const { return kind_; }
    bool is_zonal() const { return !std::holds_alternative<General>(kind_); }

    double operator()(std::span<const double> y) const;

    // Zonal view (valid when is_zonal()).
    const Point& axis() const;
    /// Value as a function of the polar angle theta from the axis.
    double at_angle(double theta) const;
    std::vector<double> angle_breaks() const;

private:
    int n_;
    Kind kind_;
    double bound_;
    double cos_gamma_ = 0.0;
};

struct MonteCarloConfig {
    std::size_t samples = 1'000'000;
    RandomSeed seed{0x5EED};
};

struct Evaluation {
    double value = 0.0;
    Point gradient;
};

struct MonteCarloEstimate {
    double value = 0.0;
    double value_se = 0.0;
    Point gradient;
    Point gradient_se;
};

/// h = P_{alpha,beta}[boundary]. Immutable; evaluation is reentrant.
class TransformField {
public:
    TransformField(int n, PoissonParams params, BoundaryFunction boundary, QuadratureConfig quadrature = {},
                   MonteCarloConfig mc = {});

    int n() const { return n_; }
    const PoissonParams& params() const { return params_; }
    const BoundaryFunction& boundary() const { return boundary_; }
    const QuadratureConfig& quadrature() const { return quadrature_; }
    const MonteCarloConfig& monte_carlo_config() const { return mc_; }

    /// Same field with a different quadrature rule.
    TransformField with_quadrature(const QuadratureConfig& q) const;

    double value(std::span<const double> x) const;
    Point gradient(std::span<const double> x) const;
    Evaluation evaluate(std::span<const double> x) const;

    /// Monte Carlo estimate over the configured sample stream, independent of the reduction.
    MonteCarloEstimate monte_carlo(std::span<const double> x) const;

    numerics::ScalarField as_scalar_field() const;

private:
    Evaluation reduce_zonal(std::span<const double> x) const;

    int n_;
    PoissonParams params_;
    BoundaryFunction boundary_;
    QuadratureConfig quadrature_;
    MonteCarloConfig mc_;
};

double transform(const TransformField& field, std::span<const double> x);
Point transform_gradient(const TransformField& field, std::span<const double> x);

/// h0_{alpha,beta} = P_{alpha,beta}[1_{S(e_n, gamma)} - 1_{S^c(e_n, gamma)}].
TransformField extremal_field(int n, const PoissonParams& params, double gamma, const QuadratureConfig& q = {});

/// <grad h(x), x/|x|>; rejects x = 0.
double radial_derivative(const TransformField& field, std::span<const double> x);

/// Step used for second differences of transforms. Second differences divide
/// quadrature noise by step^2, so this is larger than the gradient step.
constexpr double kDefaultLaplacianStep = 1e-4;

/// Euclidean Laplacian of the field by the (2n+1)-point stencil.
double laplacian(const TransformField& field, std::span<const double> x, double step = kDefaultLaplacianStep);

/// (1-|x|^2)^2 Delta u + 2(n-2)(1-|x|^2) <x, grad u>, both terms by finite differences.
double laplacian_h(const TransformField& field, std::span<const double> x, double step = kDefaultLaplacianStep);

struct VectorEvaluation {
    Point value;                ///< h(x) in R^m
    std::vector<Point> jacobian; ///< m rows of length n
    double operator_norm = 0.0; ///< largest singular value of the Jacobian
    double norm_gradient = 0.0; ///< |grad |h|(x)|
};

/// |h(x)| at or below this is treated as h(x) = 0 by vector_transform.
constexpr double kVectorZeroTolerance = 1e-12;

VectorEvaluation vector_transform(std::span<const TransformField> fields, std::span<const double> x);

/// Largest singular value of a dense m x n matrix given by rows.
double largest_singular_value(std::span<const Point> rows);

} // namespace sharpgrad::poisson
