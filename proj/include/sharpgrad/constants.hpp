#pragma once

// Sharp gradient constants for bounded harmonic and hyperbolic-harmonic
// functions on B^n: the gradient-at-origin bound D_n(gamma, beta) under the
// constraint h(0) = a, its normalized form C_n(gamma), pointwise Schwarz-Pick
// type bounds, Khavinson's Phi_n and the radial-derivative envelope on B^3.

#include "sharpgrad/geometry.hpp"
#include "sharpgrad/poisson.hpp"

#include <string_view>

namespace sharpgrad::constants {

enum class BoundKind { harmonic, hyperbolic_harmonic };

std::string_view to_string(BoundKind kind);
BoundKind parse_bound_kind(std::string_view name);

/// beta of the kernel preset: n/2 (harmonic) or n-1 (hyperbolic).
double preset_beta(int n, BoundKind kind);
poisson::PoissonParams preset_params(int n, BoundKind kind);
/// 2 omega_star(n) (harmonic) or 4 sigma_star(n) (hyperbolic).
double grad0_coefficient(int n, BoundKind kind);

/// (4 beta / n) omega_star(n) sin^{n-1}(gamma).
double d_n(int n, double gamma, double beta);

/// sin^{n-1}(gamma) / ((n-1) A_0(gamma) (1 - A(gamma))), for gamma in (0, pi).
double c_n(int n, double gamma);

/// grad0_coefficient(n, kind) * sin^{n-1}(gamma_a).
double grad0_bound(int n, double a, BoundKind kind);

/// beta (1 - a^2), n >= 3.
double beta_bound(int n, double a, double beta);

/// (n/2)(1-a^2)/(1-|x|) for harmonic, (n-1)(1-a^2)/(1-|x|^2) for hyperbolic.
double pointwise_bound(int n, double a, double x_norm, BoundKind kind);

/// Bound of the closing question: (n/2)(1-a^2)/(1-|x|^2).
double question_bound(int n, double a, double x_norm);

/// Liu's constant 2 omega_star(n) of the harmonic Schwarz-Pick inequality.
double liu_constant(int n);
/// Sharp harmonic constant: 2 omega_star(n) for n = 2 and n >= 4, 8/(3 sqrt 3) for n = 3.
double liu_sharp_constant(int n);

/// Phi_n(r) by quadrature (substitution t = cos theta, split at the kink).
double khavinson_phi_integral(int n, double r);
/// Closed form of Phi_3 for r in (0, 1].
double khavinson_phi3_closed(double r);
/// Phi_n(r); n = 3 uses the closed form for r > 1e-3.
double khavinson_phi(int n, double r);

/// (n-1) omega_star(n) Phi_n(r) / (1 - r^2).
double khavinson_gradient_bound(int n, double r);
/// 4 sigma_star(n) / (1 - r^2).
double khavinson_hyperbolic_bound(int n, double r);

/// Bounds on D_r u(x) for harmonic u : B^3 -> (-1, 1) at |x| = x_norm, u(x) = u.
geometry::Interval thyp3_envelope(double x_norm, double u);
/// 2 (1 - u^2) / (1 - |x|^2).
double thyp3_gradient_bound(double x_norm, double u);

} // namespace sharpgrad::constants
