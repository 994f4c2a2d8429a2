#pragma once

// Small dense-vector helpers for points of B^n and S^{n-1}. Dimensions are
// runtime values (n is a CLI argument), so points are plain std::vector.

#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace sharpgrad {

using Point = std::vector<double>;

inline double dot(std::span<const double> a, std::span<const double> b)
{
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

inline double norm(std::span<const double> a) { return std::sqrt(dot(a, a)); }

inline Point operator+(const Point& a, const Point& b)
{
    Point r(a);
    for (std::size_t i = 0; i < r.size(); ++i) r[i] += b[i];
    return r;
}

inline Point operator-(const Point& a, const Point& b)
{
    Point r(a);
    for (std::size_t i = 0; i < r.size(); ++i) r[i] -= b[i];
    return r;
}

inline Point operator*(double s, const Point& a)
{
    Point r(a);
    for (auto& v : r) v *= s;
    return r;
}

/// Unit basis vector e_k of R^n (0-based k).
inline Point basis(int n, int k)
{
    Point e(static_cast<std::size_t>(n), 0.0);
    e[static_cast<std::size_t>(k)] = 1.0;
    return e;
}

/// The north pole e_n.
inline Point north_pole(int n) { return basis(n, n - 1); }

std::string to_string(std::span<const double> p);

} // namespace sharpgrad
