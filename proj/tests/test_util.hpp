#pragma once

#include <cmath>
#include <functional>

#include "dnls/spectral.hpp"
#include "dnls/types.hpp"

namespace dnls::testing {

inline Field sample(const GridPtr& grid, const std::function<Complex(double)>& f,
                    double t = 0.0) {
    Field out(grid, t);
    for (std::size_t n = 0; n < grid->N; ++n) out.values[n] = f(grid->x(n));
    return out;
}

inline double max_abs_diff(const Field& a, const Field& b) {
    double m = 0.0;
    for (std::size_t n = 0; n < a.size(); ++n) m = std::max(m, std::abs(a[n] - b[n]));
    return m;
}

inline double h1_dist(const Field& a, const Field& b) {
    Field d = a;
    for (std::size_t n = 0; n < d.size(); ++n) d.values[n] -= b.values[n];
    return spectral::sobolev_norm(d, 1);
}

// Adaptive Simpson quadrature, used as an independent integral oracle.
inline double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                               double tol = 1e-12, int depth = 40) {
    auto simpson = [&](double lo, double hi) {
        return (hi - lo) / 6.0 * (f(lo) + 4.0 * f(0.5 * (lo + hi)) + f(hi));
    };
    std::function<double(double, double, double, int)> rec = [&](double lo, double hi,
                                                                 double whole, int d) {
        const double mid = 0.5 * (lo + hi);
        const double left = simpson(lo, mid), right = simpson(mid, hi);
        if (d <= 0 || std::abs(left + right - whole) < 15.0 * tol)
            return left + right + (left + right - whole) / 15.0;
        return rec(lo, mid, left, d - 1) + rec(mid, hi, right, d - 1);
    };
    return rec(a, b, simpson(a, b), depth);
}

}  // namespace dnls::testing
