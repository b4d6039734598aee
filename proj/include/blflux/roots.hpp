#pragma once

#include <cmath>
#include <vector>

namespace blflux {

/// Uniform grid of n points from lo to hi inclusive.
inline std::vector<double> uniform_grid(double lo, double hi, int n) {
    std::vector<double> g(static_cast<std::size_t>(n));
    const double h = (hi - lo) / (n - 1);
    for (int i = 0; i < n; ++i) g[static_cast<std::size_t>(i)] = lo + i * h;
    g.back() = hi;
    return g;
}

inline int sign_of(double v, double zero_tol = 0.0) {
    if (std::isnan(v) || std::abs(v) <= zero_tol) return 0;
    return v > 0.0 ? 1 : -1;
}

/// Bisection for a sign change of `f` on [lo, hi] where sign(f(lo)) and
/// sign(f(hi)) differ. Stops when the bracket is narrower than `tol` or an
/// exact zero is hit; returns the bracket midpoint.
template <class F>
double bisect(F&& f, double lo, double hi, double tol) {
    int s_lo = sign_of(f(lo));
    for (int iter = 0; iter < 200 && hi - lo >= tol; ++iter) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        const int s_mid = sign_of(f(mid));
        if (s_mid == 0) return mid;
        if (s_mid == s_lo) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

struct Bracket {
    double lo;
    double hi;
    int sign_lo;  // sign of f just left of the change
    int sign_hi;
};

/// Scans `values` (sampled on `grid`) for sign changes, skipping points
/// whose magnitude is below `zero_tol`. Each bracket spans from the last
/// nonzero sample before the change to the first nonzero sample after it.
inline std::vector<Bracket> sign_changes(const std::vector<double>& grid,
                                         const std::vector<double>& values,
                                         double zero_tol = 0.0) {
    std::vector<Bracket> out;
    int last_sign = 0;
    double last_s = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const int sg = sign_of(values[i], zero_tol);
        if (sg == 0) continue;
        if (last_sign != 0 && sg != last_sign) {
            out.push_back({last_s, grid[i], last_sign, sg});
        }
        last_sign = sg;
        last_s = grid[i];
    }
    return out;
}

}  // namespace blflux
