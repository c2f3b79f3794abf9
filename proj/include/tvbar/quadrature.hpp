#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "tvbar/errors.hpp"

namespace tvbar {

// Nested trapezoid sums with Richardson extrapolation (Romberg). Fast on
// smooth integrands; callers are expected to split at known kinks. The two
// endpoint samples are nudged inward by a relative 1e-12 so that integrands
// with one-sided jumps exactly at the interval ends (piecewise profiles
// evaluated at their own knots) present their interior limits; the bias is
// |jump| * 1e-12 * (b-a), far below the tolerances used here.
template <class F>
double romberg(F&& f, double a, double b, double tol = 1e-10, int max_levels = 22) {
    if (b <= a) return 0.0;
    std::vector<double> row;
    const double h = b - a;
    const double nudge = 1e-12 * h;
    row.push_back(0.5 * h * (f(a + nudge) + f(b - nudge)));
    for (int k = 1; k <= max_levels; ++k) {
        const long n = 1L << k;
        double sum = 0.0;
        for (long i = 1; i < n; i += 2) sum += f(a + h * static_cast<double>(i) / static_cast<double>(n));
        std::vector<double> next;
        next.reserve(static_cast<std::size_t>(k) + 1);
        next.push_back(0.5 * row[0] + (h / static_cast<double>(n)) * sum);
        double p4 = 1.0;
        for (std::size_t j = 0; j < row.size(); ++j) {
            p4 *= 4.0;
            next.push_back(next[j] + (next[j] - row[j]) / (p4 - 1.0));
        }
        const double err = std::abs(next.back() - row.back());
        const double scale = std::max(1.0, std::abs(next.back()));
        row = std::move(next);
        if (k >= 4 && err <= tol * scale) return row.back();
    }
    throw QuadratureFailure("romberg: estimates did not settle");
}

// integrate with forced subdivision points (kink locations)
template <class F>
double integrate_split(F&& f, double a, double b, std::vector<double> splits, double tol = 1e-10) {
    if (b <= a) return 0.0;
    splits.push_back(a);
    splits.push_back(b);
    std::sort(splits.begin(), splits.end());
    std::vector<double> pts;
    for (double s : splits) {
        if (s < a || s > b) continue;
        if (pts.empty() || s - pts.back() > 1e-14 * std::max(1.0, std::abs(s))) pts.push_back(s);
    }
    if (pts.size() < 2) return 0.0;
    const double per = tol / static_cast<double>(pts.size() - 1);
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) total += romberg(f, pts[i], pts[i + 1], per);
    return total;
}

// plain bisection; requires a sign change on [lo, hi]
template <class F>
double bisect(F&& f, double lo, double hi, double xtol = 1e-14, int maxit = 200) {
    double flo = f(lo);
    if (flo == 0.0) return lo;
    double fhi = f(hi);
    if (fhi == 0.0) return hi;
    if ((flo > 0) == (fhi > 0)) throw Error("bisect: no sign change in bracket");
    for (int i = 0; i < maxit && hi - lo > xtol; ++i) {
        double mid = 0.5 * (lo + hi);
        double fm = f(mid);
        if (fm == 0.0) return mid;
        if ((fm > 0) == (flo > 0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

inline std::vector<double> linspace(double a, double b, int n) {
    std::vector<double> v;
    v.reserve(static_cast<std::size_t>(std::max(n, 0)));
    if (n == 1) {
        v.push_back(a);
        return v;
    }
    for (int i = 0; i < n; ++i) v.push_back(a + (b - a) * static_cast<double>(i) / static_cast<double>(n - 1));
    return v;
}

} // namespace tvbar
