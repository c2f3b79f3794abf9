#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "tvbar/barcode.hpp"
#include "tvbar/errors.hpp"
#include "tvbar/kernel.hpp"
#include "tvbar/quadrature.hpp"
#include "tvbar/signal.hpp"

namespace tvbar {

// Exact hat blur of a code: piecewise quadratic, continuous, mass |z|.
inline Signal hat_convolve(const BarCode& z, double sigma) {
    if (sigma <= 0.0) throw InvalidKernel("hat_convolve: sigma must be positive");
    if (z.empty()) return Signal(PiecewisePoly(), "zero");
    return Signal(convolve_hat(z.indicator(), sigma), "hat blur");
}

// Exact double hat blur (deblur kernel rho on top of blur kernel sigma):
// piecewise quartic. rho == 0 degenerates to the single blur.
inline Signal double_convolve(const BarCode& z, double rho, double sigma) {
    if (sigma <= 0.0) throw InvalidKernel("double_convolve: sigma must be positive");
    if (rho < 0.0) throw InvalidKernel("double_convolve: rho must be nonnegative");
    if (z.empty()) return Signal(PiecewisePoly(), "zero");
    PiecewisePoly f = convolve_hat(z.indicator(), sigma);
    if (rho > 0.0) f = convolve_hat(f, rho);
    return Signal(std::move(f), "double hat blur");
}

struct GridSpec {
    double x0 = 0.0;
    double h = 1e-3;
    std::size_t n = 1001;

    double x_last() const { return x0 + h * static_cast<double>(n - 1); }

    static GridSpec cover(double lo, double hi, double h) {
        GridSpec g;
        g.h = h;
        g.x0 = lo;
        g.n = static_cast<std::size_t>(std::ceil((hi - lo) / h - 1e-9)) + 1;
        return g;
    }
};

// Trapezoid-rule convolution of a code with an arbitrary kernel, sampled at
// the grid nodes. The bar integrals are subdivided at steps <= h, so the
// only quadrature error comes from the kernel profile itself.
inline Signal grid_convolve(const BarCode& z, const Kernel& k, const GridSpec& g) {
    const double r = k.support_radius();
    if (!std::isfinite(r)) throw InvalidKernel("grid_convolve: kernel support is unbounded");
    if (!z.empty()) {
        if (z.interfaces().front() - r < g.x0 - 1e-12 || z.interfaces().back() + r > g.x_last() + 1e-12)
            throw GridTooSmall("grid does not cover the blurred support");
    }
    GridSignal out;
    out.x0 = g.x0;
    out.h = g.h;
    out.samples.assign(g.n, 0.0);
    const auto bars = z.bar_intervals();
    for (std::size_t i = 0; i < g.n; ++i) {
        const double x = g.x0 + g.h * static_cast<double>(i);
        double acc = 0.0;
        for (const auto& [a, b] : bars) {
            const double l = std::max(a, x - r), rr = std::min(b, x + r);
            if (rr <= l) continue;
            const auto nsub = static_cast<std::size_t>(std::ceil((rr - l) / g.h - 1e-12));
            const double step = (rr - l) / static_cast<double>(std::max<std::size_t>(nsub, 1));
            double s = 0.5 * (k.evaluate(x - l) + k.evaluate(x - rr));
            for (std::size_t j = 1; j < std::max<std::size_t>(nsub, 1); ++j)
                s += k.evaluate(x - (l + step * static_cast<double>(j)));
            acc += s * step;
        }
        out.samples[i] = acc;
    }
    return Signal(std::move(out), "grid blur");
}

// Discrete convolution of a sampled signal with a sampled kernel on the
// same step; values outside the sampled range count as zero.
inline GridSignal grid_convolve(const GridSignal& in, const Kernel& k) {
    const double r = k.support_radius();
    if (!std::isfinite(r)) throw InvalidKernel("grid_convolve: kernel support is unbounded");
    const long m = static_cast<long>(std::floor(r / in.h - 1e-12));
    GridSignal out;
    out.x0 = in.x0;
    out.h = in.h;
    out.samples.assign(in.samples.size(), 0.0);
    std::vector<double> w(static_cast<std::size_t>(2 * m + 1));
    for (long j = -m; j <= m; ++j) w[static_cast<std::size_t>(j + m)] = k.evaluate(static_cast<double>(j) * in.h);
    const long n = static_cast<long>(in.samples.size());
    for (long i = 0; i < n; ++i) {
        double s = 0.0;
        const long jlo = std::max(-m, i - (n - 1)), jhi = std::min(m, i);
        for (long j = jlo; j <= jhi; ++j) s += w[static_cast<std::size_t>(j + m)] * in.samples[static_cast<std::size_t>(i - j)];
        out.samples[static_cast<std::size_t>(i)] = s * in.h;
    }
    return out;
}

// One-sided hat pieces of a blur integral over [a, b] at query x, split by
// the sign of the hat argument.
inline double I_plus(double x, double a, double b, double sigma) {
    return ((b - a) * (1.0 + x / sigma) - (b * b - a * a) / (2.0 * sigma)) / sigma;
}
inline double I_minus(double x, double a, double b, double sigma) {
    return ((b - a) * (1.0 - x / sigma) + (b * b - a * a) / (2.0 * sigma)) / sigma;
}

// ---- closed forms for products of blurred indicators ----
//
// Geometry: N = [a, a+len] inside [0,1], both end margins at least
// rho+sigma, len at least twice the larger kernel radius, so the two
// interface neighbourhoods of N do not interact with each other or with the
// domain ends.

inline void check_cross_geometry(double rho, double sigma, double a, double len) {
    if (rho <= 0.0 || sigma <= 0.0) throw CaseOrderingViolated("kernel radii must be positive");
    if (len < 2.0 * std::max(rho, sigma)) throw CaseOrderingViolated("interval shorter than twice the larger radius");
    if (a < rho + sigma || 1.0 - (a + len) < rho + sigma)
        throw CaseOrderingViolated("interval too close to the domain ends");
}

// || hat_s * indicator of a length-len interval ||^2, needs s <= len/2
inline double box_blur_norm_sq(double len, double s) {
    if (s <= 0.0) throw CaseOrderingViolated("radius must be positive");
    if (!(s <= 0.5 * len)) throw CaseOrderingViolated("radius must not exceed half the interval");
    return len - (7.0 / 15.0) * s;
}

// -2 int (hat_rho * chi_N)(hat_sigma * chi_{N^c in [0,1]}); independent of
// the placement of N under the geometry above, symmetric in (rho, sigma)
inline double cross_term_exterior(double rho, double sigma) {
    if (rho <= 0.0 || sigma <= 0.0) throw CaseOrderingViolated("kernel radii must be positive");
    if (sigma <= rho) return (sigma * sigma * sigma - 5.0 * rho * sigma * sigma - 10.0 * rho * rho * rho) / (15.0 * rho * rho);
    return (rho * rho * rho - 5.0 * sigma * rho * rho - 10.0 * sigma * sigma * sigma) / (15.0 * sigma * sigma);
}

// -2 int (hat_rho * chi_N)(hat_sigma * chi_[0,1]) = -2 len, exactly
inline double cross_term_domain(double len) {
    if (len <= 0.0) throw CaseOrderingViolated("interval length must be positive");
    return -2.0 * len;
}

// 2 int (hat_rho * chi_N)(hat_sigma * chi_N) = 2 len + exterior branch value
inline double cross_term_interior(double rho, double sigma, double len) {
    if (len < 2.0 * std::max(rho, sigma)) throw CaseOrderingViolated("interval shorter than twice the larger radius");
    return 2.0 * len + cross_term_exterior(rho, sigma);
}

// ---- quadrature twins (trapezoid + Richardson, no antiderivative reuse) ----

namespace detail {

// int_{lo}^{hi} phi(x - y) dy by Romberg, split at the kernel kinks
inline double blur_of_interval(const Kernel& k, double lo, double hi, double x, double tol) {
    const double r = k.support_radius();
    double l = std::max(lo, x - r), rr = std::min(hi, x + r);
    if (rr <= l) return 0.0;
    std::vector<double> sp;
    for (double kk : k.kinks()) {
        sp.push_back(x - kk);
        sp.push_back(x + kk);
    }
    return integrate_split([&](double y) { return k.evaluate(x - y); }, l, rr, sp, tol);
}

inline std::vector<double> cross_splits(double rho, double sigma, std::initializer_list<double> anchors) {
    std::vector<double> sp;
    for (double p : anchors)
        for (double d : {0.0, rho, sigma, -rho, -sigma}) sp.push_back(p + d);
    return sp;
}

} // namespace detail

inline double cross_term_exterior_quad(double rho, double sigma, double a, double len, double tol = 1e-8) {
    check_cross_geometry(rho, sigma, a, len);
    const Kernel kr = Kernel::hat(rho), ks = Kernel::hat(sigma);
    const double b = a + len;
    auto f = [&](double x) {
        const double inner_tol = tol * 1e-3;
        const double u = detail::blur_of_interval(kr, a, b, x, inner_tol);
        const double v = detail::blur_of_interval(ks, 0.0, a, x, inner_tol) +
                         detail::blur_of_interval(ks, b, 1.0, x, inner_tol);
        return u * v;
    };
    return -2.0 * integrate_split(f, a - rho, b + rho, detail::cross_splits(rho, sigma, {a, b}), tol);
}

inline double cross_term_domain_quad(double rho, double sigma, double a, double len, double tol = 1e-8) {
    check_cross_geometry(rho, sigma, a, len);
    const Kernel kr = Kernel::hat(rho), ks = Kernel::hat(sigma);
    const double b = a + len;
    auto f = [&](double x) {
        const double inner_tol = tol * 1e-3;
        return detail::blur_of_interval(kr, a, b, x, inner_tol) *
               detail::blur_of_interval(ks, 0.0, 1.0, x, inner_tol);
    };
    return -2.0 * integrate_split(f, a - rho, b + rho, detail::cross_splits(rho, sigma, {a, b}), tol);
}

inline double cross_term_interior_quad(double rho, double sigma, double a, double len, double tol = 1e-8) {
    check_cross_geometry(rho, sigma, a, len);
    const Kernel kr = Kernel::hat(rho), ks = Kernel::hat(sigma);
    const double b = a + len;
    auto f = [&](double x) {
        const double inner_tol = tol * 1e-3;
        return detail::blur_of_interval(kr, a, b, x, inner_tol) *
               detail::blur_of_interval(ks, a, b, x, inner_tol);
    };
    return 2.0 * integrate_split(f, a - rho, b + rho, detail::cross_splits(rho, sigma, {a, b}), tol);
}

inline double box_blur_norm_sq_quad(double len, double s, double tol = 1e-8) {
    const Kernel k = Kernel::hat(s);
    auto f = [&](double x) {
        const double u = detail::blur_of_interval(k, 0.0, len, x, tol * 1e-3);
        return u * u;
    };
    return integrate_split(f, -s, len + s, {0.0, s, len - s, len, 2.0 * s, len - 2.0 * s}, tol);
}

} // namespace tvbar
