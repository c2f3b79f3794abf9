#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "tvbar/errors.hpp"
#include "tvbar/quadrature.hpp"

namespace tvbar {

enum class KernelKind { Hat, Gaussian, Tabulated };

// Symmetric nonnegative blur kernel with unit mass. "size" is the natural
// parameter of the family (half width for hat, standard deviation for
// Gaussian, profile span for tabulated); the support radius may differ
// (Gaussian truncation).
class Kernel {
public:
    static Kernel hat(double size) {
        if (size <= 0.0) throw InvalidKernel("hat: size must be positive");
        Kernel k;
        k.kind_ = KernelKind::Hat;
        k.size_ = size;
        return k;
    }

    // trunc_mult <= 0 means untruncated (not compactly supported). Truncated
    // kernels are renormalized to unit mass.
    static Kernel gaussian(double stddev, double trunc_mult = 4.0) {
        if (stddev <= 0.0) throw InvalidKernel("gaussian: stddev must be positive");
        Kernel k;
        k.kind_ = KernelKind::Gaussian;
        k.size_ = stddev;
        k.trunc_ = trunc_mult > 0.0 ? trunc_mult : 0.0;
        if (k.trunc_ > 0.0) {
            k.gauss_norm_ = 1.0 / std::erf(k.trunc_ / std::sqrt(2.0));
        }
        return k;
    }

    // profile samples (x, p) with x ascending in [0, size]; interpolated
    // linearly, renormalized so the one-sided mass is exactly 1/2
    static Kernel tabulated(double size, std::vector<std::pair<double, double>> profile) {
        if (size <= 0.0) throw InvalidKernel("tabulated: size must be positive");
        if (profile.size() < 2) throw InvalidKernel("tabulated: need at least two profile samples");
        Kernel k;
        k.kind_ = KernelKind::Tabulated;
        k.size_ = size;
        k.profile_ = std::move(profile);
        if (k.profile_.front().first != 0.0) throw InvalidKernel("tabulated: profile must start at x = 0");
        for (std::size_t i = 0; i < k.profile_.size(); ++i) {
            auto [x, p] = k.profile_[i];
            if (p < 0.0) throw InvalidKernel("tabulated: negative profile value");
            if (x < 0.0 || x > size) throw InvalidKernel("tabulated: sample outside [0, size]");
            if (i > 0 && !(x > k.profile_[i - 1].first)) throw InvalidKernel("tabulated: x not increasing");
        }
        if (k.profile_.back().first != size) throw InvalidKernel("tabulated: profile must end at x = size");
        // exact trapezoid mass of the linear interpolant, then rescale
        double m = 0.0;
        for (std::size_t i = 0; i + 1 < k.profile_.size(); ++i)
            m += 0.5 * (k.profile_[i].second + k.profile_[i + 1].second) *
                 (k.profile_[i + 1].first - k.profile_[i].first);
        if (m <= 0.0) throw InvalidKernel("tabulated: zero mass");
        const double scale = 0.5 / m;
        for (auto& s : k.profile_) s.second *= scale;
        k.cum_.assign(k.profile_.size(), 0.0);
        for (std::size_t i = 0; i + 1 < k.profile_.size(); ++i)
            k.cum_[i + 1] = k.cum_[i] + 0.5 * (k.profile_[i].second + k.profile_[i + 1].second) *
                                            (k.profile_[i + 1].first - k.profile_[i].first);
        return k;
    }

    KernelKind kind() const { return kind_; }
    double size() const { return size_; }
    double truncation() const { return trunc_; }
    const std::vector<std::pair<double, double>>& profile_samples() const { return profile_; }

    double support_radius() const {
        switch (kind_) {
        case KernelKind::Hat:
            return size_;
        case KernelKind::Gaussian:
            return trunc_ > 0.0 ? trunc_ * size_ : std::numeric_limits<double>::infinity();
        case KernelKind::Tabulated:
            return size_;
        }
        return 0.0;
    }

    // phi(x); zero for |x| >= support radius
    double evaluate(double x) const {
        const double ax = std::abs(x);
        switch (kind_) {
        case KernelKind::Hat:
            return ax >= size_ ? 0.0 : (1.0 - ax / size_) / size_;
        case KernelKind::Gaussian: {
            const double r = support_radius();
            if (ax >= r) return 0.0;
            static const double inv_sqrt2pi = 0.3989422804014327;
            return gauss_norm_ * inv_sqrt2pi / size_ * std::exp(-0.5 * (ax / size_) * (ax / size_));
        }
        case KernelKind::Tabulated: {
            if (ax >= size_) return 0.0;
            auto it = std::upper_bound(profile_.begin(), profile_.end(), ax,
                                       [](double v, const std::pair<double, double>& s) { return v < s.first; });
            std::size_t i = static_cast<std::size_t>(it - profile_.begin());
            if (i == 0) return profile_.front().second;
            const auto [x0, p0] = profile_[i - 1];
            const auto [x1, p1] = profile_[i];
            return p0 + (p1 - p0) * (ax - x0) / (x1 - x0);
        }
        }
        return 0.0;
    }

    // exact running integral from -infinity
    double cdf(double t) const {
        switch (kind_) {
        case KernelKind::Hat: {
            if (t <= -size_) return 0.0;
            if (t >= size_) return 1.0;
            if (t <= 0.0) {
                const double u = t + size_;
                return u * u / (2.0 * size_ * size_);
            }
            const double u = size_ - t;
            return 1.0 - u * u / (2.0 * size_ * size_);
        }
        case KernelKind::Gaussian: {
            const double r = support_radius();
            auto std_cdf = [](double z) { return 0.5 * (1.0 + std::erf(z / std::sqrt(2.0))); };
            if (trunc_ <= 0.0) return std_cdf(t / size_);
            if (t <= -r) return 0.0;
            if (t >= r) return 1.0;
            return gauss_norm_ * (std_cdf(t / size_) - std_cdf(-trunc_));
        }
        case KernelKind::Tabulated: {
            const double at = std::abs(t);
            double c;
            if (at >= size_) {
                c = 0.5;
            } else {
                auto it = std::upper_bound(profile_.begin(), profile_.end(), at,
                                           [](double v, const std::pair<double, double>& s) { return v < s.first; });
                std::size_t i = static_cast<std::size_t>(it - profile_.begin());
                if (i == 0) i = 1;
                const auto [x0, p0] = profile_[i - 1];
                const auto [x1, p1] = profile_[i];
                const double d = at - x0;
                const double slope = (p1 - p0) / (x1 - x0);
                c = cum_[i - 1] + p0 * d + 0.5 * slope * d * d;
            }
            return t >= 0.0 ? 0.5 + c : 0.5 - c;
        }
        }
        return 0.0;
    }

    // one-sided profile p(x) = phi(x) for x in [0, support radius)
    double profile(double x) const { return evaluate(x); }

    // Scaling family through this kernel: p(x, tau) = (R/tau) p(R x / tau)
    // with R the support radius, so the tau member has support [0, tau] and
    // one-sided mass 1/2. Hat and Gaussian scale this way natively.
    double profile_tau(double x, double tau) const {
        const double r = support_radius();
        if (!std::isfinite(r)) throw InvalidKernel("profile_tau: unbounded support");
        if (tau <= 0.0) throw InvalidKernel("profile_tau: tau must be positive");
        return (r / tau) * evaluate(r * x / tau);
    }

    // d p(x, tau) / d tau; closed form for hat, central difference otherwise
    double dprofile_dtau(double x, double tau) const {
        if (kind_ == KernelKind::Hat) {
            if (x >= tau) return 0.0;
            return (-1.0 + 2.0 * x / tau) / (tau * tau);
        }
        const double d = 1e-5 * tau;
        return (profile_tau(x, tau + d) - profile_tau(x, tau - d)) / (2.0 * d);
    }

    bool has_analytic_dtau() const { return kind_ == KernelKind::Hat; }

    // kink positions of evaluate() on [0, support radius]
    std::vector<double> kinks() const {
        switch (kind_) {
        case KernelKind::Hat:
            return {0.0, size_};
        case KernelKind::Gaussian:
            return {0.0, support_radius()};
        case KernelKind::Tabulated: {
            std::vector<double> v;
            v.reserve(profile_.size());
            for (const auto& s : profile_) v.push_back(s.first);
            return v;
        }
        }
        return {};
    }

private:
    Kernel() = default;
    KernelKind kind_ = KernelKind::Hat;
    double size_ = 1.0;
    double trunc_ = 0.0;       // Gaussian only; 0 = untruncated
    double gauss_norm_ = 1.0;  // truncation renormalization
    std::vector<std::pair<double, double>> profile_; // tabulated
    std::vector<double> cum_;                        // tabulated cumulative
};

// Admissibility for the blur class: symmetric, compactly supported,
// monotone nonincreasing one-sided profile, one-sided mass 1/2. All checks
// on a sampled grid with tolerance 1e-8.
inline bool check_class_K(const Kernel& k, int grid = 1001) {
    const double r = k.support_radius();
    if (!std::isfinite(r)) return false;
    const double tol = 1e-8;
    double peak = k.evaluate(0.0);
    if (!(peak > 0.0)) return false;
    double prev = peak;
    for (int i = 0; i < grid; ++i) {
        const double x = r * static_cast<double>(i) / static_cast<double>(grid - 1);
        const double px = k.evaluate(x);
        if (px < 0.0) return false;
        if (std::abs(px - k.evaluate(-x)) > tol * peak) return false;
        if (px > prev + tol * peak) return false;
        prev = px;
    }
    if (std::abs((k.cdf(r) - k.cdf(0.0)) - 0.5) > tol) return false;
    return true;
}

namespace detail {

// integration split points in y for integrands built from f(x-y), f(x+y)
// where f = cdf(t) - cdf(t-c) has kinks at the kernel kinks and their
// c-shifts
inline std::vector<double> j_y_splits(const Kernel& k, double tau, double x, double c) {
    const double r = k.support_radius();
    std::vector<double> fk;
    for (double kk : k.kinks()) {
        fk.push_back(kk);
        fk.push_back(-kk);
        fk.push_back(c + kk);
        fk.push_back(c - kk);
    }
    std::vector<double> sp;
    for (double m : fk) {
        sp.push_back(x - m);
        sp.push_back(m - x);
    }
    // kinks of the scaled tau profile
    for (double kk : k.kinks()) sp.push_back(kk * tau / r);
    return sp;
}

} // namespace detail

// J(sigma, tau, x, c) as the single integral of the tau-derivative profile
// against f(x-y) + f(x+y), f = blur of the indicator of [0, c]. The sigma
// role is played by the kernel itself.
inline double condition_J(const Kernel& k, double tau, double x, double c, double tol = 1e-11) {
    auto f = [&](double t) { return k.cdf(t) - k.cdf(t - c); };
    auto integrand = [&](double y) { return k.dprofile_dtau(y, tau) * (f(x - y) + f(x + y)); };
    return integrate_split(integrand, 0.0, tau, detail::j_y_splits(k, tau, x, c), tol);
}

// Same quantity via the literal double integral (no cdf shortcut); slower,
// used to cross-check condition_J.
inline double condition_J_direct(const Kernel& k, double tau, double x, double c, double tol = 1e-9) {
    auto inner = [&](double y) {
        std::vector<double> sp;
        for (double kk : k.kinks()) {
            sp.push_back(y - kk);
            sp.push_back(y + kk);
            sp.push_back(-y - kk);
            sp.push_back(-y + kk);
        }
        auto g = [&](double w) { return k.evaluate(y - w) + k.evaluate(y + w); };
        return integrate_split(g, x - c, x, sp, tol * 0.01);
    };
    auto outer = [&](double y) { return k.dprofile_dtau(y, tau) * inner(y); };
    return integrate_split(outer, 0.0, tau, detail::j_y_splits(k, tau, x, c), tol);
}

enum class JCondition { A, B, Neither, DirectGrid };

inline const char* to_string(JCondition c) {
    switch (c) {
    case JCondition::A:
        return "a";
    case JCondition::B:
        return "b";
    case JCondition::Neither:
        return "neither";
    case JCondition::DirectGrid:
        return "direct-grid";
    }
    return "?";
}

struct JGrid {
    int n_tau = 16;
    int n_c = 8;
    double c_lo_mult = 2.0;
    double c_hi_mult = 10.0;
    int n_x = 64;
    double quad_tol = 1e-11;
};

struct KernelAdmissibility {
    bool in_K = false;
    bool in_K3 = false;
    double worst_J = std::numeric_limits<double>::quiet_NaN();
    JCondition sufficient_condition = JCondition::Neither;
    std::vector<std::string> notes;
};

// Scans J over (tau, c) and, when the tau-derivative of the profile is
// monotone in x, uses the single worst x (0 for increasing, c/2 for
// decreasing) instead of an x grid. in_K3 additionally needs a continuous
// kernel and worst_J <= 1e-9.
inline KernelAdmissibility check_condition_J(const Kernel& k, const JGrid& grid = {}) {
    KernelAdmissibility adm;
    adm.in_K = check_class_K(k);
    const double r = k.support_radius();
    if (!std::isfinite(r)) {
        adm.notes.push_back("support is not compact; J scan skipped");
        return adm;
    }
    // continuity at the support edge (profiles are continuous inside by
    // construction; a jump can only sit at the edge)
    const double peak = k.evaluate(0.0);
    const bool continuous = std::abs(k.evaluate(r * (1.0 - 1e-9))) <= 1e-6 * peak;
    if (!continuous) {
        // an edge jump already excludes the kernel, and it makes the J
        // integrands spiky enough that the scan is numerically meaningless
        adm.notes.push_back("profile does not vanish at the support edge; J scan skipped");
        return adm;
    }
    if (!k.has_analytic_dtau()) {
        // finite-difference stability probe, reported only
        const double tau = 0.5 * r, xx = 0.25 * tau;
        const double d1 = k.dprofile_dtau(xx, tau);
        const double d = 1e-5 * tau;
        const double d2 = (k.profile_tau(xx, tau + 0.5 * d) - k.profile_tau(xx, tau - 0.5 * d)) / d;
        const double scale = std::max({1.0, std::abs(d1), std::abs(d2)});
        if (std::abs(d1 - d2) > 1e-4 * scale)
            adm.notes.push_back("tau derivative is finite-difference and looks unstable");
        else
            adm.notes.push_back("tau derivative is finite-difference (stable probe)");
    }

    // finite-difference tau derivatives carry ~1e-10 relative noise, so the
    // quadrature cannot be pushed to the analytic tolerance
    const double jtol = k.has_analytic_dtau() ? grid.quad_tol : std::max(grid.quad_tol, 1e-8);
    bool all_a = true, all_b = true, any_grid = false;
    double worst = -std::numeric_limits<double>::infinity();
    for (int it = 1; it <= grid.n_tau; ++it) {
        const double tau = r * static_cast<double>(it) / static_cast<double>(grid.n_tau);
        // monotonicity of dp/dtau in x over the support of the tau profile
        const int ns = 65;
        bool inc = true, dec = true;
        double prev = k.dprofile_dtau(0.0, tau), mag = std::abs(prev);
        std::vector<double> samples(1, prev);
        for (int i = 1; i < ns; ++i) {
            const double x = tau * (1.0 - 1e-12) * static_cast<double>(i) / static_cast<double>(ns - 1);
            const double v = k.dprofile_dtau(x, tau);
            samples.push_back(v);
            mag = std::max(mag, std::abs(v));
        }
        const double mtol = 1e-9 * std::max(1.0, mag);
        for (int i = 1; i < ns; ++i) {
            if (samples[i] < samples[i - 1] - mtol) inc = false;
            if (samples[i] > samples[i - 1] + mtol) dec = false;
        }
        for (int ic = 0; ic < grid.n_c; ++ic) {
            const double c = grid.n_c == 1 ? grid.c_lo_mult * r
                                           : grid.c_lo_mult * r +
                                                 (grid.c_hi_mult - grid.c_lo_mult) * r *
                                                     static_cast<double>(ic) / static_cast<double>(grid.n_c - 1);
            std::vector<double> xs;
            if (inc) {
                xs = {0.0};
            } else if (dec) {
                xs = {0.5 * c};
            } else {
                xs = linspace(0.0, c, grid.n_x);
                any_grid = true;
            }
            for (double x : xs) worst = std::max(worst, condition_J(k, tau, x, c, jtol));
        }
        if (!inc) all_a = false;
        if (!dec) all_b = false;
    }
    adm.worst_J = worst;
    if (any_grid)
        adm.sufficient_condition = JCondition::DirectGrid;
    else if (all_a)
        adm.sufficient_condition = JCondition::A;
    else if (all_b)
        adm.sufficient_condition = JCondition::B;
    else
        adm.sufficient_condition = JCondition::DirectGrid;
    adm.in_K3 = adm.in_K && continuous && worst <= 1e-9;
    return adm;
}

} // namespace tvbar
