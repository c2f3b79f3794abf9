#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "tvbar/barcode.hpp"
#include "tvbar/errors.hpp"
#include "tvbar/kernel.hpp"
#include "tvbar/rng.hpp"
#include "tvbar/signal.hpp"

namespace tvbar {

struct NoiseConfig {
    double amplitude = 0.1;
    std::uint64_t seed = 0;
};

// Piecewise-constant noise: the grid is cut into blocks of 25 samples
// (400 samples per omega, 16 blocks) and each block gets one uniform
// draw from [-a, a].
inline GridSignal add_noise(const GridSignal& f, const NoiseConfig& cfg, double omega) {
    if (!(omega > 0.0)) throw Error("omega must be positive");
    if (cfg.amplitude < 0.0) throw Error("noise amplitude must be nonnegative");
    const double h = omega / 400.0;
    GridSignal g = f;
    if (std::abs(f.h - h) > 1e-12 * h) {
        const std::size_t n = static_cast<std::size_t>(std::llround((f.x_last() - f.x0) / h)) + 1;
        g.x0 = f.x0;
        g.h = h;
        g.samples.resize(n);
        for (std::size_t i = 0; i < n; ++i) g.samples[i] = f(g.x(i));
    }
    if (cfg.amplitude == 0.0) return g;
    Rng rng(cfg.seed);
    double level = 0.0;
    for (std::size_t i = 0; i < g.samples.size(); ++i) {
        if (i % 25 == 0) level = rng.symmetric(cfg.amplitude);
        g.samples[i] += level;
    }
    return g;
}

struct SolverConfig {
    double epsilon = 0.0004;
    double lambda = 1.0;
    std::optional<Kernel> deblur_kernel; // empty: compare u to f directly
    double dt = 0.0;                     // <= 0 picks the auto rule
    long max_steps = 150000;
    double steady_tol = 1e-8; // sup-norm change per step
    enum class Init { Zero, Half } init = Init::Zero;
    double h = 2.5e-5;
    double pad = 0.1; // domain is [-pad, 1+pad]

    double dt_auto() const { return 0.2 * std::min(h * h / (2.0 * epsilon), epsilon); }
    double time_step() const { return dt > 0.0 ? dt : dt_auto(); }

    void validate() const {
        if (!(epsilon > 0.0)) throw Error("epsilon must be positive");
        if (!(lambda > 0.0)) throw Error("lambda must be positive");
        if (!(h > 0.0)) throw Error("grid spacing must be positive");
        if (!(steady_tol > 0.0)) throw Error("steady_tol must be positive");
        if (max_steps < 1) throw Error("max_steps must be positive");
        if (deblur_kernel && pad < deblur_kernel->size() - 1e-12)
            throw Error("pad must cover the deblur kernel radius");
    }
};

struct SolveResult {
    GridSignal field;
    BarCode code;
    long steps = 0;
    bool converged = false;
    double residual = 0.0; // sup-norm of the right-hand side at termination
    double final_energy = 0.0;
    std::vector<std::pair<long, double>> energy_checkpoints; // every 100 steps
};

namespace detail {

// Discrete convolution with unit-mass sampled kernel. A hat whose radius is
// an integer number of cells factors into two m-tap box windows; the sampled
// triangle weights (m-|j|)/m^2 are exactly that composition, so the fast
// path computes the same sum in O(n).
struct DiscreteKernel {
    bool exact_hat = false;
    int m = 0;
    std::vector<double> taps; // general path, odd length, centered

    static DiscreteKernel make(const Kernel& k, double h) {
        DiscreteKernel d;
        const double r = k.size();
        if (!(r > 0.0) || !std::isfinite(r)) throw InvalidKernel("deblur kernel needs finite positive support");
        const double cells = r / h;
        const double rounded = std::round(cells);
        if (k.kind() == KernelKind::Hat && rounded >= 1.0 && std::abs(cells - rounded) <= 1e-9 * cells) {
            d.exact_hat = true;
            d.m = static_cast<int>(rounded);
            return d;
        }
        const int half = static_cast<int>(std::ceil(cells - 1e-12));
        d.taps.resize(static_cast<std::size_t>(2 * half + 1));
        double mass = 0.0;
        for (int j = -half; j <= half; ++j) {
            const double v = k.evaluate(j * h);
            d.taps[static_cast<std::size_t>(j + half)] = v;
            mass += v;
        }
        if (!(mass > 0.0)) throw InvalidKernel("sampled kernel has no mass on this grid");
        for (double& t : d.taps) t /= mass; // discrete mass 1: gradient consistency
        return d;
    }

    int half_width() const { return exact_hat ? m : static_cast<int>(taps.size() / 2); }

    void apply(const std::vector<double>& src, std::vector<double>& dst, std::vector<double>& scratch) const {
        const std::size_t n = src.size();
        dst.assign(n, 0.0);
        if (exact_hat) {
            scratch.assign(n + 1, 0.0);
            for (std::size_t i = 0; i < n; ++i) scratch[i + 1] = scratch[i] + src[i];
            auto box = [&](std::ptrdiff_t t) {
                const std::ptrdiff_t hi2 = std::clamp<std::ptrdiff_t>(t + 1, 0, static_cast<std::ptrdiff_t>(n));
                const std::ptrdiff_t lo2 = std::clamp<std::ptrdiff_t>(t + 1 - m, 0, static_cast<std::ptrdiff_t>(n));
                return scratch[static_cast<std::size_t>(hi2)] - scratch[static_cast<std::size_t>(lo2)];
            };
            // first-pass windows end at t up to n+m-2: windows past the array
            // end still overlap it, so the tail cannot be dropped
            const std::size_t ext = n + static_cast<std::size_t>(m) - 1;
            std::vector<double> prefix2(ext + 1, 0.0);
            for (std::size_t t = 0; t < ext; ++t) prefix2[t + 1] = prefix2[t] + box(static_cast<std::ptrdiff_t>(t));
            const double inv = 1.0 / (static_cast<double>(m) * m);
            for (std::size_t i = 0; i < n; ++i)
                dst[i] = (prefix2[i + static_cast<std::size_t>(m)] - prefix2[i]) * inv;
            return;
        }
        const int half = half_width();
        for (std::size_t i = 0; i < n; ++i) {
            double s = 0.0;
            const std::ptrdiff_t lo2 = std::max<std::ptrdiff_t>(0, static_cast<std::ptrdiff_t>(i) - half);
            const std::ptrdiff_t hi2 =
                std::min<std::ptrdiff_t>(static_cast<std::ptrdiff_t>(n) - 1, static_cast<std::ptrdiff_t>(i) + half);
            for (std::ptrdiff_t k = lo2; k <= hi2; ++k)
                s += taps[static_cast<std::size_t>(half + (static_cast<std::ptrdiff_t>(i) - k))] *
                     src[static_cast<std::size_t>(k)];
            dst[i] = s;
        }
    }
};

inline double double_well(double u) {
    const double v = u * (1.0 - u);
    return 0.5 * v * v;
}

inline double double_well_prime(double u) { return u * (1.0 - u) * (1.0 - 2.0 * u); }

} // namespace detail

// Lyapunov functional of the flow: h * sum of eps*|u'|^2 + W(u)/eps
// + lambda*(K*u - f)^2. The Euler step below is exactly -(dt/h) times its
// gradient, so descent is a property of the scheme, not an approximation.
inline double phase_field_energy(const std::vector<double>& u, const std::vector<double>& conv_minus_f,
                                 double h, double epsilon, double lambda) {
    double e = 0.0;
    for (std::size_t i = 0; i + 1 < u.size(); ++i) {
        const double du = (u[i + 1] - u[i]) / h;
        e += epsilon * du * du;
    }
    for (double v : u) e += detail::double_well(v) / epsilon;
    for (double v : conv_minus_f) e += lambda * v * v;
    return e * h;
}

// Half-level crossings with linear interpolation; crossings closer than 2h
// are chatter and get removed in pairs, which preserves parity.
inline BarCode threshold_half(const GridSignal& field) {
    std::vector<double> cross;
    const std::vector<double>& u = field.samples;
    for (std::size_t i = 0; i + 1 < u.size(); ++i) {
        const double a = u[i] - 0.5, b = u[i + 1] - 0.5;
        if (a == 0.0 && b == 0.0) continue;
        if ((a < 0.0 && b >= 0.0) || (a >= 0.0 && b < 0.0))
            cross.push_back(field.x(i) + field.h * a / (a - b));
    }
    bool changed = true;
    while (changed && cross.size() >= 2) {
        changed = false;
        for (std::size_t i = 0; i + 1 < cross.size(); ++i)
            if (cross[i + 1] - cross[i] < 2.0 * field.h) {
                cross.erase(cross.begin() + static_cast<std::ptrdiff_t>(i),
                            cross.begin() + static_cast<std::ptrdiff_t>(i + 2));
                changed = true;
                break;
            }
    }
    if (cross.size() % 2 != 0) cross.pop_back();
    for (double& c : cross) c = std::clamp(c, 0.0, 1.0);
    std::vector<double> clean;
    for (std::size_t i = 0; i + 1 < cross.size(); i += 2)
        if (cross[i + 1] - cross[i] >= 1e-9) {
            clean.push_back(cross[i]);
            clean.push_back(cross[i + 1]);
        }
    return BarCode(clean);
}

// Explicit Euler on u_t = 2 eps u_xx - W'(u)/eps - 2 lambda K*(K*u - f),
// homogeneous Dirichlet on [-pad, 1+pad].
inline SolveResult deblur(const Signal& f, const SolverConfig& cfg) {
    cfg.validate();
    const double h = cfg.h;
    const std::size_t n = static_cast<std::size_t>(std::llround((1.0 + 2.0 * cfg.pad) / h)) + 1;
    const double x0 = -cfg.pad;

    std::vector<double> fs(n);
    for (std::size_t i = 0; i < n; ++i) fs[i] = f(x0 + static_cast<double>(i) * h);

    std::optional<detail::DiscreteKernel> K;
    if (cfg.deblur_kernel) K = detail::DiscreteKernel::make(*cfg.deblur_kernel, h);

    std::vector<double> u(n, cfg.init == SolverConfig::Init::Half ? 0.5 : 0.0);
    u.front() = 0.0;
    u.back() = 0.0;

    const double dt = cfg.time_step();
    const double eps = cfg.epsilon;
    const double lam = cfg.lambda;

    std::vector<double> conv(n), resid(n), force(n), scratch;
    std::vector<double> unew(n, 0.0);

    auto compute_force = [&]() {
        // force = 2 lambda K*(K*u - f), or 2 lambda (u - f) without a kernel
        if (K) {
            K->apply(u, conv, scratch);
            for (std::size_t i = 0; i < n; ++i) resid[i] = conv[i] - fs[i];
            K->apply(resid, force, scratch);
            for (std::size_t i = 0; i < n; ++i) force[i] *= 2.0 * lam;
        } else {
            for (std::size_t i = 0; i < n; ++i) {
                resid[i] = u[i] - fs[i];
                force[i] = 2.0 * lam * resid[i];
            }
        }
    };

    SolveResult out;
    auto checkpoint = [&](long step) {
        compute_force(); // refresh resid for the energy
        out.energy_checkpoints.emplace_back(step, phase_field_energy(u, resid, h, eps, lam));
    };
    checkpoint(0);

    long step = 0;
    bool converged = false;
    for (; step < cfg.max_steps; ++step) {
        compute_force();
        double sup_change = 0.0;
        double sup_u = 0.0;
        for (std::size_t i = 1; i + 1 < n; ++i) {
            const double lap = (u[i + 1] - 2.0 * u[i] + u[i - 1]) / (h * h);
            const double rhs = 2.0 * eps * lap - detail::double_well_prime(u[i]) / eps - force[i];
            unew[i] = u[i] + dt * rhs;
            sup_change = std::max(sup_change, std::abs(dt * rhs));
            sup_u = std::max(sup_u, std::abs(unew[i]));
        }
        u.swap(unew);
        if (sup_u > 10.0) throw Diverged("phase field exceeded |u| = 10");
        if ((step + 1) % 100 == 0) checkpoint(step + 1);
        if (sup_change < cfg.steady_tol) {
            converged = true;
            ++step;
            break;
        }
    }

    compute_force();
    double res = 0.0;
    for (std::size_t i = 1; i + 1 < n; ++i) {
        const double lap = (u[i + 1] - 2.0 * u[i] + u[i - 1]) / (h * h);
        res = std::max(res, std::abs(2.0 * eps * lap - detail::double_well_prime(u[i]) / eps - force[i]));
    }
    out.residual = res;
    out.final_energy = phase_field_energy(u, resid, h, eps, lam);
    out.steps = step;
    out.converged = converged;
    out.field.x0 = x0;
    out.field.h = h;
    out.field.samples = std::move(u);
    out.code = threshold_half(out.field);
    return out;
}

} // namespace tvbar
