#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "tvbar/barcode.hpp"
#include "tvbar/convolve.hpp"
#include "tvbar/errors.hpp"
#include "tvbar/poly.hpp"
#include "tvbar/signal.hpp"

namespace tvbar {

// F1: compare u itself to the observation. F2: re-blur u with the same hat
// radius sigma. F3: re-blur with an independent hat radius rho. F1 and F2
// are the rho = 0 and rho = sigma specialisations of F3.
enum class Functional { F1, F2, F3 };

inline const char* to_string(Functional f) {
    switch (f) {
    case Functional::F1:
        return "F1";
    case Functional::F2:
        return "F2";
    case Functional::F3:
        return "F3";
    }
    return "?";
}

inline Functional functional_from_string(const std::string& s) {
    if (s == "F1" || s == "f1") return Functional::F1;
    if (s == "F2" || s == "f2") return Functional::F2;
    if (s == "F3" || s == "f3") return Functional::F3;
    throw Error("unknown functional: " + s);
}

struct EnergyParams {
    Functional functional = Functional::F2;
    double lambda = 1.0;
    double sigma = 0.05; // blur radius behind the observation
    double rho = 0.05;   // deblur radius: 0 for F1, sigma for F2

    static EnergyParams f1(double lambda, double sigma) { return {Functional::F1, lambda, sigma, 0.0}; }
    static EnergyParams f2(double lambda, double sigma) { return {Functional::F2, lambda, sigma, sigma}; }
    static EnergyParams f3(double lambda, double sigma, double rho) { return {Functional::F3, lambda, sigma, rho}; }

    double deblur_radius() const { return functional == Functional::F1 ? 0.0 : rho; }

    void validate() const {
        if (!(lambda > 0.0)) throw Error("lambda must be positive");
        if (!(sigma > 0.0)) throw Error("sigma must be positive");
        if (functional == Functional::F1 && rho != 0.0) throw Error("F1 requires rho = 0");
        if (functional == Functional::F2 && rho != sigma) throw Error("F2 requires rho = sigma");
        if (functional == Functional::F3 && !(rho > 0.0)) throw Error("F3 requires rho > 0");
    }

    EnergyParams with_lambda(double l) const {
        EnergyParams p = *this;
        p.lambda = l;
        return p;
    }
};

struct EnergyReport {
    std::size_t tv = 0;
    double fidelity = 0.0;
    double total = 0.0;
};

// u put through the deblur kernel of the functional (identity for F1)
inline PiecewisePoly deblur_side(const BarCode& u, const EnergyParams& p) {
    if (u.empty()) return {};
    const double r = p.deblur_radius();
    return r > 0.0 ? convolve_hat(u.indicator(), r) : u.indicator();
}

// TV + lambda * squared misfit. Exact piecewise integration when the
// observation is polynomial, trapezoid on the observation grid otherwise.
inline EnergyReport evaluate(const BarCode& u, const Signal& f, const EnergyParams& p) {
    p.validate();
    EnergyReport r;
    r.tv = u.total_variation();
    const PiecewisePoly side = deblur_side(u, p);
    if (f.is_poly()) {
        PiecewisePoly diff = PiecewisePoly::merge(side, f.poly(),
                                                  [](const Polynomial& a, const Polynomial& b) { return a - b; });
        r.fidelity = l2sq(diff);
    } else {
        const GridSignal& g = f.grid();
        if (g.samples.size() < 2) throw IncompatibleSignals("observation grid has fewer than two samples");
        if (!side.empty() && (side.lo() < g.x0 - 1e-12 || side.hi() > g.x_last() + 1e-12))
            throw IncompatibleSignals("observation grid does not cover the candidate's blurred support");
        double s = 0.0;
        for (std::size_t i = 0; i < g.samples.size(); ++i) {
            const double d = side(g.x(i)) - g.samples[i];
            const double w = (i == 0 || i + 1 == g.samples.size()) ? 0.5 : 1.0;
            s += w * d * d;
        }
        r.fidelity = s * g.h;
    }
    r.total = static_cast<double>(r.tv) + p.lambda * r.fidelity;
    return r;
}

// Dual of the TV seminorm: half the oscillation of the running integral.
// sup F - inf F is scanned over knots plus the interior zeros of f, which
// are the only candidates for extrema of F.
inline double dual_norm(const Signal& f) {
    if (f.is_grid()) {
        const GridSignal& g = f.grid();
        double run = 0.0, lo = 0.0, hi = 0.0;
        for (std::size_t i = 0; i + 1 < g.samples.size(); ++i) {
            run += 0.5 * (g.samples[i] + g.samples[i + 1]) * g.h;
            lo = std::min(lo, run);
            hi = std::max(hi, run);
        }
        return 0.5 * (hi - lo);
    }
    const PiecewisePoly& p = f.poly();
    if (p.empty()) return 0.0;
    GlobalPiecewise F = p.antiderivative_global();
    double lo = 0.0, hi = 0.0;
    auto consider = [&](double x) {
        const double v = F(x);
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    };
    for (double k : p.knots()) consider(k);
    const int ns = 64;
    for (std::size_t i = 0; i < p.pieces().size(); ++i) {
        const Polynomial& piece = p.pieces()[i];
        const double a = p.knots()[i], b = p.knots()[i + 1];
        double px = a, pv = piece(a);
        for (int s = 1; s <= ns; ++s) {
            const double x = a + (b - a) * static_cast<double>(s) / ns;
            const double v = piece(x);
            if ((pv > 0.0 && v < 0.0) || (pv < 0.0 && v > 0.0))
                consider(bisect([&](double t) { return piece(t); }, px, x));
            px = x;
            pv = v;
        }
    }
    return 0.5 * (hi - lo);
}

struct TrivialThresholds {
    double lambda_star = 0.0; // below this the empty code is the minimizer
    double lambda0 = 0.0;     // where the empty code stops beating z itself
};

inline TrivialThresholds trivial_thresholds(const BarCode& z, const EnergyParams& p) {
    p.validate();
    if (z.empty()) throw EmptyBarCode("thresholds need a nonempty code");
    const PiecewisePoly f = convolve_hat(z.indicator(), p.sigma);
    const double r = p.deblur_radius();
    const PiecewisePoly g = r > 0.0 ? convolve_hat(f, r) : f;
    TrivialThresholds t;
    t.lambda_star = 1.0 / (2.0 * dual_norm(Signal(g)));
    t.lambda0 = 2.0 / l2sq(f);
    if (!(t.lambda_star < t.lambda0)) throw Error("threshold ordering violated");
    return t;
}

} // namespace tvbar
