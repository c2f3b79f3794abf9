#pragma once

#include <cmath>
#include <cstddef>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "tvbar/errors.hpp"
#include "tvbar/poly.hpp"

namespace tvbar {

// Uniformly sampled signal, zero outside the sampled range.
struct GridSignal {
    double x0 = 0.0;
    double h = 1.0;
    std::vector<double> samples;

    std::size_t size() const { return samples.size(); }
    double x(std::size_t i) const { return x0 + h * static_cast<double>(i); }
    double x_last() const { return samples.empty() ? x0 : x(samples.size() - 1); }

    double operator()(double xq) const {
        if (samples.empty()) return 0.0;
        const double u = (xq - x0) / h;
        if (u <= 0.0) return u == 0.0 ? samples.front() : 0.0;
        const double last = static_cast<double>(samples.size() - 1);
        if (u >= last) return u == last ? samples.back() : 0.0;
        const std::size_t i = static_cast<std::size_t>(u);
        const double f = u - static_cast<double>(i);
        return samples[i] * (1.0 - f) + samples[i + 1] * f;
    }

    double trapezoid() const {
        if (samples.size() < 2) return 0.0;
        double s = 0.0;
        for (double v : samples) s += v;
        s -= 0.5 * (samples.front() + samples.back());
        return s * h;
    }
};

// A 1D signal in one of two representations: exact piecewise polynomial or
// uniform grid samples. Provenance is a free-form label carried through
// pipelines for manifests and plots.
class Signal {
public:
    Signal() : data_(PiecewisePoly()) {}
    Signal(PiecewisePoly p, std::string provenance = "")
        : data_(std::move(p)), provenance_(std::move(provenance)) {}
    Signal(GridSignal g, std::string provenance = "")
        : data_(std::move(g)), provenance_(std::move(provenance)) {}

    bool is_poly() const { return std::holds_alternative<PiecewisePoly>(data_); }
    bool is_grid() const { return std::holds_alternative<GridSignal>(data_); }

    const PiecewisePoly& poly() const {
        if (!is_poly()) throw IncompatibleSignals("expected a piecewise-polynomial signal");
        return std::get<PiecewisePoly>(data_);
    }
    const GridSignal& grid() const {
        if (!is_grid()) throw IncompatibleSignals("expected a grid signal");
        return std::get<GridSignal>(data_);
    }

    const std::string& provenance() const { return provenance_; }
    void set_provenance(std::string p) { provenance_ = std::move(p); }

    double operator()(double x) const {
        if (is_poly()) return poly()(x);
        return grid()(x);
    }

    // support hull [lo, hi]; zero signal gives an empty hull
    std::pair<double, double> hull() const {
        if (is_poly()) {
            const auto& p = poly();
            if (p.empty()) return {0.0, 0.0};
            return {p.lo(), p.hi()};
        }
        const auto& g = grid();
        return {g.x0, g.x_last()};
    }

    // resample onto an explicit grid (exact evaluation for polynomials,
    // linear interpolation for grids, zero fill outside)
    GridSignal sampled(double x0, double h, std::size_t n) const {
        GridSignal out;
        out.x0 = x0;
        out.h = h;
        out.samples.resize(n);
        for (std::size_t i = 0; i < n; ++i) out.samples[i] = (*this)(x0 + h * static_cast<double>(i));
        return out;
    }

private:
    std::variant<PiecewisePoly, GridSignal> data_;
    std::string provenance_;
};

} // namespace tvbar
