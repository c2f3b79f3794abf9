#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "tvbar/errors.hpp"
#include "tvbar/poly.hpp"
#include "tvbar/rng.hpp"

namespace tvbar {

// Two-valued clean code on [0,1]: u = 1 exactly on [t0,t1] u [t2,t3] u ...,
// 0 elsewhere. The sorted jump positions t_i are the interfaces; the count
// is even and the value right after t0 is always 1.
class BarCode {
public:
    static constexpr double kMinGap = 1e-12;

    BarCode() = default; // empty code, u == 0

    explicit BarCode(std::vector<double> interfaces) : t_(std::move(interfaces)) {
        if (t_.size() % 2 != 0) throw InvalidBarCode("interface count must be even");
        for (std::size_t i = 0; i < t_.size(); ++i) {
            if (!(t_[i] >= 0.0 && t_[i] <= 1.0)) throw InvalidBarCode("interface outside [0,1]");
            if (i > 0 && !(t_[i] - t_[i - 1] >= kMinGap))
                throw InvalidBarCode("interfaces closer than 1e-12 (or unsorted)");
        }
    }

    bool empty() const { return t_.empty(); }
    std::size_t bars() const { return t_.size() / 2; }
    const std::vector<double>& interfaces() const { return t_; }
    std::size_t total_variation() const { return t_.size(); }

    // parity convention: the first interface always jumps up to a bar
    bool starts_with_bar() const { return !t_.empty(); }

    double value(double x) const {
        for (std::size_t b = 0; b < bars(); ++b)
            if (x >= t_[2 * b] && x <= t_[2 * b + 1]) return 1.0;
        return 0.0;
    }

    std::vector<std::pair<double, double>> bar_intervals() const {
        std::vector<std::pair<double, double>> v;
        v.reserve(bars());
        for (std::size_t b = 0; b < bars(); ++b) v.emplace_back(t_[2 * b], t_[2 * b + 1]);
        return v;
    }

    double mass() const {
        double m = 0.0;
        for (std::size_t b = 0; b < bars(); ++b) m += t_[2 * b + 1] - t_[2 * b];
        return m;
    }

    // Narrowest bar or internal space. Spaces before the first and after the
    // last bar do not count.
    double x_dimension() const {
        if (empty()) throw EmptyBarCode("x_dimension of the empty code");
        double m = t_[1] - t_[0];
        for (std::size_t i = 1; i < t_.size(); ++i) m = std::min(m, t_[i] - t_[i - 1]);
        return m;
    }

    // indicator as an exact piecewise-constant polynomial
    PiecewisePoly indicator() const {
        if (empty()) return {};
        std::vector<Polynomial> ps;
        ps.reserve(t_.size() - 1);
        for (std::size_t i = 0; i + 1 < t_.size(); ++i)
            ps.push_back(i % 2 == 0 ? Polynomial::constant(1.0) : Polynomial());
        return PiecewisePoly(t_, std::move(ps));
    }

    friend bool operator==(const BarCode& a, const BarCode& b) { return a.t_ == b.t_; }
    friend bool operator!=(const BarCode& a, const BarCode& b) { return !(a == b); }
    friend bool operator<(const BarCode& a, const BarCode& b) {
        return std::lexicographical_compare(a.t_.begin(), a.t_.end(), b.t_.begin(), b.t_.end());
    }

private:
    std::vector<double> t_;
};

// Endpoint class: first is the value of u just right of 0, second just left
// of 1. (1,j) means the code touches 0 with a bar, (0,j) means it does not.
using EndpointClass = std::pair<int, int>;

inline bool membership(const BarCode& code, double omega, std::optional<EndpointClass> endpoints = {}) {
    if (endpoints) {
        auto [i, j] = *endpoints;
        bool at0 = !code.empty() && code.interfaces().front() == 0.0;
        bool at1 = !code.empty() && code.interfaces().back() == 1.0;
        if (at0 != (i == 1)) return false;
        if (at1 != (j == 1)) return false;
    }
    if (code.empty()) return true;
    return code.x_dimension() >= omega;
}

struct GeneratorConfig {
    double omega = 0.05;
    int max_bars = 10;
    std::uint64_t seed = 0;
    std::optional<EndpointClass> endpoints; // unset: free ends, leading space drawn anyway
};

// Sequential placement, widths uniform in [omega, 3*omega], alternating bar
// and space, stop before exceeding the domain. Deterministic under seed.
inline BarCode generate(const GeneratorConfig& cfg) {
    if (cfg.omega <= 0.0) throw InfeasibleXDimension("omega must be positive");
    if (cfg.max_bars < 1) throw InfeasibleXDimension("max_bars must be >= 1");
    if (cfg.omega * (2.0 * cfg.max_bars - 1.0) > 1.0)
        throw InfeasibleXDimension("omega too large for requested bar count");

    const int ei = cfg.endpoints ? cfg.endpoints->first : -1;
    const int ej = cfg.endpoints ? cfg.endpoints->second : -1;
    const double cap = (ej == 0) ? 1.0 - cfg.omega : 1.0;
    Rng rng(cfg.seed);

    double left = 0.0;
    const double left_max = cap - cfg.omega; // room for at least one bar
    if (ei == 1) {
        left = 0.0;
    } else if (left_max >= cfg.omega) {
        left = rng.uniform(cfg.omega, std::min(3.0 * cfg.omega, left_max));
    } else if (ei == 0) {
        throw InfeasibleXDimension("no room for a leading space plus one bar");
    } else if (left_max < 0.0) {
        throw InfeasibleXDimension("no room for a bar inside the trailing margin");
    }

    std::vector<double> t;
    double pos = left;
    for (int b = 0; b < cfg.max_bars; ++b) {
        const double room = cap - pos;
        if (room < cfg.omega) break;
        double w = std::min(rng.uniform(cfg.omega, 3.0 * cfg.omega), room);
        t.push_back(pos);
        t.push_back(pos + w);
        pos += w + rng.uniform(cfg.omega, 3.0 * cfg.omega);
    }
    if (t.empty()) throw InfeasibleXDimension("placement produced no bars");
    if (ej == 1) t.back() = 1.0;
    return BarCode(std::move(t));
}

} // namespace tvbar
