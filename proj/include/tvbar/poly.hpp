#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <vector>

#include "tvbar/errors.hpp"

namespace tvbar {

// Dense polynomial, coefficients in ascending powers. Degrees stay small
// (convolutions of indicators with hat kernels never exceed degree eight
// after squaring), so no attempt at sparse or high-degree cleverness.
class Polynomial {
public:
    Polynomial() = default;
    Polynomial(std::initializer_list<double> c) : c_(c) { trim(); }
    explicit Polynomial(std::vector<double> c) : c_(std::move(c)) { trim(); }

    static Polynomial constant(double v) { return Polynomial{v}; }

    bool is_zero() const { return c_.empty(); }
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    const std::vector<double>& coeffs() const { return c_; }

    double operator()(double x) const {
        double r = 0.0;
        for (std::size_t i = c_.size(); i-- > 0;) r = r * x + c_[i];
        return r;
    }

    Polynomial derivative() const {
        if (c_.size() <= 1) return {};
        std::vector<double> d(c_.size() - 1);
        for (std::size_t i = 1; i < c_.size(); ++i) d[i - 1] = c_[i] * static_cast<double>(i);
        return Polynomial(std::move(d));
    }

    // antiderivative with zero constant term
    Polynomial antiderivative() const {
        if (c_.empty()) return {};
        std::vector<double> a(c_.size() + 1, 0.0);
        for (std::size_t i = 0; i < c_.size(); ++i) a[i + 1] = c_[i] / static_cast<double>(i + 1);
        return Polynomial(std::move(a));
    }

    // definite integral over [lo, hi], expanded around the midpoint: odd
    // powers drop out exactly, which avoids the cancellation of evaluating
    // a global antiderivative at two nearby large arguments
    double integral(double lo, double hi) const {
        if (c_.empty() || hi <= lo) return 0.0;
        const Polynomial q = shifted(0.5 * (lo + hi));
        const double w = 0.5 * (hi - lo), w2 = w * w;
        double s = 0.0, wp = w;
        for (std::size_t k = 0; k < q.c_.size(); k += 2) {
            s += q.c_[k] * (2.0 * wp / static_cast<double>(k + 1));
            wp *= w2;
        }
        return s;
    }

    // q with q(x) = p(x + s)
    Polynomial shifted(double s) const {
        if (c_.empty() || s == 0.0) return *this;
        const std::size_t n = c_.size();
        std::vector<double> q(n, 0.0);
        // binomial expansion; degree is tiny so the double loop is fine
        std::vector<double> spow(n, 1.0);
        for (std::size_t k = 1; k < n; ++k) spow[k] = spow[k - 1] * s;
        for (std::size_t i = 0; i < n; ++i) {
            double binom = 1.0; // C(i, j)
            for (std::size_t j = 0; j <= i; ++j) {
                q[j] += binom * c_[i] * spow[i - j];
                binom = binom * static_cast<double>(i - j) / static_cast<double>(j + 1);
            }
        }
        return Polynomial(std::move(q));
    }

    Polynomial& operator+=(const Polynomial& o) {
        if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), 0.0);
        for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
        trim();
        return *this;
    }
    Polynomial& operator-=(const Polynomial& o) {
        if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), 0.0);
        for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
        trim();
        return *this;
    }
    Polynomial& operator*=(double s) {
        for (double& v : c_) v *= s;
        if (s == 0.0) c_.clear();
        return *this;
    }

    friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
    friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
    friend Polynomial operator*(Polynomial a, double s) { return a *= s; }
    friend Polynomial operator*(double s, Polynomial a) { return a *= s; }

    friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
        if (a.c_.empty() || b.c_.empty()) return {};
        std::vector<double> r(a.c_.size() + b.c_.size() - 1, 0.0);
        for (std::size_t i = 0; i < a.c_.size(); ++i)
            for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
        return Polynomial(std::move(r));
    }

private:
    std::vector<double> c_;

    void trim() {
        while (!c_.empty() && c_.back() == 0.0) c_.pop_back();
    }
};

// Piecewise polynomial valid on the whole line: region[0] left of knots
// front, region[i+1] on [knots[i], knots[i+1]], region.back() right of
// knots back. Used for antiderivatives, which keep growing past the
// support of the integrand.
struct GlobalPiecewise {
    std::vector<double> knots;      // n+1 knots, sorted
    std::vector<Polynomial> region; // n+2 polynomials

    const Polynomial& poly_covering(double x) const {
        auto it = std::upper_bound(knots.begin(), knots.end(), x);
        return region[static_cast<std::size_t>(it - knots.begin())];
    }

    double operator()(double x) const { return poly_covering(x)(x); }

    // indefinite integral, continuous, anchored so F(knots.front()) = base
    GlobalPiecewise antiderivative(double base = 0.0) const {
        GlobalPiecewise F;
        F.knots = knots;
        F.region.reserve(region.size());
        Polynomial A = region.front().antiderivative();
        A += Polynomial::constant(base - A(knots.front()));
        F.region.push_back(std::move(A));
        // region[i] starts at knots[i-1]; glue for continuity there
        for (std::size_t i = 1; i < region.size(); ++i) {
            double kl = knots[i - 1];
            Polynomial P = region[i].antiderivative();
            P += Polynomial::constant(F.region[i - 1](kl) - P(kl));
            F.region.push_back(std::move(P));
        }
        return F;
    }
};

// Compactly supported piecewise polynomial: zero outside [knots front,
// knots back]. Knots strictly increasing; pieces[i] lives on
// [knots[i], knots[i+1]]. An empty object is the zero function.
class PiecewisePoly {
public:
    PiecewisePoly() = default;
    PiecewisePoly(std::vector<double> knots, std::vector<Polynomial> pieces)
        : knots_(std::move(knots)), pieces_(std::move(pieces)) {
        if (knots_.size() != pieces_.size() + 1 || pieces_.empty())
            throw Error("piecewise: knots/pieces size mismatch");
        for (std::size_t i = 1; i < knots_.size(); ++i)
            if (!(knots_[i] > knots_[i - 1])) throw Error("piecewise: knots not increasing");
    }

    bool empty() const { return pieces_.empty(); }
    double lo() const { return knots_.front(); }
    double hi() const { return knots_.back(); }
    const std::vector<double>& knots() const { return knots_; }
    const std::vector<Polynomial>& pieces() const { return pieces_; }

    double operator()(double x) const {
        if (empty() || x < knots_.front() || x > knots_.back()) return 0.0;
        return pieces_[piece_index(x)](x);
    }

    double integral() const {
        double s = 0.0;
        for (std::size_t i = 0; i < pieces_.size(); ++i) s += pieces_[i].integral(knots_[i], knots_[i + 1]);
        return s;
    }

    double integral(double a, double b) const {
        if (empty() || b <= a) return 0.0;
        a = std::max(a, lo());
        b = std::min(b, hi());
        if (b <= a) return 0.0;
        double s = 0.0;
        for (std::size_t i = 0; i < pieces_.size(); ++i) {
            double l = std::max(a, knots_[i]), r = std::min(b, knots_[i + 1]);
            if (r <= l) continue;
            s += pieces_[i].integral(l, r);
        }
        return s;
    }

    // derivative inside pieces; jump parts at knots are dropped
    PiecewisePoly derivative() const {
        if (empty()) return {};
        std::vector<Polynomial> d;
        d.reserve(pieces_.size());
        for (const auto& p : pieces_) d.push_back(p.derivative());
        return PiecewisePoly(knots_, std::move(d));
    }

    GlobalPiecewise as_global() const {
        GlobalPiecewise g;
        g.knots = knots_;
        g.region.reserve(pieces_.size() + 2);
        g.region.emplace_back(); // zero on the left
        for (const auto& p : pieces_) g.region.push_back(p);
        g.region.emplace_back(); // zero on the right
        return g;
    }

    // running integral F(x) = int_{-inf}^x, constant = total mass to the right
    GlobalPiecewise antiderivative_global() const { return as_global().antiderivative(0.0); }

    double max_abs_sampled(int per_piece = 64) const {
        double m = 0.0;
        for (std::size_t i = 0; i < pieces_.size(); ++i) {
            for (int s = 0; s <= per_piece; ++s) {
                double x = knots_[i] + (knots_[i + 1] - knots_[i]) * s / per_piece;
                m = std::max(m, std::abs(pieces_[i](x)));
            }
        }
        return m;
    }

    template <class Op>
    static PiecewisePoly merge(const PiecewisePoly& A, const PiecewisePoly& B, Op op) {
        if (A.empty() && B.empty()) return {};
        std::vector<double> ks;
        ks.reserve(A.knots_.size() + B.knots_.size());
        ks.insert(ks.end(), A.knots_.begin(), A.knots_.end());
        ks.insert(ks.end(), B.knots_.begin(), B.knots_.end());
        std::sort(ks.begin(), ks.end());
        ks = dedupe(std::move(ks));
        if (ks.size() < 2) return {};
        std::vector<Polynomial> ps;
        ps.reserve(ks.size() - 1);
        for (std::size_t i = 0; i + 1 < ks.size(); ++i) {
            double mid = 0.5 * (ks[i] + ks[i + 1]);
            ps.push_back(op(A.poly_or_zero(mid), B.poly_or_zero(mid)));
        }
        return PiecewisePoly(std::move(ks), std::move(ps));
    }

    friend PiecewisePoly operator+(const PiecewisePoly& a, const PiecewisePoly& b) {
        return merge(a, b, [](const Polynomial& x, const Polynomial& y) { return x + y; });
    }
    friend PiecewisePoly operator-(const PiecewisePoly& a, const PiecewisePoly& b) {
        return merge(a, b, [](const Polynomial& x, const Polynomial& y) { return x - y; });
    }

    const Polynomial& poly_or_zero(double x) const {
        static const Polynomial zero{};
        if (empty() || x < knots_.front() || x > knots_.back()) return zero;
        return pieces_[piece_index(x)];
    }

    static std::vector<double> dedupe(std::vector<double> ks, double tol = 1e-13) {
        std::vector<double> out;
        for (double k : ks) {
            if (out.empty() || k - out.back() > tol * std::max(1.0, std::abs(k))) out.push_back(k);
        }
        return out;
    }

private:
    std::vector<double> knots_;
    std::vector<Polynomial> pieces_;

    std::size_t piece_index(double x) const {
        auto it = std::upper_bound(knots_.begin(), knots_.end(), x);
        std::size_t i = static_cast<std::size_t>(it - knots_.begin());
        if (i == 0) return 0;
        if (i > pieces_.size()) return pieces_.size() - 1;
        return i - 1;
    }
};

// exact L2 norm squared
// the piece is recentered before squaring: squaring first would inflate the
// global coefficients (quartic in x with 1/sigma^4 factors) and the shift
// could no longer recover the lost digits
inline double l2sq(const PiecewisePoly& f) {
    double s = 0.0;
    for (std::size_t i = 0; i < f.pieces().size(); ++i) {
        const double lo = f.knots()[i], hi = f.knots()[i + 1];
        const double w = 0.5 * (hi - lo);
        const Polynomial q = f.pieces()[i].shifted(0.5 * (lo + hi));
        s += (q * q).integral(-w, w);
    }
    return s;
}

// exact inner product
inline double inner(const PiecewisePoly& a, const PiecewisePoly& b) {
    if (a.empty() || b.empty()) return 0.0;
    if (a.hi() <= b.lo() || b.hi() <= a.lo()) return 0.0;
    PiecewisePoly p = PiecewisePoly::merge(a, b, [](const Polynomial& x, const Polynomial& y) { return x * y; });
    return p.integral();
}

// Convolution with the hat kernel of half width rho (unit mass, peak
// 1/rho). The hat is the scaled second difference of the ramp t -> max(t,0),
// so phi_rho * g = [G2(x+rho) - 2 G2(x) + G2(x-rho)] / rho^2 with G2 the
// second running antiderivative of g. Exact, no quadrature.
inline PiecewisePoly convolve_hat(const PiecewisePoly& g, double rho) {
    if (rho <= 0.0) throw Error("convolve_hat: rho must be positive");
    if (g.empty()) return {};
    GlobalPiecewise G2 = g.antiderivative_global().antiderivative(0.0);
    std::vector<double> ks;
    ks.reserve(g.knots().size() * 3);
    for (double k : g.knots()) {
        ks.push_back(k - rho);
        ks.push_back(k);
        ks.push_back(k + rho);
    }
    std::sort(ks.begin(), ks.end());
    ks = PiecewisePoly::dedupe(std::move(ks));
    std::vector<Polynomial> ps;
    ps.reserve(ks.size() - 1);
    const double inv = 1.0 / (rho * rho);
    for (std::size_t i = 0; i + 1 < ks.size(); ++i) {
        double m = 0.5 * (ks[i] + ks[i + 1]);
        Polynomial p = G2.poly_covering(m + rho).shifted(rho);
        p -= 2.0 * G2.poly_covering(m);
        p += G2.poly_covering(m - rho).shifted(-rho);
        p *= inv;
        ps.push_back(std::move(p));
    }
    return PiecewisePoly(std::move(ks), std::move(ps));
}

} // namespace tvbar
