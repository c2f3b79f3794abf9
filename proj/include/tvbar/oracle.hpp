#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <optional>
#include <thread>
#include <vector>

#include "tvbar/barcode.hpp"
#include "tvbar/convolve.hpp"
#include "tvbar/energy.hpp"
#include "tvbar/errors.hpp"

namespace tvbar {

struct SearchSpace {
    int grid_points = 21;    // uniform nodes on [0,1], interfaces live here
    int max_interfaces = 4;  // even cap on the interface count
    std::optional<EndpointClass> endpoint_constraint;
    std::vector<BarCode> extra_candidates; // always evaluated as given
    std::size_t budget_cap = 5'000'000;
};

struct OracleResult {
    BarCode minimizer;
    EnergyReport report;
    std::vector<BarCode> ties; // other candidates within 1e-10 of the minimum
    std::size_t candidates_evaluated = 0;
};

namespace detail {

// fidelity(u) = C - 2 sum H[bar] + sum sum G[bar,bar']: every candidate is a
// disjoint union of grid bars and blurring is linear, so three precomputed
// tables turn each evaluation into table lookups.
class OracleEngine {
public:
    OracleEngine(const SearchSpace& space, const Signal& f, const EnergyParams& params)
        : space_(space), f_(f), params_(params) {
        params_.validate();
        m_ = space_.grid_points;
        if (m_ < 2) throw Error("search grid needs at least two points");
        if (space_.max_interfaces < 0 || space_.max_interfaces % 2 != 0)
            throw Error("max_interfaces must be even and nonnegative");
        check_budget();
        nodes_.resize(m_);
        for (int k = 0; k < m_; ++k) nodes_[k] = static_cast<double>(k) / (m_ - 1);
        nodes_.front() = 0.0;
        nodes_.back() = 1.0;
        build_tables();
    }

    OracleResult run(double lambda, int jobs = 1) const {
        jobs = std::max(1, jobs);
        std::vector<Keeper> keepers(static_cast<std::size_t>(jobs));
        auto work = [&](int t) {
            Keeper& kp = keepers[static_cast<std::size_t>(t)];
            if (t == 0) {
                offer_empty(kp, lambda);
                offer_extras(kp, lambda);
            }
            for (int s = 2; s <= space_.max_interfaces; s += 2)
                for (int first = t; first <= m_ - s; first += jobs) enumerate_with_first(kp, lambda, s, first);
        };
        if (jobs == 1) {
            work(0);
        } else {
            std::vector<std::thread> pool;
            pool.reserve(static_cast<std::size_t>(jobs));
            for (int t = 0; t < jobs; ++t) pool.emplace_back(work, t);
            for (std::thread& th : pool) th.join();
        }
        return merge(keepers, lambda);
    }

private:
    struct Entry {
        double total = 0.0;
        std::vector<double> ifaces;
    };

    struct Keeper {
        bool any = false;
        Entry best;
        std::vector<Entry> kept;
        std::size_t evaluated = 0;

        void offer(double total, std::vector<double> ifaces) {
            ++evaluated;
            Entry e{total, std::move(ifaces)};
            if (!any || less(e, best)) best = e;
            any = true;
            if (e.total <= best.total + kTieTol) kept.push_back(std::move(e));
            if (kept.size() >= 4096) prune();
        }

        void prune() {
            kept.erase(std::remove_if(kept.begin(), kept.end(),
                                      [&](const Entry& e) { return e.total > best.total + kTieTol; }),
                       kept.end());
        }

        static bool less(const Entry& a, const Entry& b) {
            if (a.total != b.total) return a.total < b.total;
            return a.ifaces < b.ifaces;
        }
    };

    static constexpr double kTieTol = 1e-10;

    void check_budget() const {
        double count = 1.0 + static_cast<double>(space_.extra_candidates.size());
        const int m = space_.grid_points;
        for (int s = 2; s <= space_.max_interfaces; s += 2) {
            double c = 1.0;
            for (int i = 0; i < s; ++i) c = c * (m - i) / (i + 1);
            count += c;
            if (count > static_cast<double>(space_.budget_cap))
                throw SearchBudgetExceeded("candidate count exceeds budget_cap");
        }
    }

    int bar_id(int p, int q) const { return p * (2 * m_ - p - 1) / 2 + (q - p - 1); }

    PiecewisePoly bar_blur(double a, double b) const {
        PiecewisePoly ind({a, b}, {Polynomial::constant(1.0)});
        const double r = params_.deblur_radius();
        return r > 0.0 ? convolve_hat(ind, r) : ind;
    }

    void build_tables() {
        const int nbars = m_ * (m_ - 1) / 2;
        std::vector<PiecewisePoly> blurred(static_cast<std::size_t>(nbars));
        for (int p = 0; p < m_; ++p)
            for (int q = p + 1; q < m_; ++q)
                blurred[static_cast<std::size_t>(bar_id(p, q))] = bar_blur(nodes_[p], nodes_[q]);

        G_.assign(static_cast<std::size_t>(nbars) * nbars, 0.0);
        H_.assign(static_cast<std::size_t>(nbars), 0.0);

        if (f_.is_poly()) {
            const PiecewisePoly& fp = f_.poly();
            C_ = l2sq(fp);
            for (int a = 0; a < nbars; ++a) {
                H_[static_cast<std::size_t>(a)] = inner(blurred[static_cast<std::size_t>(a)], fp);
                for (int b = a; b < nbars; ++b) {
                    const double v = inner(blurred[static_cast<std::size_t>(a)], blurred[static_cast<std::size_t>(b)]);
                    G_[static_cast<std::size_t>(a) * nbars + b] = v;
                    G_[static_cast<std::size_t>(b) * nbars + a] = v;
                }
            }
        } else {
            const GridSignal& g = f_.grid();
            if (g.samples.size() < 2) throw IncompatibleSignals("observation grid has fewer than two samples");
            const double r = params_.deblur_radius();
            if (-r < g.x0 - 1e-12 || 1.0 + r > g.x_last() + 1e-12)
                throw IncompatibleSignals("observation grid does not cover blurred candidates");
            const std::size_t n = g.samples.size();
            std::vector<double> w(n, 1.0);
            w.front() = 0.5;
            w.back() = 0.5;
            std::vector<std::vector<double>> sampled(static_cast<std::size_t>(nbars));
            C_ = 0.0;
            for (std::size_t i = 0; i < n; ++i) C_ += w[i] * g.samples[i] * g.samples[i] * g.h;
            for (int a = 0; a < nbars; ++a) {
                std::vector<double>& sa = sampled[static_cast<std::size_t>(a)];
                sa.resize(n);
                double h = 0.0;
                for (std::size_t i = 0; i < n; ++i) {
                    sa[i] = blurred[static_cast<std::size_t>(a)](g.x(i));
                    h += w[i] * sa[i] * g.samples[i] * g.h;
                }
                H_[static_cast<std::size_t>(a)] = h;
            }
            for (int a = 0; a < nbars; ++a)
                for (int b = a; b < nbars; ++b) {
                    double v = 0.0;
                    const std::vector<double>& sa = sampled[static_cast<std::size_t>(a)];
                    const std::vector<double>& sb = sampled[static_cast<std::size_t>(b)];
                    for (std::size_t i = 0; i < n; ++i) v += w[i] * sa[i] * sb[i] * g.h;
                    G_[static_cast<std::size_t>(a) * nbars + b] = v;
                    G_[static_cast<std::size_t>(b) * nbars + a] = v;
                }
        }
    }

    bool admits(const std::vector<int>& c) const {
        if (!space_.endpoint_constraint) return true;
        const auto [i, j] = *space_.endpoint_constraint;
        if (c.empty()) return i == 0 && j == 0;
        if (i == 1 ? c.front() != 0 : c.front() == 0) return false;
        if (j == 1 ? c.back() != m_ - 1 : c.back() == m_ - 1) return false;
        return true;
    }

    void offer_grid(Keeper& kp, double lambda, const std::vector<int>& c) const {
        const int nbars = m_ * (m_ - 1) / 2;
        const int k = static_cast<int>(c.size()) / 2;
        double fid = C_;
        for (int a = 0; a < k; ++a) {
            const int ida = bar_id(c[static_cast<std::size_t>(2 * a)], c[static_cast<std::size_t>(2 * a + 1)]);
            fid -= 2.0 * H_[static_cast<std::size_t>(ida)];
            for (int b = 0; b < k; ++b) {
                const int idb = bar_id(c[static_cast<std::size_t>(2 * b)], c[static_cast<std::size_t>(2 * b + 1)]);
                fid += G_[static_cast<std::size_t>(ida) * nbars + idb];
            }
        }
        std::vector<double> ifaces(c.size());
        for (std::size_t i = 0; i < c.size(); ++i) ifaces[i] = nodes_[static_cast<std::size_t>(c[i])];
        kp.offer(static_cast<double>(c.size()) + lambda * fid, std::move(ifaces));
    }

    void offer_empty(Keeper& kp, double lambda) const {
        if (!admits({})) return;
        kp.offer(lambda * C_, {});
    }

    void offer_extras(Keeper& kp, double lambda) const {
        for (const BarCode& u : space_.extra_candidates) {
            const EnergyReport r = evaluate(u, f_, params_.with_lambda(lambda));
            kp.offer(r.total, u.interfaces());
        }
    }

    void enumerate_with_first(Keeper& kp, double lambda, int s, int first) const {
        std::vector<int> c(static_cast<std::size_t>(s));
        c[0] = first;
        for (int i = 1; i < s; ++i) c[static_cast<std::size_t>(i)] = first + i;
        if (c.back() >= m_) return;
        while (true) {
            if (admits(c)) offer_grid(kp, lambda, c);
            int i = s - 1;
            while (i >= 1 && c[static_cast<std::size_t>(i)] == m_ - (s - i)) --i;
            if (i < 1) break;
            ++c[static_cast<std::size_t>(i)];
            for (int j = i + 1; j < s; ++j) c[static_cast<std::size_t>(j)] = c[static_cast<std::size_t>(j - 1)] + 1;
        }
    }

    OracleResult merge(std::vector<Keeper>& keepers, double lambda) const {
        const Entry* best = nullptr;
        std::size_t evaluated = 0;
        for (Keeper& kp : keepers) {
            evaluated += kp.evaluated;
            if (kp.any && (!best || Keeper::less(kp.best, *best))) best = &kp.best;
        }
        if (!best) throw Error("search space admits no candidates");
        std::vector<Entry> near;
        for (Keeper& kp : keepers)
            for (Entry& e : kp.kept)
                if (e.total <= best->total + kTieTol) near.push_back(std::move(e));
        std::sort(near.begin(), near.end(), Keeper::less);
        near.erase(std::unique(near.begin(), near.end(),
                               [](const Entry& a, const Entry& b) { return a.ifaces == b.ifaces; }),
                   near.end());

        OracleResult out;
        out.candidates_evaluated = evaluated;
        out.minimizer = BarCode(best->ifaces);
        out.report = evaluate(out.minimizer, f_, params_.with_lambda(lambda));
        for (const Entry& e : near)
            if (e.ifaces != best->ifaces) out.ties.emplace_back(e.ifaces);
        return out;
    }

    SearchSpace space_;
    Signal f_;
    EnergyParams params_;
    int m_ = 0;
    std::vector<double> nodes_;
    std::vector<double> G_;
    std::vector<double> H_;
    double C_ = 0.0;
};

} // namespace detail

inline OracleResult minimize(const SearchSpace& space, const Signal& f, const EnergyParams& params, int jobs = 1) {
    return detail::OracleEngine(space, f, params).run(params.lambda, jobs);
}

struct SweepPoint {
    double lambda = 0.0;
    std::size_t tv = 0;
    double fidelity = 0.0;
    double total = 0.0;
    BarCode minimizer;
};

struct SweepResult {
    std::vector<SweepPoint> points;
    std::optional<double> transition_lambda; // smallest lambda with a nonempty minimizer
};

inline SweepResult sweep_lambda(const SearchSpace& space, const Signal& f, const EnergyParams& params,
                                const std::vector<double>& lambdas, int jobs = 1) {
    detail::OracleEngine engine(space, f, params);
    SweepResult out;
    for (double l : lambdas) {
        if (!(l > 0.0)) throw Error("lambda values must be positive");
        OracleResult r = engine.run(l, jobs);
        SweepPoint pt;
        pt.lambda = l;
        pt.tv = r.report.tv;
        pt.fidelity = r.report.fidelity;
        pt.total = r.report.total;
        pt.minimizer = r.minimizer;
        out.points.push_back(std::move(pt));
    }
    std::vector<const SweepPoint*> sorted;
    for (const SweepPoint& pt : out.points) sorted.push_back(&pt);
    std::sort(sorted.begin(), sorted.end(),
              [](const SweepPoint* a, const SweepPoint* b) { return a->lambda < b->lambda; });
    for (const SweepPoint* pt : sorted)
        if (!pt->minimizer.empty()) {
            out.transition_lambda = pt->lambda;
            break;
        }
    return out;
}

} // namespace tvbar
