#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "tvbar/energy.hpp"
#include "tvbar/errors.hpp"

namespace tvbar {

struct CertCondition {
    std::string name;
    double lhs = 0.0;
    double rhs = 0.0;
    bool strict = true; // lhs < rhs vs lhs <= rhs
    bool satisfied = false;
    double margin = 0.0; // rhs - lhs, positive when satisfied with room
};

struct Certificate {
    std::string rule; // "F1", "F2", "F3", "unified"
    double omega = 0.0;
    double sigma = 0.0;
    double rho = 0.0;
    double lambda = 0.0;
    bool certified = false;
    std::vector<CertCondition> conditions;
    std::string notes;
};

namespace detail {

inline CertCondition make_condition(std::string name, double lhs, double rhs, bool strict) {
    CertCondition c;
    c.name = std::move(name);
    c.lhs = lhs;
    c.rhs = rhs;
    c.strict = strict;
    c.satisfied = strict ? (lhs < rhs) : (lhs <= rhs);
    c.margin = rhs - lhs;
    return c;
}

inline void require_positive(double omega, double sigma, double lambda) {
    if (!(omega > 0.0)) throw Error("omega must be positive");
    if (!(sigma > 0.0)) throw Error("sigma must be positive");
    if (!(lambda > 0.0)) throw Error("lambda must be positive");
}

inline void finalize(Certificate& c) {
    c.certified = true;
    for (const CertCondition& cond : c.conditions)
        if (!cond.satisfied) c.certified = false;
}

} // namespace detail

// Every minimizer recovers the clean code exactly when both conditions hold.
inline Certificate certify_F1(double omega, double sigma, double lambda) {
    detail::require_positive(omega, sigma, lambda);
    Certificate c;
    c.rule = "F1";
    c.omega = omega;
    c.sigma = sigma;
    c.rho = 0.0;
    c.lambda = lambda;
    c.conditions.push_back(detail::make_condition("sigma <= omega", sigma, omega, false));
    c.conditions.push_back(
        detail::make_condition("2*sigma/3 + 2/lambda < omega", 2.0 * sigma / 3.0 + 2.0 / lambda, omega, true));
    detail::finalize(c);
    return c;
}

inline Certificate certify_F2(double omega, double sigma, double lambda) {
    detail::require_positive(omega, sigma, lambda);
    Certificate c;
    c.rule = "F2";
    c.omega = omega;
    c.sigma = sigma;
    c.rho = sigma;
    c.lambda = lambda;
    c.conditions.push_back(detail::make_condition("sigma <= omega/2", sigma, omega / 2.0, false));
    c.conditions.push_back(
        detail::make_condition("2/lambda + 21*sigma/15 < omega", 2.0 / lambda + 21.0 * sigma / 15.0, omega, true));
    detail::finalize(c);
    return c;
}

inline Certificate certify_F3(double omega, double sigma, double rho, double lambda) {
    detail::require_positive(omega, sigma, lambda);
    if (!(rho > 0.0)) throw OutOfLemmaScope("F3 certificate needs rho > 0; use the F1 rule for rho = 0");
    Certificate c;
    c.rule = "F3";
    c.omega = omega;
    c.sigma = sigma;
    c.rho = rho;
    c.lambda = lambda;
    c.conditions.push_back(detail::make_condition("sigma <= rho", sigma, rho, false));
    c.conditions.push_back(detail::make_condition("rho <= omega/2", rho, omega / 2.0, false));
    const double blur_cost =
        (-sigma * sigma * sigma + 5.0 * rho * sigma * sigma + 17.0 * rho * rho * rho) / (15.0 * rho * rho);
    c.conditions.push_back(
        detail::make_condition("2/lambda + (5*rho*sigma^2 - sigma^3 + 17*rho^3)/(15*rho^2) < omega",
                               2.0 / lambda + blur_cost, omega, true));
    detail::finalize(c);
    return c;
}

// Symmetric mixing term of the unified rule; the two branches agree at
// rho = sigma where both reduce to 14*rho.
inline double unified_mixing(double rho, double sigma) {
    const double lo = std::min(rho, sigma);
    const double hi = std::max(rho, sigma);
    return (-lo * lo * lo + 5.0 * hi * lo * lo + 10.0 * hi * hi * hi) / (hi * hi);
}

inline Certificate certify_unified(double omega, double sigma, double rho, double lambda) {
    detail::require_positive(omega, sigma, lambda);
    if (!(rho > 0.0)) throw OutOfLemmaScope("unified certificate needs rho > 0; use the F1 rule for rho = 0");
    Certificate c;
    c.rule = "unified";
    c.omega = omega;
    c.sigma = sigma;
    c.rho = rho;
    c.lambda = lambda;
    c.conditions.push_back(detail::make_condition("sigma <= omega/2", sigma, omega / 2.0, false));
    c.conditions.push_back(detail::make_condition("rho <= omega/2", rho, omega / 2.0, false));
    const double mix = unified_mixing(rho, sigma);
    c.conditions.push_back(detail::make_condition("2/lambda + (7*rho + mix)/15 < omega",
                                                  2.0 / lambda + (7.0 * rho + mix) / 15.0, omega, true));
    detail::finalize(c);
    return c;
}

inline Certificate certify(const EnergyParams& p, double omega) {
    p.validate();
    switch (p.functional) {
    case Functional::F1:
        return certify_F1(omega, p.sigma, p.lambda);
    case Functional::F2:
        return certify_F2(omega, p.sigma, p.lambda);
    case Functional::F3:
        return certify_F3(omega, p.sigma, p.rho, p.lambda);
    }
    throw Error("unknown functional");
}

} // namespace tvbar
