#pragma once

#include <cmath>
#include <iomanip>
#include <sstream>
#include <string>
#include <vector>

#include "tvbar/barcode.hpp"
#include "tvbar/certify.hpp"
#include "tvbar/convolve.hpp"
#include "tvbar/energy.hpp"
#include "tvbar/kernel.hpp"
#include "tvbar/poly.hpp"
#include "tvbar/quadrature.hpp"

namespace tvbar {

struct CheckLine {
    std::string name;
    bool passed = false;
    std::string detail;
};

struct CheckReport {
    std::vector<CheckLine> lines;
    bool all_passed = true;

    void add(const std::string& name, bool passed, const std::string& detail) {
        lines.push_back({name, passed, detail});
        if (!passed) all_passed = false;
    }

    void close(const std::string& name, double got, double want, double tol) {
        std::ostringstream os;
        os << std::setprecision(12) << "got " << got << ", want " << want << ", tol " << tol;
        add(name, std::abs(got - want) <= tol, os.str());
    }
};

// Cross-checks every closed form against independent quadrature and probes
// the kernel-class machinery. This is the battery behind `paper-check`.
inline CheckReport paper_check() {
    CheckReport r;

    // squared norm of a blurred box, closed form vs quadrature
    for (auto [len, s] : {std::pair{0.3, 0.05}, {0.3, 0.15}, {0.5, 0.02}})
        r.close("box_blur_norm_sq len=" + std::to_string(len) + " s=" + std::to_string(s),
                box_blur_norm_sq(len, s), box_blur_norm_sq_quad(len, s), 1e-7);

    // the same integral straight from the exact convolution engine
    {
        PiecewisePoly box({0.35, 0.65}, {Polynomial::constant(1.0)});
        r.close("box_blur_norm_sq via exact convolution", l2sq(convolve_hat(box, 0.05)),
                box_blur_norm_sq(0.3, 0.05), 1e-10);
    }

    // the three interval-product terms
    for (auto [rho, sigma] : {std::pair{0.05, 0.03}, {0.03, 0.05}, {0.04, 0.04}}) {
        const double a = 0.35, len = 0.3;
        r.close("cross_term_exterior rho=" + std::to_string(rho) + " sigma=" + std::to_string(sigma),
                cross_term_exterior(rho, sigma), cross_term_exterior_quad(rho, sigma, a, len), 1e-7);
        r.close("cross_term_domain rho=" + std::to_string(rho) + " sigma=" + std::to_string(sigma),
                cross_term_domain(len), cross_term_domain_quad(rho, sigma, a, len), 1e-7);
        r.close("cross_term_interior rho=" + std::to_string(rho) + " sigma=" + std::to_string(sigma),
                cross_term_interior(rho, sigma, len), cross_term_interior_quad(rho, sigma, a, len), 1e-7);
    }
    r.close("cross_term_exterior symmetric", cross_term_exterior(0.05, 0.03), cross_term_exterior(0.03, 0.05),
            0.0);
    r.close("unified mixing at rho=sigma", unified_mixing(0.04, 0.04), 14.0 * 0.04, 1e-15);

    // blurred indicator passes through 1/2 at every interface
    {
        const BarCode z({0.2, 0.4, 0.6, 0.9});
        const Signal f = hat_convolve(z, 0.05);
        double worst = 0.0;
        for (double t : z.interfaces()) worst = std::max(worst, std::abs(f(t) - 0.5));
        std::ostringstream os;
        os << std::setprecision(12) << "worst deviation " << worst;
        r.add("half level at interfaces", worst <= 1e-12, os.str());
    }

    // blurring conserves mass
    {
        const BarCode z({0.2, 0.4, 0.6, 0.9});
        r.close("single blur conserves mass", hat_convolve(z, 0.05).poly().integral(), z.mass(), 1e-10);
        r.close("double blur conserves mass", double_convolve(z, 0.03, 0.05).poly().integral(), z.mass(), 1e-10);
    }

    // one-sided blur pieces against direct quadrature; I_plus needs the
    // interval inside [x, x+sigma], I_minus inside [x-sigma, x]
    {
        const double sigma = 0.1, x = 0.05;
        const Kernel k = Kernel::hat(sigma);
        auto direct = [&](double a, double b) {
            return romberg([&](double y) { return k.evaluate(x - y); }, a, b, 1e-12);
        };
        r.close("one-sided blur piece I_plus", I_plus(x, 0.06, 0.12, sigma), direct(0.06, 0.12), 1e-10);
        r.close("one-sided blur piece I_minus", I_minus(x, -0.03, 0.03, sigma), direct(-0.03, 0.03), 1e-10);
    }

    // kernel classes: the hat is admissible and its borderline integral
    // vanishes identically
    {
        const Kernel hat = Kernel::hat(0.05);
        r.add("hat in class K", check_class_K(hat), "symmetry, monotone profile, half mass");
        const KernelAdmissibility adm = check_condition_J(hat);
        std::ostringstream os;
        os << std::setprecision(6) << "worst J " << adm.worst_J << " via condition "
           << to_string(adm.sufficient_condition);
        r.add("hat satisfies the kernel-family inequality", adm.in_K3, os.str());
        r.close("hat borderline integral is exactly zero", condition_J(hat, 0.7 * 0.05, 0.0, 0.1), 0.0, 1e-10);
        r.close("single vs double integral for J", condition_J(hat, 0.03, 0.01, 0.08),
                condition_J_direct(hat, 0.03, 0.01, 0.08), 1e-8);
    }
    {
        const Kernel g = Kernel::gaussian(0.02, 4.0);
        r.add("truncated gaussian in class K", check_class_K(g), "renormalized to half mass per side");
    }

    // dual norm of a nonnegative signal is half its mass
    {
        const BarCode z({0.3, 0.45});
        const Signal f = hat_convolve(z, 0.04);
        r.close("dual norm of nonnegative blur", dual_norm(f), 0.5 * z.mass(), 1e-12);
    }

    // threshold ordering lambda_star < lambda0
    {
        const BarCode z({0.3, 0.45});
        const TrivialThresholds t = trivial_thresholds(z, EnergyParams::f2(1.0, 0.04));
        std::ostringstream os;
        os << std::setprecision(12) << "lambda_star " << t.lambda_star << ", lambda0 " << t.lambda0;
        r.add("trivial threshold ordering", t.lambda_star < t.lambda0, os.str());
    }

    return r;
}

} // namespace tvbar
