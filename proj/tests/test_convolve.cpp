#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "tvbar/barcode.hpp"
#include "tvbar/convolve.hpp"
#include "tvbar/errors.hpp"
#include "tvbar/kernel.hpp"
#include "tvbar/quadrature.hpp"

using namespace tvbar;

TEST_CASE("hat blur of a code") {
    BarCode z({0.3, 0.6});
    Signal f = hat_convolve(z, 0.1);
    REQUIRE(f.is_poly());
    CHECK(f(0.3) == Catch::Approx(0.5).margin(1e-12));
    CHECK(f(0.6) == Catch::Approx(0.5).margin(1e-12));
    CHECK(f(0.45) == Catch::Approx(1.0).margin(1e-12));
    CHECK(f(0.19) == 0.0);
    CHECK(f(0.71) == 0.0);
    CHECK(f.poly().integral() == Catch::Approx(z.mass()).margin(1e-12));
    CHECK_THROWS_AS(hat_convolve(z, 0.0), InvalidKernel);
    CHECK_THROWS_AS(hat_convolve(z, -0.1), InvalidKernel);
}

TEST_CASE("double blur reduces to single blur at rho = 0") {
    BarCode z({0.2, 0.5, 0.7, 0.9});
    Signal one = hat_convolve(z, 0.04);
    Signal two = double_convolve(z, 0.0, 0.04);
    for (double x : {0.15, 0.2, 0.33, 0.52, 0.8, 0.95})
        CHECK(two(x) == Catch::Approx(one(x)).margin(1e-12));
    Signal blur = double_convolve(z, 0.03, 0.04);
    CHECK(blur.poly().integral() == Catch::Approx(z.mass()).margin(5e-12));
    CHECK_THROWS_AS(double_convolve(z, -0.01, 0.04), InvalidKernel);
    CHECK_THROWS_AS(double_convolve(z, 0.03, 0.0), InvalidKernel);
}

TEST_CASE("grid blur of a code tracks the exact one") {
    BarCode z({0.25, 0.45, 0.6, 0.8});
    const double sigma = 0.05;
    Signal exact = hat_convolve(z, sigma);
    GridSpec spec = GridSpec::cover(0.0, 1.0, sigma / 400.0);
    Signal g = grid_convolve(z, Kernel::hat(sigma), spec);
    REQUIRE(g.is_grid());
    double worst = 0.0;
    for (std::size_t i = 0; i < g.grid().samples.size(); ++i) {
        const double x = g.grid().x(i);
        worst = std::max(worst, std::abs(g.grid().samples[i] - exact(x)));
    }
    CHECK(worst <= 1e-6);

    GridSpec tight{0.3, sigma / 400.0, 100};
    CHECK_THROWS_AS(grid_convolve(z, Kernel::hat(sigma), tight), GridTooSmall);
    CHECK_THROWS_AS(grid_convolve(z, Kernel::gaussian(0.05, 0.0), spec), InvalidKernel);
}

TEST_CASE("grid blur works for non-hat kernels") {
    BarCode z({0.3, 0.7});
    Kernel g = Kernel::gaussian(0.02, 4.0);
    GridSpec spec = GridSpec::cover(0.0, 1.0, 1e-4);
    Signal f = grid_convolve(z, g, spec);
    // mass is conserved up to the grid quadrature error
    CHECK(f.grid().trapezoid() == Catch::Approx(z.mass()).margin(1e-6));
    // away from the interfaces the blur saturates
    CHECK(f(0.5) == Catch::Approx(1.0).margin(1e-6));
    CHECK(f(0.1) == Catch::Approx(0.0).margin(1e-9));
    // half level at the interfaces (symmetric kernel)
    CHECK(f(0.3) == Catch::Approx(0.5).margin(1e-5));
}

TEST_CASE("sampled convolution of a sampled signal") {
    // samples of an indicator, convolved discretely with a hat
    const double h = 1e-3;
    GridSignal in;
    in.x0 = 0.0;
    in.h = h;
    in.samples.assign(1001, 0.0);
    for (std::size_t i = 0; i < in.samples.size(); ++i) {
        const double x = in.x(i);
        in.samples[i] = (x >= 0.3 && x <= 0.6) ? 1.0 : 0.0;
    }
    Kernel k = Kernel::hat(0.05);
    GridSignal out = grid_convolve(in, k);
    REQUIRE(out.samples.size() == in.samples.size());
    Signal exact = hat_convolve(BarCode({0.3, 0.6}), 0.05);
    double worst = 0.0;
    for (std::size_t i = 0; i < out.samples.size(); ++i)
        worst = std::max(worst, std::abs(out.samples[i] - exact(out.x(i))));
    // near a jump the Riemann sum is off by about h * peak / 2 = 0.01
    CHECK(worst <= 1.1e-2);
    CHECK_THROWS_AS(grid_convolve(in, Kernel::gaussian(0.05, 0.0)), InvalidKernel);
}

TEST_CASE("one-sided blur integrals match quadrature") {
    const double sigma = 0.1;
    Kernel k = Kernel::hat(sigma);
    // I_plus integrates the hat over [a, b] inside [x, x + sigma]
    {
        const double x = 0.05, a = 0.06, b = 0.12;
        double q = romberg([&](double y) { return k.evaluate(x - y); }, a, b, 1e-12);
        CHECK(I_plus(x, a, b, sigma) == Catch::Approx(q).margin(1e-10));
        CHECK(I_plus(x, a, b, sigma) == Catch::Approx(0.36).margin(1e-15));
    }
    // I_minus integrates over [a, b] inside [x - sigma, x]
    {
        const double x = 0.05, a = -0.03, b = 0.03;
        double q = romberg([&](double y) { return k.evaluate(x - y); }, a, b, 1e-12);
        CHECK(I_minus(x, a, b, sigma) == Catch::Approx(q).margin(1e-10));
    }
}

TEST_CASE("blurred box norm closed form") {
    CHECK(box_blur_norm_sq(0.3, 0.05) == Catch::Approx(0.3 - 7.0 / 15.0 * 0.05).margin(1e-16));
    CHECK(box_blur_norm_sq(0.3, 0.05) == Catch::Approx(0.27666666666666667).margin(1e-15));
    for (auto [len, s] : {std::pair{0.3, 0.05}, {0.5, 0.25}, {0.2, 0.01}})
        CHECK(box_blur_norm_sq(len, s) == Catch::Approx(box_blur_norm_sq_quad(len, s)).margin(1e-7));
    CHECK_THROWS_AS(box_blur_norm_sq(0.3, 0.0), CaseOrderingViolated);
    CHECK_THROWS_AS(box_blur_norm_sq(0.3, 0.16), CaseOrderingViolated);
}

TEST_CASE("cross terms: closed forms against direct quadrature") {
    const double a = 0.35, len = 0.3;
    for (auto [rho, sigma] : {std::pair{0.05, 0.03}, {0.03, 0.05}, {0.04, 0.04}}) {
        CHECK(cross_term_exterior(rho, sigma) ==
              Catch::Approx(cross_term_exterior_quad(rho, sigma, a, len)).margin(1e-7));
        CHECK(cross_term_domain(len) ==
              Catch::Approx(cross_term_domain_quad(rho, sigma, a, len)).margin(1e-7));
        CHECK(cross_term_interior(rho, sigma, len) ==
              Catch::Approx(cross_term_interior_quad(rho, sigma, a, len)).margin(1e-7));
    }
    // frozen values, sigma <= rho branch
    CHECK(cross_term_exterior(0.05, 0.03) == Catch::Approx(-0.03861333333333333).margin(1e-15));
    CHECK(cross_term_interior(0.05, 0.03, 0.3) == Catch::Approx(0.5613866666666667).margin(1e-15));
    CHECK(cross_term_domain(0.3) == -0.6);
    // symmetric in the two radii
    CHECK(cross_term_exterior(0.05, 0.03) == cross_term_exterior(0.03, 0.05));
    // placement independence of the exterior term
    CHECK(cross_term_exterior_quad(0.05, 0.03, 0.2, 0.3) ==
          Catch::Approx(cross_term_exterior_quad(0.05, 0.03, 0.5, 0.3)).margin(1e-7));
}

TEST_CASE("cross term geometry guards") {
    CHECK_THROWS_AS(check_cross_geometry(0.0, 0.05, 0.3, 0.3), CaseOrderingViolated);
    CHECK_THROWS_AS(check_cross_geometry(0.05, 0.05, 0.3, 0.08), CaseOrderingViolated);  // len < 2 rho
    CHECK_THROWS_AS(check_cross_geometry(0.05, 0.05, 0.05, 0.3), CaseOrderingViolated);  // left margin
    CHECK_THROWS_AS(check_cross_geometry(0.05, 0.05, 0.65, 0.3), CaseOrderingViolated);  // right margin
    CHECK_NOTHROW(check_cross_geometry(0.05, 0.03, 0.35, 0.3));
    CHECK_THROWS_AS(cross_term_interior(0.05, 0.04, 0.09), CaseOrderingViolated);
    CHECK_THROWS_AS(cross_term_domain(0.0), CaseOrderingViolated);
    CHECK_THROWS_AS(cross_term_exterior(0.05, -0.01), CaseOrderingViolated);
}
