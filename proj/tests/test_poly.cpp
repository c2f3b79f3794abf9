#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "tvbar/convolve.hpp"
#include "tvbar/poly.hpp"
#include "tvbar/quadrature.hpp"

using namespace tvbar;

TEST_CASE("polynomial arithmetic") {
    Polynomial p({1.0, 2.0, 3.0}); // 1 + 2x + 3x^2
    CHECK(p(0.0) == 1.0);
    CHECK(p(2.0) == Catch::Approx(17.0));

    Polynomial d = p.derivative();
    CHECK(d(2.0) == Catch::Approx(14.0)); // 2 + 6x

    Polynomial a = p.antiderivative();
    CHECK(a(0.0) == 0.0);
    CHECK(a(1.0) == Catch::Approx(1.0 + 1.0 + 1.0));

    Polynomial s = p.shifted(1.0); // p(x+1) = 6 + 8x + 3x^2
    CHECK(s(0.0) == Catch::Approx(p(1.0)));
    CHECK(s(2.5) == Catch::Approx(p(3.5)));

    Polynomial q = p * Polynomial({0.0, 1.0}); // x * p
    CHECK(q(1.5) == Catch::Approx(1.5 * p(1.5)));
}

TEST_CASE("piecewise eval and integral") {
    PiecewisePoly f({0.0, 1.0, 2.0}, {Polynomial({0.0, 1.0}), Polynomial::constant(1.0)});
    CHECK(f(-0.5) == 0.0);
    CHECK(f(0.5) == Catch::Approx(0.5));
    CHECK(f(1.5) == 1.0);
    CHECK(f(2.5) == 0.0);
    CHECK(f.integral() == Catch::Approx(1.5));
    CHECK(f.integral(0.5, 1.5) == Catch::Approx(0.375 + 0.5));
}

TEST_CASE("merge add and subtract") {
    PiecewisePoly a({0.0, 1.0}, {Polynomial::constant(1.0)});
    PiecewisePoly b({0.5, 2.0}, {Polynomial({0.0, 1.0})});
    PiecewisePoly sum = a + b;
    CHECK(sum(0.25) == Catch::Approx(1.0));
    CHECK(sum(0.75) == Catch::Approx(1.75));
    CHECK(sum(1.5) == Catch::Approx(1.5));
    PiecewisePoly diff = a - b;
    CHECK(diff(0.75) == Catch::Approx(0.25));
    CHECK(diff(1.5) == Catch::Approx(-1.5));
}

TEST_CASE("global antiderivative is continuous and anchored") {
    PiecewisePoly f({0.0, 0.3, 1.0}, {Polynomial::constant(2.0), Polynomial({1.0, -1.0})});
    GlobalPiecewise F = f.antiderivative_global();
    CHECK(F(0.0) == Catch::Approx(0.0).margin(1e-15));
    CHECK(F(-5.0) == Catch::Approx(0.0).margin(1e-15));
    CHECK(F(0.3) == Catch::Approx(f.integral(0.0, 0.3)).epsilon(1e-14));
    CHECK(F(2.0) == Catch::Approx(f.integral()).epsilon(1e-14));
    // continuity across the interior knot and the support edge
    for (double k : {0.3, 1.0})
        CHECK(F(k + 1e-9) - F(k - 1e-9) == Catch::Approx(0.0).margin(1e-8));
}

TEST_CASE("exact squared norms and inner products") {
    PiecewisePoly f({0.0, 1.0}, {Polynomial({0.0, 1.0})});
    CHECK(l2sq(f) == Catch::Approx(1.0 / 3.0).epsilon(1e-14));
    PiecewisePoly g({0.5, 1.5}, {Polynomial::constant(1.0)});
    CHECK(inner(f, g) == Catch::Approx(0.375).epsilon(1e-14));
    PiecewisePoly far({3.0, 4.0}, {Polynomial::constant(1.0)});
    CHECK(inner(f, far) == 0.0);
}

TEST_CASE("hat convolution is the exact second difference of the double antiderivative") {
    PiecewisePoly box({0.2, 0.7}, {Polynomial::constant(1.0)});
    const double sigma = 0.1;
    PiecewisePoly blurred = convolve_hat(box, sigma);

    CHECK(blurred.lo() == Catch::Approx(0.1));
    CHECK(blurred.hi() == Catch::Approx(0.8));
    CHECK(blurred(0.2) == Catch::Approx(0.5).margin(1e-12));
    CHECK(blurred(0.7) == Catch::Approx(0.5).margin(1e-12));
    CHECK(blurred(0.45) == Catch::Approx(1.0).margin(1e-12)); // interior plateau
    CHECK(blurred.integral() == Catch::Approx(0.5).margin(1e-12));

    const Kernel k = Kernel::hat(sigma);
    for (double x : {0.05, 0.13, 0.2, 0.26, 0.5, 0.68, 0.74, 0.81}) {
        const double direct = romberg([&](double y) { return k.evaluate(x - y) * box(y); },
                                      std::max(0.2, x - sigma), std::min(0.7, x + sigma), 1e-12);
        CHECK(blurred(x) == Catch::Approx(direct).margin(1e-12));
    }
}

TEST_CASE("double hat convolution keeps mass and smooths kinks") {
    PiecewisePoly box({0.3, 0.6}, {Polynomial::constant(1.0)});
    PiecewisePoly once = convolve_hat(box, 0.05);
    PiecewisePoly twice = convolve_hat(once, 0.04);
    CHECK(twice.integral() == Catch::Approx(0.3).margin(5e-12));
    const Kernel k = Kernel::hat(0.04);
    for (double x : {0.25, 0.3, 0.33, 0.45, 0.62}) {
        const double direct = romberg([&](double y) { return k.evaluate(x - y) * once(y); },
                                      x - 0.04, x + 0.04, 1e-12);
        CHECK(twice(x) == Catch::Approx(direct).margin(1e-11));
    }
}

TEST_CASE("quadrature utilities") {
    CHECK(romberg([](double x) { return std::sin(x); }, 0.0, 1.0, 1e-12) ==
          Catch::Approx(1.0 - std::cos(1.0)).epsilon(1e-12));
    CHECK(bisect([](double x) { return x * x - 2.0; }, 0.0, 2.0) == Catch::Approx(std::sqrt(2.0)).epsilon(1e-12));
    CHECK_THROWS_AS(romberg([](double x) { return 1.0 / x; }, 0.0, 1.0, 1e-12), QuadratureFailure);
}
