#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "tvbar/barcode.hpp"
#include "tvbar/convolve.hpp"
#include "tvbar/energy.hpp"
#include "tvbar/errors.hpp"

using namespace tvbar;

TEST_CASE("functional names round-trip") {
    for (Functional f : {Functional::F1, Functional::F2, Functional::F3})
        CHECK(functional_from_string(to_string(f)) == f);
    CHECK_THROWS_AS(functional_from_string("F9"), Error);
}

TEST_CASE("parameter validation") {
    CHECK_NOTHROW(EnergyParams::f1(10.0, 0.05).validate());
    CHECK_NOTHROW(EnergyParams::f2(10.0, 0.05).validate());
    CHECK_NOTHROW(EnergyParams::f3(10.0, 0.05, 0.02).validate());

    CHECK_THROWS_AS(EnergyParams::f1(0.0, 0.05).validate(), Error);
    CHECK_THROWS_AS(EnergyParams::f1(10.0, -0.05).validate(), Error);
    EnergyParams bad1 = EnergyParams::f1(10.0, 0.05);
    bad1.rho = 0.01;
    CHECK_THROWS_AS(bad1.validate(), Error);
    EnergyParams bad2 = EnergyParams::f2(10.0, 0.05);
    bad2.rho = 0.04;
    CHECK_THROWS_AS(bad2.validate(), Error);
    CHECK_THROWS_AS(EnergyParams::f3(10.0, 0.05, 0.0).validate(), Error);

    CHECK(EnergyParams::f1(10.0, 0.05).deblur_radius() == 0.0);
    CHECK(EnergyParams::f2(10.0, 0.05).deblur_radius() == 0.05);
    CHECK(EnergyParams::f3(10.0, 0.05, 0.02).deblur_radius() == 0.02);
    CHECK(EnergyParams::f2(10.0, 0.05).with_lambda(3.0).lambda == 3.0);
}

TEST_CASE("energy of the generating code under its own blur") {
    BarCode z({0.3, 0.6});
    const double sigma = 0.05;
    // F1 compares the candidate directly with the observation
    {
        EnergyParams p = EnergyParams::f1(100.0, sigma);
        Signal f(z.indicator(), "clean");
        EnergyReport r = evaluate(z, f, p);
        CHECK(r.tv == 2.0);
        CHECK(r.fidelity == Catch::Approx(0.0).margin(1e-14));
        CHECK(r.total == Catch::Approx(2.0).margin(1e-11));
    }
    // F2 blurs the candidate with the same kernel that made the observation
    {
        EnergyParams p = EnergyParams::f2(100.0, sigma);
        Signal f = hat_convolve(z, sigma);
        EnergyReport r = evaluate(z, f, p);
        CHECK(r.tv == 2.0);
        CHECK(r.fidelity == Catch::Approx(0.0).margin(1e-13));
        CHECK(r.total == Catch::Approx(2.0).margin(1e-10));
    }
}

TEST_CASE("energy of the empty code is the observation norm") {
    BarCode z({0.3, 0.6});
    const double sigma = 0.05;
    EnergyParams p = EnergyParams::f2(10.0, sigma);
    Signal f = hat_convolve(z, sigma);
    EnergyReport r = evaluate(BarCode(), f, p);
    CHECK(r.tv == 0.0);
    // || hat * chi ||^2 has the closed form len - (7/15) sigma
    CHECK(r.fidelity == Catch::Approx(box_blur_norm_sq(0.3, sigma)).margin(1e-11));
    CHECK(r.total == Catch::Approx(10.0 * box_blur_norm_sq(0.3, sigma)).margin(1e-10));
}

TEST_CASE("exact and sampled fidelities agree") {
    BarCode z({0.2, 0.45, 0.6, 0.85});
    BarCode u({0.21, 0.44, 0.62, 0.83});
    const double sigma = 0.04;
    EnergyParams p = EnergyParams::f2(50.0, sigma);
    Signal f = hat_convolve(z, sigma);
    EnergyReport exact = evaluate(u, f, p);

    GridSpec spec = GridSpec::cover(-2.0 * sigma, 1.0 + 2.0 * sigma, sigma / 400.0);
    Signal fg(f.sampled(spec.x0, spec.h, spec.n), "sampled");
    EnergyReport grid = evaluate(u, fg, p);
    CHECK(grid.tv == exact.tv);
    CHECK(grid.fidelity == Catch::Approx(exact.fidelity).margin(1e-6));

    // a grid that stops short of the blurred candidate support is rejected
    GridSpec small{0.3, sigma / 400.0, 200};
    Signal fsmall(f.sampled(small.x0, small.h, small.n), "short");
    CHECK_THROWS_AS(evaluate(u, fsmall, p), IncompatibleSignals);
}

TEST_CASE("F3 with rho = sigma reproduces F2") {
    BarCode z({0.25, 0.55});
    BarCode u({0.27, 0.5});
    const double sigma = 0.05;
    Signal f = hat_convolve(z, sigma);
    EnergyReport a = evaluate(u, f, EnergyParams::f2(40.0, sigma));
    EnergyReport b = evaluate(u, f, EnergyParams::f3(40.0, sigma, sigma));
    CHECK(a.fidelity == Catch::Approx(b.fidelity).margin(1e-15));
    CHECK(a.total == Catch::Approx(b.total).margin(1e-13));
}

TEST_CASE("dual norm") {
    // nonnegative signal: half its mass
    BarCode z({0.3, 0.6, 0.7, 0.8});
    Signal f = hat_convolve(z, 0.05);
    CHECK(dual_norm(f) == Catch::Approx(0.5 * z.mass()).margin(1e-12));

    // sign change: half the oscillation of the running integral
    PiecewisePoly saw({0.0, 0.25, 0.5}, {Polynomial::constant(1.0), Polynomial::constant(-1.0)});
    CHECK(dual_norm(Signal(saw, "saw")) == Catch::Approx(0.125).margin(1e-12));

    // grid path on a smooth oscillation: F(x) = (1 - cos(2 pi x)) / (2 pi)
    GridSignal g;
    g.x0 = 0.0;
    g.h = 1e-4;
    g.samples.resize(10001);
    for (std::size_t i = 0; i < g.samples.size(); ++i)
        g.samples[i] = std::sin(2.0 * M_PI * g.x(i));
    CHECK(dual_norm(Signal(std::move(g), "sine")) == Catch::Approx(1.0 / (4.0 * std::asin(1.0))).margin(1e-6));
}

TEST_CASE("trivial thresholds") {
    BarCode z({0.3, 0.6});
    const double sigma = 0.05;
    EnergyParams p = EnergyParams::f2(10.0, sigma);
    TrivialThresholds t = trivial_thresholds(z, p);
    // double blur keeps the mass, so the dual norm is mass / 2 = 0.15
    CHECK(t.lambda_star == Catch::Approx(1.0 / 0.3).margin(1e-10));
    CHECK(t.lambda0 == Catch::Approx(2.0 / box_blur_norm_sq(0.3, sigma)).margin(1e-9));
    CHECK(t.lambda0 == Catch::Approx(7.228915662650602).margin(1e-9));
    CHECK(t.lambda_star < t.lambda0);

    // F1 variant: no second blur
    TrivialThresholds t1 = trivial_thresholds(z, EnergyParams::f1(10.0, sigma));
    CHECK(t1.lambda_star == Catch::Approx(1.0 / 0.3).margin(1e-10));

    CHECK_THROWS_AS(trivial_thresholds(BarCode(), p), EmptyBarCode);
}
