#include <catch2/catch_amalgamated.hpp>

#include <vector>

#include "tvbar/barcode.hpp"
#include "tvbar/errors.hpp"

using namespace tvbar;

TEST_CASE("bar code validation") {
    CHECK_NOTHROW(BarCode({0.1, 0.3}));
    CHECK_NOTHROW(BarCode({0.0, 0.2, 0.5, 1.0}));
    CHECK_THROWS_AS(BarCode({0.1, 0.3, 0.5}), InvalidBarCode);      // odd
    CHECK_THROWS_AS(BarCode({-0.1, 0.3}), InvalidBarCode);          // below 0
    CHECK_THROWS_AS(BarCode({0.5, 1.2}), InvalidBarCode);           // above 1
    CHECK_THROWS_AS(BarCode({0.3, 0.1}), InvalidBarCode);           // unsorted
    CHECK_THROWS_AS(BarCode({0.3, 0.3}), InvalidBarCode);           // zero gap
    CHECK_THROWS_AS(BarCode({0.3, 0.3 + 1e-13}), InvalidBarCode);   // sub-minimum gap
}

TEST_CASE("empty code") {
    BarCode z;
    CHECK(z.empty());
    CHECK(z.bars() == 0);
    CHECK(z.total_variation() == 0);
    CHECK(z.mass() == 0.0);
    CHECK(z.value(0.5) == 0.0);
    CHECK(z.indicator().pieces().empty());
    CHECK_THROWS_AS(z.x_dimension(), EmptyBarCode);
    CHECK(membership(z, 0.5));
    // the empty code belongs only to the (0,0) endpoint class
    CHECK(membership(z, 0.5, EndpointClass{0, 0}));
    CHECK_FALSE(membership(z, 0.5, EndpointClass{1, 0}));
    CHECK_FALSE(membership(z, 0.5, EndpointClass{0, 1}));
}

TEST_CASE("geometry of a two-bar code") {
    BarCode z({0.1, 0.3, 0.45, 0.9});
    CHECK(z.bars() == 2);
    CHECK(z.total_variation() == 4);
    CHECK(z.starts_with_bar());
    CHECK(z.mass() == Catch::Approx(0.2 + 0.45));
    // narrowest feature is the internal space [0.3, 0.45]
    CHECK(z.x_dimension() == Catch::Approx(0.15));

    CHECK(z.value(0.2) == 1.0);
    CHECK(z.value(0.35) == 0.0);
    CHECK(z.value(0.5) == 1.0);
    CHECK(z.value(0.05) == 0.0);
    CHECK(z.value(0.95) == 0.0);
    CHECK(z.value(0.1) == 1.0);  // closed bars
    CHECK(z.value(0.9) == 1.0);

    auto iv = z.bar_intervals();
    REQUIRE(iv.size() == 2);
    CHECK(iv[0] == std::pair<double, double>{0.1, 0.3});
    CHECK(iv[1] == std::pair<double, double>{0.45, 0.9});

    // margins outside the outermost bars do not count toward the x-dimension
    BarCode tight({0.49, 0.51});
    CHECK(tight.x_dimension() == Catch::Approx(0.02));
}

TEST_CASE("indicator matches pointwise values") {
    BarCode z({0.2, 0.4, 0.6, 0.9});
    PiecewisePoly ind = z.indicator();
    for (double x : {0.25, 0.3, 0.5, 0.7, 0.85})
        CHECK(ind(x) == z.value(x));
    CHECK(ind.integral() == Catch::Approx(z.mass()));
    CHECK(l2sq(ind) == Catch::Approx(z.mass()));  // indicator squares to itself
}

TEST_CASE("membership and endpoint classes") {
    BarCode z({0.1, 0.3, 0.45, 0.9});
    CHECK(membership(z, 0.15));
    CHECK(membership(z, 0.1499999));
    CHECK_FALSE(membership(z, 0.1500001));

    CHECK(membership(z, 0.1, EndpointClass{0, 0}));
    CHECK_FALSE(membership(z, 0.1, EndpointClass{1, 0}));
    CHECK_FALSE(membership(z, 0.1, EndpointClass{0, 1}));
    CHECK_FALSE(membership(z, 0.1, EndpointClass{1, 1}));

    BarCode both({0.0, 0.4, 0.65, 1.0});
    CHECK(membership(both, 0.2, EndpointClass{1, 1}));
    CHECK_FALSE(membership(both, 0.2, EndpointClass{0, 0}));
}

TEST_CASE("generator produces valid codes across seeds") {
    GeneratorConfig cfg;
    cfg.omega = 0.03;
    cfg.max_bars = 8;
    for (std::uint64_t seed = 0; seed < 1000; ++seed) {
        cfg.seed = seed;
        BarCode z = generate(cfg);
        REQUIRE_FALSE(z.empty());
        CHECK(z.x_dimension() >= cfg.omega);
        CHECK(membership(z, cfg.omega));
        CHECK(z.interfaces().front() >= 0.0);
        CHECK(z.interfaces().back() <= 1.0);
        CHECK(static_cast<int>(z.bars()) <= cfg.max_bars);
    }
    // deterministic under seed
    cfg.seed = 42;
    CHECK(generate(cfg) == generate(cfg));
    cfg.seed = 43;
    CHECK(generate(GeneratorConfig{0.03, 8, 42, {}}) != generate(cfg));
}

TEST_CASE("generator honors endpoint classes") {
    GeneratorConfig cfg;
    cfg.omega = 0.04;
    cfg.max_bars = 5;
    for (int i : {0, 1}) {
        for (int j : {0, 1}) {
            cfg.endpoints = EndpointClass{i, j};
            for (std::uint64_t seed = 0; seed < 50; ++seed) {
                cfg.seed = seed;
                BarCode z = generate(cfg);
                CHECK(membership(z, cfg.omega, cfg.endpoints));
            }
        }
    }
}

TEST_CASE("generator rejects infeasible requests") {
    GeneratorConfig cfg;
    cfg.omega = 0.0;
    CHECK_THROWS_AS(generate(cfg), InfeasibleXDimension);
    cfg.omega = 0.05;
    cfg.max_bars = 0;
    CHECK_THROWS_AS(generate(cfg), InfeasibleXDimension);
    cfg.max_bars = 11;  // (2*11 - 1) * 0.05 > 1
    CHECK_THROWS_AS(generate(cfg), InfeasibleXDimension);
    cfg.omega = 0.4;
    cfg.max_bars = 1;
    cfg.endpoints = EndpointClass{0, 0};  // space + bar + space needs 3 * 0.4 > 1
    CHECK_THROWS_AS(generate(cfg), InfeasibleXDimension);
}

TEST_CASE("code ordering is lexicographic on interfaces") {
    BarCode a({0.1, 0.3});
    BarCode b({0.1, 0.4});
    BarCode c({0.2, 0.3});
    CHECK(a < b);
    CHECK(b < c);
    CHECK_FALSE(c < a);
    CHECK(a == BarCode({0.1, 0.3}));
    CHECK(a != b);
}
