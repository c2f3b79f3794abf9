#include <catch2/catch_amalgamated.hpp>

#include "tvbar/certify.hpp"
#include "tvbar/energy.hpp"
#include "tvbar/errors.hpp"

using namespace tvbar;

namespace {

const CertCondition& find_condition(const Certificate& c, const std::string& name) {
    for (const CertCondition& cond : c.conditions)
        if (cond.name == name) return cond;
    FAIL("condition not found: " + name);
    return c.conditions.front();
}

} // namespace

TEST_CASE("direct comparison rule") {
    // omega = 0.1, sigma = 0.06: 2*sigma/3 = 0.04, so lambda > 2/0.06 certifies
    Certificate ok = certify_F1(0.1, 0.06, 50.0);
    CHECK(ok.rule == "F1");
    CHECK(ok.certified);
    REQUIRE(ok.conditions.size() == 2);
    CHECK(ok.conditions[0].satisfied);
    CHECK(ok.conditions[1].satisfied);
    CHECK(ok.conditions[1].lhs == Catch::Approx(0.04 + 0.04));
    CHECK(ok.conditions[1].margin == Catch::Approx(0.02));

    // lambda too small: the slack condition fails but the size one holds
    Certificate low = certify_F1(0.1, 0.06, 30.0);
    CHECK_FALSE(low.certified);
    CHECK(low.conditions[0].satisfied);
    CHECK_FALSE(low.conditions[1].satisfied);

    // sigma above omega fails the size condition
    Certificate wide = certify_F1(0.1, 0.11, 1000.0);
    CHECK_FALSE(wide.certified);
    CHECK_FALSE(wide.conditions[0].satisfied);

    // boundary: sigma = omega is allowed (non-strict)
    CHECK(certify_F1(0.1, 0.1, 1e6).conditions[0].satisfied);

    CHECK_THROWS_AS(certify_F1(0.0, 0.06, 50.0), Error);
    CHECK_THROWS_AS(certify_F1(0.1, -0.1, 50.0), Error);
    CHECK_THROWS_AS(certify_F1(0.1, 0.06, 0.0), Error);
}

TEST_CASE("matched deblurring rule") {
    // the working acceptance configuration certifies
    Certificate c = certify_F2(0.0133, 0.00665, 1000.0);
    CHECK(c.certified);
    CHECK(c.rho == c.sigma);
    const CertCondition& size = find_condition(c, "sigma <= omega/2");
    CHECK(size.satisfied);
    CHECK(size.lhs == 0.00665);
    CHECK(size.rhs == Catch::Approx(0.00665));
    const CertCondition& slack = find_condition(c, "2/lambda + 21*sigma/15 < omega");
    CHECK(slack.satisfied);
    CHECK(slack.lhs == Catch::Approx(0.002 + 21.0 * 0.00665 / 15.0));
    CHECK(slack.margin == Catch::Approx(0.0133 - 0.002 - 0.00931).epsilon(1e-9));

    // sigma just over omega/2 fails
    CHECK_FALSE(certify_F2(0.0133, 0.0067, 1000.0).certified);
    // lambda = 150 leaves 2/lambda = 0.0133... > omega - 0.00931
    CHECK_FALSE(certify_F2(0.0133, 0.00665, 150.0).certified);
}

TEST_CASE("mismatched deblurring rule") {
    const double omega = 0.1, sigma = 0.02, rho = 0.04;
    Certificate c = certify_F3(omega, sigma, rho, 1000.0);
    CHECK(c.certified);
    REQUIRE(c.conditions.size() == 3);
    // blur cost term: (-sigma^3 + 5 rho sigma^2 + 17 rho^3) / (15 rho^2)
    const double cost = (-8e-6 + 5.0 * 0.04 * 4e-4 + 17.0 * 6.4e-5) / (15.0 * 1.6e-3);
    CHECK(c.conditions[2].lhs == Catch::Approx(0.002 + cost).epsilon(1e-12));

    // ordering violations
    CHECK_FALSE(certify_F3(omega, 0.05, 0.04, 1000.0).certified);  // sigma > rho
    CHECK_FALSE(certify_F3(omega, 0.02, 0.06, 1000.0).certified);  // rho > omega/2
    CHECK_THROWS_AS(certify_F3(omega, sigma, 0.0, 1000.0), OutOfLemmaScope);
    CHECK_THROWS_AS(certify_F3(omega, sigma, -0.01, 1000.0), OutOfLemmaScope);
}

TEST_CASE("unified rule") {
    const double omega = 0.1;
    // mixing term is symmetric and equals 14 rho on the diagonal
    CHECK(unified_mixing(0.03, 0.05) == unified_mixing(0.05, 0.03));
    CHECK(unified_mixing(0.04, 0.04) == Catch::Approx(14.0 * 0.04).epsilon(1e-14));
    CHECK(unified_mixing(0.05, 0.03) ==
          Catch::Approx((-2.7e-5 + 5.0 * 0.05 * 9e-4 + 10.0 * 1.25e-4) / 2.5e-3).epsilon(1e-12));

    Certificate c = certify_unified(omega, 0.03, 0.04, 2000.0);
    CHECK(c.rule == "unified");
    REQUIRE(c.conditions.size() == 3);
    const double lhs = 2.0 / 2000.0 + (7.0 * 0.04 + unified_mixing(0.04, 0.03)) / 15.0;
    CHECK(c.conditions[2].lhs == Catch::Approx(lhs).epsilon(1e-14));
    CHECK(c.certified == (lhs < omega));

    // on the diagonal the unified slack matches the matched-kernel rule
    Certificate u = certify_unified(omega, 0.04, 0.04, 2000.0);
    Certificate f2 = certify_F2(omega, 0.04, 2000.0);
    CHECK(u.conditions[2].lhs == Catch::Approx(f2.conditions[1].lhs).epsilon(1e-14));

    CHECK_THROWS_AS(certify_unified(omega, 0.03, 0.0, 2000.0), OutOfLemmaScope);
}

TEST_CASE("dispatch by functional") {
    EnergyParams p2 = EnergyParams::f2(1000.0, 0.00665);
    Certificate c2 = certify(p2, 0.0133);
    CHECK(c2.rule == "F2");
    CHECK(c2.certified);

    EnergyParams p1 = EnergyParams::f1(50.0, 0.06);
    CHECK(certify(p1, 0.1).rule == "F1");

    EnergyParams p3 = EnergyParams::f3(1000.0, 0.02, 0.04);
    CHECK(certify(p3, 0.1).rule == "F3");

    EnergyParams bad = EnergyParams::f2(0.0, 0.05);
    CHECK_THROWS_AS(certify(bad, 0.1), Error);
}

TEST_CASE("certificate margins measure distance to failure") {
    Certificate c = certify_F2(0.0133, 0.00665, 1000.0);
    for (const CertCondition& cond : c.conditions) {
        if (cond.satisfied) CHECK(cond.margin >= 0.0);
    }
    // scaling lambda to the margin boundary flips the slack condition
    const CertCondition& slack = find_condition(c, "2/lambda + 21*sigma/15 < omega");
    const double critical = 2.0 / (slack.rhs - 21.0 * 0.00665 / 15.0);
    Certificate at = certify_F2(0.0133, 0.00665, critical * 0.999);
    CHECK_FALSE(at.certified);
    Certificate above = certify_F2(0.0133, 0.00665, critical * 1.001);
    CHECK(above.certified);
}
