#include <doctest.h>

#include <cmath>
#include <numbers>

#include "qrmt/mp_law.hpp"
#include "support/test_support.hpp"

using namespace qrmt;

TEST_SUITE("mp_law") {
    TEST_CASE("support edges") {
        const auto [a1, b1] = MPLaw(0.25, 1.0).support();
        CHECK(a1 == doctest::Approx(0.25).epsilon(1e-14));
        CHECK(b1 == doctest::Approx(2.25).epsilon(1e-14));

        const auto [a2, b2] = MPLaw(1.0, 0.7).support();
        CHECK(a2 == doctest::Approx(0.0));
        CHECK(b2 == doctest::Approx(2.8).epsilon(1e-14));

        const auto [a3, b3] = MPLaw(2.0, 1.0).support();
        CHECK(a3 == doctest::Approx((1.0 - std::numbers::sqrt2) * (1.0 - std::numbers::sqrt2)));
        CHECK(b3 == doctest::Approx((1.0 + std::numbers::sqrt2) * (1.0 + std::numbers::sqrt2)));
    }

    TEST_CASE("density values and domain") {
        const MPLaw law(0.25, 1.0);
        CHECK(law.density(0.1) == 0.0);   // below the support
        CHECK(law.density(3.0) == 0.0);   // above the support
        CHECK(law.density(0.25) == 0.0);  // vanishes at the edges
        CHECK(law.density(2.25) == 0.0);
        CHECK_THROWS_AS(law.density(0.0), std::domain_error);
        CHECK_THROWS_AS(law.density(-1.0), std::domain_error);

        // y=1, sigma2=1 at x=2: (1/(4 pi)) sqrt((4-2)(2-0)) = 1/(2 pi).
        const MPLaw square(1.0, 1.0);
        CHECK(square.density(2.0) ==
              doctest::Approx(1.0 / (2.0 * std::numbers::pi)).epsilon(1e-13));
    }

    TEST_CASE("density integrates to min(1, 1/y)") {
        for (const double y : {0.1, 0.25, 0.5, 1.0, 2.0}) {
            const MPLaw law(y, 1.3);
            const double mass = testsup::quadrature_moment(law, 0);
            CHECK(std::abs(mass - std::min(1.0, 1.0 / y)) <= 1e-8);
        }
    }

    TEST_CASE("cdf boundary behavior and the atom") {
        const MPLaw law(2.0, 1.0);
        CHECK(law.cdf(-0.5) == 0.0);
        CHECK(law.cdf(law.support().second) == 1.0);
        CHECK(law.cdf(100.0) == 1.0);
        CHECK(law.cdf(0.0) == doctest::Approx(0.5).epsilon(1e-12));  // atom 1 - 1/2
        // right-continuity at zero: the jump is exactly the atom mass
        CHECK(law.cdf(0.0) - law.cdf(-1e-12) == doctest::Approx(0.5));

        const MPLaw thin(0.25, 1.0);
        CHECK(thin.cdf(0.0) == 0.0);
        CHECK(thin.cdf(0.2) == 0.0);  // below the lower edge, no atom
    }

    TEST_CASE("cdf is monotone on a 100-point grid and hits the midrange") {
        const MPLaw law(0.25, 1.0);
        CHECK(law.cdf(1.25) > 0.0);
        CHECK(law.cdf(1.25) < 1.0);
        double prev = -1.0;
        for (int i = 0; i <= 100; ++i) {
            const double x = -0.2 + 2.8 * i / 100.0;
            const double f = law.cdf(x);
            CHECK(f >= prev - 1e-9);
            prev = f;
        }
    }

    TEST_CASE("total mass: atom plus density integral is 1") {
        for (const double y : {0.5, 1.0, 2.0, 4.0}) {
            const MPLaw law(y, 1.0);
            const double total = law.atom_mass() + testsup::quadrature_moment(law, 0);
            CHECK(std::abs(total - 1.0) <= 1e-8);
        }
    }

    TEST_CASE("closed-form moments against quadrature, k <= 8") {
        for (const double y : {0.1, 0.25, 0.5, 1.0, 2.0}) {
            const MPLaw law(y, 1.0);
            for (std::size_t k = 1; k <= 8; ++k) {
                const double closed = law.moment(k);
                const double quad = testsup::quadrature_moment(law, k);
                CHECK(std::abs(closed - quad) <= 1e-8 * std::abs(closed));
            }
        }
    }

    TEST_CASE("specific moments") {
        CHECK(MPLaw(0.37, 1.0).moment(0) == 1.0);
        CHECK(MPLaw(0.37, 2.5).moment(1) == doctest::Approx(2.5).epsilon(1e-14));
        CHECK(MPLaw(0.25, 1.0).moment(2) == doctest::Approx(1.25).epsilon(1e-14));  // 1 + y
        CHECK(MPLaw(1.0, 1.0).moment(4) == doctest::Approx(14.0).epsilon(1e-14));   // Catalan
        CHECK(MPLaw(1.0, 1.0).moment(3) == doctest::Approx(5.0).epsilon(1e-14));
    }

    TEST_CASE("moment scaling in sigma2 is exact") {
        const double cs[] = {0.5, 2.0, 3.7};
        for (const double c : cs) {
            const MPLaw base(0.4, 1.0);
            const MPLaw scaled(0.4, c);
            for (std::size_t k = 0; k <= 6; ++k) {
                CHECK(scaled.moment(k) ==
                      doctest::Approx(std::pow(c, static_cast<double>(k)) * base.moment(k))
                          .epsilon(1e-12));
            }
        }
    }

    TEST_CASE("parameter validation") {
        CHECK_THROWS_AS(MPLaw(0.0, 1.0), std::invalid_argument);
        CHECK_THROWS_AS(MPLaw(-1.0, 1.0), std::invalid_argument);
        CHECK_THROWS_AS(MPLaw(1.0, 0.0), std::invalid_argument);
    }
}
