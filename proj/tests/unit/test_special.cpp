#include "doctest.h"

#include "oracles.hpp"

#include "nbcrit/errors.hpp"
#include "nbcrit/special.hpp"

#include <cmath>
#include <limits>
#include <numbers>

using namespace nbcrit;

TEST_SUITE("special") {

TEST_CASE("digamma at known points") {
    double const g = std::numbers::egamma;
    CHECK(digamma(1.0) == doctest::Approx(-g).epsilon(1e-15));
    CHECK(digamma(0.5) == doctest::Approx(-g - 2.0 * std::numbers::ln2).epsilon(1e-15));
    CHECK(digamma(2.0) == doctest::Approx(1.0 - g).epsilon(1e-15));
    // psi(1/4) = -gamma - pi/2 - 3 ln 2
    CHECK(digamma(0.25) == doctest::Approx(-g - std::numbers::pi / 2 - 3.0 * std::numbers::ln2).epsilon(1e-14));
}

TEST_CASE("digamma recurrence") {
    for (double x : {1e-3, 0.1, 0.7, 3.3, 12.5, 250.0}) {
        CHECK(std::abs(digamma(x + 1.0) - digamma(x) - 1.0 / x) <= 1e-13 * (1.0 + 1.0 / x));
    }
}

TEST_CASE("digamma domain") {
    CHECK_THROWS_AS(digamma(0.0), DomainError);
    CHECK_THROWS_AS(digamma(-1.5), DomainError);
    CHECK_THROWS_AS(digamma(std::numeric_limits<double>::quiet_NaN()), DomainError);
}

TEST_CASE("zeta at real arguments") {
    double const pi = std::numbers::pi;
    CHECK(zeta_real(2.0) == doctest::Approx(pi * pi / 6.0).epsilon(1e-15));
    CHECK(zeta_real(4.0) == doctest::Approx(pi * pi * pi * pi / 90.0).epsilon(1e-15));
    CHECK(zeta_real(3.0) == doctest::Approx(1.2020569031595942).epsilon(1e-15));
    CHECK(zeta_real(1.5) == doctest::Approx(oracle::kZeta_1_5).epsilon(1e-14));
    CHECK(zeta_real(60.0) == doctest::Approx(1.0).epsilon(1e-16));
    CHECK_THROWS_AS(zeta_real(1.0), DomainError);
}

}
