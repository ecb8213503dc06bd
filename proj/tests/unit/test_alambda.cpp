#include "doctest.h"

#include "oracles.hpp"

#include "nbcrit/errors.hpp"
#include "nbcrit/innerprod.hpp"

#include <cmath>
#include <numbers>

using namespace nbcrit;

TEST_SUITE("alambda") {

TEST_CASE("A(1) brackets log(2 pi) - gamma") {
    for (double t : {10.0, 100.0, 10'000.0}) {
        auto const a = a_lambda(1.0, t);
        CAPTURE(t);
        CHECK(a.tail_bound == doctest::Approx(1.0 / t));
        CHECK(a.value <= oracle::kA1);
        CHECK(a.value + a.tail_bound >= oracle::kA1);
    }
    CHECK(std::abs(a_lambda(1.0, 10'000.0).value - oracle::kA1) <= 1e-3);
}

TEST_CASE("A is symmetric under lambda -> 1/lambda up to the factor lambda") {
    // t -> t/lambda gives A(1/lambda) = A(lambda) / lambda
    for (double lambda : {2.0, 3.0, 7.5}) {
        double const lhs = a_lambda(1.0 / lambda, 20'000.0).value;
        double const rhs = a_lambda(lambda, 20'000.0 / lambda).value / lambda;
        CHECK(std::abs(lhs - rhs) <= 1e-9);
    }
}

TEST_CASE("piece counting") {
    auto const a = a_lambda(2.0, 10.0);
    CHECK(a.pieces == 20);
    CHECK(a.pieces <= 31);
}

TEST_CASE("growth like (1/2) log lambda") {
    // Splitting at t = 1: int_0^1 {lambda t}/t dt = 1/2 log lambda + 1/2 log(2 pi) + O(1/lambda),
    // and the rest averages {lambda t} to 1/2, leaving (1 - gamma)/2.
    double const offset = 0.5 * std::log(2.0 * std::numbers::pi) + 0.5 * (1.0 - std::numbers::egamma);
    double previous = 1e9;
    for (double lambda : {1e2, 1e3, 1e4}) {
        auto const a = a_lambda(lambda, 20.0);
        double const half_log = 0.5 * std::log(lambda);
        CAPTURE(lambda);
        CHECK(std::abs(a.value + 0.5 * a.tail_bound - (half_log + offset)) <= 0.5 * a.tail_bound + 1e-2);
        double const rel = std::abs(a.value / half_log - 1.0);
        CHECK(rel < previous);
        previous = rel;
    }
}

TEST_CASE("ip_via_A agrees with the cotangent formula") {
    double const t = 1e4;
    for (std::int64_t j = 2; j <= 6; ++j) {
        for (std::int64_t k = j; k <= 6; ++k) {
            double const bound = 4.0 / (static_cast<double>(std::min(j, k)) * t) + 1e-6;
            CHECK(std::abs(ip_via_A(j, k, t) - ip_vasyunin(j, k)) <= bound);
        }
    }
}

TEST_CASE("argument checks") {
    CHECK_THROWS_AS(a_lambda(0.0, 100.0), DomainError);
    CHECK_THROWS_AS(a_lambda(-1.0, 100.0), DomainError);
    CHECK_THROWS_AS(a_lambda(1.0, 9.0), PreconditionError);
    CHECK_THROWS_AS(a_lambda(1e12, 1e6), ResourceError);
    CHECK_THROWS_AS(ip_via_A(1, 3, 100.0), PreconditionError);
}

}
