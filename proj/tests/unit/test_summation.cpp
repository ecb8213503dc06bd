#include "doctest.h"

#include "nbcrit/summation.hpp"

#include <cmath>
#include <vector>

using namespace nbcrit;

TEST_SUITE("summation") {

TEST_CASE("two_sum recovers the rounding error") {
    auto const [s, e] = two_sum(1e16, 1.0);
    CHECK(s == 1e16);
    CHECK(e == 1.0);

    auto const [s2, e2] = two_sum(0.1, 0.2);
    CHECK(s2 == 0.1 + 0.2);
    long double const exact = static_cast<long double>(0.1) + static_cast<long double>(0.2);
    CHECK(static_cast<long double>(s2) + static_cast<long double>(e2) == exact);
}

TEST_CASE("two_prod is an exact product split") {
    double const a = 1.0 + std::ldexp(1.0, -30);
    auto const [p, e] = two_prod(a, a);
    CHECK(p == 1.0 + std::ldexp(1.0, -29));
    CHECK(e == std::ldexp(1.0, -60));
}

TEST_CASE("CompensatedSum survives catastrophic cancellation") {
    CompensatedSum sum;
    for (double v : {1.0, 1e100, 1.0, -1e100}) {
        sum += v;
    }
    CHECK(sum.value() == 2.0);

    CompensatedSum tenths;
    for (int i = 0; i < 1'000'000; ++i) {
        tenths += 0.1;
    }
    CHECK(std::abs(tenths.value() - 100000.0) < 1e-9);

    CompensatedSum diff(5.0);
    diff -= 3.0;
    CHECK(diff.value() == 2.0);
}

TEST_CASE("dot2 on an ill-conditioned product") {
    std::vector<double> const x = {1e16, 1.0, -1e16};
    std::vector<double> const y = {1.0, 1.0, 1.0};
    CHECK(dot2(x, y) == 1.0);

    double const a = 1.0 + std::ldexp(1.0, -30);
    std::vector<double> const u = {a, -1.0};
    std::vector<double> const v = {a, 1.0 + std::ldexp(1.0, -29)};
    CHECK(dot2(u, v) == std::ldexp(1.0, -60));
}

TEST_CASE("dot2 uses the shorter length") {
    std::vector<double> const x = {1.0, 2.0, 3.0};
    std::vector<double> const y = {4.0, 5.0};
    CHECK(dot2(x, y) == 14.0);
}

}
