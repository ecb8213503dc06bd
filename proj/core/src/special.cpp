#include "nbcrit/special.hpp"

#include "nbcrit/errors.hpp"
#include "nbcrit/summation.hpp"

#include <array>
#include <cmath>

namespace nbcrit {

double digamma(double x) {
    if (!(x > 0.0) || !std::isfinite(x)) {
        throw DomainError("digamma: x must be a finite positive number");
    }
    CompensatedSum shift;
    while (x < 10.0) {
        shift -= 1.0 / x;
        x += 1.0;
    }
    double const inv2 = 1.0 / (x * x);
    // B_{2n} / (2n), n = 1..7, Horner in 1/x^2
    double series = inv2 * (1.0 / 12 -
                    inv2 * (1.0 / 120 -
                    inv2 * (1.0 / 252 -
                    inv2 * (1.0 / 240 -
                    inv2 * (1.0 / 132 -
                    inv2 * (691.0 / 32760 -
                    inv2 * (1.0 / 12)))))));
    CompensatedSum result(std::log(x));
    result -= 0.5 / x;
    result -= series;
    result += shift.value();
    return result.value();
}

double zeta_real(double s) {
    if (!(s > 1.0) || !std::isfinite(s)) {
        throw DomainError("zeta_real: requires real s > 1");
    }
    constexpr int kN = 16;
    // B_{2i} / (2i)!
    static constexpr std::array<double, 8> kBernoulliOverFactorial = {
        1.0 / 6 / 2,
        -1.0 / 30 / 24,
        1.0 / 42 / 720,
        -1.0 / 30 / 40320,
        5.0 / 66 / 3628800,
        -691.0 / 2730 / 479001600,
        7.0 / 6 / 87178291200,
        -3617.0 / 510 / 20922789888000,
    };

    CompensatedSum sum;
    for (int n = kN - 1; n >= 1; --n) {
        sum += std::pow(static_cast<double>(n), -s);
    }
    double const big_n = kN;
    double const n_pow = std::pow(big_n, -s);
    sum += big_n * n_pow / (s - 1.0);
    sum += 0.5 * n_pow;

    // rising factorial s(s+1)...(s+2i-2) times N^{-s-2i+1}
    double rising = s;
    double power = n_pow / big_n;
    for (std::size_t i = 0; i < kBernoulliOverFactorial.size(); ++i) {
        sum += kBernoulliOverFactorial[i] * rising * power;
        double const m = 2.0 * static_cast<double>(i) + 1.0;
        rising *= (s + m) * (s + m + 1.0);
        power /= big_n * big_n;
    }
    return sum.value();
}

} // namespace nbcrit
