#include "nbcrit/errors.hpp"
#include "nbcrit/innerprod.hpp"
#include "nbcrit/summation.hpp"

#include <cmath>
#include <string>

namespace nbcrit {

ALambda a_lambda(double lambda, double cutoff) {
    if (!(lambda > 0.0) || !std::isfinite(lambda)) {
        throw DomainError("a_lambda: lambda must be positive");
    }
    if (!(cutoff >= 10.0) || !std::isfinite(cutoff)) {
        throw PreconditionError("a_lambda: cutoff T must be >= 10");
    }
    double const est_pieces = cutoff * (1.0 + lambda);
    if (est_pieces > 4e9) {
        throw ResourceError("a_lambda: too many pieces (" + std::to_string(est_pieces) + ")");
    }

    // On a piece where p = [t] and q = [lambda t] are constant,
    // {t}{lambda t}/t^2 = lambda - (q + lambda p)/t + p q/t^2.
    CompensatedSum sum;
    std::int64_t p = 0;
    std::int64_t q = 0;
    std::int64_t pieces = 0;
    double lo = 0.0;
    while (lo < cutoff) {
        double const next_int = static_cast<double>(p + 1);
        double const next_lam = static_cast<double>(q + 1) / lambda;
        double hi = next_int < next_lam ? next_int : next_lam;
        bool const capped = hi >= cutoff;
        if (capped) {
            hi = cutoff;
        }
        double const width = hi - lo;
        if (width > 0.0) {
            auto const pd = static_cast<double>(p);
            auto const qd = static_cast<double>(q);
            double piece = lambda * width;
            if (p != 0 || q != 0) {
                piece -= (qd + lambda * pd) * std::log1p(width / lo);
                piece += pd * qd * (width / (lo * hi));
            }
            sum += piece;
            ++pieces;
        }
        if (capped) {
            break;
        }
        if (next_int <= hi) {
            ++p;
        }
        if (next_lam <= hi) {
            ++q;
        }
        lo = hi;
    }
    return {sum.value(), 1.0 / cutoff, pieces};
}

double ip_via_A(std::int64_t j, std::int64_t k, double cutoff) {
    if (j < 2 || k < 2) {
        throw PreconditionError("ip_via_A: indices must be >= 2");
    }
    auto const jd = static_cast<double>(j);
    auto const kd = static_cast<double>(k);
    double const a_ratio = a_lambda(kd / jd, cutoff).value;
    double const a_k = a_lambda(kd, cutoff).value;
    double const a_j = a_lambda(jd, cutoff).value;
    double const a_one = a_lambda(1.0, cutoff).value;
    CompensatedSum acc;
    acc += a_ratio / kd;
    acc -= a_k / (jd * kd);
    acc -= a_j / (jd * kd);
    acc += a_one / (jd * kd);
    return acc.value();
}

} // namespace nbcrit
