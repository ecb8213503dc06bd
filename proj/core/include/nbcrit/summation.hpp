#pragma once

#include <cmath>
#include <span>

namespace nbcrit {

/// Error-free transformation: a + b == sum + err exactly.
struct TwoSum {
    double sum;
    double err;
};

inline TwoSum two_sum(double a, double b) noexcept {
    double const s = a + b;
    double const bb = s - a;
    double const e = (a - (s - bb)) + (b - bb);
    return {s, e};
}

/// Error-free product via fma: a * b == prod + err exactly.
inline TwoSum two_prod(double a, double b) noexcept {
    double const p = a * b;
    return {p, std::fma(a, b, -p)};
}

/// Neumaier's variant of Kahan summation. Order-dependent but deterministic.
class CompensatedSum {
public:
    CompensatedSum() = default;
    explicit CompensatedSum(double initial) noexcept : sum_(initial) {}

    CompensatedSum& operator+=(double value) noexcept {
        auto const [s, e] = two_sum(sum_, value);
        sum_ = s;
        comp_ += e;
        return *this;
    }
    CompensatedSum& operator-=(double value) noexcept { return *this += -value; }

    double value() const noexcept { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

/// Compensated dot product (Ogita-Rump-Oishi Dot2); result is as if computed
/// in twice the working precision, then rounded.
inline double dot2(std::span<double const> x, std::span<double const> y) noexcept {
    double s = 0.0;
    double c = 0.0;
    auto const n = x.size() < y.size() ? x.size() : y.size();
    for (std::size_t i = 0; i < n; ++i) {
        auto const [p, pe] = two_prod(x[i], y[i]);
        auto const [t, te] = two_sum(s, p);
        s = t;
        c += pe + te;
    }
    return s + c;
}

} // namespace nbcrit
