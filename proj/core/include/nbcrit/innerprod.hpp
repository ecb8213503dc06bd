#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

namespace nbcrit {

// Inner products <f_j, f_k> in L^2(0,1) by three independent routes, plus
// <1, f_k>, the Mellin identity at real s, and the autocorrelation A(lambda).

enum class IpMethod { Vasyunin, DftDoubleSum, DigammaSeries };

std::string_view to_string(IpMethod method) noexcept;
/// Accepts "vasyunin", "dft", "series" (and the enum spellings). Throws PreconditionError.
IpMethod parse_ip_method(std::string_view name);

struct IpLimits {
    std::int64_t dft_m_max = 10'000;
    std::int64_t series_m_max = 1'000'000;
};

/// j = d*j0, k = d*k0, gcd(j0,k0) = 1, a*j0 + b*k0 = 1.
/// Canonical representative: 0 <= b < j0 (b = 0 when j0 == 1).
struct BezoutDecomposition {
    std::int64_t d = 1;
    std::int64_t j0 = 1;
    std::int64_t k0 = 1;
    std::int64_t a = 1;
    std::int64_t b = 0;
};

BezoutDecomposition gcd_bezout(std::int64_t j, std::int64_t k);

std::int64_t lcm_checked(std::int64_t j, std::int64_t k);

/// cot(pi t / n) for integer t not divisible by n. The argument is reduced
/// in integers, so cot_pi_fraction(t, n) == -cot_pi_fraction(n - t, n) exactly.
double cot_pi_fraction(std::int64_t t, std::int64_t n);

/// sum_{r=1}^{n-1} (1/2 - r/n) cot(pi r / n); zero for n = 1, 2.
double cot_sum(std::int64_t n);

/// sum_{r=1}^{n-1} (1/2 - r/n) cot(pi r c / n). Requires gcd(c, n) = 1.
double twisted_cot_sum(std::int64_t n, std::int64_t c);

/// <f_j, f_k> via Vasyunin's cotangent-sum formula. Symmetric bit-for-bit.
double ip_vasyunin(std::int64_t j, std::int64_t k);

/// Same formula with caller-supplied Bezout coefficients (any valid pair).
double ip_vasyunin_with(std::int64_t j, std::int64_t k, BezoutDecomposition const& bz);

struct DftResult {
    double value = 0.0;
    double imag = 0.0; // should vanish; |imag| <= 1e-9 * m is expected
};

/// Discrete-Fourier double sum over q, r = 1..m-1, m a common multiple of j and k.
DftResult ip_dft_detail(std::int64_t j, std::int64_t k, std::int64_t m, IpLimits const& limits = {});
double ip_dft(std::int64_t j, std::int64_t k, std::int64_t m, IpLimits const& limits = {});

/// sum_{r >= 1, r = q mod m} 1/(r(r+1)) = (psi((q+1)/m) - psi(q/m)) / m, 1 <= q <= m.
double tail_sum(std::int64_t q, std::int64_t m);

/// Periodic reduction of sum_r {r/j}{r/k} / (r(r+1)) with m = lcm(j,k).
double ip_series(std::int64_t j, std::int64_t k, IpLimits const& limits = {});

/// Dispatch. DftDoubleSum uses m = lcm(j, k).
double ip(std::int64_t j, std::int64_t k, IpMethod method = IpMethod::Vasyunin,
          IpLimits const& limits = {});

/// <1, f_k> = (log k) / k.
double one_fk(std::int64_t k);

/// <1, f_k> as sum_{q<k} (q/k) tail_sum(q, k). Requires k <= 1e6.
double one_fk_series(std::int64_t k);

struct MellinCheck {
    double series = 0.0;      // int_0^1 f_k(x) x^{s-1} dx from the piecewise series
    double tail_bound = 0.0;  // certified bound on |series - exact|
    double closed_form = 0.0; // (k^-1 - k^-s) zeta(s) / s
    std::int64_t terms = 0;

    double residual() const noexcept { return series - closed_form; }
};

/// Mellin transform of f_k at real s > 1, both sides.
MellinCheck mellin_fk(std::int64_t k, double s);

struct ALambda {
    double value = 0.0;      // integral over (0, T]
    double tail_bound = 0.0; // the dropped part over (T, inf) lies in [0, tail_bound]
    std::int64_t pieces = 0;
};

/// A(lambda) = int_0^inf {t}{lambda t} dt / t^2, truncated at T >= 10 and
/// integrated exactly on each piece where [t] and [lambda t] are constant.
ALambda a_lambda(double lambda, double cutoff);

/// (1/k) A(k/j) - (A(k) + A(j) - A(1)) / (jk), each A truncated at `cutoff`.
double ip_via_A(std::int64_t j, std::int64_t k, double cutoff);

/// ip_vasyunin(j,k) / ((j-1)/j * log(k) / (2k)); tends to 1 as k grows. Requires k > j.
double asymp_ratio(std::int64_t j, std::int64_t k);

/// Memoized Vasyunin evaluator: plain cotangent sums for every denominator up
/// to max_index, and cot(pi t/n) tables for n <= table_limit. Results are
/// bit-identical to ip_vasyunin. Immutable after construction, so const
/// member functions may be called concurrently.
class VasyuninTable {
public:
    explicit VasyuninTable(std::int64_t max_index, std::int64_t table_limit = 4096);

    std::int64_t max_index() const noexcept { return max_index_; }
    double ip(std::int64_t j, std::int64_t k) const;
    double cot_sum(std::int64_t n) const;

private:
    double twisted(std::int64_t n, std::int64_t c) const;

    std::int64_t max_index_;
    std::int64_t table_limit_;
    std::vector<double> plain_sums_;          // index n
    std::vector<std::size_t> offsets_;        // start of table n in cot_values_
    std::vector<double> cot_values_;          // cot(pi t/n), t = 0..n/2
};

} // namespace nbcrit
