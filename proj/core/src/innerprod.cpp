#include "nbcrit/innerprod.hpp"

#include "nbcrit/errors.hpp"
#include "nbcrit/special.hpp"
#include "nbcrit/summation.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <string>
#include <utility>

namespace nbcrit {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kHalfPi = std::numbers::pi / 2;

void require_index(std::int64_t k, char const* what) {
    if (k < 2) {
        throw PreconditionError(std::string(what) + ": index must be >= 2, got " + std::to_string(k));
    }
}

std::int64_t positive_mod(std::int64_t a, std::int64_t n) {
    std::int64_t r = a % n;
    return r < 0 ? r + n : r;
}

// cot(pi t / n) for 1 <= t, 2t <= n. Arguments are kept in (0, pi/4].
double cot_base(std::int64_t t, std::int64_t n) {
    if (2 * t == n) {
        return 0.0;
    }
    auto const nd = static_cast<double>(n);
    if (4 * t <= n) {
        return 1.0 / std::tan(kPi * (static_cast<double>(t) / nd));
    }
    // cot(x) = tan(pi/2 - x), pi/2 - pi t/n = pi (n - 2t) / (2n)
    return std::tan(kPi * (static_cast<double>(n - 2 * t) / (2.0 * nd)));
}

// Shared body of every cotangent sum, so the direct and memoized paths
// produce the same bits. Pairs r with n - r (equal terms) and sums r < n/2.
// cot(idx) must return cot(pi idx / n) for idx in [1, n-1].
template <class Cot>
double twisted_sum_impl(std::int64_t n, std::int64_t c, Cot&& cot) {
    if (n < 3) {
        return 0.0;
    }
    CompensatedSum sum;
    auto const nd = static_cast<double>(n);
    std::int64_t idx = 0;
    for (std::int64_t r = 1; 2 * r < n; ++r) {
        idx += c;
        if (idx >= n) {
            idx -= n;
        }
        sum += (static_cast<double>(n - 2 * r) / nd) * cot(idx);
    }
    return sum.value();
}

double direct_cot(std::int64_t idx, std::int64_t n) {
    return 2 * idx > n ? -cot_base(n - idx, n) : cot_base(idx, n);
}

void validate_bezout(std::int64_t j, std::int64_t k, BezoutDecomposition const& bz) {
    bool const ok = bz.d >= 1 && bz.j0 >= 1 && bz.k0 >= 1 && bz.d * bz.j0 == j && bz.d * bz.k0 == k &&
                    std::gcd(bz.j0, bz.k0) == 1 && bz.a * bz.j0 + bz.b * bz.k0 == 1;
    if (!ok) {
        throw PreconditionError("ip_vasyunin: inconsistent Bezout decomposition");
    }
}

// The six-term formula, with j <= k and Bezout residues already reduced.
template <class Plain, class Twisted>
double assemble_vasyunin(std::int64_t j, std::int64_t k, std::int64_t d, std::int64_t j0,
                         std::int64_t b_mod_j0, std::int64_t k0, std::int64_t a_mod_k0,
                         Plain&& plain, Twisted&& twisted) {
    auto const jd = static_cast<double>(j);
    auto const kd = static_cast<double>(k);
    CompensatedSum acc;
    acc += 0.5 * (kd - 1.0) * std::log(jd);
    acc += 0.5 * (jd - 1.0) * std::log(kd);
    acc -= kHalfPi * plain(j);
    acc -= kHalfPi * plain(k);
    acc += kHalfPi * static_cast<double>(d) * twisted(j0, b_mod_j0);
    acc += kHalfPi * static_cast<double>(d) * twisted(k0, a_mod_k0);
    return acc.value() / (jd * kd);
}

std::int64_t extended_inverse(std::int64_t a, std::int64_t n) {
    // a^{-1} mod n, gcd(a, n) = 1, n >= 2
    std::int64_t old_r = positive_mod(a, n);
    std::int64_t r = n;
    std::int64_t old_s = 1;
    std::int64_t s = 0;
    while (r != 0) {
        std::int64_t const q = old_r / r;
        old_r = std::exchange(r, old_r - q * r);
        old_s = std::exchange(s, old_s - q * s);
    }
    return positive_mod(old_s, n);
}

} // namespace

std::string_view to_string(IpMethod method) noexcept {
    switch (method) {
    case IpMethod::Vasyunin:
        return "vasyunin";
    case IpMethod::DftDoubleSum:
        return "dft";
    case IpMethod::DigammaSeries:
        return "series";
    }
    return "unknown";
}

IpMethod parse_ip_method(std::string_view name) {
    if (name == "vasyunin" || name == "Vasyunin") return IpMethod::Vasyunin;
    if (name == "dft" || name == "DftDoubleSum") return IpMethod::DftDoubleSum;
    if (name == "series" || name == "digamma" || name == "DigammaSeries") return IpMethod::DigammaSeries;
    throw PreconditionError("unknown inner-product method: " + std::string(name));
}

BezoutDecomposition gcd_bezout(std::int64_t j, std::int64_t k) {
    require_index(j, "gcd_bezout");
    require_index(k, "gcd_bezout");
    BezoutDecomposition bz;
    bz.d = std::gcd(j, k);
    bz.j0 = j / bz.d;
    bz.k0 = k / bz.d;
    bz.b = bz.j0 == 1 ? 0 : extended_inverse(bz.k0, bz.j0);
    bz.a = (1 - bz.b * bz.k0) / bz.j0;
    return bz;
}

std::int64_t lcm_checked(std::int64_t j, std::int64_t k) {
    std::int64_t const g = std::gcd(j, k);
    std::int64_t const q = j / g;
    if (q != 0 && k > std::numeric_limits<std::int64_t>::max() / q) {
        throw ResourceError("lcm overflows 64 bits");
    }
    return q * k;
}

double cot_pi_fraction(std::int64_t t, std::int64_t n) {
    if (n < 1) {
        throw PreconditionError("cot_pi_fraction: n must be >= 1");
    }
    std::int64_t const idx = positive_mod(t, n);
    if (idx == 0) {
        throw DomainError("cot_pi_fraction: pole at a multiple of pi");
    }
    return direct_cot(idx, n);
}

double cot_sum(std::int64_t n) {
    if (n < 1) {
        throw PreconditionError("cot_sum: n must be >= 1");
    }
    return twisted_sum_impl(n, 1, [n](std::int64_t idx) { return direct_cot(idx, n); });
}

double twisted_cot_sum(std::int64_t n, std::int64_t c) {
    if (n < 1) {
        throw PreconditionError("twisted_cot_sum: n must be >= 1");
    }
    if (n == 1) {
        return 0.0;
    }
    std::int64_t const cr = positive_mod(c, n);
    if (std::gcd(cr, n) != 1) {
        throw PreconditionError("twisted_cot_sum: gcd(c, n) must be 1");
    }
    return twisted_sum_impl(n, cr, [n](std::int64_t idx) { return direct_cot(idx, n); });
}

double ip_vasyunin_with(std::int64_t j, std::int64_t k, BezoutDecomposition const& bz) {
    require_index(j, "ip_vasyunin");
    require_index(k, "ip_vasyunin");
    validate_bezout(j, k, bz);
    std::int64_t j0 = bz.j0;
    std::int64_t k0 = bz.k0;
    std::int64_t a = bz.a;
    std::int64_t b = bz.b;
    if (j > k) {
        std::swap(j, k);
        std::swap(j0, k0);
        std::swap(a, b);
    }
    auto const b_mod = j0 == 1 ? 0 : positive_mod(b, j0);
    auto const a_mod = k0 == 1 ? 0 : positive_mod(a, k0);
    return assemble_vasyunin(
        j, k, bz.d, j0, b_mod, k0, a_mod, [](std::int64_t n) { return cot_sum(n); },
        [](std::int64_t n, std::int64_t c) {
            return twisted_sum_impl(n, c, [n](std::int64_t idx) { return direct_cot(idx, n); });
        });
}

double ip_vasyunin(std::int64_t j, std::int64_t k) {
    require_index(j, "ip_vasyunin");
    require_index(k, "ip_vasyunin");
    if (j > k) {
        std::swap(j, k);
    }
    return ip_vasyunin_with(j, k, gcd_bezout(j, k));
}

DftResult ip_dft_detail(std::int64_t j, std::int64_t k, std::int64_t m, IpLimits const& limits) {
    require_index(j, "ip_dft");
    require_index(k, "ip_dft");
    if (m < 1 || m % j != 0 || m % k != 0) {
        throw PreconditionError("ip_dft: m must be a common multiple of j and k");
    }
    if (m > limits.dft_m_max) {
        throw ResourceError("ip_dft: m = " + std::to_string(m) + " exceeds limit " +
                            std::to_string(limits.dft_m_max));
    }
    auto const md = static_cast<double>(m);
    auto const count = static_cast<std::size_t>(m);

    // omega^{-t} = exp(-2 pi i t / m)
    std::vector<double> w_re(count);
    std::vector<double> w_im(count);
    for (std::int64_t t = 0; t < m; ++t) {
        double const angle = 2.0 * kPi * (static_cast<double>(t) / md);
        w_re[static_cast<std::size_t>(t)] = std::cos(angle);
        w_im[static_cast<std::size_t>(t)] = -std::sin(angle);
    }

    // c_r = (omega^{-r} - 1) log(1 - omega^r), with theta = 2 pi r/m, h = theta/2:
    // omega^{-r} - 1 = -2 sin(h)^2 - 2i sin(h) cos(h),  log(1 - omega^r) = log(2 sin h) + i (h - pi/2)
    std::vector<double> c_re(count, 0.0);
    std::vector<double> c_im(count, 0.0);
    for (std::int64_t r = 1; r < m; ++r) {
        double const h = kPi * (static_cast<double>(r) / md);
        double const s = std::sin(h);
        double const x = -2.0 * s * s;
        double const y = -2.0 * s * std::cos(h);
        double const u = std::log(2.0 * s);
        double const v = h - kHalfPi;
        c_re[static_cast<std::size_t>(r)] = x * u - y * v;
        c_im[static_cast<std::size_t>(r)] = x * v + y * u;
    }

    CompensatedSum total_re;
    CompensatedSum total_im;
    for (std::int64_t q = 1; q < m; ++q) {
        double const weight = (static_cast<double>(q % j) / static_cast<double>(j)) *
                              (static_cast<double>(q % k) / static_cast<double>(k));
        if (weight == 0.0) {
            continue;
        }
        double inner_re = 0.0;
        double inner_im = 0.0;
        std::int64_t idx = 0;
        for (std::int64_t r = 1; r < m; ++r) {
            idx += q;
            if (idx >= m) {
                idx -= m;
            }
            auto const ui = static_cast<std::size_t>(idx);
            auto const ur = static_cast<std::size_t>(r);
            inner_re += w_re[ui] * c_re[ur] - w_im[ui] * c_im[ur];
            inner_im += w_re[ui] * c_im[ur] + w_im[ui] * c_re[ur];
        }
        total_re += weight * inner_re;
        total_im += weight * inner_im;
    }
    return {total_re.value() / md, total_im.value() / md};
}

double ip_dft(std::int64_t j, std::int64_t k, std::int64_t m, IpLimits const& limits) {
    return ip_dft_detail(j, k, m, limits).value;
}

double tail_sum(std::int64_t q, std::int64_t m) {
    if (m < 1 || q < 1 || q > m) {
        throw PreconditionError("tail_sum: requires 1 <= q <= m");
    }
    auto const md = static_cast<double>(m);
    return (digamma(static_cast<double>(q + 1) / md) - digamma(static_cast<double>(q) / md)) / md;
}

double ip_series(std::int64_t j, std::int64_t k, IpLimits const& limits) {
    require_index(j, "ip_series");
    require_index(k, "ip_series");
    std::int64_t const m = lcm_checked(j, k);
    if (m > limits.series_m_max) {
        throw ResourceError("ip_series: lcm = " + std::to_string(m) + " exceeds limit " +
                            std::to_string(limits.series_m_max));
    }
    CompensatedSum sum;
    for (std::int64_t q = 1; q < m; ++q) {
        std::int64_t const qj = q % j;
        std::int64_t const qk = q % k;
        if (qj == 0 || qk == 0) {
            continue;
        }
        double const weight = (static_cast<double>(qj) / static_cast<double>(j)) *
                              (static_cast<double>(qk) / static_cast<double>(k));
        sum += weight * tail_sum(q, m);
    }
    return sum.value();
}

double ip(std::int64_t j, std::int64_t k, IpMethod method, IpLimits const& limits) {
    switch (method) {
    case IpMethod::Vasyunin:
        return ip_vasyunin(j, k);
    case IpMethod::DftDoubleSum:
        require_index(j, "ip_dft");
        require_index(k, "ip_dft");
        return ip_dft(j, k, lcm_checked(j, k), limits);
    case IpMethod::DigammaSeries:
        return ip_series(j, k, limits);
    }
    throw PreconditionError("ip: invalid method");
}

double one_fk(std::int64_t k) {
    require_index(k, "one_fk");
    auto const kd = static_cast<double>(k);
    return std::log(kd) / kd;
}

double one_fk_series(std::int64_t k) {
    require_index(k, "one_fk_series");
    if (k > 1'000'000) {
        throw ResourceError("one_fk_series: k must be <= 1e6");
    }
    CompensatedSum sum;
    auto const kd = static_cast<double>(k);
    for (std::int64_t q = 1; q < k; ++q) {
        sum += (static_cast<double>(q) / kd) * tail_sum(q, k);
    }
    return sum.value();
}

MellinCheck mellin_fk(std::int64_t k, double s) {
    require_index(k, "mellin_fk");
    if (!(s > 1.0) || !std::isfinite(s)) {
        throw DomainError("mellin_fk: requires real s > 1");
    }
    auto const kd = static_cast<double>(k);
    // Residual after R terms (R a multiple of k) is bounded by (k/2)(R+1)^{-s-1}
    // once the mean-value tail (k-1)/(2k) (R+1)^{-s} / s is added back.
    constexpr double kTarget = 1e-11;
    double const needed = std::pow(0.5 * kd / kTarget, 1.0 / (s + 1.0));
    auto periods = static_cast<std::int64_t>(std::ceil(needed / kd));
    periods = periods < 1 ? 1 : periods;
    std::int64_t const big_r = periods * k;

    CompensatedSum sum;
    for (std::int64_t r = 1; r <= big_r; ++r) {
        std::int64_t const rem = r % k;
        if (rem == 0) {
            continue;
        }
        auto const rd = static_cast<double>(r);
        // r^{-s} - (r+1)^{-s} = -r^{-s} expm1(-s log1p(1/r))
        double const delta = -std::pow(rd, -s) * std::expm1(-s * std::log1p(1.0 / rd));
        sum += (static_cast<double>(rem) / kd) * delta;
    }
    double const rp1 = static_cast<double>(big_r) + 1.0;
    sum += ((kd - 1.0) / (2.0 * kd)) * std::pow(rp1, -s);

    MellinCheck out;
    out.series = sum.value() / s;
    out.tail_bound = 0.5 * kd * std::pow(rp1, -s - 1.0);
    out.closed_form = (1.0 / kd - std::pow(kd, -s)) * zeta_real(s) / s;
    out.terms = big_r;
    return out;
}

double asymp_ratio(std::int64_t j, std::int64_t k) {
    require_index(j, "asymp_ratio");
    if (k <= j) {
        throw PreconditionError("asymp_ratio: requires k > j");
    }
    auto const jd = static_cast<double>(j);
    auto const kd = static_cast<double>(k);
    double const model = ((jd - 1.0) / jd) * (std::log(kd) / (2.0 * kd));
    return ip_vasyunin(j, k) / model;
}

VasyuninTable::VasyuninTable(std::int64_t max_index, std::int64_t table_limit)
    : max_index_(max_index), table_limit_(table_limit < max_index ? table_limit : max_index) {
    if (max_index < 2) {
        throw PreconditionError("VasyuninTable: max_index must be >= 2");
    }
    offsets_.assign(static_cast<std::size_t>(table_limit_ + 2), 0);
    std::size_t total = 0;
    for (std::int64_t n = 0; n <= table_limit_; ++n) {
        offsets_[static_cast<std::size_t>(n)] = total;
        total += static_cast<std::size_t>(n / 2 + 1);
    }
    offsets_[static_cast<std::size_t>(table_limit_ + 1)] = total;
    cot_values_.assign(total, 0.0);
    for (std::int64_t n = 3; n <= table_limit_; ++n) {
        auto const base = offsets_[static_cast<std::size_t>(n)];
        for (std::int64_t t = 1; 2 * t <= n; ++t) {
            cot_values_[base + static_cast<std::size_t>(t)] = cot_base(t, n);
        }
    }
    plain_sums_.assign(static_cast<std::size_t>(max_index + 1), 0.0);
    for (std::int64_t n = 1; n <= max_index; ++n) {
        plain_sums_[static_cast<std::size_t>(n)] = twisted(n, 1);
    }
}

double VasyuninTable::twisted(std::int64_t n, std::int64_t c) const {
    if (n > table_limit_) {
        return twisted_sum_impl(n, c, [n](std::int64_t idx) { return direct_cot(idx, n); });
    }
    double const* tab = cot_values_.data() + offsets_[static_cast<std::size_t>(n)];
    return twisted_sum_impl(n, c, [n, tab](std::int64_t idx) {
        return 2 * idx > n ? -tab[n - idx] : tab[idx];
    });
}

double VasyuninTable::cot_sum(std::int64_t n) const {
    if (n < 1 || n > max_index_) {
        throw PreconditionError("VasyuninTable::cot_sum: n out of range");
    }
    return plain_sums_[static_cast<std::size_t>(n)];
}

double VasyuninTable::ip(std::int64_t j, std::int64_t k) const {
    require_index(j, "VasyuninTable::ip");
    require_index(k, "VasyuninTable::ip");
    if (j > k) {
        std::swap(j, k);
    }
    if (k > max_index_) {
        throw PreconditionError("VasyuninTable::ip: index exceeds table range");
    }
    BezoutDecomposition const bz = gcd_bezout(j, k);
    auto const b_mod = bz.j0 == 1 ? 0 : positive_mod(bz.b, bz.j0);
    auto const a_mod = bz.k0 == 1 ? 0 : positive_mod(bz.a, bz.k0);
    return assemble_vasyunin(
        j, k, bz.d, bz.j0, b_mod, bz.k0, a_mod,
        [this](std::int64_t n) { return plain_sums_[static_cast<std::size_t>(n)]; },
        [this](std::int64_t n, std::int64_t c) { return twisted(n, c); });
}

} // namespace nbcrit
