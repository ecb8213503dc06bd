#include "nbcrit/cholesky.hpp"

#include "nbcrit/errors.hpp"
#include "nbcrit/summation.hpp"
#include "parallel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace nbcrit {

double CholeskyFactor::operator()(std::int64_t k, std::int64_t j) const {
    if (k < 2 || k > n_ || j < 2) {
        throw PreconditionError("CholeskyFactor: index out of range");
    }
    if (j > k) {
        return 0.0;
    }
    return data_[row_offset(k) + static_cast<std::size_t>(j - 2)];
}

std::span<double const> CholeskyFactor::row(std::int64_t k) const {
    if (k < 2 || k > n_) {
        throw PreconditionError("CholeskyFactor: row out of range");
    }
    return {data_.data() + row_offset(k), static_cast<std::size_t>(k - 1)};
}

void CholeskyFactor::reserve(std::int64_t n_max) {
    if (n_max >= 2) {
        data_.reserve(row_offset(n_max + 1));
    }
}

void CholeskyFactor::append_row(std::span<double const> l_row) {
    std::int64_t const k = n_ + 1;
    if (static_cast<std::int64_t>(l_row.size()) != k - 1) {
        throw PreconditionError("CholeskyFactor::append_row: row " + std::to_string(k) + " needs " +
                                std::to_string(k - 1) + " values");
    }
    data_.insert(data_.end(), l_row.begin(), l_row.end());
    n_ = k;
}

void CholeskyFactor::extend(std::span<double const> p_row) {
    std::int64_t const k = n_ + 1;
    auto const len = static_cast<std::size_t>(k - 1);
    if (p_row.size() != len) {
        throw PreconditionError("chol_extend: row " + std::to_string(k) + " of P needs " +
                                std::to_string(len) + " values");
    }
    std::size_t const start = data_.size();
    data_.resize(start + len);
    double* out = data_.data() + start;
    // L_kj = (P_kj - sum_{i<j} L_ki L_ji) / L_jj
    for (std::size_t c = 0; c + 1 < len; ++c) {
        std::int64_t const j = static_cast<std::int64_t>(c) + 2;
        double const* lj = data_.data() + row_offset(j);
        double const dot = dot2({out, c}, {lj, c});
        out[c] = (p_row[c] - dot) / lj[c];
    }
    double const sq = dot2({out, len - 1}, {out, len - 1});
    double const pivot = p_row[len - 1] - sq;
    if (!(pivot > 0.0)) {
        data_.resize(start);
        throw NumericalBreakdown(k, pivot);
    }
    out[len - 1] = std::sqrt(pivot);
    n_ = k;
}

void chol_extend(CholeskyFactor& factor, std::span<double const> p_row) { factor.extend(p_row); }

CholeskyFactor cholesky(GramMatrix const& gram) {
    CholeskyFactor factor;
    factor.reserve(gram.n());
    for (std::int64_t k = 2; k <= gram.n(); ++k) {
        factor.extend(gram.lower_row(k));
    }
    return factor;
}

std::vector<double> one_fk_vector(std::int64_t n) {
    std::vector<double> f;
    for (std::int64_t k = 2; k <= n; ++k) {
        f.push_back(one_fk(k));
    }
    return f;
}

std::vector<double> forward_solve(CholeskyFactor const& factor, std::span<double const> rhs) {
    std::int64_t const n = factor.n();
    if (static_cast<std::int64_t>(rhs.size()) < n - 1) {
        throw PreconditionError("forward_solve: right-hand side shorter than the factor");
    }
    std::vector<double> e(static_cast<std::size_t>(n - 1), 0.0);
    for (std::int64_t j = 2; j <= n; ++j) {
        auto const row = factor.row(j);
        auto const c = static_cast<std::size_t>(j - 2);
        double const dot = dot2(row.first(c), {e.data(), c});
        e[c] = (rhs[c] - dot) / row[c];
    }
    return e;
}

DnSeries dn_series(CholeskyFactor const& factor) {
    auto const e = forward_solve(factor, one_fk_vector(factor.n()));
    DnSeries out;
    CompensatedSum energy;
    for (std::size_t i = 0; i < e.size(); ++i) {
        energy += e[i] * e[i];
        out.push_back({static_cast<std::int64_t>(i) + 2, std::sqrt(1.0 - energy.value())});
    }
    return out;
}

DnSeries dn_series(std::int64_t n_max, unsigned threads) {
    if (n_max < 2) {
        throw PreconditionError("dn_series: n_max must be >= 2");
    }
    // One pass: each new row of P extends L, then E grows by one entry.
    VasyuninTable const table(n_max);
    CholeskyFactor factor;
    factor.reserve(n_max);
    std::vector<double> e;
    DnSeries out;
    CompensatedSum energy;
    constexpr std::int64_t kBatch = 64;
    std::vector<std::vector<double>> rows;
    for (std::int64_t first = 2; first <= n_max; first += kBatch) {
        std::int64_t const last = std::min(n_max, first + kBatch - 1);
        rows.assign(static_cast<std::size_t>(last - first + 1), {});
        detail::parallel_for(first, last + 1, threads, [&](std::int64_t k) {
            auto& row = rows[static_cast<std::size_t>(k - first)];
            row.resize(static_cast<std::size_t>(k - 1));
            for (std::int64_t j = 2; j <= k; ++j) {
                row[static_cast<std::size_t>(j - 2)] = table.ip(j, k);
            }
        });
        for (std::int64_t k = first; k <= last; ++k) {
            factor.extend(rows[static_cast<std::size_t>(k - first)]);
            auto const lrow = factor.row(k);
            auto const c = static_cast<std::size_t>(k - 2);
            double const dot = dot2(lrow.first(c), {e.data(), c});
            e.push_back((one_fk(k) - dot) / lrow[c]);
            energy += e.back() * e.back();
            out.push_back({k, std::sqrt(1.0 - energy.value())});
        }
    }
    return out;
}

std::vector<double> best_approx_coeffs(CholeskyFactor const& factor, std::int64_t n) {
    if (n < 2 || n > factor.n()) {
        throw PreconditionError("best_approx_coeffs: factor does not reach n");
    }
    auto const f = one_fk_vector(n);
    std::vector<double> y(f.size(), 0.0);
    for (std::int64_t j = 2; j <= n; ++j) {
        auto const row = factor.row(j);
        auto const c = static_cast<std::size_t>(j - 2);
        y[c] = (f[c] - dot2(row.first(c), {y.data(), c})) / row[c];
    }
    // back substitution with L^t: lambda_i = (y_i - sum_{t>i} L_ti lambda_t) / L_ii
    std::vector<double> lambda(f.size(), 0.0);
    for (std::int64_t i = n; i >= 2; --i) {
        auto const c = static_cast<std::size_t>(i - 2);
        CompensatedSum acc(y[c]);
        for (std::int64_t t = i + 1; t <= n; ++t) {
            acc -= factor(t, i) * lambda[static_cast<std::size_t>(t - 2)];
        }
        lambda[c] = acc.value() / factor(i, i);
    }
    return lambda;
}

std::vector<double> orthonormal_coeffs(CholeskyFactor const& factor, std::int64_t j) {
    if (j < 2 || j > factor.n()) {
        throw PreconditionError("orthonormal_coeffs: factor does not reach j");
    }
    // L^t x = unit_j on the leading block: x_j = 1/L_jj, then upward.
    std::vector<double> c(static_cast<std::size_t>(j - 1), 0.0);
    c.back() = 1.0 / factor(j, j);
    for (std::int64_t i = j - 1; i >= 2; --i) {
        CompensatedSum acc;
        for (std::int64_t t = i + 1; t <= j; ++t) {
            acc -= factor(t, i) * c[static_cast<std::size_t>(t - 2)];
        }
        c[static_cast<std::size_t>(i - 2)] = acc.value() / factor(i, i);
    }
    return c;
}

double noise_threshold(std::int64_t k, double p_kk) {
    double const ulp = std::nextafter(p_kk, std::numeric_limits<double>::infinity()) - p_kk;
    return 1e3 * static_cast<double>(k) * ulp;
}

namespace {

Sign sign_of(double v) { return v > 0.0 ? Sign::Positive : (v < 0.0 ? Sign::Negative : Sign::Indeterminate); }

} // namespace

SignTriple sign_equivalence_check(std::int64_t j, std::int64_t k, CholeskyFactor const& factor,
                                  std::int64_t guard) {
    if (j < 2 || k < j) {
        throw PreconditionError("sign_equivalence_check: requires 2 <= j <= k");
    }
    if (k > guard) {
        throw ResourceError("sign_equivalence_check: k exceeds guard " + std::to_string(guard));
    }
    if (factor.n() < k) {
        throw PreconditionError("sign_equivalence_check: factor does not reach k");
    }
    SignTriple out;
    out.l_kj = factor(k, j);
    double const p_kk = ip_vasyunin(k, k);
    out.cholesky = std::abs(out.l_kj) < noise_threshold(k, p_kk) ? Sign::Indeterminate : sign_of(out.l_kj);

    std::vector<std::int64_t> idx;
    for (std::int64_t i = 2; i < j; ++i) {
        idx.push_back(i);
    }
    auto const bordered = bordered_det_detail(idx, j, k);
    out.bordered_value = bordered.value;
    out.bordered = bordered.uncertain ? Sign::Indeterminate : sign_of(bordered.value);

    auto const pol = polarization_check(idx, j, k);
    out.polarization_diff = pol.rhs;
    double const scale = std::max(std::abs(pol.plus.value), std::abs(pol.minus.value));
    double const band = 1e3 * static_cast<double>(idx.size() + 1) * std::numeric_limits<double>::epsilon() * scale;
    // for j == k the "minus" Gramian is of f_j - f_j = 0 and vanishes exactly
    bool const minus_uncertain = j != k && pol.minus.uncertain;
    bool const uncertain = pol.plus.uncertain || minus_uncertain || std::abs(pol.rhs) <= band;
    out.polarization = uncertain ? Sign::Indeterminate : sign_of(pol.rhs);
    return out;
}

SignTriple sign_equivalence_check(std::int64_t j, std::int64_t k, std::int64_t guard) {
    if (k > guard) {
        throw ResourceError("sign_equivalence_check: k exceeds guard " + std::to_string(guard));
    }
    if (k < 2) {
        throw PreconditionError("sign_equivalence_check: requires 2 <= j <= k");
    }
    return sign_equivalence_check(j, k, cholesky(build_gram(k)), guard);
}

} // namespace nbcrit
