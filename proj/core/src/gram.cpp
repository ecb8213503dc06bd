#include "nbcrit/gram.hpp"

#include "nbcrit/errors.hpp"
#include "nbcrit/format.hpp"
#include "parallel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <ostream>
#include <set>
#include <string>

namespace nbcrit {
namespace {

InnerProduct or_default(InnerProduct const& ip) {
    if (ip) {
        return ip;
    }
    return [](std::int64_t j, std::int64_t k) { return ip_vasyunin(j, k); };
}

void check_indices(std::span<std::int64_t const> idx, std::int64_t g, std::int64_t h) {
    std::set<std::int64_t> seen;
    for (auto const i : idx) {
        if (i < 2) {
            throw PreconditionError("bordered_det: indices must be >= 2");
        }
        if (!seen.insert(i).second) {
            throw PreconditionError("bordered_det: duplicate index " + std::to_string(i));
        }
    }
    if (g < 2 || h < 2) {
        throw PreconditionError("bordered_det: indices must be >= 2");
    }
    if (seen.contains(g)) {
        throw PreconditionError("bordered_det: g = " + std::to_string(g) + " duplicates a leading index");
    }
}

} // namespace

GramMatrix::GramMatrix(std::int64_t n) : n_(n) {
    if (n < 2) {
        throw PreconditionError("GramMatrix: n must be >= 2");
    }
    auto const m = static_cast<std::size_t>(n - 1);
    entries_.assign(m * (m + 1) / 2, 0.0);
}

std::size_t GramMatrix::index(std::int64_t j, std::int64_t k) const {
    if (j < 2 || k < 2 || j > n_ || k > n_) {
        throw PreconditionError("GramMatrix: index out of range");
    }
    if (j > k) {
        std::swap(j, k);
    }
    // row k (0-based k-2) starts at (k-2)(k-1)/2
    auto const row = static_cast<std::size_t>(k - 2);
    return row * (row + 1) / 2 + static_cast<std::size_t>(j - 2);
}

double GramMatrix::operator()(std::int64_t j, std::int64_t k) const { return entries_[index(j, k)]; }

void GramMatrix::set(std::int64_t j, std::int64_t k, double value) { entries_[index(j, k)] = value; }

std::span<double const> GramMatrix::lower_row(std::int64_t k) const {
    auto const start = index(2, k);
    return {entries_.data() + start, static_cast<std::size_t>(k - 1)};
}

GramMatrix build_gram(std::int64_t n, IpMethod method, unsigned threads, IpLimits const& limits) {
    GramMatrix gram(n);
    std::unique_ptr<VasyuninTable> table;
    if (method == IpMethod::Vasyunin) {
        table = std::make_unique<VasyuninTable>(n);
    }
    detail::parallel_for(2, n + 1, threads, [&](std::int64_t k) {
        for (std::int64_t j = 2; j <= k; ++j) {
            double const v = table ? table->ip(j, k) : ip(j, k, method, limits);
            gram.set(j, k, v); // distinct slots per (j,k)
        }
    });
    return gram;
}

void write_gram_csv(std::ostream& os, GramMatrix const& gram) {
    os << "row";
    for (std::int64_t k = 2; k <= gram.n(); ++k) {
        os << ',' << k;
    }
    os << '\n';
    for (std::int64_t j = 2; j <= gram.n(); ++j) {
        os << j;
        for (std::int64_t k = 2; k <= gram.n(); ++k) {
            os << ',' << format_g12(gram(j, k));
        }
        os << '\n';
    }
}

DeterminantResult gram_det(DenseMatrix a) {
    std::size_t const n = a.size();
    DeterminantResult out;
    if (n == 0) {
        out.value = 1.0;
        out.sign = 1;
        return out;
    }
    double max_entry = 0.0;
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < n; ++c) {
            max_entry = std::max(max_entry, std::abs(a(r, c)));
        }
    }
    double const noise = 1e3 * static_cast<double>(n) * std::numeric_limits<double>::epsilon() * max_entry;

    int sign = 1;
    double log_abs = 0.0;
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        for (std::size_t r = col + 1; r < n; ++r) {
            if (std::abs(a(r, col)) > std::abs(a(piv, col))) {
                piv = r;
            }
        }
        double const pivot = a(piv, col);
        if (pivot == 0.0) {
            out.value = 0.0;
            out.sign = 0;
            out.log_abs = -std::numeric_limits<double>::infinity();
            out.uncertain = true;
            return out;
        }
        if (std::abs(pivot) < noise) {
            out.uncertain = true;
        }
        if (piv != col) {
            for (std::size_t c = 0; c < n; ++c) {
                std::swap(a(piv, c), a(col, c));
            }
            sign = -sign;
        }
        if (pivot < 0.0) {
            sign = -sign;
        }
        log_abs += std::log(std::abs(pivot));
        for (std::size_t r = col + 1; r < n; ++r) {
            double const factor = a(r, col) / pivot;
            if (factor == 0.0) {
                continue;
            }
            for (std::size_t c = col + 1; c < n; ++c) {
                a(r, c) -= factor * a(col, c);
            }
        }
    }
    out.sign = sign;
    out.log_abs = log_abs;
    out.value = sign * std::exp(log_abs);
    return out;
}

double dn_gram(std::int64_t n, std::int64_t max_n) {
    if (n < 2) {
        throw PreconditionError("dn_gram: n must be >= 2");
    }
    if (n > max_n) {
        throw ResourceError("dn_gram: n = " + std::to_string(n) + " exceeds the Gram-formula guard " +
                            std::to_string(max_n) + "; use the Cholesky path (dn_series)");
    }
    auto const m = static_cast<std::size_t>(n - 1);
    VasyuninTable const table(n);
    DenseMatrix with_one(m + 1);
    DenseMatrix plain(m);
    with_one(0, 0) = 1.0;
    for (std::int64_t k = 2; k <= n; ++k) {
        auto const uk = static_cast<std::size_t>(k - 1);
        with_one(0, uk) = with_one(uk, 0) = one_fk(k);
        for (std::int64_t j = 2; j <= n; ++j) {
            auto const uj = static_cast<std::size_t>(j - 1);
            double const v = table.ip(j, k);
            with_one(uj, uk) = v;
            plain(uj - 1, uk - 1) = v;
        }
    }
    auto const num = gram_det(std::move(with_one));
    auto const den = gram_det(std::move(plain));
    if (num.sign <= 0 || den.sign <= 0) {
        throw NumericalBreakdown(n, num.sign <= 0 ? num.value : den.value);
    }
    return std::sqrt(std::exp(num.log_abs - den.log_abs));
}

DeterminantResult bordered_det_detail(std::span<std::int64_t const> idx, std::int64_t g, std::int64_t h,
                                      InnerProduct const& ip_in) {
    check_indices(idx, g, h);
    auto const ip = or_default(ip_in);
    std::size_t const m = idx.size() + 1;
    DenseMatrix mat(m);
    for (std::size_t r = 0; r < m; ++r) {
        std::int64_t const row = r + 1 == m ? g : idx[r];
        for (std::size_t c = 0; c < m; ++c) {
            std::int64_t const col = c + 1 == m ? h : idx[c];
            mat(r, c) = ip(row, col);
        }
    }
    return gram_det(std::move(mat));
}

double bordered_det(std::span<std::int64_t const> idx, std::int64_t g, std::int64_t h, InnerProduct const& ip) {
    return bordered_det_detail(idx, g, h, ip).value;
}

DeterminantResult hj_det_detail(std::int64_t j, InnerProduct const& ip_in) {
    if (j < 2) {
        throw PreconditionError("hj_det: j must be >= 2");
    }
    auto const ip = or_default(ip_in);
    auto const m = static_cast<std::size_t>(j - 1);
    DenseMatrix mat(m);
    for (std::int64_t i = 2; i <= j; ++i) {
        auto const r = static_cast<std::size_t>(i - 2);
        for (std::int64_t c = 2; c < j; ++c) {
            mat(r, static_cast<std::size_t>(c - 2)) = ip(i, c);
        }
        mat(r, m - 1) = static_cast<double>(i - 1) / static_cast<double>(i);
    }
    return gram_det(std::move(mat));
}

double hj_det(std::int64_t j, InnerProduct const& ip) { return hj_det_detail(j, ip).value; }

PolarizationCheck polarization_check(std::span<std::int64_t const> idx, std::int64_t g, std::int64_t h,
                                     InnerProduct const& ip_in) {
    check_indices(idx, g, h);
    auto const ip = or_default(ip_in);
    std::size_t const m = idx.size() + 1;
    // Gram matrix of (f_idx..., f_g + sign f_h), expanded bilinearly.
    auto build = [&](double sign) {
        DenseMatrix mat(m);
        for (std::size_t r = 0; r + 1 < m; ++r) {
            for (std::size_t c = 0; c + 1 < m; ++c) {
                mat(r, c) = ip(idx[r], idx[c]);
            }
            double const border = ip(idx[r], g) + sign * ip(idx[r], h);
            mat(r, m - 1) = border;
            mat(m - 1, r) = border;
        }
        mat(m - 1, m - 1) = ip(g, g) + 2.0 * sign * ip(g, h) + ip(h, h);
        return mat;
    };
    PolarizationCheck out;
    out.plus = gram_det(build(1.0));
    out.minus = gram_det(build(-1.0));
    out.lhs = 4.0 * bordered_det_detail(idx, g, h, ip).value;
    out.rhs = out.plus.value - out.minus.value;
    return out;
}

std::optional<ZeroFreeDisk> zero_free_disk(double d) {
    if (!(d > 0.0) || !std::isfinite(d)) {
        throw DomainError("zero_free_disk: d must be positive");
    }
    if (d >= 1.0) {
        return std::nullopt;
    }
    double const inv2 = 1.0 / (d * d);
    return ZeroFreeDisk{inv2, std::sqrt(inv2 * inv2 - inv2)};
}

} // namespace nbcrit
