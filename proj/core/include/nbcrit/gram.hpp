#pragma once

#include "nbcrit/innerprod.hpp"

#include <complex>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

namespace nbcrit {

/// Symmetric matrix P_jk = <f_j, f_k>, 2 <= j, k <= n, packed lower triangle.
class GramMatrix {
public:
    GramMatrix() = default;
    explicit GramMatrix(std::int64_t n);

    std::int64_t n() const noexcept { return n_; }
    std::int64_t order() const noexcept { return n_ - 1; }

    double operator()(std::int64_t j, std::int64_t k) const;
    void set(std::int64_t j, std::int64_t k, double value);

    /// Row k restricted to columns 2..k (the packed storage of row k).
    std::span<double const> lower_row(std::int64_t k) const;
    std::span<double const> packed() const noexcept { return entries_; }

private:
    std::size_t index(std::int64_t j, std::int64_t k) const;

    std::int64_t n_ = 1;
    std::vector<double> entries_;
};

/// Fills every entry with the chosen method; entries are computed
/// independently across `threads` workers and do not depend on the count.
GramMatrix build_gram(std::int64_t n, IpMethod method = IpMethod::Vasyunin, unsigned threads = 1,
                      IpLimits const& limits = {});

/// CSV: header `row,2,...,n`, then one line per j with the full row, 12 significant digits.
void write_gram_csv(std::ostream& os, GramMatrix const& gram);

/// Row-major dense square matrix.
class DenseMatrix {
public:
    DenseMatrix() = default;
    explicit DenseMatrix(std::size_t n) : n_(n), data_(n * n, 0.0) {}

    std::size_t size() const noexcept { return n_; }
    double& operator()(std::size_t r, std::size_t c) { return data_[r * n_ + c]; }
    double operator()(std::size_t r, std::size_t c) const { return data_[r * n_ + c]; }

private:
    std::size_t n_ = 0;
    std::vector<double> data_;
};

struct DeterminantResult {
    double value = 0.0;
    int sign = 0;          // -1, 0, +1
    double log_abs = 0.0;  // log|det|; -inf when det == 0
    bool uncertain = false; // some pivot fell inside the rounding-noise band
};

/// Partially pivoted elimination. A pivot below 1e3 * n * eps * max|entry|
/// marks the sign as uncertain.
DeterminantResult gram_det(DenseMatrix matrix);

using InnerProduct = std::function<double(std::int64_t, std::int64_t)>;

/// d_n from the Gram-determinant ratio G(1, f_2..f_n) / G(f_2..f_n).
/// Guarded at n <= max_n because the determinants underflow in conditioning.
double dn_gram(std::int64_t n, std::int64_t max_n = 15);

/// G(f_idx... | f_g, f_h): rows idx + [g], columns idx + [h]. Empty idx gives <f_g, f_h>.
DeterminantResult bordered_det_detail(std::span<std::int64_t const> idx, std::int64_t g, std::int64_t h,
                                      InnerProduct const& ip = {});
double bordered_det(std::span<std::int64_t const> idx, std::int64_t g, std::int64_t h,
                    InnerProduct const& ip = {});

/// H(j): columns <f_i, f_2..f_{j-1}> and (i-1)/i, rows i = 2..j.
DeterminantResult hj_det_detail(std::int64_t j, InnerProduct const& ip = {});
double hj_det(std::int64_t j, InnerProduct const& ip = {});

struct PolarizationCheck {
    double lhs = 0.0; // 4 G(idx | g, h)
    double rhs = 0.0; // G(idx, f_g + f_h) - G(idx, f_g - f_h)
    DeterminantResult plus;
    DeterminantResult minus;
};

PolarizationCheck polarization_check(std::span<std::int64_t const> idx, std::int64_t g, std::int64_t h,
                                     InnerProduct const& ip = {});

/// Open disk |s - center| < radius, free of zeta zeros.
struct ZeroFreeDisk {
    double center = 0.0;
    double radius = 0.0;

    bool contains(std::complex<double> s) const noexcept { return std::abs(s - center) < radius; }
};

/// Region Re s > (1 + d^2 |s|^2) / 2 as a disk. Empty (nullopt) for d >= 1;
/// DomainError for d <= 0.
std::optional<ZeroFreeDisk> zero_free_disk(double d);

} // namespace nbcrit
