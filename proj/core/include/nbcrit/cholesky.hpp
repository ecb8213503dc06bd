#pragma once

#include "nbcrit/gram.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace nbcrit {

/// Lower-triangular L with positive diagonal, P = L L^t, rows k = 2..n.
/// Entry L_kj = <f_k, e_j> for the Gram-Schmidt system e_j of f_2, f_3, ...
/// Rows are packed contiguously: row k holds L_k2..L_kk (k-1 values), which
/// is also the on-disk row-cache layout.
class CholeskyFactor {
public:
    CholeskyFactor() = default;

    /// Highest row present (1 when empty).
    std::int64_t n() const noexcept { return n_; }

    double operator()(std::int64_t k, std::int64_t j) const;
    std::span<double const> row(std::int64_t k) const;
    std::span<double const> packed() const noexcept { return data_; }

    /// Appends row n()+1 from P_{k,2..k}; throws NumericalBreakdown on a nonpositive pivot.
    void extend(std::span<double const> p_row);

    /// Appends an already-computed row of L (used when loading a row cache).
    void append_row(std::span<double const> l_row);

    void reserve(std::int64_t n_max);

private:
    static std::size_t row_offset(std::int64_t k) noexcept {
        auto const r = static_cast<std::size_t>(k - 2);
        return r * (r + 1) / 2;
    }

    std::int64_t n_ = 1;
    std::vector<double> data_;
};

/// Free-function form of CholeskyFactor::extend.
void chol_extend(CholeskyFactor& factor, std::span<double const> p_row);

/// Factor of the Gram matrix P, built row by row.
CholeskyFactor cholesky(GramMatrix const& gram);

/// F_k = <1, f_k> = log(k)/k for k = 2..n (index 0 holds k = 2).
std::vector<double> one_fk_vector(std::int64_t n);

/// Solves L E = F; E_j = <1, e_j>.
std::vector<double> forward_solve(CholeskyFactor const& factor, std::span<double const> rhs);

struct DnPoint {
    std::int64_t n;
    double d;
};
using DnSeries = std::vector<DnPoint>;

/// d_n = sqrt(1 - sum_{j<=n} E_j^2) for n = 2..n_max from one incremental pass.
DnSeries dn_series(std::int64_t n_max, unsigned threads = 1);

/// d_n for n = 2..factor.n() from an existing factor.
DnSeries dn_series(CholeskyFactor const& factor);

/// Minimizing scalars lambda_2..lambda_n of ||1 - sum lambda_k f_k||: P lambda = F.
std::vector<double> best_approx_coeffs(CholeskyFactor const& factor, std::int64_t n);

/// Coefficients c_2..c_j with e_j = sum_i c_i f_i (row j of L^{-1}).
std::vector<double> orthonormal_coeffs(CholeskyFactor const& factor, std::int64_t j);

/// Rounding-noise band for row k: 1e3 * k * ulp(P_kk).
double noise_threshold(std::int64_t k, double p_kk);

enum class Sign { Negative = -1, Indeterminate = 0, Positive = 1 };

struct SignTriple {
    Sign cholesky = Sign::Indeterminate;     // sign of L_kj
    Sign bordered = Sign::Indeterminate;     // sign of G(f_2..f_{j-1} | f_j, f_k)
    Sign polarization = Sign::Indeterminate; // sign of G(.., f_j + f_k) - G(.., f_j - f_k)
    double l_kj = 0.0;
    double bordered_value = 0.0;
    double polarization_diff = 0.0;

    bool indeterminate() const noexcept {
        return cholesky == Sign::Indeterminate || bordered == Sign::Indeterminate ||
               polarization == Sign::Indeterminate;
    }
    bool agree() const noexcept {
        return !indeterminate() && cholesky == bordered && bordered == polarization;
    }
};

/// The three equivalent positivity criteria for <e_j, f_k>, 2 <= j <= k <= guard.
/// `factor` must hold at least k rows; pass an empty factor to build one.
SignTriple sign_equivalence_check(std::int64_t j, std::int64_t k, CholeskyFactor const& factor,
                                  std::int64_t guard = 30);
SignTriple sign_equivalence_check(std::int64_t j, std::int64_t k, std::int64_t guard = 30);

} // namespace nbcrit
