#pragma once

#include "nbcrit/rational.hpp"

#include <cstdint>
#include <iosfwd>
#include <vector>

namespace nbcrit {

// The step functions f_k(x) = (1/k)[1/x] - [1/(kx)] on (0,1], the blocks
// h_j = j(j+1) 1_(1/(j+1), 1/j], and the biorthogonal system
// g_l = sum_{j|l} mu(l/j) (h_{j-1} - h_j).  Everything here is exact.

/// f_k as a value type. Constant with value {r/k} on (1/(r+1), 1/r].
class StepFunctionFk {
public:
    explicit StepFunctionFk(std::int64_t k);

    std::int64_t k() const noexcept { return k_; }
    ExactRational value_on_piece(std::int64_t r) const;
    ExactRational operator()(double x) const;

private:
    std::int64_t k_;
};

/// h_j; h_0 is the zero function.
class BlockFunctionHj {
public:
    explicit BlockFunctionHj(std::int64_t j);

    std::int64_t j() const noexcept { return j_; }
    bool is_zero() const noexcept { return j_ == 0; }
    ExactRational inner_with_fk(std::int64_t k) const;

private:
    std::int64_t j_;
};

struct BiorthTerm {
    std::int64_t divisor;    // j | l
    std::int64_t coefficient; // mu(l/j)
};

/// g_l, stored as its Moebius-weighted divisor expansion.
class BiorthFunctionGl {
public:
    explicit BiorthFunctionGl(std::int64_t l);

    std::int64_t l() const noexcept { return l_; }
    std::vector<BiorthTerm> const& terms() const noexcept { return terms_; }
    ExactRational inner_with_fk(std::int64_t k) const;

private:
    std::int64_t l_;
    std::vector<BiorthTerm> terms_;
};

/// f_k(x) = {r/k} with r = [1/x]. Throws DomainError unless 0 < x <= 1.
ExactRational eval_fk(std::int64_t k, double x);

/// Moebius function by trial factorization.
int mobius(std::int64_t n);

/// sum_{d|n} mu(d); equals 1 for n == 1 and 0 otherwise.
int mobius_divisor_sum(std::int64_t n);

/// Positive divisors of n in increasing order.
std::vector<std::int64_t> divisors(std::int64_t n);

/// <f_k, h_j> = {j/k}; zero for j == 0.
ExactRational ip_fk_hj(std::int64_t k, std::int64_t j);

/// <f_k, g_l> = sum_{j|l} mu(l/j) ({(j-1)/k} - {j/k}) == delta_kl.
ExactRational ip_fk_gl(std::int64_t k, std::int64_t l);

struct StepPiece {
    ExactRational x_lo; // exclusive
    ExactRational x_hi; // inclusive
    ExactRational value;
};

/// Pieces (1/(r+1), 1/r] for r = 1..r_max, in decreasing-x order.
std::vector<StepPiece> fk_plot_data(std::int64_t k, std::int64_t r_max);

/// CSV with header `x_lo,x_hi,value`, 12 significant digits.
void write_plot_csv(std::ostream& os, std::vector<StepPiece> const& pieces);

} // namespace nbcrit
