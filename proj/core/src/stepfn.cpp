#include "nbcrit/stepfn.hpp"

#include "nbcrit/errors.hpp"
#include "nbcrit/format.hpp"

#include <cmath>
#include <ostream>
#include <string>

namespace nbcrit {
namespace {

void require_k(std::int64_t k, char const* what) {
    if (k < 2) {
        throw PreconditionError(std::string(what) + ": index must be >= 2, got " + std::to_string(k));
    }
}

// Exact sign test for r*x - 1, via the fma residual of the rounded product.
int compare_product_with_one(std::int64_t r, double x) {
    auto const rd = static_cast<double>(r);
    double const p = rd * x;
    if (p != 1.0) {
        return p < 1.0 ? -1 : 1;
    }
    double const err = std::fma(rd, x, -p);
    return err < 0.0 ? -1 : (err > 0.0 ? 1 : 0);
}

// [1/x] for x in (0,1]. The floating quotient can land one off near the
// breakpoints 1/r, so it is corrected against r*x <= 1 < (r+1)*x.
std::int64_t integer_part_of_reciprocal(double x) {
    auto r = static_cast<std::int64_t>(std::floor(1.0 / x));
    while (r > 1 && compare_product_with_one(r, x) > 0) {
        --r;
    }
    while (compare_product_with_one(r + 1, x) <= 0) {
        ++r;
    }
    return r;
}

} // namespace

StepFunctionFk::StepFunctionFk(std::int64_t k) : k_(k) { require_k(k, "StepFunctionFk"); }

ExactRational StepFunctionFk::value_on_piece(std::int64_t r) const {
    if (r < 1) {
        throw PreconditionError("StepFunctionFk: piece index must be >= 1");
    }
    return fractional_part(r, k_);
}

ExactRational StepFunctionFk::operator()(double x) const { return eval_fk(k_, x); }

BlockFunctionHj::BlockFunctionHj(std::int64_t j) : j_(j) {
    if (j < 0) {
        throw PreconditionError("BlockFunctionHj: j must be >= 0");
    }
}

ExactRational BlockFunctionHj::inner_with_fk(std::int64_t k) const { return ip_fk_hj(k, j_); }

BiorthFunctionGl::BiorthFunctionGl(std::int64_t l) : l_(l) {
    require_k(l, "BiorthFunctionGl");
    for (auto const d : divisors(l)) {
        terms_.push_back({d, mobius(l / d)});
    }
}

ExactRational BiorthFunctionGl::inner_with_fk(std::int64_t k) const {
    require_k(k, "ip_fk_gl");
    ExactRational acc;
    for (auto const& [j, mu] : terms_) {
        if (mu == 0) {
            continue;
        }
        // <f_k, h_{j-1} - h_j>
        ExactRational const diff = ip_fk_hj(k, j - 1) - ip_fk_hj(k, j);
        acc += mu > 0 ? diff : -diff;
    }
    return acc;
}

ExactRational eval_fk(std::int64_t k, double x) {
    require_k(k, "eval_fk");
    if (!(x > 0.0 && x <= 1.0)) {
        throw DomainError("eval_fk: x must lie in (0,1]");
    }
    if (x < 0x1p-52) {
        throw DomainError("eval_fk: x too small for an exact piece index");
    }
    return fractional_part(integer_part_of_reciprocal(x), k);
}

int mobius(std::int64_t n) {
    if (n < 1) {
        throw DomainError("mobius: n must be >= 1");
    }
    int sign = 1;
    for (std::int64_t p = 2; p * p <= n; ++p) {
        if (n % p != 0) {
            continue;
        }
        n /= p;
        if (n % p == 0) {
            return 0;
        }
        sign = -sign;
    }
    if (n > 1) {
        sign = -sign;
    }
    return sign;
}

int mobius_divisor_sum(std::int64_t n) {
    if (n < 1) {
        throw DomainError("mobius_divisor_sum: n must be >= 1");
    }
    int sum = 0;
    for (auto const d : divisors(n)) {
        sum += mobius(d);
    }
    return sum;
}

std::vector<std::int64_t> divisors(std::int64_t n) {
    if (n < 1) {
        throw DomainError("divisors: n must be >= 1");
    }
    std::vector<std::int64_t> small;
    std::vector<std::int64_t> large;
    for (std::int64_t d = 1; d * d <= n; ++d) {
        if (n % d == 0) {
            small.push_back(d);
            if (d != n / d) {
                large.push_back(n / d);
            }
        }
    }
    small.insert(small.end(), large.rbegin(), large.rend());
    return small;
}

ExactRational ip_fk_hj(std::int64_t k, std::int64_t j) {
    require_k(k, "ip_fk_hj");
    if (j < 0) {
        throw PreconditionError("ip_fk_hj: j must be >= 0");
    }
    if (j == 0) {
        return {};
    }
    return fractional_part(j, k);
}

ExactRational ip_fk_gl(std::int64_t k, std::int64_t l) { return BiorthFunctionGl(l).inner_with_fk(k); }

std::vector<StepPiece> fk_plot_data(std::int64_t k, std::int64_t r_max) {
    require_k(k, "fk_plot_data");
    if (r_max < 1) {
        throw PreconditionError("fk_plot_data: r_max must be >= 1");
    }
    std::vector<StepPiece> pieces;
    pieces.reserve(static_cast<std::size_t>(r_max));
    for (std::int64_t r = 1; r <= r_max; ++r) {
        pieces.push_back({ExactRational(BigInt(1), BigInt(r + 1)),
                          ExactRational(BigInt(1), BigInt(r)),
                          fractional_part(r, k)});
    }
    return pieces;
}

void write_plot_csv(std::ostream& os, std::vector<StepPiece> const& pieces) {
    os << "x_lo,x_hi,value\n";
    for (auto const& p : pieces) {
        os << format_g12(p.x_lo.to_double()) << ',' << format_g12(p.x_hi.to_double()) << ','
           << format_g12(p.value.to_double()) << '\n';
    }
}

} // namespace nbcrit
