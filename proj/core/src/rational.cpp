#include "nbcrit/rational.hpp"

#include "nbcrit/errors.hpp"

#include <boost/multiprecision/cpp_bin_float.hpp>

#include <ostream>
#include <utility>

namespace nbcrit {

ExactRational::ExactRational(std::int64_t value) : num_(value), den_(1) {}

ExactRational::ExactRational(BigInt numerator, BigInt denominator)
    : num_(std::move(numerator)), den_(std::move(denominator)) {
    if (den_.is_zero()) {
        throw DomainError("ExactRational: zero denominator");
    }
    normalize();
}

void ExactRational::normalize() {
    if (den_ < 0) {
        num_ = -num_;
        den_ = -den_;
    }
    if (num_.is_zero()) {
        den_ = 1;
        return;
    }
    BigInt const g = boost::multiprecision::gcd(num_ < 0 ? BigInt(-num_) : num_, den_);
    if (g != 1) {
        num_ /= g;
        den_ /= g;
    }
}

BigInt ExactRational::floor() const {
    // cpp_int division truncates toward zero
    BigInt q = num_ / den_;
    if (num_ < 0 && q * den_ != num_) {
        q -= 1;
    }
    return q;
}

ExactRational ExactRational::fractional_part() const {
    return ExactRational(num_ - floor() * den_, den_);
}

double ExactRational::to_double() const {
    using Float = boost::multiprecision::cpp_bin_float_double_extended;
    return static_cast<double>(Float(num_) / Float(den_));
}

std::string ExactRational::to_string() const {
    if (den_ == 1) {
        return num_.str();
    }
    return num_.str() + "/" + den_.str();
}

ExactRational operator+(ExactRational const& a, ExactRational const& b) {
    return {a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_};
}

ExactRational operator-(ExactRational const& a, ExactRational const& b) {
    return {a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_};
}

ExactRational operator*(ExactRational const& a, ExactRational const& b) {
    return {a.num_ * b.num_, a.den_ * b.den_};
}

ExactRational operator/(ExactRational const& a, ExactRational const& b) {
    if (b.num_.is_zero()) {
        throw DomainError("ExactRational: division by zero");
    }
    return {a.num_ * b.den_, a.den_ * b.num_};
}

ExactRational ExactRational::operator-() const {
    ExactRational r = *this;
    r.num_ = -r.num_;
    return r;
}

std::strong_ordering operator<=>(ExactRational const& a, ExactRational const& b) {
    BigInt const lhs = a.num_ * b.den_;
    BigInt const rhs = b.num_ * a.den_;
    if (lhs < rhs) return std::strong_ordering::less;
    if (lhs > rhs) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
}

std::ostream& operator<<(std::ostream& os, ExactRational const& q) {
    return os << q.to_string();
}

ExactRational fractional_part(std::int64_t a, std::int64_t b) {
    if (b <= 0) {
        throw DomainError("fractional_part: denominator must be positive");
    }
    std::int64_t r = a % b;
    if (r < 0) {
        r += b;
    }
    return {BigInt(r), BigInt(b)};
}

} // namespace nbcrit
