#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>

namespace nbcrit {

using BigInt = boost::multiprecision::cpp_int;

/// Reduced fraction with arbitrary-size numerator and denominator.
/// Invariant: denominator > 0 and gcd(|numerator|, denominator) == 1.
class ExactRational {
public:
    ExactRational() = default;
    ExactRational(std::int64_t value); // NOLINT(google-explicit-constructor)
    ExactRational(BigInt numerator, BigInt denominator);

    BigInt const& numerator() const noexcept { return num_; }
    BigInt const& denominator() const noexcept { return den_; }

    bool is_zero() const noexcept { return num_.is_zero(); }
    bool is_integer() const noexcept { return den_ == 1; }

    /// Floor of the value, as an integer.
    BigInt floor() const;
    /// {x} = x - floor(x), always in [0, 1).
    ExactRational fractional_part() const;

    double to_double() const;
    std::string to_string() const; // "p/q", or "p" when q == 1

    friend ExactRational operator+(ExactRational const& a, ExactRational const& b);
    friend ExactRational operator-(ExactRational const& a, ExactRational const& b);
    friend ExactRational operator*(ExactRational const& a, ExactRational const& b);
    friend ExactRational operator/(ExactRational const& a, ExactRational const& b);
    ExactRational operator-() const;

    ExactRational& operator+=(ExactRational const& o) { return *this = *this + o; }
    ExactRational& operator-=(ExactRational const& o) { return *this = *this - o; }

    friend bool operator==(ExactRational const& a, ExactRational const& b) = default;
    friend std::strong_ordering operator<=>(ExactRational const& a, ExactRational const& b);

private:
    void normalize();

    BigInt num_ = 0;
    BigInt den_ = 1;
};

std::ostream& operator<<(std::ostream& os, ExactRational const& q);

/// {a/b} for any integer a and b > 0.
ExactRational fractional_part(std::int64_t a, std::int64_t b);

} // namespace nbcrit
