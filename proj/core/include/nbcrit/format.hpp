#pragma once

#include <cstdint>
#include <span>
#include <string>

namespace nbcrit {

/// Locale-independent "%.12g": '.' separator, 12 significant digits.
std::string format_g12(double value);

/// Shortest representation that round-trips to the same double.
std::string format_roundtrip(double value);

/// 64-bit FNV-1a.
class Fnv1a64 {
public:
    static constexpr std::uint64_t kOffsetBasis = 0xcbf29ce484222325ULL;
    static constexpr std::uint64_t kPrime = 0x100000001b3ULL;

    void update(std::span<std::byte const> bytes) noexcept {
        for (auto const b : bytes) {
            state_ ^= static_cast<std::uint64_t>(b);
            state_ *= kPrime;
        }
    }
    std::uint64_t digest() const noexcept { return state_; }

private:
    std::uint64_t state_ = kOffsetBasis;
};

/// 16 lowercase hex digits.
std::string to_hex64(std::uint64_t value);

} // namespace nbcrit
