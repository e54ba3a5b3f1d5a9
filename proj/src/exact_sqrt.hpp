#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <optional>

#include "twistrank/arith.hpp"

namespace twistrank::detail {

using i128 = __int128;
using u128 = unsigned __int128;

/// Quadratic-residue tables mod 64, 63, 65 and 11; rejects ~99% of non-squares.
struct SquareFilter {
    std::array<bool, 64> mod64{};
    std::array<bool, 63> mod63{};
    std::array<bool, 65> mod65{};
    std::array<bool, 11> mod11{};

    SquareFilter() {
        for (unsigned i = 0; i < 64; ++i) mod64[(i * i) % 64] = true;
        for (unsigned i = 0; i < 63; ++i) mod63[(i * i) % 63] = true;
        for (unsigned i = 0; i < 65; ++i) mod65[(i * i) % 65] = true;
        for (unsigned i = 0; i < 11; ++i) mod11[(i * i) % 11] = true;
    }

    bool maybe_square(u128 v) const {
        if (!mod64[static_cast<unsigned>(v) & 63u]) return false;
        auto r = static_cast<unsigned>(v % (63u * 65u * 11u));
        return mod63[r % 63] && mod65[r % 65] && mod11[r % 11];
    }
};

inline const SquareFilter& square_filter() {
    static const SquareFilter filter;
    return filter;
}

inline Integer to_integer(i128 v) {
    const bool negative = v < 0;
    const u128 mag = negative ? -static_cast<u128>(v) : static_cast<u128>(v);
    Integer out = static_cast<unsigned long>(mag >> 64);
    out <<= 64;
    out += static_cast<unsigned long>(mag & ~std::uint64_t{0});
    return negative ? Integer(-out) : out;
}

/// sqrt(v) when v is a perfect square.
inline std::optional<Integer> exact_sqrt(i128 v) {
    if (v < 0) return std::nullopt;
    if (v == 0) return Integer(0);
    const u128 u = static_cast<u128>(v);
    if (!square_filter().maybe_square(u)) return std::nullopt;
    if (u >> 64 == 0) {
        const auto w = static_cast<std::uint64_t>(u);
        auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<long double>(w)));
        while (static_cast<u128>(r) * r > w) --r;
        while (static_cast<u128>(r + 1) * (r + 1) <= w) ++r;
        if (static_cast<u128>(r) * r != w) return std::nullopt;
        return Integer(static_cast<unsigned long>(r));
    }
    Integer big = to_integer(v);
    if (!mpz_perfect_square_p(big.get_mpz_t())) return std::nullopt;
    return Integer(sqrt(big));
}

inline std::optional<Integer> exact_sqrt(const Integer& v) {
    if (v < 0 || !mpz_perfect_square_p(v.get_mpz_t())) return std::nullopt;
    return Integer(sqrt(v));
}

/// |v| < 2^bits
inline bool fits_bits(const Integer& v, unsigned bits) {
    return mpz_sizeinbase(v.get_mpz_t(), 2) < bits;
}

}  // namespace twistrank::detail
