#pragma once

#include <cstdint>
#include <numeric>
#include <vector>

namespace mseq::detail {

// Distinct prime factors by trial division, ascending.
inline std::vector<std::uint64_t> prime_factors(std::uint64_t m) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t p = 2; p * p <= m; ++p) {
        if (m % p == 0) {
            out.push_back(p);
            while (m % p == 0) m /= p;
        }
    }
    if (m > 1) out.push_back(m);
    return out;
}

inline std::uint64_t ipow(std::uint64_t base, unsigned exp) {
    std::uint64_t r = 1;
    while (exp-- > 0) r *= base;
    return r;
}

__extension__ using u128 = unsigned __int128;

inline std::uint64_t mod_pow(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
    std::uint64_t r = 1 % m;
    base %= m;
    while (exp > 0) {
        if (exp & 1) r = static_cast<std::uint64_t>((static_cast<u128>(r) * base) % m);
        base = static_cast<std::uint64_t>((static_cast<u128>(base) * base) % m);
        exp >>= 1;
    }
    return r;
}

}  // namespace mseq::detail
