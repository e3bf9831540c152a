#pragma once

// Polynomials over F_2, one bit per coefficient.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace mseq {

class BitPoly {
public:
    using Word = std::uint64_t;
    static constexpr std::size_t kWordBits = 64;
    // Degree reported for the zero polynomial; stands in for minus infinity.
    static constexpr int kZeroDegree = -1;

    BitPoly() = default;
    // Bit i of mask is the coefficient of z^i.
    explicit BitPoly(std::uint64_t mask);

    static BitPoly monomial(std::size_t k);
    static BitPoly from_exponents(std::initializer_list<std::size_t> exps);
    static BitPoly from_words(std::vector<Word> words);

    int degree() const noexcept;
    bool is_zero() const noexcept { return words_.empty(); }
    bool is_one() const noexcept { return words_.size() == 1 && words_[0] == 1; }
    bool coeff(std::size_t i) const noexcept;
    void set_coeff(std::size_t i, bool value);
    // Index of the lowest set coefficient. Requires a nonzero polynomial.
    std::size_t valuation() const;
    std::size_t weight() const noexcept;

    // Throws if degree >= 64.
    std::uint64_t to_u64() const;
    std::span<const Word> words() const noexcept { return words_; }

    BitPoly& operator+=(const BitPoly& rhs);
    BitPoly& operator<<=(std::size_t k);
    BitPoly& operator>>=(std::size_t k);
    // In-place this += rhs * z^shift.
    void add_shifted(const BitPoly& rhs, std::size_t shift);

    friend BitPoly operator+(BitPoly a, const BitPoly& b) { return a += b; }
    friend BitPoly operator<<(BitPoly a, std::size_t k) { return a <<= k; }
    friend BitPoly operator>>(BitPoly a, std::size_t k) { return a >>= k; }
    friend BitPoly operator*(const BitPoly& a, const BitPoly& b);

    friend bool operator==(const BitPoly&, const BitPoly&) = default;
    // Orders by degree first, then by coefficients from the top down.
    friend std::strong_ordering operator<=>(const BitPoly& a, const BitPoly& b);

private:
    void trim() noexcept;

    std::vector<Word> words_;
};

struct DivMod {
    BitPoly quotient;
    BitPoly remainder;
};

struct SelfRecFactors {
    std::size_t r = 0;
    BitPoly v;  // self-reciprocal, v(0) = 1
    BitPoly u;  // u(0) = 1, coprime to its reciprocal
};

struct Factor {
    BitPoly poly;
    std::size_t multiplicity = 0;
    friend bool operator==(const Factor&, const Factor&) = default;
};

enum class CountMode { closed_form, enumerate };

BitPoly add(const BitPoly& a, const BitPoly& b);
BitPoly mul(const BitPoly& a, const BitPoly& b);
DivMod divmod(const BitPoly& a, const BitPoly& b);
BitPoly mod(const BitPoly& a, const BitPoly& b);
BitPoly gcd(BitPoly a, BitPoly b);
BitPoly mulmod(const BitPoly& a, const BitPoly& b, const BitPoly& m);
// z^k mod m.
BitPoly pow_z_mod(std::uint64_t k, const BitPoly& m);
// Formal derivative; over F_2 only odd-degree terms survive.
BitPoly derivative(const BitPoly& f);

// z^{deg f} f(1/z).
BitPoly reciprocal_std(const BitPoly& f);
// z^{n-1} f(1/z), requires deg f <= n-1.
BitPoly reciprocal_star(const BitPoly& f, std::size_t n);
bool is_self_reciprocal(const BitPoly& f);

// f = z^r v u with v self-reciprocal and gcd(u, reciprocal_std(u)) = 1.
SelfRecFactors selfrec_factorize(const BitPoly& f);

bool is_irreducible(const BitPoly& f);
// Sorted by factor (degree, then coefficients).
std::vector<Factor> irreducible_factorization(const BitPoly& f);

// Least N >= 1 with g | z^N + 1. Requires g(0) = 1.
std::uint64_t poly_order(const BitPoly& g);
bool is_primitive(const BitPoly& f, std::size_t n);

// #{u : deg u = d, u(0) = 1, gcd(u, reciprocal_std(u)) = 1}.
std::uint64_t count_coprime_reciprocal(std::size_t d, CountMode mode);

// Text forms. Hex mask with bit i = coefficient of z^i ("0x25"), or
// "z^5+z^2+1" (x is accepted in place of z).
std::string to_hex(const BitPoly& f);
std::string to_string(const BitPoly& f);
BitPoly parse_poly(std::string_view text);

}  // namespace mseq
