#pragma once

// Finite fields F_{q^n} for q in {2, 3, 5}, built from a primitive modulus
// with full discrete-log tables.

#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "mseq/poly2.hpp"

namespace mseq {

// An element of some FieldCtx, stored as its polynomial-basis coefficient
// vector packed base q (coefficient i is digit i). For q = 2 this is a bitmask.
struct Elem {
    std::uint32_t rep = 0;

    bool is_zero() const noexcept { return rep == 0; }
    friend auto operator<=>(const Elem&, const Elem&) = default;
};

// Coefficients low to high over F_q; the modulus is monic so the last entry is 1.
using QPoly = std::vector<unsigned>;

class FieldCtx {
public:
    // Throws PreconditionError for unsupported (q, n) and NotPrimitive when the
    // given modulus does not generate the multiplicative group.
    FieldCtx(unsigned q, unsigned n, std::optional<QPoly> modulus = std::nullopt);

    unsigned q() const noexcept { return t_->q; }
    unsigned n() const noexcept { return t_->n; }
    std::uint32_t size() const noexcept { return t_->size; }
    // q^n - 1, the order of the multiplicative group.
    std::uint32_t order() const noexcept { return t_->size - 1; }
    const QPoly& modulus() const noexcept { return t_->modulus; }
    // The modulus as an F_2 polynomial; q = 2 only.
    BitPoly modulus_bits() const;

    Elem zero() const noexcept { return Elem{0}; }
    Elem one() const noexcept { return Elem{1}; }
    Elem alpha() const noexcept { return t_->antilog[order() > 1 ? 1 : 0]; }
    // alpha^e for any integer e.
    Elem alpha_pow(std::int64_t e) const noexcept;
    // Embeds c in F_q.
    Elem from_base(unsigned c) const;
    Elem from_coeffs(std::span<const unsigned> coeffs) const;
    unsigned coeff(Elem a, unsigned i) const noexcept;
    bool contains(Elem a) const noexcept { return a.rep < t_->size; }

    Elem add(Elem a, Elem b) const noexcept;
    Elem sub(Elem a, Elem b) const noexcept;
    Elem neg(Elem a) const noexcept;
    Elem mul(Elem a, Elem b) const noexcept;
    Elem div(Elem a, Elem b) const;
    Elem inv(Elem a) const;
    Elem pow(Elem a, std::int64_t e) const;

    // Discrete log base alpha, in [0, q^n - 2]. Throws on zero.
    std::uint32_t log(Elem a) const;
    Elem antilog(std::uint64_t e) const noexcept { return t_->antilog[e % order()]; }

    // a^(q^k), k reduced mod n (negative k allowed).
    Elem frobenius(Elem a, std::int64_t k) const noexcept;
    // Absolute trace to F_q via precomputed traces of the basis monomials.
    unsigned trace(Elem a) const noexcept;
    // Trace evaluated as a + a^q + ... + a^(q^(n-1)); test oracle for trace().
    Elem trace_by_definition(Elem a) const noexcept;

    friend bool operator==(const FieldCtx& a, const FieldCtx& b) {
        return a.t_ == b.t_ || (a.q() == b.q() && a.n() == b.n() && a.modulus() == b.modulus());
    }

private:
    struct Tables {
        unsigned q = 2;
        unsigned n = 1;
        std::uint32_t size = 2;
        QPoly modulus;
        std::vector<std::uint32_t> pow_q;  // q^i for i < n
        std::vector<Elem> antilog;         // e -> alpha^e, size q^n - 1
        std::vector<std::uint32_t> log;    // rep -> e, size q^n (entry 0 unused)
        std::vector<unsigned> basis_trace; // Tr(z^i)
        std::uint32_t trace_mask = 0;      // q = 2: bitmask of basis monomials with trace 1
    };
    std::shared_ptr<const Tables> t_;
};

// Default modulus: the primitive polynomial of degree n over F_q with the
// smallest integer encoding (coefficient i weighted by q^i).
QPoly default_modulus(unsigned q, unsigned n);

FieldCtx make_field(unsigned q, unsigned n, std::optional<QPoly> modulus = std::nullopt);
// q = 2 convenience overload.
FieldCtx make_binary_field(unsigned n, std::optional<BitPoly> modulus = std::nullopt);

unsigned trace(const FieldCtx& ctx, Elem a);
Elem frobenius(const FieldCtx& ctx, Elem a, std::int64_t k);
std::uint32_t discrete_log(const FieldCtx& ctx, Elem a);
Elem eval_poly(const FieldCtx& ctx, const BitPoly& f, Elem a);
Elem eval_poly(const FieldCtx& ctx, const QPoly& f, Elem a);

QPoly to_qpoly(const BitPoly& f);
// Parses "c0,c1,...,cn" (low to high).
QPoly parse_qpoly(std::string_view text);

}  // namespace mseq
