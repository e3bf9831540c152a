#include "mseq/field.hpp"

#include <array>
#include <bit>
#include <charconv>
#include <limits>
#include <string>

#include "mseq/detail/intmath.hpp"
#include "mseq/error.hpp"

namespace mseq {

namespace {

unsigned max_degree_for(unsigned q) {
    switch (q) {
        case 2: return 20;
        case 3: return 8;
        case 5: return 6;
        default: return 0;
    }
}

// Smallest-encoding primitive polynomials, bit i = coefficient of z^i.
constexpr std::array<std::uint32_t, 21> kBinaryDefaults = {
    0,      0x3,     0x7,     0xb,     0x13,    0x25,    0x43,    0x83,     0x11d,    0x211,   0x409,
    0x805,  0x1053,  0x201b,  0x402b,  0x8003,  0x1002d, 0x20009, 0x40027,  0x80027,  0x100009,
};

// Low-to-high coefficient lists for q = 3 (n = 1..8) and q = 5 (n = 1..6).
const std::vector<QPoly> kTernaryDefaults = {
    {1, 1},
    {2, 1, 1},
    {1, 2, 0, 1},
    {2, 1, 0, 0, 1},
    {1, 2, 0, 0, 0, 1},
    {2, 1, 0, 0, 0, 0, 1},
    {1, 2, 1, 0, 0, 0, 0, 1},
    {2, 0, 0, 1, 0, 0, 0, 0, 1},
};
const std::vector<QPoly> kQuinaryDefaults = {
    {2, 1},
    {2, 1, 1},
    {2, 3, 0, 1},
    {2, 2, 1, 0, 1},
    {2, 4, 0, 0, 0, 1},
    {2, 1, 0, 0, 0, 0, 1},
};

constexpr std::uint32_t kUnset = std::numeric_limits<std::uint32_t>::max();

}  // namespace

QPoly default_modulus(unsigned q, unsigned n) {
    if (n == 0 || n > max_degree_for(q))
        throw PreconditionError("no built-in modulus for q=" + std::to_string(q) + ", n=" + std::to_string(n));
    if (q == 2) return to_qpoly(BitPoly{kBinaryDefaults[n]});
    return q == 3 ? kTernaryDefaults[n - 1] : kQuinaryDefaults[n - 1];
}

FieldCtx::FieldCtx(unsigned q, unsigned n, std::optional<QPoly> modulus) {
    if (q != 2 && q != 3 && q != 5) throw PreconditionError("unsupported base field size q=" + std::to_string(q));
    if (n == 0) throw PreconditionError("extension degree must be at least 1");
    if (n > max_degree_for(q))
        throw PreconditionError("field F_" + std::to_string(q) + "^" + std::to_string(n) +
                                " exceeds the table-size limit (n <= " + std::to_string(max_degree_for(q)) + ")");

    auto t = std::make_shared<Tables>();
    t->q = q;
    t->n = n;
    t->modulus = modulus ? std::move(*modulus) : default_modulus(q, n);
    auto& m = t->modulus;
    if (m.size() != n + 1) throw PreconditionError("modulus degree does not match n=" + std::to_string(n));
    for (auto c : m) {
        if (c >= q) throw PreconditionError("modulus coefficient out of range for q=" + std::to_string(q));
    }
    if (m.back() != 1) throw PreconditionError("modulus must be monic");

    t->pow_q.resize(n);
    std::uint32_t p = 1;
    for (unsigned i = 0; i < n; ++i) {
        t->pow_q[i] = p;
        p *= q;
    }
    t->size = p;
    const std::uint32_t order = p - 1;

    std::uint32_t low_mask = 0;
    if (q == 2) {
        for (unsigned i = 0; i < n; ++i) low_mask |= static_cast<std::uint32_t>(m[i]) << i;
    }
    auto times_z = [&](std::uint32_t x) -> std::uint32_t {
        if (q == 2) {
            const bool top = (x >> (n - 1)) & 1U;
            x = (x << 1) & (p - 1);
            return top ? x ^ low_mask : x;
        }
        std::vector<unsigned> d(n + 1, 0);
        for (unsigned i = 0; i < n; ++i) d[i + 1] = (x / t->pow_q[i]) % q;
        const unsigned top = d[n];
        std::uint32_t out = 0;
        for (unsigned i = 0; i < n; ++i) {
            const unsigned v = (d[i] + q * q - (top * m[i]) % q) % q;
            out += v * t->pow_q[i];
        }
        return out;
    };

    t->antilog.resize(order);
    t->log.assign(p, kUnset);
    std::uint32_t x = 1;
    for (std::uint32_t e = 0; e < order; ++e) {
        if (x == 0 || t->log[x] != kUnset) throw NotPrimitive("modulus is not primitive: alpha has order " + std::to_string(e));
        t->antilog[e] = Elem{x};
        t->log[x] = e;
        x = times_z(x);
    }
    if (x != 1) throw NotPrimitive("modulus is not primitive");

    // The basis traces are computed through the finished log tables.
    t_ = t;
    t->basis_trace.resize(n);
    for (unsigned i = 0; i < n; ++i) {
        const Elem tr = trace_by_definition(Elem{t->pow_q[i]});
        if (tr.rep >= q) throw InternalError("trace left the base field");
        t->basis_trace[i] = tr.rep;
        if (q == 2 && tr.rep == 1) t->trace_mask |= std::uint32_t{1} << i;
    }
}

BitPoly FieldCtx::modulus_bits() const {
    if (q() != 2) throw PreconditionError("modulus_bits is only defined for q = 2");
    BitPoly out;
    for (std::size_t i = 0; i < modulus().size(); ++i) {
        if (modulus()[i]) out.set_coeff(i, true);
    }
    return out;
}

Elem FieldCtx::alpha_pow(std::int64_t e) const noexcept {
    const auto ord = static_cast<std::int64_t>(order());
    auto r = e % ord;
    if (r < 0) r += ord;
    return t_->antilog[static_cast<std::size_t>(r)];
}

Elem FieldCtx::from_base(unsigned c) const {
    if (c >= q()) throw PreconditionError("base-field value out of range");
    return Elem{c};
}

Elem FieldCtx::from_coeffs(std::span<const unsigned> coeffs) const {
    if (coeffs.size() > n()) throw PreconditionError("too many coefficients for the field degree");
    std::uint32_t rep = 0;
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
        if (coeffs[i] >= q()) throw PreconditionError("coefficient out of range");
        rep += coeffs[i] * t_->pow_q[i];
    }
    return Elem{rep};
}

unsigned FieldCtx::coeff(Elem a, unsigned i) const noexcept {
    if (q() == 2) return (a.rep >> i) & 1U;
    return (a.rep / t_->pow_q[i]) % q();
}

Elem FieldCtx::add(Elem a, Elem b) const noexcept {
    if (q() == 2) return Elem{a.rep ^ b.rep};
    std::uint32_t out = 0;
    for (unsigned i = 0; i < n(); ++i) out += ((coeff(a, i) + coeff(b, i)) % q()) * t_->pow_q[i];
    return Elem{out};
}

Elem FieldCtx::neg(Elem a) const noexcept {
    if (q() == 2) return a;
    std::uint32_t out = 0;
    for (unsigned i = 0; i < n(); ++i) out += ((q() - coeff(a, i)) % q()) * t_->pow_q[i];
    return Elem{out};
}

Elem FieldCtx::sub(Elem a, Elem b) const noexcept { return add(a, neg(b)); }

Elem FieldCtx::mul(Elem a, Elem b) const noexcept {
    if (a.is_zero() || b.is_zero()) return zero();
    const std::uint64_t e = std::uint64_t{t_->log[a.rep]} + t_->log[b.rep];
    return t_->antilog[e % order()];
}

Elem FieldCtx::div(Elem a, Elem b) const {
    if (b.is_zero()) throw PreconditionError("division by zero field element");
    if (a.is_zero()) return zero();
    const std::uint64_t e = std::uint64_t{t_->log[a.rep]} + order() - t_->log[b.rep];
    return t_->antilog[e % order()];
}

Elem FieldCtx::inv(Elem a) const { return div(one(), a); }

Elem FieldCtx::pow(Elem a, std::int64_t e) const {
    if (a.is_zero()) {
        if (e < 0) throw PreconditionError("negative power of zero");
        return e == 0 ? one() : zero();
    }
    const auto ord = static_cast<std::int64_t>(order());
    auto r = (static_cast<std::int64_t>(t_->log[a.rep]) * (e % ord)) % ord;
    if (r < 0) r += ord;
    return t_->antilog[static_cast<std::size_t>(r)];
}

std::uint32_t FieldCtx::log(Elem a) const {
    if (a.is_zero()) throw PreconditionError("discrete log of zero");
    if (!contains(a)) throw PreconditionError("element does not belong to this field");
    return t_->log[a.rep];
}

Elem FieldCtx::frobenius(Elem a, std::int64_t k) const noexcept {
    if (a.is_zero()) return a;
    const auto nn = static_cast<std::int64_t>(n());
    auto kk = k % nn;
    if (kk < 0) kk += nn;
    const std::uint64_t mult = detail::mod_pow(q(), static_cast<std::uint64_t>(kk), order());
    const std::uint64_t e = (std::uint64_t{t_->log[a.rep]} * mult) % order();
    return t_->antilog[e];
}

unsigned FieldCtx::trace(Elem a) const noexcept {
    if (q() == 2) return static_cast<unsigned>(std::popcount(a.rep & t_->trace_mask) & 1);
    unsigned s = 0;
    for (unsigned i = 0; i < n(); ++i) s += coeff(a, i) * t_->basis_trace[i];
    return s % q();
}

Elem FieldCtx::trace_by_definition(Elem a) const noexcept {
    Elem s = zero();
    for (unsigned i = 0; i < n(); ++i) s = add(s, frobenius(a, i));
    return s;
}

FieldCtx make_field(unsigned q, unsigned n, std::optional<QPoly> modulus) {
    return FieldCtx(q, n, std::move(modulus));
}

FieldCtx make_binary_field(unsigned n, std::optional<BitPoly> modulus) {
    if (!modulus) return FieldCtx(2, n);
    return FieldCtx(2, n, to_qpoly(*modulus));
}

unsigned trace(const FieldCtx& ctx, Elem a) { return ctx.trace(a); }

Elem frobenius(const FieldCtx& ctx, Elem a, std::int64_t k) { return ctx.frobenius(a, k); }

std::uint32_t discrete_log(const FieldCtx& ctx, Elem a) { return ctx.log(a); }

Elem eval_poly(const FieldCtx& ctx, const BitPoly& f, Elem a) {
    Elem r = ctx.zero();
    for (int i = f.degree(); i >= 0; --i) {
        r = ctx.mul(r, a);
        if (f.coeff(static_cast<std::size_t>(i))) r = ctx.add(r, ctx.one());
    }
    return r;
}

Elem eval_poly(const FieldCtx& ctx, const QPoly& f, Elem a) {
    Elem r = ctx.zero();
    for (std::size_t i = f.size(); i-- > 0;) r = ctx.add(ctx.mul(r, a), ctx.from_base(f[i] % ctx.q()));
    return r;
}

QPoly to_qpoly(const BitPoly& f) {
    QPoly out(static_cast<std::size_t>(f.degree() + 1), 0);
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = f.coeff(i) ? 1 : 0;
    return out;
}

QPoly parse_qpoly(std::string_view text) {
    QPoly out;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        auto comma = text.find(',', pos);
        auto tok = text.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos);
        while (!tok.empty() && tok.front() == ' ') tok.remove_prefix(1);
        while (!tok.empty() && tok.back() == ' ') tok.remove_suffix(1);
        unsigned v = 0;
        auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
        if (tok.empty() || ec != std::errc{} || ptr != tok.data() + tok.size())
            throw PreconditionError("bad coefficient list: " + std::string(text));
        out.push_back(v);
        if (comma == std::string_view::npos) break;
        pos = comma + 1;
    }
    return out;
}

}  // namespace mseq
