#include <doctest.h>

#include <algorithm>
#include <cstdint>
#include <vector>

#include "mseq/error.hpp"
#include "mseq/field.hpp"
#include "mseq/poly2.hpp"
#include "mseq/seq.hpp"

using namespace mseq;

namespace {

Sequence from_bits(std::vector<std::uint8_t> bits) {
    Sequence s;
    s.period = bits.size();
    s.symbols = std::move(bits);
    return s;
}

std::vector<std::uint8_t> unit_state(std::size_t r) {
    std::vector<std::uint8_t> s(r, 0);
    s[0] = 1;
    return s;
}

// Smallest p >= 1 with s_{t+p} = s_t for every t in the buffer.
std::size_t least_period(const std::vector<std::uint8_t>& s) {
    for (std::size_t p = 1; p < s.size(); ++p) {
        bool ok = true;
        for (std::size_t t = 0; t + p < s.size() && ok; ++t) ok = s[t] == s[t + p];
        if (ok) return p;
    }
    return s.size();
}

std::int64_t autocorrelation_oracle(const Sequence& s, std::size_t tau) {
    std::int64_t c = 0;
    for (std::size_t t = 0; t < s.period; ++t) c += s.at(t + tau) == s.at(t) ? 1 : -1;
    return c;
}

std::vector<Elem> sample_lambdas(const FieldCtx& f) {
    return {f.one(), f.alpha(), f.alpha_pow(3), f.alpha_pow(7), f.alpha_pow(f.order() - 1)};
}

}  // namespace

TEST_CASE("lfsr_generate") {
    const auto s = lfsr_generate({BitPoly{0x25}, {1, 0, 0, 0, 0}}, 11);
    CHECK(s.symbols == std::vector<std::uint8_t>{1, 0, 0, 0, 0, 1, 0, 0, 1, 0, 1});

    const auto zero = lfsr_generate({BitPoly{0x25}, {0, 0, 0, 0, 0}}, 40);
    CHECK(std::count(zero.symbols.begin(), zero.symbols.end(), 1) == 0);

    for (std::uint64_t f : {0x7ULL, 0xbULL, 0x13ULL, 0x25ULL, 0x2fULL, 0x43ULL, 0x5bULL, 0x83ULL, 0x11dULL}) {
        const BitPoly g{f};
        const std::size_t n = static_cast<std::size_t>(g.degree());
        const auto seq = lfsr_generate({g, unit_state(n)}, 3 * ((std::size_t{1} << n) - 1));
        CHECK(least_period(seq.symbols) == (std::size_t{1} << n) - 1);
    }

    CHECK_THROWS_AS(lfsr_generate({BitPoly{0x25}, {1, 0, 0}}, 11), PreconditionError);
    CHECK_THROWS_AS(lfsr_generate({BitPoly{0x25}, {1, 0, 0, 0, 0}}, 3), PreconditionError);
    CHECK_THROWS_AS(lfsr_generate({BitPoly{0x4a}, {1, 0, 0, 0, 0, 0}}, 10), PreconditionError);
}

TEST_CASE("m_sequence examples") {
    const FieldCtx f = make_binary_field(5, BitPoly{0x25});
    const auto s = m_sequence(f, f.one());
    CHECK(s.period == 31);
    CHECK(std::count(s.symbols.begin(), s.symbols.end(), 1) == 16);
    CHECK(s.symbols[0] == 1);
    for (std::int64_t j : {1, 4, 17}) {
        const auto sj = m_sequence(f, f.alpha_pow(j));
        for (std::size_t t = 0; t < 31; ++t) CHECK(sj.symbols[t] == s.at(t + static_cast<std::size_t>(j)));
    }
    CHECK_THROWS_AS(m_sequence(f, f.zero()), PreconditionError);

    const FieldCtx g = make_field(3, 3);
    const auto s3 = m_sequence(g, g.one());
    CHECK(s3.period == 26);
    CHECK(s3.q == 3);
    for (auto v : s3.symbols) CHECK(v < 3);
}

TEST_CASE("trace form equals the LFSR output up to a cyclic shift") {
    for (unsigned n = 3; n <= 10; ++n) {
        const FieldCtx f = make_binary_field(n);
        const auto trace_seq = m_sequence(f, f.one());
        const auto lfsr = lfsr_generate({f.modulus_bits(), unit_state(n)}, trace_seq.period);
        CHECK(is_cyclic_shift(lfsr.symbols, trace_seq.symbols));
        CHECK(satisfies_recurrence(trace_seq, f.modulus_bits()));
    }
}

TEST_CASE("autocorrelation") {
    const auto s5 = m_sequence(make_binary_field(5, BitPoly{0x25}), Elem{1});
    CHECK(autocorrelation(s5, 0) == 31);
    CHECK(autocorrelation(s5, 7) == -1);
    CHECK(autocorrelation(s5, -3) == -1);
    const auto s6 = m_sequence(make_binary_field(6), Elem{1});
    CHECK(autocorrelation(s6, 5) == -1);

    const auto odd = from_bits({1, 1, 0, 1, 0, 0, 0, 1, 1, 0, 1, 1, 1});
    for (std::size_t tau = 0; tau < odd.period; ++tau) {
        CHECK(autocorrelation(odd, static_cast<std::int64_t>(tau)) == autocorrelation_oracle(odd, tau));
    }
    const auto s10 = m_sequence(make_binary_field(10), Elem{1});
    for (std::size_t tau = 0; tau < s10.period; tau += 37) {
        CHECK(autocorrelation(s10, static_cast<std::int64_t>(tau)) == autocorrelation_oracle(s10, tau));
    }
}

TEST_CASE("golomb_report examples") {
    CHECK(golomb_report(m_sequence(make_binary_field(5), Elem{1})).all());
    const auto seven = from_bits({1, 1, 1, 0, 1, 0, 0});
    const auto rep7 = golomb_report(seven);
    CHECK(rep7.span);
    CHECK(rep7.balance);
    CHECK(rep7.runs);
    CHECK(rep7.autocorr);
    CHECK(rep7.shift_add);
    CHECK(rep7.decimation_sample);
    CHECK_FALSE(golomb_report(from_bits({1})).balance);
}

TEST_CASE("golomb_report rejects sequences that are not m-sequences") {
    auto s = m_sequence(make_binary_field(5), Elem{1});
    s.symbols[3] ^= 1U;
    const auto rep = golomb_report(s);
    CHECK_FALSE(rep.span);
    CHECK_FALSE(rep.balance);
    CHECK_FALSE(rep.autocorr);
    CHECK_FALSE(rep.all());

    // Balanced period 7 with the wrong run structure: 1111000.
    const auto blocky = golomb_report(from_bits({1, 1, 1, 1, 0, 0, 0}));
    CHECK(blocky.balance);
    CHECK_FALSE(blocky.runs);
    CHECK_FALSE(blocky.span);

    // Period 15 from the non-primitive irreducible z^4+z^3+z^2+z+1 repeated: period 5, not 15.
    const auto short_period = lfsr_generate({BitPoly{0b11111}, {1, 0, 0, 0}}, 15);
    CHECK_FALSE(golomb_report(short_period).all());
}

TEST_CASE("golomb properties hold for every sampled lambda") {
    for (unsigned n = 3; n <= 10; ++n) {
        const FieldCtx f = make_binary_field(n);
        for (const Elem lambda : sample_lambdas(f)) CHECK(golomb_report(m_sequence(f, lambda)).all());
    }
}

TEST_CASE("shift-and-add closure is exhaustive for n <= 8") {
    for (unsigned n = 3; n <= 8; ++n) {
        const auto s = m_sequence(make_binary_field(n), Elem{1});
        for (std::size_t tau = 1; tau < s.period; ++tau) {
            std::vector<std::uint8_t> sum(s.period);
            for (std::size_t t = 0; t < s.period; ++t) sum[t] = s.at(t + tau) ^ s.at(t);
            CHECK(is_cyclic_shift(sum, s.symbols));
        }
    }
}

TEST_CASE("is_cyclic_shift") {
    CHECK(is_cyclic_shift({1, 0, 0}, {0, 1, 0}));
    CHECK_FALSE(is_cyclic_shift({1, 1, 0}, {0, 1, 0}));
    CHECK_FALSE(is_cyclic_shift({1, 0}, {1, 0, 0}));
}

TEST_CASE("minimal_polynomial") {
    const auto ones = minimal_polynomial(from_bits({1}));
    CHECK(ones.minpoly == BitPoly{0b11});
    CHECK(ones.linear_complexity == 1);

    const auto zero = minimal_polynomial(from_bits({0, 0, 0}));
    CHECK(zero.minpoly == BitPoly{1});
    CHECK(zero.linear_complexity == 0);

    const auto impulse = minimal_polynomial(from_bits({1, 0, 0, 0, 0, 0, 0}));
    CHECK(impulse.linear_complexity == 7);
    CHECK(impulse.minpoly == BitPoly{0b10000001});

    CHECK(minimal_polynomial(m_sequence(make_binary_field(5, BitPoly{0x25}), Elem{1})).linear_complexity == 5);

    for (unsigned n = 3; n <= 12; ++n) {
        const FieldCtx f = make_binary_field(n);
        const auto s = m_sequence(f, f.alpha_pow(5));
        const auto mp = minimal_polynomial(s);
        CHECK(mp.minpoly.degree() == static_cast<int>(n));
        CHECK(mp.linear_complexity == n);
        CHECK(is_primitive(mp.minpoly, n));
        CHECK(satisfies_recurrence(s, mp.recurrence_poly()));
        CHECK(mp.recurrence_poly() == f.modulus_bits());
    }
}

TEST_CASE("generating_function") {
    const auto gf = generating_function({BitPoly{0x25}, {1, 0, 0, 0, 0}});
    CHECK(gf.h == BitPoly{0b1001});
    CHECK(gf.g_tilde == BitPoly{0b101001});

    CHECK(generating_function({BitPoly{0x25}, {0, 0, 0, 0, 0}}).h.is_zero());

    for (std::uint64_t f : {0x25ULL, 0x2fULL, 0x43ULL, 0x11dULL}) {
        for (std::uint64_t init : {1ULL, 5ULL, 22ULL, 31ULL}) {
            const BitPoly g{f};
            const auto r = static_cast<std::size_t>(g.degree());
            LfsrSpec spec{g, {}};
            for (std::size_t i = 0; i < r; ++i) spec.init_state.push_back((init >> i) & 1U);
            const auto h = generating_function(spec);
            CHECK(power_series(h.h, h.g_tilde, 100) == lfsr_generate(spec, 100).symbols);
        }
    }
}

TEST_CASE("text export") {
    CHECK(parse_bits("1,0,0,1") == std::vector<std::uint8_t>{1, 0, 0, 1});
    CHECK_THROWS_AS(parse_bits("1,2"), PreconditionError);
    const auto s = from_bits({1, 1, 0});
    CHECK(to_csv(s) == "1,1,0");
    CHECK(to_json(s) == "[1,1,0]");
}
