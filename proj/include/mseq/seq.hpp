#pragma once

// LFSR and m-sequence generation with Golomb property checkers. The minimal
// polynomial and generating function of a periodic sequence live here too.

#include <cstddef>
#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "mseq/field.hpp"
#include "mseq/poly2.hpp"

namespace mseq {

// s_{t+r} = c_{r-1} s_{t+r-1} + ... + c_0 s_t over F_2, where
// char_poly = z^r + c_{r-1} z^{r-1} + ... + c_0.
struct LfsrSpec {
    BitPoly char_poly;
    std::vector<std::uint8_t> init_state;  // s_0 .. s_{r-1}
};

struct TraceOrigin {
    FieldCtx ctx;
    Elem lambda;
};

struct Sequence {
    std::vector<std::uint8_t> symbols;
    std::size_t period = 0;
    unsigned q = 2;
    std::variant<std::monostate, LfsrSpec, TraceOrigin> origin;

    std::size_t size() const noexcept { return symbols.size(); }
    // Cyclic access over the period.
    std::uint8_t at(std::size_t t) const noexcept { return symbols[t % period]; }
};

struct GolombReport {
    bool span = false;
    bool balance = false;
    bool runs = false;
    bool autocorr = false;
    bool shift_add = false;
    bool decimation_sample = false;

    bool all() const noexcept { return span && balance && runs && autocorr && shift_add && decimation_sample; }
};

struct MinimalPolynomial {
    // (z^N + 1) / gcd(z^N + 1, S^N(z)) with S^N(z) = s_0 + s_1 z + ... + s_{N-1} z^{N-1}.
    // With this coefficient order the result is the reciprocal of the
    // recurrence polynomial; see recurrence_poly().
    BitPoly minpoly;
    std::size_t linear_complexity = 0;

    BitPoly recurrence_poly() const;
};

struct GeneratingFunction {
    BitPoly h;
    BitPoly g_tilde;
};

Sequence lfsr_generate(const LfsrSpec& spec, std::size_t len);
// One period s_t = Tr(lambda alpha^t), t = 0 .. q^n - 2. Works for any q.
Sequence m_sequence(const FieldCtx& ctx, Elem lambda);

// sum_{t < N} (-1)^(s_{t+tau} - s_t), indices mod N.
std::int64_t autocorrelation(const Sequence& seq, std::int64_t tau);

// The order n is inferred from period = 2^n - 1 (n >= 2); any other period
// yields an all-false report.
GolombReport golomb_report(const Sequence& seq);

bool has_span_property(const Sequence& seq, std::size_t n);
bool is_cyclic_shift(const std::vector<std::uint8_t>& a, const std::vector<std::uint8_t>& b);
// Does the (cyclic) sequence satisfy the recurrence with characteristic polynomial g?
bool satisfies_recurrence(const Sequence& seq, const BitPoly& g);

MinimalPolynomial minimal_polynomial(const Sequence& seq);

GeneratingFunction generating_function(const LfsrSpec& spec);
// First len coefficients of h / g as a formal power series; g(0) must be 1.
std::vector<std::uint8_t> power_series(const BitPoly& h, const BitPoly& g, std::size_t len);

std::vector<std::uint8_t> parse_bits(std::string_view csv);
std::string to_csv(const Sequence& seq);
std::string to_json(const Sequence& seq);

}  // namespace mseq
