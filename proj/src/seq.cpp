#include "mseq/seq.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <numeric>

#include <json.hpp>

#include "mseq/error.hpp"

namespace mseq {

namespace {

// Exhaustive autocorrelation up to this period; beyond it a fixed sample of shifts.
constexpr std::size_t kExhaustiveAutocorrPeriod = 65535;
constexpr std::size_t kExhaustiveSamplePeriod = 255;
constexpr std::size_t kSampleCount = 8;

// One period packed into words, with the first period repeated once so any
// cyclic window can be read without wrapping.
class PackedPeriod {
public:
    explicit PackedPeriod(const Sequence& seq) : n_(seq.period), words_((2 * n_ + 63) / 64 + 1, 0) {
        for (std::size_t t = 0; t < 2 * n_; ++t) {
            if (seq.at(t)) words_[t / 64] |= std::uint64_t{1} << (t % 64);
        }
    }

    // Number of positions where s_t != s_{t+tau}.
    std::size_t disagreements(std::size_t tau) const {
        std::size_t count = 0;
        const std::size_t full = n_ / 64;
        for (std::size_t w = 0; w <= full; ++w) {
            std::uint64_t diff = words_[w] ^ window(w * 64 + tau);
            if (w == full) {
                const std::size_t rem = n_ % 64;
                diff &= rem == 0 ? 0 : (std::uint64_t{1} << rem) - 1;
            }
            count += static_cast<std::size_t>(std::popcount(diff));
        }
        return count;
    }

private:
    std::uint64_t window(std::size_t start) const {
        const auto w = start / 64;
        const auto b = start % 64;
        if (b == 0) return words_[w];
        return (words_[w] >> b) | (words_[w + 1] << (64 - b));
    }

    std::size_t n_;
    std::vector<std::uint64_t> words_;
};

std::vector<std::size_t> sample_points(std::size_t period, const std::function<bool(std::size_t)>& admissible) {
    std::vector<std::size_t> all;
    for (std::size_t v = 1; v < period; ++v) {
        if (admissible(v)) all.push_back(v);
    }
    if (period <= kExhaustiveSamplePeriod || all.size() <= kSampleCount) return all;
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < kSampleCount; ++i) out.push_back(all[i * all.size() / kSampleCount]);
    return out;
}

bool runs_property(const std::vector<std::uint8_t>& s) {
    const std::size_t n = s.size();
    std::size_t start = n;
    for (std::size_t i = 0; i < n; ++i) {
        if (s[i] != s[(i + n - 1) % n]) {
            start = i;
            break;
        }
    }
    if (start == n) return false;  // constant sequence: no run boundaries

    std::vector<std::size_t> by_length(n + 1, 0);
    std::size_t total = 0;
    std::size_t len = 1;
    for (std::size_t k = 1; k <= n; ++k) {
        const auto cur = s[(start + k - 1) % n];
        const auto next = s[(start + k) % n];
        if (k < n && next == cur) {
            ++len;
            continue;
        }
        ++by_length[len];
        ++total;
        len = 1;
    }
    for (std::size_t k = 1, denom = 2; denom <= total && total % denom == 0; ++k, denom <<= 1) {
        if (by_length[k] != total / denom) return false;
    }
    return true;
}

}  // namespace

BitPoly MinimalPolynomial::recurrence_poly() const { return reciprocal_std(minpoly); }

Sequence lfsr_generate(const LfsrSpec& spec, std::size_t len) {
    const int r = spec.char_poly.degree();
    if (r < 1) throw PreconditionError("LFSR characteristic polynomial must have degree >= 1");
    if (!spec.char_poly.coeff(0)) throw PreconditionError("LFSR characteristic polynomial needs c_0 = 1");
    const auto ur = static_cast<std::size_t>(r);
    if (spec.init_state.size() != ur) throw PreconditionError("initial state length must equal the LFSR degree");
    if (len < ur) throw PreconditionError("requested length shorter than the LFSR degree");

    Sequence out;
    out.symbols.resize(len);
    for (std::size_t i = 0; i < ur; ++i) {
        if (spec.init_state[i] > 1) throw PreconditionError("initial state must be binary");
        out.symbols[i] = spec.init_state[i];
    }
    for (std::size_t t = 0; t + ur < len; ++t) {
        std::uint8_t v = 0;
        for (std::size_t i = 0; i < ur; ++i) v ^= static_cast<std::uint8_t>(spec.char_poly.coeff(i) & out.symbols[t + i]);
        out.symbols[t + ur] = v;
    }
    out.period = len;
    out.origin = spec;
    return out;
}

Sequence m_sequence(const FieldCtx& ctx, Elem lambda) {
    if (lambda.is_zero()) throw PreconditionError("m_sequence needs lambda != 0");
    if (!ctx.contains(lambda)) throw PreconditionError("lambda does not belong to the field");
    Sequence out;
    out.q = ctx.q();
    out.period = ctx.order();
    out.symbols.resize(out.period);
    const std::uint32_t base = ctx.log(lambda);
    for (std::size_t t = 0; t < out.period; ++t) {
        out.symbols[t] = static_cast<std::uint8_t>(ctx.trace(ctx.antilog(base + t)));
    }
    out.origin = TraceOrigin{ctx, lambda};
    return out;
}

std::int64_t autocorrelation(const Sequence& seq, std::int64_t tau) {
    if (seq.q != 2) throw PreconditionError("autocorrelation is defined here for binary sequences");
    if (seq.period == 0) throw PreconditionError("empty sequence");
    const auto n = static_cast<std::int64_t>(seq.period);
    auto shift = tau % n;
    if (shift < 0) shift += n;
    const auto diff = static_cast<std::int64_t>(PackedPeriod(seq).disagreements(static_cast<std::size_t>(shift)));
    return n - 2 * diff;
}

bool has_span_property(const Sequence& seq, std::size_t n) {
    const std::size_t period = seq.period;
    if (n == 0 || n > 24 || period != (std::size_t{1} << n) - 1) return false;
    std::vector<bool> seen(std::size_t{1} << n, false);
    std::size_t window = 0;
    const std::size_t mask = (std::size_t{1} << n) - 1;
    for (std::size_t i = 0; i < n; ++i) window = (window << 1) | seq.at(i);
    for (std::size_t t = 0; t < period; ++t) {
        if (window == 0 || seen[window]) return false;
        seen[window] = true;
        window = ((window << 1) | seq.at(t + n)) & mask;
    }
    return true;
}

bool is_cyclic_shift(const std::vector<std::uint8_t>& a, const std::vector<std::uint8_t>& b) {
    if (a.size() != b.size()) return false;
    if (a.empty()) return true;
    std::vector<std::uint8_t> doubled(b);
    doubled.insert(doubled.end(), b.begin(), b.end());
    const auto it = std::search(doubled.begin(), doubled.end(),
                                std::boyer_moore_horspool_searcher(a.begin(), a.end()));
    return it != doubled.end();
}

bool satisfies_recurrence(const Sequence& seq, const BitPoly& g) {
    if (g.is_zero()) throw PreconditionError("recurrence polynomial must be nonzero");
    const auto r = static_cast<std::size_t>(g.degree());
    for (std::size_t t = 0; t < seq.period; ++t) {
        unsigned acc = 0;
        for (std::size_t i = 0; i <= r; ++i) acc ^= static_cast<unsigned>(g.coeff(i)) & seq.at(t + i);
        if (acc != 0) return false;
    }
    return true;
}

GolombReport golomb_report(const Sequence& seq) {
    if (seq.q != 2) throw PreconditionError("golomb_report expects a binary sequence");
    GolombReport rep;
    const std::size_t period = seq.period;
    std::size_t n = 0;
    while (n < 32 && (std::size_t{1} << n) - 1 < period) ++n;
    if (n < 2 || (std::size_t{1} << n) - 1 != period) return rep;

    std::vector<std::uint8_t> s(seq.symbols.begin(), seq.symbols.begin() + static_cast<std::ptrdiff_t>(period));

    rep.span = has_span_property(seq, n);

    const auto ones = static_cast<std::size_t>(std::count(s.begin(), s.end(), std::uint8_t{1}));
    rep.balance = ones == (std::size_t{1} << (n - 1)) && period - ones == (std::size_t{1} << (n - 1)) - 1;

    rep.runs = runs_property(s);

    {
        PackedPeriod packed(seq);
        std::vector<std::size_t> taus;
        if (period <= kExhaustiveAutocorrPeriod) {
            for (std::size_t tau = 1; tau < period; ++tau) taus.push_back(tau);
        } else {
            for (std::size_t i = 0; i < 256; ++i) taus.push_back(1 + i * (period - 1) / 256);
        }
        rep.autocorr = packed.disagreements(0) == 0;
        for (auto tau : taus) {
            if (static_cast<std::int64_t>(period) - 2 * static_cast<std::int64_t>(packed.disagreements(tau)) != -1) {
                rep.autocorr = false;
                break;
            }
        }
    }

    rep.shift_add = true;
    for (auto tau : sample_points(period, [](std::size_t) { return true; })) {
        std::vector<std::uint8_t> sum(period);
        for (std::size_t t = 0; t < period; ++t) sum[t] = s[(t + tau) % period] ^ s[t];
        if (!is_cyclic_shift(sum, s)) {
            rep.shift_add = false;
            break;
        }
    }

    rep.decimation_sample = true;
    const auto coprime = [period](std::size_t d) { return d > 1 && std::gcd(d, period) == 1; };
    for (auto d : sample_points(period, coprime)) {
        Sequence dec;
        dec.period = period;
        dec.symbols.resize(period);
        for (std::size_t t = 0; t < period; ++t) dec.symbols[t] = s[(d * t) % period];
        if (!has_span_property(dec, n)) {
            rep.decimation_sample = false;
            break;
        }
    }
    return rep;
}

MinimalPolynomial minimal_polynomial(const Sequence& seq) {
    if (seq.q != 2) throw PreconditionError("minimal_polynomial expects a binary sequence");
    if (seq.period == 0) throw PreconditionError("empty sequence");
    BitPoly s;
    for (std::size_t t = 0; t < seq.period; ++t) {
        if (seq.symbols[t]) s.set_coeff(t, true);
    }
    if (s.is_zero()) return {BitPoly{1}, 0};
    const BitPoly zn1 = BitPoly::monomial(seq.period) + BitPoly{1};
    const BitPoly g = gcd(zn1, s);
    return {divmod(zn1, g).quotient, seq.period - static_cast<std::size_t>(g.degree())};
}

GeneratingFunction generating_function(const LfsrSpec& spec) {
    const int r = spec.char_poly.degree();
    if (r < 1 || !spec.char_poly.coeff(0)) throw PreconditionError("generating_function needs c_0 = 1 and degree >= 1");
    const auto ur = static_cast<std::size_t>(r);
    if (spec.init_state.size() != ur) throw PreconditionError("initial state length must equal the LFSR degree");
    GeneratingFunction out;
    for (std::size_t i = 0; i < ur; ++i) {
        unsigned acc = 0;
        for (std::size_t j = 0; j <= i; ++j) acc ^= static_cast<unsigned>(spec.char_poly.coeff(ur - i + j)) & spec.init_state[j];
        if (acc) out.h.set_coeff(i, true);
    }
    out.g_tilde = reciprocal_std(spec.char_poly);
    return out;
}

std::vector<std::uint8_t> power_series(const BitPoly& h, const BitPoly& g, std::size_t len) {
    if (!g.coeff(0)) throw PreconditionError("power series denominator must have g(0) = 1");
    const auto dg = static_cast<std::size_t>(g.degree());
    std::vector<std::uint8_t> a(len, 0);
    for (std::size_t t = 0; t < len; ++t) {
        unsigned v = h.coeff(t);
        for (std::size_t i = 1; i <= std::min(t, dg); ++i) v ^= static_cast<unsigned>(g.coeff(i)) & a[t - i];
        a[t] = static_cast<std::uint8_t>(v);
    }
    return a;
}

std::vector<std::uint8_t> parse_bits(std::string_view csv) {
    std::vector<std::uint8_t> out;
    for (char c : csv) {
        if (c == '0' || c == '1') out.push_back(static_cast<std::uint8_t>(c - '0'));
        else if (c != ',' && c != ' ') throw PreconditionError("bad bit list: " + std::string(csv));
    }
    return out;
}

std::string to_csv(const Sequence& seq) {
    std::string out;
    for (std::size_t t = 0; t < seq.symbols.size(); ++t) {
        if (t) out += ',';
        out += std::to_string(seq.symbols[t]);
    }
    return out;
}

std::string to_json(const Sequence& seq) {
    return nlohmann::json(std::vector<int>(seq.symbols.begin(), seq.symbols.end())).dump();
}

}  // namespace mseq
