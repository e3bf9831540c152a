#include "mseq/poly2.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <numeric>

#include "mseq/detail/intmath.hpp"
#include "mseq/error.hpp"

namespace mseq {

namespace {

constexpr std::size_t kMaxOrderDegree = 40;
constexpr std::size_t kMaxTrialDegree = 30;
constexpr std::size_t kMaxEnumerateDegree = 40;

std::size_t words_for_degree(std::size_t deg) { return deg / BitPoly::kWordBits + 1; }

}  // namespace

BitPoly::BitPoly(std::uint64_t mask) {
    if (mask != 0) words_.push_back(mask);
}

BitPoly BitPoly::monomial(std::size_t k) {
    BitPoly p;
    p.words_.assign(words_for_degree(k), 0);
    p.words_.back() = Word{1} << (k % kWordBits);
    return p;
}

BitPoly BitPoly::from_exponents(std::initializer_list<std::size_t> exps) {
    BitPoly p;
    for (auto e : exps) p.set_coeff(e, !p.coeff(e));
    return p;
}

BitPoly BitPoly::from_words(std::vector<Word> words) {
    BitPoly p;
    p.words_ = std::move(words);
    p.trim();
    return p;
}

int BitPoly::degree() const noexcept {
    if (words_.empty()) return kZeroDegree;
    return static_cast<int>((words_.size() - 1) * kWordBits + (kWordBits - 1) -
                            static_cast<std::size_t>(std::countl_zero(words_.back())));
}

bool BitPoly::coeff(std::size_t i) const noexcept {
    const auto w = i / kWordBits;
    return w < words_.size() && ((words_[w] >> (i % kWordBits)) & 1U);
}

void BitPoly::set_coeff(std::size_t i, bool value) {
    const auto w = i / kWordBits;
    const Word bit = Word{1} << (i % kWordBits);
    if (value) {
        if (w >= words_.size()) words_.resize(w + 1, 0);
        words_[w] |= bit;
    } else if (w < words_.size()) {
        words_[w] &= ~bit;
        trim();
    }
}

std::size_t BitPoly::valuation() const {
    if (is_zero()) throw PreconditionError("valuation of the zero polynomial");
    std::size_t w = 0;
    while (words_[w] == 0) ++w;
    return w * kWordBits + static_cast<std::size_t>(std::countr_zero(words_[w]));
}

std::size_t BitPoly::weight() const noexcept {
    std::size_t c = 0;
    for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
    return c;
}

std::uint64_t BitPoly::to_u64() const {
    if (words_.size() > 1) throw PreconditionError("polynomial does not fit in 64 bits");
    return words_.empty() ? 0 : words_[0];
}

BitPoly& BitPoly::operator+=(const BitPoly& rhs) {
    if (rhs.words_.size() > words_.size()) words_.resize(rhs.words_.size(), 0);
    for (std::size_t i = 0; i < rhs.words_.size(); ++i) words_[i] ^= rhs.words_[i];
    trim();
    return *this;
}

BitPoly& BitPoly::operator<<=(std::size_t k) {
    if (is_zero() || k == 0) return *this;
    const auto wshift = k / kWordBits;
    const auto bshift = k % kWordBits;
    std::vector<Word> out(words_.size() + wshift + 1, 0);
    for (std::size_t i = 0; i < words_.size(); ++i) {
        out[i + wshift] |= words_[i] << bshift;
        if (bshift != 0) out[i + wshift + 1] |= words_[i] >> (kWordBits - bshift);
    }
    words_ = std::move(out);
    trim();
    return *this;
}

BitPoly& BitPoly::operator>>=(std::size_t k) {
    const auto wshift = k / kWordBits;
    const auto bshift = k % kWordBits;
    if (wshift >= words_.size()) {
        words_.clear();
        return *this;
    }
    std::vector<Word> out(words_.size() - wshift, 0);
    for (std::size_t i = 0; i < out.size(); ++i) {
        out[i] = words_[i + wshift] >> bshift;
        if (bshift != 0 && i + wshift + 1 < words_.size())
            out[i] |= words_[i + wshift + 1] << (kWordBits - bshift);
    }
    words_ = std::move(out);
    trim();
    return *this;
}

void BitPoly::add_shifted(const BitPoly& rhs, std::size_t shift) {
    if (rhs.is_zero()) return;
    const auto wshift = shift / kWordBits;
    const auto bshift = shift % kWordBits;
    const auto need = rhs.words_.size() + wshift + 1;
    if (words_.size() < need) words_.resize(need, 0);
    for (std::size_t i = 0; i < rhs.words_.size(); ++i) {
        words_[i + wshift] ^= rhs.words_[i] << bshift;
        if (bshift != 0) words_[i + wshift + 1] ^= rhs.words_[i] >> (kWordBits - bshift);
    }
    trim();
}

BitPoly operator*(const BitPoly& a, const BitPoly& b) {
    const BitPoly& sparse = a.weight() <= b.weight() ? a : b;
    const BitPoly& dense = &sparse == &a ? b : a;
    BitPoly out;
    for (std::size_t w = 0; w < sparse.words_.size(); ++w) {
        auto bits = sparse.words_[w];
        while (bits != 0) {
            const auto j = static_cast<std::size_t>(std::countr_zero(bits));
            out.add_shifted(dense, w * BitPoly::kWordBits + j);
            bits &= bits - 1;
        }
    }
    return out;
}

std::strong_ordering operator<=>(const BitPoly& a, const BitPoly& b) {
    if (auto c = a.degree() <=> b.degree(); c != 0) return c;
    for (std::size_t i = a.words_.size(); i-- > 0;) {
        if (auto c = a.words_[i] <=> b.words_[i]; c != 0) return c;
    }
    return std::strong_ordering::equal;
}

void BitPoly::trim() noexcept {
    while (!words_.empty() && words_.back() == 0) words_.pop_back();
}

BitPoly add(const BitPoly& a, const BitPoly& b) { return a + b; }

BitPoly mul(const BitPoly& a, const BitPoly& b) { return a * b; }

DivMod divmod(const BitPoly& a, const BitPoly& b) {
    if (b.is_zero()) throw PreconditionError("division by the zero polynomial");
    DivMod out{BitPoly{}, a};
    const int db = b.degree();
    for (int dr = out.remainder.degree(); dr >= db; dr = out.remainder.degree()) {
        const auto s = static_cast<std::size_t>(dr - db);
        out.quotient.set_coeff(s, true);
        out.remainder.add_shifted(b, s);
    }
    return out;
}

BitPoly mod(const BitPoly& a, const BitPoly& b) { return divmod(a, b).remainder; }

BitPoly gcd(BitPoly a, BitPoly b) {
    if (a.is_zero() && b.is_zero()) throw PreconditionError("gcd(0, 0) is undefined");
    while (!b.is_zero()) {
        a = mod(a, b);
        std::swap(a, b);
    }
    return a;
}

BitPoly mulmod(const BitPoly& a, const BitPoly& b, const BitPoly& m) { return mod(a * b, m); }

BitPoly pow_z_mod(std::uint64_t k, const BitPoly& m) {
    if (m.is_zero()) throw PreconditionError("reduction modulo the zero polynomial");
    BitPoly result = mod(BitPoly{1}, m);
    BitPoly base = mod(BitPoly{2}, m);
    while (k > 0) {
        if (k & 1U) result = mulmod(result, base, m);
        base = mulmod(base, base, m);
        k >>= 1;
    }
    return result;
}

BitPoly derivative(const BitPoly& f) {
    BitPoly out;
    for (int i = 1; i <= f.degree(); i += 2) {
        if (f.coeff(static_cast<std::size_t>(i))) out.set_coeff(static_cast<std::size_t>(i - 1), true);
    }
    return out;
}

BitPoly reciprocal_std(const BitPoly& f) {
    if (f.is_zero()) throw PreconditionError("reciprocal of the zero polynomial");
    const auto d = static_cast<std::size_t>(f.degree());
    BitPoly out;
    for (std::size_t i = 0; i <= d; ++i) {
        if (f.coeff(i)) out.set_coeff(d - i, true);
    }
    return out;
}

BitPoly reciprocal_star(const BitPoly& f, std::size_t n) {
    if (n == 0) throw PreconditionError("reciprocal_star needs n >= 1");
    if (f.degree() >= static_cast<int>(n))
        throw PreconditionError("reciprocal_star: degree " + std::to_string(f.degree()) + " exceeds n-1 = " +
                                std::to_string(n - 1));
    BitPoly out;
    for (std::size_t i = 0; i < n; ++i) {
        if (f.coeff(i)) out.set_coeff(n - 1 - i, true);
    }
    return out;
}

bool is_self_reciprocal(const BitPoly& f) { return !f.is_zero() && reciprocal_std(f) == f; }

SelfRecFactors selfrec_factorize(const BitPoly& f) {
    if (f.is_zero()) throw PreconditionError("selfrec_factorize of the zero polynomial");
    SelfRecFactors out;
    out.r = f.valuation();
    const BitPoly h = f >> out.r;
    // gcd(h, h~) collects every self-reciprocal factor together with the
    // matched part of each reciprocal pair; what is left has no such pair.
    out.v = gcd(h, reciprocal_std(h));
    out.u = divmod(h, out.v).quotient;
    return out;
}

bool is_irreducible(const BitPoly& f) {
    const int n = f.degree();
    if (n <= 0) return false;
    if (n == 1) return true;
    if (!f.coeff(0)) return false;
    // Rabin: z^(2^n) = z mod f, and gcd(z^(2^(n/p)) - z, f) = 1 for primes p | n.
    std::vector<BitPoly> frob(static_cast<std::size_t>(n) + 1);
    frob[0] = BitPoly{2};
    for (int k = 1; k <= n; ++k) frob[k] = mulmod(frob[k - 1], frob[k - 1], f);
    if (frob[n] != BitPoly{2}) return false;
    for (auto p : detail::prime_factors(static_cast<std::uint64_t>(n))) {
        const auto k = static_cast<std::size_t>(n) / p;
        if (!gcd(frob[k] + BitPoly{2}, f).is_one()) return false;
    }
    return true;
}

std::vector<Factor> irreducible_factorization(const BitPoly& f) {
    if (f.degree() < 1) throw PreconditionError("irreducible_factorization needs a non-constant polynomial");
    std::vector<Factor> out;
    const auto r = f.valuation();
    if (r > 0) out.push_back({BitPoly{2}, r});
    BitPoly rest = f >> r;

    auto finished = [&] {
        if (rest.degree() < 1) return true;
        if (is_irreducible(rest)) {
            out.push_back({rest, 1});
            rest = BitPoly{1};
            return true;
        }
        return false;
    };

    for (std::size_t d = 1; !finished(); ++d) {
        if (2 * d > static_cast<std::size_t>(rest.degree())) {
            throw InternalError("trial division ran past sqrt of a reducible remainder");
        }
        if (d > kMaxTrialDegree) throw PreconditionError("factorization beyond trial-division range");
        const std::uint64_t lo = (std::uint64_t{1} << d) | 1U;
        const std::uint64_t hi = std::uint64_t{1} << (d + 1);
        for (std::uint64_t c = lo; c < hi && 2 * d <= static_cast<std::size_t>(rest.degree()); c += 2) {
            const BitPoly cand{c};
            std::size_t mult = 0;
            for (auto dm = divmod(rest, cand); dm.remainder.is_zero(); dm = divmod(rest, cand)) {
                rest = std::move(dm.quotient);
                ++mult;
            }
            if (mult > 0) {
                out.push_back({cand, mult});
                if (rest.degree() >= 1 && is_irreducible(rest)) break;
            }
        }
    }
    std::sort(out.begin(), out.end(), [](const Factor& a, const Factor& b) { return a.poly < b.poly; });
    return out;
}

namespace {

std::uint64_t order_of_irreducible(const BitPoly& f) {
    const auto d = static_cast<std::size_t>(f.degree());
    if (d > kMaxOrderDegree) throw PreconditionError("poly_order supports irreducible factors up to degree 40");
    std::uint64_t order = (std::uint64_t{1} << d) - 1;
    for (auto p : detail::prime_factors(order)) {
        while (order % p == 0 && pow_z_mod(order / p, f).is_one()) order /= p;
    }
    return order;
}

}  // namespace

std::uint64_t poly_order(const BitPoly& g) {
    if (!g.coeff(0)) throw PreconditionError("poly_order needs g(0) = 1");
    if (g.is_one()) return 1;
    if (is_irreducible(g)) return order_of_irreducible(g);
    std::uint64_t order = 1;
    std::size_t max_mult = 1;
    for (const auto& fac : irreducible_factorization(g)) {
        order = std::lcm(order, order_of_irreducible(fac.poly));
        max_mult = std::max(max_mult, fac.multiplicity);
    }
    // A repeated factor of multiplicity e contributes 2^t with 2^t >= e.
    std::size_t pow2 = 1;
    while (pow2 < max_mult) pow2 <<= 1;
    return order * pow2;
}

bool is_primitive(const BitPoly& f, std::size_t n) {
    if (f.degree() != static_cast<int>(n))
        throw PreconditionError("is_primitive: degree " + std::to_string(f.degree()) + " does not match n = " +
                                std::to_string(n));
    if (!f.coeff(0) || !is_irreducible(f)) return false;
    return order_of_irreducible(f) == (std::uint64_t{1} << n) - 1;
}

std::uint64_t count_coprime_reciprocal(std::size_t d, CountMode mode) {
    if (mode == CountMode::closed_form) {
        if (d == 0) return 1;
        if (d <= 2) return 0;
        if (d > 62) throw PreconditionError("count_coprime_reciprocal closed form supports d <= 62");
        const std::int64_t sign = (d % 2 == 0) ? 1 : -1;
        const std::int64_t value = (static_cast<std::int64_t>(1) << (d - 1)) - 2 * sign;
        return static_cast<std::uint64_t>(value / 3);
    }
    if (d > kMaxEnumerateDegree) throw PreconditionError("count_coprime_reciprocal enumeration supports d <= 40");
    if (d == 0) return gcd(BitPoly{1}, reciprocal_std(BitPoly{1})).is_one() ? 1 : 0;
    std::uint64_t count = 0;
    const std::uint64_t free_bits = d - 1;
    for (std::uint64_t mid = 0; mid < (std::uint64_t{1} << free_bits); ++mid) {
        const BitPoly u{(std::uint64_t{1} << d) | (mid << 1) | 1U};
        if (gcd(u, reciprocal_std(u)).is_one()) ++count;
    }
    return count;
}

std::string to_hex(const BitPoly& f) {
    if (f.is_zero()) return "0x0";
    static constexpr char kDigits[] = "0123456789abcdef";
    std::string out;
    const auto d = static_cast<std::size_t>(f.degree());
    for (std::size_t nib = d / 4 + 1; nib-- > 0;) {
        unsigned v = 0;
        for (std::size_t b = 0; b < 4; ++b) v |= static_cast<unsigned>(f.coeff(nib * 4 + b)) << b;
        out.push_back(kDigits[v]);
    }
    return "0x" + out;
}

std::string to_string(const BitPoly& f) {
    if (f.is_zero()) return "0";
    std::string out;
    for (int i = f.degree(); i >= 0; --i) {
        if (!f.coeff(static_cast<std::size_t>(i))) continue;
        if (!out.empty()) out += '+';
        if (i == 0) out += '1';
        else if (i == 1) out += 'z';
        else out += "z^" + std::to_string(i);
    }
    return out;
}

BitPoly parse_poly(std::string_view text) {
    std::string s;
    for (char c : text) {
        if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
    }
    if (s.empty()) throw PreconditionError("empty polynomial string");

    if (s.size() > 2 && s[0] == '0' && (s[1] == 'x' || s[1] == 'X')) {
        BitPoly out;
        const auto digits = std::string_view(s).substr(2);
        for (std::size_t k = 0; k < digits.size(); ++k) {
            const char c = static_cast<char>(std::tolower(static_cast<unsigned char>(digits[digits.size() - 1 - k])));
            unsigned v = 0;
            if (c >= '0' && c <= '9') v = static_cast<unsigned>(c - '0');
            else if (c >= 'a' && c <= 'f') v = static_cast<unsigned>(c - 'a' + 10);
            else throw PreconditionError("bad hex digit in polynomial: " + std::string(text));
            for (std::size_t b = 0; b < 4; ++b) {
                if ((v >> b) & 1U) out.set_coeff(k * 4 + b, true);
            }
        }
        return out;
    }

    BitPoly out;
    std::size_t pos = 0;
    while (pos <= s.size()) {
        const auto plus = s.find('+', pos);
        const auto term = std::string_view(s).substr(pos, plus == std::string::npos ? std::string::npos : plus - pos);
        if (term == "1") {
            out += BitPoly{1};
        } else if (term == "0") {
            // contributes nothing
        } else if (!term.empty() && (term[0] == 'z' || term[0] == 'x')) {
            std::size_t e = 1;
            if (term.size() > 1) {
                if (term[1] != '^' || term.size() < 3) throw PreconditionError("bad polynomial term: " + std::string(term));
                e = 0;
                for (char c : term.substr(2)) {
                    if (!std::isdigit(static_cast<unsigned char>(c)))
                        throw PreconditionError("bad exponent in polynomial term: " + std::string(term));
                    e = e * 10 + static_cast<std::size_t>(c - '0');
                }
            }
            out += BitPoly::monomial(e);
        } else {
            throw PreconditionError("bad polynomial term: '" + std::string(term) + "'");
        }
        if (plus == std::string::npos) break;
        pos = plus + 1;
    }
    return out;
}

}  // namespace mseq
