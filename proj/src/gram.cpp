#include "mseq/gram.hpp"

#include <algorithm>
#include <bit>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "mseq/error.hpp"

namespace mseq {

namespace {

// Rank of a matrix whose rows fit in a single 64-bit word.
unsigned rank_single_word(std::vector<std::uint64_t> rows) {
    unsigned rank = 0;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        std::uint64_t pivot = 0;
        std::size_t best = rows.size();
        for (std::size_t r = i; r < rows.size(); ++r) {
            if (rows[r] != 0) {
                best = r;
                break;
            }
        }
        if (best == rows.size()) break;
        std::swap(rows[i], rows[best]);
        pivot = rows[i] & (~rows[i] + 1);  // lowest set bit
        for (std::size_t r = i + 1; r < rows.size(); ++r) {
            if (rows[r] & pivot) rows[r] ^= rows[i];
        }
        ++rank;
    }
    return rank;
}

void require_binary_profile_field(const FieldCtx& ctx) {
    if (ctx.q() != 2) throw PreconditionError("rank profiles are defined over F_2 (q = 2)");
    if (ctx.n() < 3) throw PreconditionError("rank profiles require n >= 3");
}

// Gram rows as single words, for t in [t_begin, t_end], starting from a fresh Gram at t_begin.
void profile_chunk(const Sequence& seq, unsigned n, std::size_t t_begin, std::size_t t_end, ProfileOptions::Mode mode,
                   std::vector<unsigned>& out) {
    std::vector<std::uint64_t> g(n, 0);
    const auto load = [&](std::size_t t) {
        const BitMatrix gm = gram(observability(seq, n, t));
        for (unsigned i = 0; i < n; ++i) g[i] = gm.row(i)[0];
    };
    load(t_begin);
    out[t_begin - 1] = rank_single_word(g);
    for (std::size_t t = t_begin + 1; t <= t_end; ++t) {
        if (mode == ProfileOptions::Mode::recompute) {
            load(t);
        } else {
            // Appending column t-1 adds v v^T with v_i = s_{i + t - 1}.
            std::uint64_t v = 0;
            for (unsigned i = 0; i < n; ++i) v |= std::uint64_t{seq.at(i + t - 1)} << i;
            for (unsigned i = 0; i < n; ++i) {
                if ((v >> i) & 1U) g[i] ^= v;
            }
        }
        out[t - 1] = rank_single_word(g);
    }
}

}  // namespace

BitMatrix::BitMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), wpr_((cols + 63) / 64), data_(rows * ((cols + 63) / 64), 0) {}

BitMatrix BitMatrix::identity(std::size_t n) {
    BitMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.set(i, i, true);
    return m;
}

BitMatrix BitMatrix::from_rows(const std::vector<std::vector<std::uint8_t>>& rows) {
    const std::size_t cols = rows.empty() ? 0 : rows.front().size();
    BitMatrix m(rows.size(), cols);
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != cols) throw PreconditionError("ragged rows in BitMatrix::from_rows");
        for (std::size_t c = 0; c < cols; ++c) m.set(r, c, rows[r][c] != 0);
    }
    return m;
}

void BitMatrix::set(std::size_t r, std::size_t c, bool v) noexcept {
    auto& w = data_[r * wpr_ + c / 64];
    const std::uint64_t bit = std::uint64_t{1} << (c % 64);
    w = v ? (w | bit) : (w & ~bit);
}

bool BitMatrix::is_zero() const noexcept {
    return std::all_of(data_.begin(), data_.end(), [](std::uint64_t w) { return w == 0; });
}

bool BitMatrix::is_symmetric() const noexcept {
    if (rows_ != cols_) return false;
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t j = i + 1; j < cols_; ++j) {
            if (get(i, j) != get(j, i)) return false;
        }
    }
    return true;
}

BitMatrix BitMatrix::transpose() const {
    BitMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t j = 0; j < cols_; ++j) {
            if (get(i, j)) t.set(j, i, true);
        }
    }
    return t;
}

BitMatrix BitMatrix::vstack(const BitMatrix& other) const {
    if (other.cols_ != cols_) throw PreconditionError("vstack needs equal column counts");
    BitMatrix out(rows_ + other.rows_, cols_);
    std::copy(data_.begin(), data_.end(), out.data_.begin());
    std::copy(other.data_.begin(), other.data_.end(), out.data_.begin() + static_cast<std::ptrdiff_t>(data_.size()));
    return out;
}

std::string BitMatrix::dump() const {
    std::string out;
    out.reserve(rows_ * (cols_ + 1));
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t j = 0; j < cols_; ++j) out += get(i, j) ? '1' : '0';
        out += '\n';
    }
    return out;
}

BitMatrix observability(const Sequence& seq, std::size_t n, std::size_t t) {
    if (n == 0) throw PreconditionError("observability needs n >= 1");
    if (t < 1 || t > seq.period) throw PreconditionError("observability needs 1 <= t <= period");
    BitMatrix g(n, t);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < t; ++j) {
            if (seq.at(i + j)) g.set(i, j, true);
        }
    }
    return g;
}

BitMatrix gram(const BitMatrix& g) {
    const std::size_t n = g.rows();
    BitMatrix out(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i; j < n; ++j) {
            unsigned parity = 0;
            for (std::size_t w = 0; w < g.words_per_row(); ++w) parity ^= std::popcount(g.row(i)[w] & g.row(j)[w]) & 1U;
            if (parity) {
                out.set(i, j, true);
                out.set(j, i, true);
            }
        }
    }
    return out;
}

BitMatrix multiply(const BitMatrix& a, const BitMatrix& b) {
    if (a.cols() != b.rows()) throw PreconditionError("matrix dimensions do not match for multiplication");
    BitMatrix out(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t k = 0; k < a.cols(); ++k) {
            if (!a.get(i, k)) continue;
            for (std::size_t w = 0; w < b.words_per_row(); ++w) out.row(i)[w] ^= b.row(k)[w];
        }
    }
    return out;
}

std::size_t rank_gf2(BitMatrix m) {
    std::size_t rank = 0;
    const std::size_t wpr = m.words_per_row();
    for (std::size_t c = 0; c < m.cols() && rank < m.rows(); ++c) {
        const std::size_t w = c / 64;
        const std::uint64_t bit = std::uint64_t{1} << (c % 64);
        std::size_t p = rank;
        while (p < m.rows() && !(m.row(p)[w] & bit)) ++p;
        if (p == m.rows()) continue;
        if (p != rank) std::swap_ranges(m.row(p), m.row(p) + wpr, m.row(rank));
        for (std::size_t r = rank + 1; r < m.rows(); ++r) {
            if (m.row(r)[w] & bit) {
                for (std::size_t k = w; k < wpr; ++k) m.row(r)[k] ^= m.row(rank)[k];
            }
        }
        ++rank;
    }
    return rank;
}

BitMatrix kernel_basis(const BitMatrix& m) {
    BitMatrix a = m;
    const std::size_t wpr = a.words_per_row();
    std::vector<std::size_t> pivot_cols;
    std::size_t rank = 0;
    for (std::size_t c = 0; c < a.cols() && rank < a.rows(); ++c) {
        const std::size_t w = c / 64;
        const std::uint64_t bit = std::uint64_t{1} << (c % 64);
        std::size_t p = rank;
        while (p < a.rows() && !(a.row(p)[w] & bit)) ++p;
        if (p == a.rows()) continue;
        if (p != rank) std::swap_ranges(a.row(p), a.row(p) + wpr, a.row(rank));
        for (std::size_t r = 0; r < a.rows(); ++r) {
            if (r != rank && (a.row(r)[w] & bit)) {
                for (std::size_t k = 0; k < wpr; ++k) a.row(r)[k] ^= a.row(rank)[k];
            }
        }
        pivot_cols.push_back(c);
        ++rank;
    }
    std::vector<bool> is_pivot(a.cols(), false);
    for (auto c : pivot_cols) is_pivot[c] = true;

    BitMatrix basis(a.cols() - rank, a.cols());
    std::size_t out_row = 0;
    for (std::size_t f = 0; f < a.cols(); ++f) {
        if (is_pivot[f]) continue;
        basis.set(out_row, f, true);
        for (std::size_t r = 0; r < rank; ++r) {
            if (a.get(r, f)) basis.set(out_row, pivot_cols[r], true);
        }
        ++out_row;
    }
    return basis;
}

FieldMatrix::FieldMatrix(FieldCtx ctx, std::size_t rows, std::size_t cols)
    : ctx_(std::move(ctx)), rows_(rows), cols_(cols), data_(rows * cols, Elem{0}) {}

bool FieldMatrix::is_zero() const noexcept {
    return std::all_of(data_.begin(), data_.end(), [](Elem e) { return e.is_zero(); });
}

bool FieldMatrix::is_symmetric() const noexcept {
    if (rows_ != cols_) return false;
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t j = i + 1; j < cols_; ++j) {
            if ((*this)(i, j) != (*this)(j, i)) return false;
        }
    }
    return true;
}

FieldMatrix multiply(const FieldMatrix& a, const FieldMatrix& b) {
    if (a.cols() != b.rows()) throw PreconditionError("matrix dimensions do not match for multiplication");
    if (!(a.ctx() == b.ctx())) throw PreconditionError("matrices belong to different fields");
    const FieldCtx& f = a.ctx();
    FieldMatrix out(f, a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const Elem aik = a(i, k);
            if (aik.is_zero()) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) = f.add(out(i, j), f.mul(aik, b(k, j)));
        }
    }
    return out;
}

FieldMatrix lift(const FieldCtx& ctx, const BitMatrix& m) {
    FieldMatrix out(ctx, m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = m.get(i, j) ? ctx.one() : ctx.zero();
    }
    return out;
}

std::size_t rank_field(FieldMatrix m) {
    const FieldCtx& f = m.ctx();
    std::size_t rank = 0;
    for (std::size_t c = 0; c < m.cols() && rank < m.rows(); ++c) {
        std::size_t p = rank;
        while (p < m.rows() && m(p, c).is_zero()) ++p;
        if (p == m.rows()) continue;
        if (p != rank) {
            for (std::size_t k = 0; k < m.cols(); ++k) std::swap(m(p, k), m(rank, k));
        }
        const Elem inv_pivot = f.inv(m(rank, c));
        for (std::size_t r = rank + 1; r < m.rows(); ++r) {
            if (m(r, c).is_zero()) continue;
            const Elem factor = f.mul(m(r, c), inv_pivot);
            for (std::size_t k = c; k < m.cols(); ++k) m(r, k) = f.sub(m(r, k), f.mul(factor, m(rank, k)));
        }
        ++rank;
    }
    return rank;
}

RankProfile rank_profile(const FieldCtx& ctx, Elem lambda, ProfileOptions options) {
    require_binary_profile_field(ctx);
    const Sequence seq = m_sequence(ctx, lambda);
    const unsigned n = ctx.n();
    const std::size_t period = seq.period;

    RankProfile profile;
    profile.n = n;
    profile.modulus = ctx.modulus_bits();
    profile.lambda = lambda;
    profile.values.assign(period, 0);

    const unsigned jobs = std::clamp<unsigned>(options.jobs, 1, static_cast<unsigned>(std::min<std::size_t>(period, 256)));
    if (jobs == 1) {
        profile_chunk(seq, n, 1, period, options.mode, profile.values);
        return profile;
    }
    {
        std::vector<std::jthread> workers;
        for (unsigned j = 0; j < jobs; ++j) {
            const std::size_t begin = 1 + j * period / jobs;
            const std::size_t end = (j + 1) * period / jobs;
            if (begin > end) continue;
            // Each worker writes a disjoint slice of values.
            workers.emplace_back([&, begin, end] { profile_chunk(seq, n, begin, end, options.mode, profile.values); });
        }
    }
    return profile;
}

FieldMatrix m_matrix(const FieldCtx& ctx, std::size_t t) {
    require_binary_profile_field(ctx);
    const std::uint64_t order = ctx.order();
    if (t < 1 || t > order) throw PreconditionError("m_matrix needs 1 <= t <= 2^n - 1");
    const unsigned n = ctx.n();
    FieldMatrix m(ctx, n, n);
    for (unsigned i = 0; i < n; ++i) {
        for (unsigned j = i; j < n; ++j) {
            const std::uint64_t e = ((std::uint64_t{1} << i) + (std::uint64_t{1} << j)) % order;
            const Elem den = ctx.add(ctx.one(), ctx.antilog(e));
            if (den.is_zero()) throw InternalError("zero denominator in M(x)");
            const Elem num = ctx.add(ctx.one(), ctx.antilog((t % order) * e % order));
            const Elem v = ctx.div(num, den);
            m(i, j) = v;
            m(j, i) = v;
        }
    }
    return m;
}

bool vandermonde_factor_check(const FieldCtx& ctx, Elem lambda, std::size_t t) {
    require_binary_profile_field(ctx);
    const Sequence seq = m_sequence(ctx, lambda);
    const unsigned n = ctx.n();
    FieldMatrix v(ctx, n, n);
    FieldMatrix lam(ctx, n, n);
    FieldMatrix gt(ctx, n, t);
    for (unsigned l = 0; l < n; ++l) {
        const Elem al = ctx.frobenius(ctx.alpha(), l);
        lam(l, l) = ctx.frobenius(lambda, l);
        for (unsigned i = 0; i < n; ++i) v(i, l) = ctx.pow(al, i);
        for (std::size_t j = 0; j < t; ++j) gt(l, j) = ctx.pow(al, static_cast<std::int64_t>(j));
    }
    return multiply(multiply(v, lam), gt) == lift(ctx, observability(seq, n, t));
}

bool is_frobenius_kernel_vector(const FieldMatrix& m, Elem c1) {
    const FieldCtx& f = m.ctx();
    if (c1.is_zero() || m.rows() != m.cols()) return false;
    std::vector<Elem> c(m.cols());
    c[0] = c1;
    for (std::size_t i = 1; i < c.size(); ++i) c[i] = f.mul(c[i - 1], c[i - 1]);
    for (std::size_t i = 0; i < m.rows(); ++i) {
        Elem acc = f.zero();
        for (std::size_t j = 0; j < m.cols(); ++j) acc = f.add(acc, f.mul(m(i, j), c[j]));
        if (!acc.is_zero()) return false;
    }
    return true;
}

std::optional<Elem> frobenius_kernel(const FieldMatrix& m) {
    if (m.rows() != m.cols()) throw PreconditionError("frobenius_kernel needs a square matrix");
    if (rank_field(m) == m.rows()) return std::nullopt;
    const FieldCtx& f = m.ctx();
    for (std::uint32_t e = 0; e < f.order(); ++e) {
        const Elem c1 = f.antilog(e);
        if (is_frobenius_kernel_vector(m, c1)) return c1;
    }
    return std::nullopt;
}

std::string profile_to_csv(const RankProfile& profile) {
    std::ostringstream os;
    os << "t,rank\n";
    for (std::size_t t = 1; t <= profile.values.size(); ++t) os << t << ',' << profile.values[t - 1] << '\n';
    return os.str();
}

std::string profile_to_json(const RankProfile& profile) {
    nlohmann::json rows = nlohmann::json::array();
    for (std::size_t t = 1; t <= profile.values.size(); ++t) rows.push_back({{"t", t}, {"rank", profile.values[t - 1]}});
    return rows.dump() + "\n";
}

}  // namespace mseq
