#pragma once

// Observability and Gram matrices over F_2 together with the lifted matrix
// M(x) over F_{2^n}. Ranks are available over both fields.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mseq/field.hpp"
#include "mseq/seq.hpp"

namespace mseq {

// Dense F_2 matrix, each row packed little-endian into 64-bit words. Bits past
// cols in the last word of a row are always zero.
class BitMatrix {
public:
    BitMatrix() = default;
    BitMatrix(std::size_t rows, std::size_t cols);

    static BitMatrix identity(std::size_t n);
    // Rows given as 0/1 vectors of equal length.
    static BitMatrix from_rows(const std::vector<std::vector<std::uint8_t>>& rows);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    std::size_t words_per_row() const noexcept { return wpr_; }

    bool get(std::size_t r, std::size_t c) const noexcept { return (data_[r * wpr_ + c / 64] >> (c % 64)) & 1U; }
    void set(std::size_t r, std::size_t c, bool v) noexcept;
    std::uint64_t* row(std::size_t r) noexcept { return data_.data() + r * wpr_; }
    const std::uint64_t* row(std::size_t r) const noexcept { return data_.data() + r * wpr_; }

    bool is_zero() const noexcept;
    bool is_symmetric() const noexcept;
    BitMatrix transpose() const;
    // Stacks other below this matrix; column counts must match.
    BitMatrix vstack(const BitMatrix& other) const;

    // One row per line, written as 0/1 characters.
    std::string dump() const;

    friend bool operator==(const BitMatrix&, const BitMatrix&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::size_t wpr_ = 0;
    std::vector<std::uint64_t> data_;
};

// The n x t matrix with entry (i, j) = s_{i+j} (0-indexed), indices taken
// cyclically over the period. Requires 1 <= t <= period.
BitMatrix observability(const Sequence& seq, std::size_t n, std::size_t t);
// G G^T over F_2.
BitMatrix gram(const BitMatrix& g);
BitMatrix multiply(const BitMatrix& a, const BitMatrix& b);
std::size_t rank_gf2(BitMatrix m);
// Rows form a basis of the right kernel {x : M x = 0}.
BitMatrix kernel_basis(const BitMatrix& m);

// Dense matrix over the field of ctx, row-major.
class FieldMatrix {
public:
    FieldMatrix(FieldCtx ctx, std::size_t rows, std::size_t cols);

    const FieldCtx& ctx() const noexcept { return ctx_; }
    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    Elem& operator()(std::size_t r, std::size_t c) noexcept { return data_[r * cols_ + c]; }
    Elem operator()(std::size_t r, std::size_t c) const noexcept { return data_[r * cols_ + c]; }

    bool is_zero() const noexcept;
    bool is_symmetric() const noexcept;

    friend bool operator==(const FieldMatrix& a, const FieldMatrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_ && a.ctx_ == b.ctx_;
    }

private:
    FieldCtx ctx_;
    std::size_t rows_;
    std::size_t cols_;
    std::vector<Elem> data_;
};

FieldMatrix multiply(const FieldMatrix& a, const FieldMatrix& b);
// Embeds a 0/1 matrix into the field of ctx.
FieldMatrix lift(const FieldCtx& ctx, const BitMatrix& m);
std::size_t rank_field(FieldMatrix m);

struct RankProfile {
    unsigned n = 0;
    std::vector<unsigned> values;  // values[t - 1] = r_n(t), t = 1 .. 2^n - 1
    BitPoly modulus;
    Elem lambda;

    unsigned at(std::size_t t) const { return values.at(t - 1); }
};

struct ProfileOptions {
    enum class Mode { incremental, recompute };
    Mode mode = Mode::incremental;
    unsigned jobs = 1;
};

// r_n(t) = rank(G_t G_t^T) for the m-sequence Tr(lambda alpha^t). Requires
// q = 2, n >= 3 and lambda != 0.
RankProfile rank_profile(const FieldCtx& ctx, Elem lambda, ProfileOptions options = {});

// M(alpha^t) with entries (1 + x^e) / (1 + alpha^e), e = 2^i + 2^j mod 2^n - 1.
FieldMatrix m_matrix(const FieldCtx& ctx, std::size_t t);

// Checks G_t = V Lambda G~_t entrywise over F_{2^n}.
bool vandermonde_factor_check(const FieldCtx& ctx, Elem lambda, std::size_t t);

// Is (c1, c1^2, ..., c1^(2^(n-1))) in the right kernel of m?
bool is_frobenius_kernel_vector(const FieldMatrix& m, Elem c1);
// Smallest-log c1 whose Frobenius orbit vector lies in the kernel of m, or
// nothing when m is nonsingular (or no such c1 exists).
std::optional<Elem> frobenius_kernel(const FieldMatrix& m);

std::string profile_to_csv(const RankProfile& profile);
std::string profile_to_json(const RankProfile& profile);

}  // namespace mseq
