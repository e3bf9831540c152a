#include <doctest.h>

#include <algorithm>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "figure2_data.hpp"
#include "mseq/error.hpp"
#include "mseq/gram.hpp"

using namespace mseq;

namespace {

// Rank over F_2 of a matrix stored as plain 0/1 rows, by textbook elimination.
std::size_t rank_oracle(std::vector<std::vector<int>> a) {
    std::size_t rank = 0;
    const std::size_t cols = a.empty() ? 0 : a[0].size();
    for (std::size_t c = 0; c < cols; ++c) {
        std::size_t p = rank;
        while (p < a.size() && a[p][c] == 0) ++p;
        if (p == a.size()) continue;
        std::swap(a[p], a[rank]);
        for (std::size_t r = 0; r < a.size(); ++r) {
            if (r != rank && a[r][c]) {
                for (std::size_t k = 0; k < cols; ++k) a[r][k] ^= a[rank][k];
            }
        }
        ++rank;
    }
    return rank;
}

std::vector<std::vector<int>> to_rows(const BitMatrix& m) {
    std::vector<std::vector<int>> out(m.rows(), std::vector<int>(m.cols()));
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) out[i][j] = m.get(i, j);
    }
    return out;
}

BitMatrix random_matrix(std::mt19937_64& rng, std::size_t rows, std::size_t cols, unsigned density_shift) {
    BitMatrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i) {
        for (std::size_t j = 0; j < cols; ++j) {
            if ((rng() & ((1U << density_shift) - 1)) == 0) m.set(i, j, true);
        }
    }
    return m;
}

}  // namespace

TEST_CASE("observability matrix") {
    const FieldCtx f = make_binary_field(5, BitPoly{0x25});
    const Sequence s = m_sequence(f, f.one());
    for (std::size_t t = 1; t <= 31; ++t) {
        const BitMatrix g = observability(s, 5, t);
        CHECK(g.rows() == 5);
        CHECK(g.cols() == t);
        CHECK(rank_gf2(g) == std::min<std::size_t>(t, 5));
        for (std::size_t j = 0; j < t; ++j) CHECK(g.get(0, j) == (s.symbols[j] != 0));
        for (std::size_t i = 0; i < 5; ++i) {
            for (std::size_t j = 0; j < t; ++j) CHECK(g.get(i, j) == (s.at(i + j) != 0));
        }
    }
    const BitMatrix col = observability(s, 5, 1);
    for (std::size_t i = 0; i < 5; ++i) CHECK(col.get(i, 0) == (s.symbols[i] != 0));
    CHECK_THROWS_AS(observability(s, 5, 0), PreconditionError);
    CHECK_THROWS_AS(observability(s, 5, 32), PreconditionError);
}

TEST_CASE("gram matrix") {
    CHECK(gram(BitMatrix(4, 100)).is_zero());
    std::mt19937_64 rng(31);
    for (int i = 0; i < 50; ++i) {
        const BitMatrix g = random_matrix(rng, 1 + rng() % 20, 1 + rng() % 200, 1);
        const BitMatrix gg = gram(g);
        CHECK(gg.is_symmetric());
        CHECK(gg == multiply(g, g.transpose()));
    }
    const FieldCtx f = make_binary_field(5, BitPoly{0x25});
    const Sequence s = m_sequence(f, f.one());
    CHECK(rank_gf2(gram(observability(s, 5, 31))) == 0);
    CHECK(rank_gf2(gram(observability(s, 5, 8))) == 4);
}

TEST_CASE("rank_gf2 agrees with textbook elimination") {
    CHECK(rank_gf2(BitMatrix(7, 9)) == 0);
    CHECK(rank_gf2(BitMatrix::identity(70)) == 70);
    std::mt19937_64 rng(32);
    for (int i = 0; i < 300; ++i) {
        const BitMatrix m = random_matrix(rng, 1 + rng() % 40, 1 + rng() % 150, 1 + static_cast<unsigned>(rng() % 3));
        CHECK(rank_gf2(m) == rank_oracle(to_rows(m)));
    }
}

TEST_CASE("kernel_basis spans the right kernel") {
    std::mt19937_64 rng(33);
    for (int i = 0; i < 100; ++i) {
        const BitMatrix m = random_matrix(rng, 1 + rng() % 20, 1 + rng() % 90, 1);
        const BitMatrix k = kernel_basis(m);
        CHECK(k.rows() == m.cols() - rank_gf2(m));
        CHECK(rank_gf2(k) == k.rows());
        CHECK(multiply(m, k.transpose()).is_zero());
    }
}

TEST_CASE("bit matrix dump") {
    BitMatrix m(2, 3);
    m.set(0, 1, true);
    m.set(1, 2, true);
    CHECK(m.dump() == "010\n001\n");
    CHECK(m.vstack(m).rows() == 4);
    CHECK(BitMatrix::from_rows({{0, 1, 0}, {0, 0, 1}}) == m);
}

TEST_CASE("rank_profile reproduces the four rank-evolution figures") {
    for (const auto& fig : testdata::kFigures) {
        const FieldCtx f = make_binary_field(fig.n, BitPoly{fig.modulus});
        const auto p = rank_profile(f, f.one());
        REQUIRE(p.values.size() == fig.size);
        for (std::size_t t = 1; t <= fig.size; ++t) CHECK(p.at(t) == fig.ranks[t - 1]);
    }
    const FieldCtx f5 = make_binary_field(5, BitPoly{0x25});
    const auto p5 = rank_profile(f5, f5.one());
    CHECK(p5.at(12) == 3);
    CHECK(p5.at(19) == 3);
    CHECK(p5.at(16) == 5);
    const FieldCtx f6 = make_binary_field(6, BitPoly{0x5b});
    CHECK(rank_profile(f6, f6.one()).at(35) == 3);
}

TEST_CASE("rank_profile basic shape") {
    for (unsigned n = 3; n <= 12; ++n) {
        const FieldCtx f = make_binary_field(n);
        const auto p = rank_profile(f, f.alpha_pow(2));
        CHECK(p.values.size() == f.order());
        CHECK(p.values.back() == 0);
        for (std::size_t t = 1; t < n; ++t) CHECK(p.at(t) == t);
        for (auto r : p.values) CHECK(r <= n);
    }
    CHECK_THROWS_AS(rank_profile(make_binary_field(2), Elem{1}), PreconditionError);
    CHECK_THROWS_AS(rank_profile(make_binary_field(5), Elem{0}), PreconditionError);
    CHECK_THROWS_AS(rank_profile(make_field(3, 3), Elem{1}), PreconditionError);
}

TEST_CASE("incremental, recomputed and parallel profiles agree") {
    for (unsigned n = 3; n <= 12; ++n) {
        const FieldCtx f = make_binary_field(n);
        const Elem lambda = f.alpha_pow(3);
        const auto inc = rank_profile(f, lambda, {ProfileOptions::Mode::incremental, 1});
        const auto rec = rank_profile(f, lambda, {ProfileOptions::Mode::recompute, 1});
        const auto par = rank_profile(f, lambda, {ProfileOptions::Mode::incremental, 4});
        CHECK(inc.values == rec.values);
        CHECK(inc.values == par.values);
    }
}

TEST_CASE("rank_profile is independent of lambda") {
    std::mt19937_64 rng(34);
    for (unsigned n = 3; n <= 8; ++n) {
        const FieldCtx f = make_binary_field(n);
        const auto ref = rank_profile(f, f.one()).values;
        for (int i = 0; i < 5; ++i) {
            const Elem lambda = f.antilog(rng() % f.order());
            CHECK(rank_profile(f, lambda).values == ref);
        }
    }
}

TEST_CASE("m_matrix") {
    for (unsigned n = 3; n <= 16; ++n) {
        const FieldCtx f = make_binary_field(n);
        CHECK_NOTHROW(m_matrix(f, 1));
        CHECK(m_matrix(f, f.order()).is_zero());
    }
    const FieldCtx f = make_binary_field(5, BitPoly{0x25});
    const auto p = rank_profile(f, f.one());
    for (std::size_t t = 1; t <= 31; ++t) {
        const FieldMatrix m = m_matrix(f, t);
        CHECK(m.is_symmetric());
        CHECK(rank_field(m) == p.at(t));
    }
    CHECK(rank_field(m_matrix(f, 12)) == 3);
    CHECK_THROWS_AS(m_matrix(f, 0), PreconditionError);
    CHECK_THROWS_AS(m_matrix(f, 32), PreconditionError);
}

TEST_CASE("rank_field") {
    const FieldCtx f = make_binary_field(6);
    CHECK(rank_field(FieldMatrix(f, 4, 4)) == 0);
    FieldMatrix v(f, 6, 6);
    for (unsigned l = 0; l < 6; ++l) {
        const Elem al = frobenius(f, f.alpha(), l);
        for (unsigned i = 0; i < 6; ++i) v(i, l) = f.pow(al, i);
    }
    CHECK(rank_field(v) == 6);

    // Over an extension field a 0/1 matrix keeps its F_2 rank.
    std::mt19937_64 rng(35);
    for (int i = 0; i < 100; ++i) {
        const BitMatrix b = random_matrix(rng, 1 + rng() % 12, 1 + rng() % 12, 1);
        CHECK(rank_field(lift(f, b)) == rank_gf2(b));
    }
}

TEST_CASE("Gram rank equals the lifted rank across moduli") {
    for (unsigned n = 3; n <= 9; ++n) {
        for (const auto& f : {make_binary_field(n)}) {
            const auto p = rank_profile(f, f.alpha());
            for (std::size_t t = 1; t <= f.order(); ++t) CHECK(rank_field(m_matrix(f, t)) == p.at(t));
        }
    }
    const FieldCtx alt = make_binary_field(6, BitPoly{0x5b});
    const auto p = rank_profile(alt, alt.one());
    for (std::size_t t = 1; t <= alt.order(); ++t) CHECK(rank_field(m_matrix(alt, t)) == p.at(t));
}

TEST_CASE("Vandermonde factorization of G_t") {
    const FieldCtx f = make_binary_field(5);
    CHECK(vandermonde_factor_check(f, f.one(), 7));
    CHECK(vandermonde_factor_check(f, f.alpha_pow(3), 31));
    for (unsigned n = 3; n <= 5; ++n) {
        const FieldCtx g = make_binary_field(n);
        for (const Elem lambda : {g.one(), g.alpha_pow(2)}) {
            for (std::size_t t = 1; t <= g.order(); ++t) CHECK(vandermonde_factor_check(g, lambda, t));
        }
    }
}

TEST_CASE("Frobenius-orbit kernel vectors") {
    const FieldCtx f = make_binary_field(5);
    const FieldMatrix zero = m_matrix(f, 31);
    CHECK(is_frobenius_kernel_vector(zero, f.one()));
    CHECK(frobenius_kernel(zero).has_value());
    CHECK_FALSE(frobenius_kernel(m_matrix(f, 16)).has_value());

    for (unsigned n = 3; n <= 10; ++n) {
        const FieldCtx g = make_binary_field(n);
        const auto p = rank_profile(g, g.one());
        for (std::size_t t = 1; t <= g.order(); ++t) {
            const FieldMatrix m = m_matrix(g, t);
            const auto c1 = frobenius_kernel(m);
            if (p.at(t) < n) {
                REQUIRE(c1.has_value());
                CHECK_FALSE(c1->is_zero());
                CHECK(is_frobenius_kernel_vector(m, *c1));
            } else {
                CHECK_FALSE(c1.has_value());
            }
        }
    }
}

TEST_CASE("profile export") {
    const FieldCtx f = make_binary_field(3);
    const auto p = rank_profile(f, f.one());
    const std::string csv = profile_to_csv(p);
    CHECK(csv.rfind("t,rank\n1,1\n2,2\n", 0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 8);
    CHECK(profile_to_json(p).rfind("[{\"rank\":1,\"t\":1}", 0) == 0);
}
