#pragma once

// Punctured binary cyclic simplex codes C_t generated by G_t. Hull dimensions
// come from the Gram rank and are tabulated over all admissible t.

#include <cstddef>
#include <string>
#include <vector>

#include "mseq/field.hpp"
#include "mseq/gram.hpp"
#include "mseq/structure.hpp"

namespace mseq {

struct Code {
    BitMatrix generator;  // dim x length
    std::size_t dim = 0;
    std::size_t length = 0;
    FieldCtx ctx;
    Elem lambda;
};

// The [t, n] code generated by observability(m_sequence(ctx, lambda), n, t).
// Requires q = 2, lambda != 0 and n <= t <= 2^n - 1.
Code punctured_simplex(const FieldCtx& ctx, Elem lambda, std::size_t t);

// dim - rank(G G^T).
std::size_t hull_dim(const Code& code);
// dim(C ∩ C^⊥) from the row spaces of G and a kernel basis of G.
std::size_t hull_dim_by_intersection(const Code& code);
bool is_lcd(const Code& code);
// For every t in n..2^n - 1: is_lcd(C_t) agrees with t not being in enumerate_S.
bool lcd_matches_singular_set(const FieldCtx& ctx, Elem lambda);

// Closed form over h = 0..n: 2^(n-1) - 2, then 2^(n-h-1) - 1 for 1 <= h <= n-2, then 1, 1.
std::vector<std::uint64_t> expected_hull_distribution(unsigned n);
// Counts of hull dimensions over t = n..2^n - 1, with the closed form as expected.
DistTable hull_distribution(const FieldCtx& ctx, Elem lambda, unsigned jobs = 1);
// All t in n..2^n - 1 with hull dimension n.
std::vector<std::size_t> self_orthogonal_members(const FieldCtx& ctx, Elem lambda);
std::vector<std::size_t> self_orthogonal_members(const FieldCtx& ctx);

// Minimum nonzero codeword weight by enumerating all 2^dim codewords (dim <= 16).
std::size_t min_distance(const Code& code);
// Weights of all 2^dim codewords, index = message bitmask (dim <= 16).
std::vector<std::size_t> codeword_weights(const Code& code);

std::string hull_to_csv(const DistTable& table);
std::string hull_to_json(const DistTable& table);
// Generator rows as 0/1 text.
std::string code_to_text(const Code& code);

}  // namespace mseq
