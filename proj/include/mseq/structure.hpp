#pragma once

// Bezoutians and the canonical representation of the singular set of M(x).
// Rank formula, distribution and dynamics checks build on top of them, along
// with the q-ary tables.

#include <cstddef>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "mseq/field.hpp"
#include "mseq/gram.hpp"
#include "mseq/poly2.hpp"

namespace mseq {

// The rational function z^k0 u~(z) / u(z) with u(0) = 1, gcd(u, u~) = 1 and
// |k0| <= n - 1 - deg u.
struct CanonicalRep {
    int k0 = 0;
    BitPoly u{1};

    friend bool operator==(const CanonicalRep&, const CanonicalRep&) = default;
};

// counts[k] for k = 0..n. expected is empty when no closed form applies.
struct DistTable {
    std::vector<std::uint64_t> counts;
    std::vector<std::uint64_t> expected;

    std::uint64_t total() const noexcept;
    bool matches() const noexcept { return !expected.empty() && counts == expected; }
};

// Coefficient matrix (b_ij), 0 <= i, j < n, of (f(x)g(y) + g(x)f(y)) / (x + y)
// over F_2. Row i holds the coefficients of x^i. Requires f, g nonzero and
// max(deg f, deg g) <= n.
BitMatrix bezoutian(const BitPoly& f, const BitPoly& g, std::size_t n);
// rank(bezoutian(f, g, n)) == max(deg f, deg g) - deg gcd(f, g)?
bool bezout_rank_check(const BitPoly& f, const BitPoly& g, std::size_t n);

bool is_valid_rep(const CanonicalRep& rep, unsigned n);
// All canonical pairs for order n >= 3, ordered by u (integer encoding) then k0.
std::vector<CanonicalRep> enumerate_T(unsigned n);
// t in 1..2^n - 1 with alpha^t = alpha^k0 u~(alpha) / u(alpha).
std::size_t evaluate_rep(const FieldCtx& ctx, const CanonicalRep& rep);

using SingularMap = std::map<std::size_t, CanonicalRep>;
// evaluate_rep over enumerate_T; throws BijectionViolation if two pairs collide.
SingularMap singular_map(const FieldCtx& ctx);
// {t : alpha^t = p*(alpha) / p(alpha)} over nonzero p with deg p < n.
std::set<std::size_t> enumerate_S(const FieldCtx& ctx);
unsigned rank_formula(const CanonicalRep& rep);

enum class DistMode { direct, formula };

// The closed form (1, 2, 2^(k-1) for 2 <= k <= n-1, 2^(n-1) - 2).
std::vector<std::uint64_t> expected_rank_distribution(unsigned n);
DistTable rank_distribution(const RankProfile& profile);
// direct: counts from the rank profile of the default field with lambda = 1.
// formula: the closed form. Both carry the closed form as expected.
DistTable rank_distribution(unsigned n, DistMode mode, unsigned jobs = 1);

struct DynamicsReport {
    std::uint64_t persistence_violations = 0;
    std::uint64_t instability_violations = 0;
    std::uint64_t local_minima_count = 0;
    std::uint64_t local_minima_expected = 0;
    std::vector<std::size_t> local_minima;  // t values, ascending

    bool ok() const noexcept {
        return persistence_violations == 0 && instability_violations == 0 &&
               local_minima_count == local_minima_expected;
    }
};

// Cyclic local minima: r(t-1) = r(t) + 1 = r(t+1), indices mod 2^n - 1.
std::vector<std::size_t> local_minima(const RankProfile& profile);
DynamicsReport dynamics_verify(const RankProfile& profile);

// Counts over k = 0..n conjectured for q = 3 and q = 5.
std::vector<std::uint64_t> qary_conjecture(unsigned q, unsigned n);
// rank of G_t G_t^T over F_q for the q-ary m-sequence Tr(lambda alpha^j),
// t = 1 .. (q^n - 1)/(q - 1).
std::vector<unsigned> qary_rank_profile(const FieldCtx& ctx, Elem lambda);
// Counts for lambda = 1 with the conjectured values as expected.
DistTable qary_rank_distribution(const FieldCtx& ctx);

struct QaryReport {
    unsigned q = 0;
    unsigned n = 0;
    DistTable table;
    bool conjecture_agrees = false;
    bool lambda_invariant = false;
    std::size_t lambdas_tested = 0;
};

// Distribution for lambda = 1 plus a comparison of the full q-ary profile
// across the given lambdas.
QaryReport qary_report(const FieldCtx& ctx, const std::vector<Elem>& lambdas);

std::string singular_map_to_csv(const SingularMap& map);
std::string singular_map_to_json(const SingularMap& map);
std::string dist_to_csv(const DistTable& table);
std::string dist_to_json(const DistTable& table);
std::string dynamics_to_json(const DynamicsReport& report);

}  // namespace mseq
