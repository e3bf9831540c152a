#include "mseq/structure.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>
#include <sstream>

#include <json.hpp>

#include "mseq/detail/intmath.hpp"
#include "mseq/error.hpp"

namespace mseq {

namespace {

void require_order(unsigned n) {
    if (n < 3) throw PreconditionError("order n must be at least 3");
}

void require_binary(const FieldCtx& ctx) {
    if (ctx.q() != 2) throw PreconditionError("this operation is defined over F_2 (q = 2)");
    require_order(ctx.n());
}

std::size_t log_as_t(const FieldCtx& ctx, Elem x) {
    const std::uint32_t e = ctx.log(x);
    return e == 0 ? ctx.order() : e;
}

// (b^k - (-1)^k) / d, which must divide exactly.
std::uint64_t alt_quotient(std::uint64_t b, unsigned k, std::uint64_t d) {
    const auto p = static_cast<std::int64_t>(detail::ipow(b, k));
    const std::int64_t num = p - (k % 2 == 0 ? 1 : -1);
    if (num % static_cast<std::int64_t>(d) != 0) throw InternalError("closed form is not integral");
    return static_cast<std::uint64_t>(num / static_cast<std::int64_t>(d));
}

}  // namespace

std::uint64_t DistTable::total() const noexcept { return std::accumulate(counts.begin(), counts.end(), std::uint64_t{0}); }

BitMatrix bezoutian(const BitPoly& f, const BitPoly& g, std::size_t n) {
    if (f.is_zero() || g.is_zero()) throw PreconditionError("bezoutian needs nonzero polynomials");
    const auto d = static_cast<std::size_t>(std::max(f.degree(), g.degree()));
    if (d > n) throw PreconditionError("bezoutian degree bound violated: max(deg f, deg g) > n");

    // num[a][b] = coefficient of x^a y^b in f(x)g(y) + g(x)f(y).
    std::vector<std::vector<std::uint8_t>> num(d + 1, std::vector<std::uint8_t>(d + 1, 0));
    for (std::size_t a = 0; a <= d; ++a) {
        for (std::size_t b = 0; b <= d; ++b) {
            num[a][b] = static_cast<std::uint8_t>((f.coeff(a) & g.coeff(b)) ^ (g.coeff(a) & f.coeff(b)));
        }
    }
    // num[a][b] = q[a-1][b] + q[a][b-1], so q[i][j] = num[i+1][j] + q[i+1][j-1].
    std::vector<std::vector<std::uint8_t>> quo(d + 1, std::vector<std::uint8_t>(d + 1, 0));
    for (std::size_t i = d; i-- > 0;) {
        for (std::size_t j = 0; j < d; ++j) {
            const std::uint8_t carry = j > 0 ? quo[i + 1][j - 1] : 0;
            quo[i][j] = num[i + 1][j] ^ carry;
        }
    }
    // The division must be exact: rebuild (x + y) * quo and compare.
    for (std::size_t a = 0; a <= d; ++a) {
        for (std::size_t b = 0; b <= d; ++b) {
            const std::uint8_t lhs = (a > 0 ? quo[a - 1][b] : 0) ^ (b > 0 ? quo[a][b - 1] : 0);
            if (lhs != num[a][b]) throw InternalError("bivariate division by x + y left a remainder");
        }
    }
    BitMatrix out(n, n);
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = 0; j < d; ++j) {
            if (quo[i][j]) out.set(i, j, true);
        }
    }
    return out;
}

bool bezout_rank_check(const BitPoly& f, const BitPoly& g, std::size_t n) {
    const auto rank = rank_gf2(bezoutian(f, g, n));
    const auto expected = std::max(f.degree(), g.degree()) - gcd(f, g).degree();
    return rank == static_cast<std::size_t>(expected);
}

bool is_valid_rep(const CanonicalRep& rep, unsigned n) {
    if (rep.u.is_zero() || !rep.u.coeff(0)) return false;
    const int du = rep.u.degree();
    if (du > static_cast<int>(n) - 1) return false;
    if (std::abs(rep.k0) > static_cast<int>(n) - 1 - du) return false;
    return gcd(rep.u, reciprocal_std(rep.u)).is_one();
}

std::vector<CanonicalRep> enumerate_T(unsigned n) {
    require_order(n);
    if (n > 24) throw PreconditionError("enumerate_T supports n <= 24");
    std::vector<CanonicalRep> out;
    for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << n); mask += 2) {
        const BitPoly u{mask};
        if (!gcd(u, reciprocal_std(u)).is_one()) continue;
        const int span = static_cast<int>(n) - 1 - u.degree();
        for (int k = -span; k <= span; ++k) out.push_back({k, u});
    }
    return out;
}

std::size_t evaluate_rep(const FieldCtx& ctx, const CanonicalRep& rep) {
    require_binary(ctx);
    if (!is_valid_rep(rep, ctx.n())) throw PreconditionError("representation violates the canonical conditions");
    const Elem num = eval_poly(ctx, reciprocal_std(rep.u), ctx.alpha());
    const Elem den = eval_poly(ctx, rep.u, ctx.alpha());
    const Elem x = ctx.mul(ctx.alpha_pow(rep.k0), ctx.div(num, den));
    return log_as_t(ctx, x);
}

SingularMap singular_map(const FieldCtx& ctx) {
    require_binary(ctx);
    SingularMap out;
    for (const auto& rep : enumerate_T(ctx.n())) {
        const auto t = evaluate_rep(ctx, rep);
        const auto [it, inserted] = out.emplace(t, rep);
        if (!inserted) {
            throw BijectionViolation("canonical representations (" + std::to_string(it->second.k0) + ", " +
                                     to_hex(it->second.u) + ") and (" + std::to_string(rep.k0) + ", " + to_hex(rep.u) +
                                     ") both evaluate to t = " + std::to_string(t));
        }
    }
    return out;
}

std::set<std::size_t> enumerate_S(const FieldCtx& ctx) {
    require_binary(ctx);
    const unsigned n = ctx.n();
    std::set<std::size_t> out;
    for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << n); ++mask) {
        const BitPoly p{mask};
        const Elem num = eval_poly(ctx, reciprocal_star(p, n), ctx.alpha());
        const Elem den = eval_poly(ctx, p, ctx.alpha());
        out.insert(log_as_t(ctx, ctx.div(num, den)));
    }
    return out;
}

unsigned rank_formula(const CanonicalRep& rep) {
    return static_cast<unsigned>(rep.u.degree() + std::abs(rep.k0));
}

std::vector<std::uint64_t> expected_rank_distribution(unsigned n) {
    require_order(n);
    std::vector<std::uint64_t> out(n + 1);
    out[0] = 1;
    out[1] = 2;
    for (unsigned k = 2; k + 1 <= n; ++k) out[k] = std::uint64_t{1} << (k - 1);
    out[n] = (std::uint64_t{1} << (n - 1)) - 2;
    return out;
}

DistTable rank_distribution(const RankProfile& profile) {
    DistTable table;
    table.counts.assign(profile.n + 1, 0);
    for (auto r : profile.values) ++table.counts.at(r);
    table.expected = expected_rank_distribution(profile.n);
    return table;
}

DistTable rank_distribution(unsigned n, DistMode mode, unsigned jobs) {
    require_order(n);
    if (mode == DistMode::formula) {
        DistTable table;
        table.counts = expected_rank_distribution(n);
        table.expected = table.counts;
        return table;
    }
    const FieldCtx ctx = make_binary_field(n);
    return rank_distribution(rank_profile(ctx, ctx.one(), {ProfileOptions::Mode::incremental, jobs}));
}

std::vector<std::size_t> local_minima(const RankProfile& profile) {
    const auto& r = profile.values;
    const std::size_t period = r.size();
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < period; ++i) {
        const unsigned prev = r[(i + period - 1) % period];
        const unsigned next = r[(i + 1) % period];
        if (prev == r[i] + 1 && next == r[i] + 1) out.push_back(i + 1);
    }
    return out;
}

DynamicsReport dynamics_verify(const RankProfile& profile) {
    const auto& r = profile.values;
    const std::size_t period = r.size();
    const unsigned n = profile.n;
    if (period != (std::size_t{1} << n) - 1) throw PreconditionError("profile must cover the full period 2^n - 1");

    DynamicsReport rep;
    for (std::size_t i = 0; i < period; ++i) {
        const unsigned prev = r[(i + period - 1) % period];
        const unsigned cur = r[i];
        const unsigned next = r[(i + 1) % period];
        if (prev + 1 == n && cur == n && next != n) ++rep.persistence_violations;
        if (cur < n && next != cur + 1 && next + 1 != cur) ++rep.instability_violations;
    }
    rep.local_minima = local_minima(profile);
    rep.local_minima_count = rep.local_minima.size();
    const auto half = std::int64_t{1} << (n - 1);
    rep.local_minima_expected = static_cast<std::uint64_t>((half - ((n - 1) % 2 == 0 ? 1 : -1)) / 3);
    return rep;
}

std::vector<std::uint64_t> qary_conjecture(unsigned q, unsigned n) {
    if (n < 1) throw PreconditionError("n must be positive");
    std::vector<std::uint64_t> out(n + 1, 0);
    if (q == 3) {
        out[0] = 1;
        for (unsigned k = 1; k < n; ++k) out[k] = alt_quotient(3, k, 2);
        out[n] += alt_quotient(3, n, 4) - 1;
    } else if (q == 5) {
        out[0] = 0;
        for (unsigned k = 1; k < n; ++k) out[k] = alt_quotient(5, k, 3);
        out[n] += alt_quotient(5, n, 6);
    } else {
        throw PreconditionError("q-ary conjectures exist for q = 3 and q = 5 only");
    }
    return out;
}

std::vector<unsigned> qary_rank_profile(const FieldCtx& ctx, Elem lambda) {
    const unsigned q = ctx.q();
    if (q != 3 && q != 5) throw PreconditionError("q-ary rank distributions are supported for q = 3 and q = 5");
    const unsigned n = ctx.n();
    if (n < 2) throw PreconditionError("q-ary rank distributions require n >= 2");
    const Sequence seq = m_sequence(ctx, lambda);
    const std::size_t t_max = (ctx.size() - 1) / (q - 1);
    const FieldCtx base = make_field(q, 1);

    std::vector<unsigned> gram_entries(n * n, 0);
    std::vector<unsigned> out(t_max);
    for (std::size_t t = 1; t <= t_max; ++t) {
        // Column t-1 of G_t is (s_{t-1}, ..., s_{t+n-2}); add its outer product.
        for (unsigned i = 0; i < n; ++i) {
            for (unsigned j = 0; j < n; ++j) {
                auto& e = gram_entries[i * n + j];
                e = (e + static_cast<unsigned>(seq.at(i + t - 1)) * seq.at(j + t - 1)) % q;
            }
        }
        FieldMatrix m(base, n, n);
        for (unsigned i = 0; i < n; ++i) {
            for (unsigned j = 0; j < n; ++j) m(i, j) = base.from_base(gram_entries[i * n + j]);
        }
        out[t - 1] = static_cast<unsigned>(rank_field(std::move(m)));
    }
    return out;
}

DistTable qary_rank_distribution(const FieldCtx& ctx) {
    DistTable table;
    table.counts.assign(ctx.n() + 1, 0);
    for (auto r : qary_rank_profile(ctx, ctx.one())) ++table.counts[r];
    table.expected = qary_conjecture(ctx.q(), ctx.n());
    return table;
}

QaryReport qary_report(const FieldCtx& ctx, const std::vector<Elem>& lambdas) {
    QaryReport rep;
    rep.q = ctx.q();
    rep.n = ctx.n();
    rep.table = qary_rank_distribution(ctx);
    rep.conjecture_agrees = rep.table.matches();
    const auto reference = qary_rank_profile(ctx, ctx.one());
    rep.lambda_invariant = true;
    for (const auto& lambda : lambdas) {
        if (qary_rank_profile(ctx, lambda) != reference) rep.lambda_invariant = false;
        ++rep.lambdas_tested;
    }
    return rep;
}

std::string singular_map_to_csv(const SingularMap& map) {
    std::ostringstream os;
    os << "t,rank,k0,u_hex\n";
    for (const auto& [t, rep] : map) os << t << ',' << rank_formula(rep) << ',' << rep.k0 << ',' << to_hex(rep.u) << '\n';
    return os.str();
}

std::string singular_map_to_json(const SingularMap& map) {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& [t, rep] : map) {
        rows.push_back({{"t", t}, {"rank", rank_formula(rep)}, {"k0", rep.k0}, {"u_hex", to_hex(rep.u)}});
    }
    return rows.dump() + "\n";
}

std::string dist_to_csv(const DistTable& table) {
    std::ostringstream os;
    os << "k,count,expected\n";
    for (std::size_t k = 0; k < table.counts.size(); ++k) {
        os << k << ',' << table.counts[k] << ',';
        if (k < table.expected.size()) os << table.expected[k];
        os << '\n';
    }
    return os.str();
}

std::string dist_to_json(const DistTable& table) {
    nlohmann::json rows = nlohmann::json::array();
    for (std::size_t k = 0; k < table.counts.size(); ++k) {
        nlohmann::json row = {{"k", k}, {"count", table.counts[k]}};
        row["expected"] = k < table.expected.size() ? nlohmann::json(table.expected[k]) : nlohmann::json(nullptr);
        rows.push_back(row);
    }
    return rows.dump() + "\n";
}

std::string dynamics_to_json(const DynamicsReport& report) {
    const nlohmann::json j = {
        {"persistence_violations", report.persistence_violations},
        {"instability_violations", report.instability_violations},
        {"local_minima_count", report.local_minima_count},
        {"local_minima_expected", report.local_minima_expected},
    };
    return j.dump() + "\n";
}

}  // namespace mseq
