#include "mseq/codes.hpp"

#include <algorithm>
#include <bit>
#include <sstream>

#include <json.hpp>

#include "mseq/error.hpp"

namespace mseq {

namespace {

constexpr std::size_t kMaxEnumerableDim = 16;

std::string table_to_csv(const DistTable& table, const char* key) {
    std::ostringstream os;
    os << key << ",count,expected\n";
    for (std::size_t k = 0; k < table.counts.size(); ++k) {
        os << k << ',' << table.counts[k] << ',';
        if (k < table.expected.size()) os << table.expected[k];
        os << '\n';
    }
    return os.str();
}

}  // namespace

Code punctured_simplex(const FieldCtx& ctx, Elem lambda, std::size_t t) {
    if (ctx.q() != 2) throw PreconditionError("punctured simplex codes are binary (q = 2)");
    const std::size_t n = ctx.n();
    if (t < n || t > ctx.order()) throw PreconditionError("punctured_simplex needs n <= t <= 2^n - 1");
    const Sequence seq = m_sequence(ctx, lambda);
    return Code{observability(seq, n, t), n, t, ctx, lambda};
}

std::size_t hull_dim(const Code& code) { return code.dim - rank_gf2(gram(code.generator)); }

std::size_t hull_dim_by_intersection(const Code& code) {
    const BitMatrix dual = kernel_basis(code.generator);
    const std::size_t rank_c = rank_gf2(code.generator);
    const std::size_t rank_d = rank_gf2(dual);
    return rank_c + rank_d - rank_gf2(code.generator.vstack(dual));
}

bool is_lcd(const Code& code) { return hull_dim(code) == 0; }

bool lcd_matches_singular_set(const FieldCtx& ctx, Elem lambda) {
    const auto singular = enumerate_S(ctx);
    const auto profile = rank_profile(ctx, lambda);
    for (std::size_t t = ctx.n(); t <= ctx.order(); ++t) {
        const bool lcd_by_rank = profile.at(t) == ctx.n();
        if (lcd_by_rank == singular.contains(t)) return false;
    }
    return true;
}

std::vector<std::uint64_t> expected_hull_distribution(unsigned n) {
    if (n < 3) throw PreconditionError("hull distribution requires n >= 3");
    std::vector<std::uint64_t> out(n + 1, 0);
    out[0] = (std::uint64_t{1} << (n - 1)) - 2;
    for (unsigned h = 1; h + 2 <= n; ++h) out[h] = (std::uint64_t{1} << (n - h - 1)) - 1;
    out[n - 1] = 1;
    out[n] = 1;
    return out;
}

DistTable hull_distribution(const FieldCtx& ctx, Elem lambda, unsigned jobs) {
    const unsigned n = ctx.n();
    if (ctx.q() != 2 || n < 3) throw PreconditionError("hull distribution requires q = 2 and n >= 3");
    const auto profile = rank_profile(ctx, lambda, {ProfileOptions::Mode::incremental, jobs});
    DistTable table;
    table.counts.assign(n + 1, 0);
    for (std::size_t t = n; t <= ctx.order(); ++t) ++table.counts[n - profile.at(t)];
    table.expected = expected_hull_distribution(n);
    return table;
}

std::vector<std::size_t> self_orthogonal_members(const FieldCtx& ctx, Elem lambda) {
    const unsigned n = ctx.n();
    if (ctx.q() != 2 || n < 3) throw PreconditionError("self_orthogonal_members requires q = 2 and n >= 3");
    const auto profile = rank_profile(ctx, lambda);
    std::vector<std::size_t> out;
    for (std::size_t t = n; t <= ctx.order(); ++t) {
        if (profile.at(t) == 0) out.push_back(t);
    }
    return out;
}

std::vector<std::size_t> self_orthogonal_members(const FieldCtx& ctx) { return self_orthogonal_members(ctx, ctx.one()); }

std::vector<std::size_t> codeword_weights(const Code& code) {
    const std::size_t k = code.generator.rows();
    if (k > kMaxEnumerableDim) throw PreconditionError("codeword enumeration supports dim <= 16");
    const std::size_t wpr = code.generator.words_per_row();
    std::vector<std::uint64_t> word(wpr, 0);
    std::vector<std::size_t> weights(std::size_t{1} << k, 0);
    // Gray-code walk: step i flips the generator row at the lowest set bit of i.
    std::size_t mask = 0;
    for (std::size_t i = 1; i < weights.size(); ++i) {
        const auto r = static_cast<std::size_t>(std::countr_zero(i));
        mask ^= std::size_t{1} << r;
        std::size_t w = 0;
        for (std::size_t j = 0; j < wpr; ++j) {
            word[j] ^= code.generator.row(r)[j];
            w += static_cast<std::size_t>(std::popcount(word[j]));
        }
        weights[mask] = w;
    }
    return weights;
}

std::size_t min_distance(const Code& code) {
    const auto weights = codeword_weights(code);
    std::size_t best = code.length + 1;
    for (std::size_t m = 1; m < weights.size(); ++m) best = std::min(best, weights[m]);
    return best;
}

std::string hull_to_csv(const DistTable& table) { return table_to_csv(table, "h"); }

std::string hull_to_json(const DistTable& table) {
    nlohmann::json rows = nlohmann::json::array();
    for (std::size_t h = 0; h < table.counts.size(); ++h) {
        nlohmann::json row = {{"h", h}, {"count", table.counts[h]}};
        row["expected"] = h < table.expected.size() ? nlohmann::json(table.expected[h]) : nlohmann::json(nullptr);
        rows.push_back(row);
    }
    return rows.dump() + "\n";
}

std::string code_to_text(const Code& code) { return code.generator.dump(); }

}  // namespace mseq
