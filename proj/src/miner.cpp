#include "padic/kernel.hpp"

#include <optional>

namespace padic {

namespace {

std::uint64_t ipow(std::uint64_t base, unsigned e) {
    std::uint64_t r = 1;
    while (e-- > 0) r *= base;
    return r;
}

// Number of n >= 0 with scale * n + shift <= N.
std::uint64_t indices_available(std::uint64_t N, std::uint64_t scale, std::uint64_t shift) {
    return shift > N ? 0 : (N - shift) / scale + 1;
}

// Fits c from the first finite pair and checks the rest; nullopt on any
// violation or when no pair is testable.
std::optional<MinedRelation> fit_relation(const ValuationTable& table, unsigned e, std::uint64_t i,
                                          unsigned rhs_e, std::uint64_t rhs_i) {
    const std::uint64_t N = table.N();
    const std::uint64_t p = table.p.value();
    const std::uint64_t lhs_scale = ipow(p, e);
    const std::uint64_t rhs_scale = ipow(p, rhs_e);
    const std::uint64_t count = std::min(indices_available(N, lhs_scale, i),
                                         indices_available(N, rhs_scale, rhs_i));
    MinedRelation result{{e, i, rhs_e, rhs_i, 0}, 0, 0, 0};
    std::optional<std::int64_t> c;
    for (std::uint64_t n = 0; n < count; ++n) {
        const PadicVal& lhs = table[lhs_scale * n + i];
        const PadicVal& rhs = table[rhs_scale * n + rhs_i];
        if (lhs.is_infinite() || rhs.is_infinite()) {
            ++result.skipped;
            continue;
        }
        const std::int64_t diff = lhs.value() - rhs.value();
        if (!c) c = diff;
        if (diff != *c) return std::nullopt;
        ++result.support;
    }
    if (!c) return std::nullopt;
    result.candidate.c = *c;
    return result;
}

}  // namespace

MinedRelation verify_relation(const ValuationTable& table, const RelationCandidate& cand) {
    const std::uint64_t N = table.N();
    const std::uint64_t p = table.p.value();
    const std::uint64_t lhs_scale = ipow(p, cand.e);
    const std::uint64_t rhs_scale = ipow(p, cand.rhs_e);
    const std::uint64_t count = std::min(indices_available(N, lhs_scale, cand.i),
                                         indices_available(N, rhs_scale, cand.rhs_i));
    MinedRelation result{cand, 0, 0, 0};
    for (std::uint64_t n = 0; n < count; ++n) {
        const PadicVal& lhs = table[lhs_scale * n + cand.i];
        const PadicVal& rhs = table[rhs_scale * n + cand.rhs_i];
        if (lhs.is_infinite() || rhs.is_infinite()) {
            ++result.skipped;
            continue;
        }
        ++result.support;
        if (lhs != rhs + cand.c) ++result.violations;
    }
    return result;
}

std::vector<MinedRelation> mine_relations(const ValuationTable& table, unsigned max_e,
                                          const MineOptions& options) {
    const std::uint64_t p = table.p.value();
    const std::uint64_t top = ipow(p, max_e);
    if (indices_available(table.N(), top, top - 1) < options.min_support)
        throw std::invalid_argument("table of length " + std::to_string(table.N() + 1) +
                                    " is too short for min_support " +
                                    std::to_string(options.min_support) + " at level " +
                                    std::to_string(max_e));
    const std::int64_t bound =
        options.max_offset > 0 ? options.max_offset : 2 * static_cast<std::int64_t>(p);

    // resolved[e][i]: (e, i) has an accepted relation to a shallower level.
    std::vector<std::vector<bool>> resolved(max_e + 1);
    std::vector<MinedRelation> out;

    for (unsigned e = 0; e <= max_e; ++e) {
        const std::uint64_t width = ipow(p, e);
        resolved[e].assign(width, false);
        std::vector<std::optional<MinedRelation>> level(width);

        parallel_for_index(0, width - 1, [&](std::uint64_t i) {
            if (options.prune_resolved_subtrees) {
                for (unsigned up = 1; up <= e; ++up)
                    if (resolved[e - up][i % ipow(p, e - up)]) return;
            }
            for (unsigned rhs_e = 0; rhs_e <= e; ++rhs_e) {
                for (std::uint64_t rhs_i = 0; rhs_i < ipow(p, rhs_e); ++rhs_i) {
                    if (rhs_e == e && rhs_i == i) continue;
                    auto fit = fit_relation(table, e, i, rhs_e, rhs_i);
                    if (!fit) continue;
                    const std::int64_t c = fit->candidate.c;
                    if (c > bound || c < -bound) continue;
                    if (fit->support < options.min_support) continue;
                    // For a fixed right-hand side the offset is forced, so
                    // the first hit in (rhs_e, rhs_i) order is canonical.
                    level[i] = *fit;
                    return;
                }
            }
        });

        for (std::uint64_t i = 0; i < width; ++i) {
            if (!level[i]) continue;
            if (level[i]->candidate.rhs_e < e) resolved[e][i] = true;
            out.push_back(*level[i]);
        }
    }
    return out;
}

std::string format_relation(const RelationCandidate& cand, std::uint64_t p,
                            const std::string& name) {
    auto term = [&](unsigned e, std::uint64_t i) {
        std::string s = name + "(";
        if (e > 0) s += std::to_string(ipow(p, e));
        s += "n";
        if (i > 0) s += "+" + std::to_string(i);
        return s + ")";
    };
    std::string s = term(cand.e, cand.i) + " = " + term(cand.rhs_e, cand.rhs_i);
    if (cand.c > 0) s += " + " + std::to_string(cand.c);
    if (cand.c < 0) s += " - " + std::to_string(-cand.c);
    return s;
}

}  // namespace padic
