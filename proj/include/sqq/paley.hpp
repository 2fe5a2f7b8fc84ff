#ifndef SQQ_PALEY_HPP
#define SQQ_PALEY_HPP

#include <algorithm>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "sqq/error.hpp"
#include "sqq/ext_field.hpp"

namespace sqq {

/// Gamma(q): vertices F_q, x ~ y iff chi(x - y) = +1. Needs q = 1 mod 4 so
/// that chi(-1) = +1 and adjacency is symmetric.
class PaleyGraph {
public:
    explicit PaleyGraph(const ExtFieldCtx& ctx) : field_(check(ctx)) {}

    const ExtField& field() const noexcept { return field_; }
    std::uint32_t order() const noexcept { return field_.size(); }

    bool adjacent(std::uint32_t x, std::uint32_t y) const { return x != y && field_.chi(field_.sub(x, y)) == 1; }

    std::uint32_t degree(std::uint32_t v) const {
        std::uint32_t d = 0;
        for (std::uint32_t y = 0; y < order(); ++y) d += adjacent(v, y);
        return d;
    }

private:
    static ExtFieldCtx check(const ExtFieldCtx& ctx) {
        if (ctx.q % 4 != 1) throw precondition_error("Paley graph needs q = 1 mod 4, got q = " + std::to_string(ctx.q));
        return ctx;
    }

    ExtField field_;
};

/// { y : chi(u - y) != chi(v - y) }. Always contains u and v themselves.
inline std::vector<std::uint32_t> distinguisher_set(const ExtField& F, std::uint32_t u, std::uint32_t v) {
    if (u == v) throw precondition_error("distinguisher_set needs u != v");
    std::vector<std::uint32_t> out;
    for (std::uint32_t y = 0; y < F.size(); ++y)
        if (F.chi(F.sub(u, y)) != F.chi(F.sub(v, y))) out.push_back(y);
    return out;
}

/// H is a module: every y outside H sees all of H through the same character
/// value, chi(x - y) = chi(x' - y) for x, x' in H.
inline bool is_homogeneous(const ExtField& F, std::span<const std::uint32_t> H) {
    std::vector<bool> in(F.size(), false);
    for (auto h : H) in[h] = true;
    for (std::uint32_t y = 0; y < F.size(); ++y) {
        if (in[y]) continue;
        for (auto h : H)
            if (F.chi(F.sub(h, y)) != F.chi(F.sub(H[0], y))) return false;
    }
    return true;
}

/// Smallest H containing the seed and absorbing every vertex that tells two
/// members of H apart. A congruence class containing the seed must contain H.
///
/// A vertex y outside H distinguishes some pair of H iff it distinguishes
/// some member from the first seed vertex, so each new member is compared
/// against that reference only: O(q) per member.
inline std::vector<std::uint32_t> congruence_closure(const PaleyGraph& g, std::span<const std::uint32_t> seed) {
    if (seed.size() < 2) throw precondition_error("closure needs at least two seed vertices");
    const ExtField& F = g.field();
    const std::uint32_t q = F.size();
    std::vector<bool> in(q, false);
    std::vector<int> ref(q);
    for (std::uint32_t y = 0; y < q; ++y) ref[y] = F.chi(F.sub(seed[0], y));
    std::vector<std::uint32_t> members, work;
    for (auto s : seed)
        if (!in[s]) {
            in[s] = true;
            members.push_back(s);
            work.push_back(s);
        }
    if (members.size() < 2) throw precondition_error("closure seed needs two distinct vertices");
    while (!work.empty()) {
        const std::uint32_t a = work.back();
        work.pop_back();
        for (std::uint32_t y = 0; y < q; ++y) {
            if (in[y] || F.chi(F.sub(a, y)) == ref[y]) continue;
            in[y] = true;
            members.push_back(y);
            work.push_back(y);
        }
    }
    std::sort(members.begin(), members.end());
    return members;
}

inline std::vector<std::uint32_t> congruence_closure(const PaleyGraph& g, std::uint32_t u, std::uint32_t v) {
    if (u == v) throw precondition_error("congruence_closure needs u != v");
    const std::uint32_t seed[2] = {u, v};
    return congruence_closure(g, seed);
}

/// Only the trivial congruences exist: every pair closes to the whole vertex set.
inline bool is_simple(const PaleyGraph& g) {
    for (std::uint32_t u = 0; u < g.order(); ++u)
        for (std::uint32_t v = u + 1; v < g.order(); ++v)
            if (congruence_closure(g, u, v).size() != g.order()) return false;
    return true;
}

}  // namespace sqq

#endif  // SQQ_PALEY_HPP
