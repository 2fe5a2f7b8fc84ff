#ifndef SQQ_CARLITZ_HPP
#define SQQ_CARLITZ_HPP

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <numeric>
#include <string>
#include <thread>
#include <variant>
#include <vector>

#include "sqq/backtrack.hpp"
#include "sqq/error.hpp"
#include "sqq/ext_field.hpp"

namespace sqq {

/// A full value table f: F_q -> F_q satisfying the square-quotient condition.
struct ConditionMap {
    ExtFieldCtx ctx;
    std::vector<std::uint32_t> table;
};

struct ConstantForm {
    std::uint32_t value;
    friend bool operator==(const ConstantForm&, const ConstantForm&) = default;
};

/// x -> a_sq * x^(p^frob_power) + b, a_sq a nonzero square.
struct AffineFrobeniusForm {
    std::uint32_t a_sq;
    std::uint32_t b;
    unsigned frob_power;
    friend bool operator==(const AffineFrobeniusForm&, const AffineFrobeniusForm&) = default;
};

using CarlitzForm = std::variant<ConstantForm, AffineFrobeniusForm>;

inline bool satisfies_square_condition(const ExtField& F, const std::vector<std::uint32_t>& table) {
    for (std::uint32_t x = 0; x < F.size(); ++x)
        for (std::uint32_t y = 0; y < x; ++y)
            if (!F.is_square(F.div(F.sub(table[x], table[y]), F.sub(x, y)))) return false;
    return true;
}

inline std::vector<std::uint32_t> form_table(const ExtField& F, const CarlitzForm& form) {
    std::vector<std::uint32_t> t(F.size());
    if (auto c = std::get_if<ConstantForm>(&form)) {
        std::fill(t.begin(), t.end(), c->value);
    } else {
        const auto& a = std::get<AffineFrobeniusForm>(form);
        for (std::uint32_t x = 0; x < F.size(); ++x) t[x] = F.add(F.mul(a.a_sq, F.frobenius(x, a.frob_power)), a.b);
    }
    return t;
}

namespace detail {

class MapEnumerator {
public:
    explicit MapEnumerator(const ExtField& F) : F_(F), ext_(F), positions_(F.size()), levels_(F.size() + 1) {
        std::iota(positions_.begin(), positions_.end(), 0u);
    }

    // Appends every valid extension of `values` to length `stop`.
    void run(std::vector<std::uint32_t>& values, std::vector<std::vector<std::uint32_t>>& out, std::uint32_t stop) {
        const std::uint32_t pos = static_cast<std::uint32_t>(values.size());
        if (pos == stop) {
            out.push_back(values);
            return;
        }
        auto& level = levels_[pos];
        level.clear();
        ext_.extend(std::span<const std::uint32_t>(positions_.data(), pos), values, pos,
                    [&](std::uint32_t c) { level.push_back(c); }, counters_);
        for (std::size_t i = 0; i < levels_[pos].size(); ++i) {
            values.push_back(levels_[pos][i]);
            run(values, out, stop);
            values.pop_back();
        }
    }

private:
    const ExtField& F_;
    SquareQuotientExtender<ExtField> ext_;
    std::vector<std::uint32_t> positions_;
    std::vector<std::vector<std::uint32_t>> levels_;
    SearchCounters counters_;
};

}  // namespace detail

/// Every self-map of F_q satisfying the square-quotient condition, in
/// lexicographic order of value tables.
///
/// The condition is preserved by f -> s f + b for a nonzero square s, and
/// f(1) - f(0) is 0 or a nonzero square, so every map is s g + b for exactly
/// one g with g(0) = 0, g(1) in {0, 1} (s = 1 when g(1) = 0). Only those two
/// subtrees are backtracked, with the same extender as the W(p, L) search;
/// work units are their prefixes of length 3.
inline std::vector<ConditionMap> enumerate_condition_maps(const ExtFieldCtx& ctx, unsigned workers = 1,
                                                          std::uint32_t max_q = 49) {
    if (ctx.q > max_q) throw size_bound_error("q = " + std::to_string(ctx.q) + " exceeds bound " + std::to_string(max_q));
    const ExtField F(ctx);
    const std::uint32_t q = F.size();

    std::vector<std::vector<std::uint32_t>> units;
    {
        detail::MapEnumerator e(F);
        for (std::uint32_t f1 : {0u, 1u}) {
            std::vector<std::vector<std::uint32_t>> prefixes;
            std::vector<std::uint32_t> values{0, f1};
            e.run(values, prefixes, 3);
            units.insert(units.end(), prefixes.begin(), prefixes.end());
        }
    }
    std::vector<std::vector<std::vector<std::uint32_t>>> per_unit(units.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        detail::MapEnumerator e(F);
        for (std::size_t u; (u = next.fetch_add(1)) < units.size();) {
            std::vector<std::uint32_t> values = units[u];
            e.run(values, per_unit[u], q);
        }
    };
    {
        std::vector<std::jthread> pool;
        for (unsigned i = 1; i < std::max(1u, workers); ++i) pool.emplace_back(worker);
        worker();
    }

    std::vector<std::uint32_t> squares;
    for (std::uint32_t s = 1; s < q; ++s)
        if (F.chi(s) == 1) squares.push_back(s);
    std::vector<std::vector<std::uint32_t>> tables;
    for (const auto& group : per_unit)
        for (const auto& g : group) {
            const std::vector<std::uint32_t> one{1};
            for (std::uint32_t s : g[1] == 0 ? one : squares)
                for (std::uint32_t b = 0; b < q; ++b) {
                    std::vector<std::uint32_t> t(q);
                    for (std::uint32_t x = 0; x < q; ++x) t[x] = F.add(F.mul(s, g[x]), b);
                    tables.push_back(std::move(t));
                }
        }
    std::sort(tables.begin(), tables.end());
    std::vector<ConditionMap> out;
    out.reserve(tables.size());
    for (auto& t : tables) out.push_back(ConditionMap{ctx, std::move(t)});
    return out;
}

/// Constant, or affine composed with a Frobenius power. Anything else throws
/// not_carlitz_error: that would mean the table is not of either form.
inline CarlitzForm classify(const ConditionMap& m, const ExtField& F) {
    const auto& t = m.table;
    if (t.size() != F.size()) throw precondition_error("table size does not match field");
    if (std::all_of(t.begin(), t.end(), [&](std::uint32_t v) { return v == t[0]; })) return ConstantForm{t[0]};
    const std::uint32_t b = t[0];
    const std::uint32_t a = F.sub(t[1], t[0]);
    if (a != 0 && F.chi(a) == 1) {
        for (unsigned j = 0; j < F.degree(); ++j) {
            CarlitzForm form = AffineFrobeniusForm{a, b, j};
            if (form_table(F, form) == t) return form;
        }
    }
    std::string dump;
    for (auto v : t) dump += std::to_string(v) + " ";
    throw not_carlitz_error("map is neither constant nor affine-Frobenius: " + dump);
}

inline CarlitzForm classify(const ConditionMap& m) { return classify(m, ExtField(m.ctx)); }

/// q + k q (q - 1) / 2: constants plus (nonzero square, shift, Frobenius power).
inline std::uint64_t expected_condition_map_count(const ExtFieldCtx& ctx) {
    return std::uint64_t{ctx.q} + std::uint64_t{ctx.k} * ctx.q * (ctx.q - 1) / 2;
}

}  // namespace sqq

#endif  // SQQ_CARLITZ_HPP
