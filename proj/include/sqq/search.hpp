#ifndef SQQ_SEARCH_HPP
#define SQQ_SEARCH_HPP

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <exception>
#include <functional>
#include <map>
#include <mutex>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <thread>
#include <vector>

#include "sqq/backtrack.hpp"
#include "sqq/checkpoint.hpp"
#include "sqq/error.hpp"
#include "sqq/ffield.hpp"

namespace sqq {

/// Partial sequence f(0..m) over F_p with f(0) = 0, f(1) = 1.
struct SolutionPrefix {
    OddPrime p;
    std::vector<std::uint32_t> values;

    std::size_t length() const noexcept { return values.size(); }
    friend bool operator==(const SolutionPrefix&, const SolutionPrefix&) = default;
};

/// Checks f(0) = 0, f(1) = 1, m < p and every pairwise difference quotient
/// being a square.
inline bool is_valid_prefix(const SolutionPrefix& s) {
    const std::uint32_t p = s.p.value();
    if (s.values.empty() || s.values.size() > p) return false;
    if (s.values[0] != 0) return false;
    if (s.values.size() > 1 && s.values[1] != 1) return false;
    for (std::size_t j = 1; j < s.values.size(); ++j)
        for (std::size_t i = 0; i < j; ++i) {
            if (s.values[i] >= p || s.values[j] >= p) return false;
            FpElem q = (FpElem(s.values[j], s.p) - FpElem(s.values[i], s.p)) / FpElem(std::int64_t(j - i), s.p);
            if (!is_square_p(q)) return false;
        }
    return true;
}

inline SolutionPrefix identity_prefix(OddPrime p, unsigned m) {
    SolutionPrefix s{p, std::vector<std::uint32_t>(m + 1)};
    std::iota(s.values.begin(), s.values.end(), 0u);
    return s;
}

struct SearchOptions {
    unsigned workers = 1;
    /// 0 picks min(3, target).
    unsigned split_depth = 0;
    /// Abort once more than this many nodes were visited (0: unlimited).
    std::uint64_t node_budget = 0;
    /// Stop after this many fresh work units (0: unlimited). Simulates an
    /// interrupted run; the checkpoint keeps what finished.
    std::uint64_t max_new_units = 0;
    const std::atomic<bool>* cancel = nullptr;
};

/// counts[m] = number of valid prefixes f(0..m); counts[0] = counts[1] = 1.
struct DepthCounts {
    std::vector<std::uint64_t> counts;
    SearchCounters stats;
};

/// Called once per finished work unit, serialized by the engine.
using CheckpointSink = std::function<void(const std::vector<std::uint32_t>& prefix, const std::vector<std::uint64_t>& counts)>;

namespace detail {

class PrefixTree {
public:
    PrefixTree(const SquareTable& table, unsigned target)
        : field_(table), extender_(field_), target_(target), positions_(target + 1), levels_(target + 1) {
        std::iota(positions_.begin(), positions_.end(), 0u);
        for (auto& l : levels_) l.reserve(table.modulus());
    }

    // Visits the subtree below `values` (inclusive), adding node counts to
    // counts[depth]. Leaves (depth == stop) are reported to on_leaf instead of
    // being expanded. Returns false if aborted.
    template <class OnLeaf, class Poll>
    bool walk(std::vector<std::uint32_t>& values, unsigned stop, std::vector<std::uint64_t>& counts,
              SearchCounters& stats, OnLeaf&& on_leaf, Poll&& poll) {
        const unsigned depth = static_cast<unsigned>(values.size() - 1);
        ++counts[depth];
        ++stats.visited_nodes;
        if ((stats.visited_nodes & 0xfff) == 0 && !poll()) return false;
        if (depth == stop) {
            on_leaf(values);
            return true;
        }
        auto& level = levels_[depth + 1];
        level.clear();
        extender_.extend(std::span<const std::uint32_t>(positions_.data(), depth + 1), values, depth + 1,
                         [&](std::uint32_t c) { level.push_back(c); }, stats);
        // Recursion reuses deeper level buffers, so iterate over a copy-free
        // index into this level only.
        for (std::size_t i = 0; i < levels_[depth + 1].size(); ++i) {
            values.push_back(levels_[depth + 1][i]);
            bool ok = walk(values, stop, counts, stats, on_leaf, poll);
            values.pop_back();
            if (!ok) return false;
        }
        return true;
    }

private:
    PrimeFieldView field_;
    SquareQuotientExtender<PrimeFieldView> extender_;
    unsigned target_;
    std::vector<std::uint32_t> positions_;
    std::vector<std::vector<std::uint32_t>> levels_;
};

}  // namespace detail

/// Split depth actually used for a run to `target`.
inline unsigned effective_split_depth(unsigned requested, unsigned target) {
    return requested ? std::clamp(requested, 1u, target) : std::min(3u, target);
}

/// Counts valid prefixes at every depth 0..target by one depth-first
/// traversal. The tree is cut at split_depth; each surviving prefix there is
/// an independent work unit handed to the worker pool, and unit counts are
/// combined by addition, so the result does not depend on scheduling.
///
/// With a checkpoint, units already recorded are skipped and newly finished
/// ones are added to it and passed to `sink`.
inline DepthCounts enumerate_depths(OddPrime p, unsigned target, const SearchOptions& opts,
                                    SearchCheckpoint* checkpoint = nullptr, const CheckpointSink& sink = {}) {
    if (target < 1 || target >= p.value()) throw precondition_error("depth must satisfy 1 <= x < p");
    if (opts.workers < 1) throw precondition_error("workers must be >= 1");
    const unsigned split = effective_split_depth(opts.split_depth, target);
    if (checkpoint && (checkpoint->p != p.value() || checkpoint->target_x != target || checkpoint->split_depth != split))
        throw checkpoint_error("checkpoint was written for p=" + std::to_string(checkpoint->p) +
                               " x=" + std::to_string(checkpoint->target_x) +
                               " depth=" + std::to_string(checkpoint->split_depth));

    const SquareTable table(p);
    DepthCounts result;
    result.counts.assign(target + 1, 0);
    result.counts[0] = 1;

    std::atomic<std::uint64_t> visited_total{0};
    std::atomic<bool> stop{false};
    std::atomic<bool> over_budget{false};
    std::atomic<bool> interrupted{false};
    auto poll_shared = [&](std::uint64_t delta) {
        std::uint64_t seen = visited_total.fetch_add(delta) + delta;
        if (opts.node_budget && seen > opts.node_budget) {
            over_budget = true;
            stop = true;
        }
        if (opts.cancel && opts.cancel->load()) {
            interrupted = true;
            stop = true;
        }
        return !stop.load();
    };

    // Phase 1: the shallow part of the tree, sequentially.
    std::vector<std::vector<std::uint32_t>> units;
    {
        detail::PrefixTree tree(table, target);
        std::vector<std::uint32_t> root{0, 1};
        std::uint64_t last = 0;
        bool ok = tree.walk(
            root, split, result.counts, result.stats, [&](const std::vector<std::uint32_t>& v) { units.push_back(v); },
            [&] {
                bool r = poll_shared(result.stats.visited_nodes - last);
                last = result.stats.visited_nodes;
                return r;
            });
        poll_shared(result.stats.visited_nodes - last);
        if (!ok || stop) {
            if (over_budget) throw budget_exceeded_error("node budget exhausted");
            throw interrupted_error("search cancelled");
        }
    }
    // Leaves at the split depth were counted in phase 1; unit counts start
    // one level below.
    std::vector<std::size_t> pending;
    if (checkpoint) {
        std::set<std::vector<std::uint32_t>> unit_set(units.begin(), units.end());
        for (const auto& [prefix, counts] : checkpoint->completed) {
            if (!unit_set.count(prefix)) throw checkpoint_error("checkpoint prefix is not a work unit of this search");
            for (unsigned d = split + 1; d <= target; ++d) result.counts[d] += counts[d - split];
        }
        for (std::size_t i = 0; i < units.size(); ++i)
            if (!checkpoint->completed.count(units[i])) pending.push_back(i);
    } else {
        pending.resize(units.size());
        std::iota(pending.begin(), pending.end(), std::size_t{0});
    }

    // Phase 2: the work units.
    std::vector<std::vector<std::uint64_t>> unit_counts(units.size());
    std::vector<SearchCounters> unit_stats(units.size());
    std::atomic<std::size_t> next{0};
    std::atomic<std::uint64_t> claimed{0};
    std::mutex writer;
    std::exception_ptr failure;

    auto worker = [&] {
        detail::PrefixTree tree(table, target);
        try {
            while (!stop) {
                const std::size_t slot = next.fetch_add(1);
                if (slot >= pending.size()) break;
                // Units already in flight still finish, so exactly
                // max_new_units get recorded.
                if (opts.max_new_units && claimed.fetch_add(1) >= opts.max_new_units) {
                    interrupted = true;
                    break;
                }
                const std::size_t u = pending[slot];
                std::vector<std::uint64_t> counts(target + 1, 0);
                SearchCounters stats;
                std::vector<std::uint32_t> values = units[u];
                std::uint64_t last = 0;
                bool ok = tree.walk(
                    values, target, counts, stats, [](const auto&) {},
                    [&] {
                        bool r = poll_shared(stats.visited_nodes - last);
                        last = stats.visited_nodes;
                        return r;
                    });
                poll_shared(stats.visited_nodes - last);
                if (!ok) break;
                // The root of the unit was already counted in phase 1.
                --stats.visited_nodes;
                std::vector<std::uint64_t> tail(counts.begin() + split, counts.end());
                unit_counts[u] = std::move(counts);
                unit_stats[u] = stats;
                std::lock_guard lock(writer);
                if (checkpoint) checkpoint->completed.emplace(units[u], tail);
                if (sink) sink(units[u], tail);
            }
        } catch (...) {
            std::lock_guard lock(writer);
            if (!failure) failure = std::current_exception();
            stop = true;
        }
    };

    {
        const unsigned n = std::max(1u, std::min<unsigned>(opts.workers, static_cast<unsigned>(pending.size())));
        std::vector<std::jthread> pool;
        for (unsigned i = 1; i < n; ++i) pool.emplace_back(worker);
        worker();
    }
    if (failure) std::rethrow_exception(failure);
    if (over_budget) throw budget_exceeded_error("node budget exhausted");
    if (interrupted) throw interrupted_error("search interrupted before all work units finished");

    for (std::size_t u : pending) {
        for (unsigned d = split + 1; d <= target; ++d) result.counts[d] += unit_counts[u][d];
        result.stats += unit_stats[u];
    }
    return result;
}

/// Every c in F_p that extends the prefix by one position.
inline std::vector<FpElem> extend_candidates(const SolutionPrefix& prefix) {
    if (prefix.values.size() < 2) throw precondition_error("prefix must contain f(0) and f(1)");
    if (prefix.values.size() >= prefix.p.value()) throw precondition_error("prefix already spans F_p");
    const SquareTable table(prefix.p);
    PrimeFieldView field(table);
    SquareQuotientExtender<PrimeFieldView> ext(field);
    std::vector<std::uint32_t> positions(prefix.values.size());
    std::iota(positions.begin(), positions.end(), 0u);
    std::vector<FpElem> out;
    SearchCounters unused;
    ext.extend(positions, prefix.values, static_cast<std::uint32_t>(prefix.values.size()),
               [&](std::uint32_t c) { out.emplace_back(c, prefix.p); }, unused);
    return out;
}

/// W(p, L).
inline std::uint64_t count_solutions(OddPrime p, unsigned L, const SearchOptions& opts = {}) {
    if (L < 2 || L >= p.value()) throw precondition_error("L must satisfy 2 <= L < p");
    if (opts.split_depth && (opts.split_depth < 2 || opts.split_depth > L)) throw precondition_error("split depth must satisfy 2 <= d <= L");
    return enumerate_depths(p, L, opts).counts[L];
}

/// All solutions f(0..L), in lexicographic order, stopping after `limit`.
inline std::vector<SolutionPrefix> enumerate_solutions(OddPrime p, unsigned L, std::size_t limit = SIZE_MAX) {
    if (L < 1 || L >= p.value()) throw precondition_error("L must satisfy 1 <= L < p");
    const SquareTable table(p);
    detail::PrefixTree tree(table, L);
    std::vector<std::uint64_t> counts(L + 1, 0);
    SearchCounters stats;
    std::vector<SolutionPrefix> out;
    std::vector<std::uint32_t> root{0, 1};
    tree.walk(
        root, L, counts, stats, [&](const std::vector<std::uint32_t>& v) { out.push_back({p, v}); },
        [&] { return out.size() < limit; });
    if (out.size() > limit) out.erase(out.begin() + static_cast<std::ptrdiff_t>(limit), out.end());
    return out;
}

/// The sole solution of length L+1 if W(p, L) == 1.
inline std::optional<SolutionPrefix> unique_solution(OddPrime p, unsigned L) {
    auto sols = enumerate_solutions(p, L, 2);
    if (sols.size() != 1) return std::nullopt;
    return sols.front();
}

/// One row of the W table: counts[x] = W(p, x) for x = 2..x_end.
struct WProfile {
    OddPrime p;
    std::map<unsigned, std::uint64_t> counts;
    unsigned x_end = 0;
    bool stabilized = false;
    SearchCounters stats;
};

/// Builds the profile from per-depth counts. Without x_max the row ends at
/// the first column equal to 1 (that column is L(p)); it is marked stabilized
/// only if every later column that was computed is 1 as well.
inline WProfile profile_from_counts(OddPrime p, const DepthCounts& dc, std::optional<unsigned> x_max) {
    WProfile prof{p, {}, 0, false, dc.stats};
    const unsigned last = static_cast<unsigned>(dc.counts.size() - 1);
    unsigned end = last;
    if (!x_max) {
        for (unsigned x = 2; x <= last; ++x)
            if (dc.counts[x] == 1) {
                end = x;
                break;
            }
    }
    for (unsigned x = 2; x <= end; ++x) prof.counts[x] = dc.counts[x];
    prof.x_end = end;
    prof.stabilized = dc.counts[end] == 1;
    if (!x_max)
        for (unsigned x = end + 1; x <= last; ++x)
            if (dc.counts[x] != 1) prof.stabilized = false;
    return prof;
}

/// Depth that a profile traversal runs to.
inline unsigned profile_target(OddPrime p, std::optional<unsigned> x_max) {
    if (x_max) {
        if (*x_max < 2 || *x_max >= p.value()) throw precondition_error("x_max must satisfy 2 <= x_max < p");
        return *x_max;
    }
    return p.value() - 1;
}

inline WProfile w_profile(OddPrime p, std::optional<unsigned> x_max = std::nullopt, const SearchOptions& opts = {},
                          SearchCheckpoint* checkpoint = nullptr, const CheckpointSink& sink = {}) {
    const unsigned target = profile_target(p, x_max);
    return profile_from_counts(p, enumerate_depths(p, target, opts, checkpoint, sink), x_max);
}

/// L(p): smallest L with W(p, L) = 1.
inline unsigned minimal_length(OddPrime p, const SearchOptions& opts = {}) {
    WProfile prof = w_profile(p, std::nullopt, opts);
    if (prof.counts.at(prof.x_end) != 1) throw std::logic_error("W(p, x) never reached 1 below p");
    return prof.x_end;
}

/// f(0) = 0, f(u) = 1 for 1 <= u < n(p): a non-identity solution of length
/// n(p), so W(p, n(p) - 1) >= 2 and n(p) <= L(p).
inline SolutionPrefix lower_bound_witness(OddPrime p) {
    const std::uint32_t n = first_nonresidue(p);
    if (n <= 2) throw precondition_error("n(p) = 2 gives no non-identity witness");
    SolutionPrefix w{p, std::vector<std::uint32_t>(n, 1)};
    w.values[0] = 0;
    if (!is_valid_prefix(w) || w == identity_prefix(p, n - 1))
        throw std::logic_error("lower-bound witness failed its own check");
    return w;
}

/// Finishes an interrupted count. Returns W(p, target_x).
inline std::uint64_t resume_count(SearchCheckpoint& checkpoint, const SearchOptions& opts,
                                  const CheckpointSink& sink = {}) {
    SearchOptions o = opts;
    o.split_depth = checkpoint.split_depth;
    return enumerate_depths(OddPrime(checkpoint.p), checkpoint.target_x, o, &checkpoint, sink).counts[checkpoint.target_x];
}

/// Upper reference for the work done: sum over computed columns of p * x * W(p, x).
inline double work_bound(const DepthCounts& dc, std::uint32_t p) {
    double b = 0;
    for (std::size_t x = 2; x < dc.counts.size(); ++x) b += double(p) * double(x) * double(dc.counts[x]);
    return b;
}

}  // namespace sqq

#endif  // SQQ_SEARCH_HPP
