#ifndef WTD_EXACT_HPP
#define WTD_EXACT_HPP

#include <chrono>
#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

#include "wtd/errors.hpp"
#include "wtd/heuristics.hpp"
#include "wtd/solution.hpp"

namespace wtd {

struct ExactResult {
    Solution best;
    long long lower_bound = 0;
    double optimality_gap_pct = 0.0;  // 100 * (w_B - LB) / w_B
    std::uint64_t nodes_explored = 0;
    enum class Status { Optimal, TimeLimit } status = Status::Optimal;
};

inline double optimality_gap_pct(long long w_best, long long lower_bound) {
    if (w_best == 0) throw DivisionByZero("optimality gap with w_B = 0");
    return 100.0 * static_cast<double>(w_best - lower_bound) / static_cast<double>(w_best);
}

/// Exhaustive scan of all 2^n subsets. Ties go to the lexicographically
/// smallest member list, which for subsets of equal cost is the one whose
/// smallest differing vertex is present.
inline ExactResult enumerate_optimal(const Instance& g, int limit_n = 25) {
    const int n = g.vertex_count();
    if (n > limit_n)
        throw TooLarge("enumeration limited to n <= " + std::to_string(limit_n));

    // adjacency bitmasks make the feasibility test O(n)
    std::vector<std::uint32_t> adj(n, 0);
    for (const Edge& e : g.edges()) {
        adj[e.u] |= 1u << e.v;
        adj[e.v] |= 1u << e.u;
    }

    auto lex_members_less = [n](std::uint32_t a, std::uint32_t b) {
        // compare the ascending member lists lexicographically
        while (a || b) {
            if (!a) return true;   // a is a strict prefix
            if (!b) return false;
            const int va = std::countr_zero(a), vb = std::countr_zero(b);
            if (va != vb) return va < vb;
            a &= a - 1;
            b &= b - 1;
        }
        return false;
    };
    (void)n;

    std::uint32_t best_mask = 0;
    long long best_total = std::numeric_limits<long long>::max();
    std::uint64_t feasible_count = 0;
    const std::uint64_t limit = 1ull << n;
    for (std::uint64_t mask64 = 0; mask64 < limit; ++mask64) {
        const auto mask = static_cast<std::uint32_t>(mask64);
        bool feasible = true;
        for (int v = 0; v < n && feasible; ++v)
            if ((adj[v] & mask) == 0) feasible = false;
        if (!feasible) continue;
        ++feasible_count;

        long long total = 0;
        for (int v = 0; v < n; ++v) {
            if ((mask >> v) & 1u) {
                total += g.vertex_weight(v);
            } else {
                for (const Adjacent& a : g.sorted_neighbors(v))
                    if ((mask >> a.to) & 1u) {
                        total += a.cost;
                        break;
                    }
            }
        }
        for (const Edge& e : g.edges())
            if (((mask >> e.u) & 1u) && ((mask >> e.v) & 1u)) total += e.cost;

        if (total < best_total ||
            (total == best_total && lex_members_less(mask, best_mask))) {
            best_total = total;
            best_mask = mask;
        }
    }

    ExactResult r;
    Members in_set(n, 0);
    for (int v = 0; v < n; ++v) in_set[v] = (best_mask >> v) & 1u;
    r.best = Solution::of(g, in_set);
    r.lower_bound = best_total;
    r.nodes_explored = feasible_count;
    r.status = ExactResult::Status::Optimal;
    return r;
}

struct BnbOptions {
    std::optional<std::chrono::milliseconds> time_limit;
    bool use_bound_pruning = true;  // test knob; disabling keeps only feasibility pruning
};

namespace detail {

struct BnbSearch {
    const Instance& g;
    const BnbOptions& opts;
    std::vector<int> order;          // branch order: descending degree
    std::vector<std::int8_t> state;  // -1 undecided, 0 fixed out, 1 fixed in
    long long incumbent_total;
    Members incumbent_set;
    std::uint64_t nodes = 0;
    long long frontier_lb = std::numeric_limits<long long>::max();
    bool timed_out = false;
    std::chrono::steady_clock::time_point deadline;

    BnbSearch(const Instance& g_, const BnbOptions& o, const Solution& start)
        : g(g_), opts(o), state(g_.vertex_count(), -1) {
        incumbent_total = start.total();
        incumbent_set = start.in_set;
        order = degree_order(g);
        if (o.time_limit) deadline = std::chrono::steady_clock::now() + *o.time_limit;
    }

    // Σ w over fixed-in + internal edges among fixed-in + per fixed-out
    // vertex the cheapest edge to any not-fixed-out neighbor. Sound: any
    // completion only adds nonnegative terms and can only shrink none.
    long long bound() const {
        long long b = 0;
        for (int v = 0; v < g.vertex_count(); ++v) {
            if (state[v] == 1) {
                b += g.vertex_weight(v);
            } else if (state[v] == 0) {
                long long cheapest = -1;
                for (const Adjacent& a : g.sorted_neighbors(v))
                    if (state[a.to] != 0) {
                        cheapest = a.cost;
                        break;
                    }
                if (cheapest < 0) return std::numeric_limits<long long>::max();
                b += cheapest;
            }
        }
        for (const Edge& e : g.edges())
            if (state[e.u] == 1 && state[e.v] == 1) b += e.cost;
        return b;
    }

    bool coverage_possible() const {
        // a vertex whose whole neighborhood is fixed out can never be dominated
        for (int v = 0; v < g.vertex_count(); ++v) {
            bool possible = false;
            for (const Adjacent& a : g.adjacency(v))
                if (state[a.to] != 0) {
                    possible = true;
                    break;
                }
            if (!possible) return false;
        }
        return true;
    }

    void dive(std::size_t depth) {
        if (timed_out) return;
        if (opts.time_limit && (nodes & 0x3ff) == 0 &&
            std::chrono::steady_clock::now() >= deadline) {
            timed_out = true;
            return;
        }
        ++nodes;

        if (!coverage_possible()) return;
        const long long lb = bound();
        if (opts.use_bound_pruning && lb >= incumbent_total) return;

        if (depth == order.size()) {
            Members d(g.vertex_count(), 0);
            for (int v = 0; v < g.vertex_count(); ++v) d[v] = state[v] == 1;
            auto b = evaluate(g, d);
            if (b && b->total < incumbent_total) {
                incumbent_total = b->total;
                incumbent_set = d;
            }
            return;
        }

        const int v = order[depth];
        // membership first: domination-heavy incumbents show up early
        state[v] = 1;
        dive(depth + 1);
        state[v] = 0;
        dive(depth + 1);
        state[v] = -1;

        if (timed_out) frontier_lb = std::min(frontier_lb, lb);
    }
};

}  // namespace detail

/// Depth-first combinatorial branch-and-bound, branching on membership in
/// descending-degree order with a weak but exact node bound. The incumbent
/// starts from the polished starting heuristic, so a feasible solution is
/// always returned, with a valid global lower bound when the clock runs out.
inline ExactResult branch_and_bound(const Instance& g, const BnbOptions& opts = {}) {
    const Solution start = local_search(g, starting_heuristic(g));
    detail::BnbSearch search(g, opts, start);
    search.dive(0);

    ExactResult r;
    Members best = search.incumbent_set;
    r.best = Solution::of(g, best);
    r.nodes_explored = search.nodes;
    if (search.timed_out) {
        r.status = ExactResult::Status::TimeLimit;
        r.lower_bound = std::min(search.frontier_lb, search.incumbent_total);
    } else {
        r.status = ExactResult::Status::Optimal;
        r.lower_bound = search.incumbent_total;
    }
    r.optimality_gap_pct = optimality_gap_pct(r.best.total(), r.lower_bound);
    return r;
}

}  // namespace wtd

#endif
