#ifndef WTD_SOLUTION_HPP
#define WTD_SOLUTION_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "wtd/instance.hpp"

namespace wtd {

/// Dense membership vector for a vertex subset D.
using Members = std::vector<std::uint8_t>;

inline Members members_from_indices(int n, const std::vector<int>& indices) {
    Members m(n, 0);
    for (int v : indices) m[v] = 1;
    return m;
}

inline std::vector<int> indices_from_members(const Members& m) {
    std::vector<int> out;
    for (int v = 0; v < static_cast<int>(m.size()); ++v)
        if (m[v]) out.push_back(v);
    return out;
}

/// The three objective components of Definition-style evaluation.
struct ObjectiveBreakdown {
    long long vertex_cost = 0;    // sum of w_i over D
    long long internal_cost = 0;  // sum of c_e over edges inside D
    long long external_cost = 0;  // cheapest edge into D per vertex outside
    long long total = 0;
    bool operator==(const ObjectiveBreakdown&) const = default;
};

/// True iff every vertex (including members of D) has a neighbor in D.
inline bool is_total_dominating(const Instance& g, const Members& in_set) {
    for (int v = 0; v < g.vertex_count(); ++v) {
        bool covered = false;
        for (const Adjacent& a : g.adjacency(v))
            if (in_set[a.to]) {
                covered = true;
                break;
            }
        if (!covered) return false;
    }
    return true;
}

/// Cheapest edge cost from v into D, skipping `exclude` as dominator.
/// Empty set of dominators yields nullopt.
inline std::optional<long long> external_cost_of(const Instance& g, const Members& in_set,
                                                 int v, int exclude = -1) {
    for (const Adjacent& a : g.sorted_neighbors(v))
        if (in_set[a.to] && a.to != exclude) return a.cost;
    return std::nullopt;
}

/// Exact objective of D, or nullopt when D is not a total dominating set.
inline std::optional<ObjectiveBreakdown> evaluate(const Instance& g, const Members& in_set) {
    ObjectiveBreakdown b;
    for (int v = 0; v < g.vertex_count(); ++v) {
        if (in_set[v]) {
            b.vertex_cost += g.vertex_weight(v);
            // membership in D still requires a dominator
            if (!external_cost_of(g, in_set, v)) return std::nullopt;
        } else {
            auto ext = external_cost_of(g, in_set, v);
            if (!ext) return std::nullopt;
            b.external_cost += *ext;
        }
    }
    for (const Edge& e : g.edges())
        if (in_set[e.u] && in_set[e.v]) b.internal_cost += e.cost;
    b.total = b.vertex_cost + b.internal_cost + b.external_cost;
    return b;
}

struct Solution {
    Members in_set;
    std::vector<int> members;  // ascending indices, consistent with in_set
    std::optional<ObjectiveBreakdown> breakdown;

    static Solution of(const Instance& g, Members in_set) {
        Solution s;
        s.members = indices_from_members(in_set);
        s.in_set = std::move(in_set);
        s.breakdown = evaluate(g, s.in_set);
        return s;
    }

    static Solution of_indices(const Instance& g, const std::vector<int>& indices) {
        return of(g, members_from_indices(g.vertex_count(), indices));
    }

    long long total() const { return breakdown ? breakdown->total : -1; }
    int size() const { return static_cast<int>(members.size()); }
};

/// Incremental bookkeeping for the vertex-removal heuristic: per-vertex
/// dominator counts |N(j) ∩ D| and a lazily recomputed removal-score cache.
struct ScoreState {
    std::vector<int> coverage_count;
    std::vector<std::optional<long long>> score;  // nullopt = recompute needed

    static ScoreState init(const Instance& g, const Members& in_set) {
        ScoreState st;
        st.coverage_count.assign(g.vertex_count(), 0);
        st.score.assign(g.vertex_count(), std::nullopt);
        for (int v = 0; v < g.vertex_count(); ++v)
            for (const Adjacent& a : g.adjacency(v))
                if (in_set[a.to]) ++st.coverage_count[v];
        return st;
    }

    bool removal_feasible(const Instance& g, int i) const {
        for (const Adjacent& a : g.adjacency(i))
            if (coverage_count[a.to] <= 1) return false;
        return true;
    }
};

/// Exact objective improvement of removing i from D (positive = improving),
/// nullopt when the removal would leave some neighbor of i undominated.
inline std::optional<long long> delta_remove(const Instance& g, const ScoreState& state,
                                             const Members& in_set, int i) {
    if (!state.removal_feasible(g, i)) return std::nullopt;
    long long delta = g.vertex_weight(i);
    for (const Adjacent& a : g.adjacency(i))
        if (in_set[a.to]) delta += a.cost;  // internal edges saved
    // new external cost for i itself
    delta -= *external_cost_of(g, in_set, i);
    // vertices outside D that i currently helps dominate may get costlier
    for (const Adjacent& a : g.adjacency(i)) {
        if (in_set[a.to]) continue;
        const long long old_ext = *external_cost_of(g, in_set, a.to);
        const long long new_ext = *external_cost_of(g, in_set, a.to, i);
        delta -= new_ext - old_ext;
    }
    return delta;
}

/// Exact objective improvement of adding i to a feasible D (positive =
/// improving). Additions never break feasibility.
inline long long delta_add(const Instance& g, const Members& in_set, int i) {
    long long delta = -g.vertex_weight(i);
    for (const Adjacent& a : g.adjacency(i))
        if (in_set[a.to]) delta -= a.cost;  // new internal edges
    delta += *external_cost_of(g, in_set, i);  // i no longer pays external cost
    for (const Adjacent& a : g.adjacency(i)) {
        if (in_set[a.to]) continue;
        const long long old_ext = *external_cost_of(g, in_set, a.to);
        if (a.cost < old_ext) delta += old_ext - a.cost;
    }
    return delta;
}

/// Bookkeeping after `removed` left D: dominator counts drop for its
/// neighbors, and cached scores go stale for the neighbors and their
/// neighbors (removal changes internal edges at N(removed) and external
/// costs reachable through a shared neighbor).
inline void maintain_scores(const Instance& g, ScoreState& state, int removed) {
    for (const Adjacent& a : g.adjacency(removed)) {
        --state.coverage_count[a.to];
        state.score[a.to] = std::nullopt;
        for (const Adjacent& b : g.adjacency(a.to)) state.score[b.to] = std::nullopt;
    }
}

}  // namespace wtd

#endif
