#ifndef WTD_HEURISTICS_HPP
#define WTD_HEURISTICS_HPP

#include <algorithm>
#include <functional>
#include <numeric>
#include <vector>

#include "wtd/errors.hpp"
#include "wtd/rng.hpp"
#include "wtd/solution.hpp"

namespace wtd {

/// cutoff in [-1, 99]: -1 keeps the construction deterministic; otherwise a
/// candidate that beats the incumbent best score is adopted only when a
/// fresh draw from [0,99] is strictly larger than cutoff.
struct GraspConfig {
    int cutoff = -1;
    Xoshiro256ss* rng = nullptr;

    void validate() const {
        if (cutoff < -1 || cutoff > 99) throw InvalidOptions("cutoff outside [-1, 99]");
        if (cutoff >= 0 && rng == nullptr)
            throw InvalidOptions("randomized construction needs an RNG");
    }
};

/// Greedy pruning loop shared by the starting heuristic, its GRASP variant,
/// and the crossover operator: repeatedly remove the feasible vertex with the
/// best positive exact removal delta, scanning vertices in increasing index
/// (ties keep the earlier vertex). Scores are cached and invalidated two
/// hops around each removal.
inline Solution prune_to_solution(const Instance& g, Members in_set, int cutoff,
                                  Xoshiro256ss* rng,
                                  const std::function<void(int, long long)>& on_remove = {}) {
    ScoreState state = ScoreState::init(g, in_set);
    bool improving = true;
    while (improving) {
        improving = false;
        int vertex_to_remove = -1;
        long long best_score = 0;
        for (int i = 0; i < g.vertex_count(); ++i) {
            if (!in_set[i]) continue;
            if (!state.removal_feasible(g, i)) continue;
            if (!state.score[i]) state.score[i] = delta_remove(g, state, in_set, i);
            if (*state.score[i] > best_score) {
                if (cutoff >= 0 && static_cast<long long>(rng->bounded(100)) <= cutoff)
                    continue;
                best_score = *state.score[i];
                vertex_to_remove = i;
                improving = true;
            }
        }
        if (improving) {
            in_set[vertex_to_remove] = 0;
            if (on_remove) on_remove(vertex_to_remove, best_score);
            maintain_scores(g, state, vertex_to_remove);
        }
    }
    return Solution::of(g, in_set);
}

/// Deterministic construction: start from D = V and prune greedily.
inline Solution starting_heuristic(const Instance& g,
                                   const std::function<void(int, long long)>& on_remove = {}) {
    return prune_to_solution(g, Members(g.vertex_count(), 1), -1, nullptr, on_remove);
}

inline Solution grasp_construct(const Instance& g, const GraspConfig& config) {
    config.validate();
    return prune_to_solution(g, Members(g.vertex_count(), 1), config.cutoff, config.rng);
}

/// First-improvement local search over single add/remove moves: scan by
/// index, apply the first improving addition; once no addition improves, try
/// removals; any applied move restarts the scan.
inline Solution local_search(const Instance& g, const Solution& start) {
    Members d = start.in_set;
    ScoreState state = ScoreState::init(g, d);  // coverage counts only

    bool improving = true;
    while (improving) {
        improving = false;
        for (int i = 0; i < g.vertex_count() && !improving; ++i) {
            if (d[i]) continue;
            if (delta_add(g, d, i) > 0) {
                d[i] = 1;
                for (const Adjacent& a : g.adjacency(i)) ++state.coverage_count[a.to];
                improving = true;
            }
        }
        if (improving) continue;
        for (int i = 0; i < g.vertex_count() && !improving; ++i) {
            if (!d[i]) continue;
            auto delta = delta_remove(g, state, d, i);
            if (delta && *delta > 0) {
                d[i] = 0;
                for (const Adjacent& a : g.adjacency(i)) --state.coverage_count[a.to];
                improving = true;
            }
        }
    }
    return Solution::of(g, d);
}

/// Vertices in descending degree, ties by index — the repair/mutation order.
inline std::vector<int> degree_order(const Instance& g) {
    std::vector<int> order(g.vertex_count());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return g.degree(a) > g.degree(b); });
    return order;
}

/// Vertices in descending fractional value, ties by descending degree, then
/// index — the LP-guided primal-heuristic order.
inline std::vector<int> lp_guided_order(const Instance& g, const std::vector<double>& x_vals) {
    std::vector<int> order(g.vertex_count());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
        if (x_vals[a] != x_vals[b]) return x_vals[a] > x_vals[b];
        return g.degree(a) > g.degree(b);
    });
    return order;
}

/// Cover construction: walk the priority order and take any vertex that
/// dominates a not-yet-dominated vertex, starting from base_set's coverage.
/// The full scan always ends with every vertex dominated.
inline Solution greedy_cover(const Instance& g, const std::vector<int>& priority_order,
                             const Members& base_set) {
    const int n = g.vertex_count();
    Members d = base_set;
    if (d.empty()) d.assign(n, 0);
    std::vector<std::uint8_t> covered(n, 0);
    int uncovered = n;
    for (int j = 0; j < n; ++j)
        if (d[j])
            for (const Adjacent& a : g.adjacency(j))
                if (!covered[a.to]) {
                    covered[a.to] = 1;
                    --uncovered;
                }
    for (int i : priority_order) {
        if (uncovered == 0) break;
        if (d[i]) continue;
        bool helps = false;
        for (const Adjacent& a : g.adjacency(i))
            if (!covered[a.to]) helps = true;
        if (!helps) continue;
        d[i] = 1;
        for (const Adjacent& a : g.adjacency(i))
            if (!covered[a.to]) {
                covered[a.to] = 1;
                --uncovered;
            }
    }
    return Solution::of(g, d);
}

}  // namespace wtd

#endif
