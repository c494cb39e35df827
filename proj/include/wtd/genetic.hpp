#ifndef WTD_GENETIC_HPP
#define WTD_GENETIC_HPP

#include <algorithm>
#include <cstdint>
#include <vector>

#include "wtd/errors.hpp"
#include "wtd/heuristics.hpp"
#include "wtd/rng.hpp"
#include "wtd/solution.hpp"

namespace wtd::ga {

struct Params {
    int initial_population_size = 100;
    int population_size = 40;
    int cutoff = 30;
    int mutation_lo = 1;
    int mutation_hi = 4;
    int n_iterations = 20;
    std::uint64_t seed = 0;

    void validate() const {
        if (population_size < 2) throw InvalidOptions("population size must be >= 2");
        if (initial_population_size < population_size)
            throw InvalidOptions("initial population smaller than population size");
        if (mutation_lo < 1 || mutation_hi < mutation_lo)
            throw InvalidOptions("mutation range must satisfy 1 <= lo <= hi");
        if (cutoff < -1 || cutoff > 99) throw InvalidOptions("cutoff outside [-1, 99]");
        if (n_iterations < 0) throw InvalidOptions("negative iteration count");
    }
};

struct Member {
    Solution solution;
    long long fitness = 0;  // objective total
    int size = 0;           // |D|
    std::uint64_t seq = 0;  // insertion order, stabilizes ties
};

/// Population kept sorted by (fitness, size, insertion order) with at most
/// one member per (fitness, size) pair.
class Population {
public:
    bool contains(long long fitness, int size) const {
        for (const Member& m : members_)
            if (m.fitness == fitness && m.size == size) return true;
        return false;
    }

    /// Diversity-filtered insert; duplicates of an existing (fitness, size)
    /// are discarded. Returns whether the solution entered.
    bool try_insert(Solution s) {
        const long long fitness = s.total();
        const int size = s.size();
        if (contains(fitness, size)) return false;
        insert_unchecked(std::move(s));
        return true;
    }

    /// Raw insert that skips the diversity filter (used to stage unfiltered
    /// merges; `select` applies the filter).
    void insert_unchecked(Solution s) {
        Member m{std::move(s), 0, 0, seq_counter_++};
        m.fitness = m.solution.total();
        m.size = m.solution.size();
        auto pos = std::upper_bound(members_.begin(), members_.end(), m,
                                    [](const Member& a, const Member& b) {
                                        return std::tuple(a.fitness, a.size, a.seq) <
                                               std::tuple(b.fitness, b.size, b.seq);
                                    });
        members_.insert(pos, std::move(m));
    }

    const std::vector<Member>& members() const { return members_; }
    bool empty() const { return members_.empty(); }
    std::size_t size() const { return members_.size(); }
    const Member& best() const { return members_.front(); }

private:
    std::vector<Member> members_;
    std::uint64_t seq_counter_ = 0;
};

/// Drop later (fitness, size) duplicates, then keep the k fittest.
inline Population select(const Population& population, std::size_t k) {
    if (k < 1) throw InvalidOptions("selection needs k >= 1");
    Population out;
    for (const Member& m : population.members()) {
        if (out.size() >= k) break;
        if (!out.contains(m.fitness, m.size)) out.insert_unchecked(m.solution);
    }
    return out;
}

/// Crossover = the GRASP pruning loop started from the union of the parents.
inline Solution crossover(const Instance& g, const Solution& d1, const Solution& d2,
                          int cutoff, Xoshiro256ss& rng) {
    Members unified = d1.in_set;
    for (int v = 0; v < g.vertex_count(); ++v)
        if (d2.in_set[v]) unified[v] = 1;
    return prune_to_solution(g, std::move(unified), cutoff, &rng);
}

/// Remove m random members (m drawn from [lo, hi], capped at |D|), then
/// repair with the degree-ordered cover heuristic on the survivors.
/// Draw order: m first, then the removal positions (partial Fisher-Yates
/// over the ascending member list).
inline Solution mutation(const Instance& g, const Solution& d, int lo, int hi,
                         Xoshiro256ss& rng) {
    const long long drawn = rng.uniform_int(lo, hi);
    const int m = static_cast<int>(std::min<long long>(drawn, d.size()));
    std::vector<int> pool = d.members;
    for (int t = 0; t < m; ++t) {
        const std::size_t j = t + rng.bounded(pool.size() - t);
        std::swap(pool[t], pool[j]);
    }
    Members surviving = d.in_set;
    for (int t = 0; t < m; ++t) surviving[pool[t]] = 0;
    return greedy_cover(g, degree_order(g), surviving);
}

struct RunResult {
    Solution best;
    Population final_population;
    std::vector<long long> generation_best;  // after init, then per generation
};

/// Full GA: GRASP-seeded population, all-unordered-pairs crossover,
/// mutation, local-search polish, diversity-filtered merge, truncation
/// selection. One master RNG stream per run; per offspring the draws are
/// consumed crossover first, then mutation.
inline RunResult run_ga_detailed(const Instance& g, const Params& params) {
    params.validate();
    Xoshiro256ss rng(params.seed);

    Population population;
    for (int i = 0; i < params.initial_population_size; ++i) {
        Solution s = prune_to_solution(g, Members(g.vertex_count(), 1), params.cutoff, &rng);
        population.try_insert(std::move(s));
    }
    population = select(population, params.population_size);

    RunResult result;
    result.generation_best.push_back(population.best().fitness);

    for (int it = 0; it < params.n_iterations; ++it) {
        // pairs come from the population as of the generation start
        std::vector<Solution> parents;
        parents.reserve(population.size());
        for (const Member& m : population.members()) parents.push_back(m.solution);

        for (std::size_t a = 0; a < parents.size(); ++a)
            for (std::size_t b = a + 1; b < parents.size(); ++b) {
                Solution child = crossover(g, parents[a], parents[b], params.cutoff, rng);
                child = mutation(g, child, params.mutation_lo, params.mutation_hi, rng);
                child = local_search(g, child);
                population.try_insert(std::move(child));
            }
        population = select(population, params.population_size);
        result.generation_best.push_back(population.best().fitness);
    }

    result.best = population.best().solution;
    result.final_population = std::move(population);
    return result;
}

inline Solution run_ga(const Instance& g, const Params& params) {
    return run_ga_detailed(g, params).best;
}

}  // namespace wtd::ga

#endif
