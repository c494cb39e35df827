#include <catch2/catch_amalgamated.hpp>

#include "test_util.hpp"
#include "wtd/exact.hpp"
#include "wtd/genetic.hpp"

using namespace wtd;
using namespace wtdtest;

TEST_CASE("selection keeps one member per (fitness, size) pair") {
    const Instance g = path4();
    ga::Population pop;
    pop.insert_unchecked(Solution::of_indices(g, {1, 2}));     // (5, 2)
    pop.insert_unchecked(Solution::of_indices(g, {1, 2}));     // duplicate (5, 2)
    pop.insert_unchecked(Solution::of_indices(g, {0, 1, 2}));  // (6, 3)

    ga::Population two = ga::select(pop, 2);
    REQUIRE(two.size() == 2);
    CHECK(two.members()[0].fitness == 5);
    CHECK(two.members()[0].size == 2);
    CHECK(two.members()[1].fitness == 6);

    CHECK(ga::select(pop, 10).size() == 2);  // k beyond distinct members
    CHECK(ga::select(pop, 1).best().fitness == 5);
}

TEST_CASE("population rejects (fitness,size) duplicates and stays sorted") {
    const Instance g = path4();
    ga::Population pop;
    CHECK(pop.try_insert(Solution::of_indices(g, {0, 1, 2})));
    CHECK(pop.try_insert(Solution::of_indices(g, {1, 2})));
    CHECK_FALSE(pop.try_insert(Solution::of_indices(g, {1, 2})));
    // {1,2,3} collides with {0,1,2} at (fitness,size) = (6,3)
    CHECK_FALSE(pop.try_insert(Solution::of_indices(g, {1, 2, 3})));
    CHECK(pop.try_insert(Solution::of_indices(g, {0, 1, 2, 3})));  // (7,4)
    REQUIRE(pop.size() == 3);
    CHECK(pop.members()[0].fitness == 5);
    CHECK(pop.members()[1].fitness == 6);
    CHECK(pop.members()[1].size == 3);
    CHECK(pop.members()[2].fitness == 7);
    CHECK(pop.members()[2].size == 4);
}

TEST_CASE("crossover prunes the parent union") {
    const Instance g = path4();
    Xoshiro256ss rng(1);
    Solution bc = Solution::of_indices(g, {1, 2});
    Solution abc = Solution::of_indices(g, {0, 1, 2});

    // removing a from the union {a,b,c} improves by exactly 1 (6 -> 5)
    Members u = members_from_indices(4, {0, 1, 2});
    auto st = ScoreState::init(g, u);
    auto d = delta_remove(g, st, u, 0);
    REQUIRE(d);
    CHECK(*d == 1);

    Solution child = ga::crossover(g, bc, abc, -1, rng);
    CHECK(child.members == std::vector<int>{1, 2});

    // a removal-minimal solution crossed with itself is unchanged
    Solution self = ga::crossover(g, bc, bc, -1, rng);
    CHECK(self.members == bc.members);
}

TEST_CASE("crossover always yields total dominating sets") {
    Xoshiro256ss rng(11);
    for (int it = 0; it < 30; ++it) {
        const Instance g = random_instance(rng, 5 + int(rng.bounded(9)), 0.4);
        Solution d1 = Solution::of(g, random_feasible_set(g, rng));
        Solution d2 = Solution::of(g, random_feasible_set(g, rng));
        Solution child = ga::crossover(g, d1, d2, 30, rng);
        REQUIRE(is_total_dominating(g, child.in_set));
        Members u = d1.in_set;
        for (int v = 0; v < g.vertex_count(); ++v)
            if (d2.in_set[v]) u[v] = 1;
        CHECK(child.total() <= evaluate(g, u)->total);
    }
}

TEST_CASE("mutation repairs the path solution back to itself") {
    const Instance g = path4();
    Solution bc = Solution::of_indices(g, {1, 2});
    for (std::uint64_t seed = 0; seed < 16; ++seed) {
        Xoshiro256ss rng(seed);
        Solution mutated = ga::mutation(g, bc, 1, 1, rng);
        CHECK(mutated.members == std::vector<int>{1, 2});
    }
}

TEST_CASE("full removal mutates into the plain degree-order cover") {
    const Instance g = fig1();
    Solution start = Solution::of(g, Members(9, 1));
    Xoshiro256ss rng(5);
    Solution mutated = ga::mutation(g, start, 9, 9, rng);
    Solution cover = greedy_cover(g, degree_order(g), Members(9, 0));
    CHECK(mutated.members == cover.members);
}

TEST_CASE("mutation output is always feasible") {
    Xoshiro256ss rng(21);
    int runs = 0;
    while (runs < 1000) {
        const Instance g = random_instance(rng, 4 + int(rng.bounded(9)), 0.45);
        for (int rep = 0; rep < 10 && runs < 1000; ++rep, ++runs) {
            Solution d = Solution::of(g, random_feasible_set(g, rng));
            Solution m = ga::mutation(g, d, 1, 4, rng);
            REQUIRE(is_total_dominating(g, m.in_set));
        }
    }
}

TEST_CASE("ga finds the reference optimum with default parameters") {
    const Instance g = fig1();
    const long long opt = enumerate_optimal(g).best.total();
    CHECK(opt == 37);
    ga::Params params;
    params.seed = 1;
    Solution best = ga::run_ga(g, params);
    CHECK(best.total() == opt);
}

TEST_CASE("zero iterations return the best of the seeded constructions") {
    const Instance g = fig1();
    ga::Params params;
    params.seed = 42;
    params.n_iterations = 0;
    Solution got = ga::run_ga(g, params);

    // replay the documented draw order: the first initial_population_size
    // GRASP constructions consume the whole stream
    Xoshiro256ss rng(params.seed);
    ga::Population replay;
    for (int i = 0; i < params.initial_population_size; ++i)
        replay.try_insert(prune_to_solution(g, Members(9, 1), params.cutoff, &rng));
    CHECK(got.total() == replay.best().fitness);
    CHECK(got.members == replay.best().solution.members);
}

TEST_CASE("fixed seed reproduces the whole run") {
    Xoshiro256ss src(31);
    const Instance g = random_instance(src, 14, 0.4);
    ga::Params params;
    params.seed = 7;
    params.initial_population_size = 30;
    params.population_size = 8;
    params.n_iterations = 4;

    auto a = ga::run_ga_detailed(g, params);
    auto b = ga::run_ga_detailed(g, params);
    CHECK(a.best.members == b.best.members);
    CHECK(a.generation_best == b.generation_best);
    REQUIRE(a.final_population.size() == b.final_population.size());
    for (std::size_t i = 0; i < a.final_population.size(); ++i)
        CHECK(a.final_population.members()[i].solution.members ==
              b.final_population.members()[i].solution.members);
}

TEST_CASE("population invariants hold along a run") {
    Xoshiro256ss src(33);
    const Instance g = random_instance(src, 12, 0.5);
    ga::Params params;
    params.seed = 3;
    params.initial_population_size = 20;
    params.population_size = 6;
    params.n_iterations = 5;
    auto r = ga::run_ga_detailed(g, params);

    // best fitness never worsens across generations
    for (std::size_t i = 1; i < r.generation_best.size(); ++i)
        CHECK(r.generation_best[i] <= r.generation_best[i - 1]);

    // final population: sorted, unique (fitness,size), feasible
    const auto& mem = r.final_population.members();
    for (std::size_t i = 0; i < mem.size(); ++i) {
        REQUIRE(is_total_dominating(g, mem[i].solution.in_set));
        CHECK(mem[i].fitness == mem[i].solution.total());
        if (i > 0) {
            CHECK(std::pair(mem[i - 1].fitness, mem[i - 1].size) <=
                  std::pair(mem[i].fitness, mem[i].size));
            CHECK(std::pair(mem[i - 1].fitness, mem[i - 1].size) !=
                  std::pair(mem[i].fitness, mem[i].size));
        }
    }
}

TEST_CASE("default parameters match the published configuration") {
    const ga::Params p;
    CHECK(p.initial_population_size == 100);
    CHECK(p.population_size == 40);
    CHECK(p.cutoff == 30);
    CHECK(p.mutation_lo == 1);
    CHECK(p.mutation_hi == 4);
    CHECK(p.n_iterations == 20);
}

TEST_CASE("parameter validation") {
    ga::Params p;
    p.population_size = 1;
    CHECK_THROWS_AS(p.validate(), InvalidOptions);
    p = {};
    p.mutation_lo = 0;
    CHECK_THROWS_AS(p.validate(), InvalidOptions);
    p = {};
    p.initial_population_size = 10;
    CHECK_THROWS_AS(p.validate(), InvalidOptions);
}
