// Acceptance suite: one pass/fail line per criterion, exit 0 only if all
// criteria hold. Wall-clock limits are part of the criteria, so this binary
// is meant to run on an otherwise idle machine in a Release build.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "wtd/exact.hpp"
#include "wtd/genetic.hpp"
#include "wtd/heuristics.hpp"
#include "wtd/instance_io.hpp"
#include "wtd/lp/cut_loop.hpp"
#include "wtd/mip/build.hpp"
#include "wtd/mip/lp_format.hpp"
#include "wtd/report.hpp"

using namespace wtd;
using Clock = std::chrono::steady_clock;

namespace {

struct Harness {
    int failures = 0;

    void criterion(int number, const std::string& label, bool pass,
                   const std::string& detail = "") {
        std::printf("[%s] criterion %d: %s", pass ? "PASS" : "FAIL", number, label.c_str());
        if (!detail.empty()) std::printf(" -- %s", detail.c_str());
        std::printf("\n");
        std::fflush(stdout);
        if (!pass) ++failures;
    }
};

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

Instance fig1() {
    return Instance(9, {1, 8, 1, 5, 1, 7, 1, 9, 1},
                    {{0, 1, 6},
                     {1, 2, 7},
                     {0, 3, 2},
                     {3, 4, 5},
                     {1, 4, 3},
                     {2, 5, 3},
                     {4, 5, 3},
                     {3, 6, 3},
                     {6, 7, 2},
                     {4, 7, 6},
                     {7, 8, 2},
                     {5, 8, 4}},
                    "fig1");
}

Instance path4() {
    return Instance(4, {1, 1, 1, 1}, {{0, 1, 1}, {1, 2, 1}, {2, 3, 1}}, "path4");
}

Instance make_instance(int n, double p, std::uint64_t seed) {
    GenSpec spec;
    spec.n = n;
    spec.p = p;
    spec.seed = seed;
    spec.id = 1;
    return generate(spec);
}

Members random_feasible_set(const Instance& g, Xoshiro256ss& rng) {
    const int n = g.vertex_count();
    Members in_set(n, 0);
    for (int v = 0; v < n; ++v) in_set[v] = rng.bounded(2) ? 1 : 0;
    for (;;) {
        int uncovered = -1;
        for (int v = 0; v < n && uncovered < 0; ++v) {
            bool cov = false;
            for (const auto& a : g.adjacency(v))
                if (in_set[a.to]) cov = true;
            if (!cov) uncovered = v;
        }
        if (uncovered < 0) return in_set;
        const auto& adj = g.adjacency(uncovered);
        in_set[adj[rng.bounded(adj.size())].to] = 1;
    }
}

std::string describe(const ExactResult& r) {
    std::string members;
    for (std::size_t i = 0; i < r.best.members.size(); ++i)
        members += (i ? "," : "") + std::to_string(r.best.members[i]);
    return "w=" + std::to_string(r.best.total()) + " members={" + members + "}";
}

// ---------------------------------------------------------------- criteria

void criterion_1(Harness& h) {
    const Instance g = fig1();
    const auto t0 = Clock::now();
    const ExactResult en = enumerate_optimal(g);
    const double t_enum = seconds_since(t0);
    const auto t1 = Clock::now();
    const ExactResult bb = branch_and_bound(g);
    const double t_bb = seconds_since(t1);

    const std::vector<int> expected = {2, 3, 5, 6};
    const ObjectiveBreakdown expected_breakdown{14, 6, 18, 38};
    auto matches = [&](const ExactResult& r) {
        return r.best.total() == 38 && r.best.members == expected && r.best.breakdown &&
               *r.best.breakdown == expected_breakdown;
    };
    const bool pass = matches(en) && matches(bb) && t_enum < 1.0 && t_bb < 1.0;
    std::string detail;
    if (!pass) {
        detail = "expected w=38 members={2,3,5,6}; enumeration gives " + describe(en) +
                 ", branch-and-bound gives " + describe(bb) +
                 "; the instance as printed admits {0,3,5,8} at 14+6+17=37, so the expected "
                 "optimum is unattainable (verified by exhaustive enumeration)";
    }
    h.criterion(1, "reference-instance reproduction (enum + B&B, <1s each)", pass, detail);
}

void criterion_2(Harness& h) {
    const auto t0 = Clock::now();
    const double p_values[] = {0.3, 0.6, 0.9};
    int mismatches = 0;
    Xoshiro256ss rng(20250801);
    for (int i = 0; i < 100; ++i) {
        const int n = 6 + int(rng.bounded(9));  // [6,14]
        const Instance g = make_instance(n, p_values[i % 3], 1000 + i);
        const ExactResult en = enumerate_optimal(g);
        const ExactResult bb = branch_and_bound(g);
        if (en.best.total() != bb.best.total()) ++mismatches;
    }
    const double elapsed = seconds_since(t0);
    const bool pass = mismatches == 0 && elapsed < 60.0;
    char detail[128];
    std::snprintf(detail, sizeof detail, "%d mismatches, %.1f s", mismatches, elapsed);
    h.criterion(2, "oracle equivalence on 100 random instances (<60s)", pass, detail);
}

void criterion_3(Harness& h) {
    Xoshiro256ss rng(20250802);
    long long checked = 0, wrong = 0;
    for (int i = 0; i < 200; ++i) {
        const int n = 4 + int(rng.bounded(9));  // [4,12]
        const Instance g = make_instance(n, 0.3 + 0.3 * double(i % 3), 2000 + i);
        for (int rep = 0; rep < 200; ++rep) {
            const Members d = random_feasible_set(g, rng);
            const long long base = evaluate(g, d)->total;
            const ScoreState st = ScoreState::init(g, d);
            for (int v = 0; v < g.vertex_count(); ++v) {
                Members changed = d;
                changed[v] = d[v] ? 0 : 1;
                const auto full = evaluate(g, changed);
                ++checked;
                if (d[v]) {
                    const auto inc = delta_remove(g, st, d, v);
                    if (full && (!inc || *inc != base - full->total)) ++wrong;
                    if (!full && inc) ++wrong;
                } else {
                    if (delta_add(g, d, v) != base - full->total) ++wrong;
                }
            }
        }
    }
    char detail[128];
    std::snprintf(detail, sizeof detail, "%lld move evaluations, %lld mismatches", checked,
                  wrong);
    h.criterion(3, "delta evaluation equals full re-evaluation (exact)", wrong == 0, detail);
}

void criterion_4(Harness& h) {
    std::string detail;
    bool pass = true;

    // feasible certified local optima across a seeded suite
    Xoshiro256ss rng(20250803);
    for (int i = 0; i < 40 && pass; ++i) {
        const Instance g = make_instance(6 + int(rng.bounded(10)), 0.3 + 0.2 * double(i % 3),
                                         3000 + i);
        const Solution s = local_search(g, starting_heuristic(g));
        if (!is_total_dominating(g, s.in_set)) {
            pass = false;
            detail = "infeasible chain output on " + g.name();
            break;
        }
        const ScoreState st = ScoreState::init(g, s.in_set);
        for (int v = 0; v < g.vertex_count(); ++v) {
            if (s.in_set[v]) {
                const auto d = delta_remove(g, st, s.in_set, v);
                if (d && *d > 0) pass = false;
            } else if (delta_add(g, s.in_set, v) > 0) {
                pass = false;
            }
        }
        if (!pass) detail = "not a 1-exchange local optimum on " + g.name();
    }

    // the path optimum
    if (pass) {
        const Solution p = local_search(path4(), starting_heuristic(path4()));
        if (p.total() != 5) {
            pass = false;
            detail = "path result " + std::to_string(p.total()) + " != 5";
        }
    }

    // GA on the reference instance
    if (pass) {
        const Instance g = fig1();
        for (std::uint64_t seed = 1; seed <= 10; ++seed) {
            ga::Params params;
            params.seed = seed;
            const long long got = ga::run_ga(g, params).total();
            if (got != 38) {
                pass = false;
                detail = "GA(seed=" + std::to_string(seed) + ") returns " +
                         std::to_string(got) +
                         ", not 38; 37 is the true enumerated optimum of the instance as "
                         "printed, so the 38 expectation is unattainable";
                break;
            }
        }
    }
    h.criterion(4, "heuristic chain and GA reproduction", pass, detail);
}

void criterion_5(Harness& h) {
    long long violations = 0, encodings = 0;
    const double p_values[] = {0.3, 0.5, 0.8};
    for (int i = 0; i < 50; ++i) {
        const Instance g = make_instance(5 + i % 6, p_values[i % 3], 5000 + i);  // n in [5,10]
        const int n = g.vertex_count();

        std::vector<std::uint32_t> adj(n, 0);
        for (const Edge& e : g.edges()) {
            adj[e.u] |= 1u << e.v;
            adj[e.v] |= 1u << e.u;
        }
        const std::uint32_t full = (1u << n) - 1;
        std::vector<int> edges_inside(full + 1, 0);
        std::vector<std::uint8_t> is_clique(full + 1, 1);
        for (std::uint32_t mask = 1; mask <= full; ++mask) {
            const int v = std::countr_zero(mask);
            const std::uint32_t rest = mask & (mask - 1);
            edges_inside[mask] =
                edges_inside[rest] + std::popcount(adj[v] & rest);
            is_clique[mask] = is_clique[rest] && (adj[v] & rest) == rest;
        }

        for (std::uint32_t d = 0; d <= full; ++d) {
            bool feasible = true;
            for (int v = 0; v < n && feasible; ++v)
                if ((adj[v] & d) == 0) feasible = false;
            if (!feasible) continue;
            ++encodings;
            Members in_set(n, 0);
            for (int v = 0; v < n; ++v) in_set[v] = (d >> v) & 1u;

            // TDOMY: a selected vertex has at least one incident internal edge
            for (int v = 0; v < n; ++v)
                if (in_set[v] && std::popcount(adj[v] & d) < 1) ++violations;

            // CLIQUE over every clique of the instance
            for (std::uint32_t c = 1; c <= full; ++c) {
                if (!is_clique[c]) continue;
                const std::uint32_t inside = c & d;
                if (edges_inside[inside] < std::popcount(inside) - 1) ++violations;
            }

            // XZLINK2L with the canonical assignment: j's dominator is its
            // cheapest selected neighbor
            std::vector<int> dominator(n, -1);
            for (int v = 0; v < n; ++v) {
                if (in_set[v]) continue;
                for (const Adjacent& a : g.sorted_neighbors(v))
                    if (in_set[a.to]) {
                        dominator[v] = a.to;
                        break;
                    }
            }
            for (int i2 = 0; i2 < n; ++i2)
                for (const Adjacent& a : g.adjacency(i2)) {
                    const int j = a.to;
                    const int y = (in_set[i2] && in_set[j]) ? 1 : 0;
                    const int z = (!in_set[j] && dominator[j] == i2) ? 1 : 0;
                    if (y + z > (in_set[i2] ? 1 : 0)) ++violations;
                }

            // EXTCOSTS and the lifted variant, q at the canonical value
            for (int v = 0; v < n; ++v) {
                long long q = 0;
                if (!in_set[v]) q = *external_cost_of(g, in_set, v);
                const auto& order = g.sorted_neighbors(v);
                for (std::size_t k = 1; k <= order.size(); ++k) {
                    const long long c_k = order[k - 1].cost;
                    long long rhs = c_k - c_k * (in_set[v] ? 1 : 0);
                    long long lifted_rhs = rhs;
                    for (std::size_t kp = 0; kp + 1 < k; ++kp) {
                        const long long diff = c_k - order[kp].cost;
                        const int xk = in_set[order[kp].to] ? 1 : 0;
                        rhs -= diff * xk;
                        lifted_rhs -= diff * xk;
                        if (in_set[v] && xk) lifted_rhs += diff;  // y_{k'v} = 1
                    }
                    if (q < rhs) ++violations;
                    if (q < lifted_rhs) ++violations;
                }
            }
        }
    }
    char detail[128];
    std::snprintf(detail, sizeof detail, "%lld encodings, %lld violations", encodings,
                  violations);
    h.criterion(5, "valid inequalities hold on every integral encoding", violations == 0,
                detail);
}

void criterion_6(Harness& h) {
    int failures = 0;
    double worst = 0.0;
    const double p_values[] = {0.3, 0.5, 0.8};
    for (int i = 0; i < 50; ++i) {
        const int n = 6 + i % 15;  // [6,20]
        const Instance g = make_instance(n, p_values[i % 3], 6000 + i);

        mip::BuildOptions closure;
        closure.extcost_init_k = n;
        const double f1 = lp::solve_lp_robust(mip::build_model(g, mip::Formulation::F1)).objective;
        const double f2 =
            lp::solve_lp_robust(mip::build_model(g, mip::Formulation::F2, closure)).objective;

        mip::BuildOptions f1_lift;
        f1_lift.lifted = true;
        const double f1l =
            lp::solve_lp_robust(mip::build_model(g, mip::Formulation::F1, f1_lift)).objective;
        mip::BuildOptions f2_lift = closure;
        f2_lift.lifted = true;
        const double f2l =
            lp::solve_lp_robust(mip::build_model(g, mip::Formulation::F2, f2_lift)).objective;

        for (double diff : {std::abs(f1 - f2), std::abs(f1 - f1l), std::abs(f2 - f2l)}) {
            worst = std::max(worst, diff);
            if (diff > 1e-6) ++failures;
        }
    }
    char detail[128];
    std::snprintf(detail, sizeof detail, "50 instances, worst deviation %.2e", worst);
    h.criterion(6, "Benders projection identity and lifting invariance (1e-6)", failures == 0,
                detail);
}

void criterion_7(Harness& h) {
    bool pass = true;
    std::string detail;
    const double p_values[] = {0.35, 0.6, 0.85};
    for (int i = 0; i < 12 && pass; ++i) {
        const Instance g = make_instance(8 + i % 9, p_values[i % 3], 7000 + i);
        for (auto formulation : {mip::Formulation::F1, mip::Formulation::F2}) {
            const bool f2 = formulation == mip::Formulation::F2;
            std::vector<lp::CutFamilies> singles = {{true, false, false}, {false, true, false}};
            if (f2) singles.push_back({false, false, true});
            lp::CutFamilies all{true, true, f2};

            double best_single = -1e100;
            for (const auto& family : singles) {
                const auto run = lp::root_cut_loop(g, formulation, family, 10);
                if (run.final.status != lp::LpStatus::Optimal) pass = false;
                for (std::size_t k = 1; k < run.rounds.size(); ++k)
                    if (run.rounds[k].bound < run.rounds[k - 1].bound - 1e-6) {
                        pass = false;
                        detail = "bound regressed on " + g.name();
                    }
                if (run.rounds.size() > 11) pass = false;  // 10 separation rounds max
                best_single = std::max(best_single, run.final_bound());
            }
            const auto all_run = lp::root_cut_loop(g, formulation, all, 10);
            if (all_run.final_bound() < best_single - 1e-6) {
                pass = false;
                detail = "all-families bound below a single family on " + g.name();
            }
        }
    }
    h.criterion(7, "cut-loop monotonicity, round limit, family dominance", pass, detail);
}

void criterion_8(Harness& h) {
    long long mismatches = 0, encodings = 0;
    const double p_values[] = {0.3, 0.5, 0.8};
    for (int i = 0; i < 50; ++i) {
        const Instance g = make_instance(5 + i % 6, p_values[i % 3], 5000 + i);
        const int n = g.vertex_count();
        const mip::MipModel f1 = mip::build_model(g, mip::Formulation::F1);
        const mip::MipModel f2 = mip::build_model(g, mip::Formulation::F2);
        const mip::MipModel ma1 = mip::build_model(g, mip::Formulation::MA1);
        const mip::MipModel ma2 = mip::build_model(g, mip::Formulation::MA2);

        std::vector<std::uint32_t> adj(n, 0);
        for (const Edge& e : g.edges()) {
            adj[e.u] |= 1u << e.v;
            adj[e.v] |= 1u << e.u;
        }
        for (std::uint32_t d = 0; d < (1u << n); ++d) {
            bool feasible = true;
            for (int v = 0; v < n && feasible; ++v)
                if ((adj[v] & d) == 0) feasible = false;
            if (!feasible) continue;
            ++encodings;
            Members in_set(n, 0);
            for (int v = 0; v < n; ++v) in_set[v] = (d >> v) & 1u;
            const long long want = evaluate(g, in_set)->total;
            for (const mip::MipModel* m : {&f1, &f2, &ma1, &ma2}) {
                const auto report =
                    mip::verify_assignment(*m, mip::minimum_cost_completion(g, *m, in_set));
                if (!report.feasible() || report.objective != mip::Rat(want)) ++mismatches;
            }
        }
    }
    char detail[128];
    std::snprintf(detail, sizeof detail, "%lld encodings x 4 formulations, %lld mismatches",
                  encodings, mismatches);
    h.criterion(8, "formulation objective equivalence via verify_assignment", mismatches == 0,
                detail);
}

void criterion_9(Harness& h) {
    const Gaps gaps = compute_gaps(769, 686, 769, 686);
    const std::string primal = format_pct(gaps.primal);
    h.criterion(9, "primal-gap arithmetic reproduces 12.10", primal == "12.10",
                "computed " + primal);
}

// run a CLI invocation, capture stdout bytes
bool cli_capture(const std::string& cli, const std::string& args, const std::string& outfile) {
    const std::string command = cli + " " + args + " > " + outfile + " 2>/dev/null";
    return std::system(command.c_str()) == 0;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

std::string strip_runtime_column(const std::string& csv) {
    std::istringstream in(csv);
    std::ostringstream out;
    std::string line;
    while (std::getline(in, line)) {
        std::istringstream cells(line);
        std::string cell;
        int idx = 0;
        bool first = true;
        while (std::getline(cells, cell, ',')) {
            if (idx++ == 3) continue;  // runtime_ms
            out << (first ? "" : ",") << cell;
            first = false;
        }
        out << "\n";
    }
    return out.str();
}

void criterion_10(Harness& h) {
    const char* cli = std::getenv("WTD_CLI");
    if (!cli || !*cli) {
        h.criterion(10, "CLI determinism", false, "WTD_CLI not set");
        return;
    }
    namespace fs = std::filesystem;
    const fs::path dir = fs::temp_directory_path() / "wtd_acceptance";
    fs::create_directories(dir / "instances");

    const Instance g = make_instance(14, 0.4, 90001);
    save_instance(g, (dir / "instances" / "a.wtdp").string());
    const Instance g2 = make_instance(10, 0.6, 90002);
    save_instance(g2, (dir / "instances" / "b.wtdp").string());
    const std::string inst = (dir / "instances" / "a.wtdp").string();

    const std::vector<std::pair<std::string, bool>> commands = {
        {"gen --family ma --n 15 --p 0.5 --id 1 --seed 11", false},
        {"eval " + inst + " --set 0,1,2,3,4,5,6,7,8,9,10,11,12,13", false},
        {"heur " + inst, false},
        {"grasp " + inst + " --seed 5", false},
        {"ga " + inst + " --seed 3 --init 30 --pop 8 --iters 5", false},
        {"exact " + inst, false},
        {"cutloop " + inst + " --form f2 --cuts all", false},
        {"bench " + (dir / "instances").string() + " --solvers heur,bb --seeds 1", true},
    };
    bool pass = true;
    std::string detail;
    int index = 0;
    for (const auto& [args, is_csv] : commands) {
        const std::string out1 = (dir / ("out_" + std::to_string(index) + "_1.txt")).string();
        const std::string out2 = (dir / ("out_" + std::to_string(index) + "_2.txt")).string();
        ++index;
        if (!cli_capture(cli, args, out1) || !cli_capture(cli, args, out2)) {
            pass = false;
            detail = "command failed: " + args;
            break;
        }
        std::string a = slurp(out1), b = slurp(out2);
        if (is_csv) {
            a = strip_runtime_column(a);
            b = strip_runtime_column(b);
        }
        if (a.empty() || a != b) {
            pass = false;
            detail = "outputs differ for: " + args;
            break;
        }
    }
    h.criterion(10, "CLI value output is byte-identical across reruns", pass, detail);
}

}  // namespace

int main() {
    Harness h;
    const auto t0 = Clock::now();
    criterion_1(h);
    criterion_2(h);
    criterion_3(h);
    criterion_4(h);
    criterion_5(h);
    criterion_6(h);
    criterion_7(h);
    criterion_8(h);
    criterion_9(h);
    criterion_10(h);
    std::printf("acceptance: %d/10 criteria passed in %.1f s\n", 10 - h.failures,
                seconds_since(t0));
    return h.failures == 0 ? 0 : 1;
}
