// wtd: solvers, model export, and benchmarking for weighted total domination.
// Value output goes to stdout and is byte-stable for a fixed seed; timings
// and progress notes go to stderr.

#include <atomic>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <mutex>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "wtd/exact.hpp"
#include "wtd/genetic.hpp"
#include "wtd/heuristics.hpp"
#include "wtd/instance_io.hpp"
#include "wtd/lp/cut_loop.hpp"
#include "wtd/mip/build.hpp"
#include "wtd/mip/lp_format.hpp"
#include "wtd/report.hpp"

namespace {

using namespace wtd;

std::string join_members(const std::vector<int>& members) {
    std::string out;
    for (std::size_t i = 0; i < members.size(); ++i) {
        if (i) out += ",";
        out += std::to_string(members[i]);
    }
    return out;
}

std::vector<std::string> split_csv(const std::string& text) {
    std::vector<std::string> out;
    std::string item;
    std::istringstream in(text);
    while (std::getline(in, item, ','))
        if (!item.empty()) out.push_back(item);
    return out;
}

long long elapsed_ms(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration_cast<std::chrono::milliseconds>(
               std::chrono::steady_clock::now() - start)
        .count();
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

struct GenArgs {
    std::string family;
    int n = 0;
    double p = 0.0;
    int cu = 0;
    int id = 1;
    std::uint64_t seed = 0;
    std::string output;
};

int run_gen(const GenArgs& args) {
    GenSpec spec;
    spec.n = args.n;
    spec.p = args.p;
    spec.seed = args.seed;
    spec.id = args.id;
    if (args.family == "ma") {
        spec.family = Family::MA;
    } else if (args.family == "new") {
        spec.family = Family::NEW;
        if (args.cu != 10 && args.cu != 25 && args.cu != 50)
            throw InvalidOptions("--cu must be one of 10, 25, 50");
        spec.edge_weight_hi = args.cu;
        spec.vertex_weight_hi = 500 / args.cu;
    } else {
        throw InvalidOptions("--family must be ma or new");
    }
    const Instance g = generate(spec);
    if (args.output.empty()) {
        std::cout << serialize(g);
    } else {
        save_instance(g, args.output);
        std::cerr << "wrote " << args.output << " (" << g.vertex_count() << " vertices, "
                  << g.edge_count() << " edges)\n";
    }
    return 0;
}

int run_eval(const std::string& path, const std::string& set_text) {
    const Instance g = load_instance(path);
    std::vector<int> members;
    for (const std::string& tok : split_csv(set_text)) members.push_back(std::stoi(tok));
    for (int v : members)
        if (v < 0 || v >= g.vertex_count()) throw InvalidOptions("vertex out of range");
    auto b = evaluate(g, members_from_indices(g.vertex_count(), members));
    if (!b) {
        std::cout << "infeasible\n";
        return 0;
    }
    std::cout << "vertex=" << b->vertex_cost << " internal=" << b->internal_cost
              << " external=" << b->external_cost << " total=" << b->total << "\n";
    return 0;
}

int run_heur(const std::string& path) {
    const Instance g = load_instance(path);
    const auto start = std::chrono::steady_clock::now();
    const Solution constructed = starting_heuristic(g);
    const Solution polished = local_search(g, constructed);
    std::cerr << "heur took " << elapsed_ms(start) << " ms\n";
    std::cout << "construct w=" << constructed.total() << "\n";
    std::cout << "w=" << polished.total() << " members=" << join_members(polished.members)
              << "\n";
    return 0;
}

int run_grasp(const std::string& path, std::uint64_t seed, int cutoff, int samples) {
    const Instance g = load_instance(path);
    Xoshiro256ss rng(seed);
    const auto start = std::chrono::steady_clock::now();
    std::optional<Solution> best;
    for (int i = 0; i < samples; ++i) {
        GraspConfig cfg{cutoff, &rng};
        Solution s = grasp_construct(g, cfg);
        if (!best || s.total() < best->total()) best = std::move(s);
    }
    std::cerr << "grasp took " << elapsed_ms(start) << " ms\n";
    std::cout << "w=" << best->total() << " members=" << join_members(best->members) << "\n";
    return 0;
}

int run_ga_cmd(const std::string& path, const ga::Params& params) {
    const Instance g = load_instance(path);
    const auto start = std::chrono::steady_clock::now();
    const Solution best = ga::run_ga(g, params);
    std::cerr << "ga took " << elapsed_ms(start) << " ms\n";
    std::cout << "w=" << best.total() << " members=" << join_members(best.members) << "\n";
    return 0;
}

int run_exact(const std::string& path, const std::string& method, double timelimit_s,
              int limit_n) {
    const Instance g = load_instance(path);
    const auto start = std::chrono::steady_clock::now();
    ExactResult r;
    if (method == "enum") {
        r = enumerate_optimal(g, limit_n);
    } else if (method == "bb") {
        BnbOptions opts;
        opts.time_limit =
            std::chrono::milliseconds(static_cast<long long>(timelimit_s * 1000.0));
        r = branch_and_bound(g, opts);
    } else {
        throw InvalidOptions("--method must be bb or enum");
    }
    std::cerr << "exact took " << elapsed_ms(start) << " ms\n";
    std::cout << "w*=" << r.best.total() << " status="
              << (r.status == ExactResult::Status::Optimal ? "Optimal" : "TimeLimit") << "\n";
    std::cout << "members=" << join_members(r.best.members) << "\n";
    std::cout << "LB=" << r.lower_bound << " gap="
              << format_pct(optimality_gap_exact(r.best.total(), r.lower_bound))
              << " nodes=" << r.nodes_explored << "\n";
    return 0;
}

mip::BuildOptions parse_build_options(const std::string& cuts_text, bool lifted, int extk,
                                      bool verbatim, lp::CutFamilies* families_out) {
    mip::BuildOptions options;
    lp::CutFamilies families;
    for (const std::string& word : split_csv(cuts_text)) families = lp::parse_cut_family(word, families);
    options.tdomy = families.tdomy;
    options.clique_cover = families.clique;
    options.lifted = lifted;
    options.verbatim = verbatim;
    if (extk > 0) options.extcost_init_k = extk;
    if (families_out) *families_out = families;
    return options;
}

int run_export(const std::string& path, const std::string& form, const std::string& cuts_text,
               bool lifted, int extk, bool verbatim, const std::string& output) {
    const Instance g = load_instance(path);
    auto formulation = mip::parse_formulation(form);
    if (!formulation) throw InvalidOptions("unknown formulation: " + form);
    const mip::BuildOptions options =
        parse_build_options(cuts_text, lifted, extk, verbatim, nullptr);
    const mip::MipModel model = mip::build_model(g, *formulation, options);

    mip::write_model(model, output);
    std::string prio_path = output;
    if (prio_path.size() > 3 && prio_path.substr(prio_path.size() - 3) == ".lp")
        prio_path = prio_path.substr(0, prio_path.size() - 3);
    prio_path += ".prio";
    mip::write_priorities(model, prio_path);
    std::cerr << "wrote " << output << " and " << prio_path << "\n";
    std::cout << "variables=" << model.variables.size()
              << " constraints=" << model.constraints.size() << "\n";
    return 0;
}

int run_cutloop(const std::string& path, const std::string& form, const std::string& cuts_text,
                int rounds, bool lifted, int extk, double timelimit_s) {
    const Instance g = load_instance(path);
    auto formulation = mip::parse_formulation(form);
    if (!formulation) throw InvalidOptions("unknown formulation: " + form);
    lp::CutFamilies families;
    const mip::BuildOptions options =
        parse_build_options(cuts_text, lifted, extk, false, &families);
    // "all" means all applicable; the external-cost family only exists on F2
    bool asked_all = false;
    for (const std::string& word : split_csv(cuts_text))
        if (word == "all") asked_all = true;
    if (asked_all && *formulation != mip::Formulation::F2) families.extcost = false;
    // separation-only families; the static rows stay out of the base model
    mip::BuildOptions base = options;
    base.tdomy = false;
    base.clique_cover = false;
    if (base.extcost_init_k && *formulation != mip::Formulation::F2) base.extcost_init_k.reset();

    const auto start = std::chrono::steady_clock::now();
    const auto deadline = start + std::chrono::milliseconds(
                                      static_cast<long long>(timelimit_s * 1000.0));
    auto run = lp::root_cut_loop(g, *formulation, families, rounds, base, [&] {
        return std::chrono::steady_clock::now() >= deadline;
    });
    std::cerr << "cutloop took " << elapsed_ms(start) << " ms\n";

    char line[160];
    for (std::size_t k = 0; k < run.rounds.size(); ++k) {
        const auto& r = run.rounds[k];
        std::snprintf(line, sizeof line,
                      "round %zu bound=%.6f tdomy=%d clique=%d extcost=%d", k + 1, r.bound,
                      r.tdomy_added, r.clique_added, r.extcost_added);
        std::cout << line << "\n";
    }
    std::snprintf(line, sizeof line, "final bound=%.6f rounds=%zu", run.final_bound(),
                  run.rounds.size());
    std::cout << line << "\n";

    const Solution primal = lp::lp_guided_solution(g, run);
    std::snprintf(line, sizeof line, "primal w=%lld lp_gap=%.2f", primal.total(),
                  lp::lp_gap_pct(primal.total(), run.final_bound()));
    std::cout << line << "\n";
    return 0;
}

int run_verify(const std::string& model_path, const std::string& assignment_path) {
    const mip::MipModel model = mip::load_model(model_path);
    const auto assignment = mip::parse_assignment(read_file(assignment_path));
    const mip::VerifyReport report = mip::verify_assignment(model, assignment);
    std::cout << "objective=" << mip::format_rat(report.objective) << "\n";
    for (const auto& v : report.violated)
        std::cout << "violated " << v.constraint << " by " << mip::format_rat(v.amount) << "\n";
    for (const auto& b : report.bound_violations) std::cout << "bound " << b << "\n";
    std::cout << (report.feasible() ? "feasible" : "infeasible") << "\n";
    return 0;
}

struct BenchTask {
    std::string instance_path;
    std::string instance_name;
    std::string solver;
    std::uint64_t seed = 0;
};

BenchRecord run_bench_task(const BenchTask& task, double timelimit_s) {
    const Instance g = load_instance(task.instance_path);
    BenchRecord rec;
    rec.instance = g.name();
    rec.solver = task.solver;
    rec.seed = task.seed;
    const auto start = std::chrono::steady_clock::now();
    try {
        if (task.solver == "heur") {
            const Solution s = local_search(g, starting_heuristic(g));
            rec.w_best = s.total();
            rec.status = "Feasible";
        } else if (task.solver == "grasp") {
            Xoshiro256ss rng(task.seed);
            std::optional<long long> best;
            for (int i = 0; i < 100; ++i) {
                GraspConfig cfg{30, &rng};
                const long long w = grasp_construct(g, cfg).total();
                if (!best || w < *best) best = w;
            }
            rec.w_best = *best;
            rec.nodes = 100;
            rec.status = "Feasible";
        } else if (task.solver == "ga") {
            ga::Params params;
            params.seed = task.seed;
            const Solution s = ga::run_ga(g, params);
            rec.w_best = s.total();
            rec.nodes = static_cast<std::uint64_t>(params.n_iterations);
            rec.status = "Feasible";
        } else if (task.solver == "bb" || task.solver == "enum") {
            ExactResult r;
            if (task.solver == "bb") {
                BnbOptions opts;
                opts.time_limit = std::chrono::milliseconds(
                    static_cast<long long>(timelimit_s * 1000.0));
                r = branch_and_bound(g, opts);
            } else {
                r = enumerate_optimal(g);
            }
            rec.w_best = r.best.total();
            rec.lower_bound = r.lower_bound;
            rec.optimality_gap = optimality_gap_exact(r.best.total(), r.lower_bound);
            rec.nodes = r.nodes_explored;
            rec.status = r.status == ExactResult::Status::Optimal ? "Optimal" : "TimeLimit";
        } else {
            throw InvalidOptions("unknown solver: " + task.solver);
        }
    } catch (const TooLarge&) {
        rec.status = "TooLarge";
    }
    rec.runtime_ms = elapsed_ms(start);
    return rec;
}

int run_bench(const std::string& dir, const std::string& solvers_text,
              const std::string& seeds_text, const std::string& output, int jobs,
              double timelimit_s) {
    std::vector<std::string> solvers = split_csv(solvers_text);
    std::vector<std::uint64_t> seeds;
    for (const std::string& tok : split_csv(seeds_text)) seeds.push_back(std::stoull(tok));
    if (solvers.empty() || seeds.empty())
        throw InvalidOptions("bench needs at least one solver and one seed");

    std::vector<std::string> files;
    for (const auto& entry : std::filesystem::directory_iterator(dir))
        if (entry.is_regular_file() && entry.path().extension() == ".wtdp")
            files.push_back(entry.path().string());
    std::sort(files.begin(), files.end());
    if (files.empty()) throw IoError("no .wtdp instances under " + dir);

    std::vector<BenchTask> tasks;
    for (const auto& file : files)
        for (const auto& solver : solvers)
            for (const auto seed : seeds) tasks.push_back({file, "", solver, seed});

    std::vector<BenchRecord> records(tasks.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (;;) {
            const std::size_t k = next.fetch_add(1);
            if (k >= tasks.size()) return;
            records[k] = run_bench_task(tasks[k], timelimit_s);
        }
    };
    if (jobs <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < jobs; ++t) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }

    // primal gaps are relative to the best exact value found per instance
    for (auto& rec : records) {
        if (rec.solver != "heur" && rec.solver != "grasp" && rec.solver != "ga") continue;
        std::optional<long long> w_mip;
        for (const auto& other : records) {
            if (other.instance != rec.instance) continue;
            if (other.solver != "bb" && other.solver != "enum") continue;
            if (other.w_best && (!w_mip || *other.w_best < *w_mip)) w_mip = other.w_best;
        }
        if (w_mip && rec.w_best) rec.primal_gap = primal_gap_exact(*rec.w_best, *w_mip);
    }

    std::sort(records.begin(), records.end(), [](const BenchRecord& a, const BenchRecord& b) {
        return std::tie(a.instance, a.solver, a.seed) < std::tie(b.instance, b.solver, b.seed);
    });

    std::ostringstream csv;
    csv << bench_csv_header() << "\n";
    for (const auto& rec : records) csv << to_csv_row(rec) << "\n";
    if (output.empty()) {
        std::cout << csv.str();
    } else {
        std::ofstream out(output);
        if (!out) throw IoError("cannot write " + output);
        out << csv.str();
        std::cerr << "wrote " << output << " (" << records.size() << " records)\n";
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"weighted total domination solver toolkit"};
    app.require_subcommand(1);
    std::function<int()> action;

    // gen
    auto* gen = app.add_subcommand("gen", "generate a random instance");
    auto gen_args = std::make_shared<GenArgs>();
    gen->add_option("--family", gen_args->family, "ma or new")->required();
    gen->add_option("--n", gen_args->n, "vertex count")->required();
    gen->add_option("--p", gen_args->p, "edge probability")->required();
    gen->add_option("--cu", gen_args->cu, "edge-weight upper bound (new family)");
    gen->add_option("--id", gen_args->id, "replicate index (default 1)");
    gen->add_option("--seed", gen_args->seed, "generator seed")->required();
    gen->add_option("-o,--output", gen_args->output, "output file (stdout if omitted)");
    gen->callback([gen_args, &action] { action = [gen_args] { return run_gen(*gen_args); }; });

    // eval
    auto* eval_cmd = app.add_subcommand("eval", "evaluate a vertex set");
    auto eval_path = std::make_shared<std::string>();
    auto eval_set = std::make_shared<std::string>();
    eval_cmd->add_option("instance", *eval_path, "instance file")->required();
    eval_cmd->add_option("--set", *eval_set, "comma-separated vertex indices")->required();
    eval_cmd->callback([eval_path, eval_set, &action] {
        action = [eval_path, eval_set] { return run_eval(*eval_path, *eval_set); };
    });

    // heur
    auto* heur = app.add_subcommand("heur", "starting heuristic plus local search");
    auto heur_path = std::make_shared<std::string>();
    heur->add_option("instance", *heur_path, "instance file")->required();
    heur->callback(
        [heur_path, &action] { action = [heur_path] { return run_heur(*heur_path); }; });

    // grasp
    auto* grasp = app.add_subcommand("grasp", "randomized constructions, best kept");
    auto grasp_path = std::make_shared<std::string>();
    auto grasp_seed = std::make_shared<std::uint64_t>(0);
    auto grasp_cutoff = std::make_shared<int>(30);
    auto grasp_samples = std::make_shared<int>(100);
    grasp->add_option("instance", *grasp_path)->required();
    grasp->add_option("--seed", *grasp_seed, "RNG seed")->required();
    grasp->add_option("--cutoff", *grasp_cutoff, "randomization cutoff (default 30)");
    grasp->add_option("--samples", *grasp_samples, "constructions (default 100)");
    grasp->callback([=, &action] {
        action = [=] { return run_grasp(*grasp_path, *grasp_seed, *grasp_cutoff, *grasp_samples); };
    });

    // ga
    auto* ga_cmd = app.add_subcommand("ga", "genetic algorithm");
    auto ga_path = std::make_shared<std::string>();
    auto ga_params = std::make_shared<ga::Params>();
    ga_cmd->add_option("instance", *ga_path)->required();
    ga_cmd->add_option("--seed", ga_params->seed, "RNG seed")->required();
    ga_cmd->add_option("--init", ga_params->initial_population_size, "initial pool (default 100)");
    ga_cmd->add_option("--pop", ga_params->population_size, "population size (default 40)");
    ga_cmd->add_option("--cutoff", ga_params->cutoff, "GRASP cutoff (default 30)");
    ga_cmd->add_option("--ml", ga_params->mutation_lo, "mutation lower bound (default 1)");
    ga_cmd->add_option("--mu", ga_params->mutation_hi, "mutation upper bound (default 4)");
    ga_cmd->add_option("--iters", ga_params->n_iterations, "generations (default 20)");
    ga_cmd->callback([=, &action] {
        action = [=] { return run_ga_cmd(*ga_path, *ga_params); };
    });

    // exact
    auto* exact_cmd = app.add_subcommand("exact", "exact solvers");
    auto exact_path = std::make_shared<std::string>();
    auto exact_method = std::make_shared<std::string>("bb");
    auto exact_tl = std::make_shared<double>(1800.0);
    auto exact_limit = std::make_shared<int>(25);
    exact_cmd->add_option("instance", *exact_path)->required();
    exact_cmd->add_option("--method", *exact_method, "bb (default) or enum");
    exact_cmd->add_option("--timelimit", *exact_tl, "seconds (default 1800)");
    exact_cmd->add_option("--limit-n", *exact_limit, "enumeration size guard (default 25)");
    exact_cmd->callback([=, &action] {
        action = [=] { return run_exact(*exact_path, *exact_method, *exact_tl, *exact_limit); };
    });

    // export
    auto* export_cmd = app.add_subcommand("export", "write an LP file plus priorities");
    auto export_path = std::make_shared<std::string>();
    auto export_form = std::make_shared<std::string>();
    auto export_cuts = std::make_shared<std::string>();
    auto export_lifted = std::make_shared<bool>(false);
    auto export_extk = std::make_shared<int>(0);
    auto export_verbatim = std::make_shared<bool>(false);
    auto export_out = std::make_shared<std::string>();
    export_cmd->add_option("instance", *export_path)->required();
    export_cmd->add_option("--form", *export_form, "f1|f2|ma1|ma2|ma3")->required();
    export_cmd->add_option("--cuts", *export_cuts, "static families: tdomy,clique");
    export_cmd->add_flag("--lifted", *export_lifted, "lifted link/objective cuts");
    export_cmd->add_option("--extk", *export_extk, "F2 initial cuts per vertex (default 5)");
    export_cmd->add_flag("--verbatim", *export_verbatim, "archival MA2 sense");
    export_cmd->add_option("-o,--output", *export_out, "output .lp path")->required();
    export_cmd->callback([=, &action] {
        action = [=] {
            return run_export(*export_path, *export_form, *export_cuts, *export_lifted,
                              *export_extk, *export_verbatim, *export_out);
        };
    });

    // cutloop
    auto* cutloop = app.add_subcommand("cutloop", "root cutting-plane loop");
    auto cl_path = std::make_shared<std::string>();
    auto cl_form = std::make_shared<std::string>();
    auto cl_cuts = std::make_shared<std::string>();
    auto cl_rounds = std::make_shared<int>(10);
    auto cl_lifted = std::make_shared<bool>(false);
    auto cl_extk = std::make_shared<int>(0);
    auto cl_tl = std::make_shared<double>(1800.0);
    cutloop->add_option("instance", *cl_path)->required();
    cutloop->add_option("--form", *cl_form, "f1 or f2")->required();
    cutloop->add_option("--cuts", *cl_cuts, "families: tdomy,clique,extcosts,all");
    cutloop->add_option("--rounds", *cl_rounds, "separation rounds (default 10)");
    cutloop->add_flag("--lifted", *cl_lifted, "lifted variants");
    cutloop->add_option("--extk", *cl_extk, "F2 initial cuts per vertex");
    cutloop->add_option("--timelimit", *cl_tl, "seconds (default 1800)");
    cutloop->callback([=, &action] {
        action = [=] {
            return run_cutloop(*cl_path, *cl_form, *cl_cuts, *cl_rounds, *cl_lifted, *cl_extk,
                               *cl_tl);
        };
    });

    // verify
    auto* verify = app.add_subcommand("verify", "check an assignment against a model");
    auto verify_model = std::make_shared<std::string>();
    auto verify_assign = std::make_shared<std::string>();
    verify->add_option("model", *verify_model, "exported .lp file")->required();
    verify->add_option("assignment", *verify_assign, "one `<var> <value>` per line")->required();
    verify->callback([=, &action] {
        action = [=] { return run_verify(*verify_model, *verify_assign); };
    });

    // bench
    auto* bench = app.add_subcommand("bench", "run solvers over an instance directory");
    auto bench_dir = std::make_shared<std::string>();
    auto bench_solvers = std::make_shared<std::string>();
    auto bench_seeds = std::make_shared<std::string>();
    auto bench_out = std::make_shared<std::string>();
    auto bench_jobs = std::make_shared<int>(1);
    auto bench_tl = std::make_shared<double>(1800.0);
    bench->add_option("dir", *bench_dir, "directory of .wtdp files")->required();
    bench->add_option("--solvers", *bench_solvers, "heur,grasp,ga,bb,enum")->required();
    bench->add_option("--seeds", *bench_seeds, "comma-separated seeds")->required();
    bench->add_option("-o,--output", *bench_out, "CSV output (stdout if omitted)");
    bench->add_option("--jobs", *bench_jobs, "parallel tasks (default 1)");
    bench->add_option("--timelimit", *bench_tl, "per-solve seconds (default 1800)");
    bench->callback([=, &action] {
        action = [=] {
            return run_bench(*bench_dir, *bench_solvers, *bench_seeds, *bench_out, *bench_jobs,
                             *bench_tl);
        };
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        return action ? action() : 1;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
