#ifndef WTD_LP_CUT_LOOP_HPP
#define WTD_LP_CUT_LOOP_HPP

#include <set>
#include <string>
#include <vector>

#include "wtd/heuristics.hpp"
#include "wtd/lp/simplex.hpp"
#include "wtd/mip/build.hpp"
#include "wtd/mip/cuts.hpp"

namespace wtd::lp {

struct CutFamilies {
    bool tdomy = false;
    bool clique = false;
    bool extcost = false;

    static CutFamilies all() { return {true, true, true}; }
    bool any() const { return tdomy || clique || extcost; }
};

/// Accepts "tdomy", "clique", "extcosts"/"extcost" (comma-splitting is the
/// caller's job).
inline CutFamilies parse_cut_family(const std::string& word, CutFamilies base = {}) {
    std::string s;
    for (char c : word) s += char(std::tolower(static_cast<unsigned char>(c)));
    if (s == "tdomy")
        base.tdomy = true;
    else if (s == "clique")
        base.clique = true;
    else if (s == "extcost" || s == "extcosts")
        base.extcost = true;
    else if (s == "all")
        base = CutFamilies::all();
    else
        throw InvalidOptions("unknown cut family: " + word);
    return base;
}

struct RoundStats {
    double bound = 0.0;
    int tdomy_added = 0;
    int clique_added = 0;
    int extcost_added = 0;

    int total_added() const { return tdomy_added + clique_added + extcost_added; }
};

struct CutLoopResult {
    mip::MipModel model;  // base model plus every accepted cut
    LpResult final;
    std::vector<RoundStats> rounds;  // one entry per LP solve

    double final_bound() const { return final.objective; }
};

/// Root separation loop: solve the relaxation, separate the requested
/// families on the fractional point, append violated rows, repeat up to
/// max_rounds separation rounds. On F2 the external-cost family is always
/// enumerated to closure regardless of the requested families, since those
/// rows carry the objective.
inline CutLoopResult root_cut_loop(const Instance& g, mip::Formulation formulation,
                                   CutFamilies families, int max_rounds = 10,
                                   mip::BuildOptions base_options = {},
                                   const std::function<bool()>& should_stop = {}) {
    if (formulation != mip::Formulation::F1 && formulation != mip::Formulation::F2)
        throw InvalidOptions("the cutting loop runs on F1 or F2 only");
    if (families.extcost && formulation != mip::Formulation::F2)
        throw InvalidOptions("EXTCOSTS cuts exist only for F2");
    if (max_rounds < 0) throw InvalidOptions("negative round limit");

    constexpr double eps = 1e-6;
    CutLoopResult result;
    result.model = mip::build_model(g, formulation, base_options);
    mip::MipModel& model = result.model;
    const bool on_f2 = formulation == mip::Formulation::F2;
    const int init_k = on_f2 ? base_options.extcost_init_k.value_or(5) : 0;

    std::set<int> tdomy_added;
    std::set<std::pair<int, int>> extcost_added;
    std::set<std::vector<int>> cliques_added;

    for (int round = 0; round <= max_rounds; ++round) {
        result.final = solve_lp_robust(model);
        result.rounds.push_back({result.final.objective, 0, 0, 0});
        if (result.final.status != LpStatus::Optimal) return result;
        if (round == max_rounds) break;
        if (should_stop && should_stop()) break;

        RoundStats& stats = result.rounds.back();
        const mip::FractionalPoint point = mip::extract_point(model, result.final.values);

        if (on_f2) {
            for (auto& cut : mip::separate_extcost(g, point, init_k, eps,
                                                   base_options.lifted)) {
                if (!extcost_added.insert({cut.vertex, cut.k}).second) continue;
                model.add_cut(std::move(cut.constraint));
                ++stats.extcost_added;
            }
        }
        if (families.tdomy) {
            for (auto& cut : mip::separate_tdomy(g, point, eps)) {
                if (!tdomy_added.insert(cut.vertex).second) continue;
                model.add_cut(std::move(cut.constraint));
                ++stats.tdomy_added;
            }
        }
        if (families.clique) {
            for (auto& cut : mip::separate_clique(g, point, eps)) {
                if (!cliques_added.insert(cut.clique).second) continue;
                model.add_cut(std::move(cut.constraint));
                ++stats.clique_added;
            }
        }
        if (stats.total_added() == 0) break;
    }
    return result;
}

inline double lp_gap_pct(long long best_known, double lp_value) {
    if (best_known == 0) throw DivisionByZero("LP gap with w_B = 0");
    return 100.0 * (double(best_known) - lp_value) / double(best_known);
}

/// The study metric for one instance/configuration.
inline double lp_gap(const Instance& g, mip::Formulation formulation, CutFamilies families,
                     long long best_known, int max_rounds = 10,
                     mip::BuildOptions base_options = {}) {
    const CutLoopResult run = root_cut_loop(g, formulation, families, max_rounds, base_options);
    return lp_gap_pct(best_known, run.final_bound());
}

/// LP-guided rounding: order vertices by the final fractional point and run
/// the cover construction, then polish with local search.
inline Solution lp_guided_solution(const Instance& g, const CutLoopResult& run) {
    const mip::FractionalPoint point = mip::extract_point(run.model, run.final.values);
    const Solution covered =
        greedy_cover(g, lp_guided_order(g, point.x_vals), Members(g.vertex_count(), 0));
    return local_search(g, covered);
}

}  // namespace wtd::lp

#endif
