#ifndef WTD_MIP_CUTS_HPP
#define WTD_MIP_CUTS_HPP

#include <algorithm>
#include <string>
#include <vector>

#include "wtd/mip/model.hpp"

namespace wtd::mip {

/// The k-th external-cost cut for vertex i over N'(i) (costs ascending,
/// neighbor index breaking ties), in the F2 variable layout
/// (x at 0..n-1, y at n..n+m-1, q at n+m..n+m+n-1):
///   q_i + sum_{k'<k} (c_k - c_k') x_{k'} + c_k x_i
///       [- sum_{k'<k} (c_k - c_k') y_{k'i}  when lifted]  >= c_k
inline LinearConstraint extcost_cut(const Instance& g, int i, int k, bool lifted) {
    const auto& order = g.sorted_neighbors(i);
    if (k < 1 || k > static_cast<int>(order.size()))
        throw IndexOutOfRange("external-cost cut index k=" + std::to_string(k) +
                              " outside 1..|N'(" + std::to_string(i) + ")|");
    const int n = g.vertex_count();
    const long long c_k = order[k - 1].cost;

    LinearConstraint c;
    c.tag = lifted ? "EXTCOSTS-L" : "EXTCOSTS";
    c.name = std::string(lifted ? "EXTCOSTSL_" : "EXTCOSTS_") + std::to_string(i) + "_" +
             std::to_string(k);
    c.terms.emplace_back(n + g.edge_count() + i, Rat(1));  // q_i
    for (int kp = 0; kp < k - 1; ++kp) {
        const long long diff = c_k - order[kp].cost;
        if (diff == 0) continue;
        c.terms.emplace_back(order[kp].to, Rat(diff));
        if (lifted) c.terms.emplace_back(n + order[kp].edge, Rat(-diff));
    }
    if (c_k != 0) c.terms.emplace_back(i, Rat(c_k));
    c.sense = Sense::Ge;
    c.rhs = Rat(c_k);
    return c;
}

/// sum_{e in E(C)} y_e - sum_{i in C} x_i >= -1 in the shared (x,y) layout.
inline LinearConstraint clique_constraint(const Instance& g, const std::vector<int>& clique) {
    LinearConstraint c;
    c.tag = "CLIQUE";
    for (std::size_t a = 0; a < clique.size(); ++a)
        for (std::size_t b = a + 1; b < clique.size(); ++b) {
            const int e = g.edge_between(clique[a], clique[b]);
            if (e < 0) throw InvalidOptions("vertex set is not a clique");
            c.terms.emplace_back(g.vertex_count() + e, Rat(1));
        }
    for (int v : clique) c.terms.emplace_back(v, Rat(-1));
    c.sense = Sense::Ge;
    c.rhs = -1;
    std::sort(c.terms.begin(), c.terms.end(),
              [](const auto& l, const auto& r) { return l.first < r.first; });
    return c;
}

namespace detail {

inline std::vector<int> common_neighbors(const Instance& g, const std::vector<int>& clique) {
    std::vector<int> result;
    for (const Adjacent& a : g.adjacency(clique.front())) {
        bool in_all = true;
        for (std::size_t t = 1; t < clique.size() && in_all; ++t)
            if (std::find(clique.begin(), clique.end(), a.to) != clique.end() ||
                g.edge_between(clique[t], a.to) < 0)
                in_all = false;
        if (in_all) result.push_back(a.to);
    }
    return result;
}

}  // namespace detail

/// Greedy clique cover: grow a clique from each yet-uncovered edge, always
/// absorbing the highest-degree common neighbor, until no candidate is left.
/// Every edge ends up inside at least one returned clique.
inline std::vector<std::vector<int>> edge_clique_cover(const Instance& g) {
    std::vector<std::vector<int>> cover;
    std::vector<std::uint8_t> covered(g.edge_count(), 0);
    for (int e = 0; e < g.edge_count(); ++e) {
        if (covered[e]) continue;
        std::vector<int> clique = {g.edge(e).u, g.edge(e).v};
        for (;;) {
            std::vector<int> candidates = detail::common_neighbors(g, clique);
            if (candidates.empty()) break;
            std::sort(candidates.begin(), candidates.end(), [&](int a, int b) {
                if (g.degree(a) != g.degree(b)) return g.degree(a) > g.degree(b);
                return a < b;
            });
            clique.push_back(candidates.front());
        }
        std::sort(clique.begin(), clique.end());
        for (std::size_t a = 0; a < clique.size(); ++a)
            for (std::size_t b = a + 1; b < clique.size(); ++b)
                covered[g.edge_between(clique[a], clique[b])] = 1;
        cover.push_back(std::move(clique));
    }
    return cover;
}

struct SeparatedCut {
    LinearConstraint constraint;
    double violation = 0.0;
    std::vector<int> clique;  // CLIQUE cuts only
    int vertex = -1;          // TDOMY / EXTCOSTS cuts
    int k = -1;               // EXTCOSTS cuts
};

/// Heuristic clique separation: seed each edge not already covered by a cut
/// emitted this round, grow by the best-scoring common neighbor, re-scoring
/// after each growth step. A candidate k enters C when the incremental
/// violation x~_k - sum_{i in C} y~_{ik} exceeds the growth epsilon.
inline std::vector<SeparatedCut> separate_clique(const Instance& g, const FractionalPoint& point,
                                                 double eps) {
    constexpr double growth_eps = 0.0001;
    std::vector<SeparatedCut> cuts;
    std::vector<std::uint8_t> covered(g.edge_count(), 0);

    for (int e = 0; e < g.edge_count(); ++e) {
        if (covered[e]) continue;
        std::vector<int> clique = {g.edge(e).u, g.edge(e).v};
        for (;;) {
            std::vector<int> candidates = detail::common_neighbors(g, clique);
            std::sort(candidates.begin(), candidates.end(), [&](int a, int b) {
                const double sa = g.degree(a) * (point.x_vals[a] + growth_eps);
                const double sb = g.degree(b) * (point.x_vals[b] + growth_eps);
                if (sa != sb) return sa > sb;
                return a < b;
            });
            bool grew = false;
            for (int k : candidates) {
                double gain = point.x_vals[k];
                for (int i : clique) gain -= point.y_vals[g.edge_between(i, k)];
                if (gain > growth_eps) {
                    clique.push_back(k);
                    grew = true;
                    break;
                }
            }
            if (!grew) break;
        }

        double violation = -1.0;
        for (int v : clique) violation += point.x_vals[v];
        for (std::size_t a = 0; a < clique.size(); ++a)
            for (std::size_t b = a + 1; b < clique.size(); ++b)
                violation -= point.y_vals[g.edge_between(clique[a], clique[b])];
        if (violation > eps) {
            std::sort(clique.begin(), clique.end());
            for (std::size_t a = 0; a < clique.size(); ++a)
                for (std::size_t b = a + 1; b < clique.size(); ++b)
                    covered[g.edge_between(clique[a], clique[b])] = 1;
            SeparatedCut cut;
            cut.constraint = clique_constraint(g, clique);
            cut.violation = violation;
            cut.clique = std::move(clique);
            cuts.push_back(std::move(cut));
        }
    }
    return cuts;
}

/// Enumerative separation of sum_{e in delta(i)} y_e >= x_i.
inline std::vector<SeparatedCut> separate_tdomy(const Instance& g, const FractionalPoint& point,
                                                double eps) {
    std::vector<SeparatedCut> cuts;
    for (int i = 0; i < g.vertex_count(); ++i) {
        double lhs = 0.0;
        for (const Adjacent& a : g.adjacency(i)) lhs += point.y_vals[a.edge];
        const double violation = point.x_vals[i] - lhs;
        if (violation > eps) {
            SeparatedCut cut;
            cut.violation = violation;
            cut.vertex = i;
            LinearConstraint& c = cut.constraint;
            c.tag = "TDOMY";
            c.name = "TDOMY_" + std::to_string(i);
            for (const Adjacent& a : g.adjacency(i))
                c.terms.emplace_back(g.vertex_count() + a.edge, Rat(1));
            c.terms.emplace_back(i, Rat(-1));
            c.sense = Sense::Ge;
            c.rhs = 0;
            cuts.push_back(std::move(cut));
        }
    }
    return cuts;
}

/// Enumerative separation of the external-cost cuts with k > k_skip
/// (the first k_skip per vertex are in the model from initialization).
inline std::vector<SeparatedCut> separate_extcost(const Instance& g, const FractionalPoint& point,
                                                  int k_skip, double eps, bool lifted) {
    std::vector<SeparatedCut> cuts;
    for (int i = 0; i < g.vertex_count(); ++i) {
        const auto& order = g.sorted_neighbors(i);
        for (int k = k_skip + 1; k <= static_cast<int>(order.size()); ++k) {
            const long long c_k = order[k - 1].cost;
            double rhs = double(c_k) - double(c_k) * point.x_vals[i];
            for (int kp = 0; kp < k - 1; ++kp) {
                const double diff = double(c_k - order[kp].cost);
                rhs -= diff * point.x_vals[order[kp].to];
                if (lifted) rhs += diff * point.y_vals[order[kp].edge];
            }
            const double violation = rhs - point.q_vals[i];
            if (violation > eps) {
                SeparatedCut cut;
                cut.violation = violation;
                cut.vertex = i;
                cut.k = k;
                cut.constraint = extcost_cut(g, i, k, lifted);
                cuts.push_back(std::move(cut));
            }
        }
    }
    return cuts;
}

}  // namespace wtd::mip

#endif
