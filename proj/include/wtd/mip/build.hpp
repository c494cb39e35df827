#ifndef WTD_MIP_BUILD_HPP
#define WTD_MIP_BUILD_HPP

#include <algorithm>
#include <string>
#include <vector>

#include "wtd/mip/cuts.hpp"
#include "wtd/mip/model.hpp"
#include "wtd/solution.hpp"

namespace wtd::mip {

namespace detail {

inline std::string edge_var_name(const char* prefix, const Edge& e) {
    return std::string(prefix) + "_" + std::to_string(e.u) + "_" + std::to_string(e.v);
}

inline void add_x_variables(MipModel& model, const Instance& g, long long obj_weighted) {
    model.x_of.resize(g.vertex_count());
    for (int i = 0; i < g.vertex_count(); ++i) {
        Variable v;
        v.name = "x_" + std::to_string(i);
        v.kind = VarKind::Binary;
        v.lower = 0;
        v.upper = Rat(1);
        v.objective = obj_weighted ? Rat(g.vertex_weight(i)) : Rat(0);
        v.role = VarRole::Vertex;
        v.ref_a = i;
        v.priority = 100 * g.degree(i);
        model.x_of[i] = model.add_variable(std::move(v));
    }
}

inline void add_y_variables(MipModel& model, const Instance& g, VarKind kind) {
    model.y_of.resize(g.edge_count());
    for (int e = 0; e < g.edge_count(); ++e) {
        Variable v;
        v.name = edge_var_name("y", g.edge(e));
        v.kind = kind;
        v.lower = 0;
        v.upper = Rat(1);
        v.objective = Rat(g.edge(e).cost);
        v.role = VarRole::InternalEdge;
        v.ref_a = e;
        model.y_of[e] = model.add_variable(std::move(v));
    }
}

inline void add_tdom_constraints(MipModel& model, const Instance& g) {
    for (int i = 0; i < g.vertex_count(); ++i) {
        LinearConstraint c;
        c.name = "TDOM_" + std::to_string(i);
        c.tag = "TDOM";
        for (const Adjacent& a : g.adjacency(i)) c.terms.emplace_back(model.x_of[a.to], Rat(1));
        c.sense = Sense::Ge;
        c.rhs = 1;
        model.add_constraint(std::move(c));
    }
}

// y_e >= x_i + x_j - 1 for every edge (the F1/F2 internal-edge link; MA2
// uses the same row under its own tag, flipped when exporting verbatim)
inline void add_edge_product_lb(MipModel& model, const Instance& g, const std::string& tag,
                                const std::string& name_prefix, bool verbatim_flip) {
    for (int e = 0; e < g.edge_count(); ++e) {
        const Edge& ed = g.edge(e);
        LinearConstraint c;
        c.name = name_prefix + "_" + std::to_string(ed.u) + "_" + std::to_string(ed.v);
        c.tag = tag;
        c.terms.emplace_back(model.y_of[e], Rat(1));
        c.terms.emplace_back(model.x_of[ed.u], Rat(-1));
        c.terms.emplace_back(model.x_of[ed.v], Rat(-1));
        c.sense = verbatim_flip ? Sense::Le : Sense::Ge;
        c.rhs = -1;
        model.add_constraint(std::move(c));
    }
}

}  // namespace detail

inline void validate_options(Formulation f, const BuildOptions& o) {
    const bool xy_form = f == Formulation::F1 || f == Formulation::F2;
    if ((o.tdomy || o.clique_cover) && !xy_form)
        throw InvalidOptions("TDOMY/CLIQUE rows exist only for F1 and F2");
    if (o.lifted && !xy_form) throw InvalidOptions("lifting applies only to F1 and F2");
    if (o.extcost_init_k && f != Formulation::F2)
        throw InvalidOptions("extcost_init_k applies only to F2");
    if (o.extcost_init_k && *o.extcost_init_k < 1)
        throw InvalidOptions("extcost_init_k must be >= 1");
    if (o.verbatim && f != Formulation::MA2 && f != Formulation::MA3)
        throw InvalidOptions("verbatim export applies only to MA2 (MA3 is always verbatim)");
}

inline MipModel build_model(const Instance& g, Formulation f, const BuildOptions& options = {}) {
    validate_options(f, options);
    MipModel model;
    model.formulation = f;
    model.instance_name = g.name();
    model.n = g.vertex_count();
    model.m = g.edge_count();
    model.big_m = g.max_degree();
    model.big_l = g.max_edge_cost();
    model.options = options;

    const int n = model.n;

    switch (f) {
        case Formulation::F1: {
            detail::add_x_variables(model, g, true);
            detail::add_y_variables(model, g, VarKind::Continuous);
            for (int i = 0; i < n; ++i)
                for (const Adjacent& a : g.adjacency(i))
                    model.arcs.push_back({i, a.to, a.cost, a.edge});
            model.z_of.resize(model.arcs.size());
            for (std::size_t k = 0; k < model.arcs.size(); ++k) {
                const Arc& arc = model.arcs[k];
                Variable v;
                v.name = "z_" + std::to_string(arc.from) + "_" + std::to_string(arc.to);
                v.kind = VarKind::Continuous;
                v.lower = 0;
                v.upper = Rat(1);
                v.objective = Rat(arc.cost);
                v.role = VarRole::Arc;
                v.ref_a = arc.from;
                v.ref_b = arc.to;
                model.z_of[k] = model.add_variable(std::move(v));
            }

            detail::add_tdom_constraints(model, g);
            // x_i + sum of incoming assignments = 1
            for (int i = 0; i < n; ++i) {
                LinearConstraint c;
                c.name = "XZLINK1_" + std::to_string(i);
                c.tag = "XZLINK1";
                c.terms.emplace_back(model.x_of[i], Rat(1));
                for (std::size_t k = 0; k < model.arcs.size(); ++k)
                    if (model.arcs[k].to == i) c.terms.emplace_back(model.z_of[k], Rat(1));
                c.sense = Sense::Eq;
                c.rhs = 1;
                model.add_constraint(std::move(c));
            }
            // assignments only out of selected vertices; lifted form folds in y
            for (std::size_t k = 0; k < model.arcs.size(); ++k) {
                const Arc& arc = model.arcs[k];
                LinearConstraint c;
                c.tag = options.lifted ? "XZLINK2L" : "XZLINK2";
                c.name = std::string(options.lifted ? "XZLINK2L_" : "XZLINK2_") +
                         std::to_string(arc.from) + "_" + std::to_string(arc.to);
                c.terms.emplace_back(model.z_of[k], Rat(1));
                if (options.lifted) c.terms.emplace_back(model.y_of[arc.edge], Rat(1));
                c.terms.emplace_back(model.x_of[arc.from], Rat(-1));
                c.sense = Sense::Le;
                c.rhs = 0;
                model.add_constraint(std::move(c));
            }
            detail::add_edge_product_lb(model, g, "YZLINK", "YZLINK", false);
            break;
        }

        case Formulation::F2: {
            detail::add_x_variables(model, g, true);
            detail::add_y_variables(model, g, VarKind::Continuous);
            model.q_of.resize(n);
            for (int i = 0; i < n; ++i) {
                Variable v;
                v.name = "q_" + std::to_string(i);
                v.kind = VarKind::Continuous;
                v.lower = 0;
                v.objective = 1;
                v.role = VarRole::ExternalCost;
                v.ref_a = i;
                model.q_of[i] = model.add_variable(std::move(v));
            }

            detail::add_tdom_constraints(model, g);
            detail::add_edge_product_lb(model, g, "YZLINK", "YZLINK", false);
            const int init_k = options.extcost_init_k.value_or(5);
            for (int i = 0; i < n; ++i) {
                const int limit = std::min<int>(init_k, g.degree(i));
                for (int k = 1; k <= limit; ++k)
                    model.add_constraint(extcost_cut(g, i, k, options.lifted));
            }
            break;
        }

        case Formulation::MA1: {
            detail::add_x_variables(model, g, true);
            detail::add_y_variables(model, g, VarKind::Binary);
            model.z_of.resize(g.edge_count());
            for (int e = 0; e < g.edge_count(); ++e) {
                Variable v;
                v.name = detail::edge_var_name("z", g.edge(e));
                v.kind = VarKind::Binary;
                v.lower = 0;
                v.upper = Rat(1);
                v.objective = 0;
                v.role = VarRole::Arc;
                v.ref_a = g.edge(e).u;
                v.ref_b = g.edge(e).v;
                model.z_of[e] = model.add_variable(std::move(v));
            }

            detail::add_tdom_constraints(model, g);
            for (int e = 0; e < g.edge_count(); ++e) {
                const Edge& ed = g.edge(e);
                const std::string suffix =
                    "_" + std::to_string(ed.u) + "_" + std::to_string(ed.v);
                LinearConstraint c13;
                c13.name = "WTD1_3" + suffix;
                c13.tag = "WTD1.3";
                c13.terms = {{model.x_of[ed.u], Rat(1)},
                             {model.x_of[ed.v], Rat(1)},
                             {model.y_of[e], Rat(-1)}};
                c13.sense = Sense::Ge;
                c13.rhs = 0;
                model.add_constraint(std::move(c13));
            }
            for (int e = 0; e < g.edge_count(); ++e) {
                const Edge& ed = g.edge(e);
                const std::string suffix =
                    "_" + std::to_string(ed.u) + "_" + std::to_string(ed.v);
                for (int side = 0; side < 2; ++side) {
                    LinearConstraint c14;
                    c14.name = "WTD1_4" + suffix + (side ? "b" : "a");
                    c14.tag = "WTD1.4";
                    c14.terms = {{model.x_of[side ? ed.v : ed.u], Rat(1)},
                                 {model.z_of[e], Rat(-1)}};
                    c14.sense = Sense::Ge;
                    c14.rhs = 0;
                    model.add_constraint(std::move(c14));
                }
            }
            for (int e = 0; e < g.edge_count(); ++e) {
                const Edge& ed = g.edge(e);
                const std::string suffix =
                    "_" + std::to_string(ed.u) + "_" + std::to_string(ed.v);
                LinearConstraint c15;
                c15.name = "WTD1_5" + suffix;
                c15.tag = "WTD1.5";
                c15.terms = {{model.z_of[e], Rat(1)},
                             {model.x_of[ed.u], Rat(-1)},
                             {model.x_of[ed.v], Rat(-1)}};
                c15.sense = Sense::Ge;
                c15.rhs = -1;
                model.add_constraint(std::move(c15));

                LinearConstraint c16;
                c16.name = "WTD1_6" + suffix;
                c16.tag = "WTD1.6";
                c16.terms = {{model.y_of[e], Rat(1)}, {model.z_of[e], Rat(-1)}};
                c16.sense = Sense::Ge;
                c16.rhs = 0;
                model.add_constraint(std::move(c16));
            }
            for (int i = 0; i < n; ++i) {
                LinearConstraint c17;
                c17.name = "WTD1_7_" + std::to_string(i);
                c17.tag = "WTD1.7";
                c17.terms.emplace_back(model.x_of[i], Rat(1));
                for (const Adjacent& a : g.adjacency(i))
                    c17.terms.emplace_back(model.y_of[a.edge], Rat(1));
                c17.sense = Sense::Ge;
                c17.rhs = 1;
                model.add_constraint(std::move(c17));
            }
            break;
        }

        case Formulation::MA2: {
            detail::add_x_variables(model, g, true);
            detail::add_y_variables(model, g, VarKind::Binary);

            detail::add_tdom_constraints(model, g);
            for (int e = 0; e < g.edge_count(); ++e) {
                const Edge& ed = g.edge(e);
                LinearConstraint c13;
                c13.name = "WTD1_3_" + std::to_string(ed.u) + "_" + std::to_string(ed.v);
                c13.tag = "WTD1.3";
                c13.terms = {{model.x_of[ed.u], Rat(1)},
                             {model.x_of[ed.v], Rat(1)},
                             {model.y_of[e], Rat(-1)}};
                c13.sense = Sense::Ge;
                c13.rhs = 0;
                model.add_constraint(std::move(c13));
            }
            for (int i = 0; i < n; ++i) {
                LinearConstraint c17;
                c17.name = "WTD1_7_" + std::to_string(i);
                c17.tag = "WTD1.7";
                c17.terms.emplace_back(model.x_of[i], Rat(1));
                for (const Adjacent& a : g.adjacency(i))
                    c17.terms.emplace_back(model.y_of[a.edge], Rat(1));
                c17.sense = Sense::Ge;
                c17.rhs = 1;
                model.add_constraint(std::move(c17));
            }
            // the printed sense of WTD2.3 contradicts binary feasibility at
            // x_i = x_j = 0; the default build flips it to the YZLINK sense
            detail::add_edge_product_lb(model, g, "WTD2.3", "WTD2_3", options.verbatim);
            for (int i = 0; i < n; ++i) {
                LinearConstraint c24;
                c24.name = "WTD2_4_" + std::to_string(i);
                c24.tag = "WTD2.4";
                for (const Adjacent& a : g.adjacency(i))
                    c24.terms.emplace_back(model.y_of[a.edge], Rat(1));
                c24.terms.emplace_back(model.x_of[i], Rat(-model.big_m));
                c24.sense = Sense::Le;
                c24.rhs = 1;
                model.add_constraint(std::move(c24));
            }
            break;
        }

        case Formulation::MA3: {
            detail::add_x_variables(model, g, true);
            model.q_of.resize(n);
            const Rat q_upper(static_cast<long long>(n) * model.big_l);
            for (int i = 0; i < n; ++i) {
                Variable v;
                v.name = "q_" + std::to_string(i);
                v.kind = VarKind::Integer;
                v.lower = 0;
                v.upper = q_upper;
                v.objective = Rat(1, 2);
                v.role = VarRole::ExternalCost;
                v.ref_a = i;
                model.q_of[i] = model.add_variable(std::move(v));
            }

            detail::add_tdom_constraints(model, g);
            // exported verbatim: q_i >= 2(c_e x_i - L x_i - sum_{c_e' <= c_e} L x_j')
            for (int i = 0; i < n; ++i)
                for (const Adjacent& a : g.adjacency(i)) {
                    const Edge& ed = g.edge(a.edge);
                    LinearConstraint c32;
                    c32.name = "WTD3_2_" + std::to_string(i) + "_" + std::to_string(ed.u) +
                               "_" + std::to_string(ed.v);
                    c32.tag = "WTD3.2";
                    c32.terms.emplace_back(model.q_of[i], Rat(1));
                    Rat coeff_xi = Rat(-2) * Rat(a.cost) + Rat(2) * Rat(model.big_l);
                    if (!is_zero(coeff_xi)) c32.terms.emplace_back(model.x_of[i], coeff_xi);
                    for (const Adjacent& other : g.adjacency(i))
                        if (other.cost <= a.cost)
                            c32.terms.emplace_back(model.x_of[other.to],
                                                   Rat(2) * Rat(model.big_l));
                    c32.sense = Sense::Ge;
                    c32.rhs = 0;
                    model.add_constraint(std::move(c32));
                }
            for (int i = 0; i < n; ++i) {
                LinearConstraint c33;
                c33.name = "WTD3_3_" + std::to_string(i);
                c33.tag = "WTD3.3";
                c33.terms.emplace_back(model.q_of[i], Rat(1));
                long long incident_total = 0;
                for (const Adjacent& a : g.adjacency(i)) {
                    incident_total += a.cost;
                    if (a.cost != 0) c33.terms.emplace_back(model.x_of[a.to], Rat(-a.cost));
                }
                if (incident_total != 0)
                    c33.terms.emplace_back(model.x_of[i], Rat(-incident_total));
                c33.sense = Sense::Ge;
                c33.rhs = Rat(-incident_total);
                model.add_constraint(std::move(c33));
            }
            break;
        }
    }

    if (options.tdomy) {
        for (int i = 0; i < n; ++i) {
            LinearConstraint c;
            c.name = "TDOMY_" + std::to_string(i);
            c.tag = "TDOMY";
            for (const Adjacent& a : g.adjacency(i)) c.terms.emplace_back(model.y_of[a.edge], Rat(1));
            c.terms.emplace_back(model.x_of[i], Rat(-1));
            c.sense = Sense::Ge;
            c.rhs = 0;
            model.add_constraint(std::move(c));
        }
    }
    if (options.clique_cover) {
        int counter = 0;
        for (const auto& clique : edge_clique_cover(g)) {
            LinearConstraint c = clique_constraint(g, clique);
            c.name = "CLIQUE_" + std::to_string(counter++);
            model.add_constraint(std::move(c));
        }
    }
    return model;
}

/// Cheapest assignment of the auxiliary variables for x = chi(D); the yield
/// is the canonical integral encoding used by the validity and equivalence
/// checks. MA3's printed algebra is export-only, hence unsupported here.
inline std::vector<Rat> minimum_cost_completion(const Instance& g, const MipModel& model,
                                                const Members& in_set) {
    std::vector<Rat> values(model.variables.size(), 0);
    for (int i = 0; i < model.n; ++i) values[model.x_of[i]] = in_set[i] ? 1 : 0;

    auto cheapest_dominator = [&](int i) {
        for (const Adjacent& a : g.sorted_neighbors(i))
            if (in_set[a.to]) return a;
        throw InvalidOptions("completion requires a total dominating set");
    };

    switch (model.formulation) {
        case Formulation::F1: {
            for (int e = 0; e < model.m; ++e)
                values[model.y_of[e]] = (in_set[g.edge(e).u] && in_set[g.edge(e).v]) ? 1 : 0;
            for (int i = 0; i < model.n; ++i) {
                if (in_set[i]) continue;
                const Adjacent dominator = cheapest_dominator(i);
                for (std::size_t k = 0; k < model.arcs.size(); ++k)
                    if (model.arcs[k].from == dominator.to && model.arcs[k].to == i)
                        values[model.z_of[k]] = 1;
            }
            break;
        }
        case Formulation::F2: {
            for (int e = 0; e < model.m; ++e)
                values[model.y_of[e]] = (in_set[g.edge(e).u] && in_set[g.edge(e).v]) ? 1 : 0;
            for (int i = 0; i < model.n; ++i)
                if (!in_set[i]) values[model.q_of[i]] = Rat(cheapest_dominator(i).cost);
            break;
        }
        case Formulation::MA1:
        case Formulation::MA2: {
            for (int e = 0; e < model.m; ++e) {
                const bool internal = in_set[g.edge(e).u] && in_set[g.edge(e).v];
                values[model.y_of[e]] = internal ? 1 : 0;
                if (model.formulation == Formulation::MA1)
                    values[model.z_of[e]] = internal ? 1 : 0;
            }
            for (int i = 0; i < model.n; ++i)
                if (!in_set[i]) values[model.y_of[cheapest_dominator(i).edge]] = 1;
            break;
        }
        case Formulation::MA3:
            throw InvalidOptions("MA3 has no supported completion (verbatim-only export)");
    }
    return values;
}

}  // namespace wtd::mip

#endif
