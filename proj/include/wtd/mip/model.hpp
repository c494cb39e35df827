#ifndef WTD_MIP_MODEL_HPP
#define WTD_MIP_MODEL_HPP

#include <boost/rational.hpp>
#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "wtd/errors.hpp"
#include "wtd/instance.hpp"

namespace wtd::mip {

using Rat = boost::rational<long long>;

inline double to_double(const Rat& r) {
    return static_cast<double>(r.numerator()) / static_cast<double>(r.denominator());
}

// this boost release mutually recurses on rational-vs-int comparisons, so
// sign tests go through the numerator
inline bool is_zero(const Rat& r) { return r.numerator() == 0; }
inline bool is_negative(const Rat& r) { return r.numerator() < 0; }

enum class VarKind { Binary, Continuous, Integer };

/// What a variable models; drives point extraction and completions.
enum class VarRole {
    Vertex,        // x_i
    InternalEdge,  // y_e
    Arc,           // z_ij (directed, F1) or z_e (undirected, MA1)
    ExternalCost,  // q_i
};

struct Variable {
    std::string name;
    VarKind kind = VarKind::Continuous;
    Rat lower = 0;
    std::optional<Rat> upper;  // nullopt = unbounded above
    Rat objective = 0;
    VarRole role = VarRole::Vertex;
    int ref_a = -1;  // vertex id, edge id, or arc tail
    int ref_b = -1;  // arc head
    int priority = 0;
};

enum class Sense { Le, Ge, Eq };

struct LinearConstraint {
    std::string name;
    std::string tag;  // constraint family
    std::vector<std::pair<int, Rat>> terms;
    Sense sense = Sense::Ge;
    Rat rhs = 0;
};

enum class Formulation { F1, F2, MA1, MA2, MA3 };

inline const char* formulation_name(Formulation f) {
    switch (f) {
        case Formulation::F1: return "F1";
        case Formulation::F2: return "F2";
        case Formulation::MA1: return "MA1";
        case Formulation::MA2: return "MA2";
        case Formulation::MA3: return "MA3";
    }
    return "?";
}

inline std::optional<Formulation> parse_formulation(std::string s) {
    for (auto& c : s) c = char(std::toupper(static_cast<unsigned char>(c)));
    if (s == "F1") return Formulation::F1;
    if (s == "F2") return Formulation::F2;
    if (s == "MA1") return Formulation::MA1;
    if (s == "MA2") return Formulation::MA2;
    if (s == "MA3") return Formulation::MA3;
    return std::nullopt;
}

struct BuildOptions {
    bool lifted = false;        // F1: XZLINK2L replaces XZLINK2; F2: lifted objective cuts
    bool tdomy = false;         // F1/F2
    bool clique_cover = false;  // F1/F2: one CLIQUE row per edge-clique-cover clique
    bool verbatim = false;      // MA2: export the printed (infeasible) sense of WTD2.3
    std::optional<int> extcost_init_k;  // F2 only; default 5
};

struct Arc {
    int from, to;
    long long cost;
    int edge;
};

struct MipModel {
    Formulation formulation = Formulation::F1;
    std::string instance_name;
    int n = 0;
    int m = 0;
    long long big_m = 0;  // max vertex degree
    long long big_l = 0;  // max edge cost
    BuildOptions options;

    std::vector<Variable> variables;
    std::vector<LinearConstraint> constraints;

    std::vector<Arc> arcs;  // F1 only: (i,j) ordered by i then j
    std::vector<int> x_of;  // vertex -> variable index
    std::vector<int> y_of;  // edge -> variable index
    std::vector<int> z_of;  // arc (F1) or edge (MA1) -> variable index
    std::vector<int> q_of;  // vertex -> variable index

    int add_variable(Variable v) {
        variables.push_back(std::move(v));
        return static_cast<int>(variables.size()) - 1;
    }

    void add_constraint(LinearConstraint c) { constraints.push_back(std::move(c)); }

    /// Append a separated cut under a unique "<TAG>_<k>"-style name when the
    /// separator left the name blank.
    void add_cut(LinearConstraint c) {
        if (c.name.empty()) {
            int count = 0;
            for (const auto& existing : constraints)
                if (existing.tag == c.tag) ++count;
            std::string base = c.tag;
            for (auto& ch : base)
                if (ch == '-' || ch == '.') ch = '_';
            c.name = base + "_cut" + std::to_string(count);
        }
        constraints.push_back(std::move(c));
    }

    std::unordered_map<std::string, int> name_index() const {
        std::unordered_map<std::string, int> index;
        index.reserve(variables.size());
        for (int j = 0; j < static_cast<int>(variables.size()); ++j)
            index.emplace(variables[j].name, j);
        return index;
    }
};

/// Per-role view of an LP solution vector.
struct FractionalPoint {
    std::vector<double> x_vals;
    std::vector<double> y_vals;
    std::vector<double> z_vals;
    std::vector<double> q_vals;
};

inline FractionalPoint extract_point(const MipModel& model, const std::vector<double>& values) {
    FractionalPoint p;
    p.x_vals.resize(model.n, 0.0);
    p.y_vals.resize(model.m, 0.0);
    if (!model.z_of.empty()) p.z_vals.resize(model.z_of.size(), 0.0);
    if (!model.q_of.empty()) p.q_vals.resize(model.n, 0.0);
    for (int i = 0; i < model.n; ++i) p.x_vals[i] = values[model.x_of[i]];
    for (int e = 0; e < model.m; ++e) p.y_vals[e] = values[model.y_of[e]];
    for (std::size_t a = 0; a < model.z_of.size(); ++a) p.z_vals[a] = values[model.z_of[a]];
    for (int i = 0; i < model.n && !model.q_of.empty(); ++i)
        p.q_vals[i] = values[model.q_of[i]];
    return p;
}

}  // namespace wtd::mip

#endif
