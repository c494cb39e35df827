#ifndef WTD_MIP_LP_FORMAT_HPP
#define WTD_MIP_LP_FORMAT_HPP

#include <cctype>
#include <fstream>
#include <sstream>
#include <string>
#include <unordered_map>
#include <vector>

#include "wtd/mip/model.hpp"

namespace wtd::mip {

/// Exact decimal rendering; every coefficient we emit has a 2^a*5^b
/// denominator (integers everywhere, 1/2 in the MA3 objective).
inline std::string format_rat(const Rat& r) {
    long long num = r.numerator();
    const long long den = r.denominator();
    if (den == 1) return std::to_string(num);
    long long d = den;
    int twos = 0, fives = 0;
    while (d % 2 == 0) d /= 2, ++twos;
    while (d % 5 == 0) d /= 5, ++fives;
    if (d != 1) throw IoError("coefficient " + std::to_string(num) + "/" +
                              std::to_string(den) + " has no finite decimal form");
    const int digits = std::max(twos, fives);
    long long scale = 1;
    for (int i = 0; i < digits; ++i) scale *= 10;
    const bool negative = num < 0;
    unsigned long long scaled =
        static_cast<unsigned long long>(negative ? -num : num) * (scale / den);
    std::string frac = std::to_string(scaled % scale);
    frac.insert(frac.begin(), digits - frac.size(), '0');
    while (frac.size() > 1 && frac.back() == '0') frac.pop_back();
    std::string out = (negative ? "-" : "") + std::to_string(scaled / scale);
    if (!(frac == "0")) out += "." + frac;
    return out;
}

namespace detail {

inline std::string format_terms(const MipModel& model,
                                const std::vector<std::pair<int, Rat>>& terms) {
    std::string out;
    bool first = true;
    for (const auto& [var, coeff] : terms) {
        if (is_zero(coeff)) continue;
        const bool negative = is_negative(coeff);
        const Rat mag = negative ? -coeff : coeff;
        std::string piece = model.variables[var].name;
        if (mag != Rat(1)) piece = format_rat(mag) + " " + piece;
        if (first)
            out += (negative ? "- " : "") + piece;
        else
            out += (negative ? " - " : " + ") + piece;
        first = false;
    }
    return out;
}

inline const char* sense_text(Sense s) {
    switch (s) {
        case Sense::Le: return "<=";
        case Sense::Ge: return ">=";
        case Sense::Eq: return "=";
    }
    return "?";
}

}  // namespace detail

inline std::string write_model(const MipModel& model) {
    std::ostringstream out;
    out << "\\ wtd-lp formulation=" << formulation_name(model.formulation)
        << " instance=" << model.instance_name << " bigm=" << model.big_m
        << " bigl=" << model.big_l << "\n";
    out << "Minimize\n obj: ";
    std::vector<std::pair<int, Rat>> objective;
    for (int j = 0; j < static_cast<int>(model.variables.size()); ++j)
        if (!is_zero(model.variables[j].objective)) objective.emplace_back(j, model.variables[j].objective);
    out << detail::format_terms(model, objective) << "\n";

    out << "Subject To\n";
    for (const LinearConstraint& c : model.constraints)
        out << " " << c.name << ": " << detail::format_terms(model, c.terms) << " "
            << detail::sense_text(c.sense) << " " << format_rat(c.rhs) << "\n";

    out << "Bounds\n";
    for (const Variable& v : model.variables) {
        if (v.upper)
            out << " " << format_rat(v.lower) << " <= " << v.name << " <= "
                << format_rat(*v.upper) << "\n";
        else
            out << " " << v.name << " >= " << format_rat(v.lower) << "\n";
    }

    std::string binaries, generals;
    for (const Variable& v : model.variables) {
        if (v.kind == VarKind::Binary) binaries += " " + v.name;
        if (v.kind == VarKind::Integer) generals += " " + v.name;
    }
    if (!binaries.empty()) out << "Binaries\n" << binaries << "\n";
    if (!generals.empty()) out << "Generals\n" << generals << "\n";
    out << "End\n";
    return out.str();
}

inline void write_model(const MipModel& model, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write model file: " + path);
    out << write_model(model);
    if (!out) throw IoError("write failed: " + path);
}

/// Branching-priority sidecar: one `<varname> <priority>` line per variable
/// with a nonzero priority (the x variables, at 100 * degree).
inline std::string write_priorities(const MipModel& model) {
    std::ostringstream out;
    for (const Variable& v : model.variables)
        if (v.priority != 0) out << v.name << " " << v.priority << "\n";
    return out.str();
}

inline void write_priorities(const MipModel& model, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write priority file: " + path);
    out << write_priorities(model);
    if (!out) throw IoError("write failed: " + path);
}

namespace detail {

inline Rat parse_decimal(const std::string& tok, std::size_t lineno) {
    std::size_t pos = 0;
    bool negative = false;
    if (pos < tok.size() && (tok[pos] == '+' || tok[pos] == '-')) {
        negative = tok[pos] == '-';
        ++pos;
    }
    long long integer = 0, frac = 0, scale = 1;
    bool any_digit = false;
    while (pos < tok.size() && std::isdigit(static_cast<unsigned char>(tok[pos]))) {
        integer = integer * 10 + (tok[pos] - '0');
        any_digit = true;
        ++pos;
    }
    if (pos < tok.size() && tok[pos] == '.') {
        ++pos;
        while (pos < tok.size() && std::isdigit(static_cast<unsigned char>(tok[pos]))) {
            frac = frac * 10 + (tok[pos] - '0');
            scale *= 10;
            any_digit = true;
            ++pos;
        }
    }
    if (!any_digit || pos != tok.size())
        throw ParseError(lineno, "bad number '" + tok + "'");
    Rat value = Rat(integer) + Rat(frac, scale);
    return negative ? -value : value;
}

inline bool is_number_start(const std::string& tok) {
    return !tok.empty() && (std::isdigit(static_cast<unsigned char>(tok[0])) || tok[0] == '.');
}

struct ParsedExpr {
    std::vector<std::pair<std::string, Rat>> terms;
};

inline ParsedExpr parse_expr(const std::string& text, std::size_t lineno) {
    std::istringstream in(text);
    ParsedExpr expr;
    std::string tok;
    int sign = 1;
    std::optional<Rat> coeff;
    while (in >> tok) {
        if (tok == "+") {
            if (coeff) throw ParseError(lineno, "dangling coefficient");
            sign = 1;
        } else if (tok == "-") {
            if (coeff) throw ParseError(lineno, "dangling coefficient");
            sign = -1;
        } else if (is_number_start(tok)) {
            if (coeff) throw ParseError(lineno, "two coefficients in a row");
            coeff = parse_decimal(tok, lineno);
        } else {
            Rat c = coeff ? *coeff : Rat(1);
            if (sign < 0) c = -c;
            expr.terms.emplace_back(tok, c);
            coeff.reset();
            sign = 1;
        }
    }
    if (coeff) throw ParseError(lineno, "trailing coefficient without variable");
    return expr;
}

}  // namespace detail

/// Reads back the dialect produced by write_model (one item per line).
inline MipModel parse_model(const std::string& text) {
    MipModel model;
    std::unordered_map<std::string, int> index;

    auto intern = [&](const std::string& name, std::size_t lineno) {
        auto it = index.find(name);
        if (it == index.end()) throw ParseError(lineno, "undeclared variable '" + name + "'");
        return it->second;
    };

    enum class Section { Preamble, Objective, Constraints, Bounds, Binaries, Generals, Done };
    Section section = Section::Preamble;

    std::istringstream in(text);
    std::string raw;
    std::size_t lineno = 0;
    std::vector<std::pair<std::string, Rat>> objective_terms;
    struct PendingConstraint {
        std::string name;
        detail::ParsedExpr expr;
        Sense sense;
        Rat rhs;
    };
    std::vector<PendingConstraint> pending;

    while (std::getline(in, raw)) {
        ++lineno;
        if (!raw.empty() && raw[0] == '\\') {
            // metadata comment written by write_model
            std::istringstream meta(raw.substr(1));
            std::string word;
            while (meta >> word) {
                auto eq = word.find('=');
                if (eq == std::string::npos) continue;
                const std::string key = word.substr(0, eq), value = word.substr(eq + 1);
                if (key == "formulation") {
                    if (auto f = parse_formulation(value)) model.formulation = *f;
                } else if (key == "instance") {
                    model.instance_name = value;
                } else if (key == "bigm") {
                    model.big_m = std::stoll(value);
                } else if (key == "bigl") {
                    model.big_l = std::stoll(value);
                }
            }
            continue;
        }
        std::string line = raw;
        while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
        std::size_t start = line.find_first_not_of(" \t");
        if (start == std::string::npos) continue;
        line = line.substr(start);

        std::string lowered = line;
        for (auto& c : lowered) c = char(std::tolower(static_cast<unsigned char>(c)));
        if (lowered == "minimize" || lowered == "min") {
            section = Section::Objective;
            continue;
        }
        if (lowered == "subject to" || lowered == "st" || lowered == "s.t.") {
            section = Section::Constraints;
            continue;
        }
        if (lowered == "bounds") {
            section = Section::Bounds;
            continue;
        }
        if (lowered == "binaries" || lowered == "binary") {
            section = Section::Binaries;
            continue;
        }
        if (lowered == "generals" || lowered == "general") {
            section = Section::Generals;
            continue;
        }
        if (lowered == "end") {
            section = Section::Done;
            continue;
        }

        switch (section) {
            case Section::Preamble:
                throw ParseError(lineno, "expected 'Minimize'");
            case Section::Objective: {
                std::string expr_text = line;
                auto colon = expr_text.find(':');
                if (colon != std::string::npos) expr_text = expr_text.substr(colon + 1);
                for (auto& [name, coeff] : detail::parse_expr(expr_text, lineno).terms)
                    objective_terms.emplace_back(name, coeff);
                break;
            }
            case Section::Constraints: {
                auto colon = line.find(':');
                if (colon == std::string::npos)
                    throw ParseError(lineno, "constraint without a name");
                PendingConstraint pc;
                pc.name = line.substr(0, colon);
                while (!pc.name.empty() && pc.name.back() == ' ') pc.name.pop_back();
                std::string body = line.substr(colon + 1);

                std::size_t op_pos;
                if ((op_pos = body.find("<=")) != std::string::npos)
                    pc.sense = Sense::Le;
                else if ((op_pos = body.find(">=")) != std::string::npos)
                    pc.sense = Sense::Ge;
                else if ((op_pos = body.find('=')) != std::string::npos)
                    pc.sense = Sense::Eq;
                else
                    throw ParseError(lineno, "constraint without a sense");
                const std::size_t op_len = pc.sense == Sense::Eq ? 1 : 2;
                pc.expr = detail::parse_expr(body.substr(0, op_pos), lineno);
                pc.rhs = detail::parse_decimal(
                    [&] {
                        std::istringstream rhs_in(body.substr(op_pos + op_len));
                        std::string tok;
                        rhs_in >> tok;
                        return tok;
                    }(),
                    lineno);
                pending.push_back(std::move(pc));
                break;
            }
            case Section::Bounds: {
                std::istringstream ls(line);
                std::vector<std::string> toks;
                std::string tok;
                while (ls >> tok) toks.push_back(tok);
                auto declare = [&](const std::string& name) {
                    if (!index.count(name)) {
                        Variable v;
                        v.name = name;
                        v.kind = VarKind::Continuous;
                        index.emplace(name, model.add_variable(std::move(v)));
                    }
                    return index[name];
                };
                if (toks.size() == 5 && toks[1] == "<=" && toks[3] == "<=") {
                    const int j = declare(toks[2]);
                    model.variables[j].lower = detail::parse_decimal(toks[0], lineno);
                    model.variables[j].upper = detail::parse_decimal(toks[4], lineno);
                } else if (toks.size() == 3 && toks[1] == ">=") {
                    const int j = declare(toks[0]);
                    model.variables[j].lower = detail::parse_decimal(toks[2], lineno);
                    model.variables[j].upper.reset();
                } else if (toks.size() == 3 && toks[1] == "<=") {
                    const int j = declare(toks[0]);
                    model.variables[j].upper = detail::parse_decimal(toks[2], lineno);
                } else if (toks.size() == 2 && toks[1] == "free") {
                    declare(toks[0]);
                } else {
                    throw ParseError(lineno, "unrecognized bounds line");
                }
                break;
            }
            case Section::Binaries:
            case Section::Generals: {
                std::istringstream ls(line);
                std::string name;
                while (ls >> name) {
                    const int j = intern(name, lineno);
                    model.variables[j].kind =
                        section == Section::Binaries ? VarKind::Binary : VarKind::Integer;
                    if (section == Section::Binaries && !model.variables[j].upper)
                        model.variables[j].upper = Rat(1);
                }
                break;
            }
            case Section::Done:
                throw ParseError(lineno, "content after End");
        }
    }

    for (auto& [name, coeff] : objective_terms)
        model.variables[intern(name, 0)].objective = coeff;
    for (auto& pc : pending) {
        LinearConstraint c;
        c.name = pc.name;
        c.sense = pc.sense;
        c.rhs = pc.rhs;
        for (auto& [name, coeff] : pc.expr.terms) c.terms.emplace_back(intern(name, 0), coeff);
        // family from the known name prefixes, longest match first
        static const std::pair<const char*, const char*> families[] = {
            {"EXTCOSTSL", "EXTCOSTS-L"}, {"EXTCOSTS", "EXTCOSTS"}, {"XZLINK2L", "XZLINK2L"},
            {"XZLINK2", "XZLINK2"},      {"XZLINK1", "XZLINK1"},   {"YZLINK", "YZLINK"},
            {"TDOMY", "TDOMY"},          {"TDOM", "TDOM"},         {"CLIQUE", "CLIQUE"},
            {"WTD1_3", "WTD1.3"},        {"WTD1_4", "WTD1.4"},     {"WTD1_5", "WTD1.5"},
            {"WTD1_6", "WTD1.6"},        {"WTD1_7", "WTD1.7"},     {"WTD2_3", "WTD2.3"},
            {"WTD2_4", "WTD2.4"},        {"WTD3_2", "WTD3.2"},     {"WTD3_3", "WTD3.3"},
        };
        c.tag = pc.name;
        for (const auto& [prefix, tag] : families)
            if (pc.name.rfind(prefix, 0) == 0) {
                c.tag = tag;
                break;
            }
        model.add_constraint(std::move(c));
    }

    // recover role maps from the canonical naming scheme
    int x_count = 0, y_count = 0, q_count = 0;
    for (const Variable& v : model.variables) {
        if (v.name.rfind("x_", 0) == 0) ++x_count;
        if (v.name.rfind("y_", 0) == 0) ++y_count;
        if (v.name.rfind("q_", 0) == 0) ++q_count;
    }
    model.n = x_count;
    model.m = y_count;
    model.x_of.assign(x_count, -1);
    model.y_of.clear();
    model.q_of.assign(q_count ? x_count : 0, -1);
    for (int j = 0; j < static_cast<int>(model.variables.size()); ++j) {
        Variable& v = model.variables[j];
        if (v.name.rfind("x_", 0) == 0) {
            v.role = VarRole::Vertex;
            v.ref_a = std::stoi(v.name.substr(2));
            if (v.ref_a < x_count) model.x_of[v.ref_a] = j;
        } else if (v.name.rfind("y_", 0) == 0) {
            v.role = VarRole::InternalEdge;
            v.ref_a = static_cast<int>(model.y_of.size());
            model.y_of.push_back(j);
        } else if (v.name.rfind("z_", 0) == 0) {
            v.role = VarRole::Arc;
            model.z_of.push_back(j);
        } else if (v.name.rfind("q_", 0) == 0) {
            v.role = VarRole::ExternalCost;
            v.ref_a = std::stoi(v.name.substr(2));
            if (v.ref_a < x_count) model.q_of[v.ref_a] = j;
        }
    }
    return model;
}

inline MipModel load_model(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open model file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_model(buf.str());
}

/// Assignment text: one `<varname> <value>` per line, '#' comments.
inline std::unordered_map<std::string, Rat> parse_assignment(const std::string& text) {
    std::unordered_map<std::string, Rat> values;
    std::istringstream in(text);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::size_t start = line.find_first_not_of(" \t\r");
        if (start == std::string::npos || line[start] == '#') continue;
        std::istringstream ls(line);
        std::string name, value, extra;
        if (!(ls >> name >> value) || (ls >> extra))
            throw ParseError(lineno, "expected '<varname> <value>'");
        values[name] = detail::parse_decimal(value, lineno);
    }
    return values;
}

struct VerifyViolation {
    std::string constraint;
    std::string tag;
    Rat amount;  // positive distance into infeasibility
};

struct VerifyReport {
    Rat objective = 0;
    std::vector<VerifyViolation> violated;
    std::vector<std::string> bound_violations;
    bool feasible() const { return violated.empty() && bound_violations.empty(); }
};

/// Evaluates the model objective at the assignment and reports every
/// violated row and box/integrality condition. Every model variable must be
/// assigned a value.
inline VerifyReport verify_assignment(const MipModel& model,
                                      const std::unordered_map<std::string, Rat>& assignment) {
    std::vector<Rat> values(model.variables.size());
    for (std::size_t j = 0; j < model.variables.size(); ++j) {
        auto it = assignment.find(model.variables[j].name);
        if (it == assignment.end())
            throw MissingVariable("no value for variable " + model.variables[j].name);
        values[j] = it->second;
    }

    VerifyReport report;
    for (std::size_t j = 0; j < model.variables.size(); ++j) {
        const Variable& v = model.variables[j];
        if (values[j] < v.lower || (v.upper && values[j] > *v.upper))
            report.bound_violations.push_back(v.name + " outside bounds");
        else if (v.kind != VarKind::Continuous && values[j].denominator() != 1)
            report.bound_violations.push_back(v.name + " not integral");
        report.objective += v.objective * values[j];
    }
    for (const LinearConstraint& c : model.constraints) {
        Rat lhs = 0;
        for (const auto& [var, coeff] : c.terms) lhs += coeff * values[var];
        Rat shortfall = 0;
        switch (c.sense) {
            case Sense::Le:
                if (lhs > c.rhs) shortfall = lhs - c.rhs;
                break;
            case Sense::Ge:
                if (lhs < c.rhs) shortfall = c.rhs - lhs;
                break;
            case Sense::Eq:
                shortfall = lhs > c.rhs ? lhs - c.rhs : c.rhs - lhs;
                break;
        }
        if (!is_zero(shortfall)) report.violated.push_back({c.name, c.tag, shortfall});
    }
    return report;
}

inline VerifyReport verify_assignment(const MipModel& model, const std::vector<Rat>& values) {
    std::unordered_map<std::string, Rat> assignment;
    for (std::size_t j = 0; j < model.variables.size(); ++j)
        assignment.emplace(model.variables[j].name, values[j]);
    return verify_assignment(model, assignment);
}

}  // namespace wtd::mip

#endif
