#ifndef WTD_INSTANCE_IO_HPP
#define WTD_INSTANCE_IO_HPP

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "wtd/errors.hpp"
#include "wtd/instance.hpp"
#include "wtd/rng.hpp"

namespace wtd {

enum class Family { MA, NEW };

/// Generator request. Weight draws are inclusive integer ranges; the PRNG
/// (xoshiro256ss) and the draw order are part of the format contract:
/// one u01 draw per vertex pair in lexicographic order, then the n vertex
/// weights, then the edge weights of the kept pairs in lexicographic order.
struct GenSpec {
    int n = 0;
    double p = 0.0;
    long long vertex_weight_lo = 1, vertex_weight_hi = 5;
    long long edge_weight_lo = 1, edge_weight_hi = 5;
    std::uint64_t seed = 0;
    Family family = Family::MA;
    int id = 1;

    void validate() const {
        if (n < 2) throw InvalidOptions("generator needs n >= 2");
        if (p < 0.0 || p > 1.0) throw InvalidOptions("edge probability outside [0,1]");
        if (vertex_weight_lo < 1 || edge_weight_lo < 1)
            throw InvalidOptions("weight ranges must start at 1 or above");
        if (vertex_weight_hi < vertex_weight_lo || edge_weight_hi < edge_weight_lo)
            throw InvalidOptions("empty weight range");
        if (id < 1) throw InvalidOptions("replicate id must be >= 1");
    }
};

namespace detail {

inline std::string format_probability(double p) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", p);
    return buf;
}

}  // namespace detail

/// G(n,p) draw for a fixed seed; instances with an isolated vertex are
/// redrawn with seed+1, seed+2, ... and the retry count lands in the name.
inline Instance generate(const GenSpec& spec) {
    spec.validate();
    constexpr int max_attempts = 1000;
    for (int attempt = 0; attempt < max_attempts; ++attempt) {
        const std::uint64_t seed = spec.seed + static_cast<std::uint64_t>(attempt);
        Xoshiro256ss rng(seed);

        std::vector<Edge> edges;
        for (int u = 0; u < spec.n; ++u)
            for (int v = u + 1; v < spec.n; ++v) {
                const bool keep = spec.p >= 1.0 || (spec.p > 0.0 && rng.next_u01() < spec.p);
                if (keep) edges.push_back({u, v, 0});
            }
        std::vector<long long> weights(spec.n);
        for (auto& w : weights) w = rng.uniform_int(spec.vertex_weight_lo, spec.vertex_weight_hi);
        for (auto& e : edges) e.cost = rng.uniform_int(spec.edge_weight_lo, spec.edge_weight_hi);

        std::vector<int> degree(spec.n, 0);
        for (const auto& e : edges) ++degree[e.u], ++degree[e.v];
        bool isolated = false;
        for (int v = 0; v < spec.n; ++v)
            if (degree[v] == 0) isolated = true;
        if (isolated) continue;

        std::string name = (spec.family == Family::MA ? "MA-" : "NEW-") + std::to_string(spec.n) +
                           "-" + detail::format_probability(spec.p);
        if (spec.family == Family::NEW) name += "-" + std::to_string(spec.edge_weight_hi);
        name += "-" + std::to_string(spec.id);
        if (attempt > 0) name += "-r" + std::to_string(attempt);

        return Instance(spec.n, std::move(weights), std::move(edges), std::move(name),
                        GenInfo{Xoshiro256ss::algorithm_id, seed});
    }
    throw GenerationFailed("no isolated-vertex-free graph in " + std::to_string(max_attempts) +
                           " attempts (p too small for n?)");
}

/// Native text format:
///   wtdp 1
///   name <string>
///   rng <algorithm-id> <seed>     (generated instances only)
///   <n> <m>
///   v <index> <weight>            (n lines, index order)
///   e <u> <v> <cost>              (m lines, u < v, lexicographic)
/// Lines starting with '#' are comments.
inline std::string serialize(const Instance& g) {
    std::ostringstream out;
    out << "wtdp 1\n";
    out << "name " << g.name() << "\n";
    if (g.gen_info())
        out << "rng " << g.gen_info()->algorithm << " " << g.gen_info()->seed << "\n";
    out << g.vertex_count() << " " << g.edge_count() << "\n";
    for (int v = 0; v < g.vertex_count(); ++v)
        out << "v " << v << " " << g.vertex_weight(v) << "\n";
    for (const Edge& e : g.edges()) out << "e " << e.u << " " << e.v << " " << e.cost << "\n";
    return out.str();
}

namespace detail {

struct LineReader {
    std::istringstream in;
    std::size_t lineno = 0;

    explicit LineReader(const std::string& text) : in(text) {}

    // next non-comment, non-blank line
    bool next(std::string& line) {
        while (std::getline(in, line)) {
            ++lineno;
            std::size_t start = line.find_first_not_of(" \t\r");
            if (start == std::string::npos) continue;
            if (line[start] == '#') continue;
            if (line.back() == '\r') line.pop_back();
            return true;
        }
        return false;
    }

    [[noreturn]] void fail(const std::string& what) const { throw ParseError(lineno, what); }
};

inline long long parse_ll(LineReader& r, const std::string& tok, const char* what) {
    try {
        std::size_t pos = 0;
        const long long v = std::stoll(tok, &pos);
        if (pos != tok.size()) r.fail(std::string("bad ") + what + ": '" + tok + "'");
        return v;
    } catch (const ParseError&) {
        throw;
    } catch (...) {
        r.fail(std::string("bad ") + what + ": '" + tok + "'");
    }
}

}  // namespace detail

inline Instance parse_instance(const std::string& text) {
    detail::LineReader r(text);
    std::string line;

    if (!r.next(line)) r.fail("missing header");
    if (line != "wtdp 1") r.fail("expected 'wtdp 1' header");

    if (!r.next(line)) r.fail("missing name line");
    if (line.rfind("name ", 0) != 0) r.fail("expected 'name <string>'");
    std::string name = line.substr(5);

    if (!r.next(line)) r.fail("missing size line");
    std::optional<GenInfo> gen;
    if (line.rfind("rng ", 0) == 0) {
        std::istringstream ls(line.substr(4));
        std::string algo, seed_tok, extra;
        if (!(ls >> algo >> seed_tok) || (ls >> extra)) r.fail("expected 'rng <algorithm> <seed>'");
        gen = GenInfo{algo, static_cast<std::uint64_t>(
                                detail::parse_ll(r, seed_tok, "rng seed"))};
        if (!r.next(line)) r.fail("missing size line");
    }

    std::istringstream sizes(line);
    std::string n_tok, m_tok, extra;
    if (!(sizes >> n_tok >> m_tok) || (sizes >> extra)) r.fail("expected '<n> <m>'");
    const long long n = detail::parse_ll(r, n_tok, "vertex count");
    const long long m = detail::parse_ll(r, m_tok, "edge count");
    if (n < 0 || m < 0) r.fail("negative size");

    std::vector<long long> weights(n, 0);
    for (long long i = 0; i < n; ++i) {
        if (!r.next(line)) r.fail("missing vertex line " + std::to_string(i));
        std::istringstream ls(line);
        std::string tag, idx_tok, w_tok;
        if (!(ls >> tag >> idx_tok >> w_tok) || tag != "v" || (ls >> extra))
            r.fail("expected 'v <index> <weight>'");
        if (detail::parse_ll(r, idx_tok, "vertex index") != i)
            r.fail("vertex lines must appear in index order");
        weights[i] = detail::parse_ll(r, w_tok, "vertex weight");
    }

    std::vector<Edge> edges;
    edges.reserve(m);
    for (long long k = 0; k < m; ++k) {
        if (!r.next(line)) r.fail("missing edge line " + std::to_string(k));
        std::istringstream ls(line);
        std::string tag, u_tok, v_tok, c_tok;
        if (!(ls >> tag >> u_tok >> v_tok >> c_tok) || tag != "e" || (ls >> extra))
            r.fail("expected 'e <u> <v> <cost>'");
        Edge e;
        e.u = static_cast<int>(detail::parse_ll(r, u_tok, "edge endpoint"));
        e.v = static_cast<int>(detail::parse_ll(r, v_tok, "edge endpoint"));
        e.cost = detail::parse_ll(r, c_tok, "edge cost");
        edges.push_back(e);
    }
    if (r.next(line)) r.fail("trailing content after edge list");

    return Instance(static_cast<int>(n), std::move(weights), std::move(edges), std::move(name),
                    std::move(gen));
}

inline Instance load_instance(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open instance file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_instance(buf.str());
}

inline void save_instance(const Instance& g, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write instance file: " + path);
    out << serialize(g);
    if (!out) throw IoError("write failed: " + path);
}

}  // namespace wtd

#endif
