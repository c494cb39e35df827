#ifndef WTD_INSTANCE_HPP
#define WTD_INSTANCE_HPP

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "wtd/errors.hpp"

namespace wtd {

struct Edge {
    int u = 0;  // u < v
    int v = 0;
    long long cost = 0;
};

/// One neighbor entry: target vertex, connecting edge id, edge cost.
struct Adjacent {
    int to;
    int edge;
    long long cost;
};

/// Seed record carried by generated instances (serialized as the `rng` line).
struct GenInfo {
    std::string algorithm;
    std::uint64_t seed = 0;
    bool operator==(const GenInfo&) const = default;
};

/// Immutable vertex- and edge-weighted undirected graph. Construction
/// validates the structure; isolated vertices are rejected because total
/// domination is infeasible on them. Neighbor lists come in two orders:
/// adjacency(i) ascending by vertex, sorted_neighbors(i) ascending by
/// (edge cost, vertex) as required by the external-cost machinery.
class Instance {
public:
    Instance(int n, std::vector<long long> vertex_weights, std::vector<Edge> edges,
             std::string name, std::optional<GenInfo> gen = std::nullopt)
        : n_(n),
          vertex_weights_(std::move(vertex_weights)),
          edges_(std::move(edges)),
          name_(std::move(name)),
          gen_(std::move(gen)) {
        if (n_ < 2) throw ValidationError("instance needs at least two vertices");
        if (static_cast<int>(vertex_weights_.size()) != n_)
            throw ValidationError("vertex weight count does not match n");
        for (int i = 0; i < n_; ++i)
            if (vertex_weights_[i] < 0)
                throw ValidationError("negative weight at vertex " + std::to_string(i));

        for (auto& e : edges_) {
            if (e.u > e.v) std::swap(e.u, e.v);
            if (e.u == e.v)
                throw ValidationError("self-loop at vertex " + std::to_string(e.u));
            if (e.u < 0 || e.v >= n_)
                throw ValidationError("edge endpoint out of range: " + std::to_string(e.u) +
                                      " " + std::to_string(e.v));
            if (e.cost < 0)
                throw ValidationError("negative edge cost on {" + std::to_string(e.u) +
                                      "," + std::to_string(e.v) + "}");
        }
        std::sort(edges_.begin(), edges_.end(), [](const Edge& a, const Edge& b) {
            return std::pair(a.u, a.v) < std::pair(b.u, b.v);
        });
        for (std::size_t k = 1; k < edges_.size(); ++k)
            if (edges_[k - 1].u == edges_[k].u && edges_[k - 1].v == edges_[k].v)
                throw ValidationError("duplicate edge {" + std::to_string(edges_[k].u) +
                                      "," + std::to_string(edges_[k].v) + "}");

        adjacency_.resize(n_);
        for (int id = 0; id < static_cast<int>(edges_.size()); ++id) {
            const Edge& e = edges_[id];
            adjacency_[e.u].push_back({e.v, id, e.cost});
            adjacency_[e.v].push_back({e.u, id, e.cost});
        }
        sorted_neighbors_ = adjacency_;
        for (int i = 0; i < n_; ++i) {
            std::sort(adjacency_[i].begin(), adjacency_[i].end(),
                      [](const Adjacent& a, const Adjacent& b) { return a.to < b.to; });
            std::sort(sorted_neighbors_[i].begin(), sorted_neighbors_[i].end(),
                      [](const Adjacent& a, const Adjacent& b) {
                          return std::pair(a.cost, a.to) < std::pair(b.cost, b.to);
                      });
            if (adjacency_[i].empty())
                throw ValidationError("isolated vertex " + std::to_string(i));
        }
    }

    int vertex_count() const { return n_; }
    int edge_count() const { return static_cast<int>(edges_.size()); }
    long long vertex_weight(int i) const { return vertex_weights_[i]; }
    const std::vector<long long>& vertex_weights() const { return vertex_weights_; }
    const Edge& edge(int id) const { return edges_[id]; }
    const std::vector<Edge>& edges() const { return edges_; }
    const std::vector<Adjacent>& adjacency(int i) const { return adjacency_[i]; }
    const std::vector<Adjacent>& sorted_neighbors(int i) const { return sorted_neighbors_[i]; }
    int degree(int i) const { return static_cast<int>(adjacency_[i].size()); }

    const std::string& name() const { return name_; }
    const std::optional<GenInfo>& gen_info() const { return gen_; }

    int max_degree() const {
        int d = 0;
        for (int i = 0; i < n_; ++i) d = std::max(d, degree(i));
        return d;
    }

    long long max_edge_cost() const {
        long long c = 0;
        for (const Edge& e : edges_) c = std::max(c, e.cost);
        return c;
    }

    /// Edge id between u and v, or -1.
    int edge_between(int u, int v) const {
        const auto& adj = adjacency_[u];
        auto it = std::lower_bound(adj.begin(), adj.end(), v,
                                   [](const Adjacent& a, int t) { return a.to < t; });
        if (it != adj.end() && it->to == v) return it->edge;
        return -1;
    }

    bool same_graph(const Instance& other) const {
        if (n_ != other.n_ || vertex_weights_ != other.vertex_weights_) return false;
        if (edges_.size() != other.edges_.size()) return false;
        for (std::size_t k = 0; k < edges_.size(); ++k)
            if (edges_[k].u != other.edges_[k].u || edges_[k].v != other.edges_[k].v ||
                edges_[k].cost != other.edges_[k].cost)
                return false;
        return true;
    }

    bool operator==(const Instance& other) const {
        return same_graph(other) && name_ == other.name_ && gen_ == other.gen_;
    }

private:
    int n_;
    std::vector<long long> vertex_weights_;
    std::vector<Edge> edges_;
    std::string name_;
    std::optional<GenInfo> gen_;
    std::vector<std::vector<Adjacent>> adjacency_;
    std::vector<std::vector<Adjacent>> sorted_neighbors_;
};

}  // namespace wtd

#endif
