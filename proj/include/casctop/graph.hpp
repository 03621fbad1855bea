#pragma once

#include <optional>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

namespace casctop {

struct Edge {
    int u; // u < v
    int v;
    friend bool operator==(const Edge&, const Edge&) = default;
    friend auto operator<=>(const Edge&, const Edge&) = default;
};

// Immutable undirected simple graph, vertex ids 0..n-1.
// Self-loops and duplicate edges are rejected at construction.
class Graph {
public:
    Graph(int n, const std::vector<std::pair<int, int>>& edges);

    int num_vertices() const { return n_; }
    int num_edges() const { return static_cast<int>(edges_.size()); }

    // canonical edge list, sorted, u < v
    const std::vector<Edge>& edges() const { return edges_; }
    const std::vector<int>& neighbors(int v) const;
    int degree(int v) const { return static_cast<int>(neighbors(v).size()); }
    bool has_edge(int u, int v) const { return edge_index(u, v) >= 0; }

    // index of (u,v) in edges(), -1 if absent
    int edge_index(int u, int v) const;

    bool is_connected() const { return connected_; }
    bool is_tree() const { return connected_ && num_edges() == n_ - 1; }

    void check_vertex(int v) const;

    // same vertex set, one edge removed
    Graph without_edge(int u, int v) const;
    // same vertex set, one edge added
    Graph with_edge(int u, int v) const;

private:
    int n_;
    std::vector<Edge> edges_;
    std::vector<std::vector<int>> adj_;
    bool connected_;
};

// BFS hop distances from source; -1 marks unreachable vertices.
std::vector<int> bfs_distances(const Graph& g, int source);

// Hop distance between u and v; disconnected pairs yield nullopt, never a sentinel.
std::optional<int> distance(const Graph& g, int u, int v);

// Hop distances from a set of source vertices to every vertex.
// Entries for unreachable vertices are "missing"; queries on them throw.
class DistanceTable {
public:
    static DistanceTable from_sources(const Graph& g, const std::vector<int>& sources);
    static DistanceTable all_pairs(const Graph& g);

    const std::vector<int>& sources() const { return sources_; }
    int num_vertices() const { return n_; }

    bool has(int source, int v) const;
    int dist(int source, int v) const; // throws on missing entries

    // row for a source (unchecked access for hot loops); -1 = missing
    const std::vector<int>& row(int source) const;

private:
    int n_ = 0;
    std::vector<int> sources_;
    std::vector<int> row_of_source_;      // vertex id -> row index or -1
    std::vector<std::vector<int>> dist_;  // row-major, dist_[i][v]
};

} // namespace casctop
