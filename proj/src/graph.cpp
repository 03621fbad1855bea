#include "casctop/graph.hpp"

#include <algorithm>
#include <deque>
#include <stdexcept>
#include <unordered_map>

namespace casctop {

namespace {

// pack an ordered pair (u < v) into one key
inline std::uint64_t pack_pair(int u, int v) {
    return (static_cast<std::uint64_t>(u) << 32) | static_cast<std::uint32_t>(v);
}

} // namespace

Graph::Graph(int n, const std::vector<std::pair<int, int>>& edges) : n_(n), adj_(std::max(n, 0)) {
    if (n < 1) throw std::invalid_argument("Graph: vertex count must be at least 1");
    edges_.reserve(edges.size());
    std::unordered_set<std::uint64_t> seen;
    seen.reserve(edges.size() * 2);
    for (auto [a, b] : edges) {
        if (a < 0 || a >= n || b < 0 || b >= n)
            throw std::invalid_argument("Graph: vertex id out of range");
        if (a == b) throw std::invalid_argument("Graph: self-loop rejected");
        int u = std::min(a, b), v = std::max(a, b);
        if (!seen.insert(pack_pair(u, v)).second)
            throw std::invalid_argument("Graph: duplicate edge rejected");
        edges_.push_back({u, v});
    }
    std::sort(edges_.begin(), edges_.end());
    for (auto [u, v] : edges_) {
        adj_[u].push_back(v);
        adj_[v].push_back(u);
    }
    for (auto& nb : adj_) std::sort(nb.begin(), nb.end());

    // connectivity, cached once
    std::vector<char> vis(n_, 0);
    std::deque<int> q{0};
    vis[0] = 1;
    int reached = 1;
    while (!q.empty()) {
        int u = q.front();
        q.pop_front();
        for (int w : adj_[u])
            if (!vis[w]) {
                vis[w] = 1;
                ++reached;
                q.push_back(w);
            }
    }
    connected_ = (reached == n_);
}

const std::vector<int>& Graph::neighbors(int v) const {
    check_vertex(v);
    return adj_[v];
}

int Graph::edge_index(int u, int v) const {
    check_vertex(u);
    check_vertex(v);
    if (u == v) return -1;
    if (u > v) std::swap(u, v);
    Edge probe{u, v};
    auto it = std::lower_bound(edges_.begin(), edges_.end(), probe);
    if (it != edges_.end() && *it == probe) return static_cast<int>(it - edges_.begin());
    return -1;
}

void Graph::check_vertex(int v) const {
    if (v < 0 || v >= n_) throw std::invalid_argument("vertex id out of range");
}

Graph Graph::without_edge(int u, int v) const {
    int idx = edge_index(u, v);
    if (idx < 0) throw std::invalid_argument("without_edge: edge not present");
    std::vector<std::pair<int, int>> kept;
    kept.reserve(edges_.size() - 1);
    for (int i = 0; i < static_cast<int>(edges_.size()); ++i)
        if (i != idx) kept.emplace_back(edges_[i].u, edges_[i].v);
    return Graph(n_, kept);
}

Graph Graph::with_edge(int u, int v) const {
    if (edge_index(u, v) >= 0) throw std::invalid_argument("with_edge: edge already present");
    std::vector<std::pair<int, int>> all;
    all.reserve(edges_.size() + 1);
    for (auto [a, b] : edges_) all.emplace_back(a, b);
    all.emplace_back(u, v);
    return Graph(n_, all);
}

std::vector<int> bfs_distances(const Graph& g, int source) {
    g.check_vertex(source);
    std::vector<int> d(g.num_vertices(), -1);
    std::deque<int> q{source};
    d[source] = 0;
    while (!q.empty()) {
        int u = q.front();
        q.pop_front();
        for (int w : g.neighbors(u))
            if (d[w] < 0) {
                d[w] = d[u] + 1;
                q.push_back(w);
            }
    }
    return d;
}

std::optional<int> distance(const Graph& g, int u, int v) {
    g.check_vertex(u);
    g.check_vertex(v);
    if (u == v) return 0;
    auto d = bfs_distances(g, u);
    if (d[v] < 0) return std::nullopt;
    return d[v];
}

DistanceTable DistanceTable::from_sources(const Graph& g, const std::vector<int>& sources) {
    DistanceTable t;
    t.n_ = g.num_vertices();
    t.row_of_source_.assign(t.n_, -1);
    for (int s : sources) {
        g.check_vertex(s);
        if (t.row_of_source_[s] >= 0) continue; // keep sources unique
        t.row_of_source_[s] = static_cast<int>(t.sources_.size());
        t.sources_.push_back(s);
        t.dist_.push_back(bfs_distances(g, s));
    }
    return t;
}

DistanceTable DistanceTable::all_pairs(const Graph& g) {
    std::vector<int> all(g.num_vertices());
    for (int v = 0; v < g.num_vertices(); ++v) all[v] = v;
    return from_sources(g, all);
}

bool DistanceTable::has(int source, int v) const {
    if (source < 0 || source >= n_ || v < 0 || v >= n_) return false;
    int r = row_of_source_[source];
    return r >= 0 && dist_[r][v] >= 0;
}

int DistanceTable::dist(int source, int v) const {
    if (source < 0 || source >= n_ || v < 0 || v >= n_)
        throw std::invalid_argument("DistanceTable: vertex id out of range");
    int r = row_of_source_[source];
    if (r < 0) throw std::invalid_argument("DistanceTable: no row for source " + std::to_string(source));
    int d = dist_[r][v];
    if (d < 0) throw std::invalid_argument("DistanceTable: missing entry");
    return d;
}

const std::vector<int>& DistanceTable::row(int source) const {
    if (source < 0 || source >= n_ || row_of_source_[source] < 0)
        throw std::invalid_argument("DistanceTable: no row for source " + std::to_string(source));
    return dist_[row_of_source_[source]];
}

} // namespace casctop
