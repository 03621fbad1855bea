#include "casctop/oracles.hpp"

#include <algorithm>
#include <cstdlib>
#include <deque>
#include <stdexcept>

namespace casctop::oracle {

std::vector<std::vector<int>> floyd_warshall(const Graph& g) {
    int n = g.num_vertices();
    const int INF = 1 << 28;
    std::vector<std::vector<int>> d(n, std::vector<int>(n, INF));
    for (int v = 0; v < n; ++v) d[v][v] = 0;
    for (const auto& e : g.edges()) d[e.u][e.v] = d[e.v][e.u] = 1;
    for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i) {
            if (d[i][k] >= INF) continue;
            for (int j = 0; j < n; ++j)
                d[i][j] = std::min(d[i][j], d[i][k] + d[k][j]);
        }
    for (auto& row : d)
        for (auto& x : row)
            if (x >= INF) x = -1;
    return d;
}

namespace {

// unique tree path between a and b via parent pointers
std::vector<int> tree_path(const Graph& tree, int a, int b) {
    std::vector<int> parent(tree.num_vertices(), -2);
    std::deque<int> q{a};
    parent[a] = -1;
    while (!q.empty()) {
        int u = q.front();
        q.pop_front();
        if (u == b) break;
        for (int w : tree.neighbors(u))
            if (parent[w] == -2) {
                parent[w] = u;
                q.push_back(w);
            }
    }
    std::vector<int> path;
    for (int cur = b; cur != -1; cur = parent[cur]) path.push_back(cur);
    std::reverse(path.begin(), path.end());
    return path;
}

} // namespace

std::vector<int> hull_pairwise_paths(const Graph& tree, const std::vector<int>& vs) {
    if (vs.empty()) throw std::invalid_argument("hull_pairwise_paths: vertex set must be non-empty");
    std::vector<char> in(tree.num_vertices(), 0);
    for (int v : vs) in[v] = 1;
    for (std::size_t i = 0; i < vs.size(); ++i)
        for (std::size_t j = i + 1; j < vs.size(); ++j)
            for (int w : tree_path(tree, vs[i], vs[j])) in[w] = 1;
    std::vector<int> hull;
    for (int v = 0; v < tree.num_vertices(); ++v)
        if (in[v]) hull.push_back(v);
    return hull;
}

bool redundant_by_double_reconstruction(const DistanceTable& dt, const std::vector<int>& vs,
                                        int v_i, int n, ReconstructMode mode) {
    if (std::find(vs.begin(), vs.end(), v_i) == vs.end())
        throw std::invalid_argument("redundant_by_double_reconstruction: v_i must be in vs");
    std::vector<int> without;
    for (int s : vs)
        if (s != v_i) without.push_back(s);
    if (without.empty()) return false;
    return reconstruct_from(dt, vs, n, mode) == reconstruct_from(dt, without, n, mode);
}

bool separating_by_definition(const Graph& g, const std::vector<int>& vs) {
    auto d = floyd_warshall(g);
    int n = g.num_vertices();
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) {
            bool split = false;
            for (int s : vs)
                if (d[s][u] != d[s][v]) {
                    split = true;
                    break;
                }
            if (!split) return false;
        }
    return true;
}

std::vector<int> subtree_members_by_bfs(const Graph& tree, int u, int v) {
    if (u == v) throw std::invalid_argument("subtree_members_by_bfs: anchors must be distinct");
    auto path = tree_path(tree, u, v);
    int first = path.at(1);
    // BFS from u skipping the deleted first edge
    std::vector<char> vis(tree.num_vertices(), 0);
    std::deque<int> q{u};
    vis[u] = 1;
    while (!q.empty()) {
        int x = q.front();
        q.pop_front();
        for (int w : tree.neighbors(x)) {
            if ((x == u && w == first) || (x == first && w == u)) continue;
            if (!vis[w]) {
                vis[w] = 1;
                q.push_back(w);
            }
        }
    }
    std::vector<int> members;
    for (int w = 0; w < tree.num_vertices(); ++w)
        if (vis[w]) members.push_back(w);
    return members;
}

} // namespace casctop::oracle
