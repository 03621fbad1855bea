#include "casctop/generators.hpp"

#include <algorithm>
#include <cstdio>
#include <deque>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <unordered_set>

namespace casctop {

Graph gen_er_tree(int n, std::uint64_t seed) {
    if (n < 1) throw std::invalid_argument("gen_er_tree: n must be at least 1");
    Rng rng(seed);
    std::vector<std::pair<int, int>> edges;
    edges.reserve(n > 0 ? n - 1 : 0);
    for (int v = 1; v < n; ++v) {
        int parent = static_cast<int>(rng.uniform_int(static_cast<std::uint64_t>(v)));
        edges.emplace_back(parent, v);
    }
    return Graph(n, edges);
}

namespace {

// unrank k in [0, n(n-1)/2) to the pair (u,v), u < v, in row-major order
std::pair<int, int> unrank_pair(std::uint64_t k, int n) {
    // row u starts at offset u*n - u*(u+3)/2 ... solve incrementally
    std::uint64_t remaining = k;
    for (int u = 0; u < n - 1; ++u) {
        std::uint64_t row = static_cast<std::uint64_t>(n - 1 - u);
        if (remaining < row) return {u, u + 1 + static_cast<int>(remaining)};
        remaining -= row;
    }
    throw std::logic_error("unrank_pair: index out of range");
}

} // namespace

Graph gen_er_graph(int n, double avg_degree, std::uint64_t seed, int max_retries) {
    if (n < 2) throw std::invalid_argument("gen_er_graph: n must be at least 2");
    if (avg_degree <= 0.0 || avg_degree >= n)
        throw std::invalid_argument("gen_er_graph: avg_degree must be in (0, n)");
    std::uint64_t total = static_cast<std::uint64_t>(n) * (n - 1) / 2;
    std::uint64_t m = static_cast<std::uint64_t>(std::llround(n * avg_degree / 2.0));
    if (m > total) m = total;
    if (m < static_cast<std::uint64_t>(n - 1))
        throw std::invalid_argument("gen_er_graph: edge budget below n-1 cannot be connected");

    Rng rng(seed);
    for (int attempt = 0; attempt < max_retries; ++attempt) {
        // Floyd's sampling without replacement over pair indices
        std::unordered_set<std::uint64_t> chosen;
        chosen.reserve(m * 2);
        for (std::uint64_t j = total - m; j < total; ++j) {
            std::uint64_t r = rng.uniform_int(j + 1);
            if (!chosen.insert(r).second) chosen.insert(j);
        }
        std::vector<std::pair<int, int>> edges;
        edges.reserve(m);
        for (std::uint64_t code : chosen) edges.push_back(unrank_pair(code, n));
        std::sort(edges.begin(), edges.end());
        Graph g(n, edges);
        if (g.is_connected()) return g;
    }
    throw std::runtime_error("gen_er_graph: retry budget exhausted without a connected sample");
}

Graph gen_forest_fire(int n, double p_forward, double p_backward, std::uint64_t seed) {
    if (n < 1) throw std::invalid_argument("gen_forest_fire: n must be at least 1");
    if (p_forward < 0.0 || p_forward >= 1.0 || p_backward < 0.0 || p_backward >= 1.0)
        throw std::invalid_argument("gen_forest_fire: burn probabilities must be in [0,1)");

    Rng rng(seed);
    // direction of creation: out = links the vertex made on arrival
    std::vector<std::vector<int>> out_adj(n), in_adj(n);
    std::vector<std::pair<int, int>> edges;
    std::vector<int> stamp(n, -1); // visited marker per new vertex

    for (int v = 1; v < n; ++v) {
        int amb = static_cast<int>(rng.uniform_int(static_cast<std::uint64_t>(v)));
        std::vector<int> burned{amb};
        stamp[amb] = v;
        std::deque<int> frontier{amb};
        while (!frontier.empty()) {
            int w = frontier.front();
            frontier.pop_front();
            auto burn_from = [&](const std::vector<int>& pool, std::uint64_t want) {
                std::vector<int> fresh;
                for (int x : pool)
                    if (stamp[x] != v) fresh.push_back(x);
                // uniform subset of size want via partial Fisher-Yates
                std::uint64_t take = std::min<std::uint64_t>(want, fresh.size());
                for (std::uint64_t i = 0; i < take; ++i) {
                    std::uint64_t j = i + rng.uniform_int(fresh.size() - i);
                    std::swap(fresh[i], fresh[j]);
                    int x = fresh[i];
                    stamp[x] = v;
                    burned.push_back(x);
                    frontier.push_back(x);
                }
            };
            burn_from(out_adj[w], rng.geometric_count(p_forward));
            burn_from(in_adj[w], rng.geometric_count(p_backward));
        }
        for (int x : burned) {
            out_adj[v].push_back(x);
            in_adj[x].push_back(v);
            edges.emplace_back(x, v);
        }
    }
    return Graph(std::max(n, 1), edges);
}

Graph load_edge_list(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("load_edge_list: cannot open " + path);
    std::vector<std::pair<long long, long long>> raw;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::size_t first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos) continue;
        if (line[first] == '#') continue;
        std::istringstream ss(line);
        long long a, b;
        if (!(ss >> a >> b))
            throw std::runtime_error("load_edge_list: malformed line " + std::to_string(lineno) +
                                     " in " + path);
        std::string trailing;
        if (ss >> trailing)
            throw std::runtime_error("load_edge_list: trailing tokens on line " +
                                     std::to_string(lineno) + " in " + path);
        if (a < 0 || b < 0)
            throw std::runtime_error("load_edge_list: negative id on line " + std::to_string(lineno));
        if (a == b)
            throw std::runtime_error("load_edge_list: self-loop on line " + std::to_string(lineno));
        raw.emplace_back(a, b);
    }
    if (raw.empty()) throw std::runtime_error("load_edge_list: no edges in " + path);

    // remap ids to a dense 0..n-1 range preserving numeric order
    std::map<long long, int> remap;
    for (auto [a, b] : raw) {
        remap.emplace(a, 0);
        remap.emplace(b, 0);
    }
    int next = 0;
    for (auto& [id, dense] : remap) dense = next++;
    std::vector<std::pair<int, int>> edges;
    edges.reserve(raw.size());
    for (auto [a, b] : raw) edges.emplace_back(remap[a], remap[b]);
    return Graph(next, edges); // Graph constructor rejects duplicates
}

void save_edge_list(const Graph& g, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("save_edge_list: cannot open " + path);
    for (const auto& e : g.edges()) out << e.u << ' ' << e.v << '\n';
    if (!out) throw std::runtime_error("save_edge_list: write failed for " + path);
}

} // namespace casctop
