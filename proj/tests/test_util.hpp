#pragma once

#include "casctop/graph.hpp"
#include "casctop/rng.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <vector>

namespace testutil {

inline casctop::Graph path_graph(int n) {
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i + 1 < n; ++i) edges.emplace_back(i, i + 1);
    return casctop::Graph(n, edges);
}

inline casctop::Graph star_graph(int leaves) {
    std::vector<std::pair<int, int>> edges;
    for (int i = 1; i <= leaves; ++i) edges.emplace_back(0, i);
    return casctop::Graph(leaves + 1, edges);
}

inline casctop::Graph cycle_graph(int n) {
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < n; ++i) edges.emplace_back(i, (i + 1) % n);
    return casctop::Graph(n, edges);
}

inline casctop::Graph tree_from_pruefer(const std::vector<int>& seq, int n) {
    std::vector<int> degree(n, 1);
    for (int x : seq) ++degree[x];
    std::set<int> leaves;
    for (int v = 0; v < n; ++v)
        if (degree[v] == 1) leaves.insert(v);
    std::vector<std::pair<int, int>> edges;
    std::vector<int> rest = seq;
    for (int x : rest) {
        int leaf = *leaves.begin();
        leaves.erase(leaves.begin());
        edges.emplace_back(leaf, x);
        if (--degree[x] == 1) leaves.insert(x);
    }
    int a = *leaves.begin();
    int b = *std::next(leaves.begin());
    edges.emplace_back(a, b);
    return casctop::Graph(n, edges);
}

// canonical form of a rooted tree (AHU encoding)
inline std::string ahu(const casctop::Graph& t, int v, int parent) {
    std::vector<std::string> child;
    for (int w : t.neighbors(v))
        if (w != parent) child.push_back(ahu(t, w, v));
    std::sort(child.begin(), child.end());
    std::string s = "(";
    for (const auto& c : child) s += c;
    s += ")";
    return s;
}

inline std::string canonical_form(const casctop::Graph& t) {
    // root at the centroid(s)
    int n = t.num_vertices();
    if (n == 1) return "()";
    std::vector<int> size(n, 0);
    std::vector<int> order, parent(n, -1);
    order.reserve(n);
    order.push_back(0);
    for (std::size_t i = 0; i < order.size(); ++i)
        for (int w : t.neighbors(order[i]))
            if (w != parent[order[i]]) {
                parent[w] = order[i];
                order.push_back(w);
            }
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
        size[*it] += 1;
        if (parent[*it] >= 0) size[parent[*it]] += size[*it];
    }
    std::vector<int> centroids;
    for (int v = 0; v < n; ++v) {
        int heaviest = n - size[v];
        for (int w : t.neighbors(v))
            if (parent[w] == v) heaviest = std::max(heaviest, size[w]);
        if (heaviest <= n / 2) centroids.push_back(v);
    }
    std::string best;
    for (int c : centroids) {
        std::string s = ahu(t, c, -1);
        if (best.empty() || s < best) best = s;
    }
    return best;
}

// every tree on n vertices up to isomorphism, from the Pruefer enumeration
inline std::vector<casctop::Graph> all_trees(int n) {
    if (n == 1) return {casctop::Graph(1, {})};
    if (n == 2) return {path_graph(2)};
    std::map<std::string, casctop::Graph> uniq;
    std::vector<int> seq(n - 2, 0);
    for (;;) {
        casctop::Graph t = tree_from_pruefer(seq, n);
        uniq.emplace(canonical_form(t), t);
        int i = n - 3;
        while (i >= 0 && seq[i] == n - 1) seq[i--] = 0;
        if (i < 0) break;
        ++seq[i];
    }
    std::vector<casctop::Graph> out;
    for (auto& [k, t] : uniq) out.push_back(std::move(t));
    return out;
}

inline std::vector<int> random_subset(int n, int k, casctop::Rng& rng) {
    std::vector<int> ids(n);
    for (int i = 0; i < n; ++i) ids[i] = i;
    for (int i = 0; i < k; ++i) {
        int j = i + static_cast<int>(rng.uniform_int(static_cast<std::uint64_t>(n - i)));
        std::swap(ids[i], ids[j]);
    }
    ids.resize(k);
    std::sort(ids.begin(), ids.end());
    return ids;
}

} // namespace testutil
