#include "casctop/reconstruction.hpp"

#include <algorithm>
#include <cstdlib>
#include <deque>
#include <stdexcept>

namespace casctop {

namespace {

void require_tree(const Graph& g, const char* op) {
    if (!g.is_tree()) throw std::invalid_argument(std::string(op) + ": input must be a connected tree");
}

void require_connected(const Graph& g, const char* op) {
    if (!g.is_connected()) throw std::invalid_argument(std::string(op) + ": input must be connected");
}

std::vector<char> membership(int n, const std::vector<int>& vs, const char* op) {
    std::vector<char> in(n, 0);
    for (int v : vs) {
        if (v < 0 || v >= n) throw std::invalid_argument(std::string(op) + ": vertex id out of range");
        in[v] = 1;
    }
    return in;
}

} // namespace

VertexClassification classify_vertices(const Graph& tree) {
    require_tree(tree, "classify_vertices");
    int n = tree.num_vertices();
    VertexClassification c;
    for (int v = 0; v < n; ++v) {
        int d = tree.degree(v);
        if (d <= 1) c.leaves.push_back(v); // lone vertex of a 1-vertex tree counts as boundary
        else if (d >= 3) c.branched.push_back(v);
        else c.ordinary.push_back(v);
    }
    // Walk from each leaf through ordinary vertices; the first branched vertex
    // hit (if any) has a leaf path free of other branched vertices.
    std::vector<char> is_bb(n, 0);
    for (int leaf : c.leaves) {
        int prev = leaf;
        int cur = tree.degree(leaf) == 1 ? tree.neighbors(leaf)[0] : leaf;
        while (cur != prev && tree.degree(cur) == 2) {
            int nxt = tree.neighbors(cur)[0] == prev ? tree.neighbors(cur)[1] : tree.neighbors(cur)[0];
            prev = cur;
            cur = nxt;
        }
        if (tree.degree(cur) >= 3) is_bb[cur] = 1;
    }
    for (int v : c.branched)
        if (is_bb[v]) c.boundary_branched.push_back(v);
    return c;
}

std::vector<int> convex_hull(const Graph& tree, const std::vector<int>& vs) {
    require_tree(tree, "convex_hull");
    if (vs.empty()) throw std::invalid_argument("convex_hull: vertex set must be non-empty");
    int n = tree.num_vertices();
    auto keep = membership(n, vs, "convex_hull");

    // strip leaves not in vs until only the Steiner subtree remains
    std::vector<int> deg(n);
    std::vector<char> alive(n, 1);
    std::deque<int> q;
    for (int v = 0; v < n; ++v) {
        deg[v] = tree.degree(v);
        if (deg[v] <= 1 && !keep[v]) q.push_back(v);
    }
    while (!q.empty()) {
        int v = q.front();
        q.pop_front();
        if (!alive[v]) continue;
        alive[v] = 0;
        for (int w : tree.neighbors(v))
            if (alive[w] && --deg[w] <= 1 && !keep[w]) q.push_back(w);
    }
    std::vector<int> hull;
    for (int v = 0; v < n; ++v)
        if (alive[v]) hull.push_back(v);
    return hull;
}

int relative_distance(const DistanceTable& dt, const std::vector<int>& vs, int u, int v) {
    if (vs.empty()) throw std::invalid_argument("relative_distance: vertex set must be non-empty");
    int best = 0;
    for (int s : vs) {
        int diff = std::abs(dt.dist(s, u) - dt.dist(s, v));
        best = std::max(best, diff);
    }
    return best;
}

bool is_separating(const Graph& g, const std::vector<int>& vs) {
    require_connected(g, "is_separating");
    int n = g.num_vertices();
    membership(n, vs, "is_separating");
    if (vs.empty()) return n <= 1;
    // vertices with identical distance signatures to vs collide after sorting
    std::vector<std::vector<int>> sig(n, std::vector<int>(vs.size()));
    for (std::size_t i = 0; i < vs.size(); ++i) {
        auto d = bfs_distances(g, vs[i]);
        for (int v = 0; v < n; ++v) sig[v][i] = d[v];
    }
    std::sort(sig.begin(), sig.end());
    for (int v = 0; v + 1 < n; ++v)
        if (sig[v] == sig[v + 1]) return false;
    return true;
}

std::vector<Edge> reconstruct_from(const DistanceTable& dt, const std::vector<int>& vs, int n,
                                   ReconstructMode mode) {
    if (vs.empty()) throw std::invalid_argument("reconstruct_from: vertex set must be non-empty");
    std::vector<const std::vector<int>*> rows;
    rows.reserve(vs.size());
    for (int s : vs) {
        const auto& r = dt.row(s);
        for (int v = 0; v < n; ++v)
            if (r[v] < 0) throw std::invalid_argument("reconstruct_from: missing distance entry");
        rows.push_back(&r);
    }
    std::vector<Edge> out;
    for (int u = 0; u < n; ++u) {
        for (int v = u + 1; v < n; ++v) {
            int rel = 0;
            bool le1 = true;
            for (const auto* r : rows) {
                int diff = std::abs((*r)[u] - (*r)[v]);
                if (diff > 1) {
                    le1 = false;
                    break;
                }
                rel = std::max(rel, diff);
            }
            if (!le1) continue;
            if (mode == ReconstructMode::exact_eq1 && rel != 1) continue;
            out.push_back({u, v});
        }
    }
    return out;
}

double accuracy_lower_bound(const Graph& tree, const std::vector<int>& vs) {
    if (vs.empty()) return 0.0;
    auto hull = convex_hull(tree, vs);
    return static_cast<double>(hull.size()) / tree.num_vertices();
}

bool is_redundant(const DistanceTable& dt, const std::vector<int>& vs, int v_i, int n,
                  ReconstructMode mode) {
    if (std::find(vs.begin(), vs.end(), v_i) == vs.end())
        throw std::invalid_argument("is_redundant: v_i must be a member of vs");
    if (mode == ReconstructMode::threshold_le1) {
        // v_i is redundant iff every pair it pushes beyond distance 1 is also
        // pushed beyond 1 by some other member.
        const auto& ri = dt.row(v_i);
        for (int u = 0; u < n; ++u) {
            if (ri[u] < 0) throw std::invalid_argument("is_redundant: missing distance entry");
            for (int v = u + 1; v < n; ++v) {
                if (std::abs(ri[u] - ri[v]) <= 1) continue;
                bool covered = false;
                for (int s : vs) {
                    if (s == v_i) continue;
                    if (std::abs(dt.dist(s, u) - dt.dist(s, v)) > 1) {
                        covered = true;
                        break;
                    }
                }
                if (!covered) return false;
            }
        }
        return true;
    }
    // exact_eq1 has no single-member criterion; fall back to the definition
    std::vector<int> without;
    for (int s : vs)
        if (s != v_i) without.push_back(s);
    if (without.empty()) {
        // removing the only member: compare against the empty reconstruction,
        // which has no constraints; equal only if vs itself constrained nothing
        return false;
    }
    return reconstruct_from(dt, vs, n, mode) == reconstruct_from(dt, without, n, mode);
}

std::vector<int> redundant_core(const Graph& tree, const std::vector<int>& vs) {
    require_tree(tree, "redundant_core");
    int n = tree.num_vertices();
    membership(n, vs, "redundant_core");

    std::vector<int> members = vs;
    std::sort(members.begin(), members.end());
    members.erase(std::unique(members.begin(), members.end()), members.end());
    if (members.size() <= 1) return members;

    // per-member BFS rows, once
    std::vector<std::vector<int>> rows(members.size());
    std::vector<int> row_of(n, -1);
    for (std::size_t i = 0; i < members.size(); ++i) {
        rows[i] = bfs_distances(tree, members[i]);
        row_of[members[i]] = static_cast<int>(i);
    }

    // c(u,v) = how many current members separate the pair beyond distance 1
    std::vector<std::uint16_t> count(static_cast<std::size_t>(n) * n, 0);
    auto at = [n](int u, int v) { return static_cast<std::size_t>(u) * n + v; };
    for (const auto& r : rows)
        for (int u = 0; u < n; ++u)
            for (int v = u + 1; v < n; ++v)
                if (std::abs(r[u] - r[v]) > 1) ++count[at(u, v)];

    std::vector<char> kept(members.size(), 1);
    for (std::size_t i = 0; i < members.size(); ++i) {
        const auto& r = rows[i];
        bool pivotal = false;
        for (int u = 0; u < n && !pivotal; ++u)
            for (int v = u + 1; v < n; ++v)
                if (std::abs(r[u] - r[v]) > 1 && count[at(u, v)] == 1) {
                    pivotal = true;
                    break;
                }
        if (pivotal) continue;
        kept[i] = 0; // redundant w.r.t. the current set, hence w.r.t. vs
        for (int u = 0; u < n; ++u)
            for (int v = u + 1; v < n; ++v)
                if (std::abs(r[u] - r[v]) > 1) --count[at(u, v)];
    }

    std::vector<int> core;
    for (std::size_t i = 0; i < members.size(); ++i)
        if (kept[i]) core.push_back(members[i]);
    return core;
}

SubtreeHandle subtree(const Graph& tree, int u, int v) {
    require_tree(tree, "subtree");
    tree.check_vertex(u);
    tree.check_vertex(v);
    if (u == v) throw std::invalid_argument("subtree: anchors must be distinct");

    // first vertex after u on the unique path [u,v]
    auto du = bfs_distances(tree, u);
    auto dv = bfs_distances(tree, v);
    int first = -1;
    for (int w : tree.neighbors(u))
        if (dv[w] + 1 == dv[u]) {
            first = w;
            break;
        }
    // members: vertices strictly closer to u than to the cut neighbor
    SubtreeHandle h{u, v, {}};
    auto dfirst = bfs_distances(tree, first);
    for (int w = 0; w < tree.num_vertices(); ++w)
        if (du[w] < dfirst[w]) h.members.push_back(w);
    return h;
}

bool exact_reconstruction_precondition(const Graph& tree, const std::vector<int>& vs) {
    require_tree(tree, "exact_reconstruction_precondition");
    if (vs.empty()) return false;
    if (!is_separating(tree, vs)) return false;

    int n = tree.num_vertices();
    auto hull = convex_hull(tree, vs);
    std::vector<char> in_hull(n, 0);
    for (int v : hull) in_hull[v] = 1;

    auto cls = classify_vertices(tree);

    // boundary-branched vertices with at least one neighbor outside the hull
    std::vector<int> critical;
    for (int b : cls.boundary_branched) {
        for (int w : tree.neighbors(b))
            if (!in_hull[w]) {
                critical.push_back(b);
                break;
            }
    }
    // leaves of the hull subtree
    std::vector<int> hull_deg(n, 0);
    for (int v : hull)
        for (int w : tree.neighbors(v))
            if (in_hull[w]) ++hull_deg[v];
    for (int v : hull)
        if (hull_deg[v] <= 1) critical.push_back(v);

    std::sort(critical.begin(), critical.end());
    critical.erase(std::unique(critical.begin(), critical.end()), critical.end());

    for (std::size_t i = 0; i < critical.size(); ++i) {
        auto d = bfs_distances(tree, critical[i]);
        for (std::size_t j = i + 1; j < critical.size(); ++j)
            if (d[critical[j]] <= 1) return false;
    }
    return true;
}

} // namespace casctop
