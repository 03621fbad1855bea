#pragma once

#include "casctop/graph.hpp"

#include <vector>

namespace casctop {

// Degree classes of a tree plus the boundary-branched subset: branched
// vertices reachable from some leaf without passing through another
// branched vertex.
struct VertexClassification {
    std::vector<int> leaves;            // degree 1
    std::vector<int> branched;          // degree >= 3
    std::vector<int> ordinary;          // degree 2
    std::vector<int> boundary_branched; // subset of branched
};

VertexClassification classify_vertices(const Graph& tree);

// Union of all simple paths between pairs of vs; induces a subtree.
std::vector<int> convex_hull(const Graph& tree, const std::vector<int>& vs);

// sup over v_i in vs of |d(v_i,u) - d(v_i,v)|; a pseudometric in (u,v).
int relative_distance(const DistanceTable& dt, const std::vector<int>& vs, int u, int v);

// true iff every distinct pair of vertices differs in distance to some member of vs
bool is_separating(const Graph& g, const std::vector<int>& vs);

enum class ReconstructMode {
    threshold_le1, // edge iff relative distance <= 1 (general definition)
    exact_eq1,     // edge iff relative distance == 1 (valid for trees)
};

// Declare (u,v) an edge based on the relative distance to vs.
std::vector<Edge> reconstruct_from(const DistanceTable& dt, const std::vector<int>& vs, int n,
                                   ReconstructMode mode = ReconstructMode::threshold_le1);

// |conv(vs)| / |V|, a lower bound for the reconstruction accuracy on trees
double accuracy_lower_bound(const Graph& tree, const std::vector<int>& vs);

// True when removing v_i from vs leaves the reconstructed edge set unchanged.
bool is_redundant(const DistanceTable& dt, const std::vector<int>& vs, int v_i, int n,
                  ReconstructMode mode = ReconstructMode::threshold_le1);

// Greedily removes redundant vertices from vs in ascending id order, re-testing
// after each removal; every removed vertex is redundant w.r.t. the original vs.
std::vector<int> redundant_core(const Graph& tree, const std::vector<int>& vs);

// Component containing u after deleting the first edge of the path [u,v].
struct SubtreeHandle {
    int anchor_u;
    int anchor_v;
    std::vector<int> members;
};

SubtreeHandle subtree(const Graph& tree, int u, int v);

// Hypotheses under which reconstruction from vs returns the tree exactly:
// vs separates the tree and the boundary-branched vertices with neighbors
// outside conv(vs), together with the hull's own leaves, are pairwise at
// distance greater than 1.
bool exact_reconstruction_precondition(const Graph& tree, const std::vector<int>& vs);

} // namespace casctop
