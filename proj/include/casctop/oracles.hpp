#pragma once

#include "casctop/graph.hpp"
#include "casctop/reconstruction.hpp"

#include <vector>

// Definitional brute-force counterparts of the optimized operations. They are
// deliberately written along different routes (Floyd-Warshall instead of BFS,
// explicit pairwise paths instead of leaf stripping, double reconstruction
// instead of the pivotal-pair criterion) and are exported so tests can cross
// check the two implementations against each other.
namespace casctop::oracle {

// all-pairs hop distances; -1 for unreachable pairs
std::vector<std::vector<int>> floyd_warshall(const Graph& g);

// union of the explicit vertex paths between all pairs of vs
std::vector<int> hull_pairwise_paths(const Graph& tree, const std::vector<int>& vs);

// redundancy by comparing the two reconstructed edge sets
bool redundant_by_double_reconstruction(const DistanceTable& dt, const std::vector<int>& vs,
                                        int v_i, int n,
                                        ReconstructMode mode = ReconstructMode::threshold_le1);

// separating test straight from the definition, pair by pair
bool separating_by_definition(const Graph& g, const std::vector<int>& vs);

// subtree membership by BFS that refuses to use the deleted edge
std::vector<int> subtree_members_by_bfs(const Graph& tree, int u, int v);

} // namespace casctop::oracle
