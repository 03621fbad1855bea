#pragma once

#include "casctop/graph.hpp"
#include "casctop/rng.hpp"

#include <cstdint>
#include <string>

namespace casctop {

// Random recursive tree: vertices arrive one at a time and attach to a
// uniformly chosen existing vertex (non-preferential).
Graph gen_er_tree(int n, std::uint64_t seed);

// G(n,m) with m = round(n*avg_degree/2) uniformly chosen edges, resampled
// until connected. Sparse settings (average degree 4 at n=300) connect with
// probability well under 1%, so the retry budget has to be generous.
Graph gen_er_graph(int n, double avg_degree, std::uint64_t seed, int max_retries = 20000);

// Undirected forest-fire growth: each new vertex picks an ambassador and
// recursively burns forward/backward links with geometric counts, then links
// to every burned vertex.
Graph gen_forest_fire(int n, double p_forward, double p_backward, std::uint64_t seed);

// Edge-list text format: one "u v" pair per line, 0-based decimal ids,
// '#'-prefixed comment lines ignored. Ids are remapped to a dense range
// preserving order when the file uses sparse ids.
Graph load_edge_list(const std::string& path);
void save_edge_list(const Graph& g, const std::string& path);

} // namespace casctop
