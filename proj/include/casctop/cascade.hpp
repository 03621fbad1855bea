#pragma once

#include "casctop/delay.hpp"
#include "casctop/graph.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace casctop {

// One diffusion record: first-arrival times from a single source. Partial
// coverage (horizon censoring) is explicit via the seen mask. eta counts
// how many simulated cascades were averaged into this record.
struct Cascade {
    int source = 0;
    std::vector<double> time; // valid where seen[v]
    std::vector<char> seen;
    long long eta = 1;

    int num_vertices() const { return static_cast<int>(time.size()); }
    bool covers(int v) const { return seen[v] != 0; }
    bool full_coverage() const;
};

// Sample one delay per edge, then first-arrival times are the weighted
// shortest-path times from the source (continuous-time SI race). Vertices
// arriving after `horizon` are omitted when a horizon is set.
Cascade simulate_cascade(const Graph& g, int source, const DelaySpec& spec, std::uint64_t seed,
                         std::optional<double> horizon = std::nullopt);

// Running per-vertex mean with the eta counters; vertices present in only
// one input keep the available value.
Cascade average_into(const Cascade& c, const Cascade& fresh);

// Cascade text format: "source <id>" header, one "vertex time" line per seen
// vertex, blank line between cascades. Times round-trip exactly at 17
// significant digits. The format carries no vertex count; pass n when the
// universe is larger than the highest censored id in the file.
void save_cascades(const std::vector<Cascade>& cs, const std::string& path);
std::vector<Cascade> load_cascades(const std::string& path, std::optional<int> n = std::nullopt);

} // namespace casctop
