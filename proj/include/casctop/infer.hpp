#pragma once

#include "casctop/cascade.hpp"
#include "casctop/weights.hpp"

#include <string>
#include <vector>

namespace casctop {

struct InferenceConfig {
    int iterations = 2;         // transfer rounds I
    long long ms = -1;          // pairs selected per round; -1 means round(1.5 n)
    double mu1 = 0.0;           // declared first moment
    double mu2 = 0.0;           // declared second moment (graph weights)
    double deg_ave = 0.0;       // average degree; <= 0 means estimate from data
    double tau = 0.2;           // support-fraction threshold
    double trim = 0.4;          // trimmed-mean fraction of the degree estimator
    bool spanning_tree = false; // tree mode: minimum-weight spanning tree instead of plain selection
    std::string tie_break = "weight,u,v"; // the one supported total order

    long long effective_ms(int n) const;
    void validate() const;
};

// Reinterpret the cascade at `from` as one observed at `to`: per vertex pick
// T_from(u) +/- T_from(to) whichever lands closer to the observed T_to(u).
// Vertices missing in either cascade are omitted.
Cascade transfer(const Cascade& from, const Cascade& to);

// Iterative tree inference: I rounds of weight computation, selection of the
// ms best source pairs and mutual transfer with running-mean counters, then
// the n-1 smallest-weight pairs.
std::vector<Edge> iti(const std::vector<Cascade>& cascades, int n, const InferenceConfig& cfg);

struct GeneralItiResult {
    std::vector<Edge> edges;
    std::vector<double> mu_trajectory; // estimate after each round
    double mu_init = 0.0;
};

// Tree inference without the declared mean: bootstrap mu from a small value,
// run iti, re-estimate mu as the mean |dT| along the selected edges, repeat.
GeneralItiResult general_iti(const std::vector<Cascade>& cascades, int n,
                             const InferenceConfig& cfg, int rounds);

struct DegreeEstimate {
    double value = 0.0;
    int used = 0;     // sources contributing an estimate
    int excluded = 0; // sources dropped for lacking a positive arrival
};

// Average degree from the smallest positive arrival per source: each cascade
// contributes mu1/t_min, aggregated by a symmetric trimmed mean.
DegreeEstimate estimate_avg_degree(const std::vector<Cascade>& cascades, double mu1, double trim);

// Graph inference: like iti but with the two-moment weights and
// round(n*deg_ave/2) selected edges.
std::vector<Edge> gi(const std::vector<Cascade>& cascades, int n, const InferenceConfig& cfg);

// Internal engine result, exposed for the transfer-diagnostics and General-ITI
// re-estimation paths.
struct InferenceRun {
    std::vector<Edge> edges;
    std::vector<Cascade> cascades; // post-transfer timestamp state
};

enum class WeightKind { tree, two_moment };

InferenceRun run_inference(const std::vector<Cascade>& cascades, int n, const InferenceConfig& cfg,
                           WeightKind kind, long long final_count);

} // namespace casctop
