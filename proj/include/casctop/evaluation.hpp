#pragma once

#include "casctop/delay.hpp"
#include "casctop/generators.hpp"
#include "casctop/graph.hpp"
#include "casctop/infer.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace casctop {

// 1 - symmetric adjacency disagreement over 2|E|; penalizes both missed
// edges and false positives.
double edge_recovery_rate(const std::vector<Edge>& estimated, const std::vector<Edge>& truth);

enum class GeneratorFamily { er_tree, er_graph, forest_fire };
GeneratorFamily generator_family_from_string(const std::string& name);
std::string to_string(GeneratorFamily f);

struct GeneratorSpec {
    GeneratorFamily family = GeneratorFamily::er_tree;
    int n = 500;
    double avg_degree = 4.0; // er_graph
    double p_forward = 0.0;  // forest_fire
    double p_backward = 0.0; // forest_fire

    Graph generate(std::uint64_t seed) const;
};

enum class AlgorithmId { iti, general_iti, gi, reconstruct_from };
AlgorithmId algorithm_from_string(const std::string& name);
std::string to_string(AlgorithmId a);

// Delay description for experiment configs: either a shared family or the
// heterogeneous exponential range.
struct DelayConfig {
    DelayParams params;
    bool heterogeneous = false;
    double lo = 0.5, hi = 1.5; // heterogeneous mean range

    DelaySpec build(const Graph& g, std::uint64_t seed) const;
};

struct ExperimentConfig {
    GeneratorSpec generator;
    std::string graph_path;  // when set, load instead of generating
    DelayConfig delay;
    double vc_frac = 0.5;    // fraction of vertices used as sources
    int explicit_vc = -1;    // absolute source count, overrides vc_frac when >= 0
    int kappa = 1;           // cascades per source
    AlgorithmId algorithm = AlgorithmId::iti;
    InferenceConfig infer;
    int giti_rounds = 3;     // general_iti rounds
    int trials = 200;
    std::uint64_t seed = 0;
    int jobs = 1;
    bool use_declared_moments = true; // fill infer.mu1/mu2 from the delay spec
};

struct TrialReport {
    int trial = 0;
    std::uint64_t seed = 0;
    std::optional<double> recovery = {};  // absent on failure
    double hull_fraction = 0.0;           // reconstruct_from trials
    bool unique_reconstruction = false;   // reconstruct_from trials
    double wall_ms = 0.0;
    std::string error;                    // non-empty on failure
};

struct TrialAggregate {
    int trials_ok = 0;
    int trials_failed = 0;
    double mean_recovery = 0.0;
    double sd_recovery = 0.0;
    double mean_hull_fraction = 0.0;
    double unique_rate = 0.0;
    double mean_wall_ms = 0.0;
};

struct TrialBatch {
    std::vector<TrialReport> reports;
    TrialAggregate aggregate;
};

// One trial, fully determined by (config, trial index): generate or load the
// graph, draw the sources, simulate and per-source average the cascades, run
// the configured algorithm, score the estimate.
TrialReport run_trial(const ExperimentConfig& cfg, int trial_index);

// All trials, optionally in parallel; failures are recorded, not fatal, and
// excluded from the aggregate with their count disclosed.
TrialBatch run_trials(const ExperimentConfig& cfg);

// Cartesian sweep over experiment knobs; one aggregate CSV row per grid point.
struct SweepGrid {
    std::vector<double> vc_fracs;
    std::vector<int> kappas;
    std::vector<int> iterations;
    std::vector<long long> ms_values;
    std::vector<AlgorithmId> algorithms;
};

std::string sweep_csv_header();
std::string sweep_csv(const ExperimentConfig& base, const SweepGrid& grid);

} // namespace casctop
