#include "casctop/evaluation.hpp"

#include "casctop/reconstruction.hpp"
#include "casctop/theory.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <set>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace casctop {

double edge_recovery_rate(const std::vector<Edge>& estimated, const std::vector<Edge>& truth) {
    if (truth.empty()) throw std::invalid_argument("edge_recovery_rate: truth edge set is empty");
    std::set<Edge> est(estimated.begin(), estimated.end());
    std::set<Edge> tru(truth.begin(), truth.end());
    long long disagree = 0;
    for (const auto& e : est)
        if (!tru.count(e)) ++disagree;
    for (const auto& e : tru)
        if (!est.count(e)) ++disagree;
    return 1.0 - static_cast<double>(disagree) / (2.0 * static_cast<double>(tru.size()));
}

GeneratorFamily generator_family_from_string(const std::string& name) {
    if (name == "er_tree") return GeneratorFamily::er_tree;
    if (name == "er_graph") return GeneratorFamily::er_graph;
    if (name == "forest_fire") return GeneratorFamily::forest_fire;
    throw std::invalid_argument("unknown generator family: " + name);
}

std::string to_string(GeneratorFamily f) {
    switch (f) {
        case GeneratorFamily::er_tree: return "er_tree";
        case GeneratorFamily::er_graph: return "er_graph";
        case GeneratorFamily::forest_fire: return "forest_fire";
    }
    throw std::logic_error("unreachable");
}

Graph GeneratorSpec::generate(std::uint64_t seed) const {
    switch (family) {
        case GeneratorFamily::er_tree: return gen_er_tree(n, seed);
        case GeneratorFamily::er_graph: return gen_er_graph(n, avg_degree, seed);
        case GeneratorFamily::forest_fire: return gen_forest_fire(n, p_forward, p_backward, seed);
    }
    throw std::logic_error("unreachable");
}

AlgorithmId algorithm_from_string(const std::string& name) {
    if (name == "iti") return AlgorithmId::iti;
    if (name == "general_iti" || name == "giti") return AlgorithmId::general_iti;
    if (name == "gi") return AlgorithmId::gi;
    if (name == "reconstruct_from" || name == "reconstruct") return AlgorithmId::reconstruct_from;
    throw std::invalid_argument("unknown algorithm: " + name);
}

std::string to_string(AlgorithmId a) {
    switch (a) {
        case AlgorithmId::iti: return "iti";
        case AlgorithmId::general_iti: return "general_iti";
        case AlgorithmId::gi: return "gi";
        case AlgorithmId::reconstruct_from: return "reconstruct_from";
    }
    throw std::logic_error("unreachable");
}

DelaySpec DelayConfig::build(const Graph& g, std::uint64_t seed) const {
    if (heterogeneous) return make_heterogeneous(g, DelayFamily::exponential, lo, hi, seed);
    return DelaySpec::homogeneous(params);
}

namespace {

std::vector<int> draw_sources(int n, int count, Rng& rng) {
    if (count < 1 || count > n) throw std::invalid_argument("trial: source count out of range");
    // partial Fisher-Yates over the id range
    std::vector<int> ids(n);
    for (int i = 0; i < n; ++i) ids[i] = i;
    for (int i = 0; i < count; ++i) {
        int j = i + static_cast<int>(rng.uniform_int(static_cast<std::uint64_t>(n - i)));
        std::swap(ids[i], ids[j]);
    }
    ids.resize(count);
    return ids;
}

} // namespace

TrialReport run_trial(const ExperimentConfig& cfg, int trial_index) {
    TrialReport rep;
    rep.trial = trial_index;
    rep.seed = derive_seed(cfg.seed, static_cast<std::uint64_t>(trial_index));
    auto t0 = std::chrono::steady_clock::now();
    try {
        Graph g = cfg.graph_path.empty() ? cfg.generator.generate(derive_seed(rep.seed, 1))
                                         : load_edge_list(cfg.graph_path);
        int n = g.num_vertices();
        Rng rng(derive_seed(rep.seed, 2));
        int vc = cfg.explicit_vc >= 0 ? cfg.explicit_vc
                                      : std::max(1, static_cast<int>(std::lround(cfg.vc_frac * n)));
        std::vector<int> sources = draw_sources(n, vc, rng);

        if (cfg.algorithm == AlgorithmId::reconstruct_from) {
            rep.hull_fraction = accuracy_lower_bound(g, sources);
            rep.unique_reconstruction = uniquely_reconstructible(g, sources);
            auto dt = DistanceTable::from_sources(g, sources);
            auto edges = reconstruct_from(dt, sources, n);
            rep.recovery = edge_recovery_rate(edges, g.edges());
        } else {
            DelaySpec spec = cfg.delay.build(g, derive_seed(rep.seed, 3));
            std::vector<Cascade> cascades;
            cascades.reserve(sources.size());
            std::uint64_t stream = 100;
            for (int s : sources) {
                Cascade merged = simulate_cascade(g, s, spec, derive_seed(rep.seed, stream++));
                for (int k = 1; k < cfg.kappa; ++k)
                    merged = average_into(merged,
                                          simulate_cascade(g, s, spec, derive_seed(rep.seed, stream++)));
                cascades.push_back(std::move(merged));
            }

            InferenceConfig icfg = cfg.infer;
            if (cfg.use_declared_moments) {
                icfg.mu1 = spec.declared_moment(1);
                icfg.mu2 = spec.declared_moment(2);
            }
            std::vector<Edge> estimated;
            switch (cfg.algorithm) {
                case AlgorithmId::iti:
                    estimated = iti(cascades, n, icfg);
                    break;
                case AlgorithmId::general_iti:
                    estimated = general_iti(cascades, n, icfg, cfg.giti_rounds).edges;
                    break;
                case AlgorithmId::gi:
                    estimated = gi(cascades, n, icfg);
                    break;
                case AlgorithmId::reconstruct_from:
                    break; // handled above
            }
            rep.recovery = edge_recovery_rate(estimated, g.edges());
        }
    } catch (const std::exception& e) {
        rep.recovery.reset();
        rep.error = e.what();
    }
    rep.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    return rep;
}

TrialBatch run_trials(const ExperimentConfig& cfg) {
    if (cfg.trials < 1) throw std::invalid_argument("run_trials: need at least one trial");
    TrialBatch batch;
    batch.reports.resize(cfg.trials);

    int jobs = std::max(1, cfg.jobs);
    if (jobs == 1) {
        for (int t = 0; t < cfg.trials; ++t) batch.reports[t] = run_trial(cfg, t);
    } else {
        std::vector<std::thread> workers;
        std::atomic<int> next{0};
        for (int w = 0; w < jobs; ++w)
            workers.emplace_back([&] {
                for (;;) {
                    int t = next.fetch_add(1);
                    if (t >= cfg.trials) return;
                    batch.reports[t] = run_trial(cfg, t);
                }
            });
        for (auto& w : workers) w.join();
    }

    // deterministic fold in trial order
    auto& agg = batch.aggregate;
    double sum = 0.0, sumsq = 0.0, hull = 0.0, wall = 0.0;
    int uniq = 0;
    for (const auto& r : batch.reports) {
        wall += r.wall_ms;
        if (!r.recovery) {
            ++agg.trials_failed;
            continue;
        }
        ++agg.trials_ok;
        sum += *r.recovery;
        sumsq += *r.recovery * *r.recovery;
        hull += r.hull_fraction;
        uniq += r.unique_reconstruction ? 1 : 0;
    }
    if (agg.trials_ok > 0) {
        agg.mean_recovery = sum / agg.trials_ok;
        double var = sumsq / agg.trials_ok - agg.mean_recovery * agg.mean_recovery;
        agg.sd_recovery = std::sqrt(std::max(var, 0.0));
        agg.mean_hull_fraction = hull / agg.trials_ok;
        agg.unique_rate = static_cast<double>(uniq) / agg.trials_ok;
    }
    agg.mean_wall_ms = wall / static_cast<double>(batch.reports.size());
    return batch;
}

std::string sweep_csv_header() {
    return "algorithm,family,n,vc_frac,kappa,iterations,ms,trials_ok,trials_failed,"
           "mean_R,sd_R,mean_hull,unique_rate,mean_wall_ms";
}

std::string sweep_csv(const ExperimentConfig& base, const SweepGrid& grid) {
    if (grid.vc_fracs.empty() || grid.kappas.empty() || grid.iterations.empty() ||
        grid.ms_values.empty() || grid.algorithms.empty())
        throw std::invalid_argument("sweep: every grid axis needs at least one value");

    std::ostringstream out;
    out << sweep_csv_header() << '\n';
    for (AlgorithmId algo : grid.algorithms)
        for (double vc : grid.vc_fracs)
            for (int kappa : grid.kappas)
                for (int iters : grid.iterations)
                    for (long long ms : grid.ms_values) {
                        ExperimentConfig cfg = base;
                        cfg.algorithm = algo;
                        cfg.vc_frac = vc;
                        cfg.kappa = kappa;
                        cfg.infer.iterations = iters;
                        cfg.infer.ms = ms;
                        TrialBatch b = run_trials(cfg);
                        out << to_string(algo) << ',' << to_string(cfg.generator.family) << ','
                            << cfg.generator.n << ',' << vc << ',' << kappa << ',' << iters << ','
                            << ms << ',' << b.aggregate.trials_ok << ','
                            << b.aggregate.trials_failed << ',' << b.aggregate.mean_recovery << ','
                            << b.aggregate.sd_recovery << ',' << b.aggregate.mean_hull_fraction
                            << ',' << b.aggregate.unique_rate << ',' << b.aggregate.mean_wall_ms
                            << '\n';
                    }
    return out.str();
}

} // namespace casctop
