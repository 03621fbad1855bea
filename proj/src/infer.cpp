#include "casctop/infer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace casctop {

long long InferenceConfig::effective_ms(int n) const {
    if (ms >= 0) return ms;
    return std::llround(1.5 * n);
}

void InferenceConfig::validate() const {
    if (iterations < 0) throw std::invalid_argument("InferenceConfig: iterations must be >= 0");
    if (tau < 0.0 || tau > 1.0) throw std::invalid_argument("InferenceConfig: tau must be in [0,1]");
    if (trim < 0.0 || trim >= 0.5)
        throw std::invalid_argument("InferenceConfig: trim must be in [0,0.5)");
    if (tie_break != "weight,u,v")
        throw std::invalid_argument("InferenceConfig: unsupported tie-break rule " + tie_break);
}

Cascade transfer(const Cascade& from, const Cascade& to) {
    if (from.num_vertices() != to.num_vertices())
        throw std::invalid_argument("transfer: cascades cover different vertex universes");
    if (!from.covers(to.source))
        throw std::invalid_argument("transfer: origin cascade has no timestamp at the new source");
    double pivot = from.time[to.source];
    Cascade out;
    out.source = to.source;
    out.time.assign(from.num_vertices(), 0.0);
    out.seen.assign(from.num_vertices(), 0);
    out.eta = 1;
    for (int u = 0; u < from.num_vertices(); ++u) {
        if (!from.covers(u) || !to.covers(u)) continue;
        double plus = from.time[u] + pivot;
        double minus = from.time[u] - pivot;
        double observed = to.time[u];
        double x = std::abs(minus - observed) <= std::abs(plus - observed) ? minus : plus;
        out.time[u] = x;
        out.seen[u] = 1;
    }
    out.time[to.source] = 0.0;
    out.seen[to.source] = 1;
    return out;
}

namespace {

// running-mean merge of one synthetic cascade, counter already incremented
void eta_update(Cascade& c, const Cascade& synth, long long eta) {
    double w = static_cast<double>(eta);
    for (int v = 0; v < c.num_vertices(); ++v) {
        if (!synth.covers(v)) continue;
        c.time[v] = (w * c.time[v] + synth.time[v]) / (w + 1.0);
    }
}

WeightMatrix compute_weights(const std::vector<Cascade>& cascades, const InferenceConfig& cfg,
                             WeightKind kind) {
    if (kind == WeightKind::tree) {
        if (cfg.mu1 <= 0.0) throw std::invalid_argument("inference: mu1 must be set and positive");
        return tree_weights(cascades, cfg.mu1, cfg.tau);
    }
    if (cfg.mu1 <= 0.0 || cfg.mu2 <= 0.0)
        throw std::invalid_argument("inference: mu1 and mu2 must be set and positive");
    return graph_weights(cascades, cfg.mu1, cfg.mu2, cfg.tau);
}

// minimum-weight spanning tree over the scorable pairs (optional tree mode)
std::vector<Edge> spanning_selection(const WeightMatrix& w, int n) {
    struct Entry {
        double weight;
        int u, v;
    };
    std::vector<Entry> entries;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (w.scorable(u, v)) entries.push_back({w.weight(u, v), u, v});
    std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) {
        if (a.weight != b.weight) return a.weight < b.weight;
        if (a.u != b.u) return a.u < b.u;
        return a.v < b.v;
    });
    std::vector<int> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    std::vector<Edge> out;
    for (const auto& e : entries) {
        int a = find(e.u), b = find(e.v);
        if (a == b) continue;
        parent[a] = b;
        out.push_back({e.u, e.v});
        if (static_cast<int>(out.size()) == n - 1) break;
    }
    if (static_cast<int>(out.size()) != n - 1)
        throw std::runtime_error("spanning selection: scorable pairs do not connect all vertices");
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace

InferenceRun run_inference(const std::vector<Cascade>& cascades, int n, const InferenceConfig& cfg,
                           WeightKind kind, long long final_count) {
    cfg.validate();
    if (cascades.empty()) throw std::invalid_argument("inference: need at least one cascade");
    for (const auto& c : cascades)
        if (c.num_vertices() != n)
            throw std::invalid_argument("inference: cascade universe does not match n");

    std::vector<Cascade> work = cascades;
    std::vector<long long> eta(work.size(), 0);
    long long ms = cfg.effective_ms(n);

    for (int s = 0; s < cfg.iterations; ++s) {
        WeightMatrix w = compute_weights(work, cfg, kind);

        // source pairs eligible for transfer: scorable and mutually timestamped
        struct Pick {
            double weight;
            int u, v; // source vertex ids
            std::size_t i, j;
        };
        std::vector<Pick> picks;
        for (std::size_t i = 0; i < work.size(); ++i)
            for (std::size_t j = i + 1; j < work.size(); ++j) {
                int a = work[i].source, b = work[j].source;
                if (a == b) continue;
                if (!w.scorable(a, b)) continue;
                if (!work[i].covers(b) || !work[j].covers(a)) continue;
                int u = std::min(a, b), v = std::max(a, b);
                picks.push_back({w.weight(u, v), u, v, i, j});
            }
        std::sort(picks.begin(), picks.end(), [](const Pick& a, const Pick& b) {
            if (a.weight != b.weight) return a.weight < b.weight;
            if (a.u != b.u) return a.u < b.u;
            return a.v < b.v;
        });
        if (static_cast<long long>(picks.size()) > ms) picks.resize(ms);

        for (const auto& p : picks) {
            Cascade to_i = transfer(work[p.j], work[p.i]);
            Cascade to_j = transfer(work[p.i], work[p.j]);
            ++eta[p.i];
            ++eta[p.j];
            eta_update(work[p.i], to_i, eta[p.i]);
            eta_update(work[p.j], to_j, eta[p.j]);
        }
    }

    WeightMatrix w = compute_weights(work, cfg, kind);
    InferenceRun run;
    run.cascades = std::move(work);
    run.edges = cfg.spanning_tree && final_count == n - 1 ? spanning_selection(w, n)
                                                          : w.smallest_pairs(final_count);
    return run;
}

std::vector<Edge> iti(const std::vector<Cascade>& cascades, int n, const InferenceConfig& cfg) {
    if (n < 2) throw std::invalid_argument("iti: need at least two vertices");
    return run_inference(cascades, n, cfg, WeightKind::tree, n - 1).edges;
}

std::vector<Edge> gi(const std::vector<Cascade>& cascades, int n, const InferenceConfig& cfg) {
    if (n < 2) throw std::invalid_argument("gi: need at least two vertices");
    double deg = cfg.deg_ave;
    if (deg <= 0.0) deg = estimate_avg_degree(cascades, cfg.mu1, cfg.trim).value;
    long long count = std::llround(n * deg / 2.0);
    if (count < 1) count = 1;
    return run_inference(cascades, n, cfg, WeightKind::two_moment, count).edges;
}

GeneralItiResult general_iti(const std::vector<Cascade>& cascades, int n,
                             const InferenceConfig& cfg, int rounds) {
    if (rounds < 1) throw std::invalid_argument("general_iti: rounds must be >= 1");
    if (n < 2) throw std::invalid_argument("general_iti: need at least two vertices");

    // initializer: a deliberately small value, one tenth of the smallest
    // positive observed |dT|
    double min_pos = std::numeric_limits<double>::infinity();
    for (const auto& c : cascades) {
        for (int u = 0; u < n; ++u) {
            if (!c.covers(u)) continue;
            for (int v = u + 1; v < n; ++v) {
                if (!c.covers(v)) continue;
                double d = std::abs(c.time[u] - c.time[v]);
                if (d > 0.0 && d < min_pos) min_pos = d;
            }
        }
    }
    if (!std::isfinite(min_pos))
        throw std::invalid_argument("general_iti: no positive time difference observed");

    GeneralItiResult res;
    res.mu_init = 0.1 * min_pos;
    double mu_hat = res.mu_init;
    InferenceRun last;
    for (int r = 0; r < rounds; ++r) {
        InferenceConfig round_cfg = cfg;
        round_cfg.mu1 = mu_hat;
        last = run_inference(cascades, n, round_cfg, WeightKind::tree, n - 1);
        // mean |dT| along the selected edges, over the post-transfer times
        double sum = 0.0;
        long long terms = 0;
        for (const auto& e : last.edges) {
            double pair_sum = 0.0;
            int pair_cnt = 0;
            for (const auto& c : last.cascades) {
                if (!c.covers(e.u) || !c.covers(e.v)) continue;
                pair_sum += std::abs(c.time[e.u] - c.time[e.v]);
                ++pair_cnt;
            }
            if (pair_cnt > 0) {
                sum += pair_sum / pair_cnt;
                ++terms;
            }
        }
        if (terms == 0) throw std::runtime_error("general_iti: selected edges have no support");
        mu_hat = sum / static_cast<double>(terms);
        res.mu_trajectory.push_back(mu_hat);
    }
    res.edges = std::move(last.edges);
    return res;
}

DegreeEstimate estimate_avg_degree(const std::vector<Cascade>& cascades, double mu1, double trim) {
    if (mu1 <= 0.0) throw std::invalid_argument("estimate_avg_degree: mu1 must be positive");
    if (trim < 0.0 || trim >= 0.5)
        throw std::invalid_argument("estimate_avg_degree: trim must be in [0,0.5)");
    std::vector<double> est;
    DegreeEstimate out;
    for (const auto& c : cascades) {
        double t_min = std::numeric_limits<double>::infinity();
        for (int v = 0; v < c.num_vertices(); ++v) {
            if (v == c.source || !c.covers(v)) continue;
            if (c.time[v] > 0.0 && c.time[v] < t_min) t_min = c.time[v];
        }
        if (!std::isfinite(t_min)) {
            ++out.excluded;
            continue;
        }
        est.push_back(mu1 / t_min);
    }
    if (est.empty()) throw std::runtime_error("estimate_avg_degree: no usable source cascades");
    std::sort(est.begin(), est.end());
    std::size_t k = static_cast<std::size_t>(std::floor(trim * est.size()));
    if (2 * k >= est.size()) k = (est.size() - 1) / 2;
    double sum = 0.0;
    for (std::size_t i = k; i < est.size() - k; ++i) sum += est[i];
    out.value = sum / static_cast<double>(est.size() - 2 * k);
    out.used = static_cast<int>(est.size());
    return out;
}

} // namespace casctop
