#include "casctop/theory.hpp"

#include "casctop/reconstruction.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <stdexcept>

namespace casctop {

namespace {

double std_normal_cdf(double x) { return 0.5 * std::erfc(-x / 1.4142135623730950488); }

// regularized lower incomplete gamma P(a,x), series for x < a+1, continued
// fraction otherwise
double gamma_p(double a, double x) {
    if (x < 0.0 || a <= 0.0) throw std::invalid_argument("gamma_p: bad arguments");
    if (x == 0.0) return 0.0;
    double gln = std::lgamma(a);
    if (x < a + 1.0) {
        double ap = a, sum = 1.0 / a, del = sum;
        for (int i = 0; i < 500; ++i) {
            ap += 1.0;
            del *= x / ap;
            sum += del;
            if (std::abs(del) < std::abs(sum) * 1e-15) break;
        }
        return sum * std::exp(-x + a * std::log(x) - gln);
    }
    double b = x + 1.0 - a, c = 1e300, d = 1.0 / b, h = d;
    for (int i = 1; i <= 500; ++i) {
        double an = -static_cast<double>(i) * (i - a);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < 1e-300) d = 1e-300;
        c = b + an / c;
        if (std::abs(c) < 1e-300) c = 1e-300;
        d = 1.0 / d;
        double del = d * c;
        h *= del;
        if (std::abs(del - 1.0) < 1e-15) break;
    }
    return 1.0 - std::exp(-x + a * std::log(x) - gln) * h;
}

double sample_mean(const std::vector<double>& xs) {
    double s = 0.0;
    for (double x : xs) s += x;
    return s / static_cast<double>(xs.size());
}

double standard_error(const std::vector<double>& xs, double mean) {
    if (xs.size() < 2) return 0.0;
    double ss = 0.0;
    for (double x : xs) ss += (x - mean) * (x - mean);
    return std::sqrt(ss / (static_cast<double>(xs.size()) - 1.0) /
                     static_cast<double>(xs.size()));
}

// arrival time at target for one sampled set of edge delays; inline Dijkstra
// keeps one rng stream per replicate
double sample_arrival(const Graph& g, int source, int target, const DelaySpec& spec, Rng& rng) {
    std::vector<double> w(g.num_edges());
    for (int e = 0; e < g.num_edges(); ++e) w[e] = spec.sample_edge(e, rng);
    std::vector<double> dist(g.num_vertices(), std::numeric_limits<double>::infinity());
    std::vector<char> done(g.num_vertices(), 0);
    using Item = std::pair<double, int>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
    dist[source] = 0.0;
    pq.emplace(0.0, source);
    while (!pq.empty()) {
        auto [d, u] = pq.top();
        pq.pop();
        if (done[u]) continue;
        if (u == target) return d;
        done[u] = 1;
        for (int v : g.neighbors(u)) {
            double nd = d + w[g.edge_index(u, v)];
            if (nd < dist[v]) {
                dist[v] = nd;
                pq.emplace(nd, v);
            }
        }
    }
    return dist[target];
}

double ipow(double x, int k) {
    double r = x;
    for (int i = 1; i < k; ++i) r *= x;
    return r;
}

} // namespace

double DistributionSummary::cdf(double x) const {
    switch (params.family) {
        case DelayFamily::deterministic:
            return x >= params.a ? 1.0 : 0.0;
        case DelayFamily::exponential:
            return x <= 0.0 ? 0.0 : 1.0 - std::exp(-x / params.a);
        case DelayFamily::gamma:
            return x <= 0.0 ? 0.0 : gamma_p(params.a, x / params.b);
        case DelayFamily::normal:
            return std_normal_cdf((x - params.a) / params.b);
        case DelayFamily::normal_truncated_at_zero: {
            if (x <= 0.0) return 0.0;
            double z0 = std_normal_cdf(-params.a / params.b);
            return (std_normal_cdf((x - params.a) / params.b) - z0) / (1.0 - z0);
        }
        case DelayFamily::bimodal_normal_mixture:
            return 0.5 * std_normal_cdf((x - params.a) / params.c) +
                   0.5 * std_normal_cdf((x - params.b) / params.c);
    }
    throw std::logic_error("unreachable");
}

MomentGapReport moment_gap(const Graph& g, int u, int v, const DelaySpec& delay, int k,
                           double eps0, double eps1, long long samples, std::uint64_t seed) {
    if (k < 1) throw std::invalid_argument("moment_gap: k must be >= 1");
    if (!(eps0 > eps1 && eps1 > 0.0))
        throw std::invalid_argument("moment_gap: need eps0 > eps1 > 0");
    if (samples < 2) throw std::invalid_argument("moment_gap: need at least 2 samples");
    if (!g.has_edge(u, v)) throw std::invalid_argument("moment_gap: (u,v) must be an edge");
    if (!delay.is_homogeneous())
        throw std::invalid_argument("moment_gap: bound requires a homogeneous delay spec");
    Graph cut = g.without_edge(u, v);
    if (!cut.is_connected())
        throw std::invalid_argument("moment_gap: removing (u,v) disconnects the graph");

    std::vector<double> xk(samples), yk(samples);
    double thresh = std::pow(eps0, 1.0 / k);
    long long y_above = 0;
    {
        Rng rng(derive_seed(seed, 1));
        for (long long i = 0; i < samples; ++i) xk[i] = ipow(sample_arrival(g, u, v, delay, rng), k);
    }
    {
        Rng rng(derive_seed(seed, 2));
        DelaySpec same = delay; // homogeneous: valid on the cut graph too
        for (long long i = 0; i < samples; ++i) {
            double y = sample_arrival(cut, u, v, same, rng);
            yk[i] = ipow(y, k);
            if (y > thresh) ++y_above;
        }
    }

    MomentGapReport r;
    r.k = k;
    r.samples = samples;
    r.mean_xk = sample_mean(xk);
    r.mean_yk = sample_mean(yk);
    r.gap = r.mean_yk - r.mean_xk;
    double se_x = standard_error(xk, r.mean_xk);
    double se_y = standard_error(yk, r.mean_yk);
    r.gap_se = std::sqrt(se_x * se_x + se_y * se_y);

    DistributionSummary f{delay.edge_params(0)};
    double f_term = f.cdf(std::pow(eps0 - eps1, 1.0 / k));
    double hbar = static_cast<double>(y_above) / static_cast<double>(samples);
    r.bound = eps1 * f_term * hbar;
    r.bound_se = eps1 * f_term *
                 std::sqrt(std::max(hbar * (1.0 - hbar), 0.0) / static_cast<double>(samples));
    r.holds_within_3se = r.gap >= r.bound - 3.0 * (r.gap_se + r.bound_se);
    return r;
}

PathMomentReport path_moment_inequality(const Graph& g, int w, int u, int v,
                                        const DelaySpec& delay, int k, long long samples,
                                        std::uint64_t seed) {
    if (!g.is_connected()) throw std::invalid_argument("path_moment_inequality: graph must be connected");
    if (u == v) throw std::invalid_argument("path_moment_inequality: u and v must be distinct");
    if (k < 1) throw std::invalid_argument("path_moment_inequality: k must be >= 1");
    // w may coincide with u or v; the inequality then reduces to Jensen's

    // joint samples from w give the correlated difference directly
    std::vector<double> diff(samples), xk(samples);
    {
        Rng rng(derive_seed(seed, 1));
        for (long long i = 0; i < samples; ++i) {
            Cascade c = simulate_cascade(g, w, delay, rng.next_u64());
            diff[i] = c.time[u] - c.time[v];
        }
    }
    {
        Rng rng(derive_seed(seed, 2));
        for (long long i = 0; i < samples; ++i)
            xk[i] = ipow(sample_arrival(g, u, v, delay, rng), k);
    }

    PathMomentReport r;
    double mean_diff = sample_mean(diff);
    double se_diff = standard_error(diff, mean_diff);
    r.lhs = ipow(std::abs(mean_diff), k);
    r.lhs_se = k * ipow(std::max(std::abs(mean_diff), 1e-12), k - 1) * se_diff;
    r.rhs = sample_mean(xk);
    r.rhs_se = standard_error(xk, r.rhs);
    r.holds_within_3se = r.lhs <= r.rhs + 3.0 * (r.lhs_se + r.rhs_se);
    return r;
}

std::vector<double> default_eps_grid() {
    std::vector<double> grid(400);
    double lo = std::log(1e-4), hi = std::log(10.0);
    for (int i = 0; i < 400; ++i) grid[i] = std::exp(lo + (hi - lo) * i / 399.0);
    return grid;
}

double tv_upper_bound(int path_length, int path_count, const std::vector<double>& eps_grid) {
    if (path_length < 1 || path_count < 1)
        throw std::invalid_argument("tv_upper_bound: path length and count must be >= 1");
    if (eps_grid.empty()) throw std::invalid_argument("tv_upper_bound: epsilon grid must be non-empty");
    double best = 1.0; // the eps -> 0 limit; a total variation bound above 1 is vacuous
    for (double eps : eps_grid) {
        if (eps <= 0.0) throw std::invalid_argument("tv_upper_bound: epsilons must be positive");
        // e^-eps * sum_{i<l} eps^i / i!
        double term = 0.0, fact = 1.0;
        for (int i = 0; i < path_length; ++i) {
            term += fact;
            fact *= eps / (i + 1);
        }
        term *= std::exp(-eps);
        double value = std::pow(term, path_count) + 1.0 - std::exp(-eps);
        best = std::min(best, value);
    }
    return best;
}

TwoSampleReport edge_vs_path_distribution_distinct(int path_length,
                                                   const DistributionSummary& delay,
                                                   long long samples, std::uint64_t seed,
                                                   double level) {
    if (path_length == 1)
        throw std::invalid_argument("edge_vs_path: a length-1 detour is the edge itself");
    if (path_length < 0) throw std::invalid_argument("edge_vs_path: negative path length");
    if (samples < 10) throw std::invalid_argument("edge_vs_path: need at least 10 samples");

    Rng rng(derive_seed(seed, 7));
    std::vector<double> direct(samples), withpath(samples);
    for (long long i = 0; i < samples; ++i) direct[i] = delay.params.sample(rng);
    for (long long i = 0; i < samples; ++i) {
        double edge = delay.params.sample(rng);
        if (path_length == 0) {
            withpath[i] = edge; // no detour: identical law
        } else {
            double total = 0.0;
            for (int j = 0; j < path_length; ++j) total += delay.params.sample(rng);
            withpath[i] = std::min(edge, total);
        }
    }
    std::sort(direct.begin(), direct.end());
    std::sort(withpath.begin(), withpath.end());

    // two-sample KS statistic over the merged order
    double d_stat = 0.0;
    std::size_t i = 0, j = 0;
    while (i < direct.size() && j < withpath.size()) {
        if (direct[i] <= withpath[j]) ++i;
        else ++j;
        double f1 = static_cast<double>(i) / direct.size();
        double f2 = static_cast<double>(j) / withpath.size();
        d_stat = std::max(d_stat, std::abs(f1 - f2));
    }

    TwoSampleReport r;
    r.statistic = d_stat;
    double c = std::sqrt(-std::log(level / 2.0) / 2.0);
    r.threshold = c * std::sqrt(2.0 / static_cast<double>(samples));
    r.distinct = r.statistic > r.threshold;
    return r;
}

SeparatingSizeBound separating_size_bound(const Graph& tree) {
    if (!tree.is_tree()) throw std::invalid_argument("separating_size_bound: input must be a tree");
    SeparatingSizeBound b;
    for (int v = 0; v < tree.num_vertices(); ++v) {
        if (tree.degree(v) != 1) continue;
        ++b.leaf_count;
        int nb = tree.neighbors(v)[0];
        if (tree.degree(nb) == 2) ++b.long_leaf_count;
    }
    b.bound_all_leaves = b.leaf_count - b.long_leaf_count;
    b.bound_long_leaves = 0;
    return b;
}

bool uniquely_reconstructible(const Graph& tree, const std::vector<int>& vs) {
    if (!tree.is_tree()) throw std::invalid_argument("uniquely_reconstructible: input must be a tree");
    if (vs.empty()) return false;
    int n = tree.num_vertices();
    std::vector<std::vector<int>> rows;
    rows.reserve(vs.size());
    for (int s : vs) rows.push_back(bfs_distances(tree, s));
    // exact reconstruction: every pair within relative distance 1 must be a
    // true edge (true edges always survive)
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) {
            bool le1 = true;
            for (const auto& r : rows)
                if (std::abs(r[u] - r[v]) > 1) {
                    le1 = false;
                    break;
                }
            if (le1 && !tree.has_edge(u, v)) return false;
        }
    return true;
}

TvMinReport tv_min_against_bound(const DistributionSummary& x, const DistributionSummary& y,
                                 long long samples, int bins, std::uint64_t seed) {
    if (samples < 100 || bins < 2) throw std::invalid_argument("tv_min_against_bound: bad sizes");
    Rng rng(derive_seed(seed, 11));
    std::vector<double> ys(samples), zs(samples);
    double hi = 0.0;
    for (long long i = 0; i < samples; ++i) {
        double xi = x.params.sample(rng);
        double yi = y.params.sample(rng);
        ys[i] = yi;
        zs[i] = std::min(xi, yi);
        hi = std::max(hi, ys[i]);
    }
    std::vector<double> py(bins, 0.0), pz(bins, 0.0);
    double width = hi / bins;
    for (long long i = 0; i < samples; ++i) {
        int by = std::min(bins - 1, static_cast<int>(ys[i] / width));
        int bz = std::min(bins - 1, static_cast<int>(zs[i] / width));
        py[by] += 1.0;
        pz[bz] += 1.0;
    }
    TvMinReport r;
    double acc = 0.0;
    for (int b = 0; b < bins; ++b) acc += std::abs(py[b] - pz[b]);
    r.tv_estimate = 0.5 * acc / static_cast<double>(samples);

    double best = 1.0;
    for (double eps : default_eps_grid())
        best = std::min(best, y.survival(eps) + x.cdf(eps));
    r.bound = best;
    r.est_error = 2.0 * std::sqrt(static_cast<double>(bins) / static_cast<double>(samples));
    r.holds = r.tv_estimate <= r.bound + r.est_error;
    return r;
}

} // namespace casctop
