#pragma once

#include "casctop/cascade.hpp"
#include "casctop/delay.hpp"
#include "casctop/graph.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace casctop {

// Closed-form distribution summary used by the analytic bounds. Families
// without a closed-form cdf are rejected.
struct DistributionSummary {
    DelayParams params;

    double mean() const { return params.raw_moment(1); }
    double cdf(double x) const;       // F(x)
    double survival(double x) const { return 1.0 - cdf(x); }
};

// Monte Carlo check of the k-th-moment gap between propagation with and
// without a direct edge: E[Y^k] - E[X^k] >= eps1 F((eps0-eps1)^(1/k)) Hbar(eps0^(1/k)).
struct MomentGapReport {
    int k = 1;
    double mean_xk = 0.0;
    double mean_yk = 0.0;
    double gap = 0.0;        // mean_yk - mean_xk
    double gap_se = 0.0;     // standard error of the gap
    double bound = 0.0;      // analytic lower bound (empirical Hbar factor)
    double bound_se = 0.0;   // propagated from the Hbar estimate
    long long samples = 0;
    bool holds_within_3se = false;
};

MomentGapReport moment_gap(const Graph& g, int u, int v, const DelaySpec& delay, int k,
                           double eps0, double eps1, long long samples, std::uint64_t seed);

// Monte Carlo check of |E X_{w,u} - E X_{w,v}|^k <= E[X_{u,v}^k].
struct PathMomentReport {
    double lhs = 0.0; // |mean difference|^k
    double rhs = 0.0; // k-th moment of the direct propagation time
    double lhs_se = 0.0;
    double rhs_se = 0.0;
    bool holds_within_3se = false;
};

PathMomentReport path_moment_inequality(const Graph& g, int w, int u, int v,
                                        const DelaySpec& delay, int k, long long samples,
                                        std::uint64_t seed);

// Upper bound on the total variation distance between propagation with and
// without a direct edge when k unit-rate exponential paths of length l
// connect the endpoints; minimized over the epsilon grid and capped at 1.
double tv_upper_bound(int path_length, int path_count, const std::vector<double>& eps_grid);
std::vector<double> default_eps_grid(); // logarithmic, 1e-4..10, 400 points

// Two-sample Kolmogorov-Smirnov comparison between the single-edge delay law
// and the first-arrival law when an l-path detour parallels the edge.
struct TwoSampleReport {
    double statistic = 0.0; // sup |F1 - F2|
    double threshold = 0.0; // rejection threshold at the given level
    bool distinct = false;
};

TwoSampleReport edge_vs_path_distribution_distinct(int path_length,
                                                   const DistributionSummary& delay,
                                                   long long samples, std::uint64_t seed,
                                                   double level = 0.01);

// Lower bound on the size of any vertex set with the uniqueness property,
// from leaf counts. A long leaf is a leaf whose unique neighbor is ordinary.
// The source notation for the minuend is ambiguous, so both readings are
// exposed; the all-leaves reading is the default bound.
struct SeparatingSizeBound {
    int leaf_count = 0;
    int long_leaf_count = 0;
    int bound_all_leaves = 0;  // |leaves| - |long leaves|
    int bound_long_leaves = 0; // |long leaves| - |long leaves| = 0, trivially vacuous
};

SeparatingSizeBound separating_size_bound(const Graph& tree);

// Uniqueness proxy used by the reconstruction-threshold experiment: the tree
// is uniquely determined by distances to vs iff reconstruction from vs
// returns the true edge set exactly.
bool uniquely_reconstructible(const Graph& tree, const std::vector<int>& vs);

// Histogram estimate of the total variation distance between Y and min(X,Y)
// against the analytic bound inf_eps { Hbar(eps) + P(eps) }.
struct TvMinReport {
    double tv_estimate = 0.0;
    double bound = 0.0;
    double est_error = 0.0; // histogram + sampling error allowance
    bool holds = false;
};

TvMinReport tv_min_against_bound(const DistributionSummary& x, const DistributionSummary& y,
                                 long long samples, int bins, std::uint64_t seed);

} // namespace casctop
