#pragma once

#include "casctop/cascade.hpp"
#include "casctop/graph.hpp"

#include <string>
#include <vector>

namespace casctop {

// Symmetric pairwise score table. Small weights suggest edges. Each entry
// carries the number of cascades that scored the pair (its support); pairs
// with support below the configured fraction of the source count are flagged
// excluded and never selected.
class WeightMatrix {
public:
    WeightMatrix(int n, int num_sources, double tau);

    int num_vertices() const { return n_; }
    int num_sources() const { return num_sources_; }
    double tau() const { return tau_; }

    std::size_t pair_index(int u, int v) const;

    double weight(int u, int v) const { return w_[pair_index(u, v)]; }
    int support(int u, int v) const { return support_[pair_index(u, v)]; }
    bool scorable(int u, int v) const;
    int scorable_count() const;

    bool has_components() const { return !w1_.empty(); }
    double component1(int u, int v) const { return w1_[pair_index(u, v)]; }
    double component2(int u, int v) const { return w2_[pair_index(u, v)]; }

    // the `count` smallest-weight scorable pairs, ties broken by (u,v);
    // throws when fewer scorable pairs exist, naming the shortfall
    std::vector<Edge> smallest_pairs(long long count) const;

    // raw storage, used by the scoring and selection internals
    std::vector<double>& raw_weights() { return w_; }
    const std::vector<double>& raw_weights() const { return w_; }
    std::vector<int>& raw_support() { return support_; }
    const std::vector<int>& raw_support() const { return support_; }
    std::vector<double>& raw_component1() { return w1_; }
    std::vector<double>& raw_component2() { return w2_; }
    const std::vector<double>& raw_component1() const { return w1_; }
    const std::vector<double>& raw_component2() const { return w2_; }

private:
    int n_;
    int num_sources_;
    double tau_;
    std::vector<double> w_;
    std::vector<int> support_;
    std::vector<double> w1_, w2_; // retained for the two-moment weights
};

// Mean over supporting cascades of | |T(u)-T(v)|/mu1 - 1 |; the tree score.
WeightMatrix tree_weights(const std::vector<Cascade>& cascades, double mu1, double tau);

// Two-moment score: per-moment min of (plain sample sum, deviation from the
// declared moment), averaged over the support; the combined weight is the sum
// of the two components.
WeightMatrix graph_weights(const std::vector<Cascade>& cascades, double mu1, double mu2, double tau);

enum class MomentCombiner { sum, mean };
MomentCombiner combiner_from_string(const std::string& name);

struct MomentSpec {
    int order;      // k >= 1
    double moment;  // declared mu^(k), > 0
};

// Generalized multi-moment score; with moments {(1,mu1),(2,mu2)} and the sum
// combiner this reproduces graph_weights bit-for-bit.
WeightMatrix generalized_weights(const std::vector<Cascade>& cascades,
                                 const std::vector<MomentSpec>& moments, MomentCombiner combine,
                                 double tau);

// CSV dump for debugging: u,v,weight,support,scorable[,w1,w2]
void save_weights_csv(const WeightMatrix& w, const std::string& path);

} // namespace casctop
