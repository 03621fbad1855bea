#pragma once

#include "casctop/graph.hpp"
#include "casctop/rng.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace casctop {

enum class DelayFamily {
    deterministic,           // fixed positive value
    exponential,             // mean
    gamma,                   // shape, scale
    normal,                  // mean, sd; negative draws resampled
    normal_truncated_at_zero,// mean, sd; same sampling, truncated moments declared
    bimodal_normal_mixture,  // equal-weight mix of N(mean_a, sd) and N(mean_b, sd)
};

DelayFamily delay_family_from_string(const std::string& name);
std::string to_string(DelayFamily f);

struct DelayParams {
    DelayFamily family = DelayFamily::exponential;
    double a = 1.0; // mean / shape / mean_a, by family
    double b = 0.0; // sd / scale / mean_b
    double c = 0.0; // sd of the mixture components

    double sample(Rng& rng) const;
    double raw_moment(int k) const; // k in {1,2}; throws on unsupported pairs
};

// Per-edge delay description. Homogeneous mode shares one parameter set;
// per-edge mode carries one per edge index of the graph it was built for.
class DelaySpec {
public:
    static DelaySpec homogeneous(DelayParams params);
    static DelaySpec per_edge(std::vector<DelayParams> params);

    bool is_homogeneous() const { return per_edge_.empty(); }
    const DelayParams& edge_params(int edge_index) const;
    int edge_count() const { return static_cast<int>(per_edge_.size()); }

    // analytic edge-average k-th raw moment (declared moment knowledge)
    double declared_moment(int k) const;

    double sample_edge(int edge_index, Rng& rng) const;

private:
    DelayParams shared_;
    std::vector<DelayParams> per_edge_;
};

// Exponential delays with per-edge mean drawn uniformly from [lo, hi];
// declared moments are the realized edge averages.
DelaySpec make_heterogeneous(const Graph& g, DelayFamily base_family, double lo, double hi,
                             std::uint64_t seed);

} // namespace casctop
