#include "casctop/delay.hpp"

#include <cmath>
#include <stdexcept>

namespace casctop {

namespace {

double sample_truncated_normal(double mean, double sd, Rng& rng) {
    for (;;) {
        double x = rng.normal(mean, sd);
        if (x > 0.0) return x;
    }
}

double std_normal_pdf(double x) { return std::exp(-0.5 * x * x) / 2.5066282746310005024; }
double std_normal_cdf(double x) { return 0.5 * std::erfc(-x / 1.4142135623730950488); }

} // namespace

DelayFamily delay_family_from_string(const std::string& name) {
    if (name == "deterministic") return DelayFamily::deterministic;
    if (name == "exponential" || name == "exp") return DelayFamily::exponential;
    if (name == "gamma") return DelayFamily::gamma;
    if (name == "normal") return DelayFamily::normal;
    if (name == "normal_truncated_at_zero") return DelayFamily::normal_truncated_at_zero;
    if (name == "bimodal_normal_mixture" || name == "bimodal") return DelayFamily::bimodal_normal_mixture;
    throw std::invalid_argument("unknown delay family: " + name);
}

std::string to_string(DelayFamily f) {
    switch (f) {
        case DelayFamily::deterministic: return "deterministic";
        case DelayFamily::exponential: return "exponential";
        case DelayFamily::gamma: return "gamma";
        case DelayFamily::normal: return "normal";
        case DelayFamily::normal_truncated_at_zero: return "normal_truncated_at_zero";
        case DelayFamily::bimodal_normal_mixture: return "bimodal_normal_mixture";
    }
    throw std::logic_error("unreachable");
}

double DelayParams::sample(Rng& rng) const {
    switch (family) {
        case DelayFamily::deterministic:
            return a;
        case DelayFamily::exponential:
            return rng.exponential(a);
        case DelayFamily::gamma:
            return rng.gamma(a, b);
        case DelayFamily::normal:
        case DelayFamily::normal_truncated_at_zero:
            return sample_truncated_normal(a, b, rng);
        case DelayFamily::bimodal_normal_mixture: {
            // component resampled on its own, so the 1/2-1/2 weights stay exact
            double mu = rng.bernoulli(0.5) ? a : b;
            return sample_truncated_normal(mu, c, rng);
        }
    }
    throw std::logic_error("unreachable");
}

double DelayParams::raw_moment(int k) const {
    if (k != 1 && k != 2) throw std::invalid_argument("raw_moment: only k in {1,2} supported");
    switch (family) {
        case DelayFamily::deterministic:
            return k == 1 ? a : a * a;
        case DelayFamily::exponential:
            return k == 1 ? a : 2.0 * a * a;
        case DelayFamily::gamma:
            return k == 1 ? a * b : a * (a + 1.0) * b * b;
        case DelayFamily::normal:
            // nominal family moments; truncation mass is assumed negligible
            return k == 1 ? a : a * a + b * b;
        case DelayFamily::normal_truncated_at_zero: {
            if (b <= 0.0) throw std::invalid_argument("raw_moment: sd must be positive");
            double alpha = a / b;
            double lambda = std_normal_pdf(alpha) / std_normal_cdf(alpha);
            if (k == 1) return a + b * lambda;
            return a * a + b * b + a * b * lambda;
        }
        case DelayFamily::bimodal_normal_mixture:
            if (k == 1) return 0.5 * (a + b);
            return 0.5 * (a * a + c * c) + 0.5 * (b * b + c * c);
    }
    throw std::logic_error("unreachable");
}

DelaySpec DelaySpec::homogeneous(DelayParams params) {
    DelaySpec s;
    s.shared_ = params;
    return s;
}

DelaySpec DelaySpec::per_edge(std::vector<DelayParams> params) {
    if (params.empty()) throw std::invalid_argument("DelaySpec::per_edge: need at least one edge");
    DelaySpec s;
    s.per_edge_ = std::move(params);
    return s;
}

const DelayParams& DelaySpec::edge_params(int edge_index) const {
    if (is_homogeneous()) return shared_;
    if (edge_index < 0 || edge_index >= static_cast<int>(per_edge_.size()))
        throw std::invalid_argument("DelaySpec: edge index out of range");
    return per_edge_[edge_index];
}

double DelaySpec::declared_moment(int k) const {
    if (is_homogeneous()) return shared_.raw_moment(k);
    double sum = 0.0;
    for (const auto& p : per_edge_) sum += p.raw_moment(k);
    return sum / static_cast<double>(per_edge_.size());
}

double DelaySpec::sample_edge(int edge_index, Rng& rng) const {
    return edge_params(edge_index).sample(rng);
}

DelaySpec make_heterogeneous(const Graph& g, DelayFamily base_family, double lo, double hi,
                             std::uint64_t seed) {
    if (!(lo > 0.0) || hi < lo)
        throw std::invalid_argument("make_heterogeneous: need 0 < lo <= hi");
    if (base_family != DelayFamily::exponential)
        throw std::invalid_argument("make_heterogeneous: only exponential means are supported");
    if (lo == hi) {
        DelayParams p;
        p.family = base_family;
        p.a = lo;
        return DelaySpec::homogeneous(p);
    }
    Rng rng(seed);
    std::vector<DelayParams> params(g.num_edges());
    for (auto& p : params) {
        p.family = base_family;
        p.a = rng.uniform(lo, hi);
    }
    return DelaySpec::per_edge(std::move(params));
}

} // namespace casctop
