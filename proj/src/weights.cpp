#include "casctop/weights.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace casctop {

WeightMatrix::WeightMatrix(int n, int num_sources, double tau)
    : n_(n), num_sources_(num_sources), tau_(tau) {
    if (n < 2) throw std::invalid_argument("WeightMatrix: need at least two vertices");
    if (tau < 0.0 || tau > 1.0) throw std::invalid_argument("WeightMatrix: tau must be in [0,1]");
    std::size_t pairs = static_cast<std::size_t>(n) * (n - 1) / 2;
    w_.assign(pairs, 0.0);
    support_.assign(pairs, 0);
}

std::size_t WeightMatrix::pair_index(int u, int v) const {
    if (u == v || u < 0 || v < 0 || u >= n_ || v >= n_)
        throw std::invalid_argument("WeightMatrix: bad vertex pair");
    if (u > v) std::swap(u, v);
    return static_cast<std::size_t>(u) * n_ - static_cast<std::size_t>(u) * (u + 1) / 2 +
           (v - u - 1);
}

bool WeightMatrix::scorable(int u, int v) const {
    int s = support_[pair_index(u, v)];
    return s > 0 && static_cast<double>(s) >= tau_ * num_sources_;
}

int WeightMatrix::scorable_count() const {
    int c = 0;
    for (int u = 0; u < n_; ++u)
        for (int v = u + 1; v < n_; ++v)
            if (scorable(u, v)) ++c;
    return c;
}

std::vector<Edge> WeightMatrix::smallest_pairs(long long count) const {
    if (count < 0) throw std::invalid_argument("smallest_pairs: negative count");
    struct Entry {
        double w;
        int u, v;
    };
    std::vector<Entry> entries;
    entries.reserve(w_.size());
    for (int u = 0; u < n_; ++u)
        for (int v = u + 1; v < n_; ++v)
            if (scorable(u, v)) entries.push_back({w_[pair_index(u, v)], u, v});
    if (static_cast<long long>(entries.size()) < count)
        throw std::runtime_error("smallest_pairs: only " + std::to_string(entries.size()) +
                                 " scorable pairs for a selection of " + std::to_string(count) +
                                 "; " + std::to_string(w_.size() - entries.size()) +
                                 " pairs excluded by the support threshold");
    auto cmp = [](const Entry& a, const Entry& b) {
        if (a.w != b.w) return a.w < b.w;
        if (a.u != b.u) return a.u < b.u;
        return a.v < b.v;
    };
    std::sort(entries.begin(), entries.end(), cmp);
    std::vector<Edge> out;
    out.reserve(count);
    for (long long i = 0; i < count; ++i) out.push_back({entries[i].u, entries[i].v});
    std::sort(out.begin(), out.end());
    return out;
}

namespace {

void check_cascades(const std::vector<Cascade>& cascades) {
    if (cascades.empty()) throw std::invalid_argument("weights: need at least one cascade");
    int n = cascades.front().num_vertices();
    for (const auto& c : cascades)
        if (c.num_vertices() != n)
            throw std::invalid_argument("weights: cascades cover different vertex universes");
}

inline double ipow_abs(double x, int k) {
    double r = x;
    for (int i = 1; i < k; ++i) r *= x;
    return r;
}

} // namespace

WeightMatrix tree_weights(const std::vector<Cascade>& cascades, double mu1, double tau) {
    check_cascades(cascades);
    if (mu1 <= 0.0) throw std::invalid_argument("tree_weights: mu1 must be positive");
    int n = cascades.front().num_vertices();
    WeightMatrix wm(n, static_cast<int>(cascades.size()), tau);
    auto& acc = wm.raw_weights();
    auto& sup = wm.raw_support();
    for (const auto& c : cascades) {
        for (int u = 0; u < n; ++u) {
            if (!c.covers(u)) continue;
            std::size_t base = static_cast<std::size_t>(u) * n -
                               static_cast<std::size_t>(u) * (u + 1) / 2 - u - 1;
            double tu = c.time[u];
            for (int v = u + 1; v < n; ++v) {
                if (!c.covers(v)) continue;
                double diff = std::abs(tu - c.time[v]);
                acc[base + v] += std::abs(diff / mu1 - 1.0);
                ++sup[base + v];
            }
        }
    }
    for (std::size_t i = 0; i < acc.size(); ++i)
        if (sup[i] > 0) acc[i] /= static_cast<double>(sup[i]);
    return wm;
}

namespace {

// shared core of the moment-based scores; accumulates per-moment plain and
// deviation sums, then combines
WeightMatrix moment_weights(const std::vector<Cascade>& cascades,
                            const std::vector<MomentSpec>& moments, MomentCombiner combine,
                            double tau, bool keep_components) {
    check_cascades(cascades);
    if (moments.empty()) throw std::invalid_argument("weights: moment list must be non-empty");
    if (moments.front().order != 1)
        throw std::invalid_argument("weights: the first moment must have order 1");
    for (const auto& m : moments) {
        if (m.order < 1) throw std::invalid_argument("weights: moment orders must be >= 1");
        if (m.moment <= 0.0) throw std::invalid_argument("weights: declared moments must be positive");
    }
    int n = cascades.front().num_vertices();
    std::size_t pairs = static_cast<std::size_t>(n) * (n - 1) / 2;
    std::size_t m = moments.size();

    std::vector<std::vector<double>> plain(m, std::vector<double>(pairs, 0.0));
    std::vector<std::vector<double>> dev(m, std::vector<double>(pairs, 0.0));
    WeightMatrix wm(n, static_cast<int>(cascades.size()), tau);
    auto& sup = wm.raw_support();

    for (const auto& c : cascades) {
        for (int u = 0; u < n; ++u) {
            if (!c.covers(u)) continue;
            std::size_t base = static_cast<std::size_t>(u) * n -
                               static_cast<std::size_t>(u) * (u + 1) / 2 - u - 1;
            double tu = c.time[u];
            for (int v = u + 1; v < n; ++v) {
                if (!c.covers(v)) continue;
                double diff = std::abs(tu - c.time[v]);
                std::size_t idx = base + v;
                for (std::size_t i = 0; i < m; ++i) {
                    double term = ipow_abs(diff, moments[i].order);
                    plain[i][idx] += term;
                    dev[i][idx] += std::abs(term - moments[i].moment);
                }
                ++sup[idx];
            }
        }
    }

    auto& w = wm.raw_weights();
    if (keep_components && m >= 1) {
        wm.raw_component1().assign(pairs, 0.0);
        if (m >= 2) wm.raw_component2().assign(pairs, 0.0);
    }
    for (std::size_t idx = 0; idx < pairs; ++idx) {
        if (sup[idx] == 0) continue;
        double denom = static_cast<double>(sup[idx]);
        double combined = 0.0;
        for (std::size_t i = 0; i < m; ++i) {
            double wi = std::min(plain[i][idx], dev[i][idx]) / denom;
            combined += wi;
            if (keep_components) {
                if (i == 0) wm.raw_component1()[idx] = wi;
                else if (i == 1) wm.raw_component2()[idx] = wi;
            }
        }
        if (combine == MomentCombiner::mean) combined /= static_cast<double>(m);
        w[idx] = combined;
    }
    return wm;
}

} // namespace

WeightMatrix graph_weights(const std::vector<Cascade>& cascades, double mu1, double mu2,
                           double tau) {
    // Direct two-moment implementation. generalized_weights specializes to
    // this with moments {(1,mu1),(2,mu2)} and the sum combiner; the property
    // suite checks the two code paths agree bit-for-bit.
    check_cascades(cascades);
    if (mu1 <= 0.0 || mu2 <= 0.0)
        throw std::invalid_argument("graph_weights: declared moments must be positive");
    int n = cascades.front().num_vertices();
    std::size_t pairs = static_cast<std::size_t>(n) * (n - 1) / 2;
    WeightMatrix wm(n, static_cast<int>(cascades.size()), tau);
    auto& sup = wm.raw_support();
    std::vector<double> s1(pairs, 0.0), s1m(pairs, 0.0), s2(pairs, 0.0), s2m(pairs, 0.0);
    for (const auto& c : cascades) {
        for (int u = 0; u < n; ++u) {
            if (!c.covers(u)) continue;
            std::size_t base = static_cast<std::size_t>(u) * n -
                               static_cast<std::size_t>(u) * (u + 1) / 2 - u - 1;
            double tu = c.time[u];
            for (int v = u + 1; v < n; ++v) {
                if (!c.covers(v)) continue;
                double diff = std::abs(tu - c.time[v]);
                double sq = diff * diff;
                std::size_t idx = base + v;
                s1[idx] += diff;
                s1m[idx] += std::abs(diff - mu1);
                s2[idx] += sq;
                s2m[idx] += std::abs(sq - mu2);
                ++sup[idx];
            }
        }
    }
    auto& w = wm.raw_weights();
    wm.raw_component1().assign(pairs, 0.0);
    wm.raw_component2().assign(pairs, 0.0);
    for (std::size_t idx = 0; idx < pairs; ++idx) {
        if (sup[idx] == 0) continue;
        double denom = static_cast<double>(sup[idx]);
        double w1 = std::min(s1[idx], s1m[idx]) / denom;
        double w2 = std::min(s2[idx], s2m[idx]) / denom;
        wm.raw_component1()[idx] = w1;
        wm.raw_component2()[idx] = w2;
        w[idx] = w1 + w2;
    }
    return wm;
}

WeightMatrix generalized_weights(const std::vector<Cascade>& cascades,
                                 const std::vector<MomentSpec>& moments, MomentCombiner combine,
                                 double tau) {
    return moment_weights(cascades, moments, combine, tau, moments.size() <= 2);
}

MomentCombiner combiner_from_string(const std::string& name) {
    if (name == "sum") return MomentCombiner::sum;
    if (name == "mean") return MomentCombiner::mean;
    throw std::invalid_argument("unknown moment combiner: " + name);
}

void save_weights_csv(const WeightMatrix& w, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("save_weights_csv: cannot open " + path);
    out << "u,v,weight,support,scorable";
    if (w.has_components()) out << ",w1,w2";
    out << '\n';
    char buf[64];
    for (int u = 0; u < w.num_vertices(); ++u)
        for (int v = u + 1; v < w.num_vertices(); ++v) {
            std::snprintf(buf, sizeof(buf), "%.17g", w.weight(u, v));
            out << u << ',' << v << ',' << buf << ',' << w.support(u, v) << ','
                << (w.scorable(u, v) ? 1 : 0);
            if (w.has_components()) {
                std::snprintf(buf, sizeof(buf), "%.17g", w.component1(u, v));
                out << ',' << buf;
                std::snprintf(buf, sizeof(buf), "%.17g", w.component2(u, v));
                out << ',' << buf;
            }
            out << '\n';
        }
}

} // namespace casctop
