#include "casctop/scores.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace casctop {

ScoreTable::ScoreTable(int n, std::vector<double> scores) : n_(n), scores_(std::move(scores)) {
    if (n < 2) throw std::invalid_argument("ScoreTable: need at least two vertices");
    std::size_t pairs = static_cast<std::size_t>(n) * (n - 1) / 2;
    if (scores_.size() != pairs) throw std::invalid_argument("ScoreTable: wrong score count");
    double total = 0.0;
    for (double s : scores_) {
        if (s < 0.0 || !std::isfinite(s))
            throw std::invalid_argument("ScoreTable: scores must be finite and non-negative");
        total += s;
    }
    if (total <= 0.0) throw std::invalid_argument("ScoreTable: total score must be positive");
    for (double& s : scores_) s /= total;
}

std::size_t ScoreTable::pair_index(int u, int v) const {
    if (u == v || u < 0 || v < 0 || u >= n_ || v >= n_)
        throw std::invalid_argument("ScoreTable: bad vertex pair");
    if (u > v) std::swap(u, v);
    return static_cast<std::size_t>(u) * n_ - static_cast<std::size_t>(u) * (u + 1) / 2 +
           (v - u - 1);
}

ScoreTable likelihood_scores(const WeightMatrix& w, long long n_edges) {
    if (n_edges < 1) throw std::invalid_argument("likelihood_scores: n_edges must be positive");
    int n = w.num_vertices();
    struct Entry {
        double weight;
        std::size_t idx;
    };
    std::vector<Entry> scorable;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (w.scorable(u, v)) scorable.push_back({w.weight(u, v), w.pair_index(u, v)});
    if (static_cast<long long>(scorable.size()) < n_edges)
        throw std::runtime_error("likelihood_scores: fewer scorable pairs than n_edges");

    std::sort(scorable.begin(), scorable.end(),
              [](const Entry& a, const Entry& b) { return a.weight < b.weight; });
    double w_star = scorable.front().weight;
    double sigma2 = 0.0;
    for (long long i = 0; i < n_edges; ++i) {
        double d = scorable[i].weight - w_star;
        sigma2 += d * d;
    }
    sigma2 /= static_cast<double>(n_edges);

    std::size_t pairs = static_cast<std::size_t>(n) * (n - 1) / 2;
    std::vector<double> scores(pairs, 0.0);
    if (sigma2 == 0.0) {
        // degenerate scale: uniform over the minimal-weight set
        for (const auto& e : scorable)
            if (e.weight == w_star) scores[e.idx] = 1.0;
    } else {
        double sigma = std::sqrt(sigma2);
        for (const auto& e : scorable) {
            double z = (e.weight - w_star) / sigma;
            scores[e.idx] = std::exp(-0.5 * z * z) / 2.5066282746310005024;
        }
    }
    return ScoreTable(n, std::move(scores));
}

std::vector<Edge> fuse_scores(const ScoreTable& a, const ScoreTable& b, long long n_edges) {
    if (a.num_vertices() != b.num_vertices())
        throw std::invalid_argument("fuse_scores: score tables cover different vertex universes");
    if (n_edges < 0) throw std::invalid_argument("fuse_scores: negative edge count");
    int n = a.num_vertices();
    struct Entry {
        double score;
        int u, v;
    };
    std::vector<Entry> fused;
    fused.reserve(a.raw().size());
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            fused.push_back({0.5 * (a.score(u, v) + b.score(u, v)), u, v});
    if (static_cast<long long>(fused.size()) < n_edges)
        throw std::invalid_argument("fuse_scores: more edges requested than pairs exist");
    std::sort(fused.begin(), fused.end(), [](const Entry& x, const Entry& y) {
        if (x.score != y.score) return x.score > y.score;
        if (x.u != y.u) return x.u < y.u;
        return x.v < y.v;
    });
    std::vector<Edge> out;
    out.reserve(n_edges);
    for (long long i = 0; i < n_edges; ++i) out.push_back({fused[i].u, fused[i].v});
    std::sort(out.begin(), out.end());
    return out;
}

ScoreTable load_scores(const std::string& path, int n) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("load_scores: cannot open " + path);
    std::size_t pairs = static_cast<std::size_t>(n) * (n - 1) / 2;
    std::vector<double> scores(pairs, 0.0);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::size_t first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;
        std::istringstream ss(line);
        int u, v;
        double s;
        if (!(ss >> u >> v >> s))
            throw std::runtime_error("load_scores: malformed line " + std::to_string(lineno));
        if (u < 0 || v < 0 || u >= n || v >= n || u == v)
            throw std::runtime_error("load_scores: bad pair on line " + std::to_string(lineno));
        if (s < 0.0)
            throw std::runtime_error("load_scores: negative score on line " + std::to_string(lineno));
        if (u > v) std::swap(u, v);
        scores[static_cast<std::size_t>(u) * n - static_cast<std::size_t>(u) * (u + 1) / 2 +
               (v - u - 1)] += s;
    }
    return ScoreTable(n, std::move(scores)); // normalizes, rejects all-zero
}

void save_scores(const ScoreTable& t, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("save_scores: cannot open " + path);
    char buf[64];
    for (int u = 0; u < t.num_vertices(); ++u)
        for (int v = u + 1; v < t.num_vertices(); ++v) {
            double s = t.score(u, v);
            if (s == 0.0) continue;
            std::snprintf(buf, sizeof(buf), "%.17g", s);
            out << u << ' ' << v << ' ' << buf << '\n';
        }
}

} // namespace casctop
