#pragma once

#include "casctop/weights.hpp"

#include <string>
#include <vector>

namespace casctop {

// Per-pair likelihood scores, normalized to unit total sum. Pairs outside the
// scorable set carry zero.
class ScoreTable {
public:
    ScoreTable(int n, std::vector<double> scores); // normalizes; rejects negatives

    int num_vertices() const { return n_; }
    std::size_t pair_index(int u, int v) const;
    double score(int u, int v) const { return scores_[pair_index(u, v)]; }
    const std::vector<double>& raw() const { return scores_; }

private:
    int n_;
    std::vector<double> scores_;
};

// Weights reinterpreted as likelihood scores: the minimal weight is the mode
// of a normal density whose scale is fitted on the n_edges smallest weights.
ScoreTable likelihood_scores(const WeightMatrix& w, long long n_edges);

// Mean of two normalized score tables; emits the n_edges highest-scoring pairs.
std::vector<Edge> fuse_scores(const ScoreTable& a, const ScoreTable& b, long long n_edges);

// External score files ("u v score" per line) for fusing with third-party
// methods; scores are normalized on load.
ScoreTable load_scores(const std::string& path, int n);
void save_scores(const ScoreTable& t, const std::string& path);

} // namespace casctop
