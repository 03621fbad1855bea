#include "casctop/cascade.hpp"

#include <algorithm>
#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <limits>
#include <queue>
#include <sstream>
#include <stdexcept>

namespace casctop {

bool Cascade::full_coverage() const {
    return std::all_of(seen.begin(), seen.end(), [](char s) { return s != 0; });
}

Cascade simulate_cascade(const Graph& g, int source, const DelaySpec& spec, std::uint64_t seed,
                         std::optional<double> horizon) {
    g.check_vertex(source);
    if (!g.is_connected()) throw std::invalid_argument("simulate_cascade: graph must be connected");
    if (!spec.is_homogeneous() && spec.edge_count() != g.num_edges())
        throw std::invalid_argument("simulate_cascade: per-edge spec built for a different graph");

    Rng rng(seed);
    std::vector<double> w(g.num_edges());
    for (int e = 0; e < g.num_edges(); ++e) w[e] = spec.sample_edge(e, rng);

    // Dijkstra over the sampled weights
    int n = g.num_vertices();
    std::vector<double> dist(n, std::numeric_limits<double>::infinity());
    std::vector<char> done(n, 0);
    using Item = std::pair<double, int>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
    dist[source] = 0.0;
    pq.emplace(0.0, source);
    while (!pq.empty()) {
        auto [d, u] = pq.top();
        pq.pop();
        if (done[u]) continue;
        done[u] = 1;
        for (int v : g.neighbors(u)) {
            double nd = d + w[g.edge_index(u, v)];
            if (nd < dist[v]) {
                dist[v] = nd;
                pq.emplace(nd, v);
            }
        }
    }

    Cascade c;
    c.source = source;
    c.time.assign(n, 0.0);
    c.seen.assign(n, 0);
    c.eta = 1;
    for (int v = 0; v < n; ++v) {
        if (horizon && dist[v] > *horizon) continue;
        c.time[v] = dist[v];
        c.seen[v] = 1;
    }
    c.time[source] = 0.0;
    c.seen[source] = 1;
    return c;
}

Cascade average_into(const Cascade& c, const Cascade& fresh) {
    if (c.source != fresh.source)
        throw std::invalid_argument("average_into: cascades have different sources");
    if (c.num_vertices() != fresh.num_vertices())
        throw std::invalid_argument("average_into: cascades cover different vertex universes");
    Cascade out = c;
    double wc = static_cast<double>(c.eta);
    double wf = static_cast<double>(fresh.eta);
    for (int v = 0; v < c.num_vertices(); ++v) {
        if (c.covers(v) && fresh.covers(v)) {
            out.time[v] = (wc * c.time[v] + wf * fresh.time[v]) / (wc + wf);
        } else if (fresh.covers(v)) {
            out.time[v] = fresh.time[v];
            out.seen[v] = 1;
        }
        // covered only by c: keep as is
    }
    out.eta = c.eta + fresh.eta;
    return out;
}

void save_cascades(const std::vector<Cascade>& cs, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("save_cascades: cannot open " + path);
    char buf[64];
    for (std::size_t i = 0; i < cs.size(); ++i) {
        if (i) out << '\n';
        out << "source " << cs[i].source << '\n';
        for (int v = 0; v < cs[i].num_vertices(); ++v) {
            if (!cs[i].covers(v)) continue;
            std::snprintf(buf, sizeof(buf), "%.17g", cs[i].time[v]);
            out << v << ' ' << buf << '\n';
        }
    }
    if (!out) throw std::runtime_error("save_cascades: write failed for " + path);
}

std::vector<Cascade> load_cascades(const std::string& path, std::optional<int> n_hint) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("load_cascades: cannot open " + path);

    struct RawCascade {
        int source;
        std::vector<std::pair<int, double>> entries;
    };
    std::vector<RawCascade> raw;
    std::string line;
    int lineno = 0;
    bool in_block = false;
    int max_vertex = -1;
    while (std::getline(in, line)) {
        ++lineno;
        std::size_t first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos) {
            in_block = false;
            continue;
        }
        std::istringstream ss(line);
        std::string head;
        ss >> head;
        if (head == "source") {
            int s;
            if (!(ss >> s) || s < 0)
                throw std::runtime_error("load_cascades: bad source header on line " +
                                         std::to_string(lineno));
            raw.push_back({s, {}});
            max_vertex = std::max(max_vertex, s);
            in_block = true;
            continue;
        }
        if (!in_block)
            throw std::runtime_error("load_cascades: entry before 'source' header on line " +
                                     std::to_string(lineno));
        int v;
        double t;
        std::istringstream entry(line);
        if (!(entry >> v >> t) || v < 0)
            throw std::runtime_error("load_cascades: malformed entry on line " + std::to_string(lineno));
        raw.back().entries.emplace_back(v, t);
        max_vertex = std::max(max_vertex, v);
    }
    if (raw.empty()) throw std::runtime_error("load_cascades: no cascades in " + path);

    int n = max_vertex + 1;
    if (n_hint) {
        if (*n_hint < n)
            throw std::runtime_error("load_cascades: file references vertex ids beyond the given n");
        n = *n_hint;
    }
    std::vector<Cascade> cs;
    cs.reserve(raw.size());
    for (const auto& r : raw) {
        Cascade c;
        c.source = r.source;
        c.time.assign(n, 0.0);
        c.seen.assign(n, 0);
        for (auto [v, t] : r.entries) {
            c.time[v] = t;
            c.seen[v] = 1;
        }
        if (!c.covers(c.source) || c.time[c.source] != 0.0)
            throw std::runtime_error("load_cascades: source must carry time 0");
        cs.push_back(std::move(c));
    }
    return cs;
}

} // namespace casctop
