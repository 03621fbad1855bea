#include "doctest.h"

#include "casctop/generators.hpp"
#include "test_util.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>

using namespace casctop;

TEST_CASE("er tree invariants") {
    CHECK_THROWS_AS(gen_er_tree(0, 1), std::invalid_argument);
    Graph one = gen_er_tree(1, 1);
    CHECK(one.num_vertices() == 1);
    CHECK(one.num_edges() == 0);

    Graph t = gen_er_tree(500, 42);
    CHECK(t.num_edges() == 499);
    CHECK(t.is_tree());
}

TEST_CASE("same seed reproduces the same graph") {
    Graph a = gen_er_tree(100, 7);
    Graph b = gen_er_tree(100, 7);
    CHECK(a.edges() == b.edges());
    Graph c = gen_er_tree(100, 8);
    CHECK(a.edges() != c.edges());

    Graph g1 = gen_er_graph(60, 4.0, 11);
    Graph g2 = gen_er_graph(60, 4.0, 11);
    CHECK(g1.edges() == g2.edges());

    Graph f1 = gen_forest_fire(80, 0.3, 0.2, 5);
    Graph f2 = gen_forest_fire(80, 0.3, 0.2, 5);
    CHECK(f1.edges() == f2.edges());
}

TEST_CASE("uniform attachment trees are flatter than preferential attachment") {
    // preferential-attachment oracle: attach to a vertex drawn by degree
    auto gen_pa_tree = [](int n, std::uint64_t seed) {
        Rng rng(seed);
        std::vector<std::pair<int, int>> edges{{0, 1}};
        std::vector<int> endpoints{0, 1};
        for (int v = 2; v < n; ++v) {
            int target = endpoints[rng.uniform_int(endpoints.size())];
            edges.emplace_back(target, v);
            endpoints.push_back(target);
            endpoints.push_back(v);
        }
        return Graph(n, edges);
    };
    int n = 200;
    double er_max = 0.0, pa_max = 0.0;
    for (int rep = 0; rep < 40; ++rep) {
        Graph er = gen_er_tree(n, 1000 + rep);
        Graph pa = gen_pa_tree(n, 2000 + rep);
        int em = 0, pm = 0;
        for (int v = 0; v < n; ++v) {
            em = std::max(em, er.degree(v));
            pm = std::max(pm, pa.degree(v));
        }
        er_max += em;
        pa_max += pm;
    }
    er_max /= 40;
    pa_max /= 40;
    // log-ish versus polynomial hub growth leaves a wide gap at n=200
    CHECK(er_max < pa_max);
    CHECK(er_max < 15.0);
}

TEST_CASE("er graph hits the requested edge count and degree") {
    Graph g = gen_er_graph(300, 4.0, 3);
    CHECK(g.num_edges() == 600);
    CHECK(g.is_connected());

    Graph complete = gen_er_graph(8, 7.0, 3);
    CHECK(complete.num_edges() == 28);

    CHECK_THROWS_AS(gen_er_graph(10, 0.0, 1), std::invalid_argument);
    CHECK_THROWS_AS(gen_er_graph(10, 10.0, 1), std::invalid_argument);

    double mean_deg = 0.0;
    for (int rep = 0; rep < 100; ++rep) {
        Graph h = gen_er_graph(100, 6.0, 5000 + rep);
        mean_deg += 2.0 * h.num_edges() / 100.0;
    }
    mean_deg /= 100;
    CHECK(mean_deg == doctest::Approx(6.0).epsilon(0.01));
}

TEST_CASE("forest fire grows connected graphs with tunable density") {
    // zero burn probabilities leave only the ambassador links: a random tree
    Graph t = gen_forest_fire(200, 0.0, 0.0, 9);
    CHECK(t.is_tree());

    double lo = 0.0, hi = 0.0;
    for (int rep = 0; rep < 30; ++rep) {
        lo += 2.0 * gen_forest_fire(300, 0.2, 0.15, 100 + rep).num_edges() / 300.0;
        hi += 2.0 * gen_forest_fire(300, 0.45, 0.3, 200 + rep).num_edges() / 300.0;
    }
    lo /= 30;
    hi /= 30;
    CHECK(lo < hi); // more forward burning, denser graphs
    CHECK(gen_forest_fire(300, 0.37, 0.3, 17).is_connected());
}

TEST_CASE("edge list io round trip and validation") {
    namespace fs = std::filesystem;
    fs::path dir = fs::temp_directory_path() / "casctop_test_io";
    fs::create_directories(dir);

    {
        std::ofstream f(dir / "small.el");
        f << "# comment\n0 1\n1 2\n";
    }
    Graph p = load_edge_list((dir / "small.el").string());
    CHECK(p.num_vertices() == 3);
    CHECK(p.num_edges() == 2);
    CHECK(p.has_edge(0, 1));
    CHECK(p.has_edge(1, 2));

    Graph g = gen_er_graph(40, 3.0, 77);
    save_edge_list(g, (dir / "roundtrip.el").string());
    Graph back = load_edge_list((dir / "roundtrip.el").string());
    CHECK(back.edges() == g.edges());

    {
        std::ofstream f(dir / "selfloop.el");
        f << "0 1\n2 2\n";
    }
    CHECK_THROWS_WITH_AS(load_edge_list((dir / "selfloop.el").string()),
                         doctest::Contains("line 2"), std::runtime_error);

    {
        std::ofstream f(dir / "dup.el");
        f << "0 1\n1 0\n";
    }
    CHECK_THROWS(load_edge_list((dir / "dup.el").string()));

    {
        std::ofstream f(dir / "sparse.el");
        f << "10 20\n20 30\n";
    }
    Graph sparse = load_edge_list((dir / "sparse.el").string());
    CHECK(sparse.num_vertices() == 3); // dense remap

    fs::remove_all(dir);
}
