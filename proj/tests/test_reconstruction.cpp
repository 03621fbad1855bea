#include "doctest.h"

#include "casctop/generators.hpp"
#include "casctop/oracles.hpp"
#include "casctop/reconstruction.hpp"
#include "test_util.hpp"

#include <algorithm>
#include <set>

using namespace casctop;
using namespace testutil;

namespace {

std::set<int> as_set(const std::vector<int>& v) { return {v.begin(), v.end()}; }

} // namespace

TEST_CASE("classify_vertices on canonical shapes") {
    auto p4 = classify_vertices(path_graph(4));
    CHECK(as_set(p4.leaves) == std::set<int>{0, 3});
    CHECK(as_set(p4.ordinary) == std::set<int>{1, 2});
    CHECK(p4.branched.empty());
    CHECK(p4.boundary_branched.empty());

    auto star = classify_vertices(star_graph(3));
    CHECK(as_set(star.leaves) == std::set<int>{1, 2, 3});
    CHECK(as_set(star.branched) == std::set<int>{0});
    CHECK(as_set(star.boundary_branched) == std::set<int>{0});

    CHECK_THROWS_AS(classify_vertices(cycle_graph(4)), std::invalid_argument);
}

TEST_CASE("classify_vertices separates interior branched vertices from boundary ones") {
    // hub 0 joins three branched spokes; every leaf path from 0 crosses a
    // spoke, so 0 is branched but not boundary-branched
    Graph t(13, {{0, 1},
                 {0, 7},
                 {0, 10},
                 {1, 2},
                 {2, 3},
                 {1, 4},
                 {4, 5},
                 {7, 8},
                 {8, 6},
                 {7, 9},
                 {10, 11},
                 {10, 12}});
    auto c = classify_vertices(t);
    CHECK(as_set(c.leaves) == std::set<int>{3, 5, 6, 9, 11, 12});
    CHECK(as_set(c.ordinary) == std::set<int>{2, 4, 8});
    CHECK(as_set(c.branched) == std::set<int>{0, 1, 7, 10});
    CHECK(as_set(c.boundary_branched) == std::set<int>{1, 7, 10});
}

TEST_CASE("convex hull basics and oracle agreement") {
    Graph p5 = path_graph(5);
    CHECK(convex_hull(p5, {0, 4}) == std::vector<int>{0, 1, 2, 3, 4});
    CHECK(convex_hull(p5, {2}) == std::vector<int>{2});
    CHECK_THROWS_AS(convex_hull(p5, {}), std::invalid_argument);

    for (std::uint64_t seed : {7u, 8u, 9u, 10u}) {
        Graph t = gen_er_tree(30, seed);
        Rng rng(seed * 31);
        auto vs = random_subset(30, 5, rng);
        CHECK(convex_hull(t, vs) == oracle::hull_pairwise_paths(t, vs));
    }
}

TEST_CASE("relative distance is a pseudometric") {
    Graph p4 = path_graph(4);
    auto dt = DistanceTable::all_pairs(p4);
    CHECK(relative_distance(dt, {0}, 1, 3) == 2);
    CHECK(relative_distance(dt, {0, 3}, 2, 2) == 0);

    Graph t = gen_er_tree(25, 99);
    auto dtt = DistanceTable::all_pairs(t);
    Rng rng(5);
    auto vs = random_subset(25, 6, rng);
    for (int a = 0; a < 25; ++a)
        for (int b = 0; b < 25; ++b) {
            int dab = relative_distance(dtt, vs, a, b);
            CHECK(dab == relative_distance(dtt, vs, b, a));
            CHECK(dab >= 0);
            for (int c = 0; c < 25; ++c)
                CHECK(dab <= relative_distance(dtt, vs, a, c) + relative_distance(dtt, vs, c, b));
        }
}

TEST_CASE("separating vertex sets") {
    CHECK(is_separating(path_graph(6), {0}));
    CHECK_FALSE(is_separating(star_graph(3), {0}));

    // two equal-length legs hanging off the same vertex are indistinguishable
    // from both marked sources
    Graph spider(5, {{0, 1}, {1, 2}, {1, 3}, {1, 4}});
    CHECK_FALSE(is_separating(spider, {0, 1}));

    for (std::uint64_t seed : {3u, 4u, 5u}) {
        Graph t = gen_er_tree(20, seed);
        Rng rng(seed);
        for (int k : {1, 3, 6}) {
            auto vs = random_subset(20, k, rng);
            CHECK(is_separating(t, vs) == oracle::separating_by_definition(t, vs));
        }
    }
}

TEST_CASE("reconstruction contains the true edges and is exact when the hull covers the tree") {
    for (std::uint64_t seed : {11u, 12u, 13u, 14u, 15u}) {
        Graph t = gen_er_tree(24, seed);
        auto dt = DistanceTable::all_pairs(t);
        Rng rng(seed + 100);
        for (int k : {2, 5, 12, 24}) {
            auto vs = random_subset(24, k, rng);
            auto rec = reconstruct_from(dt, vs, 24);
            std::set<Edge> rec_set(rec.begin(), rec.end());
            for (const auto& e : t.edges()) CHECK(rec_set.count(e) == 1);

            auto hull = convex_hull(t, vs);
            if (static_cast<int>(hull.size()) == 24) {
                CHECK(rec.size() == t.edges().size());
                CHECK(std::equal(rec.begin(), rec.end(), t.edges().begin()));
            }
        }
    }
}

TEST_CASE("reconstruction modes differ exactly on unseparated pairs") {
    // star: the center alone separates nothing; every leaf pair ties at 0
    Graph st = star_graph(3);
    auto dt = DistanceTable::all_pairs(st);
    auto loose = reconstruct_from(dt, {0}, 4, ReconstructMode::threshold_le1);
    auto strict = reconstruct_from(dt, {0}, 4, ReconstructMode::exact_eq1);
    CHECK(loose.size() == 6);  // all pairs collapse
    CHECK(strict.size() == 3); // only the true edges keep relative distance 1
}

TEST_CASE("exact reconstruction precondition implies equality") {
    for (std::uint64_t seed : {21u, 22u, 23u, 24u}) {
        Graph t = gen_er_tree(30, seed);
        auto cls = classify_vertices(t);
        // the full leaf set satisfies the hypotheses on trees with n >= 3
        CHECK(exact_reconstruction_precondition(t, cls.leaves));
        auto dt = DistanceTable::from_sources(t, cls.leaves);
        auto rec = reconstruct_from(dt, cls.leaves, 30);
        CHECK(std::equal(rec.begin(), rec.end(), t.edges().begin(), t.edges().end()));
    }
}

TEST_CASE("accuracy lower bound") {
    Graph t = gen_er_tree(40, 77);
    std::vector<int> all(40);
    for (int i = 0; i < 40; ++i) all[i] = i;
    CHECK(accuracy_lower_bound(t, all) == doctest::Approx(1.0));
    CHECK(accuracy_lower_bound(t, {7}) == doctest::Approx(1.0 / 40));
}

TEST_CASE("redundancy agrees with the double-reconstruction oracle") {
    for (std::uint64_t seed : {31u, 32u, 33u}) {
        Graph t = gen_er_tree(18, seed);
        auto dt = DistanceTable::all_pairs(t);
        Rng rng(seed);
        auto vs = random_subset(18, 7, rng);
        for (int v : vs) {
            CHECK(is_redundant(dt, vs, v, 18) ==
                  oracle::redundant_by_double_reconstruction(dt, vs, v, 18));
        }
        CHECK_THROWS_AS(is_redundant(dt, vs, /*not member*/ -1, 18), std::invalid_argument);
    }
}

TEST_CASE("membership of the reduced hull forces redundancy") {
    // any vertex inside conv(vs \ {v}) is redundant (sufficient condition)
    for (std::uint64_t seed : {41u, 42u, 43u, 44u}) {
        Graph t = gen_er_tree(20, seed);
        auto dt = DistanceTable::all_pairs(t);
        auto cls = classify_vertices(t);
        std::vector<int> vs = cls.leaves; // conv(leaves) covers the whole tree
        for (int v = 0; v < 20; ++v) {
            if (std::find(vs.begin(), vs.end(), v) != vs.end()) continue;
            std::vector<int> with = vs;
            with.push_back(v);
            std::sort(with.begin(), with.end());
            auto hull = convex_hull(t, vs);
            if (std::find(hull.begin(), hull.end(), v) != hull.end())
                CHECK(is_redundant(dt, with, v, 20));
        }
    }
}

TEST_CASE("redundant core removals all pass the redundancy test") {
    for (std::uint64_t seed : {51u, 52u}) {
        Graph t = gen_er_tree(40, seed);
        auto dt = DistanceTable::all_pairs(t);
        std::vector<int> vs(40);
        for (int i = 0; i < 40; ++i) vs[i] = i;
        auto core = redundant_core(t, vs);
        CHECK(core.size() <= vs.size());
        std::set<int> core_set(core.begin(), core.end());
        for (int v : vs)
            if (!core_set.count(v)) CHECK(is_redundant(dt, vs, v, 40));
        // the reconstruction from the core equals the one from everything
        auto full = reconstruct_from(dt, vs, 40);
        auto reduced = reconstruct_from(dt, core, 40);
        CHECK(full == reduced);
    }
}

TEST_CASE("redundant core keeps everything when nothing is removable") {
    // two leaves of a star: removing either one merges a non-edge pair
    Graph st = star_graph(3);
    auto core = redundant_core(st, {2, 3});
    CHECK(core == std::vector<int>{2, 3});
}

TEST_CASE("subtree splits the tree at the first path edge") {
    Graph p3 = path_graph(3);
    CHECK(subtree(p3, 0, 2).members == std::vector<int>{0});
    CHECK_THROWS_AS(subtree(p3, 1, 1), std::invalid_argument);

    for (std::uint64_t seed : {61u, 62u}) {
        Graph t = gen_er_tree(25, seed);
        Rng rng(seed);
        for (int rep = 0; rep < 10; ++rep) {
            int u = static_cast<int>(rng.uniform_int(25));
            int v;
            do { v = static_cast<int>(rng.uniform_int(25)); } while (v == u);
            auto h = subtree(t, u, v);
            CHECK(h.members == oracle::subtree_members_by_bfs(t, u, v));
            CHECK(std::find(h.members.begin(), h.members.end(), u) != h.members.end());
            CHECK(std::find(h.members.begin(), h.members.end(), v) == h.members.end());
        }
        // deleting the shared edge of an adjacent pair splits the tree in two
        for (const auto& e : t.edges()) {
            auto a = subtree(t, e.u, e.v);
            auto b = subtree(t, e.v, e.u);
            CHECK(a.members.size() + b.members.size() == 25);
            std::set<int> overlap;
            for (int x : a.members)
                if (std::find(b.members.begin(), b.members.end(), x) != b.members.end())
                    overlap.insert(x);
            CHECK(overlap.empty());
        }
    }
}

TEST_CASE("tree reconstruction theory holds exhaustively on small trees") {
    for (int n = 2; n <= 6; ++n) {
        for (const auto& t : all_trees(n)) {
            auto dt = DistanceTable::all_pairs(t);
            for (unsigned mask = 1; mask < (1u << n); ++mask) {
                std::vector<int> vs;
                for (int v = 0; v < n; ++v)
                    if (mask & (1u << v)) vs.push_back(v);
                auto rec = reconstruct_from(dt, vs, n);
                // true edges always survive
                std::set<Edge> rec_set(rec.begin(), rec.end());
                for (const auto& e : t.edges()) CHECK(rec_set.count(e) == 1);
                // vs separates its own hull
                auto hull = convex_hull(t, vs);
                bool hull_sep = true;
                for (std::size_t i = 0; i < hull.size() && hull_sep; ++i)
                    for (std::size_t j = i + 1; j < hull.size(); ++j) {
                        bool split = false;
                        for (int s : vs)
                            if (dt.dist(s, hull[i]) != dt.dist(s, hull[j])) {
                                split = true;
                                break;
                            }
                        if (!split) {
                            hull_sep = false;
                            break;
                        }
                    }
                CHECK(hull_sep);
                // under the exactness hypotheses the reconstruction is exact
                if (exact_reconstruction_precondition(t, vs))
                    CHECK(std::equal(rec.begin(), rec.end(), t.edges().begin(), t.edges().end()));
                // trees are triangle-free: exactness forces separation
                if (rec.size() == t.edges().size() &&
                    std::equal(rec.begin(), rec.end(), t.edges().begin()))
                    CHECK(is_separating(t, vs));
            }
        }
    }
}

TEST_CASE("redundancy is monotone under supersets") {
    for (std::uint64_t seed : {71u, 72u, 73u}) {
        Graph t = gen_er_tree(16, seed);
        auto dt = DistanceTable::all_pairs(t);
        Rng rng(seed);
        auto vs = random_subset(16, 6, rng);
        auto extra = random_subset(16, 10, rng);
        std::vector<int> super = vs;
        for (int e : extra)
            if (std::find(super.begin(), super.end(), e) == super.end()) super.push_back(e);
        std::sort(super.begin(), super.end());
        for (int v : vs)
            if (is_redundant(dt, vs, v, 16)) CHECK(is_redundant(dt, super, v, 16));
    }
}

TEST_CASE("mutual replaceability is equivalent to joint redundancy on small trees") {
    for (int n = 4; n <= 6; ++n) {
        for (const auto& t : all_trees(n)) {
            auto dt = DistanceTable::all_pairs(t);
            std::vector<int> vs(n);
            for (int i = 0; i < n; ++i) vs[i] = i;
            for (int a = 0; a < n; ++a)
                for (int b = a + 1; b < n; ++b) {
                    std::vector<int> wo_a, wo_b;
                    for (int v : vs) {
                        if (v != a) wo_a.push_back(v);
                        if (v != b) wo_b.push_back(v);
                    }
                    bool replaceable =
                        reconstruct_from(dt, wo_a, n) == reconstruct_from(dt, wo_b, n);
                    bool both = is_redundant(dt, vs, a, n) && is_redundant(dt, vs, b, n);
                    CHECK(replaceable == both);
                }
        }
    }
}
