#include <algorithm>
#include <sstream>

#include <doctest.h>

#include "endslab/check/fuzz.hpp"
#include "endslab/check/oracles.hpp"
#include "endslab/error.hpp"
#include "helpers.hpp"

using namespace endslab;
using testutil::cayley;
using testutil::ints;
using testutil::range;

TEST_CASE("vertices are numbered breadth first from the basepoint") {
    auto c = cayley("F2", 4);
    const Graph& g = c.graph;
    CHECK(g.label(0) == "e");
    CHECK(g.depth(0) == 0);
    auto dist = bfs_distances(g, 0);
    for (int v = 1; v < g.size(); ++v) {
        CHECK(g.depth(v) >= g.depth(v - 1));
        CHECK(dist[v] == g.depth(v));
    }
    CHECK(g.max_depth() == 4);
}

TEST_CASE("truncated Cayley graphs have the lattice and free-group ball sizes") {
    CHECK(cayley("Z", 3).graph.size() == 7);
    CHECK(ints(cayley("Z", 3).graph, cayley("Z", 3).graph.all()) == range(-3, 3));
    CHECK(cayley("Z2", 2).graph.size() == 13);
    CHECK(cayley("F2", 2).graph.size() == 17);
    for (int r = 1; r <= 6; ++r) {
        CHECK(cayley("Z", r).graph.size() == oracle::lattice_ball_size(1, r));
        CHECK(cayley("Z2", r).graph.size() == oracle::lattice_ball_size(2, r));
        CHECK(cayley("Z3", r).graph.size() == oracle::lattice_ball_size(3, r));
        CHECK(cayley("F2", r).graph.size() == oracle::free_ball_size_by_words(2, r));
    }
    for (int r = 1; r <= 4; ++r) CHECK(cayley("F3", r).graph.size() == oracle::free_ball_size_by_words(3, r));
}

TEST_CASE("balls around a vertex") {
    auto z = cayley("Z", 10);
    CHECK(ints(z.graph, ball(z.graph, 0, 0)) == std::vector<int>{0});
    CHECK(ints(z.graph, ball(z.graph, 0, 2)) == range(-2, 2));
    auto f = cayley("F2", 3);
    CHECK(ball(f.graph, 0, 1) == testutil::labels(f.graph, {"e", "a", "A", "b", "B"}));
    CHECK_THROWS_AS(ball(f.graph, 0, 4), HorizonError);
    CHECK_THROWS_WITH(ball(f.graph, 0, 4), "ball exceeds horizon");
    auto center = *f.graph.find_label("ab");
    CHECK(ball(f.graph, center, 1) == testutil::labels(f.graph, {"ab", "a", "abb", "aba", "abA"}));
}

TEST_CASE("components of the complement of a ball") {
    auto z = cayley("Z", 10);
    auto parts = components(z.graph, z.graph.all() - ball(z.graph, 0, 1));
    REQUIRE(parts.size() == 2);
    std::vector<std::vector<int>> got{ints(z.graph, parts[0]), ints(z.graph, parts[1])};
    std::sort(got.begin(), got.end());
    CHECK(got[0] == range(-10, -2));
    CHECK(got[1] == range(2, 10));

    auto z2 = cayley("Z2", 8);
    CHECK(components(z2.graph, z2.graph.all() - ball(z2.graph, 0, 2)).size() == 1);

    // Removing only the identity leaves one branch per generator; removing the
    // closed unit ball leaves one per reduced word of length 2.
    auto f = cayley("F2", 6);
    CHECK(components(f.graph, f.graph.all() - ball(f.graph, 0, 0)).size() == 4);
    CHECK(components(f.graph, f.graph.all() - ball(f.graph, 0, 1)).size() == 12);
    CHECK(components(f.graph, f.graph.empty_set()).empty());
}

TEST_CASE("components partition the region") {
    fuzz::Rng rng(3);
    auto z2 = cayley("Z2", 7);
    const Graph& g = z2.graph;
    for (int t = 0; t < 50; ++t) {
        VertexSet region = g.empty_set();
        for (int v = 0; v < g.size(); ++v) {
            if (rng.chance(0.6)) region.insert(v);
        }
        auto parts = components(g, region);
        VertexSet seen = g.empty_set();
        for (const auto& p : parts) {
            CHECK_FALSE(p.empty());
            CHECK_FALSE(p.intersects(seen));
            seen |= p;
            // No edge leaves a part inside the region.
            p.for_each([&](int v) {
                for (int u : g.neighbors(v)) {
                    if (region.contains(u)) CHECK(p.contains(u));
                }
            });
        }
        CHECK(seen == region);
        auto lab = component_labels(g, region);
        CHECK(lab.count == static_cast<int>(parts.size()));
    }
}

TEST_CASE("shell contact decides boundedness") {
    auto z = cayley("Z", 10);
    const Graph& g = z.graph;
    CHECK(classify_component(g, testutil::z_set(g, range(2, 10))) == Boundedness::unbounded_within_horizon);
    auto island = components(g, g.all() - testutil::z_set(g, {2, 5}) - ball(g, 0, 1));
    int bounded = 0;
    for (const auto& p : island) {
        if (classify_component(g, p) == Boundedness::bounded_within_horizon) {
            CHECK(ints(g, p) == std::vector<int>{3, 4});
            ++bounded;
        }
    }
    CHECK(bounded == 1);

    auto z2 = cayley("Z2", 8);
    auto annulus = components(z2.graph, z2.graph.all() - ball(z2.graph, 0, 2));
    CHECK(classify_component(z2.graph, annulus[0]) == Boundedness::unbounded_within_horizon);

    // Adding shell vertices never makes a set bounded.
    fuzz::Rng rng(5);
    for (int t = 0; t < 30; ++t) {
        VertexSet s = z2.graph.empty_set();
        for (int v = 0; v < z2.graph.size(); ++v) {
            if (rng.chance(0.1)) s.insert(v);
        }
        if (classify_component(z2.graph, s) == Boundedness::unbounded_within_horizon) {
            CHECK(classify_component(z2.graph, s | z2.graph.shell()) == Boundedness::unbounded_within_horizon);
        }
    }
}

TEST_CASE("wider shells start closer to the basepoint") {
    auto z = cayley("Z", 10, 3);
    CHECK(z.graph.horizon().shell_start() == 8);
    CHECK(ints(z.graph, z.graph.shell()) == std::vector<int>{-10, -9, -8, 8, 9, 10});
    CHECK(classify_component(z.graph, testutil::z_set(z.graph, {8})) == Boundedness::unbounded_within_horizon);
    CHECK(classify_component(z.graph, testutil::z_set(z.graph, {7})) == Boundedness::bounded_within_horizon);
}

TEST_CASE("graph files") {
    std::istringstream in(R"(# a path with a pendant
basepoint 10
v 10 root
v 11
v 12
v 13
e 10 11
e 11 12
e 12 13
)");
    Graph g = parse_graph(in);
    CHECK(g.size() == 4);
    CHECK(g.label(0) == "root");
    CHECK(g.horizon().radius == 3);
    CHECK(g.max_depth() == 3);
    CHECK(g.find_label("13").has_value());

    std::istringstream cut("basepoint 0\nv 0\nv 1\nv 2\nv 3\ne 0 1\ne 1 2\ne 2 3\n");
    CHECK(parse_graph(cut, Horizon{2, 1}).size() == 3);

    std::istringstream loop("basepoint 0\nv 0\ne 0 0\n");
    CHECK_THROWS_AS(parse_graph(loop), InputError);
    std::istringstream dup("basepoint 0\nv 0\nv 1\ne 0 1\ne 1 0\n");
    CHECK_THROWS_AS(parse_graph(dup), InputError);
    std::istringstream junk("basepoint 0\nv 0\nfrobnicate\n");
    CHECK_THROWS_WITH_AS(parse_graph(junk), doctest::Contains("line 3"), InputError);
    std::istringstream nobase("v 0\nv 1\ne 0 1\n");
    std::istringstream undeclared("basepoint 0\nv 0\ne 0 1\n");
    CHECK_THROWS_WITH_AS(parse_graph(undeclared), doctest::Contains("line 3"), InputError);
    CHECK_THROWS_AS(parse_graph(nobase), InputError);
}

TEST_CASE("horizon validation") {
    CHECK_THROWS_AS((Horizon{-1, 1}.validate()), HorizonError);
    CHECK_THROWS_AS((Horizon{5, 0}.validate()), HorizonError);
    CHECK_NOTHROW((Horizon{5, 1}.validate()));
    auto z = cayley("Z", 5);
    CHECK_THROWS_AS(z.graph.with_horizon(Horizon{4, 1}), HorizonError);
    CHECK(z.graph.with_horizon(Horizon{8, 2}).horizon().shell_start() == 7);
}

TEST_CASE("neighborhoods") {
    auto z = cayley("Z", 10);
    auto n = neighborhood(z.graph, testutil::z_set(z.graph, {-5, 5}), 2);
    CHECK(ints(z.graph, n) == std::vector<int>{-7, -6, -5, -4, -3, 3, 4, 5, 6, 7});
    CHECK(neighborhood(z.graph, z.graph.empty_set(), 3).empty());
}
