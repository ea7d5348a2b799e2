#include <sstream>

#include <doctest.h>

#include "endslab/check/fuzz.hpp"
#include "endslab/check/oracles.hpp"
#include "endslab/ends.hpp"
#include "endslab/error.hpp"
#include "helpers.hpp"

using namespace endslab;
using testutil::cayley;
using testutil::range;

namespace {

LevelDecomposition levels(const CayleyGraph& c, const std::vector<int>& radii) {
    return decompose(c.graph, c.graph.horizon(), radii);
}

}  // namespace

TEST_CASE("unbounded component counts of the presets") {
    auto z = cayley("Z", 20);
    CHECK(levels(z, range(1, 5)).counts() == std::vector<int>{2, 2, 2, 2, 2});
    auto z2 = cayley("Z2", 20);
    CHECK(levels(z2, range(1, 5)).counts() == std::vector<int>{1, 1, 1, 1, 1});
    auto f2 = cayley("F2", 10);
    CHECK(levels(f2, range(1, 4)).counts() == std::vector<int>{4, 12, 36, 108});
    CHECK(levels(f2, range(1, 3)).counts() == std::vector<int>{4, 12, 36});
}

TEST_CASE("level counts match the BFS oracle and the sphere sizes") {
    for (const char* p : {"Z", "Z2", "Z3", "F2", "F3", "Dinf"}) {
        auto c = cayley(p, 6);
        auto radii = default_radii(c.graph.horizon());
        CHECK(levels(c, radii).counts() == oracle::component_counts(c.graph, radii));
    }
    auto f3 = cayley("F3", 6);
    auto counts = levels(f3, {1, 2, 3, 4}).counts();
    for (int n = 1; n <= 4; ++n) CHECK(counts[n - 1] == oracle::free_sphere_size(3, n));
}

TEST_CASE("bounded components stay in the decomposition") {
    // Path 0-1-2-3-6 with a pendant 1-4-5: beyond radius 2 the pendant is a
    // bounded island, the path end reaches the shell.
    std::istringstream in("basepoint 0\nv 0\nv 1\nv 2\nv 3\nv 4\nv 5\nv 6\ne 0 1\ne 1 2\ne 2 3\ne 1 4\ne 4 5\ne 3 6\n");
    Graph g = parse_graph(in, Horizon{4, 1});
    auto dec = decompose(g, g.horizon(), {1, 2});
    const Level& l2 = dec.levels[1];
    CHECK(l2.components.size() == 2);
    CHECK(l2.unbounded.size() == 1);
    CHECK(l2.bounded_extent == 3);
    CHECK(dec.counts() == std::vector<int>{1, 1});
}

TEST_CASE("radii are validated against the horizon") {
    Horizon h{10, 2};
    CHECK(default_radii(h) == range(1, 6));
    CHECK_NOTHROW(validate_radii({1, 4, 8}, h));
    CHECK_THROWS_WITH_AS(validate_radii({1, 3, 3}, h), doctest::Contains("3"), InputError);
    CHECK_THROWS_WITH_AS(validate_radii({0, 2}, h), doctest::Contains("0"), InputError);
    CHECK_THROWS_WITH_AS(validate_radii({2, 9}, h), doctest::Contains("9"), InputError);
    CHECK_THROWS_AS(validate_radii({}, h), InputError);
}

TEST_CASE("end tree shapes") {
    auto z = cayley("Z", 20);
    auto tz = end_tree(levels(z, range(1, 5)), z.graph);
    CHECK(tz.nodes[0].children.size() == 2);
    for (const auto& n : tz.nodes) {
        if (n.depth >= 1 && n.depth < 5) CHECK(n.children.size() == 1);
    }
    auto z2 = cayley("Z2", 12);
    auto t2 = end_tree(levels(z2, range(1, 5)), z2.graph);
    CHECK(t2.nodes.size() == 6);
    for (int d = 1; d <= 5; ++d) CHECK(t2.nodes_at_depth(d).size() == 1);

    auto f2 = cayley("F2", 7);
    auto tf = end_tree(levels(f2, range(1, 4)), f2.graph);
    CHECK(tf.nodes[0].children.size() == 4);
    for (const auto& n : tf.nodes) {
        if (n.depth >= 1 && n.depth < 4) CHECK(n.children.size() == 3);
        if (n.parent >= 0) CHECK(tf.nodes[n.parent].depth == n.depth - 1);
    }
    // Children are ordered by representative vertex.
    for (const auto& n : tf.nodes) {
        for (std::size_t i = 1; i < n.children.size(); ++i) {
            CHECK(tf.nodes[n.children[i - 1]].representative < tf.nodes[n.children[i]].representative);
        }
    }
}

TEST_CASE("branch prefixes at a depth") {
    auto z = cayley("Z", 20);
    CHECK(ends_at_depth(end_tree(levels(z, range(1, 5)), z.graph), 3).size() == 2);
    auto z2 = cayley("Z2", 12);
    CHECK(ends_at_depth(end_tree(levels(z2, range(1, 5)), z2.graph), 3).size() == 1);
    auto f2 = cayley("F2", 7);
    auto tree = end_tree(levels(f2, range(1, 4)), f2.graph);
    auto p2 = ends_at_depth(tree, 2);
    CHECK(p2.size() == 12);
    for (const auto& p : p2) {
        REQUIRE(p.size() == 2);
        CHECK(tree.nodes[p[1]].parent == p[0]);
    }
}

TEST_CASE("end verdicts from counts") {
    auto two = classify_counts({2, 2, 2, 2, 2});
    CHECK(two.verdict == EndVerdict::two);
    CHECK(two.stabilization_level == 1);
    CHECK(classify_counts({1, 1, 1}).verdict == EndVerdict::one);
    CHECK(classify_counts({4, 12, 36, 108}).verdict == EndVerdict::many_growing);
    CHECK(classify_counts({0, 0, 0}).verdict == EndVerdict::zero);
    CHECK(classify_counts({3, 3, 3}).verdict == EndVerdict::undetermined);
    CHECK(classify_counts({1, 2, 2, 3}).verdict == EndVerdict::undetermined);
    auto shallow = classify_counts({2, 2});
    CHECK(shallow.verdict == EndVerdict::undetermined);
    CHECK_FALSE(shallow.note.empty());
    CHECK(classify_counts({4, 2, 2, 2}).stabilization_level == 2);
}

TEST_CASE("a finite graph inside the first ball has no ends") {
    std::istringstream in("basepoint 0\nv 0\nv 1\nv 2\ne 0 1\ne 1 2\n");
    Graph g = parse_graph(in, Horizon{10, 1});
    auto dec = decompose(g, g.horizon(), {3, 4, 5});
    CHECK(classify(dec).verdict == EndVerdict::zero);
    CHECK(end_tree(dec, g).nodes.size() == 1);
}

TEST_CASE("counts do not depend on the horizon once it clears the last radius") {
    for (const char* p : {"Z", "Z2", "F2"}) {
        std::vector<int> radii{1, 2, 3};
        auto base = levels(cayley(p, 5), radii).counts();
        for (int R = 6; R <= 8; ++R) CHECK(levels(cayley(p, R), radii).counts() == base);
    }
}

TEST_CASE("tree presets have non-decreasing node counts") {
    for (const char* p : {"F2", "F3", "Z", "Dinf"}) {
        auto c = cayley(p, 6);
        auto counts = levels(c, range(1, 4)).counts();
        for (std::size_t i = 1; i < counts.size(); ++i) CHECK(counts[i] >= counts[i - 1]);
    }
}

TEST_CASE("refinement on random lattice pieces") {
    for (int i = 0; i < 20; ++i) {
        fuzz::Rng rng(fuzz::mix_seed(11, "unit", i));
        Graph g = fuzz::random_lattice_subgraph(rng, 12);
        auto radii = default_radii(g.horizon());
        CHECK(oracle::refinement_violations(g, radii) == 0);
        CHECK(decompose(g, g.horizon(), radii).counts() == oracle::component_counts(g, radii));
        CHECK_NOTHROW(end_tree(decompose(g, g.horizon(), radii), g));
    }
}

TEST_CASE("tree exports") {
    auto z = cayley("Z", 6);
    auto tree = end_tree(levels(z, {1, 2}), z.graph);
    auto j = end_tree_json(tree);
    CHECK(j["depth"] == 2);
    CHECK(j["nodes"].size() == 5);
    std::vector<std::string> keys;
    for (auto& [k, v] : j["nodes"][1].items()) keys.push_back(k);
    CHECK(keys == std::vector<std::string>{"id", "depth", "parent", "size", "representative"});
    CHECK(j["nodes"][0]["parent"].is_null());
    auto dot = end_tree_dot(tree, z.graph);
    CHECK(dot.rfind("digraph end_tree {", 0) == 0);
    CHECK(dot.find("n0 -> n1;") != std::string::npos);
}
