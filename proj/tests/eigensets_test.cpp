#include <doctest.h>

#include "endslab/check/oracles.hpp"
#include "endslab/eigensets.hpp"
#include "endslab/error.hpp"
#include "endslab/set_expr.hpp"
#include "helpers.hpp"

using namespace endslab;
using testutil::cayley;
using testutil::ints;
using testutil::range;

namespace {

VertexSet expr(const CayleyGraph& c, const std::string& e, const LevelDecomposition* dec = nullptr) {
    return parse_set_expr(e, SetContext{&c.graph, &c, dec});
}

VertexSet all_residues(const EigensetVerdict& v, const Graph& g) {
    VertexSet s = g.empty_set();
    for (const auto& op : v.operators) {
        s |= op.residue;
        s |= op.complement_residue;
    }
    return s;
}

// Cover elements meeting A, checked one by one.
VertexSet naive_star(const VertexSet& a, const Cover& cover, const Graph& g) {
    VertexSet out = g.empty_set();
    for (const auto& el : cover.elements) {
        bool meets = false;
        for (int v : el) meets |= a.contains(v);
        if (meets) {
            for (int v : el) out.insert(v);
        }
    }
    return out;
}

}  // namespace

TEST_CASE("translations of a ray and of the evens") {
    auto z = cayley("Z", 40);
    auto fam = translation_family(z);
    CHECK(fam.operators.size() == 2);
    auto ray = is_eigenset(expr(z, "ray+"), fam, z.graph);
    CHECK(ray.status == EigenStatus::eigenset);
    CHECK(ray.bounding_radius == 1);
    auto res = ints(z.graph, all_residues(ray, z.graph));
    CHECK(res == std::vector<int>{-1, 0});
    for (const auto& op : ray.operators) CHECK(op.residue_radius <= 1);

    auto evens = is_eigenset(expr(z, "evens"), fam, z.graph);
    CHECK(evens.status == EigenStatus::not_eigenset);
    CHECK_FALSE(evens.bounding_radius.has_value());
}

TEST_CASE("a halfplane is moved by translations") {
    auto z2 = cayley("Z2", 16);
    auto v = is_eigenset(expr(z2, "halfplane x>=0"), translation_family(z2), z2.graph);
    CHECK(v.status == EigenStatus::not_eigenset);
    // Every residue sits on one of the two columns next to the boundary.
    all_residues(v, z2.graph).for_each([&](int u) {
        auto label = z2.graph.label(u);
        CHECK((label.rfind("(0,", 0) == 0 || label.rfind("(-1,", 0) == 0));
    });
    CHECK(is_eigenset(expr(z2, "ball 3"), translation_family(z2), z2.graph).status == EigenStatus::eigenset);
}

TEST_CASE("stars over covers") {
    auto z = cayley("Z", 40);
    auto ray = expr(z, "ray+");
    CHECK(star(ray, singleton_cover(z.graph)) == ray);
    auto edge = star(ray, edge_cover(z.graph));
    auto diff = edge;
    diff -= ray;
    CHECK(ints(z.graph, diff) == std::vector<int>{-1});
    auto fam = star_family(z.graph, {edge_cover(z.graph), ball_cover(z.graph, 1)});
    CHECK(is_eigenset(ray, fam, z.graph).status == EigenStatus::eigenset);
    CHECK(is_eigenset(expr(z, "evens"), fam, z.graph).status == EigenStatus::not_eigenset);
}

TEST_CASE("stars match the brute-force definition") {
    auto f2 = cayley("F2", 5);
    auto a = expr(f2, "branch ab");
    for (const auto& cover : {singleton_cover(f2.graph), edge_cover(f2.graph), ball_cover(f2.graph, 1)}) {
        CHECK(star(a, cover) == naive_star(a, cover, f2.graph));
    }
}

TEST_CASE("covers are validated") {
    auto z = cayley("Z", 10);
    CHECK_NOTHROW(validate_cover(z.graph, edge_cover(z.graph)));
    CHECK_NOTHROW(validate_cover(z.graph, ball_cover(z.graph, 2)));
    Cover wide = edge_cover(z.graph);
    wide.diameter = 0;
    CHECK_THROWS_AS(validate_cover(z.graph, wide), InputError);
    Cover partial = singleton_cover(z.graph);
    partial.elements.pop_back();
    CHECK_THROWS_AS(validate_cover(z.graph, partial), InputError);
}

TEST_CASE("component operators") {
    auto z = cayley("Z", 40);
    auto dec = decompose(z.graph, z.graph.horizon(), range(1, 5));
    auto fam = component_family(z.graph, dec);
    CHECK(fam.operators.size() == 5);
    auto ray = expr(z, "ray+");
    CHECK(is_component_union(ray, z.graph, dec));
    CHECK(is_eigenset(ray, fam, z.graph).status == EigenStatus::eigenset);
    auto evens = expr(z, "evens");
    CHECK_FALSE(is_component_union(evens, z.graph, dec));
    CHECK(is_eigenset(evens, fam, z.graph).status == EigenStatus::not_eigenset);
}

TEST_CASE("cones") {
    auto z = cayley("Z", 20);
    CHECK(ints(z.graph, cone(z.graph, testutil::z_set(z.graph, {5}))) == range(0, 5));
    CHECK(ints(z.graph, cone(z.graph, testutil::z_set(z.graph, {0}))) == std::vector<int>{0});
    CHECK(ints(z.graph, cone(z.graph, testutil::z_set(z.graph, {-2, 3}))) == range(-2, 3));

    auto z2 = cayley("Z2", 8);
    auto c = cone(z2.graph, testutil::labels(z2.graph, {"(2,2)"}));
    CHECK(c.count() == 9);
    c.for_each([&](int v) {
        auto label = z2.graph.label(v);
        bool inside = false;
        for (int x = 0; x <= 2; ++x) {
            for (int y = 0; y <= 2; ++y) {
                inside |= label == "(" + std::to_string(x) + "," + std::to_string(y) + ")";
            }
        }
        CHECK(inside);
    });

    auto f2 = cayley("F2", 6);
    auto a = expr(f2, "branch ab");
    CHECK(cone(f2.graph, a) == oracle::cone(f2.graph, a, 0));
}

TEST_CASE("cone families") {
    auto z = cayley("Z", 40);
    CHECK(default_cone_radii(z.graph.horizon()) == std::vector<int>{1, 2, 4});
    CHECK(default_cone_radii(Horizon{6, 1}) == std::vector<int>{1});
    CHECK_THROWS_AS(cone_families(z.graph, {11}), HorizonError);
    auto fams = cone_families(z.graph, {1, 2, 4});
    for (const auto* f : {&fams.cb, &fams.bc, &fams.g}) {
        CHECK(is_eigenset(expr(z, "ray+"), *f, z.graph).status == EigenStatus::eigenset);
        CHECK(is_eigenset(expr(z, "evens"), *f, z.graph).status == EigenStatus::not_eigenset);
        for (const auto& op : f->operators) CHECK(op.safety_margin >= 2);
    }
    auto f2 = cayley("F2", 10);
    auto fg = cone_families(f2.graph, default_cone_radii(f2.graph.horizon()));
    CHECK(is_eigenset(expr(f2, "branch a"), fg.g, f2.graph).status == EigenStatus::eigenset);
}

TEST_CASE("Gromov product operator on the line") {
    auto z = cayley("Z", 30);
    auto op = gromov_operator(z.graph, 0, 3);
    auto img = op.apply(testutil::z_set(z.graph, {10}));
    CHECK(ints(z.graph, img) == range(4, 30));
    CHECK(img == oracle::gromov(z.graph, testutil::z_set(z.graph, {10}), 0, 3));
    auto fam = gromov_family(z.graph, {1, 2});
    CHECK(is_eigenset(expr(z, "ray+"), fam, z.graph).status == EigenStatus::eigenset);
}

TEST_CASE("Boolean operations on eigensets") {
    auto z = cayley("Z", 40);
    auto fam = translation_family(z);
    auto pos = expr(z, "ray+");
    auto neg = expr(z, "ray-");
    auto r = closure_check(pos, neg, fam, z.graph);
    CHECK(r.ok);
    CHECK(r.union_status == EigenStatus::eigenset);
    CHECK(r.intersection_status == EigenStatus::eigenset);
    CHECK(r.difference_status == EigenStatus::eigenset);
    CHECK(closure_check(pos, expr(z, "ball 5"), fam, z.graph).ok);
}

TEST_CASE("verdict severity and export") {
    CHECK(std::string(to_string(EigenStatus::undetermined)) == "undetermined");
    auto z = cayley("Z", 40);
    auto fam = translation_family(z);
    auto j = verdict_json(is_eigenset(expr(z, "ray+"), fam, z.graph), fam);
    CHECK(j["status"] == "eigenset");
    CHECK(j["bounding_radius"] == 1);
    CHECK(j["operators"].size() == 2);
}

TEST_CASE("set expressions") {
    auto z = cayley("Z", 10);
    CHECK(ints(z.graph, expr(z, "{-1, 2}")) == std::vector<int>{-1, 2});
    CHECK(expr(z, "not ray+") == expr(z, "ray-") - testutil::z_set(z.graph, {0}));
    CHECK(expr(z, "empty").empty());
    CHECK(expr(z, "all").count() == z.graph.size());
    CHECK_THROWS_AS(expr(z, "{99}"), InputError);
    CHECK_THROWS_AS(expr(cayley("Z2", 4), "ray+"), InputError);
}
