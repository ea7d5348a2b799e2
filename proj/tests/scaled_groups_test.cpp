#include <sstream>

#include <doctest.h>

#include "endslab/error.hpp"
#include "endslab/scaled_groups.hpp"
#include "endslab/set_expr.hpp"
#include "helpers.hpp"

using namespace endslab;
using testutil::ints;
using testutil::range;

namespace {

ScaledGroup group(const std::string& preset, int radius) {
    return make_scaled_group(parse_preset(preset), Horizon{radius, 1});
}

VertexSet expr(const ScaledGroup& g, const std::string& e) {
    return parse_set_expr(e, SetContext{&g.graph(), &g.cayley, nullptr});
}

std::vector<Element> elements(const ScaledGroup& g, const std::vector<std::string>& names) {
    std::vector<Element> out;
    for (const auto& n : names) out.push_back(*g.oracle().parse(n));
    return out;
}

GroupAction action(const std::string& preset, int radius, const std::string& kind,
                   std::optional<std::vector<std::string>> subgroup) {
    return make_action(parse_preset(preset), Horizon{radius, 1}, kind, std::move(subgroup));
}

}  // namespace

TEST_CASE("word-ball scale is closed under products") {
    for (const char* p : {"Z", "Z2", "F2", "Dinf"}) {
        auto r = check_scale(group(p, 6));
        CHECK(r.closed);
        CHECK(r.covers);
        CHECK(r.pairs_checked > 0);
    }
}

TEST_CASE("multiplication and inversion of sets") {
    auto z = group("Z", 10);
    auto a = testutil::z_set(z.graph(), {1, 2});
    CHECK(ints(z.graph(), right_multiply(z, a, elements(z, {"3"}))) == std::vector<int>{4, 5});
    CHECK(ints(z.graph(), left_multiply(z, elements(z, {"-1", "1"}), a)) == std::vector<int>{0, 1, 2, 3});
    CHECK(ints(z.graph(), inverse_set(z, a)) == std::vector<int>{-2, -1});
    auto f2 = group("F2", 4);
    auto ab = testutil::labels(f2.graph(), {"ab"});
    CHECK(right_multiply(f2, ab, elements(f2, {"a"})) == testutil::labels(f2.graph(), {"aba"}));
    CHECK(left_multiply(f2, elements(f2, {"a"}), ab) == testutil::labels(f2.graph(), {"aab"}));
    CHECK(inverse_set(f2, ab) == testutil::labels(f2.graph(), {"BA"}));
}

TEST_CASE("star of a translate cover on the line") {
    auto z = group("Z", 40);
    auto r = star_identity_check(z, testutil::z_set(z.graph(), range(0, 20)), elements(z, {"-1", "0", "1"}));
    CHECK(r.equal);
    CHECK(r.residue.empty());
    CHECK(ints(z.graph(), r.lhs) == std::vector<int>{-2, -1, 21, 22});
    CHECK(r.lhs == r.rhs);
    CHECK(r.safe_radius == 38);
}

TEST_CASE("star identity on the free group") {
    auto f2 = group("F2", 8);
    auto b = f2.ball_elements(1);
    auto r = star_identity_check(f2, expr(f2, "branch a"), b);
    CHECK(r.equal);
    CHECK_FALSE(r.lhs.empty());
    auto r2 = star_identity_check(f2, expr(f2, "ball 2"), elements(f2, {"e", "a", "b"}));
    CHECK(r2.equal);
    CHECK_THROWS_AS(star_identity_check(group("Z", 4), expr(group("Z", 4), "ray+"), elements(group("Z", 4), {"3", "-3"})),
                    HorizonError);
}

TEST_CASE("left eigensets correspond to right eigensets of inverses") {
    auto z = group("Z", 40);
    for (const char* e : {"ray+", "ray-", "evens", "ball 4"}) CHECK(inversion_duality_check(z, expr(z, e)).ok);
    auto f2 = group("F2", 8);
    auto d = inversion_duality_check(f2, expr(f2, "branch a"));
    CHECK(d.ok);
    CHECK(d.left == EigenStatus::not_eigenset);
    CHECK(d.right_inverse == EigenStatus::not_eigenset);
    CHECK(inversion_duality_check(f2, expr(f2, "ball 2")).left == EigenStatus::eigenset);
}

TEST_CASE("left and right families agree on an abelian group") {
    auto z = group("Z", 40);
    auto fams = four_families(z);
    for (const char* e : {"ray+", "evens", "ball 3", "{5, 9}"}) {
        auto a = expr(z, e);
        CHECK(is_eigenset(a, fams.lm_s, z.graph()).status == is_eigenset(a, fams.rm_s, z.graph()).status);
        CHECK(is_eigenset(a, fams.lm_g, z.graph()).status == is_eigenset(a, fams.rm_g, z.graph()).status);
    }
    auto f2 = group("F2", 8);
    auto ff = four_families(f2);
    auto branch = expr(f2, "branch a");
    CHECK(is_eigenset(branch, ff.rm_g, f2.graph()).status == EigenStatus::eigenset);
    CHECK(is_eigenset(branch, ff.lm_g, f2.graph()).status == EigenStatus::not_eigenset);
}

TEST_CASE("actions on the line") {
    auto whole = action_checks(action("Z", 20, "left-mult", std::nullopt));
    CHECK(whole.proper == Tri::yes);
    CHECK(whole.cobounded == Tri::yes);
    CHECK(whole.cobounding_radius == 0);

    auto evens = action_checks(action("Z", 20, "left-mult", std::vector<std::string>{"2"}));
    CHECK(evens.proper == Tri::yes);
    CHECK(evens.cobounded == Tri::yes);
    CHECK(evens.cobounding_radius == 1);

    auto trivial = action_checks(action("Z", 20, "left-mult", std::vector<std::string>{}));
    CHECK(trivial.cobounded == Tri::no);
    CHECK_THROWS_AS(induced_cover_comparison(action("Z", 20, "left-mult", std::vector<std::string>{}),
                                             testutil::z_set(group("Z", 20).graph(), {0})),
                    InputError);

    auto translation = action_checks(action("Z", 20, "translation", std::nullopt));
    CHECK(translation.proper == Tri::yes);
    CHECK(translation.cobounded == Tri::yes);
}

TEST_CASE("induced covers of a proper cobounded action") {
    auto act = action("Z", 20, "left-mult", std::vector<std::string>{"2"});
    auto b = testutil::z_set(act.space.graph(), {0, 1});
    auto c = induced_cover_comparison(act, b);
    CHECK(c.refinement);
    CHECK(c.orbit_map);
    CHECK(c.translates_checked > 0);
    CHECK(c.stabilizer_size == 1);
}

TEST_CASE("subgroup scales") {
    CHECK(subgroup_scale_check(action("Z", 16, "left-mult", std::vector<std::string>{"2"})).closed);
    CHECK(subgroup_scale_check(action("F2", 7, "left-mult", std::vector<std::string>{"a"})).closed);
}

TEST_CASE("action files") {
    std::istringstream in("space Z\nsubgroup 2\naction left-mult\n");
    auto act = parse_action(in, Horizon{12, 1});
    CHECK(act.subgroup_generators.size() == 2);
    CHECK_FALSE(act.whole_group);
    std::istringstream bad("space Z\naction sideways\n");
    CHECK_THROWS_AS(parse_action(bad, Horizon{12, 1}), InputError);
    std::istringstream missing("subgroup 2\n");
    CHECK_THROWS_AS(parse_action(missing, Horizon{12, 1}), InputError);
}

TEST_CASE("bounded subsets generate bounded subgroups only when finite") {
    auto z = group("Z", 20);
    CHECK(locally_bounded_check(z, elements(z, {"1"})) == Tri::no);
    CHECK(locally_bounded_check(z, elements(z, {"0"})) == Tri::yes);
    auto d = group("Dinf", 20);
    CHECK(locally_bounded_check(d, elements(d, {"s"})) == Tri::yes);
    CHECK(locally_bounded_check(d, elements(d, {"s", "t"})) == Tri::no);
}

TEST_CASE("bounded geometry") {
    CHECK(bounded_geometry_check(group("Z", 20)).verdict == Tri::yes);
    CHECK(bounded_geometry_check(group("Z2", 10)).verdict == Tri::yes);
}

TEST_CASE("ends of the group algebra match the end tree") {
    auto z = end_space_agreement(group("Z", 20), range(1, 5), 3);
    CHECK(z.agree);
    CHECK(z.engine_count == 2);
    CHECK(z.atoms_are_eigensets);
    auto z2 = end_space_agreement(group("Z2", 12), range(1, 5), 3);
    CHECK(z2.agree);
    CHECK(z2.algebra_ends == 1);
    auto f2 = end_space_agreement(group("F2", 8), range(1, 4), 2);
    CHECK(f2.agree);
    CHECK(f2.algebra_ends == 12);
}

TEST_CASE("element and scale-set translations share eigensets") {
    auto act = action("Z", 30, "left-mult", std::nullopt);
    for (const char* e : {"ray+", "evens", "ball 2"}) {
        auto r = same_eigensets_check(act, parse_set_expr(e, SetContext{&act.space.graph(), &act.space.cayley, nullptr}));
        CHECK(r.ok);
    }
}
