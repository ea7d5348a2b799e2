#include <doctest.h>

#include "endslab/check/oracles.hpp"
#include "endslab/error.hpp"
#include "helpers.hpp"

using namespace endslab;

namespace {

// Z/2 x Z with a broken normal form: inverse(x) ignores the torsion part.
class BrokenOracle : public GroupOracle {
public:
    BrokenOracle() : gens_{{1, 0}, {0, 1}, {0, -1}} {}
    std::string name() const override { return "broken"; }
    Element identity() const override { return {0, 0}; }
    Element multiply(const Element& a, const Element& b) const override { return {(a[0] + b[0]) % 2, a[1] + b[1]}; }
    Element inverse(const Element& a) const override { return {1, -a[1]}; }
    const std::vector<Element>& generators() const override { return gens_; }
    int word_length(const Element& a) const override { return a[0] + std::abs(a[1]); }
    std::string format(const Element& a) const override { return std::to_string(a[0]) + ":" + std::to_string(a[1]); }
    std::optional<Element> parse(std::string_view) const override { return std::nullopt; }
    double ball_size(int r) const override { return 4.0 * r + 2; }
    int default_radius_cap() const override { return 100; }

private:
    std::vector<Element> gens_;
};

}  // namespace

TEST_CASE("preset names") {
    CHECK(parse_preset("Z").oracle->name() == "Z");
    CHECK(parse_preset("Z2").rank == 2);
    CHECK(parse_preset("Z^3").rank == 3);
    CHECK(parse_preset("F2").kind == PresetKind::free_group);
    CHECK(parse_preset("Dinf").kind == PresetKind::explicit_presentation);
    CHECK_THROWS_AS(parse_preset("Q8"), InputError);
    CHECK_THROWS_AS(parse_preset("custom:nope"), InputError);
}

TEST_CASE("free group normal forms") {
    auto f = make_free_group(2);
    auto w = *f->parse("abAB");
    CHECK(f->format(w) == "abAB");
    CHECK(f->word_length(w) == 4);
    CHECK(f->format(f->multiply(w, f->inverse(w))) == "e");
    CHECK(f->format(f->multiply(*f->parse("ab"), *f->parse("Ba"))) == "aa");
    CHECK(f->generators().size() == 4);
    CHECK(f->ball_size(3) == doctest::Approx(oracle::free_ball_size_formula(2, 3)));
    CHECK_FALSE(f->parse("ax").has_value());
    CHECK(check_oracle(*f).ok);
}

TEST_CASE("free abelian and dihedral oracles") {
    auto z2 = make_free_abelian(2);
    auto x = *z2->parse("(2,-3)");
    CHECK(z2->word_length(x) == 5);
    CHECK(z2->format(z2->inverse(x)) == "(-2,3)");
    CHECK(z2->ball_size(4) == doctest::Approx(oracle::lattice_ball_size(2, 4)));
    CHECK(check_oracle(*z2).ok);

    auto d = make_infinite_dihedral();
    CHECK(check_oracle(*d).ok);
    auto st = d->multiply(d->generators()[0], d->generators()[1]);
    CHECK(d->word_length(st) == 2);
    CHECK(d->word_length(d->multiply(d->generators()[0], d->generators()[0])) == 0);
    // Two elements of each length beyond the identity: an infinite line.
    CHECK(build_truncated_cayley(parse_preset("Dinf"), Horizon{5, 1}).graph.size() == 11);
}

TEST_CASE("a broken oracle is rejected with the failed check") {
    BrokenOracle b;
    auto rep = check_oracle(b);
    CHECK_FALSE(rep.ok);
    CHECK_FALSE(rep.failure.empty());
    register_group_oracle("broken", [] { return std::make_shared<BrokenOracle>(); });
    CHECK_THROWS_AS(parse_preset("custom:broken"), InputError);
}

TEST_CASE("registered oracles are reachable by name") {
    register_group_oracle("line", [] { return make_free_abelian(1); });
    auto p = parse_preset("custom:line");
    auto c = build_truncated_cayley(p, Horizon{4, 1});
    CHECK(c.graph.size() == 9);
}

TEST_CASE("Cayley graph tables") {
    auto c = testutil::cayley("F2", 3);
    const auto& gens = c.oracle().generators();
    for (int v = 0; v < c.graph.size(); ++v) {
        for (std::size_t i = 0; i < gens.size(); ++i) {
            int u = c.right_mult[i][v];
            Element prod = c.oracle().multiply(c.elements[v], gens[i]);
            if (c.oracle().word_length(prod) > 3) {
                CHECK(u == -1);
            } else {
                CHECK(c.elements[u] == prod);
                CHECK(c.vertex_of(prod) == u);
            }
        }
    }
    CHECK(c.vertex_of(*c.oracle().parse("aaaa")) == -1);
}

TEST_CASE("the vertex budget refuses oversized horizons with an estimate") {
    CHECK_THROWS_AS(testutil::cayley("F3", 40), HorizonError);
    try {
        testutil::cayley("F2", 60);
        FAIL("expected a HorizonError");
    } catch (const HorizonError& e) {
        CHECK(std::string(e.what()).find("vertices") != std::string::npos);
    }
}
