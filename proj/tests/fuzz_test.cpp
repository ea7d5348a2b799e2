#include <doctest.h>

#include "endslab/check/fuzz.hpp"
#include "endslab/error.hpp"

using namespace endslab;

TEST_CASE("every suite passes a short run") {
    fuzz::Options opts;
    opts.seed = 7;
    opts.instances = 8;
    for (const auto& suite : fuzz::suite_names()) {
        CAPTURE(suite);
        auto reports = fuzz::run_suite(suite, opts);
        REQUIRE_FALSE(reports.empty());
        for (const auto& r : reports) {
            CAPTURE(r.preset);
            CHECK(r.failed == 0);
            CHECK(r.passed + r.skipped == 8);
            CHECK(r.failure.empty());
        }
    }
}

TEST_CASE("runs are reproducible from the seed") {
    fuzz::Options opts;
    opts.seed = 3;
    opts.instances = 10;
    for (const char* suite : {"complement-equiv", "refinement", "star-identity"}) {
        auto a = fuzz::report_json(fuzz::run_suite(suite, opts), opts).dump();
        auto b = fuzz::report_json(fuzz::run_suite(suite, opts), opts).dump();
        CHECK(a == b);
    }
}

TEST_CASE("random instances are deterministic and well formed") {
    fuzz::Rng a(fuzz::mix_seed(5, "x", 2));
    fuzz::Rng b(fuzz::mix_seed(5, "x", 2));
    auto fa = fuzz::random_scaled_space(a);
    auto fb = fuzz::random_scaled_space(b);
    CHECK(format_scaled_space(fa) == format_scaled_space(fb));
    CHECK(fuzz::mix_seed(5, "x", 2) != fuzz::mix_seed(5, "x", 3));
    CHECK(fuzz::mix_seed(5, "x", 2) != fuzz::mix_seed(5, "y", 2));

    for (int i = 0; i < 30; ++i) {
        fuzz::Rng rng(fuzz::mix_seed(1, "born", i));
        auto f = fuzz::random_bornology_space(rng);
        CHECK(f.space.size() <= 8);
        // Subsets of bounded sets are bounded.
        auto hull = f.space.none();
        for (const auto& s : f.space.scale_generators()) hull |= s;
        hull.for_each([&](int x) { CHECK(f.space.is_bounded(ItemSet::of(f.space.size(), {x}))); });
    }
}

TEST_CASE("unknown suites are rejected") {
    CHECK_THROWS_AS(fuzz::run_suite("nonsense", fuzz::Options{}), InputError);
    CHECK(fuzz::suite_uses_presets("star-identity"));
    CHECK_FALSE(fuzz::suite_uses_presets("complement-equiv"));
}
