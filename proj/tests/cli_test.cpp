#include <fstream>
#include <sstream>

#include <doctest.h>
#include <json.hpp>

#include "endslab/cli.hpp"
#include "endslab/scaled_groups.hpp"

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run(std::vector<std::string> args) {
    std::ostringstream out, err;
    int code = endslab::cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::string data(const std::string& name) { return std::string(ENDSLAB_DATA_DIR) + "/" + name; }

std::string temp_file(const std::string& name, const std::string& body) {
    std::string path = std::string(ENDSLAB_TEST_TMP) + "/" + name;
    std::ofstream(path) << body;
    return path;
}

bool contains(const std::string& s, const std::string& part) { return s.find(part) != std::string::npos; }

}  // namespace

TEST_CASE("end counts of the presets") {
    auto z = run({"ends", "count", "--preset", "Z", "--R", "40"});
    CHECK(z.code == 0);
    CHECK(z.out == "counts: 2 2 2 2 2; verdict: two\n");
    auto z2 = run({"ends", "count", "--preset", "Z2", "--R", "30"});
    CHECK(z2.code == 0);
    CHECK(contains(z2.out, "verdict: one"));
    auto f2 = run({"ends", "count", "--preset", "F2", "--R", "10"});
    CHECK(f2.out == "counts: 4 12 36; verdict: many_growing\n");
    auto explicit_radii = run({"--radii", "1..5", "ends", "count", "--preset", "Z2", "--R", "30"});
    CHECK(explicit_radii.out == "counts: 1 1 1 1 1; verdict: one\n");
}

TEST_CASE("end trees") {
    auto t = run({"ends", "tree", "--preset", "F2", "--R", "10", "--depth", "2"});
    CHECK(t.code == 0);
    CHECK(contains(t.out, "depth 1 (radius 1): 4 nodes"));
    CHECK(contains(t.out, "prefixes at depth 2: 12"));
    auto dot = run({"--format", "dot", "ends", "tree", "--preset", "Z", "--R", "12"});
    CHECK(dot.out.rfind("digraph", 0) == 0);
    auto j = run({"--format", "json", "ends", "tree", "--preset", "Z", "--R", "12"});
    CHECK(nlohmann::json::parse(j.out)["nodes"].size() == 7);
}

TEST_CASE("finite-algebra reports") {
    auto two = run({"ba", data("powerset_two_far.txt")});
    CHECK(two.code == 0);
    CHECK(contains(two.out, "2 ends: 2 internal ends"));
    CHECK(contains(two.out, "compact at infinity: yes"));
    auto trivial = run({"ba", data("trivial.txt")});
    CHECK(contains(trivial.out, "1 end:"));
    auto adapter = run({"ba", "--preset", "Z", "--R", "12", "--depth", "3"});
    CHECK(adapter.code == 0);
    CHECK(contains(adapter.out, "2 external ends added; isomorphism: verified"));
    auto j = nlohmann::json::parse(run({"--format", "json", "ba", data("powerset_two_far.txt")}).out);
    CHECK(j["ends"].size() == 2);
}

TEST_CASE("eigenset verdicts") {
    auto check = [](const std::string& preset, const std::string& R, const std::string& family,
                    const std::string& set) {
        auto r = run({"eigenset", "check", "--preset", preset, "--R", R, "--family", family, "--set", set});
        CHECK(r.code == 0);
        auto line = r.out.substr(r.out.find("verdict: ") + 9);
        return line.substr(0, line.find('\n'));
    };
    for (const char* family : {"translations", "stars", "components", "cones"}) {
        CAPTURE(family);
        CHECK(check("Z", "40", family, "ray+") == "eigenset");
        CHECK(check("Z", "40", family, "evens") == "not_eigenset");
    }
    CHECK(check("Z2", "30", "translations", "halfplane x>=0") == "not_eigenset");
    CHECK(check("F2", "10", "translations", "branch a") == "eigenset");
    CHECK(check("F2", "10", "cones", "branch a") == "eigenset");
}

TEST_CASE("group checks") {
    auto star = run({"group", "check", "--preset", "Z", "--R", "40", "--test", "star-identity", "--set", "ball 5",
                     "--B", "-1", "0", "1"});
    CHECK(star.code == 0);
    CHECK(contains(star.out, "exact"));
    auto act = run({"group", "check", "--preset", "Z", "--R", "20", "--test", "action", "--action",
                    data("z_even_left.txt")});
    CHECK(act.code == 0);
    CHECK(contains(act.out, "proper: yes; cobounded: yes"));
    auto ends = run({"group", "check", "--preset", "Z", "--R", "20", "--test", "end-agreement"});
    CHECK(ends.code == 0);
}

TEST_CASE("a map that is not the orbit map fails the cover comparison") {
    // h . x = x + h for |h| <= 1 and x + h +- 1 otherwise: (1 + 1) . 0 = 3 but 1 . (1 . 0) = 2.
    endslab::register_action("skip-two", [](const endslab::GroupOracle& o, const endslab::Element& h,
                                            const endslab::Element& x) {
        int n = h[0];
        int shift = n >= 2 ? n + 1 : n <= -2 ? n - 1 : n;
        return o.multiply(endslab::Element{shift}, x);
    });
    auto file = temp_file("skip_two.txt", "space Z\naction custom:skip-two\n");
    auto r = run({"group", "check", "--preset", "Z", "--R", "20", "--test", "covers", "--action", file});
    CHECK(r.code == 1);
    CHECK(contains(r.out, "orbit map no"));
}

TEST_CASE("usage errors exit with 2 and one line") {
    auto unknown = run({"ends", "count", "--preset", "Q", "--R", "5"});
    CHECK(unknown.code == 2);
    CHECK(unknown.err == "endslab: unknown preset 'Q'\n");
    CHECK(run({}).code == 2);
    CHECK(run({"ends", "count", "--preset", "Z"}).code == 2);
    CHECK(run({"ends", "count", "--preset", "Z", "--R", "5", "--radii", "3,2"}).code == 2);
    auto bad = run({"ba", temp_file("bad_space.txt", "universe 3\nscale {1,7}\n")});
    CHECK(bad.code == 2);
    CHECK(contains(bad.err, "line 2"));
    CHECK(run({"ba", "/nonexistent/space.txt"}).code == 2);
    CHECK(run({"fuzz", "--suite", "nonsense"}).code == 2);
}

TEST_CASE("fuzz command") {
    auto r = run({"fuzz", "--suite", "complement-equiv", "--instances", "20"});
    CHECK(r.code == 0);
    CHECK(r.out == "complement-equiv: 20/20 passed\n");
    auto j = nlohmann::json::parse(run({"--format", "json", "fuzz", "--suite", "star-identity", "--preset", "Z",
                                        "--instances", "5"})
                                       .out);
    CHECK(j["ok"] == true);
    CHECK(j["suites"][0]["passed"] == 5);
}

TEST_CASE("repeated commands print identical bytes") {
    std::vector<std::vector<std::string>> commands = {
        {"ends", "tree", "--preset", "F2", "--R", "8"},
        {"--format", "json", "ba", "--preset", "Z2", "--R", "10", "--depth", "3"},
        {"eigenset", "check", "--preset", "Z2", "--R", "16", "--family", "cones", "--set", "halfplane y>=1"},
        {"--seed", "9", "fuzz", "--suite", "refinement", "--instances", "10"},
    };
    for (const auto& c : commands) {
        auto a = run(c);
        auto b = run(c);
        CHECK(a.code == b.code);
        CHECK(a.out == b.out);
    }
}
