// One PASS/FAIL line per acceptance criterion; exit 1 when any fails.
#include <chrono>
#include <cmath>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "endslab/adapter.hpp"
#include "endslab/check/fuzz.hpp"
#include "endslab/check/oracles.hpp"
#include "endslab/cli.hpp"
#include "endslab/ends.hpp"
#include "endslab/group.hpp"
#include "endslab/scaled_ba.hpp"

using namespace endslab;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct CliRun {
    int code;
    std::string out;
};

CliRun cli(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    int code = cli::run(args, out, err);
    return {code, out.str() + err.str()};
}

std::string line_after(const std::string& text, const std::string& key) {
    auto pos = text.find(key);
    if (pos == std::string::npos) return "";
    auto rest = text.substr(pos + key.size());
    return rest.substr(0, rest.find('\n'));
}

std::string join(const std::vector<int>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? " " : "") + std::to_string(v[i]);
    return s;
}

struct Outcome {
    bool pass = true;
    std::string detail;
    void fail(const std::string& why) {
        if (pass) detail = why;
        pass = false;
    }
};

// Runs a fuzz suite and folds its reports into the outcome.
int run_fuzz(Outcome& o, const std::string& suite, int instances, std::uint64_t seed = 0) {
    fuzz::Options opts;
    opts.seed = seed;
    opts.instances = instances;
    int passed = 0;
    for (const auto& r : fuzz::run_suite(suite, opts)) {
        passed += r.passed;
        std::string where = r.preset.empty() ? suite : suite + " [" + r.preset + "]";
        if (r.failed) o.fail(where + ": " + r.failure);
        if (r.passed + r.failed + r.skipped != instances) o.fail(where + ": wrong instance count");
    }
    return passed;
}

Outcome end_counts() {
    Outcome o;
    struct Case {
        std::string preset;
        int R;
        std::string radii;
        std::string verdict;
        std::vector<int> counts;
    };
    const std::vector<Case> cases{{"Z", 40, "1..5", "two", {2, 2, 2, 2, 2}},
                                  {"Z2", 30, "1..5", "one", {1, 1, 1, 1, 1}},
                                  {"F2", 10, "1..3", "many_growing", {4, 12, 36}}};
    double slowest = 0;
    for (const auto& c : cases) {
        auto t0 = Clock::now();
        auto run = cli({"--radii", c.radii, "ends", "count", "--preset", c.preset, "--R", std::to_string(c.R)});
        double dt = seconds_since(t0);
        slowest = std::max(slowest, dt);
        auto expected = "counts: " + join(c.counts) + "; verdict: " + c.verdict + "\n";
        if (run.code != 0 || run.out != expected) o.fail(c.preset + " printed '" + run.out + "'");
        if (dt >= 5.0) o.fail(fmt::format("{} took {:.2f} s", c.preset, dt));

        auto g = build_truncated_cayley(parse_preset(c.preset), Horizon{c.R, 1});
        std::vector<int> radii;
        for (int r = 1; r <= static_cast<int>(c.counts.size()); ++r) radii.push_back(r);
        if (oracle::component_counts(g.graph, radii) != c.counts) o.fail(c.preset + ": BFS oracle disagrees");
        if (c.preset == "F2") {
            for (int n = 1; n <= 3; ++n) {
                if (c.counts[n - 1] != 4 * static_cast<int>(std::pow(3, n - 1))) o.fail("F2 closed form disagrees");
            }
        }
    }
    if (o.pass) o.detail = fmt::format("Z two, Z2 one, F2 4 12 36; oracles agree; slowest {:.2f} s", slowest);
    return o;
}

Outcome refinement() {
    Outcome o;
    int passed = run_fuzz(o, "refinement", 200, 0);
    if (o.pass) o.detail = fmt::format("{}/200 lattice subgraphs at R=15, seed 0, zero violations", passed);
    return o;
}

Outcome finite_algebras() {
    Outcome o;
    auto t0 = Clock::now();
    int passed = 0;
    for (const char* s : {"complement-equiv", "compactness-ends", "bounded-at-infinity", "ends-oracle"}) {
        passed += run_fuzz(o, s, 200);
    }
    double dt = seconds_since(t0);
    if (dt >= 60.0) o.fail(fmt::format("took {:.1f} s", dt));
    if (o.pass) o.detail = fmt::format("{}/800 instances over 4 suites in {:.2f} s", passed, dt);
    return o;
}

Outcome compactification() {
    Outcome o;
    int passed = run_fuzz(o, "compactify", 200);
    for (const char* preset : {"Z", "Z2", "F2"}) {
        auto g = build_truncated_cayley(parse_preset(preset), Horizon{10, 1});
        auto dec = decompose(g.graph, g.graph.horizon(), {1, 2, 3});
        auto m = graph_algebra_adapter(dec, g.graph, 3);
        auto c = compactify(m.algebra);
        if (!c.verified || !c.failures.empty()) {
            o.fail(std::string(preset) + " adapter: " + (c.failures.empty() ? "unverified" : c.failures.front()));
        }
        if (!c.checks.no_external_ends || !c.checks.compact_at_infinity) o.fail(std::string(preset) + " adapter checks");
    }
    if (o.pass) o.detail = fmt::format("{} Hausdorff fuzz instances and the Z/Z2/F2 depth-3 adapters verified", passed);
    return o;
}

Outcome eigenset_truths() {
    Outcome o;
    struct Case {
        std::string preset, R, family, set, verdict;
    };
    std::vector<Case> cases;
    for (const char* f : {"translations", "stars", "components", "cones"}) {
        cases.push_back({"Z", "40", f, "ray+", "eigenset"});
        cases.push_back({"Z", "40", f, "evens", "not_eigenset"});
    }
    cases.push_back({"Z2", "30", "translations", "halfplane x>=0", "not_eigenset"});
    cases.push_back({"F2", "10", "translations", "branch a", "eigenset"});
    cases.push_back({"F2", "10", "cones", "branch a", "eigenset"});
    for (const auto& c : cases) {
        auto run = cli({"--slack", "2", "eigenset", "check", "--preset", c.preset, "--R", c.R, "--family", c.family,
                        "--set", c.set});
        auto got = line_after(run.out, "verdict: ");
        if (run.code != 0 || got != c.verdict) {
            o.fail(fmt::format("{} {} under {}: {}", c.preset, c.set, c.family, got.empty() ? run.out : got));
        }
    }
    if (o.pass) o.detail = fmt::format("{} verdicts as expected", cases.size());
    return o;
}

Outcome cone_families() {
    Outcome o;
    std::string counts;
    for (const char* s : {"cone-sandwich", "family-agreement", "component-roundtrip"}) {
        fuzz::Options opts;
        opts.instances = 100;
        int passed = 0, skipped = 0;
        for (const auto& r : fuzz::run_suite(s, opts)) {
            if (r.failed) o.fail(std::string(s) + " [" + r.preset + "]: " + r.failure);
            passed += r.passed;
            skipped += r.skipped;
        }
        counts += fmt::format("{}{} {}/300", counts.empty() ? "" : ", ", s, passed);
        if (skipped) counts += fmt::format(" ({} skipped)", skipped);
    }
    if (o.pass) o.detail = counts;
    return o;
}

Outcome star_identity() {
    Outcome o;
    int passed = run_fuzz(o, "star-identity", 100);
    if (o.pass) o.detail = fmt::format("{}/300 exact on Z, Z2, F2", passed);
    return o;
}

Outcome closure() {
    Outcome o;
    int passed = run_fuzz(o, "closure", 400);
    if (o.pass) o.detail = fmt::format("{}/1200 pairs, 100 per family on each of Z, Z2, F2; no not_eigenset", passed);
    return o;
}

Outcome determinism() {
    Outcome o;
    const std::vector<std::vector<std::string>> commands{
        {"ends", "count", "--preset", "F2", "--R", "10"},
        {"--format", "json", "ends", "tree", "--preset", "Z2", "--R", "10"},
        {"ba", "--preset", "Z", "--R", "12", "--depth", "3"},
        {"--format", "json", "eigenset", "check", "--preset", "F2", "--R", "10", "--family", "cones", "--set", "branch a"},
        {"group", "check", "--preset", "Z2", "--R", "16", "--test", "star-identity", "--samples", "20"},
        {"--seed", "7", "--format", "json", "fuzz", "--suite", "complement-equiv", "--instances", "50"},
        {"--seed", "7", "fuzz", "--suite", "family-agreement", "--preset", "Z2", "--instances", "10"},
    };
    for (const auto& c : commands) {
        auto a = cli(c);
        auto b = cli(c);
        if (a.code != b.code || a.out != b.out) o.fail("output differs for: " + c[c.size() > 4 ? 2 : 0]);
    }
    if (o.pass) o.detail = fmt::format("{} commands repeated byte-identically", commands.size());
    return o;
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"end counts of presets", end_counts},
        {"refinement uniqueness", refinement},
        {"finite-algebra fuzz", finite_algebras},
        {"compactification verification", compactification},
        {"eigenset ground truths", eigenset_truths},
        {"cone sandwich and family agreement", cone_families},
        {"star identity exactness", star_identity},
        {"eigenset algebra closure", closure},
        {"determinism", determinism},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        auto t0 = Clock::now();
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o.fail(std::string("exception: ") + e.what());
        }
        failed += !o.pass;
        std::cout << fmt::format("{} {}. {}: {} [{:.1f} s]\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first,
                                 o.detail, seconds_since(t0))
                  << std::flush;
    }
    return failed ? 1 : 0;
}
