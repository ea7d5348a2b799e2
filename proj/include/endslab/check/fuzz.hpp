#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <boost/random/mersenne_twister.hpp>
#include <json.hpp>

#include "endslab/graph.hpp"
#include "endslab/scaled_ba.hpp"

namespace endslab::fuzz {

// Every random choice in the suites goes through one of these.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}
    int uniform(int lo, int hi);  // inclusive
    bool chance(double p);
    std::uint64_t next() { return gen_(); }

private:
    boost::random::mt19937_64 gen_;
};

// Stable across platforms, unlike std::hash.
std::uint64_t mix_seed(std::uint64_t seed, const std::string& tag, std::uint64_t index = 0);

// At most max_items items (0-2 of them tails), up to three scale generators
// over the points and up to max_generators algebra generators; sometimes the
// powerset algebra.
ScaledSpaceFile random_scaled_space(Rng& rng, int max_items = 8, int max_generators = 3);
// Scale closed under subsets: the singletons of a random set of points.
ScaledSpaceFile random_bornology_space(Rng& rng, int max_items = 8, int max_generators = 3);
// Random connected piece of the Z^2 lattice around the origin: lattice
// edges within the L1 ball of the radius are kept independently, then the
// basepoint component is truncated at the radius in its own metric.
Graph random_lattice_subgraph(Rng& rng, int radius, double keep = 0.85);

struct Options {
    std::uint64_t seed = 0;
    int instances = 200;
    std::vector<std::string> presets;  // empty: the suite's defaults
    std::optional<int> radius;         // overrides the per-preset horizon
    int slack = 2;
};

struct SuiteReport {
    std::string suite;
    std::string preset;  // empty for finite-algebra suites
    int passed = 0;
    int failed = 0;
    int skipped = 0;
    std::string failure;     // first failure
    std::string reproducer;  // minimized input of the first failure
};

const std::vector<std::string>& suite_names();
bool suite_uses_presets(const std::string& suite);
std::vector<std::string> default_presets(const std::string& suite);
int default_fuzz_radius(const std::string& preset);

// One report per preset for graph suites, a single report otherwise.
// Throws InputError for an unknown suite.
std::vector<SuiteReport> run_suite(const std::string& suite, const Options& options);

std::string report_text(const std::vector<SuiteReport>& reports);
nlohmann::ordered_json report_json(const std::vector<SuiteReport>& reports, const Options& options);

}  // namespace endslab::fuzz
