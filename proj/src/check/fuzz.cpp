#include "endslab/check/fuzz.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <sstream>

#include <boost/random/uniform_int_distribution.hpp>
#include <boost/random/uniform_real_distribution.hpp>

#include "endslab/check/oracles.hpp"
#include "endslab/eigensets.hpp"
#include "endslab/ends.hpp"
#include "endslab/error.hpp"
#include "endslab/scaled_groups.hpp"
#include "endslab/set_expr.hpp"

namespace endslab::fuzz {

int Rng::uniform(int lo, int hi) {
    boost::random::uniform_int_distribution<int> d(lo, hi);
    return d(gen_);
}

bool Rng::chance(double p) {
    boost::random::uniform_real_distribution<double> d(0.0, 1.0);
    return d(gen_) < p;
}

std::uint64_t mix_seed(std::uint64_t seed, const std::string& tag, std::uint64_t index) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : tag) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    std::uint64_t z = seed ^ h ^ (index * 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

namespace {

ItemSet random_subset(Rng& rng, int universe, int upto, double p) {
    ItemSet s(universe);
    for (int i = 0; i < upto; ++i) {
        if (rng.chance(p)) s.insert(i);
    }
    return s;
}

}  // namespace

ScaledSpaceFile random_scaled_space(Rng& rng, int max_items, int max_generators) {
    const int items = rng.uniform(1, max_items);
    const int tails = rng.uniform(0, std::min(2, items - 1));
    const int points = items - tails;
    std::vector<ItemSet> scale;
    for (int k = rng.uniform(0, 3); k > 0; --k) scale.push_back(random_subset(rng, items, points, 0.4));
    ScaledSpaceFile f;
    f.space = ScaledSpace(points, tails, std::move(scale));
    if (rng.chance(0.15)) {
        f.powerset = true;
    } else {
        for (int k = rng.uniform(0, max_generators); k > 0; --k) f.generators.push_back(random_subset(rng, items, items, 0.5));
    }
    return f;
}

ScaledSpaceFile random_bornology_space(Rng& rng, int max_items, int max_generators) {
    const int items = rng.uniform(1, max_items);
    const int tails = rng.uniform(0, std::min(2, items - 1));
    const int points = items - tails;
    std::vector<ItemSet> scale;
    for (int i = 0; i < points; ++i) {
        if (rng.chance(0.5)) scale.push_back(ItemSet::of(items, {i}));
    }
    ScaledSpaceFile f;
    f.space = ScaledSpace(points, tails, std::move(scale));
    for (int k = rng.uniform(0, max_generators); k > 0; --k) f.generators.push_back(random_subset(rng, items, items, 0.5));
    return f;
}

Graph random_lattice_subgraph(Rng& rng, int radius, double keep) {
    std::map<std::pair<int, int>, int> id;
    std::vector<std::string> labels;
    for (int x = -radius; x <= radius; ++x) {
        for (int y = -radius; y <= radius; ++y) {
            if (std::abs(x) + std::abs(y) > radius) continue;
            id[{x, y}] = static_cast<int>(labels.size());
            labels.push_back("(" + std::to_string(x) + "," + std::to_string(y) + ")");
        }
    }
    std::vector<Graph::Edge> edges;
    for (const auto& [p, v] : id) {
        for (auto q : {std::pair{p.first + 1, p.second}, std::pair{p.first, p.second + 1}}) {
            auto it = id.find(q);
            if (it != id.end() && rng.chance(keep)) edges.push_back({v, it->second});
        }
    }
    const int n = static_cast<int>(labels.size());
    return Graph::build(n, edges, id.at({0, 0}), std::move(labels), Horizon{radius, 1});
}

namespace {

enum class Outcome { pass, fail, skip };

struct Result {
    Outcome outcome = Outcome::pass;
    std::string message;
};

Result pass() { return {}; }
Result skip() { return {Outcome::skip, {}}; }
Result fail(std::string m) { return {Outcome::fail, std::move(m)}; }

// ---------------------------------------------------------------------------
// Finite scaled Boolean algebras

using AlgebraGen = std::function<ScaledSpaceFile(Rng&)>;
using AlgebraCheck = std::function<Result(const ScaledSpaceFile&, Rng&)>;

std::vector<ItemSet> algebra_generators(const ScaledSpaceFile& f) {
    if (!f.powerset) return f.generators;
    std::vector<ItemSet> out;
    for (int i = 0; i < f.space.size(); ++i) out.push_back(ItemSet::of(f.space.size(), {i}));
    return out;
}

ItemSet drop_bit(const ItemSet& s, int item) {
    ItemSet out(s.universe() - 1);
    s.for_each([&](int i) {
        if (i != item) out.insert(i < item ? i : i - 1);
    });
    return out;
}

std::optional<ScaledSpaceFile> drop_item(const ScaledSpaceFile& f, int item) {
    const ScaledSpace& sp = f.space;
    if (sp.size() <= 1) return std::nullopt;
    int points = sp.point_count(), tails = sp.tail_count();
    if (item < points) {
        if (points == 1) return std::nullopt;
        --points;
    } else {
        --tails;
    }
    std::vector<ItemSet> scale;
    for (const auto& s : sp.scale_generators()) scale.push_back(drop_bit(s, item));
    ScaledSpaceFile g;
    g.space = ScaledSpace(points, tails, std::move(scale));
    g.powerset = f.powerset;
    for (const auto& s : f.generators) g.generators.push_back(drop_bit(s, item));
    return g;
}

std::vector<ScaledSpaceFile> shrink_candidates(const ScaledSpaceFile& f) {
    std::vector<ScaledSpaceFile> out;
    for (std::size_t i = 0; i < f.generators.size(); ++i) {
        ScaledSpaceFile g = f;
        g.generators.erase(g.generators.begin() + static_cast<long>(i));
        out.push_back(std::move(g));
    }
    const auto& scale = f.space.scale_generators();
    for (std::size_t i = 0; i < scale.size(); ++i) {
        std::vector<ItemSet> rest = scale;
        rest.erase(rest.begin() + static_cast<long>(i));
        ScaledSpaceFile g = f;
        g.space = ScaledSpace(f.space.point_count(), f.space.tail_count(), std::move(rest));
        out.push_back(std::move(g));
    }
    for (int i = f.space.size() - 1; i >= 0; --i) {
        if (auto g = drop_item(f, i)) out.push_back(std::move(*g));
    }
    return out;
}

ScaledSpaceFile shrink_algebra(ScaledSpaceFile f, const std::function<bool(const ScaledSpaceFile&)>& fails) {
    bool progress = true;
    while (progress) {
        progress = false;
        for (auto& g : shrink_candidates(f)) {
            if (fails(g)) {
                f = std::move(g);
                progress = true;
                break;
            }
        }
    }
    return f;
}

Result guarded(const std::function<Result()>& body) {
    try {
        return body();
    } catch (const std::exception& e) {
        return fail(std::string("exception: ") + e.what());
    }
}

SuiteReport run_algebra_suite(const std::string& name, const Options& opt, const AlgebraGen& gen,
                              const AlgebraCheck& check) {
    SuiteReport rep;
    rep.suite = name;
    for (int i = 0; i < opt.instances; ++i) {
        Rng grng(mix_seed(opt.seed, name, static_cast<std::uint64_t>(i)));
        ScaledSpaceFile file = gen(grng);
        const std::uint64_t cseed = mix_seed(opt.seed, name + "/check", static_cast<std::uint64_t>(i));
        auto run = [&](const ScaledSpaceFile& f) {
            Rng crng(cseed);
            return guarded([&] { return check(f, crng); });
        };
        Result r = run(file);
        if (r.outcome == Outcome::pass) ++rep.passed;
        if (r.outcome == Outcome::skip) ++rep.skipped;
        if (r.outcome != Outcome::fail) continue;
        ++rep.failed;
        if (rep.failure.empty()) {
            ScaledSpaceFile small =
                shrink_algebra(file, [&](const ScaledSpaceFile& f) { return run(f).outcome == Outcome::fail; });
            rep.failure = "instance " + std::to_string(i) + ": " + run(small).message;
            rep.reproducer = format_scaled_space(small);
        }
    }
    return rep;
}

std::string fmt(const ScaledSpace& sp, const ItemSet& s) { return sp.format(s); }

Result check_complement_equiv(const ScaledSpaceFile& f, Rng& rng) {
    const ScaledSpace& sp = f.space;
    const int n = sp.size();
    const auto scale = oracle::scale_closure(sp);
    for (int t = 0; t < 20; ++t) {
        ItemSet c = random_subset(rng, n, n, 0.5);
        ItemSet d = rng.chance(0.5) ? c ^ (scale[rng.uniform(0, static_cast<int>(scale.size()) - 1)] &
                                          random_subset(rng, n, n, 0.7))
                                    : random_subset(rng, n, n, 0.5);
        ItemSet e = rng.chance(0.5) ? d ^ (scale[rng.uniform(0, static_cast<int>(scale.size()) - 1)])
                                    : random_subset(rng, n, n, 0.5);
        const std::string pair = "C = " + fmt(sp, c) + ", D = " + fmt(sp, d);
        bool m = mod_equiv(c, d, sp);
        if (m != oracle::mod_equiv(c, d, sp)) return fail("mod_equiv disagrees with the exhaustive scale search for " + pair);
        if (complement_equiv_check(c, d, sp) != m) return fail("complements disagree with the sets for " + pair);
        if (mod_equiv(d, c, sp) != m) return fail("mod_equiv is not symmetric for " + pair);
        if (!mod_equiv(c, c, sp)) return fail("mod_equiv is not reflexive at " + fmt(sp, c));
        if (m && mod_equiv(d, e, sp) && !mod_equiv(c, e, sp)) {
            return fail("mod_equiv is not transitive for " + pair + ", E = " + fmt(sp, e));
        }
    }
    return pass();
}

Result check_bornology_equiv(const ScaledSpaceFile& f, Rng& rng) {
    const ScaledSpace& sp = f.space;
    const int n = sp.size();
    const auto scale = oracle::scale_closure(sp);
    for (int t = 0; t < 20; ++t) {
        ItemSet c = random_subset(rng, n, n, 0.5);
        ItemSet d = rng.chance(0.5) ? c ^ (sp.bounded_hull() & random_subset(rng, n, n, 0.5)) : random_subset(rng, n, n, 0.5);
        bool m = mod_equiv(c, d, sp);
        bool in_scale = oracle::is_bounded(c ^ d, scale);
        if (m != in_scale) {
            return fail("for C = " + fmt(sp, c) + ", D = " + fmt(sp, d) + " mod_equiv is " + (m ? "true" : "false") +
                        " but C^D " + (in_scale ? "is" : "is not") + " in the scale");
        }
    }
    return pass();
}

Result check_compactness_ends(const ScaledSpaceFile& f, Rng&) {
    const SetAlgebra alg = f.algebra();
    const ScaledSpace& sp = alg.space();
    const auto elements = alg.elements();
    const auto cr = is_compact_at_infinity(alg);
    if (cr.compact != oracle::compact_at_infinity(elements, sp)) {
        return fail(std::string("compactness verdict ") + (cr.compact ? "true" : "false") +
                    " disagrees with the cover enumeration");
    }
    if (!cr.compact) {
        ItemSet u = sp.none();
        for (const auto& a : cr.witness_cover) u |= a;
        if (!sp.points_at_infinity().is_subset_of(u) || sp.is_bounded(sp.all() - u)) {
            return fail("witness cover does not witness non-compactness");
        }
    }
    const auto ends = enumerate_ends(alg);
    int external = 0;
    for (const auto& e : ends) external += e.tag == EndTag::external;
    if (cr.compact && external > 0) return fail("compact at infinity but has " + std::to_string(external) + " external ends");
    if (ends.empty() && !cr.compact) return fail("no ends but not compact at infinity");
    return pass();
}

Result check_bounded_at_infinity(const ScaledSpaceFile& f, Rng&) {
    const SetAlgebra alg = f.algebra();
    const ScaledSpace& sp = alg.space();
    const bool compact = oracle::compact_at_infinity(alg.elements(), sp);
    if (compact != is_compact_at_infinity(alg).compact) return fail("compactness verdict disagrees with the oracle");
    if (!compact || !sp.points_at_infinity().empty()) return pass();
    if (!sp.is_bounded(sp.all()) || !oracle::is_bounded(sp.all(), oracle::scale_closure(sp))) {
        return fail("compact at infinity without points at infinity, yet X is unbounded");
    }
    return pass();
}

Result check_ends_oracle(const ScaledSpaceFile& f, Rng&) {
    const SetAlgebra alg = f.algebra();
    const ScaledSpace& sp = alg.space();
    const auto elements = alg.elements();
    if (elements != oracle::algebra_closure(algebra_generators(f), sp)) {
        return fail("generated algebra differs from the fixpoint closure (" + std::to_string(elements.size()) +
                    " elements)");
    }
    const auto mine = enumerate_ends(alg);
    const auto theirs = oracle::ends(elements, sp);
    if (mine.size() != theirs.size()) {
        return fail(std::to_string(mine.size()) + " ends, exhaustive search finds " + std::to_string(theirs.size()));
    }
    for (const auto& e : mine) {
        auto members = end_members(alg, e);
        std::sort(members.begin(), members.end());
        auto it = std::find_if(theirs.begin(), theirs.end(), [&](const oracle::OracleEnd& o) { return o.members == members; });
        if (it == theirs.end()) return fail("end at atom " + fmt(sp, alg.atoms()[e.atom]) + " is not a maximal family");
        if (it->core != e.core) return fail("core of the end at " + fmt(sp, alg.atoms()[e.atom]) + " differs");
        if ((e.tag == EndTag::external) != it->core.empty()) return fail("wrong tag at " + fmt(sp, alg.atoms()[e.atom]));
    }
    return pass();
}

Result check_compactify(const ScaledSpaceFile& f, Rng& rng) {
    const SetAlgebra alg = f.algebra();
    const ScaledSpace& sp = alg.space();
    const auto elements = alg.elements();
    const bool h = is_hausdorff(alg).hausdorff;
    if (h != oracle::hausdorff(elements, sp)) return fail("Hausdorff verdict disagrees with the intersection oracle");
    if (!h) {
        compactify(alg);
        return skip();
    }
    const Compactification c = compactify(alg);
    if (!c.failures.empty()) return fail("compactification check failed: " + c.failures.front());
    const auto& ch = c.checks;
    if (!(ch.isomorphism && ch.scale_fixed && ch.closure_is_extension && ch.closure_preserves_intersections &&
          ch.distinct_end_families && ch.compact_at_infinity && ch.hausdorff && ch.no_external_ends &&
          ch.new_points_meet_x)) {
        return fail("a compactification check is false without a recorded failure");
    }
    const auto ext = c.algebra.elements();
    if (!oracle::compact_at_infinity(ext, c.space)) return fail("cover enumeration: result not compact at infinity");
    for (const auto& e : oracle::ends(ext, c.space)) {
        if (e.core.empty()) return fail("exhaustive search finds an external end in the result");
    }
    const ItemSet xbar = c.space.all();
    for (int t = 0; t < 40; ++t) {
        const ItemSet& a = elements[rng.uniform(0, static_cast<int>(elements.size()) - 1)];
        const ItemSet& b = elements[rng.uniform(0, static_cast<int>(elements.size()) - 1)];
        if (c.extend(a | b) != (c.extend(a) | c.extend(b)) || c.extend(a & b) != (c.extend(a) & c.extend(b)) ||
            c.extend(sp.all() - a) != xbar - c.extend(a) || c.restrict(c.extend(a)) != a) {
            return fail("extension is not a Boolean isomorphism at A = " + fmt(sp, a) + ", B = " + fmt(sp, b));
        }
        if (c.closure(a & b) != (c.closure(a) & c.closure(b))) return fail("closure does not preserve intersections");
    }
    for (const auto& b : oracle::scale_closure(sp)) {
        if (c.extend(b) != c.embed(b)) return fail("scale element " + fmt(sp, b) + " gained new points");
    }
    return pass();
}

Result check_eigenset_compactness(const ScaledSpaceFile& f, Rng& rng) {
    const SetAlgebra alg = f.algebra();
    const ScaledSpace& sp = alg.space();
    if (!is_compact_at_infinity(alg).compact) return skip();
    std::vector<int> far, near;
    for (int i = 0; i < alg.atom_count(); ++i) (alg.atom_bounded(i) ? near : far).push_back(i);
    // Permute the unbounded atoms and add bounded junk; atoms go to
    // elements, so the operator is linear on the algebra.
    auto bounded_junk = [&] {
        ItemSet j = sp.none();
        for (int i : near) {
            if (rng.chance(0.3)) j |= alg.atoms()[i];
        }
        return j;
    };
    std::vector<FiniteOperator> family;
    for (int k = rng.uniform(1, 2); k > 0; --k) {
        std::vector<int> perm = far;
        for (int i = static_cast<int>(perm.size()) - 1; i > 0; --i) std::swap(perm[i], perm[rng.uniform(0, i)]);
        std::vector<ItemSet> atom_image(alg.atom_count());
        for (int i : near) atom_image[i] = bounded_junk();
        for (std::size_t i = 0; i < far.size(); ++i) atom_image[far[i]] = alg.atoms()[perm[i]] | bounded_junk();
        FiniteOperator op;
        op.name = "f" + std::to_string(family.size() + 1);
        op.image.assign(sp.size(), sp.none());
        for (int i = 0; i < alg.atom_count(); ++i) {
            // One item per atom carries the image; unions of atoms then map
            // to unions of images.
            op.image[alg.atoms()[i].members().front()] = atom_image[i];
        }
        if (auto why = check_linear(op, alg); !why.empty()) return fail("constructed operator is not linear: " + why);
        family.push_back(std::move(op));
    }
    const SetAlgebra eig = eigenset_algebra(alg, family);
    if (!is_compact_at_infinity(eig).compact || !oracle::compact_at_infinity(eig.elements(), eig.space())) {
        return fail("eigenset algebra of a compact algebra is not compact at infinity");
    }
    return pass();
}

// ---------------------------------------------------------------------------
// Graphs and groups

struct NamedFamily {
    std::string name;
    OperatorFamily family;
};

struct World {
    std::string preset;
    int radius = 0;
    int slack = 2;
    ScaledGroup group;
    LevelDecomposition dec;
    std::vector<int> cone_radii;
    // Largest radius of the bounded features (perturbations, component
    // levels, branch roots) of sampled sets; -1 when nothing fits.
    int feature_radius = -1;
    // Families shared by the closure and linearity suites.
    std::vector<NamedFamily> families;

    const Graph& graph() const { return group.graph(); }
};

World make_world(const std::string& preset, int radius, int slack) {
    World w;
    w.preset = preset;
    w.radius = radius;
    w.slack = slack;
    const Horizon h{radius, 1};
    w.group = make_scaled_group(parse_preset(preset), h, {0, 1, 2});
    w.dec = decompose(w.graph(), h, default_radii(h));
    for (int r : {1, 2, 4}) {
        if (4 * r + slack + 1 <= radius) w.cone_radii.push_back(r);
    }
    if (w.cone_radii.empty() && radius >= 4) w.cone_radii.push_back(1);
    w.feature_radius = std::max(1, radius / 4);
    return w;
}

constexpr int kMovedBasepointRadius = 2;

// Largest b such that g_r(ball(b)) with basepoint p stays below the shell of
// p's safe zone, for every p in ball(kMovedBasepointRadius). Residues of
// sets whose bounded features lie in ball(b) then cannot touch the shell, so
// a not_eigenset verdict on them is never a truncation artifact. The reach
// is measured with the reference cone.
int fitting_feature_radius(const Graph& g, int r) {
    const int R = g.horizon().radius, w = g.horizon().shell_width;
    const auto near = g.depth_ball(kMovedBasepointRadius).members();
    int best = -1;
    for (int b = 0; b <= R; ++b) {
        for (int p : near) {
            const int top = R - 2 * r - 2 * g.depth(p) - w;
            const VertexSet reach = neighborhood(g, oracle::cone(g, neighborhood(g, g.depth_ball(b), r), p), r);
            int m = 0;
            reach.for_each([&](int v) { m = std::max(m, g.depth(v)); });
            if (m > top) return best;
        }
        best = b;
    }
    return best;
}

// Cone radii whose safe zones leave room for bounded features at every
// moved basepoint.
void calibrate_moved_basepoints(World& w) {
    std::vector<int> radii;
    int feature = w.radius;
    for (int r : {1, 2, 4}) {
        if (4 * r + w.slack + 1 > w.radius) continue;
        const int b = fitting_feature_radius(w.graph(), r);
        if (b < 1) continue;
        radii.push_back(r);
        feature = std::min(feature, b);
    }
    w.cone_radii = radii;
    w.feature_radius = radii.empty() ? -1 : feature;
}

struct Case {
    VertexSet a;
    VertexSet c;
    std::vector<Element> b;
    int basepoint = 0;
    int param = 0;
};

using GraphGen = std::function<Case(const World&, Rng&, int index)>;
using GraphCheck = std::function<Result(const World&, const Case&)>;
using WorldSetup = std::function<void(World&)>;

VertexSet random_bounded(const World& w, Rng& rng, int max_radius) {
    VertexSet s = w.graph().empty_set();
    w.graph().depth_ball(rng.uniform(0, std::max(0, max_radius))).for_each([&](int v) {
        if (rng.chance(0.5)) s.insert(v);
    });
    return s;
}

VertexSet random_component_union(const World& w, Rng& rng, int level_index) {
    const Level& lv = w.dec.levels[level_index];
    VertexSet s = w.graph().empty_set();
    for (const auto& comp : lv.components) {
        if (!rng.chance(0.5)) continue;
        for (int v : comp.vertices) s.insert(v);
    }
    return s;
}

VertexSet random_structured(const World& w, Rng& rng, int max_word = 2) {
    const GroupPreset& p = w.group.cayley.preset;
    std::string expr;
    if (p.kind == PresetKind::free_abelian && p.rank == 1) {
        const char* opts[] = {"ray+", "ray-", "evens", "odds"};
        expr = opts[rng.uniform(0, 3)];
    } else if (p.kind == PresetKind::free_abelian) {
        expr = rng.chance(0.7) ? "halfplane " + std::string(rng.chance(0.5) ? "x" : "y") + (rng.chance(0.5) ? ">=" : "<=") +
                                     std::to_string(rng.uniform(-std::min(3, max_word), std::min(3, max_word)))
                               : "evens";
    } else {
        if (rng.chance(0.7)) {
            const auto& gens = w.group.oracle().generators();
            Element word;
            for (int k = rng.uniform(1, std::max(1, max_word)); k > 0; --k) {
                word = w.group.oracle().multiply(word, gens[rng.uniform(0, static_cast<int>(gens.size()) - 1)]);
            }
            if (word.empty()) word = gens[0];
            expr = "branch " + w.group.oracle().format(word);
        } else {
            expr = "evens";
        }
    }
    SetContext ctx{&w.graph(), &w.group.cayley, &w.dec};
    return parse_set_expr(expr, ctx);
}

// Sets that are eigensets of the usual families: component unions, bounded
// perturbations of them, bounded sets and complements.
VertexSet random_tame_set(const World& w, Rng& rng) {
    const int levels = w.dec.depth();
    const int quarter = std::max(1, w.feature_radius);
    const int level = rng.uniform(0, std::min(levels - 1, quarter - 1));
    switch (rng.uniform(0, 3)) {
        case 0: return random_component_union(w, rng, level);
        case 1: return random_component_union(w, rng, level) ^ random_bounded(w, rng, quarter);
        case 2: return random_bounded(w, rng, quarter);
        default: return (random_component_union(w, rng, level) ^ random_bounded(w, rng, quarter)).complement();
    }
}

VertexSet random_set(const World& w, Rng& rng) {
    switch (rng.uniform(0, 3)) {
        case 0: {
            double p = rng.uniform(1, 9) / 10.0;
            VertexSet s = w.graph().empty_set();
            for (int v = 0; v < w.graph().size(); ++v) {
                if (rng.chance(p)) s.insert(v);
            }
            return s;
        }
        case 1: return random_structured(w, rng, w.feature_radius);
        case 2: return random_structured(w, rng, w.feature_radius) ^ random_bounded(w, rng, w.feature_radius);
        default: return random_tame_set(w, rng);
    }
}

std::string labels_of(const Graph& g, const VertexSet& s) {
    std::string out = "{";
    bool first = true;
    s.for_each([&](int v) {
        if (!first) out += ", ";
        out += g.label(v);
        first = false;
    });
    return out + "}";
}

std::string describe(const World& w, const Case& c) {
    std::ostringstream out;
    out << "preset " << w.preset << " R " << w.radius << " slack " << w.slack << "\n";
    out << "A = " << labels_of(w.graph(), c.a) << "\n";
    if (c.c.universe() > 0 && !c.c.empty()) out << "C = " << labels_of(w.graph(), c.c) << "\n";
    if (!c.b.empty()) {
        out << "B = {";
        for (std::size_t i = 0; i < c.b.size(); ++i) out << (i ? ", " : "") << w.group.oracle().format(c.b[i]);
        out << "}\n";
    }
    if (c.basepoint != 0) out << "basepoint = " << w.graph().label(c.basepoint) << "\n";
    out << "param = " << c.param << "\n";
    return out.str();
}

Case shrink_case(const World& w, Case c, const GraphCheck& check) {
    int budget = 600;
    auto fails = [&](const Case& x) { return budget-- > 0 && guarded([&] { return check(w, x); }).outcome == Outcome::fail; };
    // Cut A and C down to the smallest ball that still fails.
    for (int which = 0; which < 2; ++which) {
        VertexSet& target = which == 0 ? c.a : c.c;
        if (target.universe() == 0 || target.empty()) continue;
        for (int k = 0; k < w.radius; ++k) {
            Case t = c;
            VertexSet& s = which == 0 ? t.a : t.c;
            s &= w.graph().depth_ball(k);
            if (fails(t)) {
                c = std::move(t);
                break;
            }
        }
        for (int v : (which == 0 ? c.a : c.c).members()) {
            Case t = c;
            (which == 0 ? t.a : t.c).erase(v);
            if (fails(t)) c = std::move(t);
        }
    }
    for (std::size_t i = c.b.size(); i-- > 0;) {
        if (c.b.size() <= 1) break;
        Case t = c;
        t.b.erase(t.b.begin() + static_cast<long>(i));
        if (fails(t)) c = std::move(t);
    }
    return c;
}

SuiteReport run_graph_suite(const std::string& name, const std::string& preset, const Options& opt, const GraphGen& gen,
                            const GraphCheck& check, const WorldSetup& setup, int radius) {
    SuiteReport rep;
    rep.suite = name;
    rep.preset = preset;
    World w = make_world(preset, opt.radius.value_or(radius), opt.slack);
    if (setup) setup(w);
    if (w.feature_radius < 0) {
        rep.skipped = opt.instances;
        return rep;
    }
    for (int i = 0; i < opt.instances; ++i) {
        Rng rng(mix_seed(opt.seed, name + "/" + preset, static_cast<std::uint64_t>(i)));
        Case c = gen(w, rng, i);
        if (c.c.universe() == 0) c.c = w.graph().empty_set();
        Result r = guarded([&] { return check(w, c); });
        if (r.outcome == Outcome::pass) ++rep.passed;
        if (r.outcome == Outcome::skip) ++rep.skipped;
        if (r.outcome != Outcome::fail) continue;
        ++rep.failed;
        if (rep.failure.empty()) {
            Case small = shrink_case(w, c, check);
            rep.failure = "instance " + std::to_string(i) + ": " + guarded([&] { return check(w, small); }).message;
            rep.reproducer = describe(w, small);
        }
    }
    return rep;
}

const char* name_of(EigenStatus s) { return to_string(s); }

int shell_reach(const World& w, const VertexSet& residue) {
    int m = -1;
    residue.for_each([&](int v) { m = std::max(m, w.graph().depth(v)); });
    return m;
}

Case gen_any(const World& w, Rng& rng, int) {
    Case c;
    c.a = random_set(w, rng);
    return c;
}

Case gen_star_identity(const World& w, Rng& rng, int) {
    Case c;
    c.a = random_set(w, rng);
    const int k = w.radius >= 8 ? rng.uniform(1, 2) : 1;
    auto pool = w.group.ball_elements(k);
    while (c.b.empty()) {
        for (const auto& e : pool) {
            if (rng.chance(0.4)) c.b.push_back(e);
        }
    }
    return c;
}

Result check_star_identity(const World& w, const Case& c) {
    auto res = star_identity_check(w.group, c.a, c.b);
    if (!res.equal) return fail("star and B B^-1 A differ at " + labels_of(w.graph(), res.residue));
    return pass();
}

Result check_duality(const World& w, const Case& c) {
    auto res = inversion_duality_check(w.group, c.a, w.slack);
    if (!res.ok) {
        return fail(std::string("A under left multiplication is ") + name_of(res.left) + ", A^-1 under right is " +
                    name_of(res.right_inverse));
    }
    return pass();
}

Case gen_cone_sandwich(const World& w, Rng& rng, int) {
    Case c;
    c.a = random_set(w, rng);
    c.param = w.cone_radii[rng.uniform(0, static_cast<int>(w.cone_radii.size()) - 1)];
    return c;
}

Result check_cone_sandwich(const World& w, const Case& c) {
    const int r = c.param;
    auto fam = cone_families(w.graph(), {r}, 0);
    const VertexSet safe = w.graph().depth_ball(w.radius - 2 * r);
    VertexSet cb = fam.cb.operators[0].apply(c.a) & safe;
    VertexSet bc = fam.bc.operators[0].apply(c.a) & safe;
    VertexSet g = fam.g.operators[0].apply(c.a) & safe;
    VertexSet a = c.a & safe;
    if (!a.is_subset_of(cb & bc)) return fail("A is not inside cb(A) n bc(A) at " + labels_of(w.graph(), a - (cb & bc)));
    if (!(cb | bc).is_subset_of(g)) return fail("cb(A) u bc(A) is not inside g(A) at " + labels_of(w.graph(), (cb | bc) - g));
    return pass();
}

Case gen_cone_oracle(const World& w, Rng& rng, int) {
    Case c;
    c.a = w.graph().empty_set();
    for (int k = rng.uniform(1, 4); k > 0; --k) c.a.insert(rng.uniform(0, w.graph().size() - 1));
    auto near = w.graph().depth_ball(std::min(2, w.radius)).members();
    c.basepoint = near[rng.uniform(0, static_cast<int>(near.size()) - 1)];
    c.param = rng.uniform(0, 3);
    return c;
}

Result check_cone_oracle(const World& w, const Case& c) {
    if (cone(w.graph(), c.a, c.basepoint) != oracle::cone(w.graph(), c.a, c.basepoint)) {
        return fail("cone differs from the distance-sum oracle");
    }
    if (gromov_operator(w.graph(), c.basepoint, c.param).apply(c.a) != oracle::gromov(w.graph(), c.a, c.basepoint, c.param)) {
        return fail("Gromov product operator differs from the product formula");
    }
    return pass();
}

Case gen_family_agreement(const World& w, Rng& rng, int) {
    Case c;
    c.a = rng.chance(0.5) ? random_tame_set(w, rng) : random_set(w, rng);
    auto near = w.graph().depth_ball(std::min(2, w.radius)).members();
    c.basepoint = near[rng.uniform(0, static_cast<int>(near.size()) - 1)];
    return c;
}

Result check_family_agreement(const World& w, const Case& c) {
    std::vector<std::pair<std::string, EigenStatus>> verdicts;
    for (int p : {0, c.basepoint}) {
        auto fam = cone_families(w.graph(), w.cone_radii, p);
        const std::string at = "@" + w.graph().label(p);
        verdicts.emplace_back("cb" + at, is_eigenset(c.a, fam.cb, w.graph(), w.slack).status);
        verdicts.emplace_back("bc" + at, is_eigenset(c.a, fam.bc, w.graph(), w.slack).status);
        verdicts.emplace_back("g" + at, is_eigenset(c.a, fam.g, w.graph(), w.slack).status);
    }
    const std::pair<std::string, EigenStatus>* first = nullptr;
    for (const auto& v : verdicts) {
        if (v.second == EigenStatus::undetermined) continue;
        if (!first) {
            first = &v;
        } else if (v.second != first->second) {
            return fail(first->first + " says " + name_of(first->second) + " but " + v.first + " says " + name_of(v.second));
        }
    }
    return pass();
}

int roundtrip_max_level(const World& w) {
    const int rmax = w.cone_radii.empty() ? 0 : *std::max_element(w.cone_radii.begin(), w.cone_radii.end());
    return std::min(w.dec.depth(), w.radius - 4 * rmax - w.slack);
}

Case gen_roundtrip(const World& w, Rng& rng, int) {
    Case c;
    c.a = rng.chance(0.5) ? random_tame_set(w, rng) : random_set(w, rng);
    const int kmax = roundtrip_max_level(w);
    if (kmax >= 1) {
        c.param = rng.uniform(1, kmax);
        const Level& lv = w.dec.levels[c.param - 1];
        c.c = w.graph().empty_set();
        for (int idx : lv.unbounded) {
            if (rng.chance(0.5)) {
                for (int v : lv.components[idx].vertices) c.c.insert(v);
            }
        }
    }
    return c;
}

Result check_roundtrip(const World& w, const Case& c) {
    if (w.cone_radii.empty()) return skip();
    const auto fam = cone_families(w.graph(), w.cone_radii, 0).g;
    if (c.param >= 1) {
        auto v = is_eigenset(c.c, fam, w.graph(), w.slack);
        if (v.status != EigenStatus::eigenset) {
            return fail("union of unbounded components at radius " + std::to_string(c.param) + " is " + name_of(v.status) +
                        " under g");
        }
    }
    auto v = is_eigenset(c.a, fam, w.graph(), w.slack);
    if (v.status != EigenStatus::eigenset) return pass();
    int safe = w.radius;
    for (const auto& op : v.operators) safe = std::min(safe, op.safe_radius);
    const int b = *v.bounding_radius;
    const Graph& g = w.graph();
    for (int u = 0; u < g.size(); ++u) {
        if (g.depth(u) <= b || g.depth(u) > safe) continue;
        for (int x : g.neighbors(u)) {
            if (g.depth(x) <= b || g.depth(x) > safe) continue;
            if (c.a.contains(u) != c.a.contains(x)) {
                return fail("g-eigenset with bounding radius " + std::to_string(b) + " cuts the edge " + g.label(u) + " - " +
                            g.label(x) + " outside that ball");
            }
        }
    }
    return pass();
}

std::vector<NamedFamily> closure_families(const World& w) {
    std::vector<NamedFamily> out;
    out.push_back({"translations", translation_family(w.group.cayley)});
    out.push_back({"stars", star_family(w.graph(), {edge_cover(w.graph()), ball_cover(w.graph(), 1)})});
    out.push_back({"components", component_family(w.graph(), w.dec)});
    out.push_back({"cones", cone_families(w.graph(), w.cone_radii, 0).g});
    return out;
}

void build_closure_families(World& w) { w.families = closure_families(w); }

Case gen_closure(const World& w, Rng& rng, int index) {
    Case c;
    const auto& fams = w.families;
    c.param = index % static_cast<int>(fams.size());
    const auto& fam = fams[c.param].family;
    auto find = [&]() -> std::optional<VertexSet> {
        for (int t = 0; t < 12; ++t) {
            VertexSet s = random_tame_set(w, rng);
            if (is_eigenset(s, fam, w.graph(), w.slack).status == EigenStatus::eigenset) return s;
        }
        return std::nullopt;
    };
    auto a = find(), b = find();
    c.a = a ? *a : w.graph().empty_set();
    c.c = b ? *b : w.graph().empty_set();
    if (!a || !b) c.param = -1 - c.param;
    return c;
}

Result check_closure(const World& w, const Case& c) {
    if (c.param < 0) return skip();
    const auto& fam = w.families[c.param];
    if (is_eigenset(c.a, fam.family, w.graph(), w.slack).status != EigenStatus::eigenset ||
        is_eigenset(c.c, fam.family, w.graph(), w.slack).status != EigenStatus::eigenset) {
        return skip();
    }
    auto res = closure_check(c.a, c.c, fam.family, w.graph(), w.slack);
    if (!res.ok) {
        return fail(fam.name + ": union " + name_of(res.union_status) + ", intersection " + name_of(res.intersection_status) +
                    ", difference " + name_of(res.difference_status));
    }
    return pass();
}

Case gen_linearity(const World& w, Rng& rng, int) {
    Case c;
    c.a = random_set(w, rng);
    c.c = random_set(w, rng);
    return c;
}

Result check_linearity(const World& w, const Case& c) {
    std::vector<OperatorFamily> fams;
    for (const auto& f : w.families) fams.push_back(f.family);
    auto cones = cone_families(w.graph(), w.cone_radii, 0);
    fams.push_back(cones.cb);
    fams.push_back(cones.bc);
    fams.push_back(gromov_family(w.graph(), {1, 2}, 0));
    const int shell = w.graph().horizon().shell_width;
    for (const auto& fam : fams) {
        for (const auto& op : fam.operators) {
            const int s = w.radius - op.safety_margin;
            if (s < 0) continue;
            VertexSet diff = (op.apply(c.a | c.c) ^ (op.apply(c.a) | op.apply(c.c))) & w.graph().depth_ball(s);
            if (shell_reach(w, diff) >= s - shell + 1) {
                return fail(op.name + " is not linear: f(C u D) and f(C) u f(D) differ up to the shell of the safe zone");
            }
        }
    }
    return pass();
}

Result check_translation_symmetry(const World& w, const Case& c) {
    const auto fam = translation_family(w.group.cayley);
    auto v = is_eigenset(c.a, fam, w.graph(), w.slack);
    auto vc = is_eigenset(c.a.complement(), fam, w.graph(), w.slack);
    if (v.status != vc.status) return fail(std::string("A is ") + name_of(v.status) + " but X \\ A is " + name_of(vc.status));
    for (const auto& op : v.operators) {
        if (op.residue != op.complement_residue) return fail(op.op + ": residues of A and X \\ A differ");
    }
    return pass();
}

Case gen_counts(const World& w, Rng& rng, int) {
    Case c;
    int lo = 3, hi = w.radius;
    c.param = rng.uniform(lo, std::max(lo, hi));
    c.basepoint = rng.uniform(1, 2);  // shell width
    return c;
}

Result check_counts(const World& w, const Case& c) {
    const int R = c.param, shell = c.basepoint;
    if (R < shell + 1) return skip();
    auto preset = parse_preset(w.preset);
    auto cg = build_truncated_cayley(preset, Horizon{R, shell});
    std::vector<int> radii;
    for (int r = 1; r + shell <= R; ++r) radii.push_back(r);
    auto dec = decompose(cg.graph, cg.graph.horizon(), radii);
    auto counts = dec.counts();
    if (counts != oracle::component_counts(cg.graph, radii)) return fail("level counts differ from the BFS oracle at R " + std::to_string(R));
    for (std::size_t i = 0; i < radii.size(); ++i) {
        long long expect = -1;
        if (preset.kind == PresetKind::free_abelian) expect = preset.rank == 1 ? 2 : 1;
        if (preset.kind == PresetKind::free_group) expect = oracle::free_sphere_size(preset.rank, radii[i]);
        if (expect >= 0 && counts[i] != expect) {
            return fail("level " + std::to_string(i + 1) + " has " + std::to_string(counts[i]) + " components, expected " +
                        std::to_string(expect));
        }
    }
    long long size = -1;
    if (preset.kind == PresetKind::free_abelian) size = oracle::lattice_ball_size(preset.rank, R);
    if (preset.kind == PresetKind::free_group) {
        size = oracle::free_ball_size_formula(preset.rank, R);
        if (R <= 6 && size != oracle::free_ball_size_by_words(preset.rank, R)) return fail("ball size formula disagrees with word enumeration");
    }
    if (size >= 0 && cg.graph.size() != size) return fail("ball of radius " + std::to_string(R) + " has " + std::to_string(cg.graph.size()) + " vertices, expected " + std::to_string(size));
    end_tree(dec, cg.graph);
    return pass();
}

std::string graph_text(const Graph& g) {
    std::ostringstream out;
    out << "basepoint 0\n";
    for (int v = 0; v < g.size(); ++v) out << "v " << v << " " << g.label(v) << "\n";
    for (int v = 0; v < g.size(); ++v) {
        for (int u : g.neighbors(v)) {
            if (v < u) out << "e " << v << " " << u << "\n";
        }
    }
    return out.str();
}

SuiteReport run_refinement(const Options& opt) {
    SuiteReport rep;
    rep.suite = "refinement";
    rep.preset = "Z2-subgraph";
    const int R = opt.radius.value_or(15);
    for (int i = 0; i < opt.instances; ++i) {
        Rng rng(mix_seed(opt.seed, "refinement", static_cast<std::uint64_t>(i)));
        Graph g = random_lattice_subgraph(rng, R);
        Result r = guarded([&] {
            auto radii = default_radii(g.horizon());
            if (g.max_depth() < R) return skip();
            auto dec = decompose(g, g.horizon(), radii);
            int bad = oracle::refinement_violations(g, radii);
            if (bad) return fail(std::to_string(bad) + " unbounded components without a unique parent");
            if (dec.counts() != oracle::component_counts(g, radii)) return fail("level counts differ from the BFS oracle");
            end_tree(dec, g);
            return pass();
        });
        if (r.outcome == Outcome::pass) ++rep.passed;
        if (r.outcome == Outcome::skip) ++rep.skipped;
        if (r.outcome == Outcome::fail) {
            ++rep.failed;
            if (rep.failure.empty()) {
                rep.failure = "instance " + std::to_string(i) + ": " + r.message;
                rep.reproducer = graph_text(g);
            }
        }
    }
    return rep;
}

struct AlgebraSuite {
    AlgebraGen gen;
    AlgebraCheck check;
};

struct GraphSuite {
    GraphGen gen;
    GraphCheck check;
    std::vector<std::string> presets;
    WorldSetup setup;
    // Per-preset horizon when it differs from default_fuzz_radius.
    std::map<std::string, int> radius;
};

const std::vector<std::string> kAllPresets{"Z", "Z2", "F2"};

const std::map<std::string, AlgebraSuite>& algebra_suites() {
    static const std::map<std::string, AlgebraSuite> m{
        {"complement-equiv", {[](Rng& r) { return random_scaled_space(r); }, check_complement_equiv}},
        {"bornology-equiv", {[](Rng& r) { return random_bornology_space(r); }, check_bornology_equiv}},
        {"compactness-ends", {[](Rng& r) { return random_scaled_space(r); }, check_compactness_ends}},
        {"bounded-at-infinity", {[](Rng& r) { return random_scaled_space(r); }, check_bounded_at_infinity}},
        {"ends-oracle", {[](Rng& r) { return random_scaled_space(r); }, check_ends_oracle}},
        {"compactify", {[](Rng& r) { return random_scaled_space(r); }, check_compactify}},
        {"eigenset-compactness", {[](Rng& r) { return random_scaled_space(r); }, check_eigenset_compactness}},
    };
    return m;
}

const std::map<std::string, GraphSuite>& graph_suites() {
    static const std::map<std::string, GraphSuite> m{
        {"oracle-counts", {gen_counts, check_counts, kAllPresets}},
        {"star-identity", {gen_star_identity, check_star_identity, kAllPresets}},
        {"inversion-duality", {gen_any, check_duality, kAllPresets}},
        {"cone-oracle", {gen_cone_oracle, check_cone_oracle, kAllPresets}},
        {"cone-sandwich", {gen_cone_sandwich, check_cone_sandwich, kAllPresets}},
        {"family-agreement", {gen_family_agreement, check_family_agreement, kAllPresets, calibrate_moved_basepoints, {{"F2", 10}}}},
        {"component-roundtrip", {gen_roundtrip, check_roundtrip, kAllPresets}},
        {"closure", {gen_closure, check_closure, kAllPresets, build_closure_families, {}}},
        {"linearity", {gen_linearity, check_linearity, kAllPresets, build_closure_families, {}}},
        {"translation-symmetry", {gen_any, check_translation_symmetry, kAllPresets}},
    };
    return m;
}

}  // namespace

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names{
        "complement-equiv", "bornology-equiv",   "compactness-ends", "bounded-at-infinity", "ends-oracle",
        "compactify",       "eigenset-compactness", "refinement",    "oracle-counts",       "star-identity",
        "inversion-duality", "cone-oracle",      "cone-sandwich",    "family-agreement",    "component-roundtrip",
        "closure",          "linearity",         "translation-symmetry"};
    return names;
}

bool suite_uses_presets(const std::string& suite) { return graph_suites().count(suite) > 0; }

std::vector<std::string> default_presets(const std::string& suite) {
    auto it = graph_suites().find(suite);
    return it == graph_suites().end() ? std::vector<std::string>{} : it->second.presets;
}

int default_fuzz_radius(const std::string& preset) {
    auto p = parse_preset(preset);
    if (p.kind == PresetKind::free_abelian) {
        if (p.rank == 1) return 40;
        if (p.rank == 2) return 16;
        return 8;
    }
    if (p.kind == PresetKind::free_group && p.rank == 1) return 40;
    if (p.oracle->name() == "Dinf") return 40;
    return p.rank <= 2 ? 8 : 6;
}

std::vector<SuiteReport> run_suite(const std::string& suite, const Options& options) {
    if (options.instances < 0) throw InputError("instance count must be nonnegative");
    if (auto it = algebra_suites().find(suite); it != algebra_suites().end()) {
        return {run_algebra_suite(suite, options, it->second.gen, it->second.check)};
    }
    if (suite == "refinement") return {run_refinement(options)};
    auto it = graph_suites().find(suite);
    if (it == graph_suites().end()) {
        std::string known;
        for (const auto& n : suite_names()) known += (known.empty() ? "" : ", ") + n;
        throw InputError("unknown fuzz suite '" + suite + "' (known: " + known + ")");
    }
    std::vector<SuiteReport> out;
    const auto presets = options.presets.empty() ? it->second.presets : options.presets;
    const GraphSuite& gs = it->second;
    for (const auto& p : presets) {
        auto r = gs.radius.find(p);
        const int radius = r == gs.radius.end() ? default_fuzz_radius(p) : r->second;
        out.push_back(run_graph_suite(suite, p, options, gs.gen, gs.check, gs.setup, radius));
    }
    return out;
}

std::string report_text(const std::vector<SuiteReport>& reports) {
    std::ostringstream out;
    for (const auto& r : reports) {
        const int total = r.passed + r.failed;
        out << r.suite;
        if (!r.preset.empty()) out << " [" << r.preset << "]";
        out << ": " << r.passed << "/" << total << " passed";
        if (r.skipped) out << ", " << r.skipped << " skipped";
        out << (r.failed ? " FAIL" : "") << "\n";
        if (r.failed) {
            out << "  " << r.failure << "\n  reproducer:\n";
            std::istringstream lines(r.reproducer);
            std::string line;
            while (std::getline(lines, line)) out << "    " << line << "\n";
        }
    }
    return out.str();
}

nlohmann::ordered_json report_json(const std::vector<SuiteReport>& reports, const Options& options) {
    nlohmann::ordered_json out;
    out["seed"] = options.seed;
    out["instances"] = options.instances;
    auto arr = nlohmann::ordered_json::array();
    for (const auto& r : reports) {
        nlohmann::ordered_json j;
        j["suite"] = r.suite;
        j["preset"] = r.preset.empty() ? nlohmann::ordered_json(nullptr) : nlohmann::ordered_json(r.preset);
        j["passed"] = r.passed;
        j["failed"] = r.failed;
        j["skipped"] = r.skipped;
        j["failure"] = r.failed ? nlohmann::ordered_json(r.failure) : nlohmann::ordered_json(nullptr);
        j["reproducer"] = r.failed ? nlohmann::ordered_json(r.reproducer) : nlohmann::ordered_json(nullptr);
        arr.push_back(std::move(j));
    }
    out["suites"] = std::move(arr);
    bool ok = std::all_of(reports.begin(), reports.end(), [](const SuiteReport& r) { return r.failed == 0; });
    out["ok"] = ok;
    return out;
}

}  // namespace endslab::fuzz
