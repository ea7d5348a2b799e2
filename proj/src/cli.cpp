#include "endslab/cli.hpp"

#include <algorithm>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "endslab/adapter.hpp"
#include "endslab/check/fuzz.hpp"
#include "endslab/eigensets.hpp"
#include "endslab/ends.hpp"
#include "endslab/error.hpp"
#include "endslab/scaled_ba.hpp"
#include "endslab/scaled_groups.hpp"
#include "endslab/set_expr.hpp"

namespace endslab::cli {
namespace {

using json = nlohmann::ordered_json;

struct Globals {
    std::optional<int> radius;
    int shell = 1;
    int slack = 2;
    std::uint64_t seed = 0;
    std::string format = "text";
    std::string radii;
};

struct SpaceArgs {
    std::string preset;
    std::string graph_path;
};

// A preset's truncated Cayley graph or a graph read from a file.
struct Space {
    std::string source;
    std::optional<CayleyGraph> cayley;
    Graph graph;

    Horizon horizon() const { return graph.horizon(); }
};

std::vector<int> parse_int_list(const std::string& text, const std::string& what) {
    std::vector<int> out;
    std::string s = text;
    std::replace(s.begin(), s.end(), ',', ' ');
    std::istringstream in(s);
    std::string tok;
    auto to_int = [&](const std::string& t) {
        try {
            std::size_t used = 0;
            int v = std::stoi(t, &used);
            if (used == t.size()) return v;
        } catch (const std::exception&) {
        }
        throw InputError("bad " + what + " '" + text + "'");
    };
    while (in >> tok) {
        auto dots = tok.find("..");
        if (dots == std::string::npos) {
            out.push_back(to_int(tok));
            continue;
        }
        int lo = to_int(tok.substr(0, dots)), hi = to_int(tok.substr(dots + 2));
        if (hi < lo) throw InputError("empty range '" + tok + "' in " + what);
        for (int r = lo; r <= hi; ++r) out.push_back(r);
    }
    if (out.empty()) throw InputError("empty " + what);
    return out;
}

Space load_space(const SpaceArgs& a, const Globals& g) {
    if (a.preset.empty() == a.graph_path.empty()) throw InputError("give exactly one of --preset and --graph");
    if (g.shell < 1) throw InputError("--shell must be positive");
    Space s;
    if (!a.preset.empty()) {
        if (!g.radius) throw InputError("--R is required with --preset");
        Horizon h{*g.radius, g.shell};
        h.validate();
        s.cayley = build_truncated_cayley(parse_preset(a.preset), h);
        s.graph = s.cayley->graph;
        s.source = a.preset;
    } else {
        std::optional<Horizon> h;
        if (g.radius) {
            h = Horizon{*g.radius, g.shell};
            h->validate();
        }
        s.graph = load_graph(a.graph_path, h);
        if (!h) s.graph = s.graph.with_horizon(Horizon{s.graph.horizon().radius, g.shell});
        s.source = a.graph_path;
    }
    return s;
}

// Without --radii: up to five levels, the deepest within a third of the horizon.
std::vector<int> cli_default_radii(const Horizon& h) {
    int top = std::clamp((h.radius - h.shell_width) / 3, 1, 5);
    std::vector<int> radii;
    for (int r = 1; r <= top; ++r) radii.push_back(r);
    return radii;
}

std::vector<int> radii_for(const Globals& g, const Horizon& h) {
    auto radii = g.radii.empty() ? cli_default_radii(h) : parse_int_list(g.radii, "--radii");
    validate_radii(radii, h);
    return radii;
}

void check_format(const Globals& g, std::initializer_list<const char*> allowed) {
    for (const char* f : allowed) {
        if (g.format == f) return;
    }
    std::string list;
    for (const char* f : allowed) list += (list.empty() ? "" : ", ") + std::string(f);
    throw InputError("--format " + g.format + " is not available here (use " + list + ")");
}

std::string join(const std::vector<int>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? " " : "") + std::to_string(v[i]);
    return s;
}

std::string plural(long long n, const std::string& noun, const std::string& nouns = "") {
    return std::to_string(n) + " " + (n == 1 ? noun : nouns.empty() ? noun + "s" : nouns);
}

const char* yes_no(bool b) { return b ? "yes" : "no"; }

void emit(std::ostream& out, const json& j) { out << j.dump(2) << "\n"; }

// ---------------------------------------------------------------------------

int cmd_ends_count(const SpaceArgs& a, const Globals& g, std::ostream& out) {
    check_format(g, {"text", "json"});
    Space s = load_space(a, g);
    auto radii = radii_for(g, s.horizon());
    auto dec = decompose(s.graph, s.horizon(), radii);
    auto cls = classify(dec);
    if (g.format == "json") {
        json j;
        j["source"] = s.source;
        j["R"] = s.horizon().radius;
        j["shell"] = s.horizon().shell_width;
        j["vertices"] = s.graph.size();
        j["radii"] = radii;
        j["counts"] = cls.counts;
        j["verdict"] = to_string(cls.verdict);
        j["stabilization_level"] = cls.stabilization_level ? json(*cls.stabilization_level) : json(nullptr);
        j["note"] = cls.note.empty() ? json(nullptr) : json(cls.note);
        emit(out, j);
        return ok;
    }
    out << "counts: " << join(cls.counts) << "; verdict: " << to_string(cls.verdict) << "\n";
    if (!cls.note.empty()) out << "note: " << cls.note << "\n";
    return ok;
}

int cmd_ends_tree(const SpaceArgs& a, const Globals& g, std::optional<int> depth, std::ostream& out) {
    check_format(g, {"text", "json", "dot"});
    Space s = load_space(a, g);
    auto dec = decompose(s.graph, s.horizon(), radii_for(g, s.horizon()));
    auto tree = end_tree(dec, s.graph);
    if (depth && (*depth < 1 || *depth > tree.depth)) {
        throw InputError("--depth must lie in 1.." + std::to_string(tree.depth));
    }
    if (g.format == "dot") {
        out << end_tree_dot(tree, s.graph);
        return ok;
    }
    if (g.format == "json") {
        json j = end_tree_json(tree);
        if (depth) {
            json prefixes = json::array();
            for (const auto& p : ends_at_depth(tree, *depth)) prefixes.push_back(p);
            j["prefixes"] = std::move(prefixes);
        }
        emit(out, j);
        return ok;
    }
    for (int n = 1; n <= tree.depth; ++n) {
        auto nodes = tree.nodes_at_depth(n);
        out << "depth " << n << " (radius " << dec.radii[n - 1] << "): " << plural(static_cast<long long>(nodes.size()), "node")
            << "\n";
    }
    if (depth) {
        auto prefixes = ends_at_depth(tree, *depth);
        out << "prefixes at depth " << *depth << ": " << prefixes.size() << "\n";
        for (const auto& p : prefixes) {
            out << " ";
            for (int id : p) out << " " << s.graph.label(tree.nodes[id].representative);
            out << "\n";
        }
    }
    return ok;
}

// ---------------------------------------------------------------------------

int report_algebra(const SetAlgebra& alg, const std::string& source, const Globals& g, std::ostream& out) {
    if (g.format == "json") {
        json j;
        j["source"] = source;
        auto report = compactification_report(alg);
        for (auto& [k, v] : report.items()) j[k] = v;
        const bool bad = !j["compactification"]["failures"].empty();
        emit(out, j);
        return bad ? property_failure : ok;
    }
    const ScaledSpace& sp = alg.space();
    auto ends = enumerate_ends(alg);
    long long internal = std::count_if(ends.begin(), ends.end(), [](const End& e) { return e.tag == EndTag::internal; });
    long long external = static_cast<long long>(ends.size()) - internal;
    out << "items: " << sp.point_count() << " points, " << sp.tail_count() << " tails; atoms: " << alg.atom_count() << "\n";
    out << plural(static_cast<long long>(ends.size()), "end") << ": " << plural(internal, "internal end") << ", "
        << plural(external, "external end") << "\n";
    for (const auto& e : ends) {
        out << "  " << to_string(e.tag) << " end at atom " << sp.format(alg.atoms()[e.atom]);
        if (e.tag == EndTag::internal) out << ", core " << sp.format(e.core);
        out << "\n";
    }
    const auto haus = is_hausdorff(alg);
    out << "hausdorff: " << yes_no(haus.hausdorff);
    if (!haus.hausdorff) out << " (point " << sp.name(haus.witness_point) << " is inseparable from " << sp.format(haus.intersection) << ")";
    out << "\n";
    const auto comp = is_compact_at_infinity(alg);
    out << "compact at infinity: " << yes_no(comp.compact);
    if (!comp.compact) out << " (a cover misses " << sp.format(comp.uncovered) << ")";
    out << "\n";
    const Compactification c = compactify(alg);
    out << "compactification: " << plural(static_cast<long long>(c.added_ends.size()), "external end") << " added; isomorphism: ";
    if (!c.failures.empty()) {
        out << "failed\n";
        for (const auto& f : c.failures) out << "  " << f << "\n";
        return property_failure;
    }
    out << (c.verified ? "verified" : "unverified (input is not Hausdorff)") << "\n";
    return ok;
}

int cmd_ba(const std::string& file, const SpaceArgs& a, std::optional<int> depth, const Globals& g, std::ostream& out) {
    check_format(g, {"text", "json"});
    if (!file.empty()) {
        if (!a.preset.empty() || !a.graph_path.empty()) throw InputError("give either a scaled-space file or a graph, not both");
        return report_algebra(load_scaled_space(file).algebra(), file, g, out);
    }
    if (!depth) throw InputError("give a scaled-space file, or a graph with --depth");
    Space s = load_space(a, g);
    auto dec = decompose(s.graph, s.horizon(), radii_for(g, s.horizon()));
    if (*depth < 1 || *depth > dec.depth()) throw InputError("--depth must lie in 1.." + std::to_string(dec.depth()));
    auto model = graph_algebra_adapter(dec, s.graph, *depth);
    return report_algebra(model.algebra, s.source + " depth " + std::to_string(*depth), g, out);
}

// ---------------------------------------------------------------------------

struct EigensetArgs {
    std::string family;
    std::string set;
    std::string basepoint;
    std::string cone = "g";
    std::string cone_radii;
    std::vector<std::string> covers;
};

Cover parse_cover(const std::string& text, const Graph& graph) {
    if (text == "edge") return edge_cover(graph);
    if (text == "singleton") return singleton_cover(graph);
    if (text.rfind("ball:", 0) == 0) {
        auto r = parse_int_list(text.substr(5), "cover radius");
        if (r.size() != 1 || r[0] < 0) throw InputError("bad cover '" + text + "'");
        return ball_cover(graph, r[0]);
    }
    throw InputError("unknown cover '" + text + "' (use edge, singleton or ball:<r>)");
}

int cmd_eigenset(const SpaceArgs& a, const EigensetArgs& e, const Globals& g, std::ostream& out) {
    check_format(g, {"text", "json"});
    if (g.slack < 0) throw InputError("--slack must be nonnegative");
    Space s = load_space(a, g);
    const Graph& graph = s.graph;
    std::optional<LevelDecomposition> dec;
    auto need_dec = [&]() -> const LevelDecomposition& {
        if (!dec) dec = decompose(graph, s.horizon(), radii_for(g, s.horizon()));
        return *dec;
    };
    int basepoint = 0;
    if (!e.basepoint.empty()) {
        auto v = graph.find_label(e.basepoint);
        if (!v) throw InputError("unknown basepoint '" + e.basepoint + "'");
        basepoint = *v;
    }
    auto cone_radii = [&] {
        return e.cone_radii.empty() ? default_cone_radii(s.horizon()) : parse_int_list(e.cone_radii, "--cone-radii");
    };

    OperatorFamily family;
    if (e.family == "translations") {
        if (!s.cayley) throw InputError("the translations family needs a --preset");
        family = translation_family(*s.cayley);
    } else if (e.family == "stars") {
        std::vector<Cover> covers;
        for (const auto& c : e.covers.empty() ? std::vector<std::string>{"edge", "ball:1"} : e.covers) {
            covers.push_back(parse_cover(c, graph));
        }
        family = star_family(graph, covers);
    } else if (e.family == "components") {
        family = component_family(graph, need_dec());
    } else if (e.family == "cones") {
        auto radii = cone_radii();
        if (radii.empty()) throw HorizonError("no cone radius fits R/4");
        auto fams = cone_families(graph, radii, basepoint);
        if (e.cone == "cb") family = fams.cb;
        else if (e.cone == "bc") family = fams.bc;
        else if (e.cone == "g") family = fams.g;
        else throw InputError("--cone must be cb, bc or g");
    } else if (e.family == "gromov") {
        family = gromov_family(graph, e.cone_radii.empty() ? std::vector<int>{1, 2} : cone_radii(), basepoint);
    } else {
        throw InputError("unknown family '" + e.family + "'");
    }

    SetContext ctx{&graph, s.cayley ? &*s.cayley : nullptr, nullptr};
    if (e.set.rfind("component", 0) == 0) ctx.dec = &need_dec();
    const VertexSet set = parse_set_expr(e.set, ctx);
    const auto v = is_eigenset(set, family, graph, g.slack);

    if (g.format == "json") {
        json j;
        j["source"] = s.source;
        j["R"] = s.horizon().radius;
        j["shell"] = s.horizon().shell_width;
        j["slack"] = g.slack;
        j["set"] = e.set;
        j["set_size"] = set.count();
        auto verdict = verdict_json(v, family);
        for (auto& [k, val] : verdict.items()) j[k] = val;
        emit(out, j);
        return ok;
    }
    out << "set: " << e.set << " (" << plural(set.count(), "vertex", "vertices") << " within R " << s.horizon().radius << ")\n";
    out << "family: " << family.name << ", " << plural(static_cast<long long>(family.operators.size()), "operator") << "\n";
    out << "verdict: " << to_string(v.status) << "\n";
    if (v.bounding_radius) out << "bounding radius: " << *v.bounding_radius << "\n";
    for (const auto& op : v.operators) {
        out << "  " << op.op << ": " << to_string(op.status) << " (safe radius " << op.safe_radius << ", residue radius "
            << op.residue_radius << ")\n";
    }
    return ok;
}

// ---------------------------------------------------------------------------

struct GroupArgs {
    std::string test;
    std::string set;
    std::vector<std::string> b;
    std::string action;
    int samples = 100;
    int k = 1;
    int depth = 3;
};

std::vector<Element> parse_elements(const GroupOracle& oracle, const std::vector<std::string>& texts) {
    std::vector<Element> out;
    for (const auto& t : texts) {
        auto e = oracle.parse(t);
        if (!e) throw InputError("cannot parse group element '" + t + "' for " + oracle.name());
        out.push_back(*e);
    }
    return out;
}

int fuzz_report(const std::string& suite, const std::string& preset, const GroupArgs& ga, const Globals& g,
                std::ostream& out) {
    fuzz::Options opt;
    opt.seed = g.seed;
    opt.instances = ga.samples;
    opt.presets = {preset};
    opt.radius = g.radius;
    opt.slack = g.slack;
    auto reps = fuzz::run_suite(suite, opt);
    if (g.format == "json") {
        emit(out, fuzz::report_json(reps, opt));
    } else {
        out << fuzz::report_text(reps);
    }
    for (const auto& r : reps) {
        if (r.failed) return property_failure;
    }
    return ok;
}

GroupAction action_from(const GroupArgs& ga, const Globals& g) {
    if (ga.action.empty()) throw InputError("--test " + ga.test + " needs --action <file>");
    if (!g.radius) throw InputError("--R is required");
    return load_action(ga.action, Horizon{*g.radius, g.shell});
}

const char* tri(Tri t) { return to_string(t); }

int cmd_group(const std::string& preset_name, const GroupArgs& ga, const Globals& g, std::ostream& out) {
    check_format(g, {"text", "json"});
    if (ga.samples < 1) throw InputError("--samples must be positive");
    const std::string& t = ga.test;
    const bool needs_group = t != "action" && t != "covers" && t != "compare-ends";
    if (needs_group && preset_name.empty()) throw InputError("--test " + t + " needs --preset");
    if (needs_group && !g.radius) throw InputError("--R is required with --preset");

    if ((t == "star-identity" || t == "duality") && ga.set.empty()) {
        return fuzz_report(t == "duality" ? "inversion-duality" : "star-identity", preset_name, ga, g, out);
    }

    json j;
    j["test"] = t;
    int code = ok;
    std::ostringstream text;
    std::optional<ScaledGroup> group;
    if (needs_group) {
        Horizon h{*g.radius, g.shell};
        h.validate();
        group = make_scaled_group(parse_preset(preset_name), h);
        j["preset"] = preset_name;
        j["R"] = h.radius;
    }
    auto set_in = [&](const CayleyGraph& c) {
        SetContext ctx{&c.graph, &c, nullptr};
        return parse_set_expr(ga.set, ctx);
    };

    if (t == "star-identity") {
        if (ga.b.empty()) throw InputError("--B is required with --set");
        auto res = star_identity_check(*group, set_in(group->cayley), parse_elements(group->oracle(), ga.b));
        j["equal"] = res.equal;
        j["safe_radius"] = res.safe_radius;
        j["lhs_size"] = res.lhs.count();
        j["rhs_size"] = res.rhs.count();
        text << "star identity: " << (res.equal ? "exact" : "FAILED") << " within ball(" << res.safe_radius << "), "
             << plural(res.lhs.count(), "vertex", "vertices") << " on each side\n";
        if (!res.equal) code = property_failure;
    } else if (t == "duality") {
        auto res = inversion_duality_check(*group, set_in(group->cayley), g.slack);
        j["ok"] = res.ok;
        j["left"] = to_string(res.left);
        j["right_inverse"] = to_string(res.right_inverse);
        text << "A under left multiplication: " << to_string(res.left) << "\n";
        text << "A^-1 under right multiplication: " << to_string(res.right_inverse) << "\n";
        text << "duality: " << (res.ok ? "holds" : "FAILED") << "\n";
        if (!res.ok) code = property_failure;
    } else if (t == "scale") {
        auto res = check_scale(*group);
        j["closed"] = res.closed;
        j["covers"] = res.covers;
        j["pairs_checked"] = res.pairs_checked;
        text << "scale basis: closed " << yes_no(res.closed) << ", covers " << yes_no(res.covers) << " ("
             << plural(res.pairs_checked, "pair") << " checked)\n";
        if (!res.failure.empty()) text << "  " << res.failure << "\n";
        if (!res.closed || !res.covers) code = property_failure;
    } else if (t == "locally-bounded") {
        if (ga.b.empty()) throw InputError("--B is required");
        Tri r = locally_bounded_check(*group, parse_elements(group->oracle(), ga.b));
        j["locally_bounded"] = tri(r);
        text << "subgroup generated by B bounded: " << tri(r) << "\n";
    } else if (t == "bounded-geometry") {
        auto res = bounded_geometry_check(*group, ga.k);
        j["verdict"] = tri(res.verdict);
        j["k_radius"] = res.k_radius;
        j["sample_radii"] = res.sample_radii;
        j["translates"] = res.translates;
        text << "bounded geometry with K = ball(" << res.k_radius << "): " << tri(res.verdict) << "\n";
        for (std::size_t i = 0; i < res.sample_radii.size(); ++i) {
            text << "  ball(" << res.sample_radii[i] << ") covered by " << plural(res.translates[i], "translate") << "\n";
        }
    } else if (t == "end-agreement") {
        auto radii = radii_for(g, group->graph().horizon());
        auto res = end_space_agreement(*group, radii, ga.depth, g.slack);
        j["depth"] = ga.depth;
        j["engine_count"] = res.engine_count;
        j["algebra_ends"] = res.algebra_ends;
        j["atoms_are_eigensets"] = res.atoms_are_eigensets;
        j["agree"] = res.agree;
        text << "depth " << ga.depth << ": end tree " << res.engine_count << ", eigenset algebra " << res.algebra_ends
             << "; component inverses are eigensets: " << yes_no(res.atoms_are_eigensets) << "; agree: " << yes_no(res.agree)
             << "\n";
        if (!res.agree) code = property_failure;
    } else if (t == "action" || t == "covers" || t == "compare-ends") {
        GroupAction act = action_from(ga, g);
        j["action"] = act.name;
        auto checks = action_checks(act);
        j["proper"] = tri(checks.proper);
        j["cobounded"] = tri(checks.cobounded);
        text << "action: " << act.name << "\n";
        text << "proper: " << tri(checks.proper) << "; cobounded: " << tri(checks.cobounded);
        if (checks.cobounding_radius >= 0) text << " (radius " << checks.cobounding_radius << ")";
        text << "\n";
        if (!checks.note.empty()) text << "note: " << checks.note << "\n";
        if (t == "action") {
            auto sc = subgroup_scale_check(act);
            j["subgroup_scale_closed"] = sc.closed;
            text << "subgroup scale: closed " << yes_no(sc.closed) << " (" << plural(sc.pairs_checked, "pair") << ")\n";
            if (!sc.closed) code = property_failure;
            if (!ga.set.empty()) {
                auto se = same_eigensets_check(act, set_in(act.space.cayley), g.slack);
                j["per_element"] = to_string(se.per_element);
                j["per_scale_set"] = to_string(se.per_scale_set);
                text << "eigenset under {m_g}: " << to_string(se.per_element) << "; under {m_B}: "
                     << to_string(se.per_scale_set) << "\n";
                if (!se.ok) code = property_failure;
            }
        } else if (t == "covers") {
            auto res = induced_cover_comparison(act, act.space.ball(ga.k));
            j["refinement"] = res.refinement;
            j["orbit_map"] = res.orbit_map;
            j["translates_checked"] = res.translates_checked;
            text << "covers with B = ball(" << ga.k << "): refinement " << yes_no(res.refinement) << ", orbit map "
                 << yes_no(res.orbit_map) << " (" << plural(res.translates_checked, "translate") << ")\n";
            if (!res.refinement || !res.orbit_map) code = property_failure;
        } else {
            auto radii = radii_for(g, act.space.graph().horizon());
            auto res = compare_action_end_spaces(act, radii, ga.depth, g.slack);
            j["group_ends"] = res.group_ends ? json(*res.group_ends) : json(nullptr);
            j["space_ends"] = res.space_ends ? json(*res.space_ends) : json(nullptr);
            j["outcome"] = res.outcome;
            auto show = [](const std::optional<int>& v) { return v ? std::to_string(*v) : std::string("?"); };
            text << "ends at depth " << ga.depth << ": group " << show(res.group_ends) << ", space " << show(res.space_ends)
                 << "; " << res.outcome << "\n";
        }
    } else {
        throw InputError("unknown test '" + t + "'");
    }
    if (g.format == "json") {
        j["ok"] = code == ok;
        emit(out, j);
    } else {
        out << text.str();
    }
    return code;
}

// ---------------------------------------------------------------------------

int cmd_fuzz(const std::vector<std::string>& suites, const std::vector<std::string>& presets, int instances, bool list,
             const Globals& g, std::ostream& out) {
    check_format(g, {"text", "json"});
    if (list) {
        for (const auto& s : fuzz::suite_names()) out << s << "\n";
        return ok;
    }
    fuzz::Options opt;
    opt.seed = g.seed;
    opt.instances = instances;
    opt.presets = presets;
    opt.radius = g.radius;
    opt.slack = g.slack;
    const auto& names = suites.empty() ? fuzz::suite_names() : suites;
    std::vector<fuzz::SuiteReport> reports;
    for (const auto& s : names) {
        auto r = fuzz::run_suite(s, opt);
        reports.insert(reports.end(), r.begin(), r.end());
    }
    if (g.format == "json") {
        emit(out, fuzz::report_json(reports, opt));
    } else {
        out << fuzz::report_text(reports);
    }
    return std::any_of(reports.begin(), reports.end(), [](const fuzz::SuiteReport& r) { return r.failed > 0; })
               ? property_failure
               : ok;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Ends of graphs, groups and finite scaled Boolean algebras", "endslab"};
    app.require_subcommand(1);
    app.fallthrough();

    Globals g;
    int radius = 0;
    auto* r_opt = app.add_option("--R", radius, "horizon radius");
    app.add_option("--shell", g.shell, "shell width")->capture_default_str();
    app.add_option("--slack", g.slack, "eigenset slack")->capture_default_str();
    app.add_option("--seed", g.seed, "random seed")->capture_default_str();
    app.add_option("--format", g.format, "text, json or dot")->capture_default_str();
    app.add_option("--radii", g.radii, "level radii, e.g. 1,2,3 or 1..5");

    SpaceArgs space;
    auto add_space = [&](CLI::App* cmd) {
        cmd->add_option("--preset", space.preset, "Z, Z2, Zd, Fk, Dinf or custom:<name>");
        cmd->add_option("--graph", space.graph_path, "graph file");
    };

    auto* ends = app.add_subcommand("ends", "end counts and end trees");
    ends->require_subcommand(1);
    auto* count = ends->add_subcommand("count", "unbounded components per level and the verdict");
    add_space(count);
    auto* tree = ends->add_subcommand("tree", "end tree as text, json or dot");
    add_space(tree);
    int tree_depth = 0;
    auto* tree_depth_opt = tree->add_option("--depth", tree_depth, "list the branch prefixes at this depth");

    auto* ba = app.add_subcommand("ba", "ends and compactification of a finite scaled Boolean algebra");
    std::string ba_file;
    ba->add_option("file", ba_file, "scaled-space file");
    add_space(ba);
    int ba_depth = 0;
    auto* ba_depth_opt = ba->add_option("--depth", ba_depth, "level of the graph adapter");

    auto* eig = app.add_subcommand("eigenset", "eigenset verdicts");
    eig->require_subcommand(1);
    auto* eig_check = eig->add_subcommand("check", "verdict of one set under one operator family");
    add_space(eig_check);
    EigensetArgs ea;
    eig_check->add_option("--family", ea.family, "translations, stars, components, cones or gromov")->required();
    eig_check->add_option("--set", ea.set, "set expression or vertex list file")->required();
    eig_check->add_option("--basepoint", ea.basepoint, "cone basepoint label");
    eig_check->add_option("--cone", ea.cone, "cone variant: cb, bc or g")->capture_default_str();
    eig_check->add_option("--cone-radii", ea.cone_radii, "cone or Gromov radii");
    eig_check->add_option("--cover", ea.covers, "star covers: edge, singleton, ball:<r>");

    auto* grp = app.add_subcommand("group", "scaled group checks");
    grp->require_subcommand(1);
    auto* grp_check = grp->add_subcommand("check", "run one check");
    std::string grp_preset;
    GroupArgs ga;
    grp_check->add_option("--preset", grp_preset, "group preset");
    grp_check->add_option("--test", ga.test,
                          "star-identity, duality, scale, locally-bounded, bounded-geometry, end-agreement, action, "
                          "covers or compare-ends")
        ->required();
    grp_check->add_option("--set", ga.set, "set expression; without it star-identity and duality sample random sets");
    grp_check->add_option("--B", ga.b, "group elements");
    grp_check->add_option("--action", ga.action, "action file");
    grp_check->add_option("--samples", ga.samples, "random instances")->capture_default_str();
    grp_check->add_option("--k", ga.k, "ball radius for covers and bounded geometry")->capture_default_str();
    grp_check->add_option("--depth", ga.depth, "level for end comparisons")->capture_default_str();

    auto* fz = app.add_subcommand("fuzz", "randomized property suites");
    std::vector<std::string> suites, presets;
    int instances = 200;
    bool list = false;
    fz->add_option("--suite", suites, "suite names (default: all)");
    fz->add_option("--preset", presets, "presets for graph suites (default: Z Z2 F2)");
    fz->add_option("--instances", instances, "instances per suite and preset")->capture_default_str();
    fz->add_flag("--list", list, "list the suites");

    for (auto* c : {ends, count, tree, ba, eig, eig_check, grp, grp_check, fz}) c->fallthrough();

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        err << "endslab: " << e.what() << "\n";
        return usage_error;
    }
    if (r_opt->count()) g.radius = radius;

    try {
        if (count->parsed()) return cmd_ends_count(space, g, out);
        if (tree->parsed()) {
            return cmd_ends_tree(space, g, tree_depth_opt->count() ? std::optional<int>(tree_depth) : std::nullopt, out);
        }
        if (ba->parsed()) return cmd_ba(ba_file, space, ba_depth_opt->count() ? std::optional<int>(ba_depth) : std::nullopt, g, out);
        if (eig_check->parsed()) return cmd_eigenset(space, ea, g, out);
        if (grp_check->parsed()) return cmd_group(grp_preset, ga, g, out);
        if (fz->parsed()) return cmd_fuzz(suites, presets, instances, list, g, out);
    } catch (const InputError& e) {
        err << "endslab: " << e.what() << "\n";
        return usage_error;
    } catch (const InvariantError& e) {
        err << "endslab: invariant violated: " << e.what() << "\n";
        return property_failure;
    }
    return usage_error;
}

}  // namespace endslab::cli
