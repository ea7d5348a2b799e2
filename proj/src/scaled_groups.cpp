#include "endslab/scaled_groups.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <map>
#include <memory>
#include <mutex>
#include <set>
#include <sstream>

#include "endslab/adapter.hpp"
#include "endslab/error.hpp"
#include "endslab/scaled_ba.hpp"

namespace endslab {

std::vector<Element> ScaledGroup::ball_elements(int k) const {
    std::vector<Element> out;
    for (int v = 0; v < graph().size() && graph().depth(v) <= k; ++v) out.push_back(cayley.elements[v]);
    return out;
}

ScaledGroup make_scaled_group(const GroupPreset& preset, Horizon horizon, std::vector<int> basis_radii) {
    ScaledGroup g;
    g.cayley = build_truncated_cayley(preset, horizon);
    if (basis_radii.empty()) {
        for (int k = 0; k <= horizon.radius; ++k) basis_radii.push_back(k);
    }
    for (int k : basis_radii) {
        if (k < 0) throw InputError("scale basis radius must be nonnegative");
    }
    g.basis_radii = std::move(basis_radii);
    const auto& o = g.oracle();
    const auto& gens = o.generators();
    g.left_mult.assign(gens.size(), std::vector<int>(g.graph().size(), -1));
    for (std::size_t i = 0; i < gens.size(); ++i) {
        for (int v = 0; v < g.graph().size(); ++v) {
            g.left_mult[i][v] = g.cayley.vertex_of(o.multiply(gens[i], g.cayley.elements[v]));
        }
    }
    return g;
}

ScaleCheck check_scale(const ScaledGroup& group) {
    ScaleCheck res;
    const auto& o = group.oracle();
    const int R = group.radius();
    for (int j : group.basis_radii) {
        for (int k : group.basis_radii) {
            if (j + k > R) continue;
            ++res.pairs_checked;
            auto bj = group.ball_elements(j), bk = group.ball_elements(k);
            for (const auto& x : bj) {
                for (const auto& y : bk) {
                    if (o.word_length(o.multiply(x, o.inverse(y))) > j + k) {
                        res.closed = false;
                        res.failure = "ball(" + std::to_string(j) + ") * ball(" + std::to_string(k) +
                                      ")^-1 leaves ball(" + std::to_string(j + k) + ")";
                        return res;
                    }
                }
            }
        }
    }
    int widest = -1;
    for (int k : group.basis_radii) widest = std::max(widest, k);
    res.covers = widest >= R;
    if (!res.covers) res.failure = "scale basis does not cover the truncation";
    return res;
}

VertexSet right_multiply(const ScaledGroup& g, const VertexSet& a, const std::vector<Element>& b) {
    VertexSet out = g.graph().empty_set();
    const auto& o = g.oracle();
    a.for_each([&](int v) {
        for (const auto& x : b) {
            int w = g.cayley.vertex_of(o.multiply(g.cayley.elements[v], x));
            if (w >= 0) out.insert(w);
        }
    });
    return out;
}

VertexSet left_multiply(const ScaledGroup& g, const std::vector<Element>& b, const VertexSet& a) {
    VertexSet out = g.graph().empty_set();
    const auto& o = g.oracle();
    a.for_each([&](int v) {
        for (const auto& x : b) {
            int w = g.cayley.vertex_of(o.multiply(x, g.cayley.elements[v]));
            if (w >= 0) out.insert(w);
        }
    });
    return out;
}

VertexSet inverse_set(const ScaledGroup& g, const VertexSet& a) {
    VertexSet out = g.graph().empty_set();
    a.for_each([&](int v) {
        int w = g.cayley.vertex_of(g.oracle().inverse(g.cayley.elements[v]));
        if (w < 0) throw InvariantError("inverse left the horizon; word length is not inversion invariant");
        out.insert(w);
    });
    return out;
}

namespace {

using Table = std::vector<std::vector<int>>;

VertexSet apply_table(const std::vector<int>& t, const VertexSet& a) {
    VertexSet out(a.universe());
    a.for_each([&](int v) {
        if (t[v] >= 0) out.insert(t[v]);
    });
    return out;
}

// ball(k) * A (or A * ball(k)) by k rounds of one-letter products.
VertexSet ball_product(const Table& tables, const VertexSet& a, int k) {
    VertexSet out = a;
    VertexSet frontier = a;
    for (int step = 0; step < k && !frontier.empty(); ++step) {
        VertexSet next(a.universe());
        for (const auto& t : tables) next |= apply_table(t, frontier);
        frontier = next - out;
        out |= next;
    }
    return out;
}

std::vector<int> sample_or_default(std::vector<int> radii) {
    if (radii.empty()) radii.push_back(1);
    for (int k : radii) {
        if (k < 1) throw InputError("scale sample radius must be positive");
    }
    return radii;
}

}  // namespace

FourFamilies four_families(const ScaledGroup& group, std::vector<int> sample_radii) {
    sample_radii = sample_or_default(std::move(sample_radii));
    const int margin = *std::max_element(sample_radii.begin(), sample_radii.end());
    if (margin > group.radius()) throw HorizonError("scale sample radius exceeds the horizon");
    auto right = std::make_shared<Table>(group.cayley.right_mult);
    auto left = std::make_shared<Table>(group.left_mult);
    FourFamilies f{{"rm_S", {}}, {"lm_S", {}}, {"rm_G", {}}, {"lm_G", {}}};
    for (int k : sample_radii) {
        std::string b = "ball" + std::to_string(k);
        f.rm_s.operators.push_back({"A*" + b, [right, k](const VertexSet& a) { return ball_product(*right, a, k); }, margin});
        f.lm_s.operators.push_back({b + "*A", [left, k](const VertexSet& a) { return ball_product(*left, a, k); }, margin});
    }
    const auto& gens = group.oracle().generators();
    for (std::size_t i = 0; i < gens.size(); ++i) {
        std::string s = group.oracle().format(gens[i]);
        f.rm_g.operators.push_back({"A*" + s, [right, i](const VertexSet& a) { return apply_table((*right)[i], a); }, 1});
        f.lm_g.operators.push_back({s + "*A", [left, i](const VertexSet& a) { return apply_table((*left)[i], a); }, 1});
    }
    if (gens.empty()) throw InputError("group has no generators");
    return f;
}

DualityResult inversion_duality_check(const ScaledGroup& group, const VertexSet& a, int slack,
                                      std::vector<int> sample_radii) {
    FourFamilies f = four_families(group, std::move(sample_radii));
    DualityResult res;
    res.left = is_eigenset(a, f.lm_s, group.graph(), slack).status;
    res.right_inverse = is_eigenset(inverse_set(group, a), f.rm_s, group.graph(), slack).status;
    res.ok = res.left == res.right_inverse || res.left == EigenStatus::undetermined ||
             res.right_inverse == EigenStatus::undetermined;
    return res;
}

StarIdentityResult star_identity_check(const ScaledGroup& group, const VertexSet& a, const std::vector<Element>& b) {
    const auto& o = group.oracle();
    const Graph& graph = group.graph();
    int width = 0;
    for (const auto& x : b) width = std::max(width, o.word_length(x));
    StarIdentityResult res;
    res.safe_radius = group.radius() - 2 * width;
    if (res.safe_radius < 0) {
        throw HorizonError("horizon too small: R = " + std::to_string(group.radius()) + " but B needs 2|B| = " +
                           std::to_string(2 * width));
    }
    const VertexSet safe = graph.depth_ball(res.safe_radius);

    // Left side: every cover element B*h, h in the truncation, that meets A.
    VertexSet star = graph.empty_set();
    for (int h = 0; h < graph.size(); ++h) {
        std::vector<int> cell;
        bool meets = false;
        for (const auto& x : b) {
            int w = group.cayley.vertex_of(o.multiply(x, group.cayley.elements[h]));
            if (w < 0) continue;
            cell.push_back(w);
            meets = meets || a.contains(w);
        }
        if (meets) {
            for (int w : cell) star.insert(w);
        }
    }
    res.lhs = (star - a) & safe;

    std::vector<Element> b_inv;
    for (const auto& x : b) b_inv.push_back(o.inverse(x));
    VertexSet rhs = left_multiply(group, b, left_multiply(group, b_inv, a));
    res.rhs = (rhs - a) & safe;
    res.residue = res.lhs ^ res.rhs;
    res.equal = res.residue.empty();
    return res;
}

const char* to_string(Tri t) {
    switch (t) {
        case Tri::yes: return "yes";
        case Tri::no: return "no";
        case Tri::undetermined: return "undetermined";
    }
    return "undetermined";
}

namespace {

std::map<std::string, ActionFunction>& action_registry() {
    static std::map<std::string, ActionFunction> r{
        {"trivial", [](const GroupOracle&, const Element&, const Element& x) { return x; }}};
    return r;
}
std::mutex& action_mutex() {
    static std::mutex m;
    return m;
}

}  // namespace

void register_action(const std::string& name, ActionFunction fn) {
    std::lock_guard lock(action_mutex());
    action_registry()[name] = std::move(fn);
}

int GroupAction::act(const Element& h, int x) const {
    return space.cayley.vertex_of(act_fn(space.oracle(), h, space.cayley.elements[x]));
}

VertexSet GroupAction::act(const Element& h, const VertexSet& a) const {
    VertexSet out = space.graph().empty_set();
    a.for_each([&](int x) {
        int y = act(h, x);
        if (y >= 0) out.insert(y);
    });
    return out;
}

std::vector<Element> GroupAction::subgroup_elements(int max_len) const {
    const auto& o = space.oracle();
    if (whole_group) {
        std::vector<Element> out;
        for (int v = 0; v < space.graph().size() && space.graph().depth(v) <= max_len; ++v) {
            out.push_back(space.cayley.elements[v]);
        }
        return out;
    }
    std::vector<Element> out{o.identity()};
    std::set<Element> seen{o.identity()};
    for (std::size_t i = 0; i < out.size(); ++i) {
        for (const auto& s : subgroup_generators) {
            Element y = o.multiply(out[i], s);
            if (o.word_length(y) > max_len) continue;
            if (seen.insert(y).second) out.push_back(y);
        }
    }
    return out;
}

bool GroupAction::subgroup_finite_within(int max_len) const {
    if (whole_group) return space.oracle().generators().empty();
    const auto& o = space.oracle();
    for (const auto& h : subgroup_elements(max_len)) {
        for (const auto& s : subgroup_generators) {
            if (o.word_length(o.multiply(h, s)) > max_len) return false;
        }
    }
    return true;
}

GroupAction make_action(const GroupPreset& space, Horizon horizon, const std::string& action,
                        std::optional<std::vector<std::string>> subgroup) {
    GroupAction a;
    a.space = make_scaled_group(space, horizon);
    a.name = action;
    const auto& o = a.space.oracle();
    if (action == "left-mult") {
        a.act_fn = [](const GroupOracle& g, const Element& h, const Element& x) { return g.multiply(h, x); };
    } else if (action == "translation") {
        a.act_fn = [](const GroupOracle& g, const Element& h, const Element& x) {
            return g.multiply(x, g.inverse(h));
        };
    } else if (action.rfind("custom:", 0) == 0) {
        std::lock_guard lock(action_mutex());
        auto it = action_registry().find(action.substr(7));
        if (it == action_registry().end()) throw InputError("no action registered as '" + action.substr(7) + "'");
        a.act_fn = it->second;
    } else {
        throw InputError("unknown action '" + action + "' (left-mult, translation, custom:<name>)");
    }
    if (!subgroup) {
        a.whole_group = true;
        a.subgroup_generators = o.generators();
    } else {
        std::set<Element> gens;
        for (const auto& text : *subgroup) {
            auto e = o.parse(text);
            if (!e) throw InputError("cannot parse subgroup generator '" + text + "' in " + o.name());
            if (*e == o.identity()) continue;
            gens.insert(*e);
            gens.insert(o.inverse(*e));
        }
        a.subgroup_generators.assign(gens.begin(), gens.end());
    }
    return a;
}

GroupAction parse_action(std::istream& in, Horizon horizon) {
    std::optional<std::string> space, action;
    std::optional<std::vector<std::string>> subgroup;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::string kw;
        if (!(ls >> kw)) continue;
        auto fail = [&](const std::string& what) {
            throw InputError("line " + std::to_string(line_no) + ": " + what);
        };
        if (kw == "space") {
            std::string v;
            if (!(ls >> v)) fail("expected a preset");
            space = v;
        } else if (kw == "action") {
            std::string v;
            if (!(ls >> v)) fail("expected an action");
            action = v;
        } else if (kw == "subgroup") {
            std::vector<std::string> gens;
            std::string tok;
            while (ls >> tok) gens.push_back(tok);
            subgroup = std::move(gens);
            continue;
        } else {
            fail("unknown directive '" + kw + "'");
        }
        std::string extra;
        if (ls >> extra) fail("trailing token '" + extra + "'");
    }
    if (!space) throw InputError("action file has no 'space' line");
    if (!action) throw InputError("action file has no 'action' line");
    return make_action(parse_preset(*space), horizon, *action, subgroup);
}

GroupAction load_action(const std::string& path, Horizon horizon) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open action file '" + path + "'");
    return parse_action(in, horizon);
}

ActionCheck action_checks(const GroupAction& action) {
    const int R = action.space.radius();
    const Graph& graph = action.space.graph();
    const auto& o = action.space.oracle();
    ActionCheck res;
    const auto elems = action.subgroup_elements(R);
    const bool finite = action.subgroup_finite_within(R / 2);

    for (int k = 0; k <= 2 && k <= R; ++k) {
        VertexSet orbit = graph.empty_set();
        VertexSet k0 = graph.depth_ball(k);
        for (const auto& h : elems) orbit |= action.act(h, k0);
        if (graph.depth_ball(R - k).is_subset_of(orbit)) {
            res.cobounded = Tri::yes;
            res.cobounding_radius = k;
            break;
        }
    }
    if (res.cobounded != Tri::yes && finite) res.cobounded = Tri::no;

    res.proper = Tri::yes;
    for (int k = 0; k <= 2 && k <= R; ++k) {
        VertexSet kset = graph.depth_ball(k);
        for (const auto& h : elems) {
            if (!action.act(h, kset).intersects(kset)) continue;
            res.max_stabilizer_length = std::max(res.max_stabilizer_length, o.word_length(h));
        }
    }
    if (res.max_stabilizer_length >= R - 1) {
        res.proper = Tri::no;
    } else if (res.max_stabilizer_length > R / 2) {
        res.proper = Tri::undetermined;
    }
    if (res.cobounded == Tri::undetermined) res.note = "orbit neither covers the safe zone nor closes up";
    return res;
}

CoverComparison induced_cover_comparison(const GroupAction& action, const VertexSet& b) {
    ActionCheck chk = action_checks(action);
    if (chk.proper != Tri::yes || chk.cobounded != Tri::yes) {
        throw InputError(std::string("cover comparison needs a proper and cobounded action (proper: ") +
                         to_string(chk.proper) + ", cobounded: " + to_string(chk.cobounded) + ")");
    }
    if (b.empty()) throw InputError("cover comparison needs a nonempty B");
    const int R = action.space.radius();
    const Graph& graph = action.space.graph();
    const auto& o = action.space.oracle();
    int b_radius = 0;
    b.for_each([&](int v) { b_radius = std::max(b_radius, graph.depth(v)); });

    const auto elems = action.subgroup_elements(R);
    std::vector<Element> stab;
    for (const auto& h : elems) {
        if (action.act(h, b).intersects(b)) stab.push_back(h);
    }
    int stab_len = 0;
    for (const auto& s : stab) stab_len = std::max(stab_len, o.word_length(s));

    CoverComparison res;
    res.stabilizer_size = static_cast<int>(stab.size());
    // Translates h*B far enough inside that every g*B meeting them, and
    // h*B'*B, stay within the horizon.
    const int reach = R / 2 - stab_len - b_radius;
    for (const auto& h : elems) {
        if (o.word_length(h) > reach) continue;
        VertexSet hb = action.act(h, b);
        VertexSet star = graph.empty_set();
        for (const auto& g : elems) {
            VertexSet gb = action.act(g, b);
            if (gb.intersects(hb)) star |= gb;
        }
        VertexSet target = graph.empty_set();
        for (const auto& s : stab) target |= action.act(o.multiply(h, s), b);
        res.refinement = res.refinement && star.is_subset_of(target);
        ++res.translates_checked;
    }
    // Orbit map g -> g . x0 on word balls of H.
    const int x0 = b.first();
    std::vector<Element> small;
    for (const auto& h : elems) {
        if (o.word_length(h) <= 1) small.push_back(h);
    }
    for (const auto& g : elems) {
        if (o.word_length(g) > R / 2 - 1) continue;
        for (const auto& s : small) {
            int direct = action.act(o.multiply(g, s), x0);
            int inner = action.act(s, x0);
            int composed = inner < 0 ? -1 : action.act(g, inner);
            res.orbit_map = res.orbit_map && direct == composed;
        }
    }
    return res;
}

SameEigensetsResult same_eigensets_check(const GroupAction& action, const VertexSet& a, int slack) {
    const auto& o = action.space.oracle();
    const Graph& graph = action.space.graph();
    auto shared = std::make_shared<GroupAction>(action);
    OperatorFamily per_element{"m_g", {}}, per_set{"m_B", {}};
    for (const auto& g : action.subgroup_generators) {
        per_element.operators.push_back({"m_" + o.format(g),
                                         [shared, g](const VertexSet& s) { return shared->act(g, s); },
                                         o.word_length(g)});
    }
    for (int k : {1, 2}) {
        std::vector<Element> ball;
        int width = 0;
        for (const auto& h : action.subgroup_elements(k * std::max(1, [&] {
                 int w = 0;
                 for (const auto& g : action.subgroup_generators) w = std::max(w, o.word_length(g));
                 return w;
             }()))) {
            ball.push_back(h);
            width = std::max(width, o.word_length(h));
        }
        per_set.operators.push_back({"m_ball" + std::to_string(k),
                                     [shared, ball](const VertexSet& s) {
                                         VertexSet out = shared->space.graph().empty_set();
                                         for (const auto& h : ball) out |= shared->act(h, s);
                                         return out;
                                     },
                                     width});
    }
    SameEigensetsResult res;
    if (per_element.operators.empty()) {
        // Trivial group: both families are the identity.
        per_element.operators.push_back({"id", [](const VertexSet& s) { return s; }, 0});
    }
    res.per_element = is_eigenset(a, per_element, graph, slack).status;
    res.per_scale_set = is_eigenset(a, per_set, graph, slack).status;
    res.ok = res.per_element == res.per_scale_set || res.per_element == EigenStatus::undetermined ||
             res.per_scale_set == EigenStatus::undetermined;
    return res;
}

ScaleCheck subgroup_scale_check(const GroupAction& action) {
    const auto& o = action.space.oracle();
    const int R = action.space.radius();
    ScaleCheck res;
    const auto elems = action.subgroup_elements(R);
    std::set<Element> in_h(elems.begin(), elems.end());
    for (int j = 0; j <= R / 2; ++j) {
        for (int k = 0; j + k <= R && k <= R / 2; ++k) {
            ++res.pairs_checked;
            for (const auto& x : elems) {
                if (o.word_length(x) > j) continue;
                for (const auto& y : elems) {
                    if (o.word_length(y) > k) continue;
                    Element z = o.multiply(x, o.inverse(y));
                    if (o.word_length(z) > j + k || !in_h.count(z)) {
                        res.closed = false;
                        res.failure = "(ball(" + std::to_string(j) + ") n H) * (ball(" + std::to_string(k) +
                                      ") n H)^-1 is not in ball(" + std::to_string(j + k) + ") n H";
                        return res;
                    }
                }
            }
        }
    }
    return res;
}

Tri locally_bounded_check(const ScaledGroup& group, const std::vector<Element>& b) {
    const auto& o = group.oracle();
    const int R = group.radius();
    std::set<Element> gens;
    for (const auto& x : b) {
        gens.insert(x);
        gens.insert(o.inverse(x));
    }
    std::vector<Element> found{o.identity()};
    std::set<Element> seen{o.identity()};
    int longest = 0;
    for (std::size_t i = 0; i < found.size(); ++i) {
        for (const auto& s : gens) {
            Element y = o.multiply(found[i], s);
            int len = o.word_length(y);
            longest = std::max(longest, len);
            if (len > R) continue;
            if (seen.insert(y).second) found.push_back(y);
        }
    }
    if (longest >= R - group.graph().horizon().shell_width + 1) return Tri::no;
    if (longest <= R / 2) return Tri::yes;
    return Tri::undetermined;
}

BoundedGeometryResult bounded_geometry_check(const ScaledGroup& group, int k_radius, std::vector<int> sample_radii) {
    const int R = group.radius();
    if (sample_radii.empty()) {
        for (int r = 1; r <= R / 2; r *= 2) sample_radii.push_back(r);
    }
    BoundedGeometryResult res;
    res.k_radius = k_radius;
    res.sample_radii = sample_radii;
    const auto kelems = group.ball_elements(k_radius);
    res.verdict = Tri::yes;
    for (int r : sample_radii) {
        if (r + k_radius > R) {
            res.verdict = Tri::undetermined;
            res.translates.push_back(-1);
            continue;
        }
        VertexSet target = group.ball(r);
        VertexSet covered = group.graph().empty_set();
        int used = 0;
        for (int v = target.first(); v >= 0; v = target.next(v)) {
            if (covered.contains(v)) continue;
            // g = v covers v since the identity lies in K.
            covered |= left_multiply(group, {group.cayley.elements[v]}, group.ball(k_radius));
            ++used;
        }
        (void)kelems;
        res.translates.push_back(used);
    }
    return res;
}

namespace {

// Ends of the algebra generated over the points closer than r_n by the given
// tails, each tail a set of vertices beyond r_n.
int count_tail_ends(const Graph& graph, int radius, const std::vector<VertexSet>& tails) {
    std::vector<int> item(graph.size(), -1);
    int points = 0;
    for (int v = 0; v < graph.size() && graph.depth(v) < radius; ++v) item[v] = points++;
    const int n = points + static_cast<int>(tails.size());
    std::vector<ItemSet> scale;
    for (int i = 0; i < points; ++i) scale.push_back(ItemSet::of(n, {i}));
    ScaledSpace space(points, static_cast<int>(tails.size()), std::move(scale));
    std::vector<ItemSet> gens;
    for (std::size_t t = 0; t < tails.size(); ++t) gens.push_back(ItemSet::of(n, {points + static_cast<int>(t)}));
    return static_cast<int>(enumerate_ends(generate_algebra(gens, space)).size());
}

}  // namespace

EndAgreement end_space_agreement(const ScaledGroup& group, const std::vector<int>& radii, int depth, int slack) {
    const Graph& graph = group.graph();
    LevelDecomposition dec = decompose(graph, graph.horizon(), radii);
    if (depth < 1 || depth > dec.depth()) throw InputError("depth outside the decomposition");
    const Level& level = dec.levels[depth - 1];
    FourFamilies f = four_families(group);
    EndAgreement res;
    res.engine_count = static_cast<int>(level.unbounded.size());
    std::vector<VertexSet> atoms;
    for (int c : level.unbounded) {
        VertexSet inv = inverse_set(group, level.components[c].as_set(graph));
        res.atoms_are_eigensets =
            res.atoms_are_eigensets && is_eigenset(inv, f.lm_s, graph, slack).status == EigenStatus::eigenset;
        atoms.push_back(std::move(inv));
    }
    res.algebra_ends = count_tail_ends(graph, level.radius, atoms);
    res.agree = res.atoms_are_eigensets && res.algebra_ends == res.engine_count;
    return res;
}

EndComparison compare_action_end_spaces(const GroupAction& action, const std::vector<int>& radii, int depth,
                                        int slack) {
    EndComparison res;
    const ScaledGroup& sg = action.space;
    const Graph& graph = sg.graph();
    EndAgreement g = end_space_agreement(sg, radii, depth, slack);
    if (g.atoms_are_eigensets) res.group_ends = g.algebra_ends;

    LevelDecomposition dec = decompose(graph, graph.horizon(), radii);
    const Level& level = dec.levels[depth - 1];
    const auto& o = sg.oracle();
    auto shared = std::make_shared<GroupAction>(action);
    OperatorFamily fam{"S_G.", {}};
    for (int k : {1, 2}) {
        std::vector<Element> ball;
        int width = 0;
        for (const auto& h : action.subgroup_elements(k)) {
            ball.push_back(h);
            width = std::max(width, o.word_length(h));
        }
        fam.operators.push_back({"m_ball" + std::to_string(k),
                                 [shared, ball](const VertexSet& s) {
                                     VertexSet out = shared->space.graph().empty_set();
                                     for (const auto& h : ball) out |= shared->act(h, s);
                                     return out;
                                 },
                                 width});
    }
    // Candidate atoms: the components themselves, or their inverses.
    for (int inverted = 0; inverted < 2 && !res.space_ends; ++inverted) {
        std::vector<VertexSet> atoms;
        bool all = true;
        for (int c : level.unbounded) {
            VertexSet s = level.components[c].as_set(graph);
            if (inverted) s = inverse_set(sg, s);
            all = all && is_eigenset(s, fam, graph, slack).status == EigenStatus::eigenset;
            atoms.push_back(std::move(s));
        }
        if (all) res.space_ends = count_tail_ends(graph, level.radius, atoms);
    }
    if (!res.group_ends || !res.space_ends) {
        res.outcome = "undetermined";
    } else {
        res.outcome = *res.group_ends == *res.space_ends ? "agree" : "disagree";
    }
    return res;
}

}  // namespace endslab
