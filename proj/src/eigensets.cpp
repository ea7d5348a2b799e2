#include "endslab/eigensets.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <memory>
#include <unordered_map>

#include "endslab/error.hpp"

namespace endslab {

const char* to_string(EigenStatus s) {
    switch (s) {
        case EigenStatus::eigenset: return "eigenset";
        case EigenStatus::undetermined: return "undetermined";
        case EigenStatus::not_eigenset: return "not_eigenset";
    }
    return "undetermined";
}

namespace {

int max_depth_in(const Graph& graph, const VertexSet& s) {
    int m = -1;
    s.for_each([&](int v) { m = std::max(m, graph.depth(v)); });
    return m;
}

}  // namespace

EigensetVerdict is_eigenset(const VertexSet& a, const OperatorFamily& family, const Graph& graph, int slack) {
    if (family.operators.empty()) throw InputError("operator family '" + family.name + "' is empty");
    if (slack < 0) throw InputError("slack must be nonnegative");
    const Horizon& h = graph.horizon();
    const VertexSet rest = graph.all() - a;
    EigensetVerdict out;
    int bound = 0;
    for (const auto& op : family.operators) {
        OperatorVerdict ov;
        ov.op = op.name;
        ov.safe_radius = h.radius - op.safety_margin;
        if (ov.safe_radius < 0) {
            ov.status = EigenStatus::undetermined;
            ov.residue = ov.complement_residue = graph.empty_set();
        } else {
            VertexSet safe = graph.depth_ball(ov.safe_radius);
            ov.residue = (op.apply(a) ^ a) & safe;
            ov.complement_residue = (op.apply(rest) ^ rest) & safe;
            ov.residue_radius = std::max(max_depth_in(graph, ov.residue), max_depth_in(graph, ov.complement_residue));
            if (ov.residue_radius >= ov.safe_radius - h.shell_width + 1) {
                ov.status = EigenStatus::not_eigenset;
            } else if (ov.residue_radius <= ov.safe_radius - slack) {
                ov.status = EigenStatus::eigenset;
            } else {
                ov.status = EigenStatus::undetermined;
            }
        }
        out.status = std::max(out.status, ov.status);
        bound = std::max(bound, ov.residue_radius);
        out.operators.push_back(std::move(ov));
    }
    if (out.status == EigenStatus::eigenset) out.bounding_radius = bound;
    return out;
}

OperatorFamily translation_family(const CayleyGraph& cayley) {
    OperatorFamily fam;
    fam.name = "translations";
    const auto& gens = cayley.oracle().generators();
    auto table = std::make_shared<const std::vector<std::vector<int>>>(cayley.right_mult);
    for (std::size_t i = 0; i < gens.size(); ++i) {
        Operator op;
        op.name = "right*" + cayley.oracle().format(gens[i]);
        op.safety_margin = 1;
        op.apply = [table, i](const VertexSet& a) {
            VertexSet out(a.universe());
            const auto& t = (*table)[i];
            a.for_each([&](int v) {
                if (t[v] >= 0) out.insert(t[v]);
            });
            return out;
        };
        fam.operators.push_back(std::move(op));
    }
    if (fam.operators.empty()) throw InputError("group has no generators; translation family would be empty");
    return fam;
}

namespace {

// Vertices within distance r of v, without a full-universe bitset.
std::vector<int> local_ball(const Graph& graph, int v, int r) {
    std::vector<int> out{v};
    std::unordered_map<int, int> dist{{v, 0}};
    for (std::size_t i = 0; i < out.size(); ++i) {
        int u = out[i];
        int du = dist[u];
        if (du == r) continue;
        for (int w : graph.neighbors(u)) {
            if (dist.emplace(w, du + 1).second) out.push_back(w);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace

void validate_cover(const Graph& graph, const Cover& cover) {
    VertexSet covered = graph.empty_set();
    for (std::size_t k = 0; k < cover.elements.size(); ++k) {
        const auto& el = cover.elements[k];
        for (int v : el) {
            if (v < 0 || v >= graph.size()) throw InputError("cover '" + cover.name + "' has a vertex out of range");
            covered.insert(v);
        }
        for (int u : el) {
            auto near = local_ball(graph, u, cover.diameter);
            for (int w : el) {
                if (!std::binary_search(near.begin(), near.end(), w)) {
                    throw InputError("cover '" + cover.name + "' element " + std::to_string(k) +
                                     " has diameter above the declared " + std::to_string(cover.diameter));
                }
            }
        }
    }
    if (covered != graph.all()) {
        throw InputError("cover '" + cover.name + "' misses vertex " + graph.label((graph.all() - covered).first()));
    }
}

Cover singleton_cover(const Graph& graph) {
    Cover c{"singletons", {}, 0};
    for (int v = 0; v < graph.size(); ++v) c.elements.push_back({v});
    return c;
}

Cover edge_cover(const Graph& graph) {
    Cover c{"edges", {}, 1};
    for (int v = 0; v < graph.size(); ++v) {
        if (graph.neighbors(v).empty()) c.elements.push_back({v});
        for (int w : graph.neighbors(v)) {
            if (v < w) c.elements.push_back({v, w});
        }
    }
    return c;
}

Cover ball_cover(const Graph& graph, int r) {
    Cover c{"balls" + std::to_string(r), {}, 2 * r};
    for (int v = 0; v < graph.size(); ++v) {
        c.elements.push_back(local_ball(graph, v, r));
    }
    return c;
}

VertexSet star(const VertexSet& a, const Cover& cover) {
    VertexSet out(a.universe());
    for (const auto& el : cover.elements) {
        bool meets = std::any_of(el.begin(), el.end(), [&](int v) { return a.contains(v); });
        if (meets) {
            for (int v : el) out.insert(v);
        }
    }
    return out;
}

OperatorFamily star_family(const Graph& graph, const std::vector<Cover>& covers) {
    OperatorFamily fam;
    fam.name = "stars";
    for (const auto& c : covers) {
        validate_cover(graph, c);
        // Index vertex -> cover elements, so st(A) costs O(|A| * degree).
        auto shared = std::make_shared<Cover>(c);
        auto by_vertex = std::make_shared<std::vector<std::vector<int>>>(graph.size());
        for (std::size_t k = 0; k < c.elements.size(); ++k) {
            for (int v : c.elements[k]) (*by_vertex)[v].push_back(static_cast<int>(k));
        }
        Operator op;
        op.name = "star:" + c.name;
        op.safety_margin = c.diameter;
        op.apply = [shared, by_vertex](const VertexSet& a) {
            VertexSet out(a.universe());
            a.for_each([&](int v) {
                for (int k : (*by_vertex)[v]) {
                    for (int w : shared->elements[k]) out.insert(w);
                }
            });
            return out;
        };
        fam.operators.push_back(std::move(op));
    }
    if (fam.operators.empty()) throw InputError("star family needs at least one cover");
    return fam;
}

namespace {

// Component index per vertex at one level, -1 inside the ball.
std::vector<int> level_labels(const Graph& graph, const Level& level) {
    std::vector<int> label(graph.size(), -1);
    for (std::size_t c = 0; c < level.components.size(); ++c) {
        for (int v : level.components[c].vertices) label[v] = static_cast<int>(c);
    }
    return label;
}

bool cuts_no_component(const VertexSet& a, const Level& level) {
    for (const auto& comp : level.components) {
        bool some = false, all = true;
        for (int v : comp.vertices) {
            bool in = a.contains(v);
            some = some || in;
            all = all && in;
        }
        if (some && !all) return false;
    }
    return true;
}

}  // namespace

bool is_component_union(const VertexSet& a, const Graph& /*graph*/, const LevelDecomposition& dec) {
    if (dec.levels.empty()) throw InputError("decomposition has no levels");
    return cuts_no_component(a, dec.levels.back());
}

OperatorFamily component_family(const Graph& graph, const LevelDecomposition& dec) {
    if (dec.levels.empty()) throw InputError("decomposition has no levels");
    OperatorFamily fam;
    fam.name = "components";
    auto shared = std::make_shared<LevelDecomposition>(dec);
    const int outer = dec.levels.back().radius;
    for (int n = 0; n < dec.depth(); ++n) {
        auto labels = std::make_shared<std::vector<int>>(level_labels(graph, dec.levels[n]));
        std::vector<int> depth(graph.size());
        for (int v = 0; v < graph.size(); ++v) depth[v] = graph.depth(v);
        Operator op;
        op.name = "component:r=" + std::to_string(dec.levels[n].radius);
        op.safety_margin = 0;
        op.apply = [shared, labels, n, outer, depth = std::move(depth)](const VertexSet& a) {
            if (cuts_no_component(a, shared->levels.back())) return a;
            const Level& level = shared->levels[n];
            std::vector<char> hit(level.components.size(), 0);
            a.for_each([&](int v) {
                int c = (*labels)[v];
                if (c >= 0 && depth[v] >= outer) hit[c] = 1;
            });
            VertexSet out(a.universe());
            for (int c : level.unbounded) {
                if (!hit[c]) continue;
                for (int v : level.components[c].vertices) out.insert(v);
            }
            return out;
        };
        fam.operators.push_back(std::move(op));
    }
    return fam;
}

namespace {

VertexSet cone_with(const Graph& graph, const VertexSet& a, const std::vector<int>& dist) {
    int top = 0;
    for (int d : dist) top = std::max(top, d);
    std::vector<std::vector<int>> layer(top + 1);
    VertexSet out = a;
    a.for_each([&](int v) {
        if (dist[v] >= 0) layer[dist[v]].push_back(v);
    });
    for (int d = top; d > 0; --d) {
        for (int v : layer[d]) {
            for (int u : graph.neighbors(v)) {
                if (dist[u] == d - 1 && !out.contains(u)) {
                    out.insert(u);
                    layer[d - 1].push_back(u);
                }
            }
        }
    }
    return out;
}

}  // namespace

VertexSet cone(const Graph& graph, const VertexSet& a, int basepoint) {
    if (basepoint == graph.basepoint()) {
        std::vector<int> dist(graph.size());
        for (int v = 0; v < graph.size(); ++v) dist[v] = graph.depth(v);
        return cone_with(graph, a, dist);
    }
    return cone_with(graph, a, bfs_distances(graph, basepoint));
}

std::vector<int> default_cone_radii(const Horizon& horizon) {
    std::vector<int> out;
    for (int r : {1, 2, 4}) {
        if (4 * r <= horizon.radius) out.push_back(r);
    }
    return out;
}

ConeFamilies cone_families(const Graph& graph, const std::vector<int>& radii, int basepoint) {
    if (radii.empty()) throw HorizonError("no cone radius fits the horizon (need r <= R/4)");
    if (basepoint < 0 || basepoint >= graph.size()) throw InputError("cone basepoint is not a vertex");
    const int R = graph.horizon().radius;
    auto dist = std::make_shared<std::vector<int>>(bfs_distances(graph, basepoint));
    const int shift = 2 * graph.depth(basepoint);
    ConeFamilies out{{"cb", {}}, {"bc", {}}, {"g", {}}};
    for (int r : radii) {
        if (r <= 0) throw InputError("cone radius must be positive");
        if (4 * r > R) {
            throw HorizonError("cone radius " + std::to_string(r) + " is too large for R = " + std::to_string(R) +
                               " (need r <= R/4)");
        }
        const Graph* g = &graph;
        std::string suffix = "_" + std::to_string(r);
        out.cb.operators.push_back({"cb" + suffix,
                                    [g, dist, r](const VertexSet& a) {
                                        return cone_with(*g, neighborhood(*g, a, r), *dist);
                                    },
                                    2 * r + shift});
        out.bc.operators.push_back({"bc" + suffix,
                                    [g, dist, r](const VertexSet& a) {
                                        return neighborhood(*g, cone_with(*g, a, *dist), r);
                                    },
                                    2 * r + shift});
        out.g.operators.push_back({"g" + suffix,
                                   [g, dist, r](const VertexSet& a) {
                                       return neighborhood(*g, cone_with(*g, neighborhood(*g, a, r), *dist), r);
                                   },
                                   2 * r + shift});
    }
    return out;
}

Operator gromov_operator(const Graph& graph, int basepoint, int r) {
    if (r < 0) throw InputError("gromov radius must be nonnegative");
    if (basepoint < 0 || basepoint >= graph.size()) throw InputError("gromov basepoint is not a vertex");
    auto dist = std::make_shared<std::vector<int>>(bfs_distances(graph, basepoint));
    const Graph* g = &graph;
    Operator op;
    op.name = "gromov_" + std::to_string(r);
    op.safety_margin = 2 * r;
    // <x,y>_p > r  <=>  d(x,p) + h(x) > 2r,  h(x) = max_{y in A} d(y,p) - d(x,y).
    // -h is a multi-source shortest distance with start values -d(y,p);
    // unit edges make a bucket queue enough.
    op.apply = [g, dist, r](const VertexSet& a) {
        const int n = g->size();
        VertexSet out(n);
        if (a.empty()) return out;
        int top = 0;
        for (int d : *dist) top = std::max(top, d);
        constexpr int unset = std::numeric_limits<int>::max();
        std::vector<int> c(n, unset);  // c = -h shifted by top, so buckets start at 0
        std::vector<std::vector<int>> bucket(top + n + 1);
        a.for_each([&](int y) {
            if ((*dist)[y] < 0) return;
            int key = top - (*dist)[y];
            if (key < c[y]) {
                c[y] = key;
                bucket[key].push_back(y);
            }
        });
        for (std::size_t k = 0; k < bucket.size(); ++k) {
            for (std::size_t i = 0; i < bucket[k].size(); ++i) {
                int u = bucket[k][i];
                if (c[u] != static_cast<int>(k)) continue;
                for (int w : g->neighbors(u)) {
                    if (c[w] > static_cast<int>(k) + 1) {
                        c[w] = static_cast<int>(k) + 1;
                        bucket[k + 1].push_back(w);
                    }
                }
            }
        }
        for (int x = 0; x < n; ++x) {
            if (c[x] == unset || (*dist)[x] < 0) continue;
            int h = top - c[x];
            if ((*dist)[x] + h > 2 * r) out.insert(x);
        }
        return out;
    };
    return op;
}

OperatorFamily gromov_family(const Graph& graph, const std::vector<int>& radii, int basepoint) {
    OperatorFamily fam;
    fam.name = "gromov";
    for (int r : radii) fam.operators.push_back(gromov_operator(graph, basepoint, r));
    if (fam.operators.empty()) throw InputError("gromov family needs at least one radius");
    return fam;
}

ClosureResult closure_check(const VertexSet& a, const VertexSet& c, const OperatorFamily& family,
                            const Graph& graph, int slack) {
    ClosureResult res;
    res.union_status = is_eigenset(a | c, family, graph, slack).status;
    res.intersection_status = is_eigenset(a & c, family, graph, slack).status;
    res.difference_status = is_eigenset(c - a, family, graph, slack).status;
    res.ok = res.union_status != EigenStatus::not_eigenset &&
             res.intersection_status != EigenStatus::not_eigenset &&
             res.difference_status != EigenStatus::not_eigenset;
    return res;
}

nlohmann::ordered_json verdict_json(const EigensetVerdict& v, const OperatorFamily& family) {
    using json = nlohmann::ordered_json;
    json out;
    out["family"] = family.name;
    out["status"] = to_string(v.status);
    out["bounding_radius"] = v.bounding_radius ? json(*v.bounding_radius) : json(nullptr);
    json ops = json::array();
    for (const auto& o : v.operators) {
        json j;
        j["operator"] = o.op;
        j["status"] = to_string(o.status);
        j["safe_radius"] = o.safe_radius;
        j["residue_radius"] = o.residue_radius;
        j["residue_size"] = o.residue.count();
        j["complement_residue_size"] = o.complement_residue.count();
        ops.push_back(std::move(j));
    }
    out["operators"] = std::move(ops);
    return out;
}

}  // namespace endslab
