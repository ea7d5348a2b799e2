#include "endslab/ends.hpp"

#include <algorithm>
#include <sstream>

#include "endslab/error.hpp"

namespace endslab {

std::vector<int> LevelDecomposition::counts() const {
    std::vector<int> c;
    c.reserve(levels.size());
    for (const auto& l : levels) c.push_back(static_cast<int>(l.unbounded.size()));
    return c;
}

std::vector<int> default_radii(const Horizon& horizon) {
    std::vector<int> r;
    for (int i = 1; i <= horizon.radius - 2 * horizon.shell_width; ++i) r.push_back(i);
    return r;
}

void validate_radii(const std::vector<int>& radii, const Horizon& horizon) {
    if (radii.empty()) throw InputError("radii sequence is empty");
    for (std::size_t i = 0; i < radii.size(); ++i) {
        int r = radii[i];
        std::string which = "radius r_" + std::to_string(i + 1) + " = " + std::to_string(r);
        if (r < 1) throw InputError(which + " is not positive");
        if (i > 0 && r <= radii[i - 1]) throw InputError(which + " is not larger than the previous radius");
        if (r + horizon.shell_width > horizon.radius) {
            throw HorizonError(which + " leaves no shell margin: r + shell_width = " +
                               std::to_string(r + horizon.shell_width) + " > R = " +
                               std::to_string(horizon.radius));
        }
    }
}

LevelDecomposition decompose(const Graph& graph, const Horizon& horizon, const std::vector<int>& radii) {
    horizon.validate();
    validate_radii(radii, horizon);

    LevelDecomposition dec;
    dec.horizon = horizon;
    dec.radii = radii;
    std::vector<int> prev_owner;  // vertex -> position in previous unbounded list

    for (int r : radii) {
        Level level;
        level.radius = r;
        VertexSet region = graph.all() - graph.depth_ball(r - 1);
        ComponentLabels labels = component_labels(graph, region);
        level.components.resize(labels.count);
        const int shell_start = horizon.shell_start();
        for (int v = 0; v < graph.size(); ++v) {
            int c = labels.label[v];
            if (c < 0) continue;
            auto& comp = level.components[c];
            comp.vertices.push_back(v);
            if (graph.depth(v) >= shell_start) comp.boundedness = Boundedness::unbounded_within_horizon;
        }
        for (auto& comp : level.components) {
            comp.size = static_cast<int>(comp.vertices.size());
            comp.representative = comp.vertices.front();
            if (!comp.unbounded()) {
                for (int v : comp.vertices) level.bounded_extent = std::max(level.bounded_extent, graph.depth(v));
            }
        }

        std::vector<int> owner(graph.size(), -1);
        for (int i = 0; i < static_cast<int>(level.components.size()); ++i) {
            if (!level.components[i].unbounded()) continue;
            int pos = static_cast<int>(level.unbounded.size());
            level.unbounded.push_back(i);
            const auto& comp = level.components[i];
            for (int v : comp.vertices) owner[v] = pos;
            if (dec.levels.empty()) {
                level.parent.push_back(-1);
                continue;
            }
            int p = prev_owner[comp.representative];
            bool inside = p >= 0;
            for (int v : comp.vertices) inside = inside && prev_owner[v] == p;
            if (!inside) {
                throw InvariantError("unbounded component at radius " + std::to_string(r) +
                                     " is not inside a single unbounded component of the previous level");
            }
            level.parent.push_back(p);
        }
        prev_owner = std::move(owner);
        dec.levels.push_back(std::move(level));
    }
    return dec;
}

EndTree end_tree(const LevelDecomposition& dec, const Graph& graph) {
    EndTree tree;
    tree.depth = dec.depth();
    tree.nodes.push_back({0, 0, -1, graph.size(), graph.basepoint(), -1, {}});

    std::vector<int> prev_ids{0};  // node ids of the previous depth, by unbounded position
    for (int n = 0; n < dec.depth(); ++n) {
        const Level& level = dec.levels[n];
        if (level.parent.size() != level.unbounded.size()) {
            throw InvariantError("refinement map is not total at level " + std::to_string(n + 1));
        }
        // Group by parent, then by representative.
        std::vector<int> order(level.unbounded.size());
        for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
        auto parent_node = [&](int pos) { return n == 0 ? 0 : prev_ids.at(level.parent[pos]); };
        std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
            int pa = parent_node(a), pb = parent_node(b);
            if (pa != pb) return pa < pb;
            return level.components[level.unbounded[a]].representative <
                   level.components[level.unbounded[b]].representative;
        });
        std::vector<int> ids(level.unbounded.size(), -1);
        for (int pos : order) {
            const auto& comp = level.components[level.unbounded[pos]];
            if (n > 0 && (level.parent[pos] < 0 || level.parent[pos] >= static_cast<int>(prev_ids.size()))) {
                throw InvariantError("refinement map is not total at level " + std::to_string(n + 1));
            }
            EndTreeNode node;
            node.id = static_cast<int>(tree.nodes.size());
            node.depth = n + 1;
            node.parent = parent_node(pos);
            node.size = comp.size;
            node.representative = comp.representative;
            node.component = level.unbounded[pos];
            tree.nodes[node.parent].children.push_back(node.id);
            ids[pos] = node.id;
            tree.nodes.push_back(std::move(node));
        }
        if (n > 0) {
            for (int id : prev_ids) {
                if (tree.nodes[id].children.empty()) {
                    throw InvariantError("unbounded component at level " + std::to_string(n) +
                                         " has no unbounded refinement at level " + std::to_string(n + 1));
                }
            }
        }
        prev_ids = std::move(ids);
    }
    return tree;
}

std::vector<int> EndTree::nodes_at_depth(int n) const {
    std::vector<int> out;
    for (const auto& node : nodes) {
        if (node.depth == n) out.push_back(node.id);
    }
    return out;
}

const char* to_string(EndVerdict v) {
    switch (v) {
        case EndVerdict::zero: return "zero";
        case EndVerdict::one: return "one";
        case EndVerdict::two: return "two";
        case EndVerdict::many_growing: return "many_growing";
        case EndVerdict::undetermined: return "undetermined";
    }
    return "undetermined";
}

EndClassification classify_counts(const std::vector<int>& counts) {
    EndClassification c;
    c.counts = counts;
    const int L = static_cast<int>(counts.size());
    for (int n = 0; n + 1 < L; ++n) {
        if (std::all_of(counts.begin() + n, counts.end(), [&](int x) { return x == counts[n]; })) {
            c.stabilization_level = n + 1;
            break;
        }
    }
    if (L < 3) {
        c.verdict = EndVerdict::undetermined;
        c.note = "fewer than 3 levels; no verdict";
        return c;
    }
    if (std::all_of(counts.begin(), counts.end(), [](int x) { return x == 0; })) {
        c.verdict = EndVerdict::zero;
        return c;
    }
    int a = counts[L - 3], b = counts[L - 2], d = counts[L - 1];
    if (a == b && b == d && (d == 1 || d == 2)) {
        c.verdict = d == 1 ? EndVerdict::one : EndVerdict::two;
    } else if (a < b && b < d) {
        c.verdict = EndVerdict::many_growing;
    } else {
        c.verdict = EndVerdict::undetermined;
        c.note = "final counts neither stable at 1 or 2 nor strictly increasing";
    }
    return c;
}

EndClassification classify(const LevelDecomposition& dec) { return classify_counts(dec.counts()); }

std::vector<std::vector<int>> ends_at_depth(const EndTree& tree, int n) {
    if (n < 1 || n > tree.depth) {
        throw InputError("depth " + std::to_string(n) + " outside 1.." + std::to_string(tree.depth));
    }
    std::vector<std::vector<int>> out;
    for (int id : tree.nodes_at_depth(n)) {
        std::vector<int> path;
        for (int cur = id; cur > 0; cur = tree.nodes[cur].parent) path.push_back(cur);
        std::reverse(path.begin(), path.end());
        out.push_back(std::move(path));
    }
    return out;
}

nlohmann::ordered_json end_tree_json(const EndTree& tree) {
    nlohmann::ordered_json nodes = nlohmann::ordered_json::array();
    for (const auto& n : tree.nodes) {
        nlohmann::ordered_json j;
        j["id"] = n.id;
        j["depth"] = n.depth;
        j["parent"] = n.parent < 0 ? nlohmann::ordered_json(nullptr) : nlohmann::ordered_json(n.parent);
        j["size"] = n.size;
        j["representative"] = n.representative;
        nodes.push_back(std::move(j));
    }
    nlohmann::ordered_json out;
    out["depth"] = tree.depth;
    out["nodes"] = std::move(nodes);
    return out;
}

namespace {
std::string dot_escape(const std::string& s) {
    std::string r;
    for (char c : s) {
        if (c == '"' || c == '\\') r += '\\';
        r += c;
    }
    return r;
}
}  // namespace

std::string end_tree_dot(const EndTree& tree, const Graph& graph) {
    std::ostringstream out;
    out << "digraph end_tree {\n";
    out << "  node [shape=box];\n";
    for (const auto& n : tree.nodes) {
        out << "  n" << n.id << " [label=\"";
        if (n.parent < 0) {
            out << "X";
        } else {
            out << "d" << n.depth << " rep " << dot_escape(graph.label(n.representative)) << "\\nsize " << n.size;
        }
        out << "\"];\n";
    }
    for (const auto& n : tree.nodes) {
        if (n.parent >= 0) out << "  n" << n.parent << " -> n" << n.id << ";\n";
    }
    out << "}\n";
    return out.str();
}

}  // namespace endslab
