#include "endslab/graph.hpp"

#include <algorithm>
#include <deque>
#include <fstream>
#include <istream>
#include <map>
#include <set>
#include <sstream>

#include "endslab/error.hpp"

namespace endslab {

void Horizon::validate() const {
    if (radius < 0) throw HorizonError("horizon radius must be nonnegative");
    if (shell_width < 1) throw HorizonError("shell width must be positive");
    if (radius < shell_width) {
        throw HorizonError("horizon radius " + std::to_string(radius) +
                           " is smaller than shell width " + std::to_string(shell_width));
    }
}

Graph Graph::build(int vertex_count, const std::vector<Edge>& edges, int basepoint,
                   std::vector<std::string> labels, Horizon horizon) {
    horizon.validate();
    if (vertex_count <= 0) throw InputError("graph has no vertices");
    if (basepoint < 0 || basepoint >= vertex_count) {
        throw InputError("basepoint " + std::to_string(basepoint) + " is not a vertex");
    }
    std::vector<std::vector<int>> raw(vertex_count);
    std::set<std::pair<int, int>> seen;
    for (const auto& e : edges) {
        if (e.u < 0 || e.u >= vertex_count || e.v < 0 || e.v >= vertex_count) {
            throw InputError("edge endpoint out of range");
        }
        if (e.u == e.v) throw InputError("self-loop at vertex " + std::to_string(e.u));
        auto key = std::minmax(e.u, e.v);
        if (!seen.insert({key.first, key.second}).second) {
            throw InputError("duplicate edge " + std::to_string(e.u) + " " + std::to_string(e.v));
        }
        raw[e.u].push_back(e.v);
        raw[e.v].push_back(e.u);
    }

    // BFS renumbering, neighbors visited in the order they were given.
    std::vector<int> new_id(vertex_count, -1);
    std::vector<int> order;
    std::vector<int> depth;
    std::deque<int> queue{basepoint};
    new_id[basepoint] = 0;
    order.push_back(basepoint);
    depth.push_back(0);
    while (!queue.empty()) {
        int u = queue.front();
        queue.pop_front();
        int du = depth[new_id[u]];
        if (du == horizon.radius) continue;
        for (int w : raw[u]) {
            if (new_id[w] >= 0) continue;
            new_id[w] = static_cast<int>(order.size());
            order.push_back(w);
            depth.push_back(du + 1);
            queue.push_back(w);
        }
    }

    Graph g;
    g.horizon_ = horizon;
    g.depth_ = std::move(depth);
    g.adjacency_.resize(order.size());
    g.labels_.resize(order.size());
    g.source_id_ = order;
    for (std::size_t i = 0; i < order.size(); ++i) {
        int old = order[i];
        for (int w : raw[old]) {
            if (new_id[w] >= 0) g.adjacency_[i].push_back(new_id[w]);
        }
        std::sort(g.adjacency_[i].begin(), g.adjacency_[i].end());
        if (static_cast<std::size_t>(old) < labels.size() && !labels[old].empty()) {
            g.labels_[i] = std::move(labels[old]);
        } else {
            g.labels_[i] = std::to_string(old);
        }
    }
    return g;
}

std::optional<int> Graph::find_label(std::string_view label) const {
    for (int v = 0; v < size(); ++v) {
        if (labels_[v] == label) return v;
    }
    return std::nullopt;
}

VertexSet Graph::shell() const {
    VertexSet s(adjacency_.size());
    int start = horizon_.shell_start();
    for (int v = size() - 1; v >= 0 && depth_[v] >= start; --v) s.insert(v);
    return s;
}

VertexSet Graph::depth_ball(int r) const {
    VertexSet s(adjacency_.size());
    for (int v = 0; v < size() && depth_[v] <= r; ++v) s.insert(v);
    return s;
}

Graph Graph::with_horizon(Horizon horizon) const {
    horizon.validate();
    if (horizon.radius < max_depth()) {
        throw HorizonError("new horizon radius " + std::to_string(horizon.radius) +
                           " is smaller than the materialized depth " + std::to_string(max_depth()));
    }
    Graph g = *this;
    g.horizon_ = horizon;
    return g;
}

std::vector<int> bfs_distances(const Graph& graph, const VertexSet& sources) {
    std::vector<int> dist(graph.size(), -1);
    std::deque<int> queue;
    sources.for_each([&](int s) {
        dist[s] = 0;
        queue.push_back(s);
    });
    while (!queue.empty()) {
        int u = queue.front();
        queue.pop_front();
        for (int w : graph.neighbors(u)) {
            if (dist[w] < 0) {
                dist[w] = dist[u] + 1;
                queue.push_back(w);
            }
        }
    }
    return dist;
}

std::vector<int> bfs_distances(const Graph& graph, int source) {
    VertexSet s(graph.size());
    s.insert(source);
    return bfs_distances(graph, s);
}

VertexSet ball(const Graph& graph, int center, int r) {
    if (center < 0 || center >= graph.size()) throw InputError("ball center is not a vertex");
    if (r < 0) throw InputError("ball radius must be nonnegative");
    if (r > graph.horizon().radius) throw HorizonError("ball exceeds horizon");
    if (center == graph.basepoint()) return graph.depth_ball(r);
    VertexSet c(graph.size());
    c.insert(center);
    return neighborhood(graph, c, r);
}

VertexSet neighborhood(const Graph& graph, const VertexSet& set, int r) {
    VertexSet out = set;
    std::vector<int> frontier = set.members();
    for (int step = 0; step < r && !frontier.empty(); ++step) {
        std::vector<int> next;
        for (int u : frontier) {
            for (int w : graph.neighbors(u)) {
                if (!out.contains(w)) {
                    out.insert(w);
                    next.push_back(w);
                }
            }
        }
        frontier = std::move(next);
    }
    return out;
}

std::vector<VertexSet> components(const Graph& graph, const VertexSet& region) {
    std::vector<VertexSet> parts;
    VertexSet unseen = region;
    for (int start = unseen.first(); start >= 0; start = unseen.first()) {
        VertexSet part(graph.size());
        std::vector<int> stack{start};
        unseen.erase(start);
        part.insert(start);
        while (!stack.empty()) {
            int u = stack.back();
            stack.pop_back();
            for (int w : graph.neighbors(u)) {
                if (unseen.contains(w)) {
                    unseen.erase(w);
                    part.insert(w);
                    stack.push_back(w);
                }
            }
        }
        parts.push_back(std::move(part));
    }
    return parts;
}

ComponentLabels component_labels(const Graph& graph, const VertexSet& region) {
    ComponentLabels out;
    out.label.assign(graph.size(), -1);
    std::vector<int> stack;
    region.for_each([&](int start) {
        if (out.label[start] >= 0) return;
        int id = out.count++;
        out.label[start] = id;
        stack.push_back(start);
        while (!stack.empty()) {
            int u = stack.back();
            stack.pop_back();
            for (int w : graph.neighbors(u)) {
                if (out.label[w] < 0 && region.contains(w)) {
                    out.label[w] = id;
                    stack.push_back(w);
                }
            }
        }
    });
    return out;
}

Boundedness classify_component(const Graph& graph, const VertexSet& component,
                               const Horizon& horizon) {
    int start = horizon.shell_start();
    bool touches = false;
    component.for_each([&](int v) { touches = touches || graph.depth(v) >= start; });
    return touches ? Boundedness::unbounded_within_horizon : Boundedness::bounded_within_horizon;
}

const char* to_string(Boundedness b) {
    return b == Boundedness::unbounded_within_horizon ? "unbounded_within_horizon"
                                                      : "bounded_within_horizon";
}

Graph parse_graph(std::istream& in, std::optional<Horizon> horizon) {
    std::map<long long, int> index;
    std::vector<std::string> labels;
    std::vector<Graph::Edge> edges;
    std::optional<long long> basepoint;
    std::string line;
    int line_no = 0;
    auto fail = [&](const std::string& what) {
        throw InputError("line " + std::to_string(line_no) + ": " + what);
    };
    auto lookup = [&](long long id) {
        auto it = index.find(id);
        if (it == index.end()) fail("undeclared vertex " + std::to_string(id));
        return it->second;
    };
    while (std::getline(in, line)) {
        ++line_no;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::string kw;
        if (!(ls >> kw)) continue;
        if (kw == "v") {
            long long id;
            if (!(ls >> id)) fail("expected vertex id");
            std::string label;
            ls >> label;
            if (!index.emplace(id, static_cast<int>(labels.size())).second) {
                fail("vertex " + std::to_string(id) + " declared twice");
            }
            labels.push_back(label.empty() ? std::to_string(id) : label);
        } else if (kw == "e") {
            long long a, b;
            if (!(ls >> a >> b)) fail("expected two vertex ids");
            edges.push_back({lookup(a), lookup(b)});
        } else if (kw == "basepoint") {
            long long id;
            if (!(ls >> id)) fail("expected basepoint id");
            basepoint = id;
        } else {
            fail("unknown directive '" + kw + "'");
        }
        std::string extra;
        if (ls >> extra) fail("trailing token '" + extra + "'");
    }
    if (!basepoint) throw InputError("graph file has no basepoint line");
    int base = lookup(*basepoint);
    int n = static_cast<int>(labels.size());

    Horizon h;
    if (horizon) {
        h = *horizon;
    } else {
        // Eccentricity of the basepoint on the full description.
        Graph probe = Graph::build(n, edges, base, labels, Horizon{n, 1});
        h = Horizon{std::max(probe.max_depth(), 1), 1};
    }
    return Graph::build(n, edges, base, std::move(labels), h);
}

Graph load_graph(const std::string& path, std::optional<Horizon> horizon) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open graph file '" + path + "'");
    return parse_graph(in, horizon);
}

}  // namespace endslab
