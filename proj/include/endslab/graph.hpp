#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "endslab/bits.hpp"

namespace endslab {

// Truncation of an infinite space: only vertices within `radius` of the
// basepoint are materialized. The outermost `shell_width` layers form the
// shell, which certifies unboundedness.
struct Horizon {
    int radius = 0;
    int shell_width = 1;

    void validate() const;
    // Smallest basepoint distance that counts as shell contact.
    int shell_start() const { return radius - shell_width + 1; }
};

// Locally finite, undirected, unweighted graph truncated to a horizon.
// Vertex ids are dense and assigned in BFS order from the basepoint, so the
// basepoint is always vertex 0 and depth is non-decreasing in the id.
class Graph {
public:
    struct Edge {
        int u;
        int v;
    };

    // Validates the raw description (ids in range, no self-loops, no
    // duplicate edges), drops everything farther than horizon.radius from
    // the basepoint and renumbers the rest in BFS order.
    static Graph build(int vertex_count, const std::vector<Edge>& edges, int basepoint,
                       std::vector<std::string> labels, Horizon horizon);

    int size() const { return static_cast<int>(adjacency_.size()); }
    const std::vector<int>& neighbors(int v) const { return adjacency_[v]; }
    int basepoint() const { return 0; }
    const Horizon& horizon() const { return horizon_; }

    // Graph distance from the basepoint.
    int depth(int v) const { return depth_[v]; }
    int max_depth() const { return depth_.empty() ? 0 : depth_.back(); }

    const std::string& label(int v) const { return labels_[v]; }
    std::optional<int> find_label(std::string_view label) const;
    // Id in the raw description passed to build().
    int source_id(int v) const { return source_id_[v]; }

    VertexSet all() const { return VertexSet::full(adjacency_.size()); }
    VertexSet empty_set() const { return VertexSet(adjacency_.size()); }
    // Vertices at basepoint distance >= horizon.shell_start().
    VertexSet shell() const;
    // Vertices at basepoint distance <= r (ball around the basepoint).
    VertexSet depth_ball(int r) const;

    // Same vertices and edges, different horizon bookkeeping. The new
    // radius must not be smaller than max_depth().
    Graph with_horizon(Horizon horizon) const;

    Graph() = default;

private:
    std::vector<std::vector<int>> adjacency_;
    std::vector<int> depth_;
    std::vector<std::string> labels_;
    std::vector<int> source_id_;
    Horizon horizon_;
};

// Hop distances from the given sources; -1 for unreachable vertices.
std::vector<int> bfs_distances(const Graph& graph, int source);
std::vector<int> bfs_distances(const Graph& graph, const VertexSet& sources);

// Vertices at distance <= r from center. Throws HorizonError when r exceeds
// the horizon radius.
VertexSet ball(const Graph& graph, int center, int r);

// B(A, r): vertices within distance r of some member of A.
VertexSet neighborhood(const Graph& graph, const VertexSet& set, int r);

// Maximal connected subsets of the subgraph induced on region, ordered by
// their smallest vertex id.
std::vector<VertexSet> components(const Graph& graph, const VertexSet& region);

// Component index per vertex (-1 outside region), numbered by smallest
// vertex id; same partition as components() without one bitset per part.
struct ComponentLabels {
    std::vector<int> label;
    int count = 0;
};
ComponentLabels component_labels(const Graph& graph, const VertexSet& region);

enum class Boundedness { bounded_within_horizon, unbounded_within_horizon };

Boundedness classify_component(const Graph& graph, const VertexSet& component,
                               const Horizon& horizon);
inline Boundedness classify_component(const Graph& graph, const VertexSet& component) {
    return classify_component(graph, component, graph.horizon());
}

const char* to_string(Boundedness b);

// Line-oriented graph description:
//   v <id> [label]
//   e <id> <id>
//   basepoint <id>
// Blank lines and '#' comments are ignored. Ids are arbitrary integers.
// When horizon is not given, the radius is the basepoint eccentricity.
Graph parse_graph(std::istream& in, std::optional<Horizon> horizon = std::nullopt);
Graph load_graph(const std::string& path, std::optional<Horizon> horizon = std::nullopt);

}  // namespace endslab
