#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "endslab/graph.hpp"

namespace endslab {

struct LevelComponent {
    std::vector<int> vertices;  // sorted
    Boundedness boundedness = Boundedness::bounded_within_horizon;
    int size = 0;
    int representative = -1;  // smallest vertex id

    bool unbounded() const { return boundedness == Boundedness::unbounded_within_horizon; }
    VertexSet as_set(const Graph& graph) const { return VertexSet::of(graph.size(), vertices); }
};

// Components of the vertices at distance >= radius from the basepoint, that
// is, of (truncated X) minus the open ball of that radius.
struct Level {
    int radius = 0;
    std::vector<LevelComponent> components;
    // Indices into components of the unbounded ones, in component order.
    std::vector<int> unbounded;
    // parent[i]: position in the previous level's `unbounded` list of the
    // component containing unbounded[i]; -1 on the first level.
    std::vector<int> parent;
    // Largest basepoint distance reached by a bounded component, -1 if none.
    int bounded_extent = -1;
};

struct LevelDecomposition {
    Horizon horizon;
    std::vector<int> radii;
    std::vector<Level> levels;

    int depth() const { return static_cast<int>(levels.size()); }
    // Number of unbounded components per level.
    std::vector<int> counts() const;
};

// (1, 2, ..., R - 2 * shell_width).
std::vector<int> default_radii(const Horizon& horizon);

// Throws InputError naming the first radius that is not strictly increasing,
// not positive, or closer than shell_width to the horizon.
void validate_radii(const std::vector<int>& radii, const Horizon& horizon);

LevelDecomposition decompose(const Graph& graph, const Horizon& horizon, const std::vector<int>& radii);

struct EndTreeNode {
    int id = 0;
    int depth = 0;
    int parent = -1;  // -1 for the root
    int size = 0;
    int representative = -1;
    int component = -1;  // index into the level's components; -1 for the root
    std::vector<int> children;
};

// Root (depth 0) stands for the whole truncated space; depth-n nodes are the
// unbounded level-n components. Node ids are breadth-first, children sorted
// by representative vertex.
struct EndTree {
    std::vector<EndTreeNode> nodes;
    int depth = 0;

    std::vector<int> nodes_at_depth(int n) const;
};

// Throws InvariantError if the refinement map is not total or some branch
// stops before the last level.
EndTree end_tree(const LevelDecomposition& dec, const Graph& graph);

enum class EndVerdict { zero, one, two, many_growing, undetermined };

const char* to_string(EndVerdict v);

struct EndClassification {
    EndVerdict verdict = EndVerdict::undetermined;
    std::vector<int> counts;
    // First level (1-based) from which the counts stay constant; set only
    // when at least two trailing levels agree.
    std::optional<int> stabilization_level;
    std::string note;
};

EndClassification classify_counts(const std::vector<int>& counts);
EndClassification classify(const LevelDecomposition& dec);

// Root-to-depth-n paths as lists of node ids (depth 1 first).
std::vector<std::vector<int>> ends_at_depth(const EndTree& tree, int n);

nlohmann::ordered_json end_tree_json(const EndTree& tree);
std::string end_tree_dot(const EndTree& tree, const Graph& graph);

}  // namespace endslab
