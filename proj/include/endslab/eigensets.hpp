#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "endslab/ends.hpp"
#include "endslab/graph.hpp"
#include "endslab/group.hpp"

namespace endslab {

// Set operator on a truncated graph. apply() only sees the truncation;
// inside ball(basepoint, R - safety_margin) its output equals the output on
// the untruncated space.
struct Operator {
    std::string name;
    std::function<VertexSet(const VertexSet&)> apply;
    int safety_margin = 0;
};

// Finite sample of a possibly infinite operator family.
struct OperatorFamily {
    std::string name;
    std::vector<Operator> operators;
};

// Ordered by severity; a family verdict is the worst operator verdict.
enum class EigenStatus { eigenset, undetermined, not_eigenset };
const char* to_string(EigenStatus s);

struct OperatorVerdict {
    std::string op;
    EigenStatus status = EigenStatus::undetermined;
    int safe_radius = 0;       // R - safety_margin
    VertexSet residue;         // (f(A) ^ A) within the safe zone
    VertexSet complement_residue;
    int residue_radius = -1;   // largest basepoint distance in either residue
};

struct EigensetVerdict {
    EigenStatus status = EigenStatus::eigenset;
    std::vector<OperatorVerdict> operators;
    // Radius of a ball holding every residue; only for eigensets.
    std::optional<int> bounding_radius;
};

// Per operator, with s = R - safety_margin: not_eigenset when a residue
// reaches distance s - shell_width + 1 (the safe zone's shell), eigenset when
// every residue stays within ball(s - slack), undetermined otherwise.
EigensetVerdict is_eigenset(const VertexSet& a, const OperatorFamily& family, const Graph& graph, int slack = 2);

// Right multiplication by each generator: A -> A * g.
OperatorFamily translation_family(const CayleyGraph& cayley);

struct Cover {
    std::string name;
    std::vector<std::vector<int>> elements;
    int diameter = 0;  // declared bound
};

// Throws InputError when an element exceeds the declared diameter or the
// cover misses a vertex.
void validate_cover(const Graph& graph, const Cover& cover);
Cover singleton_cover(const Graph& graph);
// Edges {u, v}, plus singletons for isolated vertices; diameter 1.
Cover edge_cover(const Graph& graph);
// ball(v, r) for every vertex; diameter 2r.
Cover ball_cover(const Graph& graph, int r);

// st(A, U): union of the cover elements meeting A.
VertexSet star(const VertexSet& a, const Cover& cover);
OperatorFamily star_family(const Graph& graph, const std::vector<Cover>& covers);

// One operator per level of the decomposition. A set whose part beyond the
// deepest radius is a union of components is kept as is; any other set is
// sent to the union of the unbounded level-n components meeting it beyond
// the deepest radius.
OperatorFamily component_family(const Graph& graph, const LevelDecomposition& dec);
// A beyond the deepest radius is a union of deepest-level components.
bool is_component_union(const VertexSet& a, const Graph& graph, const LevelDecomposition& dec);

// Union of the shortest paths from p to the members of A.
VertexSet cone(const Graph& graph, const VertexSet& a, int basepoint = 0);

struct ConeFamilies {
    OperatorFamily cb;  // Cone(B(A, r))
    OperatorFamily bc;  // B(Cone(A), r)
    OperatorFamily g;   // B(Cone(B(A, r)), r)
};

// {1, 2, 4} restricted to r <= R / 4.
std::vector<int> default_cone_radii(const Horizon& horizon);
// Throws HorizonError for r > R / 4. Margin 2r, plus 2 d(basepoint, 0)
// for a moved basepoint.
ConeFamilies cone_families(const Graph& graph, const std::vector<int>& radii, int basepoint = 0);

// f_r(A) = {x : <x, y>_p > r for some y in A}. Exploratory.
Operator gromov_operator(const Graph& graph, int basepoint, int r);
OperatorFamily gromov_family(const Graph& graph, const std::vector<int>& radii, int basepoint = 0);

struct ClosureResult {
    bool ok = true;
    EigenStatus union_status = EigenStatus::eigenset;
    EigenStatus intersection_status = EigenStatus::eigenset;
    EigenStatus difference_status = EigenStatus::eigenset;  // C \ A
};

// For eigensets A and C: A u C, A n C and C \ A are never not_eigenset.
ClosureResult closure_check(const VertexSet& a, const VertexSet& c, const OperatorFamily& family,
                            const Graph& graph, int slack = 2);

nlohmann::ordered_json verdict_json(const EigensetVerdict& v, const OperatorFamily& family);

}  // namespace endslab
