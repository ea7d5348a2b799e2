#pragma once

#include <optional>
#include <vector>

#include "endslab/ends.hpp"
#include "endslab/scaled_ba.hpp"

namespace endslab {

// Finite model of the algebra induced by the level-n components. Points are
// the vertices closer than r_n plus those of bounded level-n components, every
// point is bounded (singletons generate the scale), and each unbounded
// level-n component becomes one tail. The unbounded atoms are then exactly
// the tails, one external end per unbounded component.
struct AdapterModel {
    int depth = 0;
    SetAlgebra algebra;
    std::vector<int> item_of_vertex;  // -1 for vertices inside a tail
    std::vector<int> tail_component;  // tail index -> index into level components
    std::vector<std::vector<int>> tail_vertices;

    // Items of a vertex set whose part beyond r_n is a union of unbounded
    // components; nullopt when it cuts one of them.
    std::optional<ItemSet> encode(const VertexSet& a) const;
    VertexSet decode(const ItemSet& s, int graph_size) const;
};

// depth is 1-based, at most dec.depth().
AdapterModel graph_algebra_adapter(const LevelDecomposition& dec, const Graph& graph, int depth);

}  // namespace endslab
