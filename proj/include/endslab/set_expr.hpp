#pragma once

#include <string>

#include "endslab/ends.hpp"
#include "endslab/graph.hpp"
#include "endslab/group.hpp"

namespace endslab {

struct SetContext {
    const Graph* graph = nullptr;
    const CayleyGraph* cayley = nullptr;     // null for explicit graphs
    const LevelDecomposition* dec = nullptr;  // needed by "component"
};

// Vertex sets by name:
//   empty | all
//   ray+ | ray-                 Z only: n >= 0 / n <= 0
//   evens | odds                Z^d: parity of the first coordinate; F_k, Dinf: of the word length
//   halfplane x>=c              also x<=c, y>=c, y<=c (Z^d)
//   ball <r>                    ball around the basepoint
//   component <level> <i>       unbounded component i (0-based) of level (1-based)
//   branch <word>               reduced words with the given prefix
//   {v, v, ...}                 vertex labels
//   not <expr>                  complement
//   anything else               path of a file of whitespace-separated vertex labels
VertexSet parse_set_expr(const std::string& expr, const SetContext& ctx);

VertexSet load_vertex_list(const std::string& path, const Graph& graph);

}  // namespace endslab
