#pragma once

// Brute-force reference implementations. They share no code paths with the
// library routines they check beyond the basic containers.

#include <cstdint>
#include <vector>

#include "endslab/graph.hpp"
#include "endslab/scaled_ba.hpp"

namespace endslab::oracle {

// |ball(r)| in Z^d by counting lattice points with |x|_1 <= r.
long long lattice_ball_size(int d, int r);
// Distinct reduced words of length <= r over k letters and their inverses,
// found by reducing every word.
long long free_ball_size_by_words(int k, int r);
// 1 + 2k((2k-1)^r - 1) / (2k - 2).
long long free_ball_size_formula(int k, int r);
// 4 * 3^(n-1) for F_2, generally 2k (2k-1)^(n-1).
long long free_sphere_size(int k, int n);

// Unbounded components of {v : d(v) >= r} per radius, by BFS over explicit
// vertex lists of the region.
std::vector<int> component_counts(const Graph& graph, const std::vector<int>& radii);

// Unbounded level-(n+1) components that do not lie inside exactly one
// unbounded level-n component.
int refinement_violations(const Graph& graph, const std::vector<int>& radii);

// Union closure of the scale generators, empty set included.
std::vector<ItemSet> scale_closure(const ScaledSpace& space);
bool is_bounded(const ItemSet& a, const std::vector<ItemSet>& scale);
// Some scale element B with C \ B = D \ B.
bool mod_equiv(const ItemSet& c, const ItemSet& d, const ScaledSpace& space);

// Closure of generators + scale + {empty, X} under complement, union and
// intersection by fixpoint iteration; sorted.
std::vector<ItemSet> algebra_closure(const std::vector<ItemSet>& generators, const ScaledSpace& space);

struct OracleEnd {
    std::vector<ItemSet> members;  // sorted
    ItemSet core;                  // points in every member
};

// Maximal families of unbounded elements with unbounded finite
// intersections. Up to 20 elements every subfamily is tried; above that the
// search runs over candidate intersections J with F_J = {A : A contains J}.
std::vector<OracleEnd> ends(const std::vector<ItemSet>& elements, const ScaledSpace& space);

// Every subfamily covering the points at infinity has a finite subfamily
// covering X minus a bounded set. Subfamilies are enumerated literally up to
// 20 elements; above that through their unions.
bool compact_at_infinity(const std::vector<ItemSet>& elements, const ScaledSpace& space);

bool hausdorff(const std::vector<ItemSet>& elements, const ScaledSpace& space);

// Vertices on some shortest path from p to a member of A, by the distance
// sum test with a BFS from every member.
VertexSet cone(const Graph& graph, const VertexSet& a, int p);

// {x : <x, y>_p > r for some y in A} by the product formula.
VertexSet gromov(const Graph& graph, const VertexSet& a, int p, int r);

}  // namespace endslab::oracle
