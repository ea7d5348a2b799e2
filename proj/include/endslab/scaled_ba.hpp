#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "endslab/bits.hpp"

namespace endslab {

using ItemSet = Bits;

// Finite scaled space. Items 0..points-1 are points of X; the remaining
// items are tails. A tail stands for an infinite part of X that is only
// known up to bounded sets: it is never bounded, never a point at infinity,
// and never lies in the intersection of an end. Without tails a finite
// algebra has no external ends, so tails are what lets finite models carry
// the ends of truncated graphs.
//
// The scale is the union-closure of the generators plus the empty set.
// Generators may contain points only.
class ScaledSpace {
public:
    ScaledSpace() = default;
    ScaledSpace(int points, int tails, std::vector<ItemSet> scale_generators,
                std::vector<std::string> names = {});

    int size() const { return points_ + tails_; }
    int point_count() const { return points_; }
    int tail_count() const { return tails_; }
    bool is_tail(int item) const { return item >= points_; }

    const std::vector<ItemSet>& scale_generators() const { return scale_; }
    // Union of every scale element; the largest bounded set.
    const ItemSet& bounded_hull() const { return hull_; }
    bool is_bounded(const ItemSet& a) const { return a.is_subset_of(hull_); }

    ItemSet none() const { return ItemSet(size()); }
    ItemSet all() const { return ItemSet::full(size()); }
    ItemSet points() const;
    ItemSet points_at_infinity() const;

    // Every scale element, empty set first, deduplicated and sorted.
    // Throws InputError above 20 generators.
    std::vector<ItemSet> scale_elements() const;

    const std::string& name(int item) const { return names_[item]; }
    std::optional<int> find(const std::string& name) const;
    std::string format(const ItemSet& s) const;
    // "{1,2,t1}" in this space's item names.
    ItemSet parse_set(const std::string& text) const;

private:
    int points_ = 0;
    int tails_ = 0;
    std::vector<ItemSet> scale_;
    ItemSet hull_;
    std::vector<std::string> names_;
};

// True iff C \ B = D \ B for some scale element B.
bool mod_equiv(const ItemSet& c, const ItemSet& d, const ScaledSpace& space);
// mod_equiv on the complements.
bool complement_equiv_check(const ItemSet& c, const ItemSet& d, const ScaledSpace& space);

// Boolean algebra given by its atoms: the elements are exactly the unions
// of atoms. Elements are materialized only for at most 16 atoms.
class SetAlgebra {
public:
    static constexpr int max_enumerable_atoms = 16;

    SetAlgebra() = default;
    SetAlgebra(ScaledSpace space, std::vector<ItemSet> atoms);

    const ScaledSpace& space() const { return space_; }
    const std::vector<ItemSet>& atoms() const { return atoms_; }
    int atom_count() const { return static_cast<int>(atoms_.size()); }
    int atom_of(int item) const { return atom_of_[item]; }

    bool enumerable() const { return atom_count() <= max_enumerable_atoms; }
    std::uint64_t element_count() const { return std::uint64_t{1} << atoms_.size(); }
    bool contains(const ItemSet& a) const;
    // Union of the atoms selected by mask (bit i = atom i).
    ItemSet element(std::uint64_t mask) const;
    // Canonical order: sorted by member list. Throws unless enumerable().
    std::vector<ItemSet> elements() const;

    bool atom_bounded(int atom) const { return space_.is_bounded(atoms_[atom]); }
    bool atom_has_point_at_infinity(int atom) const;

private:
    ScaledSpace space_;
    std::vector<ItemSet> atoms_;
    std::vector<int> atom_of_;
};

// Least algebra containing the generators, the scale generators, the empty
// set and X, by partition refinement of the items.
SetAlgebra generate_algebra(const std::vector<ItemSet>& generators, const ScaledSpace& space);
SetAlgebra powerset_algebra(const ScaledSpace& space);

struct InducedAlgebra {
    SetAlgebra algebra;
    // Canonical representative (A minus the bounded hull) of every class of
    // sets equivalent to a union of components of X \ B, B in the scale.
    std::vector<ItemSet> representatives;
};

// Points-only spaces. Components are taken in the graph on the points
// given by edges. Throws InputError naming the scale element B when the
// bounded components of X \ B do not have a bounded union.
InducedAlgebra induced_algebra(const ScaledSpace& space, const std::vector<std::pair<int, int>>& edges);

enum class EndTag { internal, external };
const char* to_string(EndTag t);

// The end {A in the algebra : A contains atom}.
struct End {
    int atom = -1;
    EndTag tag = EndTag::internal;
    ItemSet core;  // points of the atom; empty exactly for external ends
};

// One end per unbounded atom, in atom order.
std::vector<End> enumerate_ends(const SetAlgebra& algebra);
// Members of an end, canonical order. Throws unless enumerable().
std::vector<ItemSet> end_members(const SetAlgebra& algebra, const End& end);

struct CompactnessResult {
    bool compact = true;
    // A cover of the points at infinity whose union misses an unbounded set.
    std::vector<ItemSet> witness_cover;
    ItemSet uncovered;
};

// Every cover of the points at infinity by algebra elements leaves a bounded
// remainder. Covers only matter through their union, which is an element,
// so enumerable algebras are checked over all elements and larger ones
// through the atoms.
CompactnessResult is_compact_at_infinity(const SetAlgebra& algebra);

struct HausdorffResult {
    bool hausdorff = true;
    int witness_point = -1;
    ItemSet intersection;  // points in every element containing the witness
};

HausdorffResult is_hausdorff(const SetAlgebra& algebra);

struct CompactificationChecks {
    bool isomorphism = false;
    bool scale_fixed = false;
    bool closure_is_extension = false;
    bool closure_preserves_intersections = false;
    bool distinct_end_families = false;
    bool compact_at_infinity = false;
    bool hausdorff = false;
    bool no_external_ends = false;
    // Every extended element meeting a new point meets X (tails count).
    bool new_points_meet_x = false;
};

struct Compactification {
    // Points of X, then one new point per external end, then the tails.
    ScaledSpace space;
    SetAlgebra algebra;
    std::vector<int> item_map;    // item of X -> item of the extended space
    std::vector<End> added_ends;  // external ends of the input, in order
    std::vector<int> new_points;  // extended item for each added end
    bool verified = true;         // false when the input is not Hausdorff
    CompactificationChecks checks;
    std::vector<std::string> failures;

    // A-bar: the image of A plus the new points of the ends containing A.
    ItemSet extend(const ItemSet& a) const;
    ItemSet embed(const ItemSet& a) const;  // image of A without new points
    ItemSet restrict(const ItemSet& extended) const;
    // Combinatorial closure of A (a subset of X) in the extended algebra.
    ItemSet closure(const ItemSet& a) const;

private:
    friend Compactification compactify(const SetAlgebra& algebra);
    std::vector<ItemSet> source_atoms_;
    std::vector<int> end_of_atom_;  // input atom -> position in added_ends, -1
};

// X-bar = X plus the external ends, with the algebra of the A-bar. The
// checks guaranteed by the theory are run; a failure on Hausdorff input
// throws InvariantError, on other input it only clears `verified`.
Compactification compactify(const SetAlgebra& algebra);

// Trace algebra on Y with the trace scale; Y must be an element of the
// algebra (so X \ Y is one too) and the parent compact at infinity.
bool subalgebra_compactness_check(const SetAlgebra& parent, const ItemSet& y);

// Finite S-linear operator given by item images: f(A) = union of image[x]
// over x in A.
struct FiniteOperator {
    std::string name;
    std::vector<ItemSet> image;

    ItemSet apply(const ItemSet& a) const;
};

// Empty string when f is S-linear on the algebra, else the violated rule.
std::string check_linear(const FiniteOperator& f, const SetAlgebra& algebra);
bool is_finite_eigenset(const ItemSet& a, const std::vector<FiniteOperator>& family, const SetAlgebra& algebra);
// Algebra of the eigensets of the family (enumerable algebras only).
SetAlgebra eigenset_algebra(const SetAlgebra& algebra, const std::vector<FiniteOperator>& family);

// Text format:
//   universe <n>          points 1..n
//   tails <k>             tails t1..tk
//   scale {a,b,...}       one scale generator per line
//   gen {a,b,...}         algebra generator
//   powerset              every singleton is a generator
//   edge <a> <b>          connectivity, for induced algebras
struct ScaledSpaceFile {
    ScaledSpace space;
    std::vector<ItemSet> generators;
    bool powerset = false;
    std::vector<std::pair<int, int>> edges;

    SetAlgebra algebra() const;
};

ScaledSpaceFile parse_scaled_space(std::istream& in);
ScaledSpaceFile load_scaled_space(const std::string& path);
std::string format_scaled_space(const ScaledSpaceFile& file);

nlohmann::ordered_json compactification_report(const SetAlgebra& algebra);

}  // namespace endslab
