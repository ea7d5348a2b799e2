#pragma once

#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "endslab/eigensets.hpp"
#include "endslab/group.hpp"

namespace endslab {

// Group with the scale generated by word balls, truncated to a horizon.
struct ScaledGroup {
    CayleyGraph cayley;
    std::vector<int> basis_radii;  // scale basis: ball(k) for k in basis_radii
    // left_mult[i][v]: vertex of generators()[i] * elements[v], -1 beyond R.
    std::vector<std::vector<int>> left_mult;

    const GroupOracle& oracle() const { return cayley.oracle(); }
    const Graph& graph() const { return cayley.graph; }
    int radius() const { return cayley.graph.horizon().radius; }
    VertexSet ball(int k) const { return cayley.graph.depth_ball(std::min(k, radius())); }
    std::vector<Element> ball_elements(int k) const;
    int word_length(int v) const { return cayley.graph.depth(v); }
};

// basis_radii defaults to 0..R.
ScaledGroup make_scaled_group(const GroupPreset& preset, Horizon horizon, std::vector<int> basis_radii = {});

struct ScaleCheck {
    bool closed = true;  // B_j * B_k^-1 within ball(j + k) for j + k <= R
    bool covers = true;  // the basis covers the truncation
    int pairs_checked = 0;
    std::string failure;
};
ScaleCheck check_scale(const ScaledGroup& group);

// {a * b}, {b * a} and {a^-1} restricted to the horizon.
VertexSet right_multiply(const ScaledGroup& g, const VertexSet& a, const std::vector<Element>& b);
VertexSet left_multiply(const ScaledGroup& g, const std::vector<Element>& b, const VertexSet& a);
VertexSet inverse_set(const ScaledGroup& g, const VertexSet& a);

struct FourFamilies {
    OperatorFamily rm_s;  // A -> A * ball(k)
    OperatorFamily lm_s;  // A -> ball(k) * A
    OperatorFamily rm_g;  // A -> A * s
    OperatorFamily lm_g;  // A -> s * A
};

// Scale sample: ball(k) for k in sample_radii (default {1}); the safety
// margin is the largest word length used.
FourFamilies four_families(const ScaledGroup& group, std::vector<int> sample_radii = {});

struct DualityResult {
    bool ok = true;
    EigenStatus left = EigenStatus::undetermined;       // A under lm_S
    EigenStatus right_inverse = EigenStatus::undetermined;  // A^-1 under rm_S
};

// verdict(A, lm_S) == verdict(A^-1, rm_S) unless one is undetermined.
DualityResult inversion_duality_check(const ScaledGroup& group, const VertexSet& a, int slack = 2,
                                      std::vector<int> sample_radii = {});

struct StarIdentityResult {
    bool equal = true;
    int safe_radius = 0;
    VertexSet lhs;      // st(A, C_B) \ A within the safe zone
    VertexSet rhs;      // B * B^-1 * A \ A within the safe zone
    VertexSet residue;  // lhs ^ rhs
};

// st(A, {B * h}) \ A against B * B^-1 * A \ A inside ball(R - 2|B|), where
// |B| is the largest word length in B. The left side enumerates the cover
// elements B * h over the truncation; the right side multiplies through the
// oracle. Throws HorizonError "horizon too small" when the zone is empty.
StarIdentityResult star_identity_check(const ScaledGroup& group, const VertexSet& a, const std::vector<Element>& b);

enum class Tri { yes, no, undetermined };
const char* to_string(Tri t);

using ActionFunction = std::function<Element(const GroupOracle&, const Element& h, const Element& x)>;
// Makes an action reachable as "custom:<name>". "trivial" is built in.
void register_action(const std::string& name, ActionFunction fn);

// Subgroup H of the space's group acting on the space's Cayley graph.
struct GroupAction {
    std::string name;
    ScaledGroup space;
    std::vector<Element> subgroup_generators;  // symmetric; empty for the trivial group
    bool whole_group = false;
    ActionFunction act_fn;

    // -1 when the image lies beyond the horizon.
    int act(const Element& h, int x) const;
    VertexSet act(const Element& h, const VertexSet& a) const;
    // Elements of H of word length <= max_len, by BFS over the generators.
    std::vector<Element> subgroup_elements(int max_len) const;
    // True when the BFS over H closes without leaving ball(max_len).
    bool subgroup_finite_within(int max_len) const;
};

// action: "left-mult" (h . x = h x), "translation" (h . x = x h^-1) or
// "custom:<name>". subgroup: generator elements of H in the oracle's format;
// nullopt means H = G, an empty list the trivial group.
GroupAction make_action(const GroupPreset& space, Horizon horizon, const std::string& action,
                        std::optional<std::vector<std::string>> subgroup);

// Text format:
//   space <preset>
//   subgroup <element> ...     (omit for the whole group; "subgroup" alone for the trivial group)
//   action left-mult|translation|custom:<name>
GroupAction parse_action(std::istream& in, Horizon horizon);
GroupAction load_action(const std::string& path, Horizon horizon);

struct ActionCheck {
    Tri proper = Tri::undetermined;
    Tri cobounded = Tri::undetermined;
    int cobounding_radius = -1;        // k with H * ball(k) covering the safe zone
    int max_stabilizer_length = -1;    // over the sampled K
    std::string note;
};

// Cobounded: H * ball(k), k in {0,1,2}, covers ball(R - k); not cobounded
// when H closes up finitely. Proper: the stabilizers of ball(k), k in
// {0,1,2}, stay within ball(R/2); not proper when one reaches R - 1.
ActionCheck action_checks(const GroupAction& action);

struct CoverComparison {
    bool refinement = true;  // st(C_B, C_B) refines C_{B' B}
    bool orbit_map = true;   // f(g * Bw) = g * Bw * x0
    int translates_checked = 0;
    int stabilizer_size = 0;
};

// Throws InputError unless action_checks reports proper and cobounded.
CoverComparison induced_cover_comparison(const GroupAction& action, const VertexSet& b);

struct SameEigensetsResult {
    bool ok = true;
    EigenStatus per_element = EigenStatus::undetermined;  // {m_g}
    EigenStatus per_scale_set = EigenStatus::undetermined;  // {m_B}
};

SameEigensetsResult same_eigensets_check(const GroupAction& action, const VertexSet& a, int slack = 2);

// S_G restricted to H satisfies the closure rule on basis pairs.
ScaleCheck subgroup_scale_check(const GroupAction& action);

// [B] bounded: yes when the generated subgroup closes within ball(R/2),
// no when it reaches the horizon shell.
Tri locally_bounded_check(const ScaledGroup& group, const std::vector<Element>& b);

struct BoundedGeometryResult {
    Tri verdict = Tri::undetermined;
    int k_radius = 0;                 // K = ball(k_radius)
    std::vector<int> sample_radii;
    std::vector<int> translates;      // translates of K used per sample
};

// Greedy translate covers of ball(r) by g * K, r in the sample.
BoundedGeometryResult bounded_geometry_check(const ScaledGroup& group, int k_radius = 1,
                                             std::vector<int> sample_radii = {});

struct EndAgreement {
    int engine_count = 0;
    int algebra_ends = 0;
    bool atoms_are_eigensets = true;
    bool agree = false;
};

// Ends of (G, S_G, S_G .) at depth n: the inverses of the unbounded level-n
// components are lm_S eigensets, and the algebra they generate over the
// bounded ball has as many ends as the end tree has depth-n nodes.
EndAgreement end_space_agreement(const ScaledGroup& group, const std::vector<int>& radii, int depth, int slack = 2);

struct EndComparison {
    std::optional<int> group_ends;
    std::optional<int> space_ends;
    std::string outcome;  // "agree", "disagree" or "undetermined"
};

// Ends of (G, S_G, S_G .) against those of (X, S_X, S_G .) for an action.
// Reports what it finds; asserts nothing.
EndComparison compare_action_end_spaces(const GroupAction& action, const std::vector<int>& radii, int depth,
                                        int slack = 2);

}  // namespace endslab
