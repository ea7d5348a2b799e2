#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "endslab/graph.hpp"

namespace endslab {

// Canonical group element. The meaning of the integers is owned by the
// oracle that produced it (coordinates, reduced letters, ...).
using Element = std::vector<int>;

// Word over an oracle's generator list: each letter indexes generators().
using Word = std::vector<int>;

// Solves the word problem for one group: every element has a unique normal
// form and products are computed directly on normal forms.
class GroupOracle {
public:
    virtual ~GroupOracle() = default;

    virtual std::string name() const = 0;
    virtual Element identity() const = 0;
    virtual Element multiply(const Element& a, const Element& b) const = 0;
    virtual Element inverse(const Element& a) const = 0;
    // Symmetric generating set: closed under inverses, no identity.
    virtual const std::vector<Element>& generators() const = 0;
    // Word metric with respect to generators().
    virtual int word_length(const Element& a) const = 0;
    virtual std::string format(const Element& a) const = 0;
    virtual std::optional<Element> parse(std::string_view text) const = 0;

    // Number of elements of word length <= r.
    virtual double ball_size(int r) const = 0;
    // Horizon radius refused without an explicit vertex budget.
    virtual int default_radius_cap() const = 0;

    // Product of the letters of w, in normal form.
    Element evaluate(const Word& w) const;
    // Index of inverse(generators()[i]) in generators().
    int inverse_generator(int i) const;
};

enum class PresetKind { free_abelian, free_group, explicit_presentation };

struct GroupPreset {
    PresetKind kind = PresetKind::free_abelian;
    int rank = 0;
    std::string name;
    std::shared_ptr<const GroupOracle> oracle;
};

// Z^d with the standard basis and its negatives; coordinates as elements.
std::shared_ptr<const GroupOracle> make_free_abelian(int rank);
// F_k on letters a, b, c, ... (inverses A, B, C, ...); reduced words.
std::shared_ptr<const GroupOracle> make_free_group(int rank);
// Infinite dihedral group <s, t | s^2, t^2>: alternating words.
std::shared_ptr<const GroupOracle> make_infinite_dihedral();

using OracleFactory = std::function<std::shared_ptr<const GroupOracle>()>;
// Makes a user oracle reachable as the preset string "custom:<name>".
void register_group_oracle(const std::string& name, OracleFactory factory);

// Accepts Z, Z^d, Zd, Fk, Dinf and custom:<name>. The oracle is validated
// before it is returned.
GroupPreset parse_preset(std::string_view name);
GroupPreset make_preset(PresetKind kind, int rank);

struct OracleReport {
    bool ok = true;
    std::string failure;
};

// Round-trip checks on random words of length <= max_len: normal forms are
// idempotent, w * w^-1 reduces to the identity, multiplication matches
// word concatenation and is associative, word length never exceeds the
// word that produced an element, and the generating set is symmetric.
OracleReport check_oracle(const GroupOracle& oracle, std::uint64_t seed = 0, int samples = 200,
                          int max_len = 8);

// Throws InputError naming the first failed check.
void validate_oracle(const GroupOracle& oracle);

// Truncated Cayley graph: elements of word length <= R, edges x -- x*s for
// generators s, basepoint the identity.
struct CayleyGraph {
    GroupPreset preset;
    Graph graph;
    std::vector<Element> elements;
    std::map<Element, int> index;
    // right_mult[i][v]: vertex of elements[v] * generators()[i], -1 when it
    // lies beyond the horizon.
    std::vector<std::vector<int>> right_mult;

    const GroupOracle& oracle() const { return *preset.oracle; }
    int vertex_of(const Element& e) const;  // -1 when outside the horizon
};

// Vertex budget: ENDSLAB_MAX_VERTICES when set, otherwise the ball size at
// the oracle's default radius cap.
double vertex_budget(const GroupOracle& oracle);

// Throws HorizonError with a size estimate when the ball of radius R would
// exceed the vertex budget; InputError when the oracle fails validation.
CayleyGraph build_truncated_cayley(const GroupPreset& preset, Horizon horizon);

}  // namespace endslab
