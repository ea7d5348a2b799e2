#include "endslab/scaled_ba.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <map>
#include <random>
#include <set>
#include <sstream>

#include "endslab/error.hpp"

namespace endslab {

ScaledSpace::ScaledSpace(int points, int tails, std::vector<ItemSet> scale_generators,
                         std::vector<std::string> names)
    : points_(points), tails_(tails), scale_(std::move(scale_generators)), names_(std::move(names)) {
    if (points < 0 || tails < 0) throw InputError("negative universe size");
    hull_ = ItemSet(size());
    for (const auto& g : scale_) {
        if (static_cast<int>(g.universe()) != size()) throw InputError("scale generator has the wrong universe");
        g.for_each([&](int i) {
            if (is_tail(i)) throw InputError("scale generator contains tail " + std::to_string(i));
        });
        hull_ |= g;
    }
    if (names_.empty()) {
        for (int i = 0; i < points_; ++i) names_.push_back(std::to_string(i + 1));
        for (int i = 0; i < tails_; ++i) names_.push_back("t" + std::to_string(i + 1));
    }
    if (static_cast<int>(names_.size()) != size()) throw InputError("item name count does not match universe");
}

ItemSet ScaledSpace::points() const {
    ItemSet s(size());
    for (int i = 0; i < points_; ++i) s.insert(i);
    return s;
}

ItemSet ScaledSpace::points_at_infinity() const { return points() - hull_; }

std::vector<ItemSet> ScaledSpace::scale_elements() const {
    if (scale_.size() > 20) throw InputError("scale has too many generators to enumerate");
    std::set<ItemSet> out;
    const std::uint64_t n = std::uint64_t{1} << scale_.size();
    for (std::uint64_t mask = 0; mask < n; ++mask) {
        ItemSet s(size());
        for (std::size_t i = 0; i < scale_.size(); ++i) {
            if (mask >> i & 1) s |= scale_[i];
        }
        out.insert(std::move(s));
    }
    return {out.begin(), out.end()};
}

std::optional<int> ScaledSpace::find(const std::string& name) const {
    for (int i = 0; i < size(); ++i) {
        if (names_[i] == name) return i;
    }
    return std::nullopt;
}

std::string ScaledSpace::format(const ItemSet& s) const {
    std::string out = "{";
    bool first = true;
    s.for_each([&](int i) {
        if (!first) out += ",";
        first = false;
        out += names_[i];
    });
    return out + "}";
}

ItemSet ScaledSpace::parse_set(const std::string& text) const {
    auto open = text.find('{');
    auto close = text.rfind('}');
    if (open == std::string::npos || close == std::string::npos || close < open) {
        throw InputError("expected a set like {1,2}, got '" + text + "'");
    }
    std::string body = text.substr(open + 1, close - open - 1);
    for (char& c : body) {
        if (c == ',') c = ' ';
    }
    std::istringstream in(body);
    ItemSet s(size());
    std::string tok;
    while (in >> tok) {
        auto i = find(tok);
        if (!i) throw InputError("unknown item '" + tok + "'");
        s.insert(*i);
    }
    return s;
}

bool mod_equiv(const ItemSet& c, const ItemSet& d, const ScaledSpace& space) {
    ItemSet diff = c ^ d;
    if (diff.empty()) return true;
    ItemSet b = space.none();
    for (const auto& g : space.scale_generators()) {
        if (g.intersects(diff)) b |= g;
    }
    return diff.is_subset_of(b);
}

bool complement_equiv_check(const ItemSet& c, const ItemSet& d, const ScaledSpace& space) {
    return mod_equiv(space.all() - c, space.all() - d, space);
}

SetAlgebra::SetAlgebra(ScaledSpace space, std::vector<ItemSet> atoms)
    : space_(std::move(space)), atoms_(std::move(atoms)) {
    std::sort(atoms_.begin(), atoms_.end());
    atom_of_.assign(space_.size(), -1);
    for (int a = 0; a < atom_count(); ++a) {
        if (atoms_[a].empty()) throw InvariantError("empty atom");
        atoms_[a].for_each([&](int i) {
            if (atom_of_[i] >= 0) throw InvariantError("atoms overlap");
            atom_of_[i] = a;
        });
    }
    for (int i = 0; i < space_.size(); ++i) {
        if (atom_of_[i] < 0) throw InvariantError("atoms do not cover the universe");
    }
}

bool SetAlgebra::contains(const ItemSet& a) const {
    for (const auto& atom : atoms_) {
        if (atom.intersects(a) && !atom.is_subset_of(a)) return false;
    }
    return true;
}

ItemSet SetAlgebra::element(std::uint64_t mask) const {
    ItemSet s = space_.none();
    for (int a = 0; a < atom_count(); ++a) {
        if (mask >> a & 1) s |= atoms_[a];
    }
    return s;
}

std::vector<ItemSet> SetAlgebra::elements() const {
    if (!enumerable()) {
        throw InputError("algebra has " + std::to_string(atom_count()) + " atoms; at most " +
                         std::to_string(max_enumerable_atoms) + " can be enumerated");
    }
    std::vector<ItemSet> out;
    out.reserve(element_count());
    for (std::uint64_t m = 0; m < element_count(); ++m) out.push_back(element(m));
    std::sort(out.begin(), out.end());
    return out;
}

bool SetAlgebra::atom_has_point_at_infinity(int atom) const {
    return atoms_[atom].intersects(space_.points_at_infinity());
}

SetAlgebra generate_algebra(const std::vector<ItemSet>& generators, const ScaledSpace& space) {
    std::vector<ItemSet> blocks;
    if (space.size() > 0) blocks.push_back(space.all());
    auto refine = [&](const ItemSet& s) {
        if (static_cast<int>(s.universe()) != space.size()) throw InputError("generator has the wrong universe");
        std::vector<ItemSet> next;
        for (const auto& b : blocks) {
            ItemSet in = b & s, out = b - s;
            if (!in.empty()) next.push_back(std::move(in));
            if (!out.empty()) next.push_back(std::move(out));
        }
        blocks = std::move(next);
    };
    for (const auto& g : space.scale_generators()) refine(g);
    for (const auto& g : generators) refine(g);
    return SetAlgebra(space, std::move(blocks));
}

SetAlgebra powerset_algebra(const ScaledSpace& space) {
    std::vector<ItemSet> atoms;
    for (int i = 0; i < space.size(); ++i) atoms.push_back(ItemSet::of(space.size(), {i}));
    return SetAlgebra(space, std::move(atoms));
}

namespace {

std::vector<ItemSet> components_in(const ItemSet& region, const std::vector<std::vector<int>>& adj) {
    std::vector<ItemSet> out;
    ItemSet unseen = region;
    for (int s = unseen.first(); s >= 0; s = unseen.first()) {
        ItemSet part(region.universe());
        std::vector<int> stack{s};
        unseen.erase(s);
        part.insert(s);
        while (!stack.empty()) {
            int u = stack.back();
            stack.pop_back();
            for (int w : adj[u]) {
                if (unseen.contains(w)) {
                    unseen.erase(w);
                    part.insert(w);
                    stack.push_back(w);
                }
            }
        }
        out.push_back(std::move(part));
    }
    return out;
}

}  // namespace

InducedAlgebra induced_algebra(const ScaledSpace& space, const std::vector<std::pair<int, int>>& edges) {
    if (space.tail_count() > 0) throw InputError("induced algebras need a points-only space");
    std::vector<std::vector<int>> adj(space.size());
    for (auto [a, b] : edges) {
        if (a < 0 || b < 0 || a >= space.size() || b >= space.size()) throw InputError("edge endpoint out of range");
        adj[a].push_back(b);
        adj[b].push_back(a);
    }
    std::vector<ItemSet> gens;
    for (const auto& b : space.scale_elements()) {
        ItemSet bounded_union = space.none();
        for (auto& c : components_in(space.all() - b, adj)) {
            if (space.is_bounded(c)) bounded_union |= c;
            gens.push_back(std::move(c));
        }
        if (!space.is_bounded(bounded_union)) {
            throw InputError("bounded components of X \\ " + space.format(b) + " have an unbounded union");
        }
    }
    InducedAlgebra out;
    out.algebra = generate_algebra(gens, space);

    // Every union of components of X \ B, minus the hull, is a union of
    // components of X \ hull, and B = hull realizes all of those.
    auto outer = components_in(space.all() - space.bounded_hull(), adj);
    if (outer.size() > 16) throw InputError("too many components outside the bounded hull to list");
    std::set<ItemSet> reps;
    for (std::uint64_t m = 0; m < (std::uint64_t{1} << outer.size()); ++m) {
        ItemSet u = space.none();
        for (std::size_t i = 0; i < outer.size(); ++i) {
            if (m >> i & 1) u |= outer[i];
        }
        reps.insert(std::move(u));
    }
    out.representatives.assign(reps.begin(), reps.end());
    return out;
}

const char* to_string(EndTag t) { return t == EndTag::internal ? "internal" : "external"; }

std::vector<End> enumerate_ends(const SetAlgebra& algebra) {
    std::vector<End> ends;
    const ItemSet pts = algebra.space().points();
    for (int a = 0; a < algebra.atom_count(); ++a) {
        if (algebra.atom_bounded(a)) continue;
        End e;
        e.atom = a;
        e.core = algebra.atoms()[a] & pts;
        e.tag = e.core.empty() ? EndTag::external : EndTag::internal;
        ends.push_back(std::move(e));
    }
    return ends;
}

std::vector<ItemSet> end_members(const SetAlgebra& algebra, const End& end) {
    std::vector<ItemSet> out;
    for (const auto& el : algebra.elements()) {
        if (algebra.atoms()[end.atom].is_subset_of(el)) out.push_back(el);
    }
    return out;
}

CompactnessResult is_compact_at_infinity(const SetAlgebra& algebra) {
    const ScaledSpace& sp = algebra.space();
    const ItemSet infinity = sp.points_at_infinity();
    CompactnessResult res;
    auto fail = [&](const ItemSet& cover_union) {
        res.compact = false;
        res.uncovered = sp.all() - cover_union;
        for (const auto& atom : algebra.atoms()) {
            if (atom.is_subset_of(cover_union)) res.witness_cover.push_back(atom);
        }
    };
    if (algebra.enumerable()) {
        for (std::uint64_t m = 0; m < algebra.element_count(); ++m) {
            ItemSet u = algebra.element(m);
            if (!infinity.is_subset_of(u)) continue;
            if (!sp.is_bounded(sp.all() - u)) {
                fail(u);
                return res;
            }
        }
        return res;
    }
    // The largest cover avoiding an atom is the union of all other atoms.
    for (int a = 0; a < algebra.atom_count(); ++a) {
        if (algebra.atom_bounded(a) || algebra.atom_has_point_at_infinity(a)) continue;
        fail(sp.all() - algebra.atoms()[a]);
        return res;
    }
    return res;
}

HausdorffResult is_hausdorff(const SetAlgebra& algebra) {
    HausdorffResult res;
    const ItemSet pts = algebra.space().points();
    algebra.space().points_at_infinity().for_each([&](int x) {
        if (!res.hausdorff) return;
        ItemSet meet = algebra.atoms()[algebra.atom_of(x)] & pts;
        if (meet.count() != 1) {
            res.hausdorff = false;
            res.witness_point = x;
            res.intersection = meet;
        }
    });
    return res;
}

ItemSet Compactification::embed(const ItemSet& a) const {
    ItemSet out(space.size());
    a.for_each([&](int i) { out.insert(item_map[i]); });
    return out;
}

ItemSet Compactification::extend(const ItemSet& a) const {
    ItemSet out = embed(a);
    for (std::size_t e = 0; e < added_ends.size(); ++e) {
        if (source_atoms_[added_ends[e].atom].is_subset_of(a)) out.insert(new_points[e]);
    }
    return out;
}

ItemSet Compactification::restrict(const ItemSet& extended) const {
    ItemSet out(item_map.size());
    for (std::size_t i = 0; i < item_map.size(); ++i) {
        if (extended.contains(item_map[i])) out.insert(static_cast<int>(i));
    }
    return out;
}

ItemSet Compactification::closure(const ItemSet& a) const {
    ItemSet image = embed(a);
    ItemSet out(space.size());
    for (const auto& atom : algebra.atoms()) {
        if (atom.intersects(image)) out |= atom;
    }
    return out;
}

namespace {

// Pairs of elements to test identities on: everything for small algebras,
// otherwise atoms, atom pairs and a fixed pseudo-random sample of unions.
std::vector<ItemSet> sample_elements(const SetAlgebra& alg) {
    if (alg.enumerable() && alg.element_count() <= 256) return alg.elements();
    std::vector<ItemSet> out{alg.space().none(), alg.space().all()};
    for (const auto& a : alg.atoms()) out.push_back(a);
    std::mt19937_64 rng(0);
    for (int k = 0; k < 64; ++k) {
        ItemSet s = alg.space().none();
        for (const auto& a : alg.atoms()) {
            if (rng() & 1) s |= a;
        }
        out.push_back(std::move(s));
    }
    return out;
}

}  // namespace

Compactification compactify(const SetAlgebra& algebra) {
    const ScaledSpace& sp = algebra.space();
    Compactification c;
    c.source_atoms_ = algebra.atoms();
    c.end_of_atom_.assign(algebra.atom_count(), -1);
    for (auto& e : enumerate_ends(algebra)) {
        if (e.tag != EndTag::external) continue;
        c.end_of_atom_[e.atom] = static_cast<int>(c.added_ends.size());
        c.added_ends.push_back(std::move(e));
    }
    const int p = sp.point_count(), k = static_cast<int>(c.added_ends.size());
    std::vector<std::string> names;
    for (int i = 0; i < p; ++i) names.push_back(sp.name(i));
    for (int e = 0; e < k; ++e) names.push_back("end" + std::to_string(e + 1));
    for (int i = p; i < sp.size(); ++i) names.push_back(sp.name(i));
    c.item_map.resize(sp.size());
    for (int i = 0; i < sp.size(); ++i) c.item_map[i] = i < p ? i : i + k;
    for (int e = 0; e < k; ++e) c.new_points.push_back(p + e);

    const int n = sp.size() + k;
    std::vector<ItemSet> scale;
    for (const auto& g : sp.scale_generators()) {
        ItemSet m(n);
        g.for_each([&](int i) { m.insert(c.item_map[i]); });
        scale.push_back(std::move(m));
    }
    c.space = ScaledSpace(p + k, sp.tail_count(), std::move(scale), std::move(names));
    std::vector<ItemSet> atoms;
    for (int a = 0; a < algebra.atom_count(); ++a) atoms.push_back(c.extend(algebra.atoms()[a]));
    c.algebra = SetAlgebra(c.space, std::move(atoms));

    c.verified = is_hausdorff(algebra).hausdorff;
    auto& ch = c.checks;
    auto note = [&](bool ok, const char* what) {
        if (!ok) c.failures.push_back(what);
        return ok;
    };

    const auto sample = sample_elements(algebra);
    const ItemSet xbar = c.space.all();
    ch.isomorphism = true;
    ch.closure_is_extension = true;
    ch.closure_preserves_intersections = true;
    for (const auto& a : sample) {
        ItemSet ab = c.extend(a);
        ch.isomorphism = ch.isomorphism && c.restrict(ab) == a && c.algebra.contains(ab) &&
                         c.extend(sp.all() - a) == xbar - ab;
        ch.closure_is_extension = ch.closure_is_extension && c.closure(a) == ab;
    }
    for (std::size_t i = 0; i < sample.size(); ++i) {
        for (std::size_t j = i; j < sample.size(); ++j) {
            const ItemSet &a = sample[i], &b = sample[j];
            ch.isomorphism = ch.isomorphism && c.extend(a | b) == (c.extend(a) | c.extend(b)) &&
                             c.extend(a & b) == (c.extend(a) & c.extend(b));
            ch.closure_preserves_intersections =
                ch.closure_preserves_intersections && c.closure(a & b) == (c.closure(a) & c.closure(b));
        }
    }
    note(ch.isomorphism, "A -> A-bar is not a Boolean algebra isomorphism");
    note(ch.closure_is_extension, "closure of A differs from A-bar");
    note(ch.closure_preserves_intersections, "closure does not preserve intersections");

    ch.scale_fixed = true;
    for (const auto& g : sp.scale_generators()) ch.scale_fixed = ch.scale_fixed && c.extend(g) == c.embed(g);
    note(ch.scale_fixed, "a scale element gained new points");

    // V_x is determined by its atom: the atom belongs to V_x and to no other.
    ch.distinct_end_families = true;
    for (int i = 0; i < k; ++i) {
        for (int j = 0; j < k; ++j) {
            if (i == j) continue;
            const ItemSet& ai = c.source_atoms_[c.added_ends[i].atom];
            const ItemSet& aj = c.source_atoms_[c.added_ends[j].atom];
            ch.distinct_end_families = ch.distinct_end_families && !aj.is_subset_of(ai);
        }
    }
    note(ch.distinct_end_families, "two new points have the same end family");

    ch.compact_at_infinity = note(is_compact_at_infinity(c.algebra).compact, "result is not compact at infinity");
    ch.hausdorff = is_hausdorff(c.algebra).hausdorff;
    if (c.verified) note(ch.hausdorff, "result is not Hausdorff");
    ch.no_external_ends = true;
    for (const auto& e : enumerate_ends(c.algebra)) {
        ch.no_external_ends = ch.no_external_ends && e.tag == EndTag::internal;
    }
    note(ch.no_external_ends, "result still has external ends");

    ch.new_points_meet_x = true;
    ItemSet fresh(n);
    for (int v : c.new_points) fresh.insert(v);
    for (const auto& atom : c.algebra.atoms()) {
        if (atom.intersects(fresh)) ch.new_points_meet_x = ch.new_points_meet_x && !(atom - fresh).empty();
    }
    note(ch.new_points_meet_x, "an element meets the new points but not X");

    if (!c.failures.empty()) {
        if (c.verified) throw InvariantError("compactification check failed: " + c.failures.front());
        c.verified = false;
    }
    return c;
}

bool subalgebra_compactness_check(const SetAlgebra& parent, const ItemSet& y) {
    const ScaledSpace& sp = parent.space();
    if (static_cast<int>(y.universe()) != sp.size()) throw InputError("subset has the wrong universe");
    if (!parent.contains(y)) throw InputError("Y is not closed: X \\ Y is not a union of algebra elements");
    if (!is_compact_at_infinity(parent).compact) throw InputError("parent algebra is not compact at infinity");

    std::vector<int> keep = y.members();
    std::vector<int> index(sp.size(), -1);
    std::vector<std::string> names;
    int points = 0;
    for (int i : keep) {
        if (!sp.is_tail(i)) {
            index[i] = static_cast<int>(names.size());
            names.push_back(sp.name(i));
            ++points;
        }
    }
    for (int i : keep) {
        if (sp.is_tail(i)) {
            index[i] = static_cast<int>(names.size());
            names.push_back(sp.name(i));
        }
    }
    const int m = static_cast<int>(names.size());
    auto trace = [&](const ItemSet& s) {
        ItemSet t(m);
        (s & y).for_each([&](int i) { t.insert(index[i]); });
        return t;
    };
    std::vector<ItemSet> scale;
    for (const auto& g : sp.scale_generators()) scale.push_back(trace(g));
    ScaledSpace sub(points, m - points, std::move(scale), std::move(names));
    std::vector<ItemSet> atoms;
    for (const auto& a : parent.atoms()) {
        ItemSet t = trace(a);
        if (!t.empty()) atoms.push_back(std::move(t));
    }
    return is_compact_at_infinity(SetAlgebra(std::move(sub), std::move(atoms))).compact;
}

ItemSet FiniteOperator::apply(const ItemSet& a) const {
    ItemSet out(a.universe());
    a.for_each([&](int i) { out |= image[i]; });
    return out;
}

std::string check_linear(const FiniteOperator& f, const SetAlgebra& algebra) {
    const ScaledSpace& sp = algebra.space();
    if (static_cast<int>(f.image.size()) != sp.size()) return "operator image list has the wrong length";
    for (const auto& a : algebra.atoms()) {
        if (!algebra.contains(f.apply(a))) return "image of an atom is not an algebra element";
    }
    if (!sp.is_bounded(f.apply(sp.bounded_hull()))) return "image of a bounded set is unbounded";
    if (!mod_equiv(f.apply(sp.all()), sp.all(), sp)) return "f(X) is not equivalent to X";
    return {};
}

bool is_finite_eigenset(const ItemSet& a, const std::vector<FiniteOperator>& family, const SetAlgebra& algebra) {
    const ScaledSpace& sp = algebra.space();
    ItemSet rest = sp.all() - a;
    for (const auto& f : family) {
        if (!mod_equiv(f.apply(a), a, sp) || !mod_equiv(f.apply(rest), rest, sp)) return false;
    }
    return true;
}

SetAlgebra eigenset_algebra(const SetAlgebra& algebra, const std::vector<FiniteOperator>& family) {
    std::vector<ItemSet> eigen;
    for (const auto& el : algebra.elements()) {
        if (is_finite_eigenset(el, family, algebra)) eigen.push_back(el);
    }
    SetAlgebra out = generate_algebra(eigen, algebra.space());
    // Closed under the Boolean operations already, so nothing new appears.
    if (out.element_count() != eigen.size()) {
        throw InvariantError("eigensets are not closed under union, intersection and difference");
    }
    return out;
}

SetAlgebra ScaledSpaceFile::algebra() const {
    if (powerset) return powerset_algebra(space);
    if (!edges.empty()) return induced_algebra(space, edges).algebra;
    return generate_algebra(generators, space);
}

ScaledSpaceFile parse_scaled_space(std::istream& in) {
    int points = -1, tails = 0;
    std::vector<std::string> scale_text, gen_text;
    std::vector<int> scale_line, gen_line;
    std::vector<std::pair<std::string, std::string>> edge_text;
    std::vector<int> edge_line;
    bool powerset = false;
    std::string line;
    int line_no = 0;
    auto fail = [&](int at, const std::string& what) {
        throw InputError("line " + std::to_string(at) + ": " + what);
    };
    while (std::getline(in, line)) {
        ++line_no;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::string kw;
        if (!(ls >> kw)) continue;
        if (kw == "universe" || kw == "tails") {
            int v;
            if (!(ls >> v) || v < 0) fail(line_no, "expected a nonnegative count");
            (kw == "universe" ? points : tails) = v;
        } else if (kw == "scale" || kw == "gen") {
            std::string rest;
            std::getline(ls, rest);
            (kw == "scale" ? scale_text : gen_text).push_back(rest);
            (kw == "scale" ? scale_line : gen_line).push_back(line_no);
            continue;
        } else if (kw == "powerset") {
            powerset = true;
        } else if (kw == "edge") {
            std::string a, b;
            if (!(ls >> a >> b)) fail(line_no, "expected two items");
            edge_text.emplace_back(a, b);
            edge_line.push_back(line_no);
        } else {
            fail(line_no, "unknown directive '" + kw + "'");
        }
        std::string extra;
        if (ls >> extra) fail(line_no, "trailing token '" + extra + "'");
    }
    if (points < 0) throw InputError("missing 'universe' line");

    ScaledSpace bare(points, tails, {});
    auto parse_at = [&](const std::string& text, int at) {
        try {
            return bare.parse_set(text);
        } catch (const InputError& e) {
            fail(at, e.what());
        }
        return bare.none();
    };
    std::vector<ItemSet> scale;
    for (std::size_t i = 0; i < scale_text.size(); ++i) {
        ItemSet s = parse_at(scale_text[i], scale_line[i]);
        if (s.intersects(bare.all() - bare.points())) fail(scale_line[i], "scale elements cannot contain tails");
        scale.push_back(std::move(s));
    }
    ScaledSpaceFile f;
    f.space = ScaledSpace(points, tails, std::move(scale));
    for (std::size_t i = 0; i < gen_text.size(); ++i) f.generators.push_back(parse_at(gen_text[i], gen_line[i]));
    for (std::size_t i = 0; i < edge_text.size(); ++i) {
        auto a = f.space.find(edge_text[i].first), b = f.space.find(edge_text[i].second);
        if (!a || !b) fail(edge_line[i], "unknown item in edge");
        f.edges.emplace_back(*a, *b);
    }
    f.powerset = powerset;
    return f;
}

ScaledSpaceFile load_scaled_space(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open scaled-space file '" + path + "'");
    return parse_scaled_space(in);
}

std::string format_scaled_space(const ScaledSpaceFile& file) {
    std::ostringstream out;
    out << "universe " << file.space.point_count() << "\n";
    if (file.space.tail_count() > 0) out << "tails " << file.space.tail_count() << "\n";
    for (const auto& s : file.space.scale_generators()) out << "scale " << file.space.format(s) << "\n";
    for (const auto& g : file.generators) out << "gen " << file.space.format(g) << "\n";
    if (file.powerset) out << "powerset\n";
    for (auto [a, b] : file.edges) out << "edge " << file.space.name(a) << " " << file.space.name(b) << "\n";
    return out.str();
}

nlohmann::ordered_json compactification_report(const SetAlgebra& algebra) {
    using json = nlohmann::ordered_json;
    const ScaledSpace& sp = algebra.space();
    json out;
    out["universe"] = sp.point_count();
    out["tails"] = sp.tail_count();
    out["atoms"] = algebra.atom_count();
    out["points_at_infinity"] = sp.format(sp.points_at_infinity());

    json ends = json::array();
    for (const auto& e : enumerate_ends(algebra)) {
        json j;
        j["atom"] = sp.format(algebra.atoms()[e.atom]);
        j["tag"] = to_string(e.tag);
        j["core"] = sp.format(e.core);
        if (algebra.enumerable()) {
            json members = json::array();
            for (const auto& m : end_members(algebra, e)) members.push_back(sp.format(m));
            j["members"] = std::move(members);
        } else {
            j["members"] = nullptr;
        }
        ends.push_back(std::move(j));
    }
    out["ends"] = std::move(ends);

    auto haus = is_hausdorff(algebra);
    out["hausdorff"] = haus.hausdorff;
    auto comp = is_compact_at_infinity(algebra);
    json cj;
    cj["compact"] = comp.compact;
    if (!comp.compact) {
        json cover = json::array();
        for (const auto& s : comp.witness_cover) cover.push_back(sp.format(s));
        cj["witness_cover"] = std::move(cover);
        cj["uncovered"] = sp.format(comp.uncovered);
    }
    out["compact_at_infinity"] = std::move(cj);

    Compactification c = compactify(algebra);
    json cc;
    cc["external_ends_added"] = static_cast<int>(c.added_ends.size());
    cc["verified"] = c.verified;
    json checks;
    checks["isomorphism"] = c.checks.isomorphism;
    checks["scale_fixed"] = c.checks.scale_fixed;
    checks["closure_is_extension"] = c.checks.closure_is_extension;
    checks["closure_preserves_intersections"] = c.checks.closure_preserves_intersections;
    checks["distinct_end_families"] = c.checks.distinct_end_families;
    checks["compact_at_infinity"] = c.checks.compact_at_infinity;
    checks["hausdorff"] = c.checks.hausdorff;
    checks["no_external_ends"] = c.checks.no_external_ends;
    checks["new_points_meet_x"] = c.checks.new_points_meet_x;
    cc["checks"] = std::move(checks);
    json failures = json::array();
    for (const auto& f : c.failures) failures.push_back(f);
    cc["failures"] = std::move(failures);
    out["compactification"] = std::move(cc);
    return out;
}

}  // namespace endslab
