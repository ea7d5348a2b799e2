#include "endslab/group.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <deque>
#include <mutex>
#include <set>
#include <sstream>

#include "endslab/error.hpp"

namespace endslab {

Element GroupOracle::evaluate(const Word& w) const {
    Element x = identity();
    const auto& gens = generators();
    for (int letter : w) x = multiply(x, gens.at(letter));
    return x;
}

int GroupOracle::inverse_generator(int i) const {
    const auto& gens = generators();
    Element inv = inverse(gens.at(i));
    auto it = std::find(gens.begin(), gens.end(), inv);
    if (it == gens.end()) throw InputError(name() + ": generating set is not symmetric");
    return static_cast<int>(it - gens.begin());
}

namespace {

class FreeAbelian final : public GroupOracle {
public:
    explicit FreeAbelian(int rank) : rank_(rank) {
        for (int i = 0; i < rank; ++i) {
            Element e(rank, 0);
            e[i] = 1;
            gens_.push_back(e);
            e[i] = -1;
            gens_.push_back(e);
        }
    }

    std::string name() const override {
        if (rank_ == 1) return "Z";
        return "Z^" + std::to_string(rank_);
    }
    Element identity() const override { return Element(rank_, 0); }
    Element multiply(const Element& a, const Element& b) const override {
        Element c(rank_);
        for (int i = 0; i < rank_; ++i) c[i] = a[i] + b[i];
        return c;
    }
    Element inverse(const Element& a) const override {
        Element c(rank_);
        for (int i = 0; i < rank_; ++i) c[i] = -a[i];
        return c;
    }
    const std::vector<Element>& generators() const override { return gens_; }
    int word_length(const Element& a) const override {
        int s = 0;
        for (int x : a) s += std::abs(x);
        return s;
    }
    std::string format(const Element& a) const override {
        if (rank_ == 1) return std::to_string(a[0]);
        std::string s = "(";
        for (int i = 0; i < rank_; ++i) {
            if (i) s += ",";
            s += std::to_string(a[i]);
        }
        return s + ")";
    }
    std::optional<Element> parse(std::string_view text) const override {
        std::string t(text);
        if (rank_ == 0) return t == "e" || t == "()" ? std::optional<Element>(Element{}) : std::nullopt;
        if (!t.empty() && t.front() == '(') {
            if (t.back() != ')') return std::nullopt;
            t = t.substr(1, t.size() - 2);
        }
        for (char& c : t) {
            if (c == ',') c = ' ';
        }
        std::istringstream in(t);
        Element e;
        int v;
        while (in >> v) e.push_back(v);
        if (!in.eof() || static_cast<int>(e.size()) != rank_) return std::nullopt;
        return e;
    }
    double ball_size(int r) const override {
        // sum_i 2^i C(d,i) C(r,i) lattice points with |x|_1 <= r
        double total = 0;
        for (int i = 0; i <= rank_; ++i) {
            total += std::pow(2.0, i) * binom(rank_, i) * binom(r, i);
        }
        return total;
    }
    int default_radius_cap() const override {
        switch (rank_) {
            case 0: return 1 << 20;
            case 1: return 50;
            case 2: return 30;
            default: return 12;
        }
    }

private:
    static double binom(int n, int k) {
        if (k < 0 || k > n) return 0;
        double r = 1;
        for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
        return r;
    }

    int rank_;
    std::vector<Element> gens_;
};

// Letters +i / -i for the i-th free generator and its inverse.
Element free_reduce_append(Element a, const Element& b) {
    for (int x : b) {
        if (!a.empty() && a.back() == -x) {
            a.pop_back();
        } else {
            a.push_back(x);
        }
    }
    return a;
}

class FreeGroup final : public GroupOracle {
public:
    explicit FreeGroup(int rank) : rank_(rank) {
        for (int i = 1; i <= rank; ++i) {
            gens_.push_back(Element{i});
            gens_.push_back(Element{-i});
        }
    }

    std::string name() const override { return "F" + std::to_string(rank_); }
    Element identity() const override { return {}; }
    Element multiply(const Element& a, const Element& b) const override {
        return free_reduce_append(a, b);
    }
    Element inverse(const Element& a) const override {
        Element r(a.rbegin(), a.rend());
        for (int& x : r) x = -x;
        return r;
    }
    const std::vector<Element>& generators() const override { return gens_; }
    int word_length(const Element& a) const override { return static_cast<int>(a.size()); }
    std::string format(const Element& a) const override {
        if (a.empty()) return "e";
        std::string s;
        for (int x : a) {
            char c = static_cast<char>('a' + std::abs(x) - 1);
            s += x > 0 ? c : static_cast<char>(std::toupper(c));
        }
        return s;
    }
    std::optional<Element> parse(std::string_view text) const override {
        if (text == "e") return Element{};
        Element raw;
        for (char c : text) {
            int idx = std::tolower(c) - 'a' + 1;
            if (!std::isalpha(static_cast<unsigned char>(c)) || idx < 1 || idx > rank_) {
                return std::nullopt;
            }
            raw.push_back(std::islower(static_cast<unsigned char>(c)) ? idx : -idx);
        }
        return free_reduce_append({}, raw);
    }
    double ball_size(int r) const override {
        if (rank_ == 1) return 2.0 * r + 1;
        double q = 2.0 * rank_ - 1;
        return 1 + 2.0 * rank_ * (std::pow(q, r) - 1) / (q - 1);
    }
    int default_radius_cap() const override {
        if (rank_ == 1) return 50;
        if (rank_ == 2) return 12;
        return 8;
    }

private:
    int rank_;
    std::vector<Element> gens_;
};

// Elements are alternating words over {1 = s, 2 = t}.
class InfiniteDihedral final : public GroupOracle {
public:
    InfiniteDihedral() : gens_{{1}, {2}} {}

    std::string name() const override { return "Dinf"; }
    Element identity() const override { return {}; }
    Element multiply(const Element& a, const Element& b) const override {
        Element r = a;
        for (int x : b) {
            if (!r.empty() && r.back() == x) {
                r.pop_back();
            } else {
                r.push_back(x);
            }
        }
        return r;
    }
    Element inverse(const Element& a) const override { return Element(a.rbegin(), a.rend()); }
    const std::vector<Element>& generators() const override { return gens_; }
    int word_length(const Element& a) const override { return static_cast<int>(a.size()); }
    std::string format(const Element& a) const override {
        if (a.empty()) return "e";
        std::string s;
        for (int x : a) s += x == 1 ? 's' : 't';
        return s;
    }
    std::optional<Element> parse(std::string_view text) const override {
        if (text == "e") return Element{};
        Element r;
        for (char c : text) {
            if (c != 's' && c != 't') return std::nullopt;
            r = multiply(r, Element{c == 's' ? 1 : 2});
        }
        return r;
    }
    double ball_size(int r) const override { return 2.0 * r + 1; }
    int default_radius_cap() const override { return 50; }

private:
    std::vector<Element> gens_;
};

std::map<std::string, OracleFactory>& registry() {
    static std::map<std::string, OracleFactory> r;
    return r;
}
std::mutex& registry_mutex() {
    static std::mutex m;
    return m;
}

}  // namespace

std::shared_ptr<const GroupOracle> make_free_abelian(int rank) {
    if (rank < 0) throw InputError("free abelian rank must be nonnegative");
    return std::make_shared<FreeAbelian>(rank);
}

std::shared_ptr<const GroupOracle> make_free_group(int rank) {
    if (rank < 1 || rank > 26) throw InputError("free group rank must be in 1..26");
    return std::make_shared<FreeGroup>(rank);
}

std::shared_ptr<const GroupOracle> make_infinite_dihedral() {
    return std::make_shared<InfiniteDihedral>();
}

void register_group_oracle(const std::string& name, OracleFactory factory) {
    std::lock_guard lock(registry_mutex());
    registry()[name] = std::move(factory);
}

GroupPreset make_preset(PresetKind kind, int rank) {
    GroupPreset p;
    p.kind = kind;
    p.rank = rank;
    if (kind == PresetKind::free_abelian) {
        p.oracle = make_free_abelian(rank);
    } else if (kind == PresetKind::free_group) {
        p.oracle = make_free_group(rank);
    } else {
        throw InputError("explicit presentations are created through parse_preset");
    }
    p.name = p.oracle->name();
    validate_oracle(*p.oracle);
    return p;
}

GroupPreset parse_preset(std::string_view name) {
    std::string s(name);
    auto all_digits = [](const std::string& t) {
        return !t.empty() && std::all_of(t.begin(), t.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
    };
    if (s == "Z") return make_preset(PresetKind::free_abelian, 1);
    if (s.size() > 1 && s[0] == 'Z') {
        std::string rest = s.substr(s[1] == '^' ? 2 : 1);
        if (all_digits(rest)) return make_preset(PresetKind::free_abelian, std::stoi(rest));
    }
    if (s.size() > 1 && s[0] == 'F' && all_digits(s.substr(1))) {
        return make_preset(PresetKind::free_group, std::stoi(s.substr(1)));
    }
    GroupPreset p;
    p.kind = PresetKind::explicit_presentation;
    if (s == "Dinf") {
        p.oracle = make_infinite_dihedral();
    } else if (s.rfind("custom:", 0) == 0) {
        OracleFactory f;
        {
            std::lock_guard lock(registry_mutex());
            auto it = registry().find(s.substr(7));
            if (it == registry().end()) throw InputError("no group oracle registered as '" + s.substr(7) + "'");
            f = it->second;
        }
        p.oracle = f();
    } else {
        throw InputError("unknown preset '" + s + "'");
    }
    p.name = p.oracle->name();
    p.rank = static_cast<int>(p.oracle->generators().size());
    validate_oracle(*p.oracle);
    return p;
}

OracleReport check_oracle(const GroupOracle& o, std::uint64_t seed, int samples, int max_len) {
    OracleReport rep;
    auto fail = [&](std::string what) {
        rep.ok = false;
        rep.failure = o.name() + ": " + std::move(what);
        return rep;
    };
    const auto& gens = o.generators();
    const Element id = o.identity();
    std::vector<int> inv(gens.size());
    for (std::size_t i = 0; i < gens.size(); ++i) {
        if (gens[i] == id) return fail("identity in generating set");
        Element gi = o.inverse(gens[i]);
        auto it = std::find(gens.begin(), gens.end(), gi);
        if (it == gens.end()) return fail("generating set not closed under inverses");
        inv[i] = static_cast<int>(it - gens.begin());
        if (o.multiply(gens[i], gi) != id) return fail("g * g^-1 is not the identity");
    }
    if (gens.empty()) return rep;

    std::mt19937_64 rng(seed);
    auto random_word = [&]() {
        Word w(rng() % (max_len + 1));
        for (int& l : w) l = static_cast<int>(rng() % gens.size());
        return w;
    };
    auto inverse_word = [&](const Word& w) {
        Word r;
        for (auto it = w.rbegin(); it != w.rend(); ++it) r.push_back(inv[*it]);
        return r;
    };
    auto concat = [](Word a, const Word& b) {
        a.insert(a.end(), b.begin(), b.end());
        return a;
    };
    for (int k = 0; k < samples; ++k) {
        Word w = random_word(), u = random_word(), v = random_word();
        Element x = o.evaluate(w), y = o.evaluate(u), z = o.evaluate(v);
        if (o.multiply(x, id) != x || o.multiply(id, x) != x) return fail("identity is not neutral");
        if (o.evaluate(concat(w, inverse_word(w))) != id) return fail("w w^-1 does not reduce to the identity");
        if (o.evaluate(concat(concat(w, u), inverse_word(u))) != x) {
            return fail("normal form depends on the word (w u u^-1 != w)");
        }
        if (o.evaluate(concat(w, u)) != o.multiply(x, y)) return fail("product disagrees with concatenation");
        if (o.multiply(o.multiply(x, y), z) != o.multiply(x, o.multiply(y, z))) {
            return fail("multiplication is not associative");
        }
        if (o.multiply(x, o.inverse(x)) != id) return fail("x x^-1 is not the identity");
        if (o.word_length(x) > static_cast<int>(w.size())) return fail("word length exceeds a representing word");
        if ((o.word_length(x) == 0) != (x == id)) return fail("word length zero off the identity");
        auto back = o.parse(o.format(x));
        if (!back || *back != x) return fail("format/parse round trip failed for " + o.format(x));
    }
    return rep;
}

void validate_oracle(const GroupOracle& oracle) {
    auto rep = check_oracle(oracle);
    if (!rep.ok) throw InputError("normal-form oracle rejected: " + rep.failure);
}

int CayleyGraph::vertex_of(const Element& e) const {
    auto it = index.find(e);
    return it == index.end() ? -1 : it->second;
}

double vertex_budget(const GroupOracle& oracle) {
    if (const char* env = std::getenv("ENDSLAB_MAX_VERTICES")) {
        char* end = nullptr;
        double v = std::strtod(env, &end);
        if (end != env && v > 0) return v;
    }
    return oracle.ball_size(oracle.default_radius_cap());
}

CayleyGraph build_truncated_cayley(const GroupPreset& preset, Horizon horizon) {
    horizon.validate();
    if (!preset.oracle) throw InputError("preset has no oracle");
    const GroupOracle& o = *preset.oracle;
    validate_oracle(o);
    double estimate = o.ball_size(horizon.radius);
    double budget = vertex_budget(o);
    if (estimate > budget) {
        std::ostringstream msg;
        msg << "horizon radius " << horizon.radius << " for " << o.name() << " needs about "
            << static_cast<long long>(estimate) << " vertices, above the cap of "
            << static_cast<long long>(budget) << " (default radius cap " << o.default_radius_cap()
            << "; set ENDSLAB_MAX_VERTICES to raise it)";
        throw HorizonError(msg.str());
    }

    const auto& gens = o.generators();
    std::vector<Element> elems{o.identity()};
    std::map<Element, int> idx{{o.identity(), 0}};
    std::vector<int> len{0};
    std::set<std::pair<int, int>> edge_set;
    std::vector<Graph::Edge> edges;
    for (std::size_t head = 0; head < elems.size(); ++head) {
        Element x = elems[head];
        int lx = len[head];
        if (lx == horizon.radius) continue;
        for (const auto& g : gens) {
            Element y = o.multiply(x, g);
            auto [it, fresh] = idx.emplace(y, static_cast<int>(elems.size()));
            if (fresh) {
                elems.push_back(y);
                len.push_back(lx + 1);
            }
            int a = static_cast<int>(head), b = it->second;
            if (edge_set.insert(std::minmax(a, b)).second) edges.push_back({a, b});
        }
    }
    // Edges between two elements at length R were skipped above; add them.
    for (std::size_t v = 0; v < elems.size(); ++v) {
        if (len[v] != horizon.radius) continue;
        for (const auto& g : gens) {
            auto it = idx.find(o.multiply(elems[v], g));
            if (it == idx.end()) continue;
            int a = static_cast<int>(v), b = it->second;
            if (edge_set.insert(std::minmax(a, b)).second) edges.push_back({a, b});
        }
    }

    std::vector<std::string> labels;
    labels.reserve(elems.size());
    for (const auto& e : elems) labels.push_back(o.format(e));

    CayleyGraph cg;
    cg.preset = preset;
    cg.graph = Graph::build(static_cast<int>(elems.size()), edges, 0, std::move(labels), horizon);
    cg.elements.resize(cg.graph.size());
    for (int v = 0; v < cg.graph.size(); ++v) {
        cg.elements[v] = elems[cg.graph.source_id(v)];
        cg.index.emplace(cg.elements[v], v);
    }
    cg.right_mult.assign(gens.size(), std::vector<int>(cg.graph.size(), -1));
    for (std::size_t i = 0; i < gens.size(); ++i) {
        for (int v = 0; v < cg.graph.size(); ++v) {
            cg.right_mult[i][v] = cg.vertex_of(o.multiply(cg.elements[v], gens[i]));
        }
    }
    return cg;
}

}  // namespace endslab
