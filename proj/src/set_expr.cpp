#include "endslab/set_expr.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "endslab/error.hpp"

namespace endslab {

namespace {

const CayleyGraph& need_group(const SetContext& ctx, const std::string& what) {
    if (!ctx.cayley) throw InputError("'" + what + "' needs a group preset");
    return *ctx.cayley;
}

int parse_int(const std::string& text, const std::string& what) {
    try {
        std::size_t used = 0;
        int v = std::stoi(text, &used);
        if (used == text.size()) return v;
    } catch (const std::exception&) {
    }
    throw InputError("expected an integer for " + what + ", got '" + text + "'");
}

VertexSet by_label(const Graph& graph, std::istream& in) {
    VertexSet out = graph.empty_set();
    std::string tok;
    while (in >> tok) {
        auto v = graph.find_label(tok);
        if (!v) throw InputError("vertex '" + tok + "' is not in the truncated graph");
        out.insert(*v);
    }
    return out;
}

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t");
    if (b == std::string::npos) return "";
    auto e = s.find_last_not_of(" \t");
    return s.substr(b, e - b + 1);
}

}  // namespace

VertexSet load_vertex_list(const std::string& path, const Graph& graph) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open vertex list '" + path + "'");
    std::ostringstream text;
    std::string line;
    while (std::getline(in, line)) {
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        text << line << ' ';
    }
    std::istringstream tokens(text.str());
    return by_label(graph, tokens);
}

VertexSet parse_set_expr(const std::string& raw, const SetContext& ctx) {
    if (!ctx.graph) throw InputError("no graph for set expression");
    const Graph& graph = *ctx.graph;
    const std::string expr = trim(raw);
    std::istringstream in(expr);
    std::string head;
    in >> head;
    std::string rest;
    std::getline(in, rest);
    rest = trim(rest);

    if (head == "not") return parse_set_expr(rest, ctx).complement();
    if (head == "empty") return graph.empty_set();
    if (head == "all") return graph.all();
    if (head == "ball") return graph.depth_ball(parse_int(rest, "ball radius"));
    if (!expr.empty() && expr.front() == '{') {
        if (expr.back() != '}') throw InputError("unterminated vertex list '" + expr + "'");
        std::string body = expr.substr(1, expr.size() - 2);
        // Z^d labels contain commas; split on top-level commas only.
        std::string spaced;
        int depth = 0;
        for (char c : body) {
            if (c == '(') ++depth;
            if (c == ')') --depth;
            spaced += (c == ',' && depth == 0) ? ' ' : c;
        }
        std::istringstream tokens(spaced);
        return by_label(graph, tokens);
    }

    if (head == "ray+" || head == "ray-") {
        const auto& cg = need_group(ctx, head);
        if (cg.oracle().name() != "Z") throw InputError("'" + head + "' is defined on Z only");
        VertexSet out = graph.empty_set();
        for (int v = 0; v < graph.size(); ++v) {
            int x = cg.elements[v][0];
            if (head == "ray+" ? x >= 0 : x <= 0) out.insert(v);
        }
        return out;
    }
    if (head == "evens" || head == "odds") {
        const auto& cg = need_group(ctx, head);
        const int want = head == "evens" ? 0 : 1;
        const bool abelian = cg.preset.kind == PresetKind::free_abelian;
        VertexSet out = graph.empty_set();
        for (int v = 0; v < graph.size(); ++v) {
            int key = abelian ? cg.elements[v].at(0) : graph.depth(v);
            if (((key % 2) + 2) % 2 == want) out.insert(v);
        }
        return out;
    }
    if (head == "halfplane") {
        const auto& cg = need_group(ctx, head);
        if (cg.preset.kind != PresetKind::free_abelian) throw InputError("'halfplane' needs a Z^d preset");
        std::string cond;
        for (char c : rest) {
            if (c != ' ') cond += c;
        }
        if (cond.size() < 4 || (cond[0] != 'x' && cond[0] != 'y') || (cond.substr(1, 2) != ">=" && cond.substr(1, 2) != "<=")) {
            throw InputError("halfplane condition must look like x>=c, x<=c, y>=c or y<=c");
        }
        const std::size_t axis = cond[0] == 'x' ? 0 : 1;
        if (axis >= static_cast<std::size_t>(cg.preset.rank)) throw InputError("halfplane axis exceeds the rank");
        const bool ge = cond[1] == '>';
        const int c = parse_int(cond.substr(3), "halfplane bound");
        VertexSet out = graph.empty_set();
        for (int v = 0; v < graph.size(); ++v) {
            int x = cg.elements[v][axis];
            if (ge ? x >= c : x <= c) out.insert(v);
        }
        return out;
    }
    if (head == "branch") {
        const auto& cg = need_group(ctx, head);
        if (cg.preset.kind == PresetKind::free_abelian) throw InputError("'branch' needs a free group preset");
        auto prefix = cg.oracle().parse(rest);
        if (!prefix) throw InputError("cannot parse branch word '" + rest + "'");
        VertexSet out = graph.empty_set();
        for (int v = 0; v < graph.size(); ++v) {
            const auto& e = cg.elements[v];
            if (e.size() >= prefix->size() && std::equal(prefix->begin(), prefix->end(), e.begin())) out.insert(v);
        }
        return out;
    }
    if (head == "component") {
        if (!ctx.dec) throw InputError("'component' needs a level decomposition");
        std::istringstream args(rest);
        std::string l, i, extra;
        if (!(args >> l >> i) || (args >> extra)) throw InputError("usage: component <level> <index>");
        int level = parse_int(l, "component level"), index = parse_int(i, "component index");
        if (level < 1 || level > ctx.dec->depth()) {
            throw InputError("component level must be in 1.." + std::to_string(ctx.dec->depth()));
        }
        const Level& lv = ctx.dec->levels[level - 1];
        if (index < 0 || index >= static_cast<int>(lv.unbounded.size())) {
            throw InputError("level " + std::to_string(level) + " has " + std::to_string(lv.unbounded.size()) +
                             " unbounded components");
        }
        return lv.components[lv.unbounded[index]].as_set(graph);
    }
    if (expr.empty()) throw InputError("empty set expression");
    return load_vertex_list(expr, graph);
}

}  // namespace endslab
