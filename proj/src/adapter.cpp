#include "endslab/adapter.hpp"

#include "endslab/error.hpp"

namespace endslab {

AdapterModel graph_algebra_adapter(const LevelDecomposition& dec, const Graph& graph, int depth) {
    if (depth < 1 || depth > dec.depth()) {
        throw InputError("adapter depth " + std::to_string(depth) + " outside 1.." + std::to_string(dec.depth()));
    }
    const Level& level = dec.levels[depth - 1];
    AdapterModel m;
    m.depth = depth;
    m.item_of_vertex.assign(graph.size(), -1);
    std::vector<std::string> names;
    int points = 0;
    for (int v = 0; v < graph.size(); ++v) {
        bool inside = graph.depth(v) < level.radius;
        if (inside) {
            m.item_of_vertex[v] = points++;
            names.push_back(graph.label(v));
        }
    }
    for (const auto& comp : level.components) {
        if (comp.unbounded()) continue;
        for (int v : comp.vertices) {
            m.item_of_vertex[v] = points++;
            names.push_back(graph.label(v));
        }
    }
    std::vector<int> tail_of(level.components.size(), -1);
    for (int idx : level.unbounded) {
        tail_of[idx] = static_cast<int>(m.tail_component.size());
        m.tail_component.push_back(idx);
        m.tail_vertices.push_back(level.components[idx].vertices);
        names.push_back("C" + std::to_string(depth) + "." + std::to_string(m.tail_component.size()));
    }
    const int tails = static_cast<int>(m.tail_component.size());
    const int n = points + tails;

    std::vector<ItemSet> scale;
    for (int i = 0; i < points; ++i) scale.push_back(ItemSet::of(n, {i}));
    ScaledSpace space(points, tails, std::move(scale), std::move(names));

    std::vector<ItemSet> gens;
    for (std::size_t c = 0; c < level.components.size(); ++c) {
        const auto& comp = level.components[c];
        ItemSet g(n);
        if (comp.unbounded()) {
            g.insert(points + tail_of[c]);
        } else {
            for (int v : comp.vertices) g.insert(m.item_of_vertex[v]);
        }
        gens.push_back(std::move(g));
    }
    m.algebra = generate_algebra(gens, space);
    return m;
}

std::optional<ItemSet> AdapterModel::encode(const VertexSet& a) const {
    const ScaledSpace& sp = algebra.space();
    ItemSet out = sp.none();
    for (std::size_t v = 0; v < item_of_vertex.size(); ++v) {
        if (item_of_vertex[v] >= 0 && a.contains(static_cast<int>(v))) out.insert(item_of_vertex[v]);
    }
    for (std::size_t t = 0; t < tail_vertices.size(); ++t) {
        std::size_t hit = 0;
        for (int v : tail_vertices[t]) hit += a.contains(v);
        if (hit == tail_vertices[t].size()) {
            out.insert(sp.point_count() + static_cast<int>(t));
        } else if (hit != 0) {
            return std::nullopt;
        }
    }
    return out;
}

VertexSet AdapterModel::decode(const ItemSet& s, int graph_size) const {
    VertexSet out(graph_size);
    for (int v = 0; v < graph_size; ++v) {
        if (item_of_vertex[v] >= 0 && s.contains(item_of_vertex[v])) out.insert(v);
    }
    const int p = algebra.space().point_count();
    for (std::size_t t = 0; t < tail_vertices.size(); ++t) {
        if (s.contains(p + static_cast<int>(t))) {
            for (int v : tail_vertices[t]) out.insert(v);
        }
    }
    return out;
}

}  // namespace endslab
