#pragma once

#include <string>
#include <vector>

#include "endslab/graph.hpp"
#include "endslab/group.hpp"

namespace testutil {

inline endslab::CayleyGraph cayley(const std::string& preset, int radius, int shell = 1) {
    return endslab::build_truncated_cayley(endslab::parse_preset(preset), endslab::Horizon{radius, shell});
}

inline endslab::VertexSet labels(const endslab::Graph& g, const std::vector<std::string>& names) {
    endslab::VertexSet s = g.empty_set();
    for (const auto& n : names) {
        auto v = g.find_label(n);
        if (!v) throw std::runtime_error("no vertex " + n);
        s.insert(*v);
    }
    return s;
}

// Labels of Z vertices as integers, sorted.
inline std::vector<int> ints(const endslab::Graph& g, const endslab::VertexSet& s) {
    std::vector<int> out;
    s.for_each([&](int v) { out.push_back(std::stoi(g.label(v))); });
    std::sort(out.begin(), out.end());
    return out;
}

inline std::vector<int> range(int lo, int hi) {
    std::vector<int> out;
    for (int i = lo; i <= hi; ++i) out.push_back(i);
    return out;
}

inline endslab::VertexSet z_set(const endslab::Graph& g, const std::vector<int>& values) {
    std::vector<std::string> names;
    for (int v : values) names.push_back(std::to_string(v));
    return labels(g, names);
}

}  // namespace testutil
