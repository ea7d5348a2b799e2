#include "endslab/check/oracles.hpp"

#include <algorithm>
#include <cstdlib>
#include <queue>
#include <set>
#include <stdexcept>

namespace endslab::oracle {

namespace {

using Mask = std::uint64_t;

Mask to_mask(const ItemSet& s) {
    if (s.universe() > 64) throw std::invalid_argument("oracle limited to 64 items");
    Mask m = 0;
    s.for_each([&](int i) { m |= Mask{1} << i; });
    return m;
}

ItemSet from_mask(Mask m, int n) {
    ItemSet s(n);
    for (int i = 0; i < n; ++i) {
        if (m >> i & 1) s.insert(i);
    }
    return s;
}

std::vector<Mask> scale_masks(const ScaledSpace& space) {
    std::set<Mask> seen{0};
    std::vector<Mask> todo{0};
    std::vector<Mask> gens;
    for (const auto& g : space.scale_generators()) gens.push_back(to_mask(g));
    while (!todo.empty()) {
        Mask m = todo.back();
        todo.pop_back();
        for (Mask g : gens) {
            if (seen.insert(m | g).second) todo.push_back(m | g);
        }
    }
    return {seen.begin(), seen.end()};
}

bool bounded(Mask a, const std::vector<Mask>& scale) {
    for (Mask b : scale) {
        if ((a & ~b) == 0) return true;
    }
    return false;
}

Mask point_mask(const ScaledSpace& space) {
    Mask m = 0;
    for (int i = 0; i < space.point_count(); ++i) m |= Mask{1} << i;
    return m;
}

Mask infinity_mask(const ScaledSpace& space, const std::vector<Mask>& scale) {
    Mask m = 0;
    for (int i = 0; i < space.point_count(); ++i) {
        if (!bounded(Mask{1} << i, scale)) m |= Mask{1} << i;
    }
    return m;
}

Mask full_mask(int n) { return n == 64 ? ~Mask{0} : (Mask{1} << n) - 1; }

// Component id per vertex of {v : d(v) >= r}, -1 elsewhere.
std::vector<int> level_ids(const Graph& graph, int r, int& count) {
    std::vector<int> region;
    for (int v = 0; v < graph.size(); ++v) {
        if (graph.depth(v) >= r) region.push_back(v);
    }
    std::vector<char> in(graph.size(), 0);
    for (int v : region) in[v] = 1;
    std::vector<int> id(graph.size(), -1);
    count = 0;
    for (int s : region) {
        if (id[s] >= 0) continue;
        std::queue<int> q;
        q.push(s);
        id[s] = count;
        while (!q.empty()) {
            int u = q.front();
            q.pop();
            for (int w : graph.neighbors(u)) {
                if (in[w] && id[w] < 0) {
                    id[w] = count;
                    q.push(w);
                }
            }
        }
        ++count;
    }
    return id;
}

std::vector<char> unbounded_ids(const Graph& graph, const std::vector<int>& id, int count) {
    std::vector<char> out(count, 0);
    const int shell = graph.horizon().radius - graph.horizon().shell_width + 1;
    for (int v = 0; v < graph.size(); ++v) {
        if (id[v] >= 0 && graph.depth(v) >= shell) out[id[v]] = 1;
    }
    return out;
}

std::vector<int> bfs_from(const Graph& graph, int s) {
    std::vector<int> d(graph.size(), -1);
    std::queue<int> q;
    d[s] = 0;
    q.push(s);
    while (!q.empty()) {
        int u = q.front();
        q.pop();
        for (int w : graph.neighbors(u)) {
            if (d[w] < 0) {
                d[w] = d[u] + 1;
                q.push(w);
            }
        }
    }
    return d;
}

}  // namespace

long long lattice_ball_size(int d, int r) {
    std::vector<int> x(d, -r);
    long long count = 0;
    while (true) {
        int norm = 0;
        for (int c : x) norm += std::abs(c);
        if (norm <= r) ++count;
        int i = 0;
        while (i < d && x[i] == r) x[i++] = -r;
        if (i == d) break;
        ++x[i];
    }
    return count;
}

long long free_ball_size_by_words(int k, int r) {
    std::set<std::vector<int>> seen;
    std::vector<int> word;
    // Odometer over all words of length n on letters +-1..+-k.
    for (int n = 0; n <= r; ++n) {
        std::vector<int> digit(n, 0);
        while (true) {
            std::vector<int> reduced;
            for (int dgt : digit) {
                int letter = dgt < k ? dgt + 1 : -(dgt - k + 1);
                if (!reduced.empty() && reduced.back() == -letter) {
                    reduced.pop_back();
                } else {
                    reduced.push_back(letter);
                }
            }
            seen.insert(reduced);
            int i = 0;
            while (i < n && digit[i] == 2 * k - 1) digit[i++] = 0;
            if (i == n) break;
            ++digit[i];
        }
    }
    return static_cast<long long>(seen.size());
}

long long free_ball_size_formula(int k, int r) {
    if (k == 1) return 2LL * r + 1;
    long long q = 2LL * k - 1, p = 1;
    for (int i = 0; i < r; ++i) p *= q;
    return 1 + 2LL * k * (p - 1) / (q - 1);
}

long long free_sphere_size(int k, int n) {
    if (n == 0) return 1;
    long long s = 2LL * k;
    for (int i = 1; i < n; ++i) s *= 2LL * k - 1;
    return s;
}

std::vector<int> component_counts(const Graph& graph, const std::vector<int>& radii) {
    std::vector<int> out;
    for (int r : radii) {
        int count = 0;
        auto id = level_ids(graph, r, count);
        auto unb = unbounded_ids(graph, id, count);
        out.push_back(static_cast<int>(std::count(unb.begin(), unb.end(), 1)));
    }
    return out;
}

int refinement_violations(const Graph& graph, const std::vector<int>& radii) {
    int violations = 0;
    for (std::size_t n = 0; n + 1 < radii.size(); ++n) {
        int outer_count = 0, inner_count = 0;
        auto outer = level_ids(graph, radii[n], outer_count);
        auto inner = level_ids(graph, radii[n + 1], inner_count);
        auto outer_unb = unbounded_ids(graph, outer, outer_count);
        auto inner_unb = unbounded_ids(graph, inner, inner_count);
        std::vector<std::set<int>> parents(inner_count);
        for (int v = 0; v < graph.size(); ++v) {
            if (inner[v] >= 0) parents[inner[v]].insert(outer[v]);
        }
        for (int c = 0; c < inner_count; ++c) {
            if (!inner_unb[c]) continue;
            const auto& p = parents[c];
            if (p.size() != 1 || *p.begin() < 0 || !outer_unb[*p.begin()]) ++violations;
        }
    }
    return violations;
}

std::vector<ItemSet> scale_closure(const ScaledSpace& space) {
    std::vector<ItemSet> out;
    for (Mask m : scale_masks(space)) out.push_back(from_mask(m, space.size()));
    std::sort(out.begin(), out.end());
    return out;
}

bool is_bounded(const ItemSet& a, const std::vector<ItemSet>& scale) {
    for (const auto& b : scale) {
        if (a.is_subset_of(b)) return true;
    }
    return false;
}

bool mod_equiv(const ItemSet& c, const ItemSet& d, const ScaledSpace& space) {
    Mask cm = to_mask(c), dm = to_mask(d);
    for (Mask b : scale_masks(space)) {
        if ((cm & ~b) == (dm & ~b)) return true;
    }
    return false;
}

std::vector<ItemSet> algebra_closure(const std::vector<ItemSet>& generators, const ScaledSpace& space) {
    const int n = space.size();
    const Mask full = full_mask(n);
    std::set<Mask> fam{0, full};
    for (const auto& g : generators) fam.insert(to_mask(g));
    for (Mask s : scale_masks(space)) fam.insert(s);
    bool grew = true;
    while (grew) {
        grew = false;
        std::vector<Mask> cur(fam.begin(), fam.end());
        for (Mask a : cur) {
            grew |= fam.insert(full & ~a).second;
            for (Mask b : cur) {
                grew |= fam.insert(a | b).second;
                grew |= fam.insert(a & b).second;
            }
        }
    }
    std::vector<ItemSet> out;
    for (Mask m : fam) out.push_back(from_mask(m, n));
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<OracleEnd> ends(const std::vector<ItemSet>& elements, const ScaledSpace& space) {
    const auto scale = scale_masks(space);
    const Mask points = point_mask(space);
    std::vector<Mask> e;
    for (const auto& x : elements) e.push_back(to_mask(x));
    const int n = static_cast<int>(e.size());
    std::set<std::vector<int>> families;

    if (n <= 20) {
        const Mask all = full_mask(space.size());
        std::vector<Mask> inter(std::size_t{1} << n);
        inter[0] = all;
        for (std::size_t m = 1; m < inter.size(); ++m) {
            int low = __builtin_ctzll(m);
            inter[m] = inter[m & (m - 1)] & e[low];
        }
        for (std::size_t m = 1; m < inter.size(); ++m) {
            if (bounded(inter[m], scale)) continue;
            bool maximal = true;
            for (int i = 0; i < n && maximal; ++i) {
                if (m >> i & 1) continue;
                if (!bounded(inter[m] & e[i], scale)) maximal = false;
            }
            if (!maximal) continue;
            std::vector<int> fam;
            for (int i = 0; i < n; ++i) {
                if (m >> i & 1) fam.push_back(i);
            }
            families.insert(fam);
        }
    } else {
        for (int j = 0; j < n; ++j) {
            if (bounded(e[j], scale)) continue;
            std::vector<int> fam;
            bool maximal = true;
            for (int i = 0; i < n; ++i) {
                if ((e[j] & ~e[i]) == 0) {
                    fam.push_back(i);
                } else if (!bounded(e[i] & e[j], scale)) {
                    maximal = false;
                }
            }
            if (maximal) families.insert(fam);
        }
    }

    std::vector<OracleEnd> out;
    for (const auto& fam : families) {
        OracleEnd end;
        Mask core = full_mask(space.size());
        for (int i : fam) {
            end.members.push_back(elements[i]);
            core &= e[i];
        }
        std::sort(end.members.begin(), end.members.end());
        end.core = from_mask(core & points, space.size());
        out.push_back(std::move(end));
    }
    std::sort(out.begin(), out.end(), [](const OracleEnd& a, const OracleEnd& b) { return a.members < b.members; });
    return out;
}

bool compact_at_infinity(const std::vector<ItemSet>& elements, const ScaledSpace& space) {
    const auto scale = scale_masks(space);
    const Mask inf = infinity_mask(space, scale);
    const Mask all = full_mask(space.size());
    std::vector<Mask> e;
    for (const auto& x : elements) e.push_back(to_mask(x));
    const int n = static_cast<int>(e.size());
    if (n <= 20) {
        std::vector<Mask> uni(std::size_t{1} << n, 0);
        for (std::size_t m = 0; m < uni.size(); ++m) {
            if (m) uni[m] = uni[m & (m - 1)] | e[__builtin_ctzll(m)];
            if ((inf & ~uni[m]) != 0) continue;
            // A finite family is its own best finite subfamily.
            if (!bounded(all & ~uni[m], scale)) return false;
        }
        return true;
    }
    for (Mask u : e) {
        if ((inf & ~u) == 0 && !bounded(all & ~u, scale)) return false;
    }
    return true;
}

bool hausdorff(const std::vector<ItemSet>& elements, const ScaledSpace& space) {
    const auto scale = scale_masks(space);
    const Mask inf = infinity_mask(space, scale);
    const Mask points = point_mask(space);
    for (int x = 0; x < space.point_count(); ++x) {
        if (!(inf >> x & 1)) continue;
        Mask meet = full_mask(space.size());
        for (const auto& a : elements) {
            Mask m = to_mask(a);
            if (m >> x & 1) meet &= m;
        }
        if ((meet & points) != (Mask{1} << x)) return false;
    }
    return true;
}

VertexSet cone(const Graph& graph, const VertexSet& a, int p) {
    auto dp = bfs_from(graph, p);
    VertexSet out = graph.empty_set();
    a.for_each([&](int y) {
        auto dy = bfs_from(graph, y);
        for (int v = 0; v < graph.size(); ++v) {
            if (dp[v] >= 0 && dy[v] >= 0 && dp[v] + dy[v] == dp[y]) out.insert(v);
        }
    });
    return out;
}

VertexSet gromov(const Graph& graph, const VertexSet& a, int p, int r) {
    auto dp = bfs_from(graph, p);
    VertexSet out = graph.empty_set();
    a.for_each([&](int y) {
        auto dy = bfs_from(graph, y);
        for (int x = 0; x < graph.size(); ++x) {
            if (dy[x] < 0 || dp[x] < 0) continue;
            // 2 <x, y>_p = d(x, p) + d(y, p) - d(x, y)
            if (dp[x] + dp[y] - dy[x] > 2 * r) out.insert(x);
        }
    });
    return out;
}

}  // namespace endslab::oracle
