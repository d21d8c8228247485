#include "koebe/startree.hpp"

#include <algorithm>
#include <functional>

namespace koebe {

Network MarkedMap::network() const {
    std::vector<Edge> edges;
    edges.reserve(map.edge_count());
    for (int e = 0; e < map.edge_count(); ++e) {
        auto [u, v] = map.edge_ends(e);
        edges.push_back({u, v, static_cast<double>(marking[e])});
    }
    return Network(map.vertex_count(), std::move(edges));
}

MarkedMap star_tree_transform(const PlanarMap& map) {
    if (map.multigraph()) fail(Errc::NotSimple, "the star-tree transform needs a simple map");
    const int n = map.vertex_count(), m = map.edge_count();
    std::vector<std::vector<int>> rot(n + m);
    std::vector<int> owner(n + m, -1), divided(n + m, -1);
    for (int v = 0; v < n; ++v) owner[v] = v;
    for (int e = 0; e < m; ++e) divided[n + e] = e;
    struct Pending {
        int x, y, root;
    };
    std::vector<Pending> added;
    std::vector<int> height(n, 0);

    auto fresh = [&](int root) {
        rot.emplace_back();
        owner.push_back(root);
        divided.push_back(-1);
        return static_cast<int>(rot.size()) - 1;
    };
    auto link = [&](int x, int y, int root) { added.push_back({x, y, root}); };

    for (int v = 0; v < n; ++v) {
        const int d = map.degree(v);
        std::vector<int> leaves;
        for (int i = 0; i < d; ++i) leaves.push_back(n + map.edge_of(map.first_dart(v) + i));
        if (d == 0) continue;
        if (d == 1) {
            int b = fresh(v);
            rot[v] = {leaves[0], b};
            rot[leaves[0]].push_back(v);
            rot[b] = {v};
            link(v, leaves[0], v);
            link(v, b, v);
            height[v] = 1;
            continue;
        }
        // Balanced split: the first ⌈k/2⌉ leaves go left.
        std::function<int(int, int, int, int)> build = [&](int lo, int hi, int parent, int depth) -> int {
            if (hi - lo == 1) {
                rot[leaves[lo]].push_back(parent);
                link(parent, leaves[lo], v);
                height[v] = std::max(height[v], depth);
                return leaves[lo];
            }
            int x = fresh(v);
            link(parent, x, v);
            int mid = lo + (hi - lo + 1) / 2;
            int left = build(lo, mid, x, depth + 1);
            int right = build(mid, hi, x, depth + 1);
            rot[x] = {parent, left, right};
            return x;
        };
        int mid = (d + 1) / 2;
        int left = build(0, mid, v, 1);
        int right = build(mid, d, v, 1);
        int b1 = fresh(v), b2 = fresh(v);
        rot[v] = {left, right, b1};
        rot[b1] = {v, b2};
        rot[b2] = {b1};
        link(v, b1, v);
        link(b1, b2, v);
        height[v] = std::max(height[v], 2);
    }

    MarkedMap out;
    const int total = static_cast<int>(rot.size());
    out.map = PlanarMap::build(total, std::move(rot));
    out.marking.assign(out.map.edge_count(), 0);
    out.tree_of_edge.assign(out.map.edge_count(), -1);
    for (const auto& p : added) {
        int e = out.map.edge_of(out.map.find_dart(p.x, p.y));
        out.tree_of_edge[e] = p.root;
        out.marking[e] = map.degree(p.root);
    }
    out.tree_of_vertex = std::move(owner);
    out.subdivided_edge = std::move(divided);
    for (int e = 0; e < m; ++e) out.source_edges.push_back(map.edge_ends(e));
    out.tree_height = std::move(height);
    return out;
}

Flow transfer_flow(const MarkedMap& star, const Flow& theta) {
    const int n = star.source_vertex_count();
    const int m = static_cast<int>(star.source_edges.size());
    if (static_cast<int>(theta.value.size()) != m) fail(Errc::InvalidInput, "flow size does not match the source map");
    const PlanarMap& g = star.map;
    Flow out;
    out.value.assign(g.edge_count(), 0.0);
    for (int v = 0; v < n; ++v) {
        // Returns the flow carried from `parent` into x.
        std::function<double(int, int)> down = [&](int x, int parent) -> double {
            int e = star.subdivided_edge[x];
            if (e >= 0) return star.source_edges[e].first == v ? theta.value[e] : -theta.value[e];
            double sum = 0.0;
            for (int y : g.rotation(x)) {
                if (y == parent) continue;
                double f = down(y, x);
                int edge = g.edge_of(g.find_dart(x, y));
                out.value[edge] = g.edge_ends(edge).first == x ? f : -f;
                sum += f;
            }
            return sum;
        };
        down(v, -1);
    }
    return out;
}

Network truncate_degrees(const Network& net, int k) {
    if (k < 1) fail(Errc::InvalidInput, "truncation level must be at least 1");
    std::vector<Edge> kept;
    for (const Edge& e : net.edges())
        if (net.degree(e.u) < k && net.degree(e.v) < k) kept.push_back(e);
    return Network(net.vertex_count(), std::move(kept));
}

}  // namespace koebe
