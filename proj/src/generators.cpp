#include <algorithm>
#include <map>
#include <numeric>
#include <random>
#include <unordered_map>

#include "koebe/planar_map.hpp"

namespace koebe {

namespace {

// Layered K-regular triangulated disc. Each layer is a counterclockwise cycle;
// a boundary vertex of current degree d receives K-d new neighbors, the first
// and last of which are shared with its cyclic neighbors on the layer.
Ball regular_ball(int K, int radius) {
    Ball ball;
    std::vector<std::vector<int>> faces;
    std::vector<int> deg;
    auto fresh = [&](int layer) {
        deg.push_back(0);
        ball.layer.push_back(layer);
        return static_cast<int>(deg.size()) - 1;
    };
    auto link = [&](int a, int b) {
        ++deg[a];
        ++deg[b];
    };
    int root = fresh(0);
    std::vector<int> cycle;
    for (int i = 0; i < K; ++i) cycle.push_back(fresh(1));
    for (int i = 0; i < K; ++i) {
        faces.push_back({root, cycle[i], cycle[(i + 1) % K]});
        link(root, cycle[i]);
        link(cycle[i], cycle[(i + 1) % K]);
    }
    for (int layer = 2; layer <= radius; ++layer) {
        const int m = static_cast<int>(cycle.size());
        std::vector<int> shared(m);  // shared[i] sits between cycle[i] and cycle[i+1]
        std::vector<std::vector<int>> privates(m);
        std::vector<int> next;
        for (int i = 0; i < m; ++i) {
            int extra = K - deg[cycle[i]] - 2;
            if (extra < 0) fail(Errc::InvalidInput, "layered construction needs degree >= 6");
            for (int j = 0; j < extra; ++j) privates[i].push_back(fresh(layer));
            shared[i] = fresh(layer);
        }
        for (int i = 0; i < m; ++i) {
            for (int p : privates[i]) next.push_back(p);
            next.push_back(shared[i]);
        }
        for (int i = 0; i < m; ++i) {
            int b = cycle[i];
            std::vector<int> fan;
            fan.push_back(shared[(i + m - 1) % m]);
            for (int p : privates[i]) fan.push_back(p);
            fan.push_back(shared[i]);
            for (std::size_t j = 0; j + 1 < fan.size(); ++j) faces.push_back({b, fan[j], fan[j + 1]});
            for (int w : fan) link(b, w);
            faces.push_back({b, shared[i], cycle[(i + 1) % m]});
        }
        const int nm = static_cast<int>(next.size());
        for (int i = 0; i < nm; ++i) link(next[i], next[(i + 1) % nm]);
        cycle = std::move(next);
    }
    std::vector<int> outer(cycle.rbegin(), cycle.rend());
    faces.push_back(outer);
    const int n = static_cast<int>(deg.size());
    ball.map = from_faces(n, faces, static_cast<int>(faces.size()) - 1);
    ball.root = root;
    return ball;
}

Ball grid_ball(int radius) {
    Ball ball;
    std::map<std::pair<int, int>, int> id;
    std::vector<std::pair<int, int>> pos;
    for (int x = -radius; x <= radius; ++x)
        for (int y = -radius; y <= radius; ++y)
            if (std::abs(x) + std::abs(y) <= radius) {
                id[{x, y}] = static_cast<int>(pos.size());
                pos.push_back({x, y});
            }
    // Make the origin the root with id 0.
    int origin = id[{0, 0}];
    std::swap(pos[0], pos[origin]);
    id[pos[0]] = 0;
    id[pos[origin]] = origin;
    const int n = static_cast<int>(pos.size());
    std::vector<std::vector<int>> rot(n);
    const int dx[4] = {0, 1, 0, -1};
    const int dy[4] = {1, 0, -1, 0};
    for (int v = 0; v < n; ++v) {
        for (int k = 0; k < 4; ++k) {
            auto it = id.find({pos[v].first + dx[k], pos[v].second + dy[k]});
            if (it != id.end()) rot[v].push_back(it->second);
        }
        ball.layer.push_back(std::abs(pos[v].first) + std::abs(pos[v].second));
    }
    BuildOptions opts;
    ball.map = PlanarMap::build(n, std::move(rot), opts);
    int top = id[{0, radius}];
    int below = id[{0, radius - 1}];
    ball.map = ball.map.with_outer_face(ball.map.face_of(ball.map.find_dart(top, below)));
    ball.root = 0;
    return ball;
}

}  // namespace

Ball generate_ball(BallKind kind, int radius) {
    if (radius < 1) fail(Errc::InvalidInput, "ball radius must be at least 1");
    switch (kind) {
        case BallKind::triangular6: return regular_ball(6, radius);
        case BallKind::hyperbolic7: return regular_ball(7, radius);
        case BallKind::grid: return grid_ball(radius);
    }
    fail(Errc::InvalidInput, "unknown ball kind");
}

Triangulation random_triangulation(int n, std::uint64_t seed) {
    if (n < 3) fail(Errc::TooSmall, "a triangulation needs at least 3 vertices");
    std::mt19937_64 rng(seed);
    std::vector<std::array<int, 3>> faces{{0, 2, 1}, {0, 1, 2}};
    int count = 3;
    while (count < n) {
        std::size_t f = 1 + rng() % (faces.size() - 1);
        auto [a, b, c] = faces[f];
        int v = count++;
        faces[f] = {a, b, v};
        faces.push_back({b, c, v});
        faces.push_back({c, a, v});
    }
    std::unordered_map<std::uint64_t, int> owner;
    auto key = [&](int a, int b) { return static_cast<std::uint64_t>(a) * static_cast<std::uint64_t>(n) + b; };
    std::vector<int> deg(n, 0);
    for (std::size_t f = 0; f < faces.size(); ++f)
        for (int k = 0; k < 3; ++k) {
            owner[key(faces[f][k], faces[f][(k + 1) % 3])] = static_cast<int>(f);
            ++deg[faces[f][k]];
        }
    for (int it = 0; it < 10 * n; ++it) {
        int f1 = 1 + static_cast<int>(rng() % (faces.size() - 1));
        int k = static_cast<int>(rng() % 3);
        int u = faces[f1][k], v = faces[f1][(k + 1) % 3], a = faces[f1][(k + 2) % 3];
        int f2 = owner[key(v, u)];
        if (f2 == 0) continue;
        int b = -1;
        for (int x : faces[f2])
            if (x != u && x != v) b = x;
        if (owner.count(key(a, b)) || deg[u] <= 3 || deg[v] <= 3) continue;
        owner.erase(key(u, v));
        owner.erase(key(v, u));
        faces[f1] = {a, u, b};
        faces[f2] = {b, v, a};
        for (int f : {f1, f2})
            for (int q = 0; q < 3; ++q) owner[key(faces[f][q], faces[f][(q + 1) % 3])] = f;
        --deg[u];
        --deg[v];
        ++deg[a];
        ++deg[b];
    }
    std::vector<std::vector<int>> lists;
    lists.reserve(faces.size());
    for (auto& f : faces) lists.push_back({f[0], f[1], f[2]});
    return as_triangulation(from_faces(n, lists, 0));
}

PlanarMap random_planar_map(int n, double keep_fraction, std::uint64_t seed, int min_degree) {
    if (n <= 3) {
        if (n == 1) return PlanarMap::build(1, {{}});
        if (n == 2) return PlanarMap::build(2, {{1}, {0}});
        return PlanarMap::build(3, {{1, 2}, {2, 0}, {0, 1}});
    }
    PlanarMap map = random_triangulation(n, seed).map;
    std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
    auto rot = map.rotations();
    const int m0 = map.edge_count();
    const int target = std::max(n - 1, static_cast<int>(keep_fraction * m0));
    std::vector<int> order(m0);
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), rng);
    int m = m0;
    auto connected_without = [&](int a, int b) {
        std::vector<char> seen(n, 0);
        std::vector<int> stack{a};
        seen[a] = 1;
        while (!stack.empty()) {
            int x = stack.back();
            stack.pop_back();
            for (int y : rot[x]) {
                if ((x == a && y == b) || (x == b && y == a)) continue;
                if (!seen[y]) {
                    if (y == b) return true;
                    seen[y] = 1;
                    stack.push_back(y);
                }
            }
        }
        return false;
    };
    for (int e : order) {
        if (m <= target) break;
        auto [u, v] = map.edge_ends(e);
        if (static_cast<int>(rot[u].size()) <= min_degree || static_cast<int>(rot[v].size()) <= min_degree) continue;
        if (!connected_without(u, v)) continue;
        rot[u].erase(std::find(rot[u].begin(), rot[u].end(), v));
        rot[v].erase(std::find(rot[v].begin(), rot[v].end(), u));
        --m;
    }
    return PlanarMap::build(n, std::move(rot));
}

}  // namespace koebe
