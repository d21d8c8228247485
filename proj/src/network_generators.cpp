#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <memory>
#include <map>
#include <random>
#include <set>

#include "koebe/network.hpp"

namespace koebe {

Network path_network(int edges, double conductance) {
    if (edges < 1) fail(Errc::InvalidInput, "path needs at least one edge");
    std::vector<Edge> list;
    for (int i = 0; i < edges; ++i) list.push_back({i, i + 1, conductance});
    return Network(edges + 1, std::move(list));
}

Network diamond_network() {
    return Network(4, {{0, 1, 1.0}, {0, 2, 1.0}, {1, 3, 1.0}, {2, 3, 1.0}, {1, 2, 1.0}});
}

Network star_network(int leaves) {
    if (leaves < 1) fail(Errc::InvalidInput, "star needs at least one leaf");
    std::vector<Edge> list;
    for (int i = 1; i <= leaves; ++i) list.push_back({0, i, 1.0});
    return Network(leaves + 1, std::move(list));
}

LeveledTree spherically_symmetric_tree(const std::vector<int>& children) {
    LeveledTree t;
    t.levels.push_back({0});
    int n = 1;
    std::vector<Edge> edges;
    for (int k : children) {
        if (k < 1) fail(Errc::InvalidInput, "every level needs at least one child per vertex");
        std::vector<int> next;
        for (int parent : t.levels.back())
            for (int j = 0; j < k; ++j) {
                edges.push_back({parent, n, 1.0});
                next.push_back(n++);
            }
        t.levels.push_back(std::move(next));
    }
    t.net = Network(n, std::move(edges));
    return t;
}

namespace {

struct Box {
    int n;
    int side() const { return 2 * n + 1; }
    bool inside(int x, int y) const { return std::abs(x) <= n && std::abs(y) <= n; }
    int id(int x, int y) const { return (y + n) * side() + (x + n); }
};

}  // namespace

Exhausted grid_box_glued(int n) {
    if (n < 1) fail(Errc::InvalidInput, "box radius must be positive");
    Box box{n};
    const int sink = box.side() * box.side();
    std::vector<Edge> edges;
    for (int y = -n; y <= n; ++y)
        for (int x = -n; x <= n; ++x) {
            int v = box.id(x, y);
            for (auto [dx, dy] : {std::pair{1, 0}, std::pair{0, 1}, std::pair{-1, 0}, std::pair{0, -1}}) {
                int qx = x + dx, qy = y + dy;
                if (box.inside(qx, qy)) {
                    if (dx + dy > 0) edges.push_back({v, box.id(qx, qy), 1.0});
                } else {
                    edges.push_back({v, sink, 1.0});
                }
            }
        }
    return {Network(sink + 1, std::move(edges)), {box.id(0, 0)}, {sink}};
}

Exhausted grid_box_free(int n) {
    if (n < 1) fail(Errc::InvalidInput, "box radius must be positive");
    Box box{n};
    std::vector<Edge> edges;
    std::vector<int> boundary;
    for (int y = -n; y <= n; ++y)
        for (int x = -n; x <= n; ++x) {
            int v = box.id(x, y);
            if (std::max(std::abs(x), std::abs(y)) == n) boundary.push_back(v);
            if (x < n) edges.push_back({v, box.id(x + 1, y), 1.0});
            if (y < n) edges.push_back({v, box.id(x, y + 1), 1.0});
        }
    return {Network(box.side() * box.side(), std::move(edges)), {box.id(0, 0)}, boundary};
}

LatticeBall z3_ball_glued(int R) {
    if (R < 1) fail(Errc::InvalidInput, "ball radius must be positive");
    LatticeBall out;
    std::map<std::array<int, 3>, int> id;
    for (int x = -R; x <= R; ++x)
        for (int y = -R; y <= R; ++y)
            for (int z = -R; z <= R; ++z)
                if (x * x + y * y + z * z <= R * R) {
                    id[{x, y, z}] = static_cast<int>(out.point.size());
                    out.point.push_back({x, y, z});
                }
    const int sink = static_cast<int>(out.point.size());
    std::vector<Edge> edges;
    static constexpr int step[6][3] = {{1, 0, 0}, {-1, 0, 0}, {0, 1, 0}, {0, -1, 0}, {0, 0, 1}, {0, 0, -1}};
    for (int v = 0; v < sink; ++v) {
        auto p = out.point[v];
        for (const auto& s : step) {
            std::array<int, 3> q{p[0] + s[0], p[1] + s[1], p[2] + s[2]};
            auto it = id.find(q);
            if (it == id.end())
                edges.push_back({v, sink, 1.0});
            else if (it->second > v)
                edges.push_back({v, it->second, 1.0});
        }
    }
    out.ex = {Network(sink + 1, std::move(edges)), {id.at({0, 0, 0})}, {sink}};
    return out;
}

PathSampler z3_radial_sampler(const LatticeBall& ball) {
    auto index = std::make_shared<std::map<std::array<int, 3>, int>>();
    for (std::size_t i = 0; i < ball.point.size(); ++i) (*index)[ball.point[i]] = static_cast<int>(i);
    const int source = ball.ex.A.front();
    const int sink = ball.ex.Z.front();
    return [index, source, sink](std::mt19937_64& rng) {
        std::normal_distribution<double> gauss;
        double dir[3];
        double norm = 0.0;
        do {
            norm = 0.0;
            for (double& d : dir) {
                d = gauss(rng);
                norm += d * d;
            }
        } while (norm == 0.0);
        norm = std::sqrt(norm);
        int cell[3] = {0, 0, 0};
        int step[3];
        double t_next[3], t_delta[3];
        for (int k = 0; k < 3; ++k) {
            dir[k] /= norm;
            step[k] = dir[k] >= 0.0 ? 1 : -1;
            double a = std::abs(dir[k]);
            t_delta[k] = a > 0.0 ? 1.0 / a : std::numeric_limits<double>::infinity();
            t_next[k] = 0.5 * t_delta[k];
        }
        Path path{source};
        while (true) {
            int k = 0;
            if (t_next[1] < t_next[k]) k = 1;
            if (t_next[2] < t_next[k]) k = 2;
            cell[k] += step[k];
            t_next[k] += t_delta[k];
            auto it = index->find({cell[0], cell[1], cell[2]});
            if (it == index->end()) {
                path.push_back(sink);
                return path;
            }
            path.push_back(it->second);
        }
    };
}

Network random_network(int n, int extra_edges, std::uint64_t seed, bool unit) {
    if (n < 2) fail(Errc::InvalidInput, "random network needs at least two vertices");
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> cond(0.5, 2.0);
    std::vector<int> order(n);
    for (int i = 0; i < n; ++i) order[i] = i;
    std::shuffle(order.begin(), order.end(), rng);
    std::set<std::pair<int, int>> used;
    std::vector<Edge> edges;
    auto add = [&](int u, int v) {
        edges.push_back({u, v, unit ? 1.0 : cond(rng)});
        used.insert({std::min(u, v), std::max(u, v)});
    };
    for (int i = 1; i < n; ++i) add(order[i], order[std::uniform_int_distribution<int>(0, i - 1)(rng)]);
    const long max_edges = static_cast<long>(n) * (n - 1) / 2;
    for (int k = 0; k < extra_edges && static_cast<long>(used.size()) < max_edges;) {
        int u = std::uniform_int_distribution<int>(0, n - 1)(rng);
        int v = std::uniform_int_distribution<int>(0, n - 1)(rng);
        if (u == v || used.count({std::min(u, v), std::max(u, v)})) continue;
        add(u, v);
        ++k;
    }
    return Network(n, std::move(edges));
}

}  // namespace koebe
