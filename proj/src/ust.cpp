#include "koebe/ust.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <string>

namespace koebe {

namespace {

struct UnionFind {
    std::vector<int> parent;
    std::vector<std::pair<int, int>> history;

    explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int x) const {
        while (parent[x] != x) x = parent[x];
        return x;
    }
    bool unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        history.push_back({a, parent[a]});
        parent[a] = b;
        return true;
    }
    void undo() {
        auto [a, p] = history.back();
        history.pop_back();
        parent[a] = p;
    }
};

bool connected_without(const Network& g, const std::vector<char>& removed) {
    const int n = g.vertex_count();
    if (n == 0) return true;
    std::vector<char> seen(n, 0);
    std::vector<int> stack{0};
    seen[0] = 1;
    int count = 1;
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        for (auto [e, u] : g.incident(v))
            if (!removed[e] && !seen[u]) {
                seen[u] = 1;
                ++count;
                stack.push_back(u);
            }
    }
    return count == n;
}

}  // namespace

TreeDistribution enumerate_spanning_trees(const Network& g, const EnumerationLimits& limits) {
    const int n = g.vertex_count(), m = g.edge_count();
    if (m > limits.max_edges)
        fail(Errc::TooLarge, std::to_string(m) + " edges exceed the enumeration limit of " + std::to_string(limits.max_edges));
    if (!g.connected()) fail(Errc::Disconnected, "graph is disconnected");
    TreeDistribution dist;
    dist.vertex_count = n;
    dist.edge_count = m;
    UnionFind uf(n);
    std::vector<int> chosen;
    long steps = 0;
    auto rec = [&](auto&& self, int idx) -> void {
        if (++steps > limits.step_budget) fail(Errc::TooLarge, "spanning-tree enumeration exceeded its step budget");
        if (static_cast<int>(chosen.size()) == n - 1) {
            double w = 1.0;
            for (int e : chosen) w *= g.edge(e).c;
            dist.trees.push_back(chosen);
            dist.weight.push_back(w);
            return;
        }
        if (m - idx < n - 1 - static_cast<int>(chosen.size())) return;
        const Edge& e = g.edge(idx);
        if (uf.unite(e.u, e.v)) {
            chosen.push_back(idx);
            self(self, idx + 1);
            chosen.pop_back();
            uf.undo();
        }
        self(self, idx + 1);
    };
    rec(rec, 0);
    dist.total_weight = std::accumulate(dist.weight.begin(), dist.weight.end(), 0.0);
    return dist;
}

BigInt matrix_tree_count(const Network& g) {
    const int n = g.vertex_count();
    if (n <= 1) return 1;
    const int k = n - 1;
    std::vector<std::vector<BigInt>> a(k, std::vector<BigInt>(k, 0));
    for (const Edge& e : g.edges()) {
        // Drop row and column of vertex n-1.
        if (e.u < k) a[e.u][e.u] += 1;
        if (e.v < k) a[e.v][e.v] += 1;
        if (e.u < k && e.v < k) {
            a[e.u][e.v] -= 1;
            a[e.v][e.u] -= 1;
        }
    }
    // Bareiss elimination: every division is exact.
    BigInt prev = 1;
    int sign = 1;
    for (int p = 0; p < k; ++p) {
        if (a[p][p] == 0) {
            int r = p + 1;
            while (r < k && a[r][p] == 0) ++r;
            if (r == k) return 0;
            std::swap(a[p], a[r]);
            sign = -sign;
        }
        for (int i = p + 1; i < k; ++i) {
            for (int j = p + 1; j < k; ++j) a[i][j] = (a[i][j] * a[p][p] - a[i][p] * a[p][j]) / prev;
            a[i][p] = 0;
        }
        prev = a[p][p];
    }
    return sign * a[k - 1][k - 1];
}

double edge_probability(const TreeDistribution& dist, int e) {
    if (e < 0 || e >= dist.edge_count) fail(Errc::InvalidInput, "edge out of range", e);
    double w = 0.0;
    for (std::size_t i = 0; i < dist.trees.size(); ++i)
        if (std::binary_search(dist.trees[i].begin(), dist.trees[i].end(), e)) w += dist.weight[i];
    return w / dist.total_weight;
}

double edge_probability(const Network& g, int e, const EnumerationLimits& limits) {
    return edge_probability(enumerate_spanning_trees(g, limits), e);
}

MarkovReport spatial_markov_check(const Network& g, const std::vector<int>& A, const std::vector<int>& B,
                                  const EnumerationLimits& limits) {
    const int m = g.edge_count();
    std::vector<char> in_a(m, 0), in_b(m, 0);
    for (int e : A) {
        if (e < 0 || e >= m) fail(Errc::InvalidInput, "edge out of range", e);
        in_a[e] = 1;
    }
    for (int e : B) {
        if (e < 0 || e >= m) fail(Errc::InvalidInput, "edge out of range", e);
        if (in_a[e]) fail(Errc::ZeroProbabilityConditioning, "an edge is both required and forbidden", e);
        in_b[e] = 1;
    }
    UnionFind uf(g.vertex_count());
    for (int e : A)
        if (!uf.unite(g.edge(e).u, g.edge(e).v)) fail(Errc::ZeroProbabilityConditioning, "required edges contain a cycle", e);
    if (!connected_without(g, in_b)) fail(Errc::ZeroProbabilityConditioning, "forbidden edges disconnect the graph");

    auto full = enumerate_spanning_trees(g, limits);
    std::map<std::vector<int>, double> left;
    double left_total = 0.0;
    for (std::size_t i = 0; i < full.trees.size(); ++i) {
        const auto& t = full.trees[i];
        bool ok = true;
        for (int e : A) ok = ok && std::binary_search(t.begin(), t.end(), e);
        for (int e : B) ok = ok && !std::binary_search(t.begin(), t.end(), e);
        if (!ok) continue;
        left[t] = full.weight[i];
        left_total += full.weight[i];
    }
    if (left.empty()) fail(Errc::ZeroProbabilityConditioning, "no spanning tree satisfies the conditioning");

    // (G − B)/A with the surviving edges' original ids remembered.
    std::vector<int> label(g.vertex_count(), -1);
    int k = 0;
    for (int v = 0; v < g.vertex_count(); ++v) {
        int r = uf.find(v);
        if (label[r] < 0) label[r] = k++;
        label[v] = label[r];
    }
    std::vector<Edge> edges;
    std::vector<int> origin;
    for (int e = 0; e < m; ++e) {
        if (in_a[e] || in_b[e]) continue;
        int a = label[g.edge(e).u], b = label[g.edge(e).v];
        if (a == b) continue;
        edges.push_back({a, b, g.edge(e).c});
        origin.push_back(e);
    }
    Network h(k, edges);
    std::map<std::vector<int>, double> right;
    double right_total = 0.0;
    if (k == 1) {
        std::vector<int> t(A.begin(), A.end());
        std::sort(t.begin(), t.end());
        right[t] = 1.0;
        right_total = 1.0;
    } else {
        auto sub = enumerate_spanning_trees(h, limits);
        double base = 1.0;
        for (int e : A) base *= g.edge(e).c;
        for (std::size_t i = 0; i < sub.trees.size(); ++i) {
            std::vector<int> t(A.begin(), A.end());
            for (int e : sub.trees[i]) t.push_back(origin[e]);
            std::sort(t.begin(), t.end());
            right[t] = base * sub.weight[i];
            right_total += base * sub.weight[i];
        }
    }

    MarkovReport rep;
    rep.conditioned_trees = left.size();
    rep.contracted_trees = right.size();
    bool same_support = left.size() == right.size();
    for (auto& [t, w] : left) {
        auto it = right.find(t);
        double p = w / left_total, q = it == right.end() ? 0.0 : it->second / right_total;
        if (it == right.end()) same_support = false;
        rep.max_difference = std::max(rep.max_difference, std::abs(p - q));
    }
    for (auto& [t, w] : right)
        if (!left.count(t)) {
            same_support = false;
            rep.max_difference = std::max(rep.max_difference, w / right_total);
        }
    rep.equal = same_support && rep.max_difference <= 1e-12;
    return rep;
}

std::vector<int> dual_tree(const PlanarMap& map, const DualMap& dual, const std::vector<int>& tree) {
    const int m = map.edge_count();
    std::vector<char> in(m, 0);
    for (int e : tree) {
        if (e < 0 || e >= m) fail(Errc::InvalidInput, "edge out of range", e);
        in[e] = 1;
    }
    std::vector<int> out;
    for (int e = 0; e < m; ++e)
        if (!in[e]) out.push_back(dual.primal_to_dual_edge[e]);
    std::sort(out.begin(), out.end());
    const int f = dual.map.vertex_count();
    UnionFind uf(f);
    bool forest = true;
    for (int d : out) {
        auto [a, b] = dual.map.edge_ends(d);
        forest = forest && uf.unite(a, b);
    }
    if (!forest || static_cast<int>(out.size()) != f - 1) fail(Errc::InvalidInput, "edge set is not a spanning tree");
    return out;
}

std::vector<UsfRow> usf_edge_marginals(const std::function<ExhaustionStage(int)>& stage, const std::vector<int>& depths) {
    std::vector<UsfRow> rows;
    for (int d : depths) {
        ExhaustionStage s = stage(d);
        double c = 0.0;
        for (auto [e, u] : s.free.incident(s.x))
            if (u == s.y) c += s.free.edge(e).c;
        if (c == 0.0) fail(Errc::InvalidInput, "x and y are not adjacent");
        UsfRow row;
        row.depth = d;
        row.free = c * effective_resistance(s.free, s.x, s.y).get();
        row.wired = c * effective_resistance(s.wired, s.x, s.y).get();
        rows.push_back(row);
    }
    return rows;
}

ExhaustionStage z2_edge_stage(int n) {
    if (n < 1) fail(Errc::InvalidInput, "box size must be positive");
    Exhausted glued = grid_box_glued(n);
    const int side = 2 * n + 1;
    const int sink = side * side;
    std::vector<Edge> inner;
    for (const Edge& e : glued.net.edges())
        if (e.u != sink && e.v != sink) inner.push_back(e);
    ExhaustionStage s;
    s.free = Network(sink, inner);
    s.wired = glued.net;
    s.x = n * side + n;
    s.y = s.x + 1;
    return s;
}

ExhaustionStage regular_tree_stage(int depth, int degree) {
    if (depth < 0 || degree < 2) fail(Errc::InvalidInput, "need depth ≥ 0 and degree ≥ 2");
    std::vector<Edge> edges{{0, 1, 1.0}};
    std::vector<int> frontier{0, 1};
    int n = 2;
    for (int level = 0; level < depth; ++level) {
        std::vector<int> next;
        for (int v : frontier)
            for (int c = 0; c < degree - 1; ++c) {
                edges.push_back({v, n, 1.0});
                next.push_back(n++);
            }
        frontier = std::move(next);
    }
    ExhaustionStage s;
    s.free = Network(n, edges);
    for (int v : frontier)
        for (int c = 0; c < degree - 1; ++c) edges.push_back({v, n, 1.0});
    s.wired = Network(n + 1, edges);
    s.x = 0;
    s.y = 1;
    return s;
}

ExhaustionStage half_line_stage(int n) {
    if (n < 1) fail(Errc::InvalidInput, "path length must be positive");
    ExhaustionStage s;
    s.free = path_network(n);
    std::vector<Edge> edges = s.free.edges();
    edges.push_back({n, n + 1, 1.0});
    s.wired = Network(n + 2, edges);
    return s;
}

TriangleBound wired_triangle_bound_check(const Network& wired, const std::vector<int>& A, const std::vector<int>& B,
                                         int boundary) {
    if (boundary < 0 || boundary >= wired.vertex_count()) fail(Errc::InvalidInput, "boundary vertex out of range");
    std::vector<int> bz(B), az(A);
    bz.push_back(boundary);
    az.push_back(boundary);
    TriangleBound t;
    t.wired = effective_resistance(wired, A, B).get();
    t.a_side = effective_resistance(wired, A, bz).get();
    t.b_side = effective_resistance(wired, B, az).get();
    t.holds = t.wired <= 3.0 * std::max(t.a_side, t.b_side) * (1.0 + 1e-12);
    return t;
}

namespace {

void require_path(const Network& g, const std::vector<int>& W, const std::vector<char>& source, const std::vector<char>& target,
                  int boundary) {
    std::vector<char> in(g.vertex_count(), 0);
    if (boundary >= 0) in[boundary] = 1;
    for (int v : W) {
        if (v < 0 || v >= g.vertex_count()) fail(Errc::InvalidInput, "set element out of range", v);
        in[v] = 1;
    }
    std::vector<char> seen(g.vertex_count(), 0);
    std::vector<int> stack;
    for (int v : W)
        if (source[v] && !seen[v]) {
            seen[v] = 1;
            stack.push_back(v);
        }
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        if (target[v]) return;
        for (auto [e, u] : g.incident(v))
            if (in[u] && !seen[u]) {
                seen[u] = 1;
                stack.push_back(u);
            }
    }
    fail(Errc::InvalidInput, "a sampled set contains no path from A to B or the boundary");
}

struct Terminals {
    std::vector<char> source, target;
    std::vector<int> sink_set;
};

Terminals terminals(const Network& g, const std::vector<int>& A, const std::vector<int>& B, int boundary) {
    Terminals t;
    t.source.assign(g.vertex_count(), 0);
    t.target.assign(g.vertex_count(), 0);
    for (int a : A) t.source.at(a) = 1;
    for (int b : B) t.target.at(b) = 1;
    t.sink_set = B;
    if (boundary >= 0) {
        t.target.at(boundary) = 1;
        t.sink_set.push_back(boundary);
    }
    return t;
}

}  // namespace

RandomSetBound random_set_bound(const Network& g, const std::vector<int>& A, const std::vector<int>& B, int boundary,
                                const std::vector<std::pair<std::vector<int>, double>>& distribution) {
    auto t = terminals(g, A, B, boundary);
    std::vector<double> mass(g.vertex_count(), 0.0);
    double total = 0.0;
    for (const auto& [W, p] : distribution) {
        require_path(g, W, t.source, t.target, boundary);
        std::vector<char> seen(g.vertex_count(), 0);
        for (int v : W)
            if (!seen[v]) {
                seen[v] = 1;
                mass[v] += p;
            }
        total += p;
    }
    if (std::abs(total - 1.0) > 1e-12) fail(Errc::InvalidInput, "set probabilities do not sum to one");
    RandomSetBound out;
    for (int v = 0; v < g.vertex_count(); ++v)
        if (v != boundary) out.energy += mass[v] * mass[v];
    out.reff = effective_resistance(g, A, t.sink_set).get();
    out.samples = static_cast<long>(distribution.size());
    out.holds = out.reff <= out.energy * (1.0 + 1e-12);
    return out;
}

RandomSetBound random_set_bound(const Network& g, const std::vector<int>& A, const std::vector<int>& B, int boundary,
                                const SetSampler& sampler, long samples, std::uint64_t seed) {
    if (samples < 1) fail(Errc::InvalidInput, "need at least one sample");
    auto t = terminals(g, A, B, boundary);
    std::vector<long> hits(g.vertex_count(), 0);
    std::mt19937_64 rng(seed);
    for (long i = 0; i < samples; ++i) {
        auto W = sampler(rng);
        require_path(g, W, t.source, t.target, boundary);
        std::sort(W.begin(), W.end());
        W.erase(std::unique(W.begin(), W.end()), W.end());
        for (int v : W) ++hits[v];
    }
    RandomSetBound out;
    for (int v = 0; v < g.vertex_count(); ++v)
        if (v != boundary) {
            double p = static_cast<double>(hits[v]) / static_cast<double>(samples);
            out.energy += p * p;
        }
    out.reff = effective_resistance(g, A, t.sink_set).get();
    out.samples = samples;
    out.holds = out.reff <= out.energy * (1.0 + 1e-12);
    return out;
}

}  // namespace koebe
