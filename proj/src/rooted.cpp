#include "koebe/rooted.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <set>
#include <shared_mutex>
#include <unordered_map>

namespace koebe {

int RootedGraph::degree(int v) const {
    int d = 0;
    for (auto [a, b] : edges) d += (a == v) + (b == v);
    return d;
}

namespace {

using Matrix = std::vector<std::vector<int>>;

constexpr long kLeafBudget = 2'000'000;

struct Canonizer {
    int n;
    Matrix a;
    std::string best;
    std::vector<int> best_order;
    long leaves = 0;

    std::vector<int> refine(std::vector<int> colors) const {
        int classes = static_cast<int>(std::set<int>(colors.begin(), colors.end()).size());
        while (true) {
            std::vector<std::pair<int, std::vector<std::pair<int, int>>>> sig(n);
            for (int v = 0; v < n; ++v) {
                sig[v].first = colors[v];
                for (int u = 0; u < n; ++u)
                    if (a[v][u] > 0) sig[v].second.push_back({colors[u], a[v][u]});
                std::sort(sig[v].second.begin(), sig[v].second.end());
            }
            auto sorted = sig;
            std::sort(sorted.begin(), sorted.end());
            sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
            for (int v = 0; v < n; ++v)
                colors[v] = static_cast<int>(std::lower_bound(sorted.begin(), sorted.end(), sig[v]) - sorted.begin());
            int next = static_cast<int>(sorted.size());
            if (next == classes) return colors;
            classes = next;
        }
    }

    bool twins(int u, int w) const {
        for (int x = 0; x < n; ++x)
            if (x != u && x != w && a[u][x] != a[w][x]) return false;
        return true;
    }

    void search(std::vector<int> colors) {
        colors = refine(std::move(colors));
        std::vector<int> size(n, 0);
        for (int c : colors) ++size[c];
        int target = -1;
        for (int c = 0; c < n && target < 0; ++c)
            if (size[c] > 1) target = c;
        if (target < 0) {
            if (++leaves > kLeafBudget) fail(Errc::TooLarge, "canonical labeling search exceeded its budget");
            std::vector<int> order(n);
            for (int v = 0; v < n; ++v) order[colors[v]] = v;
            std::string cert;
            for (int i = 0; i < n; ++i)
                for (int j = i + 1; j < n; ++j) {
                    cert += std::to_string(a[order[i]][order[j]]);
                    cert += ',';
                }
            if (best_order.empty() || cert < best) {
                best = std::move(cert);
                best_order = std::move(order);
            }
            return;
        }
        std::vector<int> tried;
        for (int v = 0; v < n; ++v) {
            if (colors[v] != target) continue;
            if (std::any_of(tried.begin(), tried.end(), [&](int t) { return twins(t, v); })) continue;
            tried.push_back(v);
            std::vector<int> next(n);
            for (int u = 0; u < n; ++u) next[u] = 2 * colors[u] + (colors[u] == target && u != v ? 1 : 0);
            search(std::move(next));
        }
    }
};

std::string raw_key(const RootedGraph& g) {
    auto edges = g.edges;
    for (auto& [u, v] : edges)
        if (u > v) std::swap(u, v);
    std::sort(edges.begin(), edges.end());
    std::string k = std::to_string(g.n) + "|" + std::to_string(g.root) + "|";
    for (auto [u, v] : edges) k += std::to_string(u) + "-" + std::to_string(v) + ",";
    return k;
}

std::string key_of_canonical(const RootedGraph& g) {
    std::string k = std::to_string(g.n) + ":";
    for (auto [u, v] : g.edges) k += std::to_string(u) + "-" + std::to_string(v) + ",";
    return k;
}

std::shared_mutex cache_mutex;
std::unordered_map<std::string, RootedGraph> cache;

}  // namespace

RootedGraph canonical_form(const RootedGraph& g) {
    if (g.n < 1) fail(Errc::InvalidInput, "rooted graph needs a vertex");
    if (g.n > kMaxCanonicalVertices) fail(Errc::TooLarge, "rooted graph exceeds the canonical-form size limit");
    if (g.root < 0 || g.root >= g.n) fail(Errc::InvalidInput, "root out of range");
    for (auto [u, v] : g.edges) {
        if (u < 0 || v < 0 || u >= g.n || v >= g.n) fail(Errc::InvalidInput, "edge endpoint out of range");
        if (u == v) fail(Errc::InvalidInput, "loops are not supported", u);
    }
    const std::string raw = raw_key(g);
    {
        std::shared_lock lock(cache_mutex);
        auto it = cache.find(raw);
        if (it != cache.end()) return it->second;
    }
    Canonizer c{g.n, Matrix(g.n, std::vector<int>(g.n, 0)), {}, {}, 0};
    for (auto [u, v] : g.edges) {
        ++c.a[u][v];
        ++c.a[v][u];
    }
    std::vector<int> colors(g.n, 1);
    colors[g.root] = 0;
    c.search(colors);
    std::vector<int> label(g.n);
    for (int i = 0; i < g.n; ++i) label[c.best_order[i]] = i;
    RootedGraph out;
    out.n = g.n;
    out.root = label[g.root];
    for (auto [u, v] : g.edges) {
        int x = label[u], y = label[v];
        out.edges.push_back({std::min(x, y), std::max(x, y)});
    }
    std::sort(out.edges.begin(), out.edges.end());
    {
        std::unique_lock lock(cache_mutex);
        cache.emplace(raw, out);
    }
    return out;
}

std::string canonical_key(const RootedGraph& g) { return key_of_canonical(canonical_form(g)); }

Rational RootedDistribution::probability_of(const RootedGraph& g) const {
    const std::string k = canonical_key(g);
    for (const auto& c : classes)
        if (c.key == k) return c.probability;
    return 0;
}

bool RootedDistribution::operator==(const RootedDistribution& other) const {
    if (classes.size() != other.classes.size()) return false;
    for (std::size_t i = 0; i < classes.size(); ++i)
        if (classes[i].key != other.classes[i].key || classes[i].probability != other.classes[i].probability) return false;
    return true;
}

RootedDistribution make_distribution(const std::vector<std::pair<RootedGraph, Rational>>& entries) {
    std::map<std::string, RootedClass> merged;
    Rational total = 0;
    for (const auto& [g, p] : entries) {
        if (p < 0) fail(Errc::InvalidInput, "negative probability");
        if (p == 0) continue;
        RootedGraph c = canonical_form(g);
        std::string k = key_of_canonical(c);
        auto it = merged.find(k);
        if (it == merged.end())
            merged.emplace(k, RootedClass{std::move(c), k, p});
        else
            it->second.probability += p;
        total += p;
    }
    if (total != 1) fail(Errc::InvalidInput, "probabilities do not sum to one");
    RootedDistribution out;
    for (auto& [k, c] : merged) out.classes.push_back(std::move(c));
    return out;
}

RootedDistribution uniform_root(const RootedGraph& g) {
    std::vector<std::pair<RootedGraph, Rational>> entries;
    for (int v = 0; v < g.n; ++v) {
        RootedGraph r = g;
        r.root = v;
        entries.push_back({r, Rational(1, g.n)});
    }
    return make_distribution(entries);
}

RootedDistribution degree_bias(const RootedDistribution& dist) {
    Rational mean = 0;
    for (const auto& c : dist.classes) mean += c.probability * c.graph.degree(c.graph.root);
    if (mean == 0) fail(Errc::ZeroDegreeRoot, "every root has degree zero");
    std::vector<std::pair<RootedGraph, Rational>> entries;
    for (const auto& c : dist.classes) entries.push_back({c.graph, c.probability * c.graph.degree(c.graph.root) / mean});
    return make_distribution(entries);
}

RootedDistribution degree_unbias(const RootedDistribution& dist) {
    Rational mean = 0;
    for (const auto& c : dist.classes) {
        int d = c.graph.degree(c.graph.root);
        if (d == 0) fail(Errc::ZeroDegreeRoot, "root of degree zero cannot be unbiased");
        mean += c.probability / d;
    }
    std::vector<std::pair<RootedGraph, Rational>> entries;
    for (const auto& c : dist.classes) entries.push_back({c.graph, c.probability / c.graph.degree(c.graph.root) / mean});
    return make_distribution(entries);
}

RootedDistribution walk_step(const RootedDistribution& dist) {
    std::vector<std::pair<RootedGraph, Rational>> entries;
    for (const auto& c : dist.classes) {
        const RootedGraph& g = c.graph;
        int d = g.degree(g.root);
        if (d == 0) {
            entries.push_back({g, c.probability});
            continue;
        }
        for (auto [u, v] : g.edges) {
            if (u != g.root && v != g.root) continue;
            RootedGraph moved = g;
            moved.root = u == g.root ? v : u;
            entries.push_back({moved, c.probability / d});
        }
    }
    return make_distribution(entries);
}

bool stationarity_check(const RootedDistribution& dist) { return walk_step(dist) == dist; }

}  // namespace koebe
