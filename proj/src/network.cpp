#include "koebe/network.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <unordered_map>

#include "koebe/planar_map.hpp"

namespace koebe {

Network::Network(int n, std::vector<Edge> edges) : n_(n), edges_(std::move(edges)) {
    if (n < 0) fail(Errc::InvalidInput, "negative vertex count");
    off_.assign(n + 1, 0);
    pi_.assign(n, 0.0);
    for (std::size_t e = 0; e < edges_.size(); ++e) {
        const Edge& ed = edges_[e];
        if (ed.u < 0 || ed.u >= n || ed.v < 0 || ed.v >= n)
            fail(Errc::InvalidInput, "edge " + std::to_string(e) + " has an endpoint out of range", static_cast<int>(e));
        if (ed.u == ed.v) fail(Errc::InvalidInput, "edge " + std::to_string(e) + " is a self-loop", static_cast<int>(e));
        if (!(ed.c > 0.0) || !std::isfinite(ed.c))
            fail(Errc::InvalidInput, "edge " + std::to_string(e) + " needs a finite positive conductance", static_cast<int>(e));
        ++off_[ed.u + 1];
        ++off_[ed.v + 1];
        pi_[ed.u] += ed.c;
        pi_[ed.v] += ed.c;
    }
    for (int v = 0; v < n; ++v) off_[v + 1] += off_[v];
    inc_.resize(off_[n]);
    std::vector<int> fill(off_.begin(), off_.end() - 1);
    for (std::size_t e = 0; e < edges_.size(); ++e) {
        inc_[fill[edges_[e].u]++] = {static_cast<int>(e), edges_[e].v};
        inc_[fill[edges_[e].v]++] = {static_cast<int>(e), edges_[e].u};
    }
}

double Network::total_conductance() const {
    double s = 0.0;
    for (const auto& e : edges_) s += e.c;
    return s;
}

bool Network::connected() const {
    if (n_ <= 1) return true;
    std::vector<char> seen(n_, 0);
    std::vector<int> stack{0};
    seen[0] = 1;
    int count = 1;
    while (!stack.empty()) {
        int x = stack.back();
        stack.pop_back();
        for (auto [e, y] : incident(x))
            if (!seen[y]) {
                seen[y] = 1;
                ++count;
                stack.push_back(y);
            }
    }
    return count == n_;
}

void Network::require_connected() const {
    if (!connected()) fail(Errc::Disconnected, "network is not connected");
}

Network network_from_map(const PlanarMap& map, double conductance) {
    std::vector<Edge> edges;
    edges.reserve(map.edge_count());
    for (int e = 0; e < map.edge_count(); ++e) {
        auto [u, v] = map.edge_ends(e);
        edges.push_back({u, v, conductance});
    }
    return Network(map.vertex_count(), std::move(edges));
}

namespace {

// 0 = interior, 1 = in A, 2 = in Z
std::vector<char> terminal_marks(const Network& net, const std::vector<int>& A, const std::vector<int>& Z) {
    if (A.empty() || Z.empty()) fail(Errc::InvalidInput, "terminal sets must be nonempty");
    std::vector<char> mark(net.vertex_count(), 0);
    for (int a : A) {
        if (a < 0 || a >= net.vertex_count()) fail(Errc::InvalidInput, "terminal out of range", a);
        mark[a] = 1;
    }
    for (int z : Z) {
        if (z < 0 || z >= net.vertex_count()) fail(Errc::InvalidInput, "terminal out of range", z);
        if (mark[z] == 1) fail(Errc::InvalidInput, "source and sink sets intersect at vertex " + std::to_string(z), z);
        mark[z] = 2;
    }
    return mark;
}

}  // namespace

Voltage solve_voltage(const Network& net, const std::vector<int>& A, const std::vector<int>& Z, double alpha, double beta,
                      Exec exec) {
    auto mark = terminal_marks(net, A, Z);
    net.require_connected();
    const int n = net.vertex_count();
    std::vector<int> index(n, -1);
    int m = 0;
    for (int v = 0; v < n; ++v)
        if (!mark[v]) index[v] = m++;
    std::vector<Triplet> entries;
    std::vector<double> rhs(m, 0.0);
    for (int v = 0; v < n; ++v) {
        if (mark[v]) continue;
        int i = index[v];
        entries.push_back({i, i, net.weight(v)});
        for (auto [e, y] : net.incident(v)) {
            double c = net.edge(e).c;
            if (!mark[y])
                entries.push_back({i, index[y], -c});
            else
                rhs[i] += c * (mark[y] == 1 ? alpha : beta);
        }
    }
    auto x = solve_sparse(m, entries, rhs, true, exec);
    Voltage out;
    out.A = A;
    out.Z = Z;
    out.alpha = alpha;
    out.beta = beta;
    out.h.resize(n);
    for (int v = 0; v < n; ++v) out.h[v] = mark[v] == 1 ? alpha : mark[v] == 2 ? beta : x[index[v]];
    return out;
}

Flow current_flow(const Network& net, const Voltage& v) {
    Flow f;
    f.value.resize(net.edge_count());
    for (int e = 0; e < net.edge_count(); ++e) {
        const Edge& ed = net.edge(e);
        f.value[e] = ed.c * (v.h[ed.v] - v.h[ed.u]);
    }
    return f;
}

double strength(const Network& net, const Flow& flow, const std::vector<int>& S) {
    std::vector<char> in(net.vertex_count(), 0);
    for (int s : S) in[s] = 1;
    double total = 0.0;
    for (int e = 0; e < net.edge_count(); ++e) {
        const Edge& ed = net.edge(e);
        if (in[ed.u] && !in[ed.v]) total += flow.value[e];
        if (in[ed.v] && !in[ed.u]) total -= flow.value[e];
    }
    return total;
}

std::vector<double> divergence(const Network& net, const Flow& flow) {
    std::vector<double> div(net.vertex_count(), 0.0);
    for (int e = 0; e < net.edge_count(); ++e) {
        div[net.edge(e).u] += flow.value[e];
        div[net.edge(e).v] -= flow.value[e];
    }
    return div;
}

double node_law_residual(const Network& net, const Flow& flow, const std::vector<int>& terminals) {
    auto div = divergence(net, flow);
    std::vector<char> term(net.vertex_count(), 0);
    for (int t : terminals) term[t] = 1;
    double worst = 0.0;
    for (int v = 0; v < net.vertex_count(); ++v)
        if (!term[v]) worst = std::max(worst, std::abs(div[v]));
    return worst;
}

double cycle_law_residual(const Network& net, const Flow& flow) {
    const int n = net.vertex_count();
    std::vector<double> pot(n, 0.0);
    std::vector<char> seen(n, 0);
    std::vector<char> tree_edge(net.edge_count(), 0);
    for (int root = 0; root < n; ++root) {
        if (seen[root]) continue;
        seen[root] = 1;
        std::vector<int> queue{root};
        for (std::size_t i = 0; i < queue.size(); ++i) {
            int x = queue[i];
            for (auto [e, y] : net.incident(x))
                if (!seen[y]) {
                    seen[y] = 1;
                    tree_edge[e] = 1;
                    pot[y] = pot[x] + flow.along(net, e, x) / net.edge(e).c;
                    queue.push_back(y);
                }
        }
    }
    double worst = 0.0;
    for (int e = 0; e < net.edge_count(); ++e) {
        if (tree_edge[e]) continue;
        const Edge& ed = net.edge(e);
        worst = std::max(worst, std::abs(pot[ed.u] + flow.value[e] / ed.c - pot[ed.v]));
    }
    return worst;
}

double harmonic_residual(const Network& net, const Voltage& v) {
    std::vector<char> term(net.vertex_count(), 0);
    for (int a : v.A) term[a] = 1;
    for (int z : v.Z) term[z] = 1;
    double worst = 0.0;
    for (int x = 0; x < net.vertex_count(); ++x) {
        if (term[x]) continue;
        double s = 0.0;
        for (auto [e, y] : net.incident(x)) s += net.edge(e).c * v.h[y];
        worst = std::max(worst, std::abs(v.h[x] - s / net.weight(x)));
    }
    return worst;
}

Reduced glue(const Network& net, const std::vector<int>& S) {
    const int n = net.vertex_count();
    std::vector<char> in(n, 0);
    for (int s : S) {
        if (s < 0 || s >= n) fail(Errc::InvalidInput, "glued vertex out of range", s);
        in[s] = 1;
    }
    Reduced out;
    out.vertex_map.assign(n, -1);
    int next = 0, super = -1;
    for (int v = 0; v < n; ++v) {
        if (in[v]) {
            if (super < 0) super = next++;
            out.vertex_map[v] = super;
        } else {
            out.vertex_map[v] = next++;
        }
    }
    std::vector<Edge> edges;
    edges.reserve(net.edge_count());
    for (const auto& e : net.edges()) {
        if (in[e.u] && in[e.v]) continue;
        edges.push_back({out.vertex_map[e.u], out.vertex_map[e.v], e.c});
    }
    out.net = Network(next, std::move(edges));
    return out;
}

Resistance effective_resistance(const Network& net, const std::vector<int>& A, const std::vector<int>& Z, Exec exec) {
    terminal_marks(net, A, Z);
    net.require_connected();
    Reduced ga = glue(net, A);
    std::vector<int> z1;
    for (int z : Z) z1.push_back(ga.vertex_map[z]);
    Reduced gz = glue(ga.net, z1);
    int a = gz.vertex_map[ga.vertex_map[A.front()]];
    int z = gz.vertex_map[z1.front()];
    Voltage v = solve_voltage(gz.net, {a}, {z}, 0.0, 1.0, exec);
    double current = 0.0;
    for (auto [e, y] : gz.net.incident(a)) current += gz.net.edge(e).c * v.h[y];
    if (!(current > 0.0)) fail(Errc::SingularSystem, "zero current between connected terminals");
    return Resistance::finite(1.0 / current);
}

double escape_probability(const Network& net, int a, const std::vector<int>& Z) {
    auto mark = terminal_marks(net, {a}, Z);
    net.require_connected();
    const int n = net.vertex_count();
    std::vector<int> index(n, -1);
    int m = 0;
    for (int v = 0; v < n; ++v)
        if (!mark[v]) index[v] = m++;
    // Row-stochastic transition matrix with a and Z absorbing.
    std::vector<Triplet> entries;
    std::vector<double> rhs(m, 0.0);
    for (int v = 0; v < n; ++v) {
        if (mark[v]) continue;
        int i = index[v];
        entries.push_back({i, i, 1.0});
        for (auto [e, y] : net.incident(v)) {
            double p = net.edge(e).c / net.weight(v);
            if (!mark[y])
                entries.push_back({i, index[y], -p});
            else if (mark[y] == 2)
                rhs[i] += p;
        }
    }
    auto u = solve_sparse(m, entries, rhs, false, Exec::serial);
    double esc = 0.0;
    for (auto [e, y] : net.incident(a)) {
        double p = net.edge(e).c / net.weight(a);
        if (mark[y] == 2)
            esc += p;
        else if (!mark[y])
            esc += p * u[index[y]];
    }
    return esc;
}

Reduced reduce_parallel(const Network& net) {
    std::unordered_map<std::uint64_t, int> group;
    std::vector<Edge> edges;
    for (const auto& e : net.edges()) {
        int a = std::min(e.u, e.v), b = std::max(e.u, e.v);
        auto key = static_cast<std::uint64_t>(a) << 32 | static_cast<std::uint32_t>(b);
        auto it = group.find(key);
        if (it == group.end()) {
            group.emplace(key, static_cast<int>(edges.size()));
            edges.push_back({e.u, e.v, e.c});
        } else {
            edges[it->second].c += e.c;
        }
    }
    Reduced out;
    out.vertex_map.resize(net.vertex_count());
    std::iota(out.vertex_map.begin(), out.vertex_map.end(), 0);
    out.net = Network(net.vertex_count(), std::move(edges));
    return out;
}

Reduced reduce_series(const Network& net, const std::vector<int>& protect) {
    const int n = net.vertex_count();
    std::vector<char> keep(n, 0);
    for (int p : protect) keep.at(p) = 1;
    std::vector<Edge> edges(net.edges());
    std::vector<char> alive(edges.size(), 1);
    std::vector<std::vector<int>> inc(n);
    for (std::size_t e = 0; e < edges.size(); ++e) {
        inc[edges[e].u].push_back(static_cast<int>(e));
        inc[edges[e].v].push_back(static_cast<int>(e));
    }
    std::vector<char> removed(n, 0);
    bool changed = true;
    while (changed) {
        changed = false;
        for (int x = 0; x < n; ++x) {
            if (keep[x] || removed[x]) continue;
            std::vector<int> live;
            for (int e : inc[x])
                if (alive[e]) live.push_back(e);
            if (live.size() != 2) continue;
            const Edge& e1 = edges[live[0]];
            const Edge& e2 = edges[live[1]];
            int a = e1.u == x ? e1.v : e1.u;
            int b = e2.u == x ? e2.v : e2.u;
            if (a == b) continue;
            double r = 1.0 / e1.c + 1.0 / e2.c;
            alive[live[0]] = alive[live[1]] = 0;
            edges.push_back({a, b, 1.0 / r});
            alive.push_back(1);
            int id = static_cast<int>(edges.size()) - 1;
            inc[a].push_back(id);
            inc[b].push_back(id);
            removed[x] = 1;
            changed = true;
        }
    }
    Reduced out;
    out.vertex_map.assign(n, -1);
    int next = 0;
    for (int v = 0; v < n; ++v)
        if (!removed[v]) out.vertex_map[v] = next++;
    std::vector<Edge> kept;
    for (std::size_t e = 0; e < edges.size(); ++e)
        if (alive[e]) kept.push_back({out.vertex_map[edges[e].u], out.vertex_map[edges[e].v], edges[e].c});
    out.net = Network(next, std::move(kept));
    return out;
}

std::vector<double> hitting_times(const Network& net, const std::vector<int>& targets, Exec exec) {
    if (targets.empty()) fail(Errc::InvalidInput, "targets must be nonempty");
    net.require_connected();
    const int n = net.vertex_count();
    std::vector<char> tgt(n, 0);
    for (int t : targets) tgt.at(t) = 1;
    std::vector<int> index(n, -1);
    int m = 0;
    for (int v = 0; v < n; ++v)
        if (!tgt[v]) index[v] = m++;
    std::vector<Triplet> entries;
    std::vector<double> rhs(m);
    for (int v = 0; v < n; ++v) {
        if (tgt[v]) continue;
        int i = index[v];
        entries.push_back({i, i, net.weight(v)});
        rhs[i] = net.weight(v);
        for (auto [e, y] : net.incident(v))
            if (!tgt[y]) entries.push_back({i, index[y], -net.edge(e).c});
    }
    auto x = solve_sparse(m, entries, rhs, true, exec);
    std::vector<double> out(n, 0.0);
    for (int v = 0; v < n; ++v)
        if (!tgt[v]) out[v] = x[index[v]];
    return out;
}

double commute_time(const Network& net, int a, int z) {
    return hitting_times(net, {z})[a] + hitting_times(net, {a})[z];
}

double flow_energy(const Network& net, const Flow& flow) {
    double s = 0.0;
    for (int e = 0; e < net.edge_count(); ++e) s += flow.value[e] * flow.value[e] / net.edge(e).c;
    return s;
}

double function_energy(const Network& net, const std::vector<double>& h) {
    double s = 0.0;
    for (const auto& e : net.edges()) {
        double d = h[e.u] - h[e.v];
        s += e.c * d * d;
    }
    return s;
}

double thomson_bound(const Network& net, const std::vector<int>& A, const std::vector<int>& Z, const Flow& flow, double tol) {
    terminal_marks(net, A, Z);
    double s = strength(net, flow, A);
    if (std::abs(s - 1.0) > tol) fail(Errc::StrengthNotOne, "flow strength is " + std::to_string(s));
    std::vector<int> terms(A);
    terms.insert(terms.end(), Z.begin(), Z.end());
    double res = node_law_residual(net, flow, terms);
    if (res > tol) fail(Errc::InvalidInput, "node law violated by " + std::to_string(res));
    return flow_energy(net, flow);
}

double dirichlet_bound(const Network& net, const std::vector<int>& A, const std::vector<int>& Z, const std::vector<double>& h,
                       double tol) {
    terminal_marks(net, A, Z);
    for (int a : A)
        if (std::abs(h[a]) > tol) fail(Errc::InvalidInput, "test function must vanish on the source set", a);
    for (int z : Z)
        if (std::abs(h[z] - 1.0) > tol) fail(Errc::InvalidInput, "test function must equal 1 on the sink set", z);
    double energy = function_energy(net, h);
    if (!(energy > 0.0)) fail(Errc::InvalidInput, "test function has zero energy");
    return 1.0 / energy;
}

double nash_williams_bound(const Network& net, const std::vector<int>& A, const std::vector<int>& Z,
                           const std::vector<std::vector<int>>& cutsets) {
    auto mark = terminal_marks(net, A, Z);
    std::vector<int> owner(net.edge_count(), -1);
    for (std::size_t k = 0; k < cutsets.size(); ++k)
        for (int e : cutsets[k]) {
            if (e < 0 || e >= net.edge_count()) fail(Errc::InvalidInput, "cutset edge out of range", static_cast<int>(k));
            if (owner[e] >= 0 && owner[e] != static_cast<int>(k))
                fail(Errc::OverlappingCutsets,
                     "edge " + std::to_string(e) + " lies in cutsets " + std::to_string(owner[e]) + " and " + std::to_string(k),
                     static_cast<int>(k));
            owner[e] = static_cast<int>(k);
        }
    double bound = 0.0;
    for (std::size_t k = 0; k < cutsets.size(); ++k) {
        std::vector<char> cut(net.edge_count(), 0);
        double c = 0.0;
        for (int e : cutsets[k])
            if (!cut[e]) {
                cut[e] = 1;
                c += net.edge(e).c;
            }
        std::vector<char> seen(net.vertex_count(), 0);
        std::vector<int> stack(A);
        for (int a : A) seen[a] = 1;
        while (!stack.empty()) {
            int x = stack.back();
            stack.pop_back();
            if (mark[x] == 2) fail(Errc::NotACutset, "cutset " + std::to_string(k) + " does not separate A from Z", static_cast<int>(k));
            for (auto [e, y] : net.incident(x))
                if (!cut[e] && !seen[y]) {
                    seen[y] = 1;
                    stack.push_back(y);
                }
        }
        bound += 1.0 / c;
    }
    return bound;
}

std::vector<std::pair<int, Resistance>> boundary_resistance(const std::function<Exhausted(int)>& family,
                                                            const std::vector<int>& indices) {
    std::vector<std::pair<int, Resistance>> out;
    for (int i : indices) {
        Exhausted ex = family(i);
        Resistance r = effective_resistance(ex.net, ex.A, ex.Z);
        r.kind = ResistanceKind::to_boundary;
        out.push_back({i, r});
    }
    return out;
}

}  // namespace koebe
