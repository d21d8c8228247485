#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <queue>
#include <set>
#include <unordered_map>

#include "koebe/packing.hpp"

namespace koebe {

namespace {

const Point kOmega{0.5, std::numbers::sqrt3 / 2.0};

std::int64_t key(long n, long m) {
    return (static_cast<std::int64_t>(n + (1L << 29)) << 32) | static_cast<std::int64_t>(m + (1L << 29));
}

std::int64_t cell_key(long n, long m, bool upper) { return key(n, m) * 2 + (upper ? 1 : 0); }

Point lattice_point(double eps, long n, long m) { return eps * (static_cast<double>(n) + static_cast<double>(m) * kOmega); }

// Lattice coordinates (n, m) with z = ε(n + mω).
std::pair<double, double> lattice_coords(double eps, Point z) {
    double m = z.imag() / (eps * kOmega.imag());
    double n = z.real() / eps - 0.5 * m;
    return {n, m};
}

using Tri = std::array<std::array<long, 2>, 3>;

// The two triangles of cell (n, m), counterclockwise.
Tri cell_triangle(long n, long m, bool upper) {
    if (!upper) return {{{n, m}, {n + 1, m}, {n, m + 1}}};
    return {{{n + 1, m}, {n + 1, m + 1}, {n, m + 1}}};
}

}  // namespace

int ConformalMap::locate(Point z, std::array<double, 3>& bary) const {
    auto [fn, fm] = lattice_coords(eps, z);
    long n = static_cast<long>(std::floor(fn)), m = static_cast<long>(std::floor(fm));
    double a = fn - static_cast<double>(n), b = fm - static_cast<double>(m);
    bool upper = a + b > 1.0;
    auto it = cells.find(cell_key(n, m, upper));
    if (it == cells.end()) return -1;
    if (!upper)
        bary = {1.0 - a - b, a, b};
    else
        bary = {1.0 - b, a + b - 1.0, 1.0 - a};
    return it->second;
}

bool ConformalMap::covers(Point z) const {
    std::array<double, 3> bary;
    return locate(z, bary) >= 0;
}

Point ConformalMap::operator()(Point z) const {
    std::array<double, 3> bary;
    int t = locate(z, bary);
    if (t < 0) fail(Errc::InvalidInput, "point lies outside the lattice carrier");
    const auto& tri = triangles[t];
    return bary[0] * image[tri[0]] + bary[1] * image[tri[1]] + bary[2] * image[tri[2]];
}

ConformalMap conformal_demo(const std::function<double(Point)>& inside, Point z0, double eps, const SolverOptions& solver) {
    if (!(eps > 0.0)) fail(Errc::InvalidInput, "lattice spacing must be positive");
    if (!(inside(z0) > 0.0)) fail(Errc::InvalidInput, "marked point is not inside the domain");

    // Nearest lattice point to z0.
    auto [fn, fm] = lattice_coords(eps, z0);
    long un = 0, um = 0;
    double best = INFINITY;
    for (long dn = -1; dn <= 2; ++dn)
        for (long dm = -1; dm <= 2; ++dm) {
            long n = static_cast<long>(std::floor(fn)) + dn, m = static_cast<long>(std::floor(fm)) + dm;
            double d = std::abs(lattice_point(eps, n, m) - z0);
            if (d < best - 1e-15) {
                best = d;
                un = n;
                um = m;
            }
        }

    const double margin = 2.0 * eps;
    constexpr std::size_t kMaxVertices = 2'000'000;
    std::unordered_map<std::int64_t, char> kept;
    if (inside(lattice_point(eps, un, um)) < margin) fail(Errc::DomainTooThin, "the point nearest z0 is within 2ε of the boundary");
    std::queue<std::array<long, 2>> queue;
    kept[key(un, um)] = 1;
    queue.push({un, um});
    const long dirs[6][2] = {{1, 0}, {0, 1}, {-1, 1}, {-1, 0}, {0, -1}, {1, -1}};
    while (!queue.empty()) {
        auto [n, m] = queue.front();
        queue.pop();
        for (auto& d : dirs) {
            long a = n + d[0], b = m + d[1];
            auto k = key(a, b);
            if (kept.count(k)) continue;
            bool ok = inside(lattice_point(eps, a, b)) >= margin;
            kept[k] = ok ? 1 : 0;
            if (ok) queue.push({a, b});
            if (kept.size() > 4 * kMaxVertices) fail(Errc::TooLarge, "lattice domain is too large for this ε");
        }
    }

    // Lattice triangles with all corners kept.
    std::set<std::pair<std::int64_t, bool>> tris;
    auto is_kept = [&](long n, long m) {
        auto it = kept.find(key(n, m));
        return it != kept.end() && it->second;
    };
    std::vector<std::array<long, 2>> kept_list;
    for (auto& [k, ok] : kept)
        if (ok) kept_list.push_back({static_cast<long>(k >> 32) - (1L << 29), static_cast<long>(k & 0xffffffffL) - (1L << 29)});
    std::sort(kept_list.begin(), kept_list.end());
    for (auto [n, m] : kept_list)
        for (bool upper : {false, true}) {
            Tri t = cell_triangle(n, m, upper);
            if (is_kept(t[1][0], t[1][1]) && is_kept(t[2][0], t[2][1]) && is_kept(t[0][0], t[0][1]))
                tris.insert({key(n, m), upper});
        }

    auto decode = [](std::int64_t k) {
        return std::array<long, 2>{static_cast<long>(k >> 32) - (1L << 29), static_cast<long>(k & 0xffffffffL) - (1L << 29)};
    };
    auto corners = [&](const std::pair<std::int64_t, bool>& c) {
        auto nm = decode(c.first);
        return cell_triangle(nm[0], nm[1], c.second);
    };

    // Keep the edge-connected component at u and drop pinch vertices until
    // the complex is a disc whose boundary is a simple cycle.
    for (;;) {
        std::map<std::int64_t, std::vector<std::pair<std::int64_t, bool>>> at_vertex;
        std::map<std::pair<std::int64_t, std::int64_t>, std::vector<std::pair<std::int64_t, bool>>> at_edge;
        for (auto& c : tris) {
            Tri t = corners(c);
            for (int i = 0; i < 3; ++i) {
                auto a = key(t[i][0], t[i][1]), b = key(t[(i + 1) % 3][0], t[(i + 1) % 3][1]);
                at_vertex[a].push_back(c);
                at_edge[{std::min(a, b), std::max(a, b)}].push_back(c);
            }
        }
        auto uk = key(un, um);
        if (!at_vertex.count(uk)) fail(Errc::DomainTooThin, "no lattice triangle around z0 stays 2ε inside the domain");
        std::set<std::pair<std::int64_t, bool>> comp;
        std::queue<std::pair<std::int64_t, bool>> q;
        comp.insert(at_vertex[uk].front());
        q.push(at_vertex[uk].front());
        while (!q.empty()) {
            Tri t = corners(q.front());
            q.pop();
            for (int i = 0; i < 3; ++i) {
                auto a = key(t[i][0], t[i][1]), b = key(t[(i + 1) % 3][0], t[(i + 1) % 3][1]);
                for (auto& o : at_edge[{std::min(a, b), std::max(a, b)}])
                    if (comp.insert(o).second) q.push(o);
            }
        }
        // Count fans of triangles around each vertex.
        std::vector<std::int64_t> pinch;
        for (auto& [v, list] : at_vertex) {
            std::vector<std::pair<std::int64_t, bool>> local;
            for (auto& c : list)
                if (comp.count(c)) local.push_back(c);
            if (local.empty()) continue;
            std::vector<int> parent(local.size());
            for (std::size_t i = 0; i < local.size(); ++i) parent[i] = static_cast<int>(i);
            auto find = [&](int x) {
                while (parent[x] != x) x = parent[x] = parent[parent[x]];
                return x;
            };
            for (std::size_t i = 0; i < local.size(); ++i)
                for (std::size_t j = i + 1; j < local.size(); ++j) {
                    Tri a = corners(local[i]), b = corners(local[j]);
                    int shared = 0;
                    for (auto& p : a)
                        for (auto& r : b)
                            if (p == r) ++shared;
                    if (shared == 2) parent[find(static_cast<int>(i))] = find(static_cast<int>(j));
                }
            int fans = 0;
            for (std::size_t i = 0; i < local.size(); ++i)
                if (find(static_cast<int>(i)) == static_cast<int>(i)) ++fans;
            if (fans > 1) pinch.push_back(v);
        }
        std::set<std::pair<std::int64_t, bool>> next;
        for (auto& c : comp) {
            Tri t = corners(c);
            bool drop = false;
            for (auto& p : t)
                if (std::binary_search(pinch.begin(), pinch.end(), key(p[0], p[1]))) drop = true;
            if (!drop) next.insert(c);
        }
        bool stable = next.size() == tris.size();
        tris = std::move(next);
        if (stable) break;
    }

    ConformalMap out;
    out.eps = eps;
    std::unordered_map<std::int64_t, int> index;
    auto vertex_id = [&](long n, long m) {
        auto [it, fresh] = index.try_emplace(key(n, m), static_cast<int>(out.lattice.size()));
        if (fresh) out.lattice.push_back(lattice_point(eps, n, m));
        return it->second;
    };
    vertex_id(un, um);
    for (auto& c : tris) {
        Tri t = corners(c);
        std::array<int, 3> ids{};
        for (int i = 0; i < 3; ++i) ids[i] = vertex_id(t[i][0], t[i][1]);
        out.cells[cell_key(decode(c.first)[0], decode(c.first)[1], c.second)] = static_cast<int>(out.triangles.size());
        out.triangles.push_back(ids);
    }
    const int n = static_cast<int>(out.lattice.size());
    auto v_it = index.find(key(un + 1, um)), w_it = index.find(key(un, um + 1));
    if (v_it == index.end() || w_it == index.end())
        fail(Errc::DomainTooThin, "the neighbors of the central lattice point are too close to the boundary");

    // Boundary: triangle edges without a twin, followed backwards.
    std::map<std::pair<int, int>, int> directed;
    for (auto& t : out.triangles)
        for (int i = 0; i < 3; ++i) directed[{t[i], t[(i + 1) % 3]}] = 1;
    std::vector<int> out_next(n, -1);
    int start = -1, boundary_edges = 0;
    for (auto& [e, one] : directed)
        if (!directed.count({e.second, e.first})) {
            out_next[e.second] = e.first;
            start = e.second;
            ++boundary_edges;
        }
    if (start < 0) fail(Errc::DomainTooThin, "lattice complex has no boundary");
    std::vector<int> cycle;
    for (int v = start; cycle.empty() || v != start; v = out_next[v]) cycle.push_back(v);
    if (static_cast<int>(cycle.size()) != boundary_edges) fail(Errc::DomainTooThin, "lattice complex is not simply connected");

    std::vector<std::vector<int>> faces;
    for (auto& t : out.triangles) faces.push_back({t[0], t[1], t[2]});
    faces.push_back(cycle);
    PlanarMap map = from_faces(n, faces, static_cast<int>(faces.size()) - 1);

    DiscOptions opts;
    opts.solver = solver;
    opts.center = DiscCenter::vertex;
    opts.center_vertex = 0;
    opts.real_axis_vertex = v_it->second;
    auto disc = pack_in_disc(map, opts);
    out.image = std::move(disc.packing.center);
    if (out.image[w_it->second].imag() < 0.0)
        for (auto& z : out.image) z = std::conj(z);
    out.origin_vertex = 0;
    out.report = std::move(disc.report);
    return out;
}

std::function<double(Point)> polygon_domain(std::vector<Point> vertices) {
    if (vertices.size() < 3) fail(Errc::InvalidInput, "a polygon needs at least three vertices");
    return [vs = std::move(vertices)](Point z) {
        double dist = INFINITY;
        bool in = false;
        const std::size_t k = vs.size();
        for (std::size_t i = 0, j = k - 1; i < k; j = i++) {
            Point a = vs[j], b = vs[i];
            Point ab = b - a;
            double t = std::clamp(std::real((z - a) * std::conj(ab)) / std::norm(ab), 0.0, 1.0);
            dist = std::min(dist, std::abs(z - (a + t * ab)));
            if ((a.imag() > z.imag()) != (b.imag() > z.imag()) &&
                z.real() < a.real() + (z.imag() - a.imag()) * ab.real() / ab.imag())
                in = !in;
        }
        return in ? dist : -dist;
    };
}

}  // namespace koebe
