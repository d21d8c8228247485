#include <algorithm>
#include <cmath>
#include <numbers>
#include <queue>
#include <string>

#include "koebe/packing.hpp"

namespace koebe {

Packing layout(const PlanarMap& map, std::span<const double> r, const LayoutOptions& opts) {
    const int n = map.vertex_count();
    if (static_cast<int>(r.size()) != n) fail(Errc::InvalidInput, "radius vector has the wrong length");
    for (int v = 0; v < n; ++v)
        if (!(r[v] > 0.0)) fail(Errc::NonPositiveRadius, "radius of vertex " + std::to_string(v) + " is not positive", v);
    const int outer = map.outer_face();
    if (outer < 0) fail(Errc::MissingOuterFace, "layout needs a designated outer face");
    for (int f = 0; f < map.face_count(); ++f)
        if (f != outer && map.face(f).degree() != 3)
            fail(Errc::NotATriangulation, "inner face " + std::to_string(f) + " is not a triangle", f);

    Packing p;
    p.radius.assign(r.begin(), r.end());
    p.center.assign(n, Point(0.0, 0.0));
    if (n == 1) return p;

    int root = opts.root_dart;
    if (root < 0) {
        for (int f = 0; f < map.face_count() && root < 0; ++f)
            if (f != outer) root = map.face(f).darts.front();
        if (root < 0) root = 0;
    }
    if (root >= map.dart_count()) fail(Errc::InvalidInput, "root dart out of range");

    std::vector<char> placed(n, 0);
    const int a0 = map.tail(root), b0 = map.head(root);
    p.center[a0] = {0.0, 0.0};
    p.center[b0] = {r[a0] + r[b0], 0.0};
    placed[a0] = placed[b0] = 1;

    int start = map.face_of(root);
    if (start == outer) start = map.face_of(map.twin(root));
    std::vector<char> seen(map.face_count(), 0);
    std::queue<int> queue;
    if (start != outer) {
        seen[start] = 1;
        queue.push(start);
    }
    while (!queue.empty()) {
        const Face& face = map.face(queue.front());
        queue.pop();
        // Rotate to a corner whose first two vertices are placed.
        for (int k = 0; k < 3; ++k) {
            int d = face.darts[k];
            int a = map.tail(d), b = map.head(d), c = map.head(face.darts[(k + 1) % 3]);
            if (placed[a] && placed[b] && !placed[c]) {
                Point dir = (p.center[b] - p.center[a]) / std::abs(p.center[b] - p.center[a]);
                double angle = face_angle(r[a], r[b], r[c]);
                p.center[c] = p.center[a] + (r[a] + r[c]) * dir * std::polar(1.0, angle);
                placed[c] = 1;
                break;
            }
        }
        for (int d : face.darts) {
            int g = map.face_of(map.twin(d));
            if (g != outer && !seen[g]) {
                seen[g] = 1;
                queue.push(g);
            }
        }
    }
    for (int v = 0; v < n; ++v)
        if (!placed[v]) fail(Errc::InvalidInput, "vertex " + std::to_string(v) + " is not reachable through inner faces", v);

    const double tol = opts.tol > 0.0 ? opts.tol : 1e-6 * *std::max_element(r.begin(), r.end());
    double worst = 0.0;
    int worst_edge = -1;
    for (int e = 0; e < map.edge_count(); ++e) {
        auto [u, v] = map.edge_ends(e);
        double res = std::abs(std::abs(p.center[u] - p.center[v]) - (r[u] + r[v]));
        if (res > worst) {
            worst = res;
            worst_edge = e;
        }
    }
    if (worst > tol)
        fail(Errc::InconsistentAngles, "edge " + std::to_string(worst_edge) + " misses tangency by " + std::to_string(worst),
             worst_edge);
    return p;
}

PackingReport verify_packing(const Packing& p, const PlanarMap& map, double tol) {
    const int n = map.vertex_count();
    if (p.size() != n || static_cast<int>(p.center.size()) != n) fail(Errc::InvalidInput, "packing size does not match the map");
    PackingReport rep;
    for (int e = 0; e < map.edge_count(); ++e) {
        auto [u, v] = map.edge_ends(e);
        double res = std::abs(std::abs(p.center[u] - p.center[v]) - (p.radius[u] + p.radius[v]));
        if (res > rep.tangency) {
            rep.tangency = res;
            rep.worst_edge = e;
        }
    }
    std::vector<char> adj(n, 0);
    for (int u = 0; u < n; ++u) {
        for (int v : map.rotation(u)) adj[v] = 1;
        for (int v = u + 1; v < n; ++v) {
            if (adj[v]) continue;
            double over = p.radius[u] + p.radius[v] - std::abs(p.center[u] - p.center[v]);
            if (over > rep.overlap) {
                rep.overlap = over;
                rep.worst_pair = {u, v};
            }
        }
        for (int v : map.rotation(u)) adj[v] = 0;
    }
    // Clockwise order: the clockwise turns between consecutive neighbors in the
    // rotation must add up to exactly one full turn.
    for (int v = 0; v < n && rep.orientation; ++v) {
        auto rot = map.rotation(v);
        if (rot.size() < 3) continue;
        double total = 0.0;
        for (std::size_t i = 0; i < rot.size(); ++i) {
            double a1 = std::arg(p.center[rot[i]] - p.center[v]);
            double a2 = std::arg(p.center[rot[(i + 1) % rot.size()]] - p.center[v]);
            double turn = std::fmod(a1 - a2 + 4.0 * std::numbers::pi, 2.0 * std::numbers::pi);
            total += turn;
        }
        if (std::abs(total - 2.0 * std::numbers::pi) > 1e-6) {
            rep.orientation = false;
            rep.bad_vertex = v;
        }
    }
    rep.pass = rep.tangency <= tol && rep.overlap <= tol && rep.orientation;
    return rep;
}

RigidMotion align(const Packing& a, const Packing& b) {
    const int n = a.size();
    if (b.size() != n || n == 0) fail(Errc::InvalidInput, "packings must have the same nonzero size");
    Point ca = 0.0, cb = 0.0;
    for (int i = 0; i < n; ++i) {
        ca += a.center[i];
        cb += b.center[i];
    }
    ca /= static_cast<double>(n);
    cb /= static_cast<double>(n);
    Point h = 0.0;
    for (int i = 0; i < n; ++i) h += std::conj(a.center[i] - ca) * (b.center[i] - cb);
    RigidMotion m;
    m.rotation = std::abs(h) > 0.0 ? h / std::abs(h) : Point(1.0, 0.0);
    m.translation = cb - m.rotation * ca;
    return m;
}

double max_center_distance(const Packing& a, const Packing& b, const RigidMotion& m) {
    double worst = 0.0;
    for (int i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(m(a.center[i]) - b.center[i]));
    return worst;
}

}  // namespace koebe
