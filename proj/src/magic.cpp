#include "koebe/magic.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace koebe {

double isolation_radius(const PointSet& C, int w) {
    if (C.size() < 2) fail(Errc::SingletonSet, "isolation radius needs at least two points");
    if (w < 0 || w >= static_cast<int>(C.size())) fail(Errc::InvalidInput, "point index out of range", w);
    double best = INFINITY;
    for (int v = 0; v < static_cast<int>(C.size()); ++v)
        if (v != w) best = std::min(best, std::abs(C[v] - C[w]));
    if (!(best > 0.0)) fail(Errc::InvalidInput, "point set contains a repeated point", w);
    return best;
}

namespace {

// Closed discs, with a relative slack so that points placed on the boundary
// by construction are not lost to rounding.
int covered(const PointSet& C, Point center, double radius) {
    const double lim = radius * (1.0 + 1e-12);
    int k = 0;
    for (const Point& p : C)
        if (std::abs(p - center) <= lim) ++k;
    return k;
}

int best_for_point(const PointSet& C, double radius, int i) {
    int best = covered(C, C[i], radius);
    for (int j = i + 1; j < static_cast<int>(C.size()); ++j) {
        Point mid = 0.5 * (C[i] + C[j]);
        double half = 0.5 * std::abs(C[j] - C[i]);
        if (half > radius * (1.0 + 1e-12)) continue;
        double h = std::sqrt(std::max(0.0, radius * radius - half * half));
        Point normal = (C[j] - C[i]) * Point(0.0, 1.0) / (2.0 * half);
        best = std::max(best, covered(C, mid + h * normal, radius));
        best = std::max(best, covered(C, mid - h * normal, radius));
    }
    return best;
}

}  // namespace

int max_cover_serial(const PointSet& C, double radius) {
    int best = 0;
    for (int i = 0; i < static_cast<int>(C.size()); ++i) best = std::max(best, best_for_point(C, radius, i));
    return best;
}

int max_cover(const PointSet& C, double radius, Exec exec) {
    if (exec == Exec::serial || C.size() < 32) return max_cover_serial(C, radius);
    int best = 0;
    const int n = static_cast<int>(C.size());
#pragma omp parallel for schedule(dynamic, 4) reduction(max : best)
    for (int i = 0; i < n; ++i) best = std::max(best, best_for_point(C, radius, i));
    return best;
}

SupportQuery support(const PointSet& C, int w, double delta, int s, Exec exec) {
    if (!(delta > 0.0 && delta < 1.0)) fail(Errc::InvalidInput, "delta must lie in (0,1)");
    if (s < 2) fail(Errc::InvalidInput, "s must be at least 2");
    const double rho = isolation_radius(C, w);
    PointSet local;
    const double reach = rho / delta * (1.0 + 1e-12);
    for (const Point& p : C)
        if (std::abs(p - C[w]) <= reach) local.push_back(p);
    SupportQuery q;
    q.local = static_cast<int>(local.size());
    q.max_cover = max_cover(local, delta * rho, exec);
    q.supported = q.local - q.max_cover >= s;
    return q;
}

SupportCount count_supported(const PointSet& C, double delta, int s, Exec exec) {
    SupportCount out;
    for (int w = 0; w < static_cast<int>(C.size()); ++w)
        if (support(C, w, delta, s, exec).supported) ++out.count;
    const double inv = 1.0 / delta;
    out.ratio = out.count * static_cast<double>(s) / (static_cast<double>(C.size()) * inv * inv * std::log(inv));
    return out;
}

namespace {

// Strips pendant vertices (keeping the root) so the outer face becomes a
// simple cycle.
Ball strip_pendants(Ball ball) {
    for (;;) {
        const PlanarMap& m = ball.map;
        std::vector<int> drop;
        for (int v = 0; v < m.vertex_count(); ++v)
            if (v != ball.root && m.degree(v) <= 1) drop.push_back(v);
        if (drop.empty()) return ball;
        std::vector<char> gone(m.vertex_count(), 0);
        for (int v : drop) gone[v] = 1;
        std::vector<int> id(m.vertex_count(), -1);
        std::vector<int> layer;
        for (int v = 0, k = 0; v < m.vertex_count(); ++v)
            if (!gone[v]) {
                id[v] = k++;
                if (!ball.layer.empty()) layer.push_back(ball.layer[v]);
            }
        int outer_dart = -1;
        if (m.outer_face() >= 0)
            for (int d : m.face(m.outer_face()).darts)
                if (!gone[m.tail(d)] && !gone[m.head(d)]) {
                    outer_dart = d;
                    break;
                }
        PlanarMap next = delete_vertices(m, drop);
        if (outer_dart >= 0)
            next = next.with_outer_face(next.face_of(next.find_dart(id[m.tail(outer_dart)], id[m.head(outer_dart)])));
        ball.root = id[ball.root];
        ball.layer = std::move(layer);
        ball.map = std::move(next);
    }
}

}  // namespace

std::vector<GrowthRow> resistance_growth_probe(const Ball& input, const std::vector<int>& ks, const GrowthOptions& opts) {
    if (ks.empty()) fail(Errc::InvalidInput, "k list is empty");
    // Maps with larger inner faces are packed through their star
    // triangulation; the resistance is measured on the map itself.
    Ball ball = input;
    PlanarMap packed_map = ball.map;
    bool triangulated = true;
    for (int f = 0; f < ball.map.face_count(); ++f)
        if (f != ball.map.outer_face() && ball.map.face(f).degree() != 3) triangulated = false;
    if (!triangulated) {
        ball = strip_pendants(std::move(ball));
        packed_map = triangulate_star(ball.map, ball.map.outer_face()).map;
    }
    DiscOptions disc;
    disc.solver = opts.solver;
    disc.center = DiscCenter::vertex;
    disc.center_vertex = ball.root;
    auto packed = pack_in_disc(packed_map, disc);
    auto& p = packed.packing;
    p.center.resize(ball.map.vertex_count());
    p.radius.resize(ball.map.vertex_count());
    const double unit = p.radius[ball.root];
    Network net = network_from_map(ball.map);
    std::vector<GrowthRow> rows;
    for (int k : ks) {
        if (k < 1) fail(Errc::InvalidInput, "k must be positive");
        GrowthRow row;
        row.k = k;
        row.radius = std::pow(static_cast<double>(k), opts.exponent);
        std::vector<int> outside;
        for (int v = 0; v < p.size(); ++v) {
            if (std::abs(p.center[v] - p.center[ball.root]) / unit <= row.radius * (1.0 + 1e-9))
                ++row.ball_size;
            else
                outside.push_back(v);
        }
        if (outside.empty())
            row.reff = Resistance::unbounded(ResistanceKind::wired);
        else {
            row.reff = effective_resistance(net, {ball.root}, outside);
            row.reff.kind = ResistanceKind::wired;
        }
        rows.push_back(row);
    }
    return rows;
}

}  // namespace koebe
