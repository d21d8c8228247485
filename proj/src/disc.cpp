#include <algorithm>
#include <cmath>
#include <string>

#include "koebe/packing.hpp"

namespace koebe {

Mobius Mobius::then(const Mobius& next) const {
    // next ∘ this
    return {next.a * a + next.b * c, next.a * b + next.b * d, next.c * a + next.d * c, next.c * b + next.d * d};
}

Mobius Mobius::disc_automorphism(Point center) {
    return {{1.0, 0.0}, -center, -std::conj(center), {1.0, 0.0}};
}

Circle mobius_image(const Mobius& m, const Circle& c) {
    if (std::abs(m.c) == 0.0) {
        return {(m.a * c.center + m.b) / m.d, std::abs(m.a / m.d) * c.radius};
    }
    const Point pole = -m.d / m.c;
    const Point offset = pole - c.center;
    const double dist = std::abs(offset);
    if (std::abs(dist - c.radius) <= 1e-14 * std::max(1.0, dist))
        fail(Errc::InvalidInput, "circle passes through the pole of the Möbius map");
    // The reflection of the pole across the circle maps to the image center.
    Point center = dist == 0.0 ? m.a / m.c : m(c.center + c.radius * c.radius / std::conj(offset));
    Point far = dist == 0.0 ? c.center + c.radius : c.center - c.radius * offset / dist;
    return {center, std::abs(m(far) - center)};
}

Circle invert_circle(const Circle& c) {
    double k = std::norm(c.center) - c.radius * c.radius;
    if (k == 0.0) fail(Errc::InvalidInput, "circle passes through the origin");
    return {std::conj(c.center) / k, c.radius / std::abs(k)};
}

Circle circle_through(Point p, Point q, Point s) {
    Point b = q - p, c = s - p;
    double d = 2.0 * (b.real() * c.imag() - b.imag() * c.real());
    if (d == 0.0) fail(Errc::InvalidInput, "points are collinear");
    double b2 = std::norm(b), c2 = std::norm(c);
    Point u{(c.imag() * b2 - b.imag() * c2) / d, (b.real() * c2 - c.real() * b2) / d};
    return {p + u, std::abs(u)};
}

namespace {

void apply(Packing& p, const Mobius& m) {
    for (int v = 0; v < p.size(); ++v) {
        Circle img = mobius_image(m, {p.center[v], p.radius[v]});
        p.center[v] = img.center;
        p.radius[v] = img.radius;
    }
}

// Disc automorphism parameter that centers the circle at the origin.
Point centering_parameter(const Circle& c) {
    double rho = std::abs(c.center);
    if (rho == 0.0) return 0.0;
    double x1 = rho - c.radius, x2 = rho + c.radius;
    double s = x1 + x2, q = 1.0 + x1 * x2;
    double a = (q - std::sqrt(std::max(0.0, q * q - s * s))) / s;
    return a * c.center / rho;
}

}  // namespace

DiscPacking pack_in_disc(const PlanarMap& map, const DiscOptions& opts) {
    const int n = map.vertex_count();
    const int outer = map.outer_face();
    if (outer < 0) fail(Errc::MissingOuterFace, "disc packing needs a designated outer cycle");
    if (map.multigraph()) fail(Errc::NotATriangulation, "disc packing needs a simple map");
    DiscPacking out;
    out.boundary = map.face_vertices(outer);
    {
        std::vector<int> seen(out.boundary);
        std::sort(seen.begin(), seen.end());
        if (std::adjacent_find(seen.begin(), seen.end()) != seen.end())
            fail(Errc::InvalidInput, "outer face is not a simple cycle");
    }
    std::vector<std::vector<int>> faces;
    for (int f = 0; f < map.face_count(); ++f) {
        if (f == outer) continue;
        if (map.face(f).degree() != 3) fail(Errc::NotATriangulation, "inner face " + std::to_string(f) + " is not a triangle", f);
        faces.push_back(map.face_vertices(f));
    }
    const int star = n;
    const int m = static_cast<int>(out.boundary.size());
    const int outer_index = static_cast<int>(faces.size());
    for (int i = 0; i < m; ++i) faces.push_back({out.boundary[i], out.boundary[(i + 1) % m], star});
    Triangulation tri = as_triangulation(from_faces(n + 1, faces, outer_index));

    auto radii = solve_radii(tri, {1.0, 1.0, 1.0}, opts.solver);
    out.report = radii.report;
    Packing p = layout(tri, radii.radii);

    // Send the auxiliary circle to the unit circle and invert.
    Point c0 = p.center[star];
    double r0 = p.radius[star];
    for (int v = 0; v <= n; ++v) {
        Circle c = invert_circle({(p.center[v] - c0) / r0, p.radius[v] / r0});
        p.center[v] = c.center;
        p.radius[v] = c.radius;
    }
    p.center.pop_back();
    p.radius.pop_back();

    if (opts.center == DiscCenter::vertex) {
        int v = opts.center_vertex;
        if (v < 0 || v >= n) fail(Errc::InvalidInput, "center vertex out of range", v);
        for (int it = 0; it < 3 && std::abs(p.center[v]) > 0.0; ++it)
            apply(p, Mobius::disc_automorphism(centering_parameter({p.center[v], p.radius[v]})));
    }
    if (opts.real_axis_vertex >= 0) {
        int v = opts.real_axis_vertex;
        if (v >= n) fail(Errc::InvalidInput, "real-axis vertex out of range", v);
        Point z = p.center[v];
        if (std::abs(z) > 0.0) {
            Point rot = std::conj(z) / std::abs(z);
            for (auto& c : p.center) c *= rot;
        }
    }

    for (int b : out.boundary)
        out.boundary_residual = std::max(out.boundary_residual, std::abs(1.0 - std::abs(p.center[b]) - p.radius[b]));
    for (int v = 0; v < n; ++v) out.escape = std::max(out.escape, std::abs(p.center[v]) + p.radius[v] - 1.0);
    out.packing = std::move(p);
    return out;
}

RingStats ring_ratio_stats(const Packing& p, const PlanarMap& map) {
    std::vector<char> boundary(map.vertex_count(), 0);
    if (map.outer_face() >= 0)
        for (int v : map.face_vertices(map.outer_face())) boundary[v] = 1;
    RingStats s;
    for (int v = 0; v < map.vertex_count(); ++v) {
        if (boundary[v] || map.degree(v) == 0) continue;
        double lo = INFINITY, hi = 0.0;
        for (int u : map.rotation(v)) {
            lo = std::min(lo, p.radius[u]);
            hi = std::max(hi, p.radius[u]);
        }
        double out = hi / p.radius[v], in = p.radius[v] / lo;
        int k = map.degree(v);
        s.outward[k] = std::max(s.outward[k], out);
        s.inward[k] = std::max(s.inward[k], in);
        s.max_outward = std::max(s.max_outward, out);
        s.max_inward = std::max(s.max_inward, in);
        ++s.interior_count;
    }
    return s;
}

AnnulusTest annulus_test_function(const Packing& p, const PlanarMap& map, Point center, double R, double C) {
    if (!(R > 0.0) || !(C > 1.0)) fail(Errc::InvalidInput, "need R > 0 and C > 1");
    AnnulusTest t;
    const int n = map.vertex_count();
    t.h.resize(n);
    std::vector<int> side(n, 0);
    for (int v = 0; v < n; ++v) {
        double dist = std::abs(p.center[v] - center);
        t.h[v] = std::clamp((dist - R) / ((C - 1.0) * R), 0.0, 1.0);
        if (dist <= R) {
            t.inner.push_back(v);
            side[v] = -1;
        } else if (dist > C * R) {
            t.outer.push_back(v);
            side[v] = 1;
        }
    }
    if (t.inner.empty()) fail(Errc::EmptyAnnulus, "no circle center lies within R");
    if (t.outer.empty()) fail(Errc::EmptyAnnulus, "no circle center lies beyond C·R");
    for (int e = 0; e < map.edge_count(); ++e) {
        auto [u, v] = map.edge_ends(e);
        double d = t.h[u] - t.h[v];
        t.energy += d * d;
        if (side[u] * side[v] == -1) ++t.crossing_edges;
    }
    if (!(t.energy > 0.0)) fail(Errc::EmptyAnnulus, "test function has zero energy");
    t.lower_bound = 1.0 / t.energy;
    return t;
}

std::vector<ProbeRow> cp_type_probe(BallKind kind, const std::vector<int>& depths, const SolverOptions& solver) {
    if (depths.empty()) fail(Errc::InvalidInput, "depth list is empty");
    if (kind == BallKind::grid) fail(Errc::NotATriangulation, "grid balls are not triangulated");
    for (std::size_t i = 0; i < depths.size(); ++i) {
        if (depths[i] < 1) fail(Errc::InvalidInput, "depths must be positive");
        if (i > 0 && depths[i] <= depths[i - 1]) fail(Errc::InvalidInput, "depths must be increasing");
    }
    std::vector<ProbeRow> rows;
    for (int j : depths) {
        Ball ball = generate_ball(kind, j);
        DiscOptions opts;
        opts.solver = solver;
        opts.center = DiscCenter::vertex;
        opts.center_vertex = ball.root;
        auto disc = pack_in_disc(ball.map, opts);
        rows.push_back({j, ball.map.vertex_count(), disc.packing.radius[ball.root], disc.report.iterations});
    }
    return rows;
}

}  // namespace koebe
