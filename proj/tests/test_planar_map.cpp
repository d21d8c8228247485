#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <set>

#include "fixtures.hpp"
#include "koebe/planar_map.hpp"

using namespace koebe;

namespace {

Errc error_of(auto&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("expected an error");
    return Errc::InvalidInput;
}

std::set<std::pair<int, int>> edge_set(const PlanarMap& m) {
    std::set<std::pair<int, int>> s;
    for (int e = 0; e < m.edge_count(); ++e) {
        auto [u, v] = m.edge_ends(e);
        s.insert({std::min(u, v), std::max(u, v)});
    }
    return s;
}

void check_partition(const PlanarMap& m) {
    std::vector<int> hits(m.dart_count(), 0);
    int total = 0;
    for (const auto& f : m.faces()) {
        total += f.degree();
        for (std::size_t i = 0; i < f.darts.size(); ++i) {
            ++hits[f.darts[i]];
            CHECK(m.face_next(f.darts[i]) == f.darts[(i + 1) % f.darts.size()]);
        }
    }
    CHECK(total == 2 * m.edge_count());
    for (int h : hits) CHECK(h == 1);
    CHECK(m.vertex_count() - m.edge_count() + m.face_count() == 2);
}

}  // namespace

TEST_CASE("build_map accepts small maps and counts faces") {
    auto t = fixtures::triangle();
    CHECK(t.face_count() == 2);
    for (const auto& f : t.faces()) CHECK(f.degree() == 3);

    auto k = fixtures::k4();
    CHECK(k.vertex_count() == 4);
    CHECK(k.edge_count() == 6);
    CHECK(k.face_count() == 4);

    auto c = fixtures::cycle(5);
    REQUIRE(c.face_count() == 2);
    CHECK(c.face(0).degree() == 5);
    CHECK(c.face(1).degree() == 5);

    auto single = PlanarMap::build(1, {{}});
    CHECK(single.face_count() == 1);
}

TEST_CASE("build_map rejects invalid rotation systems") {
    CHECK(error_of([] { PlanarMap::build(4, {{1, 3, 2}, {3, 0, 2}, {1, 0, 3}, {2, 1}}); }) == Errc::AsymmetricRotation);
    CHECK(error_of([] { PlanarMap::build(2, {{1, 1}, {0, 0}}); }) == Errc::NotSimple);
    CHECK(error_of([] { PlanarMap::build(2, {{0}, {}}); }) == Errc::NotSimple);
    CHECK(error_of([] { PlanarMap::build(4, {{1}, {0}, {3}, {2}}); }) == Errc::Disconnected);
    // Swapping the order at the center of K4 yields a toroidal rotation system.
    CHECK(error_of([] { PlanarMap::build(4, {{1, 2, 3}, {3, 0, 2}, {1, 0, 3}, {2, 0, 1}}); }) ==
          Errc::NonPlanarEulerViolation);
    CHECK(error_of([] { PlanarMap::build(2, {{5}, {0}}); }) == Errc::InvalidInput);
}

TEST_CASE("counterclockwise input is reversed on ingest") {
    auto cw = fixtures::k4();
    BuildOptions opts;
    opts.ccw = true;
    auto ccw = PlanarMap::build(4, {{2, 3, 1}, {2, 0, 3}, {3, 0, 1}, {1, 0, 2}}, opts);
    CHECK(maps_isomorphic(cw, ccw));
    CHECK(cw.rotations() == ccw.rotations());
}

TEST_CASE("trace_faces partitions darts and orders faces by smallest dart") {
    for (const auto& m : {fixtures::triangle(), fixtures::k4(), fixtures::cycle(5), fixtures::cube(), fixtures::icosahedron()})
        check_partition(m);
    auto k = fixtures::k4();
    auto key = [&](int f) {
        int best = k.face(f).darts[0];
        for (int d : k.face(f).darts)
            if (std::pair(k.tail(d), k.head(d)) < std::pair(k.tail(best), k.head(best))) best = d;
        return std::pair(k.tail(best), k.head(best));
    };
    for (int f = 1; f < k.face_count(); ++f) CHECK(key(f - 1) < key(f));
    CHECK(k.face(0).darts[0] == k.find_dart(0, 1));
}

TEST_CASE("generated balls satisfy Euler and have the expected sizes") {
    auto t1 = generate_ball(BallKind::triangular6, 1);
    CHECK(t1.map.vertex_count() == 7);
    CHECK(t1.map.face(t1.map.outer_face()).degree() == 6);
    for (int R = 1; R <= 6; ++R) {
        auto b = generate_ball(BallKind::triangular6, R);
        CHECK(b.map.vertex_count() == 1 + 3 * R * (R + 1));
        check_partition(b.map);
        for (int v = 0; v < b.map.vertex_count(); ++v)
            if (b.layer[v] < R) CHECK(b.map.degree(v) == 6);
    }
    auto h1 = generate_ball(BallKind::hyperbolic7, 1);
    CHECK(h1.map.vertex_count() == 8);
    CHECK(h1.map.face(h1.map.outer_face()).degree() == 7);
    const int layers[] = {1, 7, 21, 56, 147};
    int total = 0;
    for (int R = 0; R <= 4; ++R) {
        total += layers[R];
        if (R == 0) continue;
        auto b = generate_ball(BallKind::hyperbolic7, R);
        CHECK(b.map.vertex_count() == total);
        check_partition(b.map);
        for (int v = 0; v < b.map.vertex_count(); ++v)
            if (b.layer[v] < R) CHECK(b.map.degree(v) == 7);
        CHECK(is_triangulation(b.map) == false);
    }
    auto g2 = generate_ball(BallKind::grid, 2);
    CHECK(g2.map.vertex_count() == 13);
    CHECK(g2.map.degree(g2.root) == 4);
    check_partition(g2.map);
}

TEST_CASE("ball layers match graph distance from the root") {
    for (auto kind : {BallKind::triangular6, BallKind::hyperbolic7, BallKind::grid}) {
        auto b = generate_ball(kind, 4);
        std::vector<int> dist(b.map.vertex_count(), -1);
        std::vector<int> queue{b.root};
        dist[b.root] = 0;
        for (std::size_t i = 0; i < queue.size(); ++i)
            for (int u : b.map.rotation(queue[i]))
                if (dist[u] < 0) {
                    dist[u] = dist[queue[i]] + 1;
                    queue.push_back(u);
                }
        CHECK(dist == b.layer);
    }
}

TEST_CASE("triangulate_star") {
    auto c4 = fixtures::cycle(4);
    auto s = triangulate_star(c4);
    CHECK(s.map.vertex_count() == 6);
    CHECK(s.new_vertices.size() == 2);
    for (const auto& f : s.map.faces()) CHECK(f.degree() == 3);

    auto t = triangulate_star(fixtures::triangle());
    CHECK(t.map.vertex_count() == 3);
    CHECK(t.new_vertices.empty());

    auto c5 = fixtures::cycle(5);
    auto e = triangulate_star(c5, 1);
    CHECK(e.map.vertex_count() == 6);
    REQUIRE(e.map.outer_face() >= 0);
    CHECK(e.map.face(e.map.outer_face()).degree() == 5);
    int deg5 = 0;
    for (const auto& f : e.map.faces()) deg5 += f.degree() == 5;
    CHECK(deg5 == 1);

    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        auto m = random_planar_map(4 + static_cast<int>(seed % 9), 0.6, seed, 2);
        bool two_connected_faces = true;
        for (int f = 0; f < m.face_count(); ++f) {
            auto vs = m.face_vertices(f);
            std::sort(vs.begin(), vs.end());
            if (std::adjacent_find(vs.begin(), vs.end()) != vs.end()) two_connected_faces = false;
        }
        if (!two_connected_faces) continue;
        auto st = triangulate_star(m);
        CHECK(is_triangulation(st.map));
        auto back = delete_vertices(st.map, st.new_vertices);
        CHECK(edge_set(back) == edge_set(m));
        CHECK(maps_isomorphic(back, m));
    }
}

TEST_CASE("triangulate_star rejects faces with repeated vertices") {
    auto path = PlanarMap::build(3, {{1}, {0, 2}, {1}});
    CHECK(error_of([&] { triangulate_star(path); }) == Errc::NotSimple);
}

TEST_CASE("triangulate_zigzag on a chordless octagon adds five diagonals") {
    auto c8 = fixtures::cycle(8);
    int outer = 1;
    auto z = triangulate_zigzag(c8, outer);
    CHECK(z.new_vertices.empty());
    CHECK(z.map.vertex_count() == 8);
    CHECK(z.map.edge_count() == 8 + 5);
    for (int f = 0; f < z.map.face_count(); ++f)
        if (f != z.map.outer_face()) CHECK(z.map.face(f).degree() == 3);
    // The alternating pattern: v0v2, v2v7, v7v3, v3v6, v6v4 in the traced order of the face.
    auto p = c8.face_vertices(0);
    const int diag[5][2] = {{0, 2}, {2, 7}, {7, 3}, {3, 6}, {6, 4}};
    for (auto& d : diag) CHECK(z.map.adjacent(p[d[0]], p[d[1]]));
}

TEST_CASE("triangulate_zigzag inserts an inner cycle into a chorded face") {
    // Octagon with the chord 0-4 drawn in one face: the other face is an 8-gon with a chord.
    auto base = fixtures::cycle(8);
    auto rot = base.rotations();
    rot[0].push_back(4);
    rot[4].push_back(0);
    auto m = PlanarMap::build(8, rot);
    int big = -1;
    for (int f = 0; f < m.face_count(); ++f)
        if (m.face(f).degree() == 8) big = f;
    REQUIRE(big >= 0);
    auto z = triangulate_zigzag(m);
    CHECK(z.new_vertices.size() == 8);
    CHECK(is_triangulation(z.map));
    for (int v = 0; v < 8; ++v) CHECK(z.map.degree(v) <= 3 * m.max_degree());
}

TEST_CASE("triangulate_zigzag keeps degrees within three times the input") {
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        int n = 4 + static_cast<int>(seed % 12);
        auto m = random_planar_map(n, 0.5 + 0.4 * static_cast<double>(seed % 5) / 4.0, seed, 1);
        auto z = triangulate_zigzag(m);
        CHECK(is_triangulation(z.map));
        CHECK(z.map.max_degree() <= 3 * m.max_degree());
        CHECK(z.map.vertex_count() <= 7 * m.vertex_count());
        auto back = delete_vertices(z.map, z.new_vertices);
        auto orig = edge_set(m);
        auto got = edge_set(back);
        CHECK(std::includes(got.begin(), got.end(), orig.begin(), orig.end()));
    }
}

TEST_CASE("dual_map") {
    auto d = dual_map(fixtures::triangle());
    CHECK(d.map.vertex_count() == 2);
    CHECK(d.map.edge_count() == 3);
    CHECK(d.map.multigraph());

    auto k = fixtures::k4();
    CHECK(maps_isomorphic(dual_map(k).map, k, true));
    CHECK(maps_isomorphic(dual_map(fixtures::cube()).map, fixtures::octahedron(), true));
    CHECK_FALSE(maps_isomorphic(dual_map(fixtures::cube()).map, fixtures::cube(), true));

    for (const auto& m : {fixtures::triangle(), fixtures::k4(), fixtures::cube(), fixtures::octahedron(), fixtures::icosahedron(),
                          fixtures::cycle(5)}) {
        auto dd = dual_map(dual_map(m).map);
        CHECK(maps_isomorphic(dd.map, m));
    }
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        auto m = random_planar_map(4 + static_cast<int>(seed % 9), 0.7, seed, 1);
        auto d1 = dual_map(m);
        CHECK(d1.map.vertex_count() == m.face_count());
        CHECK(d1.map.face_count() == m.vertex_count());
        for (int e = 0; e < m.edge_count(); ++e) CHECK(d1.dual_to_primal_edge[d1.primal_to_dual_edge[e]] == e);
        CHECK(maps_isomorphic(dual_map(d1.map).map, m));
    }
}

TEST_CASE("map isomorphism distinguishes chirality") {
    auto ico = fixtures::icosahedron();
    auto rot = ico.rotations();
    for (auto& r : rot) std::reverse(r.begin(), r.end());
    auto mirror = PlanarMap::build(12, rot);
    CHECK(maps_isomorphic(ico, mirror, true));
    // Relabelling preserves isomorphism.
    std::vector<int> perm{5, 3, 11, 0, 7, 1, 9, 2, 10, 4, 8, 6};
    std::vector<std::vector<int>> rr(12);
    for (int v = 0; v < 12; ++v)
        for (int u : ico.rotation(v)) rr[perm[v]].push_back(perm[u]);
    CHECK(maps_isomorphic(ico, PlanarMap::build(12, rr)));
}

TEST_CASE("random triangulations are simple triangulations") {
    for (int n : {3, 4, 5, 10, 50, 200}) {
        auto t = random_triangulation(n, 7 + n);
        CHECK(t.map.face_count() == 2 * n - 4);
        CHECK(t.inner_triangles().size() == static_cast<std::size_t>(2 * n - 5));
        auto o = t.outer_vertices();
        CHECK(std::set<int>(o.begin(), o.end()) == std::set<int>{0, 1, 2});
    }
    CHECK(error_of([] { as_triangulation(fixtures::cycle(4)); }) == Errc::NotATriangulation);
    CHECK(error_of([] { as_triangulation(fixtures::k4()); }) == Errc::MissingOuterFace);
}
