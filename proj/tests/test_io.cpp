#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <regex>

#include "fixtures.hpp"
#include "koebe/io.hpp"
#include "koebe/svg.hpp"

using namespace koebe;

namespace {

void check_same_map(const PlanarMap& a, const PlanarMap& b) {
    CHECK(a.vertex_count() == b.vertex_count());
    CHECK(a.rotations() == b.rotations());
    CHECK(a.multigraph() == b.multigraph());
    CHECK(a.twin_table() == b.twin_table());
    REQUIRE((a.outer_face() >= 0) == (b.outer_face() >= 0));
    if (a.outer_face() >= 0) CHECK(a.face_vertices(a.outer_face()) == b.face_vertices(b.outer_face()));
}

std::size_t count(const std::string& text, const std::string& needle) {
    std::size_t k = 0;
    for (auto pos = text.find(needle); pos != std::string::npos; pos = text.find(needle, pos + 1)) ++k;
    return k;
}

Packing octahedron_packing() {
    auto tri = as_triangulation(fixtures::octahedron());
    auto radii = solve_radii(tri, {1, 1, 1});
    return layout(tri, radii.radii);
}

}  // namespace

TEST_CASE("map JSON round-trips") {
    for (const PlanarMap& m : {fixtures::triangle(), fixtures::k4(), fixtures::cube(), fixtures::octahedron(),
                               fixtures::icosahedron(), generate_ball(BallKind::triangular6, 3).map,
                               random_planar_map(30, 0.6, 5)}) {
        check_same_map(m, map_from_json(map_to_json(m)));
        Json again = map_to_json(map_from_json(map_to_json(m)));
        CHECK(again == map_to_json(m));
    }
    auto multi = PlanarMap::build(2, {{1, 1}, {0, 0}}, {.multigraph = true});
    check_same_map(multi, map_from_json(map_to_json(multi)));
}

TEST_CASE("malformed map JSON is rejected") {
    CHECK_THROWS_AS(map_from_json(Json::parse(R"({"rotations": [[1], [0]]})")), Error);
    CHECK_THROWS_AS(map_from_json(Json::parse(R"({"n": 2, "rotations": "x"})")), Error);
    try {
        map_from_json(Json::parse(R"({"n": "two", "rotations": [[1], [0]]})"));
        FAIL("expected an error");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::InvalidInput);
    }
}

TEST_CASE("network JSON round-trips and validates") {
    for (const Network& net : {path_network(5), diamond_network(), random_network(12, 10, 3)}) {
        Network back = network_from_json(network_to_json(net));
        REQUIRE(back.vertex_count() == net.vertex_count());
        REQUIRE(back.edge_count() == net.edge_count());
        for (int e = 0; e < net.edge_count(); ++e) {
            CHECK(back.edge(e).u == net.edge(e).u);
            CHECK(back.edge(e).v == net.edge(e).v);
            CHECK(back.edge(e).c == net.edge(e).c);
        }
    }
    CHECK(network_from_json(Json::parse(R"({"n": 2, "edges": [[0, 1]]})")).edge(0).c == 1.0);
    for (const char* bad : {R"({"n": 2, "edges": [[0, 2, 1]]})", R"({"n": 2, "edges": [[0, 1, -1]]})",
                            R"({"n": 2, "edges": [[0]]})", R"({"n": 0, "edges": []})", R"({"n": 2, "edges": {}})"}) {
        CHECK_THROWS_AS(network_from_json(Json::parse(bad)), Error);
    }
}

TEST_CASE("packing JSON round-trips exactly") {
    auto oct = fixtures::octahedron();
    Packing p = octahedron_packing();
    PackingFile back = packing_from_json(packing_to_json(oct, p));
    CHECK(back.packing.center == p.center);
    CHECK(back.packing.radius == p.radius);
    check_same_map(back.map, oct);
    CHECK(verify_packing(back.packing, back.map, 1e-9).pass);
}

TEST_CASE("packing JSON may reference a map file") {
    auto dir = std::filesystem::temp_directory_path() / "koebe_test_io";
    std::filesystem::create_directories(dir);
    write_json(dir / "oct.json", map_to_json(fixtures::octahedron()));
    Json j = packing_to_json(fixtures::octahedron(), octahedron_packing());
    j["map"] = "oct.json";
    PackingFile back = packing_from_json(j, dir);
    CHECK(back.map.vertex_count() == 6);
    std::filesystem::remove_all(dir);
}

TEST_CASE("bad packings are rejected") {
    Json ok = packing_to_json(fixtures::octahedron(), octahedron_packing());
    Json empty = ok;
    empty["centers"] = Json::array();
    empty["radii"] = Json::array();
    CHECK_THROWS_AS(packing_from_json(empty), Error);
    Json mismatch = ok;
    mismatch["radii"].erase(0);
    CHECK_THROWS_AS(packing_from_json(mismatch), Error);
    Json negative = ok;
    negative["radii"][0] = -1.0;
    CHECK_THROWS_AS(packing_from_json(negative), Error);
    Json bad_point = ok;
    bad_point["centers"][0] = Json::array({1.0});
    CHECK_THROWS_AS(packing_from_json(bad_point), Error);
}

TEST_CASE("marked map, points and flow round-trip") {
    auto star = star_tree_transform(fixtures::cube());
    MarkedMap back = marked_map_from_json(marked_map_to_json(star));
    check_same_map(back.map, star.map);
    CHECK(back.marking == star.marking);
    CHECK(back.tree_of_edge == star.tree_of_edge);
    CHECK(back.tree_of_vertex == star.tree_of_vertex);
    CHECK(back.subdivided_edge == star.subdivided_edge);
    CHECK(back.source_edges == star.source_edges);
    CHECK(back.tree_height == star.tree_height);
    Json short_marks = marked_map_to_json(star);
    short_marks["markings"].erase(0);
    CHECK_THROWS_AS(marked_map_from_json(short_marks), Error);

    PointSet pts{{0.25, -1.5}, {3.0, 1e-9}};
    CHECK(points_from_json(points_to_json(pts)) == pts);
    CHECK_THROWS_AS(points_from_json(Json::parse("[[1, 2, 3]]")), Error);

    Flow f{{0.5, -0.25, 0.0}};
    CHECK(flow_from_json(flow_to_json(f)).value == f.value);
}

TEST_CASE("SVG rendering of a six-circle packing") {
    auto oct = fixtures::octahedron();
    Packing p = octahedron_packing();
    REQUIRE(verify_packing(p, oct, 1e-6).pass);
    std::string svg = render_svg(p, oct, {.labels = true});
    CHECK(count(svg, "<circle") == 6);
    CHECK(count(svg, "<text") == 6);
    CHECK(svg == render_svg(p, oct, {.labels = true}));
    CHECK(svg.starts_with("<?xml"));
    CHECK(svg.ends_with("</svg>\n"));

    // Every number carries exactly six decimals.
    std::regex number(R"((-?\d+)\.(\d+))");
    for (auto it = std::sregex_iterator(svg.begin(), svg.end(), number); it != std::sregex_iterator(); ++it)
        if ((*it)[0].str() != "1.0") CHECK((*it)[2].length() == 6);

    // Circles appear in vertex order.
    std::size_t last = 0;
    for (int v = 0; v < 6; ++v) {
        auto pos = svg.find("id=\"v" + std::to_string(v) + "\"");
        REQUIRE(pos != std::string::npos);
        CHECK(pos > last);
        last = pos;
    }

    // Rendered tangency: distance between drawn centres equals the sum of drawn radii.
    std::regex circle(R"re(cx="([-0-9.]+)" cy="([-0-9.]+)" r="([-0-9.]+)")re");
    std::vector<std::array<double, 3>> drawn;
    for (auto it = std::sregex_iterator(svg.begin(), svg.end(), circle); it != std::sregex_iterator(); ++it)
        drawn.push_back({std::stod((*it)[1]), std::stod((*it)[2]), std::stod((*it)[3])});
    REQUIRE(drawn.size() == 6);
    for (int e = 0; e < oct.edge_count(); ++e) {
        auto [u, v] = oct.edge_ends(e);
        double d = std::hypot(drawn[u][0] - drawn[v][0], drawn[u][1] - drawn[v][1]);
        CHECK(std::abs(d - drawn[u][2] - drawn[v][2]) < 1e-5);
    }
}

TEST_CASE("SVG flow overlay") {
    auto oct = fixtures::octahedron();
    Packing p = octahedron_packing();
    Flow f{std::vector<double>(oct.edge_count(), 0.0)};
    f.value[0] = 2.0;
    f.value[3] = -1.0;
    std::string svg = render_svg(p, oct, {.flow = &f});
    CHECK(count(svg, "<line") == 2);
    CHECK(svg.find("stroke-width=\"6.000000\"") != std::string::npos);
    CHECK(svg.find("stroke-width=\"3.000000\"") != std::string::npos);
    CHECK(svg.find("marker-end") != std::string::npos);
    Flow wrong{{1.0}};
    CHECK_THROWS_AS(render_svg(p, oct, {.flow = &wrong}), Error);
}

TEST_CASE("SVG rejects empty or mismatched packings") {
    CHECK_THROWS_AS(render_svg(Packing{}, fixtures::triangle()), Error);
    Packing p = octahedron_packing();
    CHECK_THROWS_AS(render_svg(p, fixtures::k4()), Error);
}
