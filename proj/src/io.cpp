#include "koebe/io.hpp"

#include <cmath>
#include <fstream>

namespace koebe {

namespace {

template <class T>
T field(const Json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) fail(Errc::InvalidInput, std::string("missing field \"") + key + "\"");
    try {
        return j.at(key).get<T>();
    } catch (const Json::exception& e) {
        fail(Errc::InvalidInput, std::string("field \"") + key + "\": " + e.what());
    }
}

template <class T>
T optional_field(const Json& j, const char* key, T fallback) {
    if (!j.is_object() || !j.contains(key)) return fallback;
    return field<T>(j, key);
}

Json point_json(Point p) { return Json::array({p.real(), p.imag()}); }

Point point_from(const Json& j) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
        fail(Errc::InvalidInput, "a point must be an [x, y] pair");
    return {j[0].get<double>(), j[1].get<double>()};
}

}  // namespace

Json read_json(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) fail(Errc::InvalidInput, "cannot open " + path.string());
    try {
        return Json::parse(in);
    } catch (const Json::exception& e) {
        fail(Errc::InvalidInput, path.string() + ": " + e.what());
    }
}

void write_json(const std::filesystem::path& path, const Json& value) {
    std::ofstream out(path);
    if (!out) fail(Errc::InvalidInput, "cannot write " + path.string());
    out << value.dump(2) << '\n';
}

Json map_to_json(const PlanarMap& map) {
    Json j;
    j["n"] = map.vertex_count();
    j["rotations"] = map.rotations();
    if (map.outer_face() >= 0) j["outer"] = map.face_vertices(map.outer_face());
    j["multigraph"] = map.multigraph();
    if (map.multigraph()) j["twins"] = map.twin_table();
    return j;
}

PlanarMap map_from_json(const Json& j) {
    BuildOptions opts;
    opts.multigraph = optional_field<bool>(j, "multigraph", false);
    opts.outer = optional_field<std::vector<int>>(j, "outer", {});
    opts.twins = optional_field<std::vector<int>>(j, "twins", {});
    return PlanarMap::build(field<int>(j, "n"), field<std::vector<std::vector<int>>>(j, "rotations"), opts);
}

Json network_to_json(const Network& net) {
    Json edges = Json::array();
    for (const Edge& e : net.edges()) edges.push_back(Json::array({e.u, e.v, e.c}));
    return {{"n", net.vertex_count()}, {"edges", edges}};
}

Network network_from_json(const Json& j) {
    const int n = field<int>(j, "n");
    if (n < 1) fail(Errc::InvalidInput, "network needs at least one vertex");
    std::vector<Edge> edges;
    const Json list = field<Json>(j, "edges");
    if (!list.is_array()) fail(Errc::InvalidInput, "\"edges\" must be an array");
    for (const Json& e : list) {
        if (!e.is_array() || e.size() < 2 || e.size() > 3) fail(Errc::InvalidInput, "an edge must be [u, v] or [u, v, conductance]");
        if (!e[0].is_number_integer() || !e[1].is_number_integer() || (e.size() == 3 && !e[2].is_number()))
            fail(Errc::InvalidInput, "edge entries must be numbers");
        Edge edge{e[0].get<int>(), e[1].get<int>(), e.size() == 3 ? e[2].get<double>() : 1.0};
        if (edge.u < 0 || edge.v < 0 || edge.u >= n || edge.v >= n) fail(Errc::InvalidInput, "edge endpoint out of range");
        if (!(edge.c > 0.0) || !std::isfinite(edge.c)) fail(Errc::InvalidInput, "conductances must be positive and finite");
        edges.push_back(edge);
    }
    return Network(n, std::move(edges));
}

Json packing_to_json(const PlanarMap& map, const Packing& packing) {
    Json centers = Json::array();
    for (Point c : packing.center) centers.push_back(point_json(c));
    return {{"centers", centers}, {"radii", packing.radius}, {"map", map_to_json(map)}};
}

PackingFile packing_from_json(const Json& j, const std::filesystem::path& base) {
    PackingFile out;
    const Json& m = field<Json>(j, "map");
    out.map = m.is_string() ? map_from_json(read_json(base / m.get<std::string>())) : map_from_json(m);
    const Json centers = field<Json>(j, "centers");
    if (!centers.is_array()) fail(Errc::InvalidInput, "\"centers\" must be an array");
    for (const Json& c : centers) out.packing.center.push_back(point_from(c));
    out.packing.radius = field<std::vector<double>>(j, "radii");
    if (out.packing.center.size() != out.packing.radius.size())
        fail(Errc::InvalidInput, "centers and radii have different lengths");
    if (out.packing.size() == 0) fail(Errc::InvalidInput, "packing is empty");
    if (out.packing.size() != out.map.vertex_count()) fail(Errc::InvalidInput, "packing size does not match the map");
    for (double r : out.packing.radius)
        if (!(r > 0.0) || !std::isfinite(r)) fail(Errc::InvalidInput, "radii must be positive and finite");
    return out;
}

Json marked_map_to_json(const MarkedMap& m) {
    Json j = map_to_json(m.map);
    j["markings"] = m.marking;
    j["tree_of_edge"] = m.tree_of_edge;
    j["tree_of_vertex"] = m.tree_of_vertex;
    j["subdivided_edge"] = m.subdivided_edge;
    j["source_edges"] = m.source_edges;
    j["tree_height"] = m.tree_height;
    return j;
}

MarkedMap marked_map_from_json(const Json& j) {
    MarkedMap m;
    m.map = map_from_json(j);
    m.marking = field<std::vector<int>>(j, "markings");
    if (static_cast<int>(m.marking.size()) != m.map.edge_count()) fail(Errc::InvalidInput, "one marking per edge is required");
    m.tree_of_edge = optional_field<std::vector<int>>(j, "tree_of_edge", {});
    m.tree_of_vertex = optional_field<std::vector<int>>(j, "tree_of_vertex", {});
    m.subdivided_edge = optional_field<std::vector<int>>(j, "subdivided_edge", {});
    m.source_edges = optional_field<std::vector<std::pair<int, int>>>(j, "source_edges", {});
    m.tree_height = optional_field<std::vector<int>>(j, "tree_height", {});
    return m;
}

Json points_to_json(const PointSet& points) {
    Json j = Json::array();
    for (Point p : points) j.push_back(point_json(p));
    return j;
}

PointSet points_from_json(const Json& j) {
    if (!j.is_array()) fail(Errc::InvalidInput, "a point set must be an array of [x, y] pairs");
    PointSet out;
    for (const Json& p : j) out.push_back(point_from(p));
    return out;
}

Json flow_to_json(const Flow& flow) { return {{"flow", flow.value}}; }

Flow flow_from_json(const Json& j) { return Flow{field<std::vector<double>>(j, "flow")}; }

}  // namespace koebe
