#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "koebe/magic.hpp"
#include "koebe/network.hpp"
#include "koebe/packing.hpp"
#include "koebe/planar_map.hpp"
#include "koebe/startree.hpp"

namespace koebe {

using Json = nlohmann::json;

// Parse and schema failures throw InvalidInput.
Json read_json(const std::filesystem::path& path);
void write_json(const std::filesystem::path& path, const Json& value);

// {"n", "rotations" (clockwise), "outer" (optional traced cycle), "multigraph", "twins" (multigraphs only)}
Json map_to_json(const PlanarMap& map);
PlanarMap map_from_json(const Json& j);

// {"n", "edges": [[u, v, conductance], ...]}
Json network_to_json(const Network& net);
Network network_from_json(const Json& j);

struct PackingFile {
    PlanarMap map;
    Packing packing;
};

// {"centers": [[x, y], ...], "radii": [...], "map": map JSON}
Json packing_to_json(const PlanarMap& map, const Packing& packing);
// "map" may also be a path, resolved against `base`.
PackingFile packing_from_json(const Json& j, const std::filesystem::path& base = {});

// Map JSON plus "markings" and the transform provenance.
Json marked_map_to_json(const MarkedMap& m);
MarkedMap marked_map_from_json(const Json& j);

// [[x, y], ...]
Json points_to_json(const PointSet& points);
PointSet points_from_json(const Json& j);

// {"flow": [per-edge value]}
Json flow_to_json(const Flow& flow);
Flow flow_from_json(const Json& j);

}  // namespace koebe
