#pragma once

#include <string>

#include "koebe/network.hpp"
#include "koebe/packing.hpp"
#include "koebe/planar_map.hpp"

namespace koebe {

struct SvgOptions {
    bool labels = false;
    const Flow* flow = nullptr;  // per map edge, oriented as in network_from_map
    double size = 800.0;         // width and height in pixels
    double max_stroke = 6.0;     // arrow width for the largest |θ|
};

// Deterministic rendering: every coordinate has six decimals and elements
// appear in vertex order, then edge order.
std::string render_svg(const Packing& packing, const PlanarMap& map, const SvgOptions& opts = {});

}  // namespace koebe
