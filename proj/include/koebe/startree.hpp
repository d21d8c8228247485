#pragma once

#include <utility>
#include <vector>

#include "koebe/network.hpp"
#include "koebe/planar_map.hpp"

namespace koebe {

// The star-tree transform G* of a simple planar map G. Vertices of G keep their
// ids; the subdivider of edge e is vertex n + e; tree nodes and extra vertices
// follow. Every edge of G* lies in exactly one tree T_v.
struct MarkedMap {
    PlanarMap map;
    std::vector<int> marking;            // per edge of G*: deg_G of its tree root
    std::vector<int> tree_of_edge;       // per edge of G*: the tree root v
    std::vector<int> tree_of_vertex;     // per vertex of G*: tree root, -1 for subdividers
    std::vector<int> subdivided_edge;    // per vertex of G*: edge of G for subdividers, -1 otherwise
    std::vector<std::pair<int, int>> source_edges;  // endpoints of the edges of G
    std::vector<int> tree_height;        // per vertex of G: largest root-to-leaf distance in T_v

    int source_vertex_count() const { return static_cast<int>(tree_height.size()); }
    double resistance(int e) const { return 1.0 / marking[e]; }
    // Edges in map edge-id order with conductance deg_G(v) = 1/R_e.
    Network network() const;
};

MarkedMap star_tree_transform(const PlanarMap& map);

// θ*(x→y) = Σ_{w ∈ C_y} θ(v → v_w) on every tree edge, with y the child of x in
// T_v. `theta` is indexed by the edges of G, oriented as in network_from_map.
Flow transfer_flow(const MarkedMap& star, const Flow& theta);

// Removes every edge incident to a vertex of degree at least k.
Network truncate_degrees(const Network& net, int k);

}  // namespace koebe
