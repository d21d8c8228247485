#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "koebe/error.hpp"

namespace koebe {

struct BuildOptions {
    bool ccw = false;          // rotations given counterclockwise; reversed on ingest
    bool multigraph = false;   // allow parallel edges (and loops when twins are given)
    std::vector<int> outer;    // outer face as a traced cyclic vertex sequence (either direction)
    // Optional explicit pairing of darts, indexed by flattened rotation position
    // (all of vertex 0's entries, then vertex 1's, ...). Needed when parallel
    // edges make the pairing ambiguous.
    std::vector<int> twins;
};

struct Face {
    std::vector<int> darts;  // cyclic, each dart followed by its face successor
    int degree() const { return static_cast<int>(darts.size()); }
};

// A connected planar map stored as a dart structure. Dart ids are flattened
// rotation positions: the darts leaving v are offset[v] .. offset[v+1]-1 in
// clockwise order.
class PlanarMap {
public:
    PlanarMap() = default;

    static PlanarMap build(int n, std::vector<std::vector<int>> rotations, const BuildOptions& opts = {});

    int vertex_count() const { return n_; }
    int dart_count() const { return static_cast<int>(head_.size()); }
    int edge_count() const { return dart_count() / 2; }
    int face_count() const { return static_cast<int>(faces_.size()); }
    bool multigraph() const { return multigraph_; }

    int degree(int v) const { return offset_[v + 1] - offset_[v]; }
    int max_degree() const;
    std::span<const int> rotation(int v) const {
        return {head_.data() + offset_[v], static_cast<std::size_t>(degree(v))};
    }
    int first_dart(int v) const { return offset_[v]; }

    int tail(int d) const { return tail_[d]; }
    int head(int d) const { return head_[d]; }
    int twin(int d) const { return twin_[d]; }
    int cw_next(int d) const;
    int cw_prev(int d) const;
    // Successor of d in its face: (x,v) is followed by (v,y) where y follows x
    // clockwise around v.
    int face_next(int d) const { return cw_next(twin_[d]); }

    int edge_of(int d) const { return edge_[d]; }
    int edge_dart(int e) const { return edge_dart_[e]; }
    std::pair<int, int> edge_ends(int e) const {
        int d = edge_dart_[e];
        return {tail_[d], head_[d]};
    }
    int find_dart(int u, int v) const;
    bool adjacent(int u, int v) const { return find_dart(u, v) >= 0; }

    const std::vector<Face>& faces() const { return faces_; }
    const Face& face(int f) const { return faces_[f]; }
    int face_of(int d) const { return face_[d]; }
    std::vector<int> face_vertices(int f) const;

    int outer_face() const { return outer_; }
    PlanarMap with_outer_face(int f) const;

    std::vector<std::vector<int>> rotations() const;
    std::vector<int> twin_table() const { return twin_; }

private:
    int n_ = 0;
    bool multigraph_ = false;
    int outer_ = -1;
    std::vector<int> offset_;
    std::vector<int> head_;
    std::vector<int> tail_;
    std::vector<int> twin_;
    std::vector<int> edge_;
    std::vector<int> edge_dart_;
    std::vector<int> face_;
    std::vector<Face> faces_;

    void trace_faces();
};

// Face whose cyclic vertex sequence equals `cycle` (as traced, or reversed); -1 if none.
int find_face(const PlanarMap& map, std::span<const int> cycle);

// Faces of the map as returned by the precedence relation, ordered by their
// smallest directed edge (tail, head, dart id).
std::vector<Face> trace_faces(const PlanarMap& map);

// Builds a simple map from its traced faces (inner faces counterclockwise,
// the outer one clockwise). `outer` indexes into `faces`, or -1.
PlanarMap from_faces(int n, const std::vector<std::vector<int>>& faces, int outer = -1);

struct Triangulation {
    PlanarMap map;
    int outer_face = -1;

    int vertex_count() const { return map.vertex_count(); }
    // Outer vertices in traced (clockwise) order.
    std::array<int, 3> outer_vertices() const;
    // Inner faces as counterclockwise vertex triples.
    std::vector<std::array<int, 3>> inner_triangles() const;
};

bool is_triangulation(const PlanarMap& map);
// Uses `outer_face` if given, otherwise the map's designated outer face.
Triangulation as_triangulation(const PlanarMap& map, int outer_face = -1);

struct AugmentedMap {
    PlanarMap map;
    std::vector<int> new_vertices;
};

// Adds one vertex inside every face of degree > 3 except `excluded_face`.
AugmentedMap triangulate_star(const PlanarMap& map, int excluded_face = -1);
// Triangulates faces by alternating diagonals; faces with chords or repeated
// vertices first receive an inner cycle.
AugmentedMap triangulate_zigzag(const PlanarMap& map, int excluded_face = -1);

struct DualMap {
    PlanarMap map;
    std::vector<int> primal_to_dual_edge;
    std::vector<int> dual_to_primal_edge;
};

DualMap dual_map(const PlanarMap& map);

// Orientation-preserving isomorphism of rotation systems; with allow_mirror
// also accepts a reflection.
bool maps_isomorphic(const PlanarMap& a, const PlanarMap& b, bool allow_mirror = false);

// Removes the listed vertices (and incident edges); returns the induced map
// with vertices renumbered in increasing order.
PlanarMap delete_vertices(const PlanarMap& map, const std::vector<int>& vertices);

enum class BallKind { triangular6, hyperbolic7, grid };

struct Ball {
    PlanarMap map;
    int root = 0;
    std::vector<int> layer;  // graph distance from the root
};

Ball generate_ball(BallKind kind, int radius);

// Random simple triangulation: stacked insertions followed by random flips.
// Outer face is (0,2,1) as traced.
Triangulation random_triangulation(int n, std::uint64_t seed);

// Random connected simple planar map: a random triangulation with edges removed
// while keeping connectivity and minimum degree >= min_degree.
PlanarMap random_planar_map(int n, double keep_fraction, std::uint64_t seed, int min_degree = 2);

}  // namespace koebe
