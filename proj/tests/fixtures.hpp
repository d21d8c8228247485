#pragma once

#include <vector>

#include "koebe/planar_map.hpp"

namespace fixtures {

inline koebe::PlanarMap triangle() {
    return koebe::PlanarMap::build(3, {{1, 2}, {2, 0}, {0, 1}});
}

// Center 0 with 1,2,3 counterclockwise around it.
inline koebe::PlanarMap k4() {
    return koebe::PlanarMap::build(4, {{1, 3, 2}, {3, 0, 2}, {1, 0, 3}, {2, 0, 1}});
}

inline koebe::Triangulation k4_triangulation() {
    auto m = k4();
    return koebe::as_triangulation(m, koebe::find_face(m, std::vector<int>{1, 3, 2}));
}

inline koebe::PlanarMap cycle(int k) {
    std::vector<std::vector<int>> rot(k);
    for (int i = 0; i < k; ++i) rot[i] = {(i + 1) % k, (i + k - 1) % k};
    return koebe::PlanarMap::build(k, rot);
}

inline koebe::PlanarMap cube() {
    return koebe::from_faces(8, {{4, 5, 6, 7}, {0, 1, 5, 4}, {1, 2, 6, 5}, {2, 3, 7, 6}, {3, 0, 4, 7}, {3, 2, 1, 0}}, 5);
}

inline koebe::PlanarMap octahedron() {
    return koebe::from_faces(6, {{0, 1, 2}, {0, 2, 3}, {0, 3, 4}, {0, 4, 1}, {5, 2, 1}, {5, 3, 2}, {5, 4, 3}, {5, 1, 4}}, 0);
}

inline koebe::PlanarMap icosahedron() {
    // Top 0, upper ring 1..5, lower ring 6..10, bottom 11.
    std::vector<std::vector<int>> f;
    for (int i = 0; i < 5; ++i) {
        int a = 1 + i, b = 1 + (i + 1) % 5;
        int c = 6 + i, d = 6 + (i + 1) % 5;
        f.push_back({0, a, b});
        f.push_back({a, c, b});
        f.push_back({b, c, d});
        f.push_back({11, d, c});
    }
    return koebe::from_faces(12, f, 0);
}

// Double pyramid over a triangle: outer 0,1,2 and apexes 3,4 stacked inside.
inline koebe::Triangulation double_pyramid() {
    auto m = koebe::from_faces(5, {{0, 2, 1}, {0, 1, 3}, {1, 2, 3}, {0, 3, 4}, {3, 2, 4}, {2, 0, 4}}, 0);
    return koebe::as_triangulation(m);
}

}  // namespace fixtures
