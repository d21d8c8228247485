#pragma once

#include <vector>

#include "koebe/linalg.hpp"
#include "koebe/network.hpp"
#include "koebe/packing.hpp"

namespace koebe {

using PointSet = std::vector<Point>;

// Distance from C[w] to the nearest other point.
double isolation_radius(const PointSet& C, int w);

// Largest number of points of C inside one closed disc of the given radius.
// An optimal disc can always be centered at a point of C or have two points
// of C on its boundary, so only those candidate centers are tried.
int max_cover(const PointSet& C, double radius, Exec exec = Exec::parallel);
int max_cover_serial(const PointSet& C, double radius);

struct SupportQuery {
    int local = 0;      // |C ∩ B(w, ρ_w/δ)|
    int max_cover = 0;  // best single disc of radius δρ_w over that set
    bool supported = false;
};

SupportQuery support(const PointSet& C, int w, double delta, int s, Exec exec = Exec::parallel);
inline bool is_supported(const PointSet& C, int w, double delta, int s) { return support(C, w, delta, s).supported; }

struct SupportCount {
    int count = 0;
    double ratio = 0.0;  // count·s / (|C| δ⁻² ln δ⁻¹)
};

SupportCount count_supported(const PointSet& C, double delta, int s, Exec exec = Exec::parallel);

struct GrowthRow {
    int k = 0;
    double radius = 0.0;  // Euclidean radius in units of the root circle
    int ball_size = 0;    // |B_k|
    Resistance reff;      // root ↔ V∖B_k, complement glued
};

struct GrowthOptions {
    // B_k is the set of centers within k^exponent root radii of the root; the
    // square root keeps |B_k| proportional to k.
    double exponent = 0.5;
    SolverOptions solver = disc_solver();
};

std::vector<GrowthRow> resistance_growth_probe(const Ball& ball, const std::vector<int>& ks, const GrowthOptions& opts = {});

}  // namespace koebe
