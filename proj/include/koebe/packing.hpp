#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <functional>
#include <map>
#include <span>
#include <unordered_map>
#include <vector>

#include "koebe/error.hpp"
#include "koebe/linalg.hpp"
#include "koebe/planar_map.hpp"

namespace koebe {

using Point = std::complex<double>;

struct Circle {
    Point center;
    double radius = 0.0;
};

// Angle at the center vertex of the triangle with side lengths rc+rl, rl+rr, rr+rc.
double face_angle(double rc, double rl, double rr);

// Angles of the triangle with side lengths ρ1+ρ2, ρ2+ρ3, ρ3+ρ1 at the vertex of
// each ρi. The third is π minus the other two, so the sum is exact.
std::array<double, 3> boundary_angles(double rho1, double rho2, double rho3);

// Corner structure of a triangulation, shared by the deficit kernels and the
// solver. Outer vertex i gets target θ_i, every other vertex 2π.
class AngleSystem {
public:
    AngleSystem(const Triangulation& tri, std::array<double, 3> theta);

    int vertex_count() const { return n_; }
    const std::vector<std::array<int, 3>>& triangles() const { return tris_; }
    const std::vector<double>& targets() const { return target_; }
    std::array<int, 3> outer() const { return outer_; }

    // Per-vertex gather over the corners at each vertex; races are impossible
    // so the parallel path writes each entry once.
    void angle_sums(std::span<const double> r, std::span<double> out, Exec exec = Exec::parallel) const;
    // Reference scatter over triangles.
    void angle_sums_serial(std::span<const double> r, std::span<double> out) const;
    void deficits(std::span<const double> r, std::span<double> out, Exec exec = Exec::parallel) const;

    struct Corner {
        int left;
        int right;
    };
    std::span<const Corner> corners(int v) const {
        return {corner_.data() + off_[v], static_cast<std::size_t>(off_[v + 1] - off_[v])};
    }

private:
    int n_ = 0;
    std::array<int, 3> outer_{};
    std::vector<std::array<int, 3>> tris_;
    std::vector<int> off_;
    std::vector<Corner> corner_;
    std::vector<double> target_;
};

std::vector<double> angle_deficits(const Triangulation& tri, std::span<const double> r, std::array<double, 3> theta,
                                   Exec exec = Exec::parallel);

enum class RadiusInit { uniform, random, warm };

struct SolverOptions {
    double tol = 1e-18;
    long max_iter = 20'000'000;
    RadiusInit init = RadiusInit::uniform;
    // Energy the warm-start sweeps aim for before max-gap steps take over;
    // nonpositive means `tol`.
    double warm_goal = -1.0;
    long warm_max_sweeps = 1'000'000;
    std::uint64_t seed = 1;
    bool record_trace = true;
    Exec exec = Exec::parallel;
    // Called after every iteration with (iteration, energy).
    std::function<void(long, double)> observer;
};

inline SolverOptions warm_solver() {
    SolverOptions o;
    o.init = RadiusInit::warm;
    return o;
}

// Warm start with the tighter energy target used for disc packings.
inline SolverOptions disc_solver() {
    SolverOptions o = warm_solver();
    o.tol = 1e-24;
    return o;
}

struct SolverReport {
    long iterations = 0;
    double initial_energy = 0.0;
    double energy = 0.0;
    std::vector<double> energy_trace;  // energy after each iteration, starting with the initial one
    std::vector<double> lambdas;
    // Iterations where E' > E(1 - 1/(2n³)) and where E' ≥ E.
    long bound_violations = 0;
    long nondecreasing_steps = 0;
    // Largest observed E'/E.
    double worst_ratio = 0.0;
    long warm_sweeps = 0;
    // Common factor applied so the outer radii match the requested ones.
    double scale = 1.0;
};

struct RadiiResult {
    std::vector<double> radii;
    SolverReport report;
};

class SolverError : public Error {
public:
    SolverError(Errc code, const std::string& what, RadiiResult partial)
        : Error(code, what), partial_(std::move(partial)) {}
    const RadiiResult& partial() const { return partial_; }

private:
    RadiiResult partial_;
};

// One max-gap iteration at a time on an ℓ¹-normalized radius vector.
class GapSolver {
public:
    GapSolver(const AngleSystem& sys, std::vector<double> r, Exec exec = Exec::parallel);

    struct Step {
        double gap = 0.0;
        double lambda = 1.0;
    };

    const std::vector<double>& radii() const { return r_; }
    const std::vector<double>& deficits() const { return d_; }
    // Membership in S for the most recent step.
    const std::vector<char>& in_s() const { return in_s_; }
    double energy() const;
    Step step();
    // Recomputes every deficit and corner angle from scratch.
    void refresh();

private:
    double gap_after(double lambda);

    const AngleSystem* sys_;
    Exec exec_;
    std::vector<double> r_;
    std::vector<double> d_;
    std::vector<std::pair<double, int>> order_;
    std::vector<char> in_s_;
    std::vector<int> mixed_;
    std::vector<int> touched_;
    std::vector<char> mark_;
    std::vector<double> base_;
    std::vector<double> trial_;
    std::vector<double> trial_lo_;
    std::vector<double> trial_hi_;
    std::vector<double> angle_;  // corner angles of every triangle at the current radii
    std::vector<double> face_trial_;
    std::vector<double> face_lo_;
    std::vector<double> face_hi_;
    double min_s_ = 0.0;
    double max_c_ = 0.0;
    long steps_ = 0;
    double last_lambda_ = 0.0;
    static constexpr long kRefresh = 64;
};

// Collins–Stephenson style sweeps; each radius is reset so that a flower of
// equal neighbors would meet its target angle.
std::vector<double> warm_start(const AngleSystem& sys, std::vector<double> r, double energy_goal, long max_sweeps,
                               long* sweeps = nullptr);

// Radii of the packing with outer radii proportional to ρ, rescaled so they
// match ρ up to the reported common factor.
RadiiResult solve_radii(const Triangulation& tri, std::array<double, 3> rho, const SolverOptions& opts = {});

struct Packing {
    std::vector<Point> center;
    std::vector<double> radius;

    int size() const { return static_cast<int>(radius.size()); }
};

struct LayoutOptions {
    int root_dart = -1;  // dart whose tail goes to the origin, head on the positive x-axis
    double tol = -1.0;   // default: 1e-6 · max radius
};

// Places circles face by face in breadth-first order. Inner faces must be
// triangles; the outer face may be any cycle.
Packing layout(const PlanarMap& map, std::span<const double> r, const LayoutOptions& opts = {});
inline Packing layout(const Triangulation& tri, std::span<const double> r, const LayoutOptions& opts = {}) {
    return layout(tri.map.with_outer_face(tri.outer_face), r, opts);
}

struct PackingReport {
    double tangency = 0.0;  // worst | |c_u - c_v| - (r_u + r_v) |
    int worst_edge = -1;
    double overlap = 0.0;  // worst r_u + r_v - |c_u - c_v| over non-adjacent pairs, clipped at 0
    std::array<int, 2> worst_pair{-1, -1};
    bool orientation = true;
    int bad_vertex = -1;
    bool pass = false;
};

PackingReport verify_packing(const Packing& p, const PlanarMap& map, double tol);

struct RigidMotion {
    Point rotation{1.0, 0.0};  // unit complex number
    Point translation{0.0, 0.0};
    Point operator()(Point z) const { return rotation * z + translation; }
};

// Least-squares rotation and translation carrying a's centers onto b's.
RigidMotion align(const Packing& a, const Packing& b);
double max_center_distance(const Packing& a, const Packing& b, const RigidMotion& m);

// z ↦ (a z + b)/(c z + d)
struct Mobius {
    Point a{1.0, 0.0}, b{0.0, 0.0}, c{0.0, 0.0}, d{1.0, 0.0};

    Point operator()(Point z) const { return (a * z + b) / (c * z + d); }
    Mobius then(const Mobius& next) const;
    static Mobius disc_automorphism(Point center);  // z ↦ (z − a)/(1 − ā z)
    static Mobius inversion() { return {{0.0, 0.0}, {1.0, 0.0}, {1.0, 0.0}, {0.0, 0.0}}; }
};

// Image of a circle that avoids the pole, computed from the reflection of the
// pole across the circle.
Circle mobius_image(const Mobius& m, const Circle& c);
// Closed form for z ↦ 1/z on a circle not through the origin.
Circle invert_circle(const Circle& c);
// Circumcircle of three points.
Circle circle_through(Point p, Point q, Point s);

enum class DiscCenter { none, vertex };

struct DiscOptions {
    SolverOptions solver = disc_solver();
    DiscCenter center = DiscCenter::none;
    int center_vertex = -1;
    int real_axis_vertex = -1;  // rotate so this circle is centered on the positive real axis
};

struct DiscPacking {
    Packing packing;  // circles of the input vertices only
    std::vector<int> boundary;  // outer cycle
    SolverReport report;
    double boundary_residual = 0.0;  // worst | 1 − |c| − r | over the outer cycle
    double escape = 0.0;             // worst |c| + r − 1 over all circles, clipped at 0
};

// Adds a vertex joined to the outer cycle, packs, maps that vertex's circle to
// the unit circle and inverts.
DiscPacking pack_in_disc(const PlanarMap& map, const DiscOptions& opts = {});

struct RingStats {
    // For each interior degree: the largest ratio of a neighbor radius to the
    // vertex radius, and of the vertex radius to its smallest neighbor.
    std::map<int, double> outward;
    std::map<int, double> inward;
    double max_outward = 0.0;
    double max_inward = 0.0;
    int interior_count = 0;
};

RingStats ring_ratio_stats(const Packing& p, const PlanarMap& map);

struct AnnulusTest {
    std::vector<double> h;
    double energy = 0.0;
    double lower_bound = 0.0;  // 1/energy
    std::vector<int> inner;    // centers within R
    std::vector<int> outer;    // centers beyond C·R
    int crossing_edges = 0;    // edges joining inner and outer directly
};

AnnulusTest annulus_test_function(const Packing& p, const PlanarMap& map, Point center, double R, double C);

struct ProbeRow {
    int depth = 0;
    int vertices = 0;
    double root_radius = 0.0;
    long iterations = 0;
};

std::vector<ProbeRow> cp_type_probe(BallKind kind, const std::vector<int>& depths,
                                      const SolverOptions& solver = disc_solver());

struct ConformalMap {
    double eps = 0.0;
    std::vector<Point> lattice;  // domain positions of the kept lattice vertices
    std::vector<Point> image;    // packed centers
    std::vector<std::array<int, 3>> triangles;
    int origin_vertex = -1;
    SolverReport report;

    // Affine extension on the lattice triangle containing z. Points outside
    // the carrier throw InvalidInput.
    Point operator()(Point z) const;
    bool covers(Point z) const;

    // Lattice cell (n, m, upper) to triangle index.
    std::unordered_map<std::int64_t, int> cells;

private:
    int locate(Point z, std::array<double, 3>& bary) const;
};

// `inside` is the signed distance to the boundary (positive inside).
ConformalMap conformal_demo(const std::function<double(Point)>& inside, Point z0, double eps,
                            const SolverOptions& solver = disc_solver());
std::function<double(Point)> polygon_domain(std::vector<Point> vertices);

}  // namespace koebe
