#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <random>
#include <span>
#include <utility>
#include <vector>

#include "koebe/error.hpp"
#include "koebe/linalg.hpp"

namespace koebe {

class PlanarMap;

struct Edge {
    int u;
    int v;
    double c;  // conductance
};

struct Incidence {
    int edge;
    int other;
};

// Undirected multigraph with positive finite conductances. Connectivity is
// checked by the operations that need it, so reductions may pass through
// disconnected intermediate networks.
class Network {
public:
    Network() = default;
    Network(int n, std::vector<Edge> edges);

    int vertex_count() const { return n_; }
    int edge_count() const { return static_cast<int>(edges_.size()); }
    const Edge& edge(int e) const { return edges_[e]; }
    const std::vector<Edge>& edges() const { return edges_; }
    std::span<const Incidence> incident(int v) const {
        return {inc_.data() + off_[v], static_cast<std::size_t>(off_[v + 1] - off_[v])};
    }
    int degree(int v) const { return off_[v + 1] - off_[v]; }
    double weight(int v) const { return pi_[v]; }
    double total_conductance() const;
    bool connected() const;
    void require_connected() const;

private:
    int n_ = 0;
    std::vector<Edge> edges_;
    std::vector<int> off_;
    std::vector<Incidence> inc_;
    std::vector<double> pi_;
};

Network network_from_map(const PlanarMap& map, double conductance = 1.0);

struct Voltage {
    std::vector<double> h;
    std::vector<int> A;
    std::vector<int> Z;
    double alpha = 0.0;
    double beta = 1.0;
};

// value[e] is θ(u_e → v_e); the reverse orientation carries the negative.
struct Flow {
    std::vector<double> value;

    double along(const Network& net, int e, int from) const {
        return net.edge(e).u == from ? value[e] : -value[e];
    }
};

enum class ResistanceKind { plain, free, wired, to_boundary };

// +∞ is a tag, never a floating-point infinity.
struct Resistance {
    double value = 0.0;
    bool infinite = false;
    ResistanceKind kind = ResistanceKind::plain;

    static Resistance finite(double v, ResistanceKind k = ResistanceKind::plain) { return {v, false, k}; }
    static Resistance unbounded(ResistanceKind k = ResistanceKind::plain) { return {0.0, true, k}; }
    double get() const {
        if (infinite) fail(Errc::InvalidInput, "resistance is infinite");
        return value;
    }
};

Voltage solve_voltage(const Network& net, const std::vector<int>& A, const std::vector<int>& Z, double alpha = 0.0,
                      double beta = 1.0, Exec exec = Exec::parallel);

Flow current_flow(const Network& net, const Voltage& v);

// Net flow leaving the vertex set S.
double strength(const Network& net, const Flow& flow, const std::vector<int>& S);
std::vector<double> divergence(const Network& net, const Flow& flow);
double node_law_residual(const Network& net, const Flow& flow, const std::vector<int>& terminals);
// Max over a fundamental cycle basis of |Σ r_e θ(e)| around the cycle.
double cycle_law_residual(const Network& net, const Flow& flow);
double harmonic_residual(const Network& net, const Voltage& v);

Resistance effective_resistance(const Network& net, const std::vector<int>& A, const std::vector<int>& Z,
                                Exec exec = Exec::parallel);
inline Resistance effective_resistance(const Network& net, int a, int z, Exec exec = Exec::parallel) {
    return effective_resistance(net, std::vector<int>{a}, std::vector<int>{z}, exec);
}

// P_a(τ_Z < τ_a⁺) from an absorbing-chain solve on the transition matrix.
double escape_probability(const Network& net, int a, const std::vector<int>& Z);

struct Reduced {
    Network net;
    std::vector<int> vertex_map;  // old vertex -> new vertex, -1 if removed
};

Reduced reduce_parallel(const Network& net);
Reduced reduce_series(const Network& net, const std::vector<int>& protect);
Reduced glue(const Network& net, const std::vector<int>& S);

// Expected hitting time of `targets` from every vertex.
std::vector<double> hitting_times(const Network& net, const std::vector<int>& targets, Exec exec = Exec::parallel);
double commute_time(const Network& net, int a, int z);

double flow_energy(const Network& net, const Flow& flow);
double function_energy(const Network& net, const std::vector<double>& h);

// Upper bound Reff(A↔Z) ≤ E(θ) for a unit flow θ from A to Z.
double thomson_bound(const Network& net, const std::vector<int>& A, const std::vector<int>& Z, const Flow& flow,
                     double tol = 1e-9);
// Lower bound Reff(A↔Z) ≥ 1/E(h) for h = 0 on A and 1 on Z.
double dirichlet_bound(const Network& net, const std::vector<int>& A, const std::vector<int>& Z, const std::vector<double>& h,
                       double tol = 1e-12);
double nash_williams_bound(const Network& net, const std::vector<int>& A, const std::vector<int>& Z,
                           const std::vector<std::vector<int>>& cutsets);

using Path = std::vector<int>;
using PathSampler = std::function<Path(std::mt19937_64&)>;

struct PathFlow {
    Flow flow;
    long samples = 0;
    bool exact = false;
};

// θ(e) = E[traversals of e minus traversals of its reverse]; parallel edges
// share a traversal in proportion to their conductances.
PathFlow path_distribution_flow(const Network& net, const std::vector<std::pair<Path, double>>& distribution);
PathFlow random_path_flow(const Network& net, const PathSampler& sampler, long samples, std::uint64_t seed,
                          std::size_t step_cap = 1'000'000, Exec exec = Exec::parallel);

struct Exhausted {
    Network net;
    std::vector<int> A;
    std::vector<int> Z;
};

std::vector<std::pair<int, Resistance>> boundary_resistance(const std::function<Exhausted(int)>& family,
                                                            const std::vector<int>& indices);

// Fixtures and exhaustions.
Network path_network(int edges, double conductance = 1.0);
// a=0, top=1, bottom=2, z=3 with the middle edge 1-2.
Network diamond_network();
Network star_network(int leaves);

struct LeveledTree {
    Network net;
    std::vector<std::vector<int>> levels;
};
// children[i] is the number of children of every vertex at depth i.
LeveledTree spherically_symmetric_tree(const std::vector<int>& children);

// Box [-n,n]^2 of Z² with every vertex outside glued into one sink.
Exhausted grid_box_glued(int n);
// Box [-n,n]^2 of Z² with the sink set the box boundary |x|∞ = n.
Exhausted grid_box_free(int n);
// Lattice points of Z³ with |x| ≤ R; outside neighbors glued into one sink.
struct LatticeBall {
    Exhausted ex;
    std::vector<std::array<int, 3>> point;  // coordinates of the non-sink vertices
};
LatticeBall z3_ball_glued(int R);
// Uniform direction, then the lattice path of unit cubes pierced by the ray
// from the origin until it leaves the ball and steps into the sink.
PathSampler z3_radial_sampler(const LatticeBall& ball);

Network random_network(int n, int extra_edges, std::uint64_t seed, bool unit = false);

}  // namespace koebe
