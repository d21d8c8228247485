#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "koebe/network.hpp"
#include "koebe/planar_map.hpp"

namespace koebe {

using BigInt = boost::multiprecision::cpp_int;

// Every spanning tree of a small network, as sorted edge ids. The weight of a
// tree is the product of its conductances.
struct TreeDistribution {
    int vertex_count = 0;
    int edge_count = 0;
    std::vector<std::vector<int>> trees;
    std::vector<double> weight;
    double total_weight = 0.0;

    std::size_t count() const { return trees.size(); }
    double probability(std::size_t i) const { return weight[i] / total_weight; }
};

struct EnumerationLimits {
    int max_edges = 24;
    long step_budget = 50'000'000;  // search nodes before giving up with TooLarge
};

TreeDistribution enumerate_spanning_trees(const Network& g, const EnumerationLimits& limits = {});

// Number of spanning trees (parallel edges counted separately) by fraction-free
// elimination on a reduced Laplacian.
BigInt matrix_tree_count(const Network& g);

double edge_probability(const TreeDistribution& dist, int e);
double edge_probability(const Network& g, int e, const EnumerationLimits& limits = {});

struct MarkovReport {
    bool equal = false;
    std::size_t conditioned_trees = 0;  // trees of G containing A and avoiding B
    std::size_t contracted_trees = 0;   // trees of (G − B)/A
    double max_difference = 0.0;        // largest probability gap over the union of supports
};

// Compares the UST of G conditioned on A ⊆ T, B ∩ T = ∅ with A ∪ UST((G − B)/A).
MarkovReport spatial_markov_check(const Network& g, const std::vector<int>& A, const std::vector<int>& B,
                                  const EnumerationLimits& limits = {});

// {e† : e ∉ tree} as dual edge ids; throws InvalidInput unless the result is a
// spanning tree of the dual.
std::vector<int> dual_tree(const PlanarMap& map, const DualMap& dual, const std::vector<int>& tree);

// One finite stage of an exhaustion: the free graph G_n and the wired graph
// G_n* (outside glued into one vertex), both containing the edge x–y with the
// same endpoint ids.
struct ExhaustionStage {
    Network free;
    Network wired;
    int x = 0;
    int y = 1;
};

struct UsfRow {
    int depth = 0;
    double free = 0.0;   // c·Reff(x↔y; G_n)
    double wired = 0.0;  // c·Reff(x↔y; G_n*)
};

std::vector<UsfRow> usf_edge_marginals(const std::function<ExhaustionStage(int)>& stage, const std::vector<int>& depths);

// Box [-n,n]² of Z² with the edge (0,0)–(1,0).
ExhaustionStage z2_edge_stage(int n);
// Ball of the d-regular tree around the root edge, `depth` levels on each side.
ExhaustionStage regular_tree_stage(int depth, int degree = 3);
// Path 0..n with the edge 0–1; the wired graph joins n to an extra vertex.
ExhaustionStage half_line_stage(int n);

struct TriangleBound {
    double wired = 0.0;   // Reff(A↔B) in the wired graph
    double a_side = 0.0;  // Reff(A↔B∪{z})
    double b_side = 0.0;  // Reff(B↔A∪{z})
    bool holds = false;   // wired ≤ 3·max(a_side, b_side)
};

TriangleBound wired_triangle_bound_check(const Network& wired, const std::vector<int>& A, const std::vector<int>& B,
                                         int boundary);

using SetSampler = std::function<std::vector<int>(std::mt19937_64&)>;

struct RandomSetBound {
    double energy = 0.0;  // Σ_v P(v ∈ W)² over v other than the boundary vertex
    double reff = 0.0;    // Reff(A↔B∪{z})
    long samples = 0;
    bool holds = false;   // reff ≤ energy
};

// Each sampled set must contain a path from A to B or to the boundary vertex
// (boundary < 0 means there is none); throws InvalidInput otherwise.
RandomSetBound random_set_bound(const Network& g, const std::vector<int>& A, const std::vector<int>& B, int boundary,
                                const SetSampler& sampler, long samples, std::uint64_t seed);
RandomSetBound random_set_bound(const Network& g, const std::vector<int>& A, const std::vector<int>& B, int boundary,
                                const std::vector<std::pair<std::vector<int>, double>>& distribution);

}  // namespace koebe
