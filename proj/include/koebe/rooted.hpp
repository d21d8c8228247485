#pragma once

#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "koebe/error.hpp"

namespace koebe {

using Rational = boost::multiprecision::cpp_rational;

// A finite multigraph with a distinguished root vertex.
struct RootedGraph {
    int n = 0;
    std::vector<std::pair<int, int>> edges;
    int root = 0;

    int degree(int v) const;
};

inline constexpr int kMaxCanonicalVertices = 12;

// Relabeling that is identical for rooted-isomorphic inputs; the root becomes 0
// and edges are listed in sorted order.
RootedGraph canonical_form(const RootedGraph& g);
std::string canonical_key(const RootedGraph& g);

struct RootedClass {
    RootedGraph graph;  // canonical representative
    std::string key;
    Rational probability;
};

// Classes sorted by key with positive probabilities summing to one.
struct RootedDistribution {
    std::vector<RootedClass> classes;

    Rational probability_of(const RootedGraph& g) const;
    bool operator==(const RootedDistribution& other) const;
};

// Canonicalizes, merges isomorphic entries and checks that the weights sum to one.
RootedDistribution make_distribution(const std::vector<std::pair<RootedGraph, Rational>>& entries);
// Root drawn uniformly from the vertices of g (g.root is ignored).
RootedDistribution uniform_root(const RootedGraph& g);

// Reweights by deg(ρ)/E[deg(ρ)].
RootedDistribution degree_bias(const RootedDistribution& dist);
// Reweights by deg(ρ)⁻¹/E[deg(ρ)⁻¹]; throws ZeroDegreeRoot.
RootedDistribution degree_unbias(const RootedDistribution& dist);

// Law of (G, X₁) where X₁ is a uniform neighbor of the root (multi-edges
// counted with multiplicity); an isolated root stays put.
RootedDistribution walk_step(const RootedDistribution& dist);
bool stationarity_check(const RootedDistribution& dist);

}  // namespace koebe
