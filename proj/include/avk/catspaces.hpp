#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <tuple>
#include <vector>

#include "avk/chains.hpp"
#include "avk/hyp2.hpp"

namespace avk {

// Point of hyperbolic 3-space in the upper-half-space model; z > 0.
struct H3Point {
    double x = 0.0;
    double y = 0.0;
    double z = 1.0;

    H3Point() = default;
    H3Point(double x_, double y_, double z_);
};

// arccosh(1 + ((px-qx)^2 + (py-qy)^2 + (pz-qz)^2) / (2 pz qz)); restricts to
// the plane distance on y = 0. Same guarded evaluation as the planar dist.
double h3_dist(const H3Point& p, const H3Point& q);

// Finite metric tree on nodes 0..node_count-1; distance is the unique-path
// length. Construction validates connectedness, acyclicity and positive
// edge lengths.
class MetricTree {
public:
    MetricTree(int node_count, std::vector<std::tuple<int, int, double>> edges);

    int node_count() const { return static_cast<int>(adjacency_.size()); }
    const std::vector<std::tuple<int, int, double>>& edges() const { return edges_; }
    double dist(int u, int v) const; // throws UnknownNode

private:
    std::vector<std::tuple<int, int, double>> edges_;
    std::vector<std::vector<std::pair<int, double>>> adjacency_;
};

double tree_dist(const MetricTree& t, int u, int v);

// Chain over an arbitrary metric backend, held as its pairwise distance
// matrix. All chain-level quantities (steps, Gromov products, tension,
// comparison chain) derive from it.
class MetricChain {
public:
    MetricChain(std::size_t point_count, std::vector<double> distances);

    static MetricChain from_h2(const Chain& c);
    static MetricChain from_h3(std::span<const H3Point> pts);
    static MetricChain from_tree(const MetricTree& t, std::span<const int> nodes);

    std::size_t size() const { return count_; }
    std::size_t segments() const { return count_ - 1; }
    double dist(std::size_t i, std::size_t j) const { return d_[i * count_ + j]; }
    const std::vector<double>& steps() const { return steps_; }
    const std::vector<double>& gromovs() const { return gromovs_; }

private:
    std::size_t count_;
    std::vector<double> d_;
    std::vector<double> steps_;
    std::vector<double> gromovs_;
};

double tension(const MetricChain& c);
bool is_good_chain(const MetricChain& c, const GoodPair& gp);

// Full pairwise distance matrix of a plane chain evaluated from its move
// factors (d(x_i, x_j) = d(i, (M_{i+1} ... M_j)~ i)); exact at extents where
// global point coordinates no longer resolve the metric.
MetricChain metric_chain_from_moves(const ChainMoves& moves);

// Convex plane chain matching the source's step lengths and consecutive-triple
// distances (equivalently interior Gromov products), every corner opening to
// the same side, placed with x_0 = i and x_1 up the imaginary axis.
struct ComparisonChain {
    MetricChain source;
    Chain image;
};

// Throws DegenerateTriple when a consecutive triple violates the triangle
// inequality beyond 1e-12 (impossible for a true metric; backend bug).
ComparisonChain comparison_chain(const MetricChain& c);

struct CatReport {
    double tau_source = 0.0;
    double tau_image = 0.0;
    double endpoint_source = 0.0;
    double endpoint_image = 0.0;
    bool ok = false; // |tau_source| <= tau_image + 1e-9 n
};

CatReport verify_cat_comparison(const MetricChain& c);

// Walking frame in upper half-space: starts at (0,0,1) heading up the
// vertical axis. spin rotates around the current heading, pitch tilts it,
// advance moves along the current geodesic. Backed by the SL(2,C) action.
class H3Frame {
public:
    H3Frame();
    void advance(double s);
    void spin(double psi);
    void pitch(double theta);
    H3Point point() const;

private:
    std::complex<double> a_, b_, c_, d_;
};

enum class Backend { H2, H3, Tree };

struct TreeChainSample {
    MetricTree tree;
    std::vector<int> nodes;
};

// Half-space walk as its local moves: step lengths, heading tilts at interior
// vertices and azimuth spins around the incoming direction.
struct H3Moves {
    std::vector<double> steps;   // n
    std::vector<double> pitches; // n - 1
    std::vector<double> spins;   // n - 1
};

// Moves of a sampled good half-space chain: steps in [a, 3a], vertex angles
// realizing Gromov products drawn from [0, b], uniform azimuth.
// Deterministic per seed.
H3Moves sample_good_h3_moves(const GoodPair& gp, int n, std::uint64_t seed);

// Pairwise distances of the walk from partial frame products, precise at any
// extent (the half-space analogue of metric_chain_from_moves).
MetricChain metric_chain_from_h3_moves(const H3Moves& moves);

// The walk's points (same draws as sample_good_h3_moves).
std::vector<H3Point> sample_good_chain_h3(const GoodPair& gp, int n, std::uint64_t seed);

// Good chain on a synthesized caterpillar tree: chain node j hangs off spine
// node j by a pendant of height h_j in [0, b] (the Gromov product at an
// interior vertex is exactly h_j), spine edges sized so every step lands in
// [a, 3a]. Deterministic per seed.
TreeChainSample sample_good_tree_chain(const GoodPair& gp, int n, std::uint64_t seed);

// Backend-dispatching sampler; for Backend::H2 this is the plane sampler
// with mixed turn sides.
MetricChain sample_good_chain_in(Backend backend, const GoodPair& gp, int n, std::uint64_t seed);

} // namespace avk
